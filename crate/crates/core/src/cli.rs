//! Structure files, reports and the `bkoszul` subcommands.
//!
//! A structure file is line-based text. Header lines are `key = value`;
//! matrices follow in named sections, one row per line with space-separated
//! rationals. `#` starts a comment.
//!
//! ```text
//! name = dual of [x,y] = y
//! dimension = 2
//! braiding = flip
//!
//! [comultiplication]
//! 0 0
//! 0 1
//! 0 -1
//! 0 0
//! ```
//!
//! Keys: `name`, `description`, `dimension`, `braiding` (`flip`, `color` or
//! `matrix`). Sections: `[epsilon]` (d x d, color only), `[braiding-matrix]`
//! (d² x d², matrix only), `[comultiplication]` (d² x d, column `j` is
//! `Δ(e_j)`) and `[multiplication]` (d x d², column `i·d + j` is
//! `[e_i, e_j]`).
//!
//! Exit codes: 0 every condition holds, 1 some condition fails, 2 a
//! precondition fails, 3 usage, parse or I/O error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::braid::{antisymmetrizer, BraidError, BraidingOp};
use crate::exactla::{Matrix, Rational};
use crate::exterior::build_levels;
use crate::lie::{
    dualize, jacobi_forms_report, koszul_report_to_degree, raw_kernel_m_in_kernel_y2,
    raw_kernel_y2_in_kernel_m, Check, FactorDerivation, KoszulReport, LemmaOutcome, SLieAlgebra,
    SLieCoalgebra, Witness,
};
use crate::sample::{rng_from_seed, BraidingFamily, Sampler, Symmetry};
use crate::tensor::{compose, TensorOperator, VectorSpace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONDITION_FAILED: i32 = 1;
pub const EXIT_PRECONDITION_FAILED: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 when the problem concerns the file as a whole.
    pub line: usize,
    pub message: String,
}

fn parse_error(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BraidingDef {
    Flip,
    Color(Matrix),
    Matrix(Matrix),
}

impl BraidingDef {
    pub fn kind(&self) -> &'static str {
        match self {
            BraidingDef::Flip => "flip",
            BraidingDef::Color(_) => "color",
            BraidingDef::Matrix(_) => "matrix",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureFile {
    pub name: Option<String>,
    pub description: Option<String>,
    pub dimension: usize,
    pub braiding: BraidingDef,
    pub comultiplication: Option<Matrix>,
    pub multiplication: Option<Matrix>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Epsilon,
    BraidingMatrix,
    Comultiplication,
    Multiplication,
}

impl Section {
    fn from_name(s: &str) -> Option<Section> {
        match s {
            "epsilon" => Some(Section::Epsilon),
            "braiding-matrix" => Some(Section::BraidingMatrix),
            "comultiplication" => Some(Section::Comultiplication),
            "multiplication" => Some(Section::Multiplication),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Section::Epsilon => "epsilon",
            Section::BraidingMatrix => "braiding-matrix",
            Section::Comultiplication => "comultiplication",
            Section::Multiplication => "multiplication",
        }
    }

    fn shape(self, d: usize) -> (usize, usize) {
        match self {
            Section::Epsilon => (d, d),
            Section::BraidingMatrix => (d * d, d * d),
            Section::Comultiplication => (d * d, d),
            Section::Multiplication => (d, d * d),
        }
    }
}

struct RawSection {
    header_line: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses and validates a structure file.
pub fn parse_structure(text: &str) -> Result<StructureFile, ParseError> {
    let mut name = None;
    let mut description = None;
    let mut dimension: Option<(usize, usize)> = None;
    let mut braiding: Option<(usize, String)> = None;
    let mut sections: Vec<(Section, RawSection)> = Vec::new();
    let mut current: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('[') {
            let inner = rest
                .strip_suffix(']')
                .ok_or_else(|| parse_error(line_no, "unterminated section header"))?
                .trim();
            let section = Section::from_name(inner)
                .ok_or_else(|| parse_error(line_no, format!("unknown section [{inner}]")))?;
            if sections.iter().any(|(s, _)| *s == section) {
                return Err(parse_error(line_no, format!("duplicate section [{inner}]")));
            }
            sections.push((
                section,
                RawSection {
                    header_line: line_no,
                    rows: Vec::new(),
                },
            ));
            current = Some(sections.len() - 1);
            continue;
        }
        if let Some(i) = current {
            let row = strip_comment(trimmed)
                .split_whitespace()
                .enumerate()
                .map(|(k, tok)| {
                    tok.parse::<Rational>().map_err(|e| {
                        parse_error(
                            line_no,
                            format!("[{}] entry {}: {}", sections[i].0.name(), k + 1, e),
                        )
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if !row.is_empty() {
                sections[i].1.rows.push((line_no, row));
            }
            continue;
        }
        let (key, value) = trimmed
            .split_once('=')
            .ok_or_else(|| parse_error(line_no, "expected `key = value`"))?;
        let key = key.trim();
        let value = value.trim();
        let duplicate = || parse_error(line_no, format!("duplicate key `{key}`"));
        match key {
            "name" => {
                if name.replace(value.to_string()).is_some() {
                    return Err(duplicate());
                }
            }
            "description" => {
                if description.replace(value.to_string()).is_some() {
                    return Err(duplicate());
                }
            }
            "dimension" => {
                let d: usize = strip_comment(value).trim().parse().map_err(|_| {
                    parse_error(line_no, format!("dimension `{value}` is not a count"))
                })?;
                if d == 0 {
                    return Err(parse_error(line_no, "dimension must be at least 1"));
                }
                if dimension.replace((line_no, d)).is_some() {
                    return Err(duplicate());
                }
            }
            "braiding" => {
                let kind = strip_comment(value).trim().to_string();
                if braiding.replace((line_no, kind)).is_some() {
                    return Err(duplicate());
                }
            }
            other => return Err(parse_error(line_no, format!("unknown key `{other}`"))),
        }
    }

    let (_, d) = dimension.ok_or_else(|| parse_error(0, "missing `dimension`"))?;
    let (braiding_line, kind) = braiding.ok_or_else(|| parse_error(0, "missing `braiding`"))?;

    let mut take = |section: Section| -> Result<Option<Matrix>, ParseError> {
        let Some(pos) = sections.iter().position(|(s, _)| *s == section) else {
            return Ok(None);
        };
        let (_, raw) = sections.remove(pos);
        let (rows, cols) = section.shape(d);
        if raw.rows.len() != rows {
            return Err(parse_error(
                raw.header_line,
                format!(
                    "[{}] needs {} rows, found {}",
                    section.name(),
                    rows,
                    raw.rows.len()
                ),
            ));
        }
        for (line_no, row) in &raw.rows {
            if row.len() != cols {
                return Err(parse_error(
                    *line_no,
                    format!(
                        "[{}] rows need {} entries, found {}",
                        section.name(),
                        cols,
                        row.len()
                    ),
                ));
            }
        }
        let m = Matrix::from_rows(raw.rows.into_iter().map(|(_, r)| r).collect())
            .expect("validated shape");
        Ok(Some(m))
    };

    let epsilon = take(Section::Epsilon)?;
    let braiding_matrix = take(Section::BraidingMatrix)?;
    let comultiplication = take(Section::Comultiplication)?;
    let multiplication = take(Section::Multiplication)?;

    let braiding = match kind.as_str() {
        "flip" => {
            if epsilon.is_some() || braiding_matrix.is_some() {
                return Err(parse_error(
                    braiding_line,
                    "flip braiding takes no [epsilon] or [braiding-matrix]",
                ));
            }
            BraidingDef::Flip
        }
        "color" => {
            if braiding_matrix.is_some() {
                return Err(parse_error(
                    braiding_line,
                    "color braiding takes no [braiding-matrix]",
                ));
            }
            let eps = epsilon.ok_or_else(|| {
                parse_error(braiding_line, "color braiding needs an [epsilon] section")
            })?;
            validate_epsilon(&eps)?;
            BraidingDef::Color(eps)
        }
        "matrix" => {
            if epsilon.is_some() {
                return Err(parse_error(
                    braiding_line,
                    "matrix braiding takes no [epsilon]",
                ));
            }
            let m = braiding_matrix.ok_or_else(|| {
                parse_error(
                    braiding_line,
                    "matrix braiding needs a [braiding-matrix] section",
                )
            })?;
            BraidingDef::Matrix(m)
        }
        other => {
            return Err(parse_error(
                braiding_line,
                format!("unknown braiding `{other}` (expected flip, color or matrix)"),
            ))
        }
    };
    if comultiplication.is_none() && multiplication.is_none() {
        return Err(parse_error(
            0,
            "need a [comultiplication] or [multiplication] section",
        ));
    }
    Ok(StructureFile {
        name,
        description,
        dimension: d,
        braiding,
        comultiplication,
        multiplication,
    })
}

fn validate_epsilon(eps: &Matrix) -> Result<(), ParseError> {
    let one = Rational::one();
    let d = eps.rows();
    for i in 0..d {
        for j in 0..d {
            let x = eps.get(i, j);
            if x.abs() != one {
                return Err(parse_error(
                    0,
                    format!("epsilon[{}][{}] = {} must be 1 or -1", i + 1, j + 1, x),
                ));
            }
            if x * eps.get(j, i) != one {
                return Err(parse_error(
                    0,
                    format!(
                        "epsilon[{a}][{b}]·epsilon[{b}][{a}] ≠ 1",
                        a = i + 1,
                        b = j + 1
                    ),
                ));
            }
        }
    }
    Ok(())
}

/// Canonical text: one row per line, entries separated by single spaces.
pub fn write_matrix(m: &Matrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

impl StructureFile {
    pub fn space(&self) -> VectorSpace {
        VectorSpace::new(self.dimension).expect("validated at parse")
    }

    pub fn braiding_op(&self) -> BraidingOp {
        let space = self.space();
        match &self.braiding {
            BraidingDef::Flip => BraidingOp::flip(space),
            BraidingDef::Color(eps) => BraidingOp::color(space, eps).expect("validated shape"),
            BraidingDef::Matrix(m) => BraidingOp::new(
                TensorOperator::new(space, 2, 2, m.clone()).expect("validated shape"),
            )
            .expect("binary"),
        }
    }

    pub fn comultiplication_op(&self) -> Option<TensorOperator> {
        self.comultiplication
            .as_ref()
            .map(|m| TensorOperator::new(self.space(), 1, 2, m.clone()).expect("validated shape"))
    }

    pub fn multiplication_op(&self) -> Option<TensorOperator> {
        self.multiplication
            .as_ref()
            .map(|m| TensorOperator::new(self.space(), 2, 1, m.clone()).expect("validated shape"))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.name {
            let _ = writeln!(out, "name = {n}");
        }
        if let Some(desc) = &self.description {
            let _ = writeln!(out, "description = {desc}");
        }
        let _ = writeln!(out, "dimension = {}", self.dimension);
        let _ = writeln!(out, "braiding = {}", self.braiding.kind());
        let mut section = |title: &str, m: &Matrix| {
            let _ = write!(out, "\n[{title}]\n{}", write_matrix(m));
        };
        match &self.braiding {
            BraidingDef::Flip => {}
            BraidingDef::Color(eps) => section("epsilon", eps),
            BraidingDef::Matrix(m) => section("braiding-matrix", m),
        }
        if let Some(m) = &self.comultiplication {
            section("comultiplication", m);
        }
        if let Some(m) = &self.multiplication {
            section("multiplication", m);
        }
        out
    }

    /// The structure on the dual space: every present structure map and the
    /// braiding are transposed, and comultiplication and multiplication swap
    /// places.
    pub fn dual(&self) -> StructureFile {
        let braiding = match &self.braiding {
            BraidingDef::Flip => BraidingDef::Flip,
            BraidingDef::Color(eps) => BraidingDef::Color(eps.transpose()),
            BraidingDef::Matrix(m) => BraidingDef::Matrix(m.transpose()),
        };
        StructureFile {
            name: self
                .name
                .as_ref()
                .map(|n| match n.strip_prefix("dual of ") {
                    Some(orig) => orig.to_string(),
                    None => format!("dual of {n}"),
                }),
            description: self.description.clone(),
            dimension: self.dimension,
            braiding,
            comultiplication: self.multiplication.as_ref().map(Matrix::transpose),
            multiplication: self.comultiplication.as_ref().map(Matrix::transpose),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Precondition,
    Condition,
    Lemma,
    Informational,
}

impl Category {
    fn label(self) -> &'static str {
        match self {
            Category::Precondition => "precondition",
            Category::Condition => "condition",
            Category::Lemma => "lemma",
            Category::Informational => "info",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub input: String,
    pub residual: String,
    pub input_vector: Vec<String>,
    pub residual_vector: Vec<String>,
}

impl WitnessEntry {
    fn new(w: &Witness, space: VectorSpace) -> WitnessEntry {
        WitnessEntry {
            input: w.input_coords.render(space, &w.input),
            residual: w.residual_coords.render(space, &w.residual),
            input_vector: w.input.iter().map(ToString::to_string).collect(),
            residual_vector: w.residual.iter().map(ToString::to_string).collect(),
        }
    }
}

/// One named check. `holds` is `None` when the check was skipped or is
/// undefined for this structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub name: String,
    pub category: Category,
    pub holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub exit_code: i32,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1_matches_c2: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conditions_agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence_consistent: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub structure: Option<String>,
    pub dimension: usize,
    pub braiding: String,
    pub max_degree: usize,
    pub checks: Vec<Entry>,
    pub verdict: Verdict,
}

struct Builder {
    space: VectorSpace,
    prefix: &'static str,
    entries: Vec<Entry>,
}

impl Builder {
    fn push(
        &mut self,
        name: &str,
        category: Category,
        holds: Option<bool>,
        note: Option<String>,
        witness: Option<&Witness>,
    ) {
        self.entries.push(Entry {
            name: format!("{}{}", self.prefix, name),
            category,
            holds,
            note,
            witness: witness.map(|w| WitnessEntry::new(w, self.space)),
        });
    }

    fn check(&mut self, name: &str, category: Category, c: &Check) {
        self.push(name, category, Some(c.holds), None, c.witness.as_ref());
    }
}

fn braiding_preconditions(b: &mut Builder, s: &BraidingOp) -> bool {
    let yb = yang_baxter_check(s);
    b.check("yang_baxter", Category::Precondition, &yb);
    let sym = symmetry_check(s);
    let note = (!sym.holds).then(|| "S² ≠ id".to_string());
    b.push(
        "symmetry",
        Category::Precondition,
        Some(sym.holds),
        note,
        sym.witness.as_ref(),
    );
    yb.holds && sym.holds
}

/// `S² = id`, witnessed by a basis pair `e_i ⊗ e_j`.
pub fn symmetry_check(s: &BraidingOp) -> Check {
    let sq = compose(s.op(), s.op()).expect("binary");
    Check::equal(&sq, &TensorOperator::identity(s.space(), 2))
}

/// The braid equation on `G^{⊗3}`.
pub fn yang_baxter_check(s: &BraidingOp) -> Check {
    let b1 = s.slot(1, 3);
    let b2 = s.slot(2, 3);
    let lhs = crate::tensor::compose_all(&[&b2, &b1, &b2]).expect("degree 3");
    let rhs = crate::tensor::compose_all(&[&b1, &b2, &b1]).expect("degree 3");
    Check::equal(&lhs, &rhs)
}

fn koszul_entries(b: &mut Builder, r: &KoszulReport) {
    b.check(
        "comultiplication_morphism",
        Category::Precondition,
        &r.morphism,
    );
    b.check("cocommutativity", Category::Condition, &r.cocommutativity);
    match &r.factor_derivation {
        FactorDerivation::Exists { max_degree } => b.push(
            "factor_derivation",
            Category::Lemma,
            Some(true),
            Some(format!("induced in degrees 1..{}", max_degree - 1)),
            None,
        ),
        FactorDerivation::Obstructed {
            degree,
            witness,
            lemma_violated,
        } => {
            let note = if *lemma_violated {
                format!("δ_{degree} does not preserve ker Y(-S) although Δ is an S-morphism: factor lemma violated")
            } else {
                format!("δ_{degree} does not preserve ker Y(-S); Δ is not an S-morphism")
            };
            let holds = if *lemma_violated { Some(false) } else { None };
            b.push(
                "factor_derivation",
                Category::Lemma,
                holds,
                Some(note),
                Some(witness),
            );
        }
    }
    match &r.c1 {
        Some(c) => b.check("C1", Category::Condition, c),
        None => b.push(
            "C1",
            Category::Condition,
            None,
            Some("undefined: factor derivation does not exist".to_string()),
            None,
        ),
    }
    b.check("C2", Category::Condition, &r.c2);
    b.check("C3", Category::Condition, &r.c3);
    b.check("C4", Category::Condition, &r.c4);
    b.check("lemma_iden_s1s2", Category::Lemma, &r.iden.s1s2);
    b.check("lemma_iden_s2s1", Category::Lemma, &r.iden.s2s1);
    match &r.blumen {
        LemmaOutcome::Holds => b.push("lemma_blumen", Category::Lemma, Some(true), None, None),
        LemmaOutcome::Fails(w) => {
            b.push("lemma_blumen", Category::Lemma, Some(false), None, Some(w))
        }
        LemmaOutcome::Skipped(why) => b.push(
            "lemma_blumen",
            Category::Lemma,
            None,
            Some(format!("skipped: {why}")),
            None,
        ),
    }
    b.check(
        "C3_right_nested",
        Category::Informational,
        &r.c3_right_nested,
    );
    b.check(
        "raw_image_delta_in_image_y2",
        Category::Informational,
        &r.raw_image_in_image_y2,
    );
    b.check(
        "raw_image_delta_in_kernel_y2",
        Category::Informational,
        &r.raw_image_in_kernel_y2,
    );
}

fn algebra_entries(b: &mut Builder, a: &SLieAlgebra) -> Result<(), crate::lie::LieError> {
    let v = a.validity();
    b.check(
        "multiplication_morphism",
        Category::Precondition,
        &v.morphism.check,
    );
    b.check(
        "multiplication_morphism_mirrored",
        Category::Lemma,
        &v.morphism.mirrored,
    );
    b.check(
        "anticommutativity",
        Category::Condition,
        &v.anticommutativity,
    );
    b.check("jacobi", Category::Condition, &v.jacobi);
    if a.braiding().is_flip() {
        let forms = jacobi_forms_report(a)?;
        let note = format!(
            "argument-free {}, woronowicz {}, bracket {}",
            forms.argument_free, forms.woronowicz, forms.bracket
        );
        b.push(
            "jacobi_forms_agree",
            Category::Lemma,
            Some(forms.agree()),
            Some(note),
            None,
        );
    }
    b.check(
        "raw_kernel_y2_in_kernel_m",
        Category::Informational,
        &raw_kernel_y2_in_kernel_m(a)?,
    );
    b.check(
        "raw_kernel_m_in_kernel_y2",
        Category::Informational,
        &raw_kernel_m_in_kernel_y2(a)?,
    );
    Ok(())
}

/// Runs every applicable check on a parsed structure file.
pub fn check_structure(
    file: &StructureFile,
    max_degree: usize,
) -> Result<CheckReport, crate::lie::LieError> {
    let s = file.braiding_op();
    let mut b = Builder {
        space: file.space(),
        prefix: "",
        entries: Vec::new(),
    };
    let braid_ok = braiding_preconditions(&mut b, &s);
    let mut koszul: Option<KoszulReport> = None;
    let mut dual_koszul: Option<KoszulReport> = None;
    if braid_ok {
        if let Some(delta) = file.comultiplication_op() {
            let c = SLieCoalgebra::new(s.clone(), delta)?;
            let r = koszul_report_to_degree(&c, max_degree)?;
            koszul_entries(&mut b, &r);
            koszul = Some(r);
        }
        if let Some(m) = file.multiplication_op() {
            let a = SLieAlgebra::new(s.clone(), m)?;
            algebra_entries(&mut b, &a)?;
            let dual = dualize(&a);
            let r = koszul_report_to_degree(&dual, max_degree)?;
            let jacobi = a.validity().jacobi.holds;
            b.prefix = "dual.";
            koszul_entries(&mut b, &r);
            b.prefix = "";
            if r.preconditions_hold() {
                b.push(
                    "duality_bridge",
                    Category::Lemma,
                    Some(jacobi == r.all_conditions_hold()),
                    Some("jacobi(m) = 0 ⟺ C1-C4 hold for the dual coalgebra".to_string()),
                    None,
                );
            }
            if let Some(delta) = &file.comultiplication {
                let s_t = s.transpose();
                let compatible = delta == &a.mult().matrix().transpose() && s_t.op() == s.op();
                if compatible {
                    b.push(
                        "compatible_pair",
                        Category::Informational,
                        Some(true),
                        Some("comultiplication is the transpose of the multiplication".to_string()),
                        None,
                    );
                }
            }
            dual_koszul = Some(r);
        }
    }

    let precondition_failed = b
        .entries
        .iter()
        .any(|e| e.category == Category::Precondition && e.holds == Some(false));
    let condition_failed = b.entries.iter().any(|e| {
        matches!(e.category, Category::Condition | Category::Lemma) && e.holds == Some(false)
    });
    let exit_code = if precondition_failed {
        EXIT_PRECONDITION_FAILED
    } else if condition_failed {
        EXIT_CONDITION_FAILED
    } else {
        EXIT_OK
    };
    let failed: Vec<&str> = b
        .entries
        .iter()
        .filter(|e| e.category != Category::Informational && e.holds == Some(false))
        .map(|e| e.name.as_str())
        .collect();
    let summary = if failed.is_empty() {
        "all conditions hold".to_string()
    } else if precondition_failed {
        format!("precondition failed: {}", failed.join(", "))
    } else {
        format!("failed: {}", failed.join(", "))
    };
    let primary = koszul.as_ref().or(dual_koszul.as_ref());
    let verdict = Verdict {
        exit_code,
        summary,
        c1_matches_c2: primary.and_then(KoszulReport::c1_matches_c2),
        conditions_agree: primary.map(KoszulReport::conditions_agree),
        equivalence_consistent: primary.map(KoszulReport::equivalence_consistent),
    };
    Ok(CheckReport {
        structure: file.name.clone(),
        dimension: file.dimension,
        braiding: file.braiding.kind().to_string(),
        max_degree,
        checks: b.entries,
        verdict,
    })
}

fn fmt_holds(h: Option<bool>) -> &'static str {
    match h {
        Some(true) => "true",
        Some(false) => "false",
        None => "n/a",
    }
}

impl CheckReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.structure {
            let _ = writeln!(out, "structure: {n}");
        }
        let _ = writeln!(
            out,
            "dimension: {}  braiding: {}  max degree: {}",
            self.dimension, self.braiding, self.max_degree
        );
        for e in &self.checks {
            let _ = write!(
                out,
                "{:<12} {:<36} {}",
                e.category.label(),
                e.name,
                fmt_holds(e.holds)
            );
            if let Some(n) = &e.note {
                let _ = write!(out, "  ({n})");
            }
            out.push('\n');
            if let Some(w) = &e.witness {
                let _ = writeln!(out, "{:<12}   witness: {} -> {}", "", w.input, w.residual);
            }
        }
        let v = &self.verdict;
        if let Some(x) = v.c1_matches_c2 {
            let _ = writeln!(out, "C1 ⟺ C2: {x}");
        }
        if let Some(x) = v.conditions_agree {
            let _ = writeln!(out, "C1-C4 agree: {x}");
        }
        if let Some(x) = v.equivalence_consistent {
            let _ = writeln!(out, "equivalence consistent: {x}");
        }
        let _ = writeln!(out, "verdict: {} (exit {})", v.summary, v.exit_code);
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// `(n, dim G^{⊗n}, dim ker Y_n(-S), dim ∧ⁿ_S)` for `n = 1..=max_degree`.
pub fn dims_table(
    s: &BraidingOp,
    max_degree: usize,
) -> Result<Vec<(usize, usize, usize, usize)>, crate::exterior::ExteriorError> {
    Ok(build_levels(s, max_degree)?
        .iter()
        .map(|l| {
            (
                l.degree(),
                l.tensor_dim(),
                l.kernel().dim(),
                l.quotient_dim(),
            )
        })
        .collect())
}

/// A random S-morphism, cocommutative comultiplication in structure-file form.
pub fn random_structure(dim: usize, family: BraidingFamily, seed: u64) -> StructureFile {
    let space = VectorSpace::new(dim).expect("dim >= 1");
    let mut rng = rng_from_seed(seed);
    let braiding = family.braiding(space, &mut rng);
    let sampler = Sampler::coalgebras(braiding.clone(), Symmetry::Antisymmetric);
    let c = sampler.coalgebra(&mut rng);
    let def = match family {
        BraidingFamily::Flip => BraidingDef::Flip,
        BraidingFamily::Color => {
            let d = dim;
            BraidingDef::Color(Matrix::from_fn(d, d, |i, j| {
                braiding.matrix().get(j * d + i, i * d + j).clone()
            }))
        }
        BraidingFamily::RandomSymmetric => BraidingDef::Matrix(braiding.matrix().clone()),
    };
    StructureFile {
        name: Some(format!("random {} d={} seed={}", family.name(), dim, seed)),
        description: None,
        dimension: dim,
        braiding: def,
        comultiplication: Some(c.delta().matrix().clone()),
        multiplication: None,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bkoszul",
    version,
    about = "Exact braided exterior algebras and Koszul checks for S-Lie coalgebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Flip,
    Color,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify preconditions, C1-C4 and the supporting lemmas.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Dimensions of G^⊗n, ker Y_n(-S) and the braided exterior power.
    Dims {
        file: PathBuf,
        #[arg(long)]
        max_degree: usize,
    },
    /// Dump the exact antisymmetrizer Y_n(-S).
    Antisym {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the dual structure file.
    Dualize { file: PathBuf },
    /// Emit a random S-morphism, cocommutative comultiplication.
    Random {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        seed: u64,
    },
}

fn load(path: &PathBuf, err: &mut dyn Write) -> Option<StructureFile> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
            return None;
        }
    };
    match parse_structure(&text) {
        Ok(f) => Some(f),
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            None
        }
    }
}

/// Runs `bkoszul` with the given arguments (including the program name) and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match cli.command {
        Command::Check {
            file,
            max_degree,
            format,
        } => {
            if max_degree < 3 {
                let _ = writeln!(err, "error: --max-degree must be at least 3");
                return EXIT_ERROR;
            }
            let Some(f) = load(&file, err) else {
                return EXIT_ERROR;
            };
            match check_structure(&f, max_degree) {
                Ok(report) => {
                    let text = match format {
                        Format::Text => report.to_text(),
                        Format::Structured => report.to_json(),
                    };
                    let _ = write!(out, "{text}");
                    report.verdict.exit_code
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_PRECONDITION_FAILED
                }
            }
        }
        Command::Dims { file, max_degree } => {
            let Some(f) = load(&file, err) else {
                return EXIT_ERROR;
            };
            if max_degree < 1 {
                let _ = writeln!(err, "error: --max-degree must be at least 1");
                return EXIT_ERROR;
            }
            match dims_table(&f.braiding_op(), max_degree) {
                Ok(rows) => {
                    let _ = writeln!(out, "n\ttensor\tkernel\texterior");
                    for (n, t, k, q) in rows {
                        let _ = writeln!(out, "{n}\t{t}\t{k}\t{q}");
                    }
                    EXIT_OK
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_PRECONDITION_FAILED
                }
            }
        }
        Command::Antisym {
            file,
            degree,
            out: path,
        } => {
            if degree < 1 {
                let _ = writeln!(err, "error: --degree must be at least 1");
                return EXIT_ERROR;
            }
            let Some(f) = load(&file, err) else {
                return EXIT_ERROR;
            };
            let y = match antisymmetrizer(&f.braiding_op(), degree) {
                Ok(y) => y,
                Err(e @ BraidError::NotYangBaxter) => {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_PRECONDITION_FAILED;
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_ERROR;
                }
            };
            let text = write_matrix(y.matrix());
            match path {
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, text) {
                        let _ = writeln!(err, "error: cannot write {}: {e}", p.display());
                        return EXIT_ERROR;
                    }
                }
                None => {
                    let _ = write!(out, "{text}");
                }
            }
            EXIT_OK
        }
        Command::Dualize { file } => {
            let Some(f) = load(&file, err) else {
                return EXIT_ERROR;
            };
            let _ = write!(out, "{}", f.dual().to_text());
            EXIT_OK
        }
        Command::Random { dim, family, seed } => {
            if dim < 1 {
                let _ = writeln!(err, "error: --dim must be at least 1");
                return EXIT_ERROR;
            }
            let family = match family {
                Family::Flip => BraidingFamily::Flip,
                Family::Color => BraidingFamily::Color,
            };
            let _ = write!(out, "{}", random_structure(dim, family, seed).to_text());
            EXIT_OK
        }
    }
}
