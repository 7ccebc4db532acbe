//! S-Lie coalgebras and S-Lie algebras over a symmetry `S`, their defining
//! conditions, the derivation tower on the tensor algebra, the induced
//! differential on the braided exterior algebra, and the four-way Koszul
//! report.
//!
//! Composition conventions: `S₁ = S ⊗ id`, `S₂ = id ⊗ S` on `G^{⊗3}`, and every
//! product below is a matrix product, so `S₂ ∘ S₁` applies `S₁` first. The
//! braiding of `G` past `G ⊗ G` is `S₂ ∘ S₁`; that of `G ⊗ G` past `G` is
//! `S₁ ∘ S₂`. The morphism conditions are stated with these, which is what
//! makes every map an S-morphism for the flip.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::braid::{antisymmetrizer, BraidError, BraidingOp};
use crate::exactla::{image_basis, kernel_basis, subspace_leq, unit_vector, Rational, Subspace};
use crate::exterior::{build_levels, induce, ExteriorError, ExteriorLevel, FactorMap};
use crate::tensor::{
    compose, compose_all, pad, tensor_vectors, TensorError, TensorOperator, VectorSpace,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error(
        "expected a {expected:?} of degree {degrees:?}, found degrees ({found_in}, {found_out})"
    )]
    WrongDegrees {
        expected: StructureKind,
        degrees: (usize, usize),
        found_in: usize,
        found_out: usize,
    },
    #[error("structure map and braiding live over different spaces")]
    SpaceMismatch,
    #[error("braiding is not a symmetry (S² ≠ id)")]
    NotSymmetry,
    #[error("braiding does not satisfy the Yang-Baxter equation")]
    NotYangBaxter,
    #[error("this check is only defined for the flip braiding")]
    RequiresFlip,
    #[error("derivation tower needs max degree >= 1")]
    ZeroDegree,
    #[error("need exterior levels 1..={needed}, got {found}")]
    MissingLevels { needed: usize, found: usize },
    #[error("factor derivation does not exist in degree {degree}: {source}")]
    FactorDerivation {
        degree: usize,
        #[source]
        source: ExteriorError,
    },
    #[error(transparent)]
    Exterior(ExteriorError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

impl From<ExteriorError> for LieError {
    fn from(e: ExteriorError) -> Self {
        match e {
            ExteriorError::NotSymmetry => LieError::NotSymmetry,
            ExteriorError::Braid(BraidError::NotYangBaxter) => LieError::NotYangBaxter,
            other => LieError::Exterior(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    Comultiplication,
    Multiplication,
}

/// `Δ: G -> G⊗G` or `m: G⊗G -> G`, given by its structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureMap {
    kind: StructureKind,
    op: TensorOperator,
}

impl StructureMap {
    pub fn comultiplication(op: TensorOperator) -> Result<Self, LieError> {
        Self::with_kind(StructureKind::Comultiplication, op)
    }

    pub fn multiplication(op: TensorOperator) -> Result<Self, LieError> {
        Self::with_kind(StructureKind::Multiplication, op)
    }

    fn with_kind(kind: StructureKind, op: TensorOperator) -> Result<Self, LieError> {
        let degrees = match kind {
            StructureKind::Comultiplication => (1, 2),
            StructureKind::Multiplication => (2, 1),
        };
        if (op.in_degree(), op.out_degree()) != degrees {
            return Err(LieError::WrongDegrees {
                expected: kind,
                degrees,
                found_in: op.in_degree(),
                found_out: op.out_degree(),
            });
        }
        Ok(StructureMap { kind, op })
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn op(&self) -> &TensorOperator {
        &self.op
    }

    /// The transposed map on the dual space, with the kind swapped.
    pub fn dual(&self) -> StructureMap {
        let kind = match self.kind {
            StructureKind::Comultiplication => StructureKind::Multiplication,
            StructureKind::Multiplication => StructureKind::Comultiplication,
        };
        StructureMap {
            kind,
            op: self.op.transpose(),
        }
    }
}

/// Basis in which a witness vector is written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coordinates {
    /// Standard basis of `G^{⊗degree}`.
    Tensor { degree: usize },
    /// Quotient coordinates of `∧^degree_S G`, labelled by representative tensors.
    Exterior {
        degree: usize,
        representatives: Vec<usize>,
    },
}

impl Coordinates {
    fn label(&self, space: VectorSpace, i: usize) -> String {
        match self {
            Coordinates::Tensor { degree } => space.basis_label(i, *degree),
            Coordinates::Exterior {
                degree,
                representatives,
            } => format!("[{}]", space.basis_label(representatives[i], *degree)),
        }
    }

    /// Renders a coordinate vector as a linear combination of basis labels.
    pub fn render(&self, space: VectorSpace, v: &[Rational]) -> String {
        let mut out = String::new();
        for (i, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let negative = x < &Rational::zero();
            let magnitude = x.abs();
            match (out.is_empty(), negative) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            if magnitude != Rational::from_integer(1) {
                out.push_str(&format!("{magnitude}·"));
            }
            out.push_str(&self.label(space, i));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// An input on which a failed identity evaluates to a non-zero value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub input: Vec<Rational>,
    pub residual: Vec<Rational>,
    pub input_coords: Coordinates,
    pub residual_coords: Coordinates,
}

impl Witness {
    pub fn describe(&self, space: VectorSpace) -> String {
        format!(
            "input {} -> residual {}",
            self.input_coords.render(space, &self.input),
            self.residual_coords.render(space, &self.residual)
        )
    }
}

/// Outcome of one identity; `witness` is present exactly when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass() -> Check {
        Check {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: Witness) -> Check {
        Check {
            holds: false,
            witness: Some(witness),
        }
    }

    /// Passes iff `op` is the zero map; otherwise the first basis input with a
    /// non-zero image is the witness.
    pub fn zero_map(op: &TensorOperator) -> Check {
        match op.matrix().first_nonzero_column() {
            None => Check::pass(),
            Some(j) => Check::fail(Witness {
                input: unit_vector(op.matrix().cols(), j),
                residual: op.apply_basis(j),
                input_coords: Coordinates::Tensor {
                    degree: op.in_degree(),
                },
                residual_coords: Coordinates::Tensor {
                    degree: op.out_degree(),
                },
            }),
        }
    }

    /// Passes iff `lhs = rhs`; the witness residual is `(lhs - rhs)(input)`.
    pub fn equal(lhs: &TensorOperator, rhs: &TensorOperator) -> Check {
        Check::zero_map(&lhs.sub(rhs).expect("both sides have the same signature"))
    }

    /// Passes iff every column of `op` lies in `target`; the residual is what
    /// remains after eliminating against the echelon basis of `target`.
    pub fn image_in(op: &TensorOperator, target: &Subspace) -> Check {
        for j in 0..op.matrix().cols() {
            let col = op.apply_basis(j);
            let residual = target.residual(&col).expect("column in target ambient");
            if residual.iter().any(|x| !x.is_zero()) {
                return Check::fail(Witness {
                    input: unit_vector(op.matrix().cols(), j),
                    residual,
                    input_coords: Coordinates::Tensor {
                        degree: op.in_degree(),
                    },
                    residual_coords: Coordinates::Tensor {
                        degree: op.out_degree(),
                    },
                });
            }
        }
        Check::pass()
    }

    /// Passes iff `source ⊆ ker op`; the witness is a basis vector of
    /// `source` and its image.
    pub fn annihilates(op: &TensorOperator, source: &Subspace) -> Check {
        for v in source.basis() {
            let image = op.apply(v);
            if image.iter().any(|x| !x.is_zero()) {
                return Check::fail(Witness {
                    input: v.clone(),
                    residual: image,
                    input_coords: Coordinates::Tensor {
                        degree: op.in_degree(),
                    },
                    residual_coords: Coordinates::Tensor {
                        degree: op.out_degree(),
                    },
                });
            }
        }
        Check::pass()
    }
}

/// The braiding operators on `G^{⊗3}` used by every condition.
struct Triple {
    s1: TensorOperator,
    s2: TensorOperator,
    /// `S₂ ∘ S₁`
    s2s1: TensorOperator,
    /// `S₁ ∘ S₂`
    s1s2: TensorOperator,
}

impl Triple {
    fn new(s: &BraidingOp) -> Triple {
        let s1 = s.slot(1, 3);
        let s2 = s.slot(2, 3);
        let s2s1 = compose(&s2, &s1).expect("degree 3");
        let s1s2 = compose(&s1, &s2).expect("degree 3");
        Triple { s1, s2, s2s1, s1s2 }
    }

    /// `id + S₁S₂ + S₂S₁`
    fn cyclic_sum(&self) -> TensorOperator {
        TensorOperator::identity(self.s1.space(), 3)
            .add(&self.s1s2)
            .and_then(|x| x.add(&self.s2s1))
            .expect("degree 3")
    }
}

fn check_space(s: &BraidingOp, op: &TensorOperator) -> Result<(), LieError> {
    if s.space() != op.space() {
        return Err(LieError::SpaceMismatch);
    }
    Ok(())
}

fn delta_id(delta: &TensorOperator) -> TensorOperator {
    pad(delta, 0, 1)
}

fn id_delta(delta: &TensorOperator) -> TensorOperator {
    pad(delta, 1, 0)
}

/// Defining conditions of an S-Lie coalgebra.
#[derive(Debug, Clone)]
pub struct CoalgebraValidity {
    pub morphism: Check,
    pub co_jacobi: Check,
    pub cocommutativity: Check,
}

impl CoalgebraValidity {
    pub fn all_hold(&self) -> bool {
        self.morphism.holds && self.co_jacobi.holds && self.cocommutativity.holds
    }
}

/// `(G, Δ, S)`. Construction never rejects a structure on mathematical
/// grounds; the validity record says which defining conditions hold.
#[derive(Debug, Clone)]
pub struct SLieCoalgebra {
    braiding: BraidingOp,
    delta: StructureMap,
    validity: CoalgebraValidity,
}

impl SLieCoalgebra {
    pub fn new(braiding: BraidingOp, delta: TensorOperator) -> Result<Self, LieError> {
        check_space(&braiding, &delta)?;
        let delta = StructureMap::comultiplication(delta)?;
        let mut c = SLieCoalgebra {
            braiding,
            delta,
            validity: CoalgebraValidity {
                morphism: Check::pass(),
                co_jacobi: Check::pass(),
                cocommutativity: Check::pass(),
            },
        };
        c.validity = CoalgebraValidity {
            morphism: check_comorphism(&c),
            co_jacobi: Check::zero_map(&co_jacobiator(&c)),
            cocommutativity: check_cocommutativity(&c),
        };
        Ok(c)
    }

    pub fn braiding(&self) -> &BraidingOp {
        &self.braiding
    }

    pub fn delta(&self) -> &TensorOperator {
        self.delta.op()
    }

    pub fn structure(&self) -> &StructureMap {
        &self.delta
    }

    pub fn space(&self) -> VectorSpace {
        self.braiding.space()
    }

    pub fn validity(&self) -> &CoalgebraValidity {
        &self.validity
    }
}

/// `(Δ ⊗ id) ∘ S = S₂ ∘ S₁ ∘ (id ⊗ Δ)`.
pub fn check_comorphism(c: &SLieCoalgebra) -> Check {
    let t = Triple::new(&c.braiding);
    let lhs = compose(&delta_id(c.delta()), c.braiding.op()).expect("degrees");
    let rhs = compose(&t.s2s1, &id_delta(c.delta())).expect("degrees");
    Check::equal(&lhs, &rhs)
}

/// `(id + S) ∘ Δ = 0`.
pub fn check_cocommutativity(c: &SLieCoalgebra) -> Check {
    let id_plus_s = TensorOperator::identity(c.space(), 2)
        .add(c.braiding.op())
        .expect("degree 2");
    Check::zero_map(&compose(&id_plus_s, c.delta()).expect("degrees"))
}

/// `(Δ ⊗ id) ∘ Δ`.
fn left_nested(delta: &TensorOperator) -> TensorOperator {
    compose(&delta_id(delta), delta).expect("degrees")
}

/// `(id ⊗ Δ) ∘ Δ`.
fn right_nested(delta: &TensorOperator) -> TensorOperator {
    compose(&id_delta(delta), delta).expect("degrees")
}

/// `cJ(Δ) = (id + S₁S₂ + S₂S₁) ∘ (Δ ⊗ id) ∘ Δ`.
pub fn co_jacobiator(c: &SLieCoalgebra) -> TensorOperator {
    let t = Triple::new(&c.braiding);
    compose(&t.cyclic_sum(), &left_nested(c.delta())).expect("degrees")
}

/// The same cyclic sum applied to `(id ⊗ Δ) ∘ Δ`.
pub fn co_jacobiator_right_nested(c: &SLieCoalgebra) -> TensorOperator {
    let t = Triple::new(&c.braiding);
    compose(&t.cyclic_sum(), &right_nested(c.delta())).expect("degrees")
}

fn woronowicz_form(s: &BraidingOp, delta: &TensorOperator) -> TensorOperator {
    let t = Triple::new(s);
    let ll = left_nested(delta);
    let rr = right_nested(delta);
    let twisted = compose(&t.s2, &ll).expect("degrees");
    ll.sub(&rr).and_then(|x| x.sub(&twisted)).expect("degrees")
}

/// `(Δ⊗id)Δ - (id⊗Δ)Δ - (id⊗S)(Δ⊗id)Δ`.
pub fn co_jacobiator_woronowicz(c: &SLieCoalgebra) -> TensorOperator {
    woronowicz_form(&c.braiding, c.delta())
}

/// The extension `δ` of `Δ` to the tensor algebra, one map per degree.
#[derive(Debug, Clone)]
pub struct DerivationTower {
    maps: Vec<TensorOperator>,
}

impl DerivationTower {
    pub fn max_degree(&self) -> usize {
        self.maps.len()
    }

    /// `δ_n: G^{⊗n} -> G^{⊗(n+1)}`.
    pub fn get(&self, n: usize) -> &TensorOperator {
        &self.maps[n - 1]
    }

    pub fn maps(&self) -> &[TensorOperator] {
        &self.maps
    }
}

/// `δ_n = Σ_{k=1}^{n} (-1)^{k-1} id_{k-1} ⊗ Δ ⊗ id_{n-k}` for `n = 1..=max_degree`.
pub fn derivation_tower(c: &SLieCoalgebra, max_degree: usize) -> Result<DerivationTower, LieError> {
    if max_degree == 0 {
        return Err(LieError::ZeroDegree);
    }
    let maps = (1..=max_degree)
        .map(|n| {
            (1..=n).fold(TensorOperator::zero(c.space(), n, n + 1), |acc, k| {
                let term = pad(c.delta(), k - 1, n - k);
                if k % 2 == 1 {
                    acc.add(&term).expect("degrees")
                } else {
                    acc.sub(&term).expect("degrees")
                }
            })
        })
        .collect();
    Ok(DerivationTower { maps })
}

/// `d̂_n = induce(δ_n)` for every `n` with both levels available.
/// `levels[i]` must be the level of degree `i + 1`.
pub fn factor_differential(
    tower: &DerivationTower,
    levels: &[ExteriorLevel],
) -> Result<Vec<FactorMap>, LieError> {
    let top = levels.len().min(tower.max_degree() + 1);
    for (i, l) in levels.iter().enumerate() {
        assert_eq!(l.degree(), i + 1, "levels must start at degree 1");
    }
    (1..top)
        .map(|n| {
            induce(tower.get(n), &levels[n - 1], &levels[n])
                .map_err(|source| LieError::FactorDerivation { degree: n, source })
        })
        .collect()
}

/// Both forms of the identity `Y₃(-S)∘S₁S₂ = Y₃(-S)∘S₂S₁ = Y₃(-S)`.
#[derive(Debug, Clone)]
pub struct IdenCheck {
    pub s1s2: Check,
    pub s2s1: Check,
}

impl IdenCheck {
    pub fn holds(&self) -> bool {
        self.s1s2.holds && self.s2s1.holds
    }
}

pub fn lemma_iden_check(s: &BraidingOp) -> Result<IdenCheck, LieError> {
    let y3 = antisymmetrizer(s, 3)?;
    let t = Triple::new(s);
    Ok(IdenCheck {
        s1s2: Check::equal(&compose(&y3, &t.s1s2)?, &y3),
        s2s1: Check::equal(&compose(&y3, &t.s2s1)?, &y3),
    })
}

#[derive(Debug, Clone)]
pub enum LemmaOutcome {
    Holds,
    Fails(Witness),
    Skipped(String),
}

impl LemmaOutcome {
    pub fn holds(&self) -> Option<bool> {
        match self {
            LemmaOutcome::Holds => Some(true),
            LemmaOutcome::Fails(_) => Some(false),
            LemmaOutcome::Skipped(_) => None,
        }
    }
}

/// For an S-morphism `Δ`, with `Δ_S = Δ - S∘Δ`:
///
/// `Y₃(-S) ∘ (Δ⊗id - id⊗Δ) ∘ Δ = (Δ_S⊗id)Δ_S - (id⊗Δ_S)Δ_S - (id⊗S)(Δ_S⊗id)Δ_S`.
pub fn lemma_blumen_check(c: &SLieCoalgebra) -> Result<LemmaOutcome, LieError> {
    if !c.validity.morphism.holds {
        return Ok(LemmaOutcome::Skipped(
            "comultiplication is not an S-morphism".to_string(),
        ));
    }
    let (lhs, rhs) = blumen_sides(c)?;
    Ok(match Check::equal(&lhs, &rhs).witness {
        None => LemmaOutcome::Holds,
        Some(w) => LemmaOutcome::Fails(w),
    })
}

/// The two sides compared by [`lemma_blumen_check`], as `d³ x d` matrices.
pub fn blumen_sides(c: &SLieCoalgebra) -> Result<(TensorOperator, TensorOperator), LieError> {
    let y3 = antisymmetrizer(&c.braiding, 3)?;
    let delta = c.delta();
    let delta2 = delta_id(delta).sub(&id_delta(delta))?;
    let lhs = compose_all(&[&y3, &delta2, delta])?;
    let delta_s = delta.sub(&compose(c.braiding.op(), delta)?)?;
    let rhs = woronowicz_form(&c.braiding, &delta_s);
    Ok((lhs, rhs))
}

/// Whether the factor derivation `d̂` exists through the requested degree.
#[derive(Debug, Clone)]
pub enum FactorDerivation {
    Exists {
        max_degree: usize,
    },
    Obstructed {
        degree: usize,
        witness: Witness,
        /// Set when `Δ` is an S-morphism, where the obstruction is impossible
        /// in theory; reaching it means the factor lemma fails on this input.
        lemma_violated: bool,
    },
}

impl FactorDerivation {
    pub fn exists(&self) -> bool {
        matches!(self, FactorDerivation::Exists { .. })
    }
}

/// Everything the Koszul equivalence says about one coalgebra.
#[derive(Debug, Clone)]
pub struct KoszulReport {
    pub space: VectorSpace,
    pub yang_baxter: Check,
    pub symmetry: Check,
    pub morphism: Check,
    pub cocommutativity: Check,
    pub factor_derivation: FactorDerivation,
    /// `d̂₂ ∘ d̂₁ = 0`; absent when `d̂` does not exist.
    pub c1: Option<Check>,
    /// `im δ₂∘δ₁ ⊆ ker Y₃(-S)`.
    pub c2: Check,
    /// `(id + S₁S₂ + S₂S₁)(Δ⊗id)Δ = 0`.
    pub c3: Check,
    /// `(id + S₁S₂ + S₂S₁)(id⊗Δ)Δ = 0`.
    pub c3_right_nested: Check,
    /// Woronowicz form.
    pub c4: Check,
    pub iden: IdenCheck,
    pub blumen: LemmaOutcome,
    /// `im Δ ⊆ im Y₂(-S)`, equivalent to cocommutativity for a symmetry.
    pub raw_image_in_image_y2: Check,
    /// `im Δ ⊆ ker Y₂(-S)`, the inclusion as literally written in the S-Lie
    /// coalgebra axioms; reported for comparison only.
    pub raw_image_in_kernel_y2: Check,
}

impl KoszulReport {
    pub fn preconditions_hold(&self) -> bool {
        self.yang_baxter.holds
            && self.symmetry.holds
            && self.morphism.holds
            && self.cocommutativity.holds
    }

    /// `[C1, C2, C3, C4]`, with `C1` missing when `d̂` does not exist.
    pub fn conditions(&self) -> [Option<bool>; 4] {
        [
            self.c1.as_ref().map(|c| c.holds),
            Some(self.c2.holds),
            Some(self.c3.holds),
            Some(self.c4.holds),
        ]
    }

    pub fn all_conditions_hold(&self) -> bool {
        self.conditions().iter().all(|c| *c == Some(true))
    }

    pub fn all_conditions_fail(&self) -> bool {
        self.conditions().iter().all(|c| *c == Some(false))
    }

    /// `C1 ⟺ C2`, whenever `d̂` exists.
    pub fn c1_matches_c2(&self) -> Option<bool> {
        self.c1.as_ref().map(|c1| c1.holds == self.c2.holds)
    }

    /// All four conditions (and the right-nested C3 variant) agree.
    pub fn conditions_agree(&self) -> bool {
        let cs = self.conditions();
        cs.iter().all(|c| *c == cs[1]) && self.c3_right_nested.holds == self.c2.holds
    }

    /// The equivalence verdict: `C1 ⟺ C2` always, and all four equal when
    /// the preconditions hold.
    pub fn equivalence_consistent(&self) -> bool {
        self.c1_matches_c2().unwrap_or(true)
            && (!self.preconditions_hold() || self.conditions_agree())
    }
}

/// Runs every condition, lemma and precondition in degrees `1..=3`.
pub fn koszul_report(c: &SLieCoalgebra) -> Result<KoszulReport, LieError> {
    koszul_report_to_degree(c, 3)
}

/// As [`koszul_report`], additionally checking that `d̂` exists up to
/// `max_degree` (at least 3).
pub fn koszul_report_to_degree(
    c: &SLieCoalgebra,
    max_degree: usize,
) -> Result<KoszulReport, LieError> {
    let s = &c.braiding;
    if !s.is_yang_baxter() {
        return Err(LieError::NotYangBaxter);
    }
    if !s.is_symmetry() {
        return Err(LieError::NotSymmetry);
    }
    let max_degree = max_degree.max(3);
    let levels = build_levels(s, max_degree)?;
    let tower = derivation_tower(c, max_degree - 1)?;
    let space = c.space();

    let (factor_derivation, c1) = match factor_differential(&tower, &levels) {
        Ok(maps) => {
            let square = maps[1].after(&maps[0]);
            let c1 = match square.matrix().first_nonzero_column() {
                None => Check::pass(),
                Some(j) => Check::fail(Witness {
                    input: unit_vector(square.matrix().cols(), j),
                    residual: square.matrix().column(j),
                    input_coords: Coordinates::Exterior {
                        degree: 1,
                        representatives: levels[0].representatives().to_vec(),
                    },
                    residual_coords: Coordinates::Exterior {
                        degree: 3,
                        representatives: levels[2].representatives().to_vec(),
                    },
                }),
            };
            (FactorDerivation::Exists { max_degree }, Some(c1))
        }
        Err(LieError::FactorDerivation {
            degree,
            source: ExteriorError::KernelNotPreserved { witness, image, .. },
        }) => (
            FactorDerivation::Obstructed {
                degree,
                witness: Witness {
                    input: witness,
                    residual: image,
                    input_coords: Coordinates::Tensor { degree },
                    residual_coords: Coordinates::Tensor { degree: degree + 1 },
                },
                lemma_violated: c.validity.morphism.holds,
            },
            None,
        ),
        Err(other) => return Err(other),
    };

    let y3 = levels[2].antisymmetrizer();
    let square = compose(tower.get(2), tower.get(1))?;
    let included =
        subspace_leq(&image_basis(square.matrix()), levels[2].kernel()).expect("both in G^{⊗3}");
    let c2 = Check::zero_map(&compose(y3, &square)?);
    debug_assert_eq!(included, c2.holds);

    let y2 = levels[1].antisymmetrizer();
    let raw_image_in_image_y2 = Check::image_in(c.delta(), &image_basis(y2.matrix()));
    let raw_image_in_kernel_y2 = Check::image_in(c.delta(), &kernel_basis(y2.matrix()));

    Ok(KoszulReport {
        space,
        yang_baxter: Check::pass(),
        symmetry: Check::pass(),
        morphism: c.validity.morphism.clone(),
        cocommutativity: c.validity.cocommutativity.clone(),
        factor_derivation,
        c1,
        c2,
        c3: c.validity.co_jacobi.clone(),
        c3_right_nested: Check::zero_map(&co_jacobiator_right_nested(c)),
        c4: Check::zero_map(&co_jacobiator_woronowicz(c)),
        iden: lemma_iden_check(s)?,
        blumen: lemma_blumen_check(c)?,
        raw_image_in_image_y2,
        raw_image_in_kernel_y2,
    })
}

/// Defining conditions of an S-Lie algebra.
#[derive(Debug, Clone)]
pub struct AlgebraValidity {
    pub morphism: MultMorphismCheck,
    pub jacobi: Check,
    pub anticommutativity: Check,
}

impl AlgebraValidity {
    pub fn all_hold(&self) -> bool {
        self.morphism.check.holds && self.jacobi.holds && self.anticommutativity.holds
    }
}

/// `(G, m, S)`, validated like [`SLieCoalgebra`].
#[derive(Debug, Clone)]
pub struct SLieAlgebra {
    braiding: BraidingOp,
    mult: StructureMap,
    validity: AlgebraValidity,
}

impl SLieAlgebra {
    pub fn new(braiding: BraidingOp, mult: TensorOperator) -> Result<Self, LieError> {
        check_space(&braiding, &mult)?;
        let mult = StructureMap::multiplication(mult)?;
        let mut a = SLieAlgebra {
            braiding,
            mult,
            validity: AlgebraValidity {
                morphism: MultMorphismCheck {
                    check: Check::pass(),
                    mirrored: Check::pass(),
                },
                jacobi: Check::pass(),
                anticommutativity: Check::pass(),
            },
        };
        a.validity = AlgebraValidity {
            morphism: check_mult_morphism(&a),
            jacobi: Check::zero_map(&jacobiator(&a)),
            anticommutativity: check_anticommutativity(&a),
        };
        Ok(a)
    }

    pub fn braiding(&self) -> &BraidingOp {
        &self.braiding
    }

    pub fn mult(&self) -> &TensorOperator {
        self.mult.op()
    }

    pub fn space(&self) -> VectorSpace {
        self.braiding.space()
    }

    pub fn validity(&self) -> &AlgebraValidity {
        &self.validity
    }

    /// `[u, v] = m(u ⊗ v)`.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        self.mult().apply(&tensor_vectors(&[u, v]))
    }
}

/// `m ∘ (m ⊗ id) ∘ (id + S₁S₂ + S₂S₁)`.
pub fn jacobiator(a: &SLieAlgebra) -> TensorOperator {
    let t = Triple::new(&a.braiding);
    compose_all(&[a.mult(), &pad(a.mult(), 0, 1), &t.cyclic_sum()]).expect("degrees")
}

/// The morphism condition and its mirrored form, which are equivalent for a
/// symmetry.
#[derive(Debug, Clone)]
pub struct MultMorphismCheck {
    /// `S ∘ (id ⊗ m) = (m ⊗ id) ∘ S₂S₁`.
    pub check: Check,
    /// `S ∘ (m ⊗ id) = (id ⊗ m) ∘ S₁S₂`.
    pub mirrored: Check,
}

impl MultMorphismCheck {
    pub fn remark_holds(&self) -> bool {
        self.check.holds == self.mirrored.holds
    }
}

pub fn check_mult_morphism(a: &SLieAlgebra) -> MultMorphismCheck {
    let t = Triple::new(&a.braiding);
    let s = a.braiding.op();
    let m = a.mult();
    let lhs = compose(s, &pad(m, 1, 0)).expect("degrees");
    let rhs = compose(&pad(m, 0, 1), &t.s2s1).expect("degrees");
    let lhs_m = compose(s, &pad(m, 0, 1)).expect("degrees");
    let rhs_m = compose(&pad(m, 1, 0), &t.s1s2).expect("degrees");
    MultMorphismCheck {
        check: Check::equal(&lhs, &rhs),
        mirrored: Check::equal(&lhs_m, &rhs_m),
    }
}

/// `m ∘ (id + S) = 0`.
pub fn check_anticommutativity(a: &SLieAlgebra) -> Check {
    let id_plus_s = TensorOperator::identity(a.space(), 2)
        .add(a.braiding.op())
        .expect("degree 2");
    Check::zero_map(&compose(a.mult(), &id_plus_s).expect("degrees"))
}

/// `ker Y₂(-S) ⊆ ker m`, the inclusion form of anticommutativity.
pub fn raw_kernel_y2_in_kernel_m(a: &SLieAlgebra) -> Result<Check, LieError> {
    let y2 = antisymmetrizer(&a.braiding, 2)?;
    Ok(Check::annihilates(a.mult(), &kernel_basis(y2.matrix())))
}

/// `ker m ⊆ ker Y₂(-S)`, the inclusion as literally written in the S-Lie
/// algebra axioms; reported for comparison only.
pub fn raw_kernel_m_in_kernel_y2(a: &SLieAlgebra) -> Result<Check, LieError> {
    let y2 = antisymmetrizer(&a.braiding, 2)?;
    Ok(Check::annihilates(&y2, &kernel_basis(a.mult().matrix())))
}

/// The three classical forms of the Jacobi identity for a flip algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct JacobiForms {
    /// `m∘(m⊗id)∘(id + τ₁τ₂ + τ₂τ₁) = 0`
    pub argument_free: bool,
    /// `m∘(m⊗id) - m∘(id⊗m) - m∘(m⊗id)∘(id⊗τ) = 0`
    pub woronowicz: bool,
    /// `[[x,y],z] - [x,[y,z]] - [[x,z],y] = 0` on all basis triples
    pub bracket: bool,
}

impl JacobiForms {
    pub fn agree(&self) -> bool {
        self.argument_free == self.woronowicz && self.woronowicz == self.bracket
    }
}

pub fn jacobi_forms_report(a: &SLieAlgebra) -> Result<JacobiForms, LieError> {
    if !a.braiding.is_flip() {
        return Err(LieError::RequiresFlip);
    }
    let m = a.mult();
    let m_id = compose(m, &pad(m, 0, 1))?;
    let id_m = compose(m, &pad(m, 1, 0))?;
    let tau2 = a.braiding.slot(2, 3);
    let twisted = compose(&m_id, &tau2)?;
    let woronowicz = m_id.sub(&id_m)?.sub(&twisted)?.is_zero();

    let d = a.space().dim();
    let e = |i: usize| unit_vector(d, i);
    let mut bracket = true;
    'outer: for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let xy_z = a.bracket(&a.bracket(&e(x), &e(y)), &e(z));
                let x_yz = a.bracket(&e(x), &a.bracket(&e(y), &e(z)));
                let xz_y = a.bracket(&a.bracket(&e(x), &e(z)), &e(y));
                let zero = (0..d).all(|k| (&(&xy_z[k] - &x_yz[k]) - &xz_y[k]).is_zero());
                if !zero {
                    bracket = false;
                    break 'outer;
                }
            }
        }
    }
    Ok(JacobiForms {
        argument_free: jacobiator(a).is_zero(),
        woronowicz,
        bracket,
    })
}

/// The coalgebra on `G*`: `Δ = mᵀ` and `S* = Sᵀ` under dual bases.
pub fn dualize(a: &SLieAlgebra) -> SLieCoalgebra {
    SLieCoalgebra::new(a.braiding.transpose(), a.mult().transpose())
        .expect("transpose has coalgebra degrees")
}

/// The algebra on `G*`: `m = Δᵀ` and `S* = Sᵀ`.
pub fn dualize_coalgebra(c: &SLieCoalgebra) -> SLieAlgebra {
    SLieAlgebra::new(c.braiding.transpose(), c.delta().transpose())
        .expect("transpose has algebra degrees")
}

/// Helper for callers building `Δ` column by column: the operator whose
/// `j`-th column is the coordinate vector of `Δ(e_j)`.
pub fn comultiplication_from_images(
    space: VectorSpace,
    images: &[Vec<Rational>],
) -> Result<TensorOperator, LieError> {
    let m = crate::exactla::Matrix::from_columns(space.power_dim(2), images).map_err(|_| {
        LieError::WrongDegrees {
            expected: StructureKind::Comultiplication,
            degrees: (1, 2),
            found_in: images.len(),
            found_out: 0,
        }
    })?;
    Ok(TensorOperator::new(space, 1, 2, m)?)
}

/// `u ⊗ v` as a vector in `G^{⊗2}`.
pub fn pair(u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    tensor_vectors(&[u, v])
}
