//! Braidings on `G^{⊗2}`, braid words, the permutation lift and the braided
//! Young antisymmetrizers.
//!
//! Conventions used throughout the crate:
//!
//! - A braid word `σ_{i1} σ_{i2} ... σ_{ik}` is represented by
//!   `ρ_B = B_{i1} ∘ B_{i2} ∘ ... ∘ B_{ik}` (matrix product in word order).
//! - Its underlying permutation is `s_{i1} ∘ s_{i2} ∘ ... ∘ s_{ik}` acting on
//!   positions `0..n`, with `s_i` swapping positions `i-1` and `i`.
//! - For the flip, `ρ_τ(ψ(p))` sends the factor in position `j` to position
//!   `p(j)`.

use thiserror::Error;

use crate::exactla::{LinAlgError, Matrix, Rational};
use crate::tensor::{compose, placement, TensorError, TensorOperator, VectorSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("braiding does not satisfy the Yang-Baxter equation")]
    NotYangBaxter,
    #[error("braiding is not invertible")]
    NotInvertible,
    #[error("generator σ_{generator} out of range for {strands} strands")]
    GeneratorOutOfRange { generator: usize, strands: usize },
    #[error("braid word on {found} strands used where {expected} strands are required")]
    StrandMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("antisymmetrizer degree must be >= 1")]
    ZeroDegree,
    #[error("color table must be {dim}x{dim}, found {found:?}")]
    BadColorTable { dim: usize, found: (usize, usize) },
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

pub fn check_yang_baxter(b: &TensorOperator) -> bool {
    yang_baxter_defect(b).map(|m| m.is_zero()).unwrap_or(false)
}

/// `(id⊗B)(B⊗id)(id⊗B) - (B⊗id)(id⊗B)(B⊗id)` on `G^{⊗3}`.
fn yang_baxter_defect(b: &TensorOperator) -> Result<TensorOperator, TensorError> {
    let b1 = placement(b, 1, 3)?;
    let b2 = placement(b, 2, 3)?;
    let lhs = compose(&b2, &compose(&b1, &b2)?)?;
    let rhs = compose(&b1, &compose(&b2, &b1)?)?;
    lhs.sub(&rhs)
}

pub fn check_symmetry(b: &TensorOperator) -> bool {
    b.in_degree() == 2
        && b.out_degree() == 2
        && compose(b, b)
            .map(|sq| sq.matrix().is_identity())
            .unwrap_or(false)
}

/// An endomorphism of `G^{⊗2}` together with its validity flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidingOp {
    op: TensorOperator,
    inverse: Option<TensorOperator>,
    is_yang_baxter: bool,
    is_symmetry: bool,
}

impl BraidingOp {
    pub fn new(op: TensorOperator) -> Result<Self, BraidError> {
        if op.in_degree() != 2 || op.out_degree() != 2 {
            return Err(TensorError::NotBinary {
                input: op.in_degree(),
                output: op.out_degree(),
            }
            .into());
        }
        let inverse = op
            .matrix()
            .inverse()
            .ok()
            .map(|m| TensorOperator::new(op.space(), 2, 2, m).expect("inverse keeps shape"));
        let is_yang_baxter = check_yang_baxter(&op);
        let is_symmetry = check_symmetry(&op);
        Ok(BraidingOp {
            op,
            inverse,
            is_yang_baxter,
            is_symmetry,
        })
    }

    pub fn flip(space: VectorSpace) -> Self {
        BraidingOp::new(TensorOperator::flip(space)).expect("flip is binary")
    }

    /// `S(e_i ⊗ e_j) = ε_ij e_j ⊗ e_i`. The table is not validated here; the
    /// flags record whether the result is a symmetry.
    pub fn color(space: VectorSpace, epsilon: &Matrix) -> Result<Self, BraidError> {
        let d = space.dim();
        if epsilon.shape() != (d, d) {
            return Err(BraidError::BadColorTable {
                dim: d,
                found: epsilon.shape(),
            });
        }
        let mut m = Matrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                m.set(j * d + i, i * d + j, epsilon.get(i, j).clone());
            }
        }
        BraidingOp::new(TensorOperator::new(space, 2, 2, m)?)
    }

    /// Super sign `ε_ij = (-1)^{|i||j|}` for the given parities.
    pub fn super_sign(odd: &[bool]) -> Self {
        let d = odd.len();
        let space = VectorSpace::new(d).expect("non-empty grading");
        let eps = Matrix::from_fn(d, d, |i, j| {
            Rational::from(if odd[i] && odd[j] { -1 } else { 1 })
        });
        BraidingOp::color(space, &eps).expect("table has the right shape")
    }

    pub fn op(&self) -> &TensorOperator {
        &self.op
    }

    pub fn matrix(&self) -> &Matrix {
        self.op.matrix()
    }

    pub fn space(&self) -> VectorSpace {
        self.op.space()
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn is_yang_baxter(&self) -> bool {
        self.is_yang_baxter
    }

    pub fn is_symmetry(&self) -> bool {
        self.is_symmetry
    }

    pub fn is_flip(&self) -> bool {
        self.op == TensorOperator::flip(self.space())
    }

    pub fn inverse(&self) -> Option<&TensorOperator> {
        self.inverse.as_ref()
    }

    /// `B_k` on `G^{⊗n}`.
    pub fn slot(&self, k: usize, n: usize) -> TensorOperator {
        placement(&self.op, k, n).expect("slot in range")
    }

    /// First basis tensor `e_i ⊗ e_j` (flat index) on which `B² ≠ id`.
    pub fn symmetry_witness(&self) -> Option<usize> {
        let sq = compose(&self.op, &self.op).expect("binary");
        let defect = sq
            .sub(&TensorOperator::identity(self.space(), 2))
            .expect("same shape");
        defect.matrix().first_nonzero_column()
    }

    /// First basis tensor of `G^{⊗3}` (flat index) on which the braid
    /// equation fails.
    pub fn yang_baxter_witness(&self) -> Option<usize> {
        yang_baxter_defect(&self.op)
            .expect("binary")
            .matrix()
            .first_nonzero_column()
    }

    /// The braiding induced on the dual space: the matrix transpose.
    pub fn transpose(&self) -> BraidingOp {
        BraidingOp::new(self.op.transpose()).expect("binary")
    }

    pub fn neg(&self) -> BraidingOp {
        BraidingOp::new(self.op.neg()).expect("binary")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    /// 1-based generator index `i` of `σ_i`.
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn sigma(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn sigma_inv(generator: usize) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        for l in &letters {
            if l.generator == 0 || l.generator >= strands {
                return Err(BraidError::GeneratorOutOfRange {
                    generator: l.generator,
                    strands,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// A positive word `σ_{g1} σ_{g2} ...`.
    pub fn positive(strands: usize, generators: &[usize]) -> Result<Self, BraidError> {
        BraidWord::new(
            strands,
            generators.iter().map(|&g| Letter::sigma(g)).collect(),
        )
    }

    pub fn empty(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn generators(&self) -> Vec<usize> {
        self.letters.iter().map(|l| l.generator).collect()
    }

    /// Image in the symmetric group (`σ_i^{±1} ↦ s_i`).
    pub fn permutation(&self) -> Permutation {
        self.letters
            .iter()
            .fold(Permutation::identity(self.strands), |acc, l| {
                acc.compose(&Permutation::simple(self.strands, l.generator))
            })
    }
}

/// A permutation of `{0, .., n-1}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, BraidError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(BraidError::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The adjacent transposition `s_i` swapping positions `i-1` and `i`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "generator out of range");
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inversions(&self) -> usize {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.images[i] > self.images[j])
            .count()
    }

    pub fn sign(&self) -> i64 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// All `n!` permutations in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

/// Reverses a record of position swaps into the word of the starting permutation.
fn word_from_swaps(n: usize, mut swaps: Vec<usize>) -> BraidWord {
    swaps.reverse();
    BraidWord::positive(n, &swaps).expect("swaps are in range")
}

/// The canonical lift `ψ(p)`: sort `p` by moving the largest misplaced value
/// right with adjacent swaps.
pub fn reduced_word(p: &Permutation) -> BraidWord {
    let n = p.n();
    let mut a = p.images.clone();
    let mut swaps = Vec::new();
    for v in (0..n).rev() {
        let mut pos = a.iter().position(|&x| x == v).unwrap();
        while pos < v {
            a.swap(pos, pos + 1);
            swaps.push(pos + 1);
            pos += 1;
        }
    }
    word_from_swaps(n, swaps)
}

/// A second reduced word, obtained by moving the smallest misplaced value left.
pub fn reduced_word_leftward(p: &Permutation) -> BraidWord {
    let n = p.n();
    let mut a = p.images.clone();
    let mut swaps = Vec::new();
    for v in 0..n {
        let mut pos = a.iter().position(|&x| x == v).unwrap();
        while pos > v {
            a.swap(pos - 1, pos);
            swaps.push(pos);
            pos -= 1;
        }
    }
    word_from_swaps(n, swaps)
}

/// Every reduced word of `p`, by recursion on right descents.
pub fn all_reduced_words(p: &Permutation) -> Vec<BraidWord> {
    fn go(p: &Permutation, suffix: &mut Vec<usize>, out: &mut Vec<BraidWord>) {
        if p.is_identity() {
            let mut gens = suffix.clone();
            gens.reverse();
            out.push(BraidWord::positive(p.n(), &gens).expect("in range"));
            return;
        }
        for i in 1..p.n() {
            if p.apply(i - 1) > p.apply(i) {
                suffix.push(i);
                go(&p.compose(&Permutation::simple(p.n(), i)), suffix, out);
                suffix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(p, &mut Vec::new(), &mut out);
    out
}

/// `ρ_B(w)`, with `ρ_B(σ_k) = B_k`.
pub fn rho(b: &BraidingOp, w: &BraidWord) -> Result<TensorOperator, BraidError> {
    if !b.is_yang_baxter() {
        return Err(BraidError::NotYangBaxter);
    }
    let n = w.strands();
    let forward: Vec<TensorOperator> = (1..n).map(|k| b.slot(k, n)).collect();
    let backward: Option<Vec<TensorOperator>> = if w.letters().iter().any(|l| l.inverse) {
        let inv = b.inverse().ok_or(BraidError::NotInvertible)?;
        Some(
            (1..n)
                .map(|k| placement(inv, k, n).expect("slot in range"))
                .collect(),
        )
    } else {
        None
    };
    let mut acc = TensorOperator::identity(b.space(), n);
    for l in w.letters() {
        let factor = if l.inverse {
            &backward.as_ref().expect("inverses computed")[l.generator - 1]
        } else {
            &forward[l.generator - 1]
        };
        acc = compose(&acc, factor)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignMode {
    /// `Y(B) = Σ_p ρ_B(ψ(p))`.
    Plain,
    /// `Y(-B) = Σ_p sign(p) ρ_B(ψ(p))`.
    Signed,
}

pub fn young_antisymmetrizer(
    b: &BraidingOp,
    n: usize,
    mode: SignMode,
) -> Result<TensorOperator, BraidError> {
    if n == 0 {
        return Err(BraidError::ZeroDegree);
    }
    if !b.is_yang_baxter() {
        return Err(BraidError::NotYangBaxter);
    }
    let slots: Vec<TensorOperator> = (1..n).map(|k| b.slot(k, n)).collect();
    let mut sum = TensorOperator::zero(b.space(), n, n);
    for p in Permutation::all(n) {
        let word = reduced_word(&p);
        let mut term = TensorOperator::identity(b.space(), n);
        for g in word.generators() {
            term = compose(&term, &slots[g - 1])?;
        }
        let term = match mode {
            SignMode::Signed if p.sign() < 0 => term.neg(),
            _ => term,
        };
        sum = sum.add(&term)?;
    }
    Ok(sum)
}

/// `Y_n(-S)`, the form every downstream module uses.
pub fn antisymmetrizer(s: &BraidingOp, n: usize) -> Result<TensorOperator, BraidError> {
    young_antisymmetrizer(s, n, SignMode::Signed)
}

pub fn factorial(n: usize) -> i64 {
    (1..=n as i64).product::<i64>().max(1)
}

/// `true` when `Y ∘ Y = n! Y`.
pub fn is_scaled_projector(y: &TensorOperator, n: usize) -> bool {
    let sq = compose(y, y).expect("endomorphism");
    sq == y.scale(&Rational::from(factorial(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn space(d: usize) -> VectorSpace {
        VectorSpace::new(d).unwrap()
    }

    fn odd_color(d: usize) -> BraidingOp {
        // ε_ii = 1, ε_ij = -1 otherwise
        let eps = Matrix::from_fn(d, d, |i, j| Rational::from(if i == j { 1 } else { -1 }));
        BraidingOp::color(space(d), &eps).unwrap()
    }

    #[test]
    fn flip_flags() {
        for d in 1..=3 {
            let t = BraidingOp::flip(space(d));
            assert!(t.is_yang_baxter());
            assert!(t.is_symmetry());
            assert!(t.is_invertible());
            assert!(t.is_flip());
        }
    }

    #[test]
    fn color_flags() {
        let s = BraidingOp::super_sign(&[false, true]);
        assert!(s.is_yang_baxter() && s.is_symmetry());
        let c = odd_color(3);
        assert!(c.is_yang_baxter() && c.is_symmetry());
        // ε_12 = 2, ε_21 = 1/2 is a Yang-Baxter involution, though not ±1-valued.
        let eps = Matrix::from_rows(vec![
            vec![Rational::from(1), Rational::from(2)],
            vec![Rational::new(1, 2), Rational::from(1)],
        ])
        .unwrap();
        let c = BraidingOp::color(space(2), &eps).unwrap();
        assert!(c.is_yang_baxter() && c.is_symmetry());
        // ε_12 ε_21 ≠ 1 breaks the symmetry but not the braid equation.
        let eps = Matrix::from_i64_rows(&[&[1, 2], &[2, 1]]);
        let c = BraidingOp::color(space(2), &eps).unwrap();
        assert!(c.is_yang_baxter() && !c.is_symmetry());
        assert_eq!(c.symmetry_witness(), Some(1));
    }

    #[test]
    fn non_yang_baxter_matrix() {
        // A generic invertible 4x4 matrix.
        let m =
            Matrix::from_i64_rows(&[&[1, 2, 0, 0], &[0, 1, 3, 0], &[0, 0, 1, 1], &[1, 0, 0, 2]]);
        let b = BraidingOp::new(TensorOperator::new(space(2), 2, 2, m).unwrap()).unwrap();
        assert!(b.is_invertible());
        assert!(!b.is_yang_baxter());
        assert!(b.yang_baxter_witness().is_some());
        assert_eq!(
            rho(&b, &BraidWord::empty(2)),
            Err(BraidError::NotYangBaxter)
        );
    }

    #[test]
    fn twice_flip_is_not_symmetry() {
        let t2 = TensorOperator::flip(space(2)).scale(&Rational::from(2));
        let b = BraidingOp::new(t2).unwrap();
        assert!(!b.is_symmetry());
        // (2τ)³ = 8τ³ on both sides of the braid equation.
        assert!(b.is_yang_baxter());
        assert!(!check_symmetry(b.op()));
    }

    #[test]
    fn permutation_basics() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert_eq!(Permutation::all(4).len(), 24);
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(p.inversions(), 2);
        assert_eq!(p.sign(), 1);
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn reduced_word_examples() {
        assert!(reduced_word(&Permutation::identity(3)).is_empty());
        let t = Permutation::new(vec![1, 0]).unwrap();
        assert_eq!(reduced_word(&t).generators(), vec![1]);
        // 3-cycle 0 -> 1 -> 2 -> 0
        let c = Permutation::new(vec![1, 2, 0]).unwrap();
        let w = reduced_word(&c);
        assert_eq!(w.len(), 2);
        assert_eq!(w.permutation(), c);
        assert_eq!(all_reduced_words(&c).len(), 1);
    }

    #[test]
    fn reduced_words_represent_their_permutation() {
        for n in 1..=5 {
            for p in Permutation::all(n) {
                for w in [reduced_word(&p), reduced_word_leftward(&p)] {
                    assert_eq!(w.len(), p.inversions());
                    assert_eq!(w.permutation(), p);
                }
                for w in all_reduced_words(&p) {
                    assert_eq!(w.len(), p.inversions());
                    assert_eq!(w.permutation(), p);
                }
            }
        }
        let longest = Permutation::new(vec![3, 2, 1, 0]).unwrap();
        assert_eq!(all_reduced_words(&longest).len(), 16);
    }

    #[test]
    fn rho_examples() {
        let s = odd_color(2);
        assert_eq!(
            rho(&s, &BraidWord::empty(3)).unwrap(),
            TensorOperator::identity(space(2), 3)
        );
        assert_eq!(
            &rho(&s, &BraidWord::positive(2, &[1]).unwrap()).unwrap(),
            s.op()
        );
        let a = rho(&s, &BraidWord::positive(3, &[1, 2, 1]).unwrap()).unwrap();
        let b = rho(&s, &BraidWord::positive(3, &[2, 1, 2]).unwrap()).unwrap();
        assert_eq!(a, b);
        let w = BraidWord::new(3, vec![Letter::sigma(1), Letter::sigma_inv(1)]).unwrap();
        assert_eq!(rho(&s, &w).unwrap(), TensorOperator::identity(space(2), 3));
        assert!(BraidWord::positive(3, &[3]).is_err());
    }

    #[test]
    fn rho_requires_invertibility_for_inverses() {
        let zero = BraidingOp::new(TensorOperator::zero(space(2), 2, 2)).unwrap();
        assert!(zero.is_yang_baxter());
        let w = BraidWord::new(2, vec![Letter::sigma_inv(1)]).unwrap();
        assert_eq!(rho(&zero, &w), Err(BraidError::NotInvertible));
    }

    #[test]
    fn antisymmetrizer_small_cases() {
        let t = BraidingOp::flip(space(2));
        assert_eq!(
            antisymmetrizer(&t, 1).unwrap(),
            TensorOperator::identity(space(2), 1)
        );
        let y2 = antisymmetrizer(&t, 2).unwrap();
        let expected = TensorOperator::identity(space(2), 2)
            .sub(&TensorOperator::flip(space(2)))
            .unwrap();
        assert_eq!(y2, expected);
        assert!(y2.apply_basis(0).iter().all(Zero::is_zero));
        assert_eq!(
            y2.apply_basis(1),
            vec![0, 1, -1, 0]
                .into_iter()
                .map(Rational::from)
                .collect::<Vec<_>>()
        );
        let y3 = antisymmetrizer(&BraidingOp::flip(space(3)), 3).unwrap();
        assert_eq!(y3.matrix().rank(), 1);
        assert_eq!(antisymmetrizer(&t, 0), Err(BraidError::ZeroDegree));
    }

    #[test]
    fn signed_sum_matches_negated_braiding() {
        // Σ sign(p) ρ_S(ψ(p)) = Σ ρ_{-S}(ψ(p)) since ψ(p) has length ≡ inversions mod 2.
        for s in [
            BraidingOp::flip(space(2)),
            odd_color(2),
            BraidingOp::super_sign(&[false, true, true]),
        ] {
            for n in 1..=3 {
                let signed = young_antisymmetrizer(&s, n, SignMode::Signed).unwrap();
                let plain_neg = young_antisymmetrizer(&s.neg(), n, SignMode::Plain).unwrap();
                assert_eq!(signed, plain_neg);
            }
        }
    }

    #[test]
    fn plain_mode_for_flip_is_symmetrizer() {
        let t = BraidingOp::flip(space(2));
        let y = young_antisymmetrizer(&t, 2, SignMode::Plain).unwrap();
        assert_eq!(
            y,
            TensorOperator::identity(space(2), 2)
                .add(&TensorOperator::flip(space(2)))
                .unwrap()
        );
        assert!(is_scaled_projector(&y, 2));
    }
}
