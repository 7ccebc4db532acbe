//! Braided exterior powers `∧ⁿ_S G = G^{⊗n} / ker Y_n(-S)` and the maps they
//! inherit.
//!
//! Quotient coordinates are read off the echelon basis of the kernel: the
//! representatives of `∧ⁿ_S G` are the standard basis tensors sitting at the
//! non-pivot positions of that basis.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::braid::{antisymmetrizer, BraidError, BraidingOp};
use crate::exactla::{kernel_basis, Matrix, Rational, Subspace};
use crate::tensor::{TensorOperator, VectorSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("braiding is not a symmetry (S² ≠ id)")]
    NotSymmetry,
    #[error("map has degrees {found:?}, levels expect {expected:?}")]
    DegreeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("levels and map live over different spaces")]
    SpaceMismatch,
    #[error("kernel not preserved: a vector of ker Y_{source_degree}(-S) is mapped outside ker Y_{target_degree}(-S)")]
    KernelNotPreserved {
        source_degree: usize,
        target_degree: usize,
        /// A kernel vector of the source level.
        witness: Vec<Rational>,
        /// Its image, which is not in the target kernel.
        image: Vec<Rational>,
    },
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// One degree of the braided exterior algebra.
#[derive(Clone, Debug)]
pub struct ExteriorLevel {
    space: VectorSpace,
    degree: usize,
    antisymmetrizer: TensorOperator,
    kernel: Subspace,
    representatives: Vec<usize>,
    projection: Matrix,
    section: Matrix,
}

impl ExteriorLevel {
    pub fn space(&self) -> VectorSpace {
        self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn antisymmetrizer(&self) -> &TensorOperator {
        &self.antisymmetrizer
    }

    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    pub fn tensor_dim(&self) -> usize {
        self.space.power_dim(self.degree)
    }

    pub fn quotient_dim(&self) -> usize {
        self.representatives.len()
    }

    /// Flat indices of the basis tensors chosen as quotient representatives.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    /// `G^{⊗n} -> ∧ⁿ_S G`, a `quotient_dim x d^n` matrix.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// `∧ⁿ_S G -> G^{⊗n}`, picking the representative tensors.
    pub fn section(&self) -> &Matrix {
        &self.section
    }

    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        self.projection.apply(v).expect("vector in G^{⊗n}")
    }
}

pub fn build_level(s: &BraidingOp, n: usize) -> Result<ExteriorLevel, ExteriorError> {
    if !s.is_symmetry() {
        return Err(ExteriorError::NotSymmetry);
    }
    let y = antisymmetrizer(s, n)?;
    let kernel = kernel_basis(y.matrix());
    let total = s.space().power_dim(n);
    let mut is_pivot = vec![false; total];
    for &p in kernel.pivots() {
        is_pivot[p] = true;
    }
    let representatives: Vec<usize> = (0..total).filter(|&j| !is_pivot[j]).collect();

    // v = Σ_k v[p_k] K_k + Σ_{j ∉ P} (v[j] - Σ_k v[p_k] K_k[j]) e_j
    let mut projection = Matrix::zeros(representatives.len(), total);
    for (row, &j) in representatives.iter().enumerate() {
        projection.set(row, j, Rational::one());
        for (k, &p) in kernel.pivots().iter().enumerate() {
            let x = &kernel.basis()[k][j];
            if !x.is_zero() {
                projection.set(row, p, -x);
            }
        }
    }
    let mut section = Matrix::zeros(total, representatives.len());
    for (col, &j) in representatives.iter().enumerate() {
        section.set(j, col, Rational::one());
    }
    Ok(ExteriorLevel {
        space: s.space(),
        degree: n,
        antisymmetrizer: y,
        kernel,
        representatives,
        projection,
        section,
    })
}

/// Levels `1..=max_degree`.
pub fn build_levels(
    s: &BraidingOp,
    max_degree: usize,
) -> Result<Vec<ExteriorLevel>, ExteriorError> {
    (1..=max_degree).map(|n| build_level(s, n)).collect()
}

/// A linear map between exterior levels, in quotient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorMap {
    source_degree: usize,
    target_degree: usize,
    matrix: Matrix,
}

impl FactorMap {
    pub fn source_degree(&self) -> usize {
        self.source_degree
    }

    pub fn target_degree(&self) -> usize {
        self.target_degree
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &FactorMap) -> FactorMap {
        assert_eq!(
            inner.target_degree, self.source_degree,
            "factor maps do not compose"
        );
        FactorMap {
            source_degree: inner.source_degree,
            target_degree: self.target_degree,
            matrix: &self.matrix * &inner.matrix,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `matrix ∘ proj_src = proj_tgt ∘ f`.
    pub fn commutes_with(
        &self,
        f: &TensorOperator,
        src: &ExteriorLevel,
        tgt: &ExteriorLevel,
    ) -> bool {
        &self.matrix * src.projection() == tgt.projection() * f.matrix()
    }
}

/// The map `∧ᵐ_S G -> ∧ⁿ_S G` induced by `f`, or a witness that `f` does not
/// descend to the quotients.
pub fn induce(
    f: &TensorOperator,
    src: &ExteriorLevel,
    tgt: &ExteriorLevel,
) -> Result<FactorMap, ExteriorError> {
    if f.space() != src.space || f.space() != tgt.space {
        return Err(ExteriorError::SpaceMismatch);
    }
    if (f.in_degree(), f.out_degree()) != (src.degree, tgt.degree) {
        return Err(ExteriorError::DegreeMismatch {
            expected: (src.degree, tgt.degree),
            found: (f.in_degree(), f.out_degree()),
        });
    }
    for v in src.kernel.basis() {
        let image = f.apply(v);
        if !tgt.kernel.contains(&image).expect("image in G^{⊗n}") {
            return Err(ExteriorError::KernelNotPreserved {
                source_degree: src.degree,
                target_degree: tgt.degree,
                witness: v.clone(),
                image,
            });
        }
    }
    let matrix = &(tgt.projection() * f.matrix()) * src.section();
    Ok(FactorMap {
        source_degree: src.degree,
        target_degree: tgt.degree,
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::image_basis;
    use crate::tensor::compose;

    fn flip(d: usize) -> BraidingOp {
        BraidingOp::flip(VectorSpace::new(d).unwrap())
    }

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn check_invariants(level: &ExteriorLevel) {
        let q = level.quotient_dim();
        assert!((level.projection() * level.section()).is_identity() || q == 0);
        for v in level.kernel().basis() {
            assert!(level.project(v).iter().all(Zero::is_zero));
        }
        assert_eq!(level.tensor_dim(), level.kernel().dim() + q);
        // The image of Y realizes the same dimension as the quotient.
        assert_eq!(image_basis(level.antisymmetrizer().matrix()).dim(), q);
    }

    #[test]
    fn flip_level_examples() {
        let l = build_level(&flip(3), 2).unwrap();
        assert_eq!(l.quotient_dim(), 3);
        check_invariants(&l);
        let l = build_level(&flip(2), 3).unwrap();
        assert_eq!(l.quotient_dim(), 0);
        check_invariants(&l);
        for s in [flip(3), BraidingOp::super_sign(&[false, true])] {
            let l = build_level(&s, 1).unwrap();
            assert_eq!(l.quotient_dim(), s.dim());
            assert_eq!(l.kernel().dim(), 0);
        }
    }

    #[test]
    fn flip_dims_are_binomial() {
        for d in 1..=3 {
            for n in 1..=3 {
                let l = build_level(&flip(d), n).unwrap();
                assert_eq!(l.quotient_dim(), binomial(d, n), "d={d} n={n}");
                check_invariants(&l);
            }
        }
    }

    #[test]
    fn super_line_has_symmetric_exterior_powers() {
        // One odd generator: ∧ⁿ is one-dimensional in every degree.
        let s = BraidingOp::super_sign(&[true]);
        for n in 1..=4 {
            assert_eq!(build_level(&s, n).unwrap().quotient_dim(), 1);
        }
    }

    #[test]
    fn image_and_kernel_are_complementary() {
        for s in [flip(3), BraidingOp::super_sign(&[false, true, true])] {
            for n in 1..=3 {
                let l = build_level(&s, n).unwrap();
                let im = image_basis(l.antisymmetrizer().matrix());
                assert_eq!(im.intersection_dim(l.kernel()).unwrap(), 0);
                assert_eq!(im.dim() + l.kernel().dim(), l.tensor_dim());
            }
        }
    }

    #[test]
    fn rejects_non_symmetry() {
        let space = VectorSpace::new(2).unwrap();
        let b = BraidingOp::new(TensorOperator::flip(space).scale(&Rational::from(2))).unwrap();
        assert!(matches!(
            build_level(&b, 2),
            Err(ExteriorError::NotSymmetry)
        ));
    }

    #[test]
    fn induce_zero_and_antisymmetrizer() {
        let s = flip(2);
        let l2 = build_level(&s, 2).unwrap();
        let l3 = build_level(&s, 3).unwrap();
        let zero = TensorOperator::zero(s.space(), 2, 3);
        assert!(induce(&zero, &l2, &l3).unwrap().is_zero());
        let y = l2.antisymmetrizer().clone();
        let fm = induce(&y, &l2, &l2).unwrap();
        assert!(fm.commutes_with(&y, &l2, &l2));
        // Y_2(-τ) = id - τ acts as multiplication by 2 on ∧²
        assert_eq!(fm.matrix(), &Matrix::identity(1).scale(&Rational::from(2)));
    }

    #[test]
    fn induce_reports_witness() {
        let s = flip(2);
        let l2 = build_level(&s, 2).unwrap();
        // Sends e1⊗e1 (in the kernel) to e1⊗e2 (not in the kernel).
        let mut m = Matrix::zeros(4, 4);
        m.set(1, 0, Rational::from(1));
        let f = TensorOperator::new(s.space(), 2, 2, m).unwrap();
        match induce(&f, &l2, &l2) {
            Err(ExteriorError::KernelNotPreserved { witness, image, .. }) => {
                assert!(l2.kernel().contains(&witness).unwrap());
                assert!(!l2.kernel().contains(&image).unwrap());
                assert_eq!(f.apply(&witness), image);
            }
            other => panic!("expected KernelNotPreserved, got {other:?}"),
        }
        let l3 = build_level(&s, 3).unwrap();
        assert!(matches!(
            induce(&f, &l2, &l3),
            Err(ExteriorError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn induce_is_functorial() {
        // Maps of the form g⊗g preserve every kernel for the flip.
        let s = flip(2);
        let l2 = build_level(&s, 2).unwrap();
        let g = Matrix::from_i64_rows(&[&[1, 2], &[3, -1]]);
        let h = Matrix::from_i64_rows(&[&[0, 1], &[1, 1]]);
        let gg = TensorOperator::new(s.space(), 2, 2, g.kron(&g)).unwrap();
        let hh = TensorOperator::new(s.space(), 2, 2, h.kron(&h)).unwrap();
        let fg = induce(&gg, &l2, &l2).unwrap();
        let fh = induce(&hh, &l2, &l2).unwrap();
        let composite = induce(&compose(&hh, &gg).unwrap(), &l2, &l2).unwrap();
        assert_eq!(composite, fh.after(&fg));
    }
}
