//! Tensor powers of a finite-dimensional space and linear maps between them.
//!
//! Basis vectors of `G^{⊗n}` are indexed in mixed radix with the first tensor
//! factor most significant, so `e_i ⊗ e_j` sits at `i * d + j` and [`kron`] is
//! the ordinary Kronecker product of matrices.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactla::{Matrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("space must have dimension >= 1")]
    ZeroDimension,
    #[error("factor index {index} out of range for dimension {dim}")]
    FactorOutOfRange { index: usize, dim: usize },
    #[error("operators act on spaces of different dimension ({left} vs {right})")]
    SpaceMismatch { left: usize, right: usize },
    #[error("cannot compose: inner degrees {outer_in} and {inner_out} differ")]
    DegreeMismatch { outer_in: usize, inner_out: usize },
    #[error("matrix shape {found:?} does not match degrees, expected {expected:?}")]
    BadShape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("slot {slot} out of range for degree {degree}")]
    SlotOutOfRange { slot: usize, degree: usize },
    #[error("expected an operator of degree 2 -> 2, found {input} -> {output}")]
    NotBinary { input: usize, output: usize },
}

/// A `d`-dimensional space with basis `e_1 .. e_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VectorSpace {
    dim: usize,
}

impl VectorSpace {
    pub fn new(dim: usize) -> Result<Self, TensorError> {
        if dim == 0 {
            return Err(TensorError::ZeroDimension);
        }
        Ok(VectorSpace { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the `n`-th tensor power; the zeroth power is the scalar line.
    pub fn power_dim(&self, n: usize) -> usize {
        self.dim.pow(n as u32)
    }

    /// Display label of a basis tensor, e.g. `e1⊗e3`.
    pub fn basis_label(&self, flat: usize, n: usize) -> String {
        if n == 0 {
            return "1".to_string();
        }
        multi_index(flat, self.dim, n)
            .iter()
            .map(|i| format!("e{}", i + 1))
            .collect::<Vec<_>>()
            .join("⊗")
    }
}

pub fn flat_index(multi: &[usize], d: usize) -> Result<usize, TensorError> {
    multi.iter().try_fold(0usize, |acc, &i| {
        if i >= d {
            Err(TensorError::FactorOutOfRange { index: i, dim: d })
        } else {
            Ok(acc * d + i)
        }
    })
}

/// Inverse of [`flat_index`] for a tensor of `n` factors.
pub fn multi_index(mut flat: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = flat % d;
        flat /= d;
    }
    out
}

/// A linear map `G^{⊗in} -> G^{⊗out}` as a `d^out x d^in` matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorOperator {
    space: VectorSpace,
    in_degree: usize,
    out_degree: usize,
    matrix: Matrix,
}

impl fmt::Debug for TensorOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TensorOperator(d={}, {} -> {}) {:?}",
            self.space.dim, self.in_degree, self.out_degree, self.matrix
        )
    }
}

impl TensorOperator {
    pub fn new(
        space: VectorSpace,
        in_degree: usize,
        out_degree: usize,
        matrix: Matrix,
    ) -> Result<Self, TensorError> {
        let expected = (space.power_dim(out_degree), space.power_dim(in_degree));
        if matrix.shape() != expected {
            return Err(TensorError::BadShape {
                expected,
                found: matrix.shape(),
            });
        }
        Ok(TensorOperator {
            space,
            in_degree,
            out_degree,
            matrix,
        })
    }

    pub fn identity(space: VectorSpace, degree: usize) -> Self {
        TensorOperator {
            space,
            in_degree: degree,
            out_degree: degree,
            matrix: Matrix::identity(space.power_dim(degree)),
        }
    }

    pub fn zero(space: VectorSpace, in_degree: usize, out_degree: usize) -> Self {
        TensorOperator {
            space,
            in_degree,
            out_degree,
            matrix: Matrix::zeros(space.power_dim(out_degree), space.power_dim(in_degree)),
        }
    }

    /// The flip `u ⊗ v -> v ⊗ u` on `G^{⊗2}`.
    pub fn flip(space: VectorSpace) -> Self {
        let d = space.dim;
        let mut m = Matrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                m.set(j * d + i, i * d + j, Rational::from(1));
            }
        }
        TensorOperator {
            space,
            in_degree: 2,
            out_degree: 2,
            matrix: m,
        }
    }

    pub fn space(&self) -> VectorSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim
    }

    pub fn in_degree(&self) -> usize {
        self.in_degree
    }

    pub fn out_degree(&self) -> usize {
        self.out_degree
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Image of the basis tensor with the given flat index.
    pub fn apply_basis(&self, flat: usize) -> Vec<Rational> {
        self.matrix.column(flat)
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.matrix
            .apply(v)
            .expect("vector length matches input degree")
    }

    pub fn add(&self, other: &TensorOperator) -> Result<TensorOperator, TensorError> {
        self.same_signature(other)?;
        Ok(self.with_matrix(&self.matrix + &other.matrix))
    }

    pub fn sub(&self, other: &TensorOperator) -> Result<TensorOperator, TensorError> {
        self.same_signature(other)?;
        Ok(self.with_matrix(&self.matrix - &other.matrix))
    }

    pub fn scale(&self, s: &Rational) -> TensorOperator {
        self.with_matrix(self.matrix.scale(s))
    }

    pub fn neg(&self) -> TensorOperator {
        self.with_matrix(-&self.matrix)
    }

    /// Matrix transpose, read as the dual map `(G*)^{⊗out} -> (G*)^{⊗in}`
    /// under dual bases with the same index order.
    pub fn transpose(&self) -> TensorOperator {
        TensorOperator {
            space: self.space,
            in_degree: self.out_degree,
            out_degree: self.in_degree,
            matrix: self.matrix.transpose(),
        }
    }

    fn with_matrix(&self, matrix: Matrix) -> TensorOperator {
        TensorOperator {
            space: self.space,
            in_degree: self.in_degree,
            out_degree: self.out_degree,
            matrix,
        }
    }

    fn same_signature(&self, other: &TensorOperator) -> Result<(), TensorError> {
        same_space(self, other)?;
        if (self.in_degree, self.out_degree) != (other.in_degree, other.out_degree) {
            return Err(TensorError::BadShape {
                expected: self.matrix.shape(),
                found: other.matrix.shape(),
            });
        }
        Ok(())
    }
}

fn same_space(a: &TensorOperator, b: &TensorOperator) -> Result<(), TensorError> {
    if a.space != b.space {
        return Err(TensorError::SpaceMismatch {
            left: a.space.dim,
            right: b.space.dim,
        });
    }
    Ok(())
}

/// `a ⊗ b`, acting as `(a ⊗ b)(u ⊗ v) = a(u) ⊗ b(v)`.
pub fn kron(a: &TensorOperator, b: &TensorOperator) -> Result<TensorOperator, TensorError> {
    same_space(a, b)?;
    Ok(TensorOperator {
        space: a.space,
        in_degree: a.in_degree + b.in_degree,
        out_degree: a.out_degree + b.out_degree,
        matrix: a.matrix.kron(&b.matrix),
    })
}

/// `a ∘ b`: first `b`, then `a`.
pub fn compose(a: &TensorOperator, b: &TensorOperator) -> Result<TensorOperator, TensorError> {
    same_space(a, b)?;
    if a.in_degree != b.out_degree {
        return Err(TensorError::DegreeMismatch {
            outer_in: a.in_degree,
            inner_out: b.out_degree,
        });
    }
    Ok(TensorOperator {
        space: a.space,
        in_degree: b.in_degree,
        out_degree: a.out_degree,
        matrix: &a.matrix * &b.matrix,
    })
}

/// Composes a chain left to right as written: `chain(&[a, b, c]) = a ∘ b ∘ c`.
pub fn compose_all(ops: &[&TensorOperator]) -> Result<TensorOperator, TensorError> {
    let (last, rest) = ops.split_last().expect("at least one operator");
    rest.iter()
        .rev()
        .try_fold((*last).clone(), |acc, op| compose(op, &acc))
}

/// `id_{k-1} ⊗ b2 ⊗ id_{n-k-1}` on `G^{⊗n}`, with `k` counted from 1.
pub fn placement(b2: &TensorOperator, k: usize, n: usize) -> Result<TensorOperator, TensorError> {
    if b2.in_degree != 2 || b2.out_degree != 2 {
        return Err(TensorError::NotBinary {
            input: b2.in_degree,
            output: b2.out_degree,
        });
    }
    if k == 0 || k + 1 > n {
        return Err(TensorError::SlotOutOfRange { slot: k, degree: n });
    }
    let left = TensorOperator::identity(b2.space, k - 1);
    let right = TensorOperator::identity(b2.space, n - k - 1);
    kron(&kron(&left, b2)?, &right)
}

/// `id_left ⊗ op ⊗ id_right`, the general form of [`placement`].
pub fn pad(op: &TensorOperator, left: usize, right: usize) -> TensorOperator {
    let l = TensorOperator::identity(op.space, left);
    let r = TensorOperator::identity(op.space, right);
    kron(&kron(&l, op).expect("same space"), &r).expect("same space")
}

/// Pure tensor `v_1 ⊗ ... ⊗ v_n` of coordinate vectors.
pub fn tensor_vectors(factors: &[&[Rational]]) -> Vec<Rational> {
    factors.iter().fold(vec![Rational::from(1)], |acc, v| {
        let mut out = Vec::with_capacity(acc.len() * v.len());
        for a in &acc {
            for b in v.iter() {
                if a.is_zero() || b.is_zero() {
                    out.push(Rational::zero());
                } else {
                    out.push(a * b);
                }
            }
        }
        out
    })
}
