//! Exact rational scalars, dense matrices and subspaces.
//!
//! Everything downstream (antisymmetrizer ranks, kernel inclusions, quotient
//! coordinates) is decided here, so nothing in this module touches floating
//! point. Subspaces are stored by their reduced row-echelon basis, which makes
//! equality of subspaces a plain comparison of basis arrays.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        found: usize,
        expected: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational {text:?}: {reason}")]
pub struct ParseRationalError {
    pub text: String,
    pub reason: &'static str,
}

/// An arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n as i64)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn is_decimal_integer(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts only the canonical serialization: a decimal integer, or `p/q`
    /// with `q > 1` and `gcd(p, q) = 1`, with the sign on `p` only.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseRationalError {
            text: text.to_string(),
            reason,
        };
        let value = match text.split_once('/') {
            None => {
                if !is_decimal_integer(text) {
                    return Err(err("not a decimal integer"));
                }
                let n: BigInt = text.parse().map_err(|_| err("not a decimal integer"))?;
                Rational(BigRational::from_integer(n))
            }
            Some((p, q)) => {
                if !is_decimal_integer(p) || q.is_empty() || !q.bytes().all(|b| b.is_ascii_digit())
                {
                    return Err(err("expected p/q with decimal p and positive decimal q"));
                }
                let p: BigInt = p.parse().map_err(|_| err("bad numerator"))?;
                let q: BigInt = q.parse().map_err(|_| err("bad denominator"))?;
                if q.is_zero() {
                    return Err(err("zero denominator"));
                }
                Rational(BigRational::new(p, q))
            }
        };
        if value.to_string() != text {
            return Err(err("not in canonical lowest-terms form"));
        }
        Ok(value)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $assign_trait<&Rational> for Rational {
            fn $assign_method(&mut self, rhs: &Rational) {
                self.0.$assign_method(&rhs.0);
            }
        }
        impl $assign_trait<Rational> for Rational {
            fn $assign_method(&mut self, rhs: Rational) {
                self.0.$assign_method(rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Dense row-major matrix. Rows index the output basis, columns the input
/// basis, so `M * v` is the action on a column vector `v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from its rows. An empty row list with `cols` given
    /// separately is expressed through [`Matrix::zeros`].
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinAlgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(LinAlgError::RaggedRows {
                    row: i,
                    found: row.len(),
                    expected: ncols,
                });
            }
            entries.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Convenience constructor from small integer rows.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
        .expect("ragged integer rows")
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(height: usize, columns: &[Vec<Rational>]) -> Result<Self, LinAlgError> {
        for (j, c) in columns.iter().enumerate() {
            if c.len() != height {
                return Err(LinAlgError::RaggedRows {
                    row: j,
                    found: c.len(),
                    expected: height,
                });
            }
        }
        Ok(Matrix::from_fn(height, columns.len(), |r, c| {
            columns[c][r].clone()
        }))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Number of non-zero entries.
    pub fn nnz(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    /// Index of the first column that is not identically zero.
    pub fn first_nonzero_column(&self) -> Option<usize> {
        (0..self.cols).find(|&c| (0..self.rows).any(|r| !self.get(r, c).is_zero()))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        self.same_shape("add", other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        self.same_shape("sub", other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Matrix product `self * other`. Zero entries of either factor are
    /// skipped, which keeps permutation-like operators cheap.
    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::ShapeMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        let other_support: Vec<Vec<usize>> = (0..other.rows)
            .map(|k| {
                (0..other.cols)
                    .filter(|&j| !other.get(k, j).is_zero())
                    .collect()
            })
            .collect();
        for i in 0..self.rows {
            for (k, support) in other_support.iter().enumerate() {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for &j in support {
                    let prod = a * other.get(k, j);
                    out.entries[i * other.cols + j] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::ShapeMismatch {
                op: "apply",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Kronecker product with the first factor most significant.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.entries[(i * other.rows + k) * cols + j * other.cols + l] = a * b;
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    pub fn inverse(&self) -> Result<Matrix, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::ShapeMismatch {
                op: "inverse",
                left: self.shape(),
                right: self.shape(),
            });
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Rational>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| {
                    if c == r {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row
            })
            .collect();
        let pivots = reduce_rows(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinAlgError::Singular);
        }
        Ok(Matrix::from_fn(n, n, |r, c| rows[r][n + c].clone()))
    }

    fn same_shape(&self, op: &'static str, other: &Matrix) -> Result<(), LinAlgError> {
        if self.shape() != other.shape() {
            return Err(LinAlgError::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix add")
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix sub")
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix mul")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&-Rational::one())
    }
}

/// In-place Gauss-Jordan elimination over `rows`, returning pivot columns.
/// On return the non-zero rows form the reduced row-echelon form.
fn reduce_rows(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        // Entries left of c in the pivot row are already zero.
        let support: Vec<usize> = (c..ncols).filter(|&j| !rows[r][j].is_zero()).collect();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &support {
                let delta = &f * &pivot_row[j];
                row[j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row-echelon form and pivot columns; rank is the pivot count.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut rows: Vec<Vec<Rational>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let pivots = reduce_rows(&mut rows, m.cols);
    let entries = rows.into_iter().flatten().collect();
    (
        Matrix {
            rows: m.rows,
            cols: m.cols,
            entries,
        },
        pivots,
    )
}

/// A linear subspace of `Q^ambient_dim`, held as its reduced echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| unit_vector(ambient_dim, i))
            .collect();
        Subspace {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn span(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Result<Self, LinAlgError> {
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(LinAlgError::AmbientMismatch {
                    left: ambient_dim,
                    right: v.len(),
                });
            }
        }
        let mut rows = vectors;
        let pivots = reduce_rows(&mut rows, ambient_dim);
        rows.truncate(pivots.len());
        Ok(Subspace {
            ambient_dim,
            basis: rows,
            pivots,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// What is left of `v` after eliminating against the echelon basis; zero
    /// exactly when `v` lies in the subspace.
    pub fn residual(&self, v: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        if v.len() != self.ambient_dim {
            return Err(LinAlgError::AmbientMismatch {
                left: self.ambient_dim,
                right: v.len(),
            });
        }
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, b) in w.iter_mut().zip(row).skip(p) {
                if !b.is_zero() {
                    *x -= &f * b;
                }
            }
        }
        Ok(w)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, LinAlgError> {
        Ok(self.residual(v)?.iter().all(Zero::is_zero))
    }

    /// Smallest subspace containing both.
    pub fn join(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        check_ambient(self, other)?;
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.ambient_dim, vectors)
    }

    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize, LinAlgError> {
        Ok(self.dim() + other.dim() - self.join(other)?.dim())
    }

    /// Basis vectors as the columns of an `ambient_dim x dim` matrix.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim, &self.basis).expect("basis has ambient length")
    }
}

fn check_ambient(a: &Subspace, b: &Subspace) -> Result<(), LinAlgError> {
    if a.ambient_dim != b.ambient_dim {
        return Err(LinAlgError::AmbientMismatch {
            left: a.ambient_dim,
            right: b.ambient_dim,
        });
    }
    Ok(())
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

pub fn kernel_basis(m: &Matrix) -> Subspace {
    let (reduced, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = unit_vector(m.cols, f);
            for (i, &p) in pivots.iter().enumerate() {
                let x = reduced.get(i, f);
                if !x.is_zero() {
                    v[p] = -x;
                }
            }
            v
        })
        .collect();
    Subspace::span(m.cols, vectors).expect("kernel vectors have column length")
}

/// Column space of `m`.
pub fn image_basis(m: &Matrix) -> Subspace {
    let vectors = (0..m.cols).map(|c| m.column(c)).collect();
    Subspace::span(m.rows, vectors).expect("columns have row length")
}

/// `a ⊆ b`.
pub fn subspace_leq(a: &Subspace, b: &Subspace) -> Result<bool, LinAlgError> {
    check_ambient(a, b)?;
    for v in &a.basis {
        if !b.contains(v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn qv(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rational_canonical_parse() {
        assert_eq!("3/4".parse::<Rational>().unwrap(), Rational::new(3, 4));
        assert_eq!("-12".parse::<Rational>().unwrap(), q(-12));
        assert_eq!("0".parse::<Rational>().unwrap(), q(0));
        for bad in [
            "2/4", "3/1", "-0", "+1", "1/-2", "1/0", "", "a", "01", "-1/-2", "1.5",
        ] {
            assert!(bad.parse::<Rational>().is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn rational_display_round_trip() {
        for (p, d) in [(1, 2), (-7, 3), (6, 4), (0, 5), (10, -4)] {
            let r = Rational::new(p, d);
            assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        }
        assert_eq!(Rational::new(6, -4).to_string(), "-3/2");
    }

    #[test]
    fn rational_sum_is_exact() {
        let a = Rational::new(1, 6);
        let b = Rational::new(3, 10);
        // (1*10 + 6*3) / 60 = 28/60 = 7/15
        assert_eq!(&a + &b, Rational::new(7, 15));
    }

    #[test]
    fn rref_examples() {
        let (r, p) = rref(&Matrix::identity(2));
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(p, vec![0, 1]);

        let (r, p) = rref(&Matrix::zeros(3, 3));
        assert_eq!(r, Matrix::zeros(3, 3));
        assert!(p.is_empty());

        let (r, p) = rref(&Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, Matrix::from_i64_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(3)).dim(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(3, 3)), Subspace::full(3));
        let k = kernel_basis(&Matrix::from_i64_rows(&[&[1, 1]]));
        assert_eq!(k.basis(), &[qv(&[1, -1])]);
    }

    #[test]
    fn image_examples() {
        assert_eq!(image_basis(&Matrix::identity(3)), Subspace::full(3));
        assert_eq!(image_basis(&Matrix::zeros(3, 2)), Subspace::zero(3));
        let im = image_basis(&Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]));
        assert_eq!(im.basis(), &[qv(&[1, 2])]);
    }

    #[test]
    fn leq_examples() {
        let plane = Subspace::span(3, vec![qv(&[1, 0, 0]), qv(&[0, 1, 0])]).unwrap();
        let line = Subspace::span(3, vec![qv(&[1, 1, 0])]).unwrap();
        assert!(subspace_leq(&Subspace::zero(3), &line).unwrap());
        assert!(!subspace_leq(&Subspace::full(3), &plane).unwrap());
        assert!(subspace_leq(&line, &plane).unwrap());
        assert!(!subspace_leq(&plane, &line).unwrap());
        assert_eq!(
            subspace_leq(&Subspace::zero(2), &line),
            Err(LinAlgError::AmbientMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn inverse_and_singular() {
        let m = Matrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert_eq!(
            Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]).inverse(),
            Err(LinAlgError::Singular)
        );
    }

    #[test]
    fn intersection_dimension() {
        let a = Subspace::span(3, vec![qv(&[1, 0, 0]), qv(&[0, 1, 0])]).unwrap();
        let b = Subspace::span(3, vec![qv(&[0, 1, 0]), qv(&[0, 0, 1])]).unwrap();
        assert_eq!(a.intersection_dim(&b).unwrap(), 1);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..=9, r * c)
                .prop_map(move |xs| Matrix::from_fn(r, c, |i, j| q(xs[i * c + j])))
        })
    }

    fn sparse_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(prop_oneof![3 => Just(0i64), 1 => -3i64..=3], r * c)
                .prop_map(move |xs| Matrix::from_fn(r, c, |i, j| q(xs[i * c + j])))
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in small_matrix()) {
            let (once, p1) = rref(&m);
            let (twice, p2) = rref(&once);
            prop_assert_eq!(once, twice);
            prop_assert_eq!(p1, p2);
        }

        #[test]
        fn rank_nullity(m in sparse_matrix()) {
            prop_assert_eq!(m.cols(), m.rank() + kernel_basis(&m).dim());
            prop_assert_eq!(image_basis(&m).dim(), m.rank());
        }

        #[test]
        fn kernel_vectors_are_exactly_annihilated(m in small_matrix()) {
            for v in kernel_basis(&m).basis() {
                prop_assert!(m.apply(v).unwrap().iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn mutual_inclusion_iff_equal_bases(a in sparse_matrix(), b in sparse_matrix()) {
            // Column spaces living in the same ambient space.
            let ia = image_basis(&a);
            let ib = image_basis(&b);
            if ia.ambient_dim() == ib.ambient_dim() {
                let both = subspace_leq(&ia, &ib).unwrap() && subspace_leq(&ib, &ia).unwrap();
                prop_assert_eq!(both, ia == ib);
            }
        }

        #[test]
        fn span_is_basis_independent(m in sparse_matrix()) {
            // Reordered and rescaled spanning sets give the identical echelon basis.
            let cols: Vec<Vec<Rational>> = (0..m.cols()).map(|c| m.column(c)).collect();
            let mut shuffled: Vec<Vec<Rational>> = cols.iter().rev().map(|v| {
                v.iter().map(|x| x * &q(-2)).collect()
            }).collect();
            shuffled.push(vec![q(0); m.rows()]);
            prop_assert_eq!(
                Subspace::span(m.rows(), cols).unwrap(),
                Subspace::span(m.rows(), shuffled).unwrap()
            );
        }
    }
}
