//! Independent oracles: everything here is written with explicit index loops
//! over basis tensors, without the library's Kronecker products, placement
//! operators, braid words or composition helpers.

#![allow(dead_code, clippy::needless_range_loop)]

use braided_koszul::exactla::{Matrix, Rational};
use num_traits::{One, Zero};

/// All permutations of `0..n` as image vectors.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q: Vec<usize> = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn inversions(p: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 0..p.len() {
        for k in j + 1..p.len() {
            if p[j] > p[k] {
                out.push((j, k));
            }
        }
    }
    out
}

pub fn sign(p: &[usize]) -> i64 {
    if inversions(p).len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn digits(mut flat: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in (0..n).rev() {
        out[slot] = flat % d;
        flat /= d;
    }
    out
}

fn undigits(ix: &[usize], d: usize) -> usize {
    ix.iter().fold(0, |acc, &i| acc * d + i)
}

/// The operator moving the factor in position `j` to position `p[j]`, with
/// the coefficient `Π ε[i_j][i_k]` over inverted pairs `j < k`, `p[j] > p[k]`.
/// With `ε ≡ 1` this is the plain factor permutation.
pub fn colored_permutation_matrix(p: &[usize], d: usize, eps: &[Vec<i64>]) -> Matrix {
    let n = p.len();
    let size = d.pow(n as u32);
    let inv = inversions(p);
    let mut m = Matrix::zeros(size, size);
    for col in 0..size {
        let ix = digits(col, d, n);
        let mut out = vec![0; n];
        for j in 0..n {
            out[p[j]] = ix[j];
        }
        let c: i64 = inv.iter().map(|&(j, k)| eps[ix[j]][ix[k]]).product();
        m.set(undigits(&out, d), col, Rational::from_integer(c));
    }
    m
}

pub fn ones(d: usize) -> Vec<Vec<i64>> {
    vec![vec![1; d]; d]
}

/// `Σ_p sign(p) · P_p` for a color table, built directly from permutations.
pub fn colored_antisymmetrizer(d: usize, n: usize, eps: &[Vec<i64>]) -> Matrix {
    let size = d.pow(n as u32);
    let mut acc = Matrix::zeros(size, size);
    for p in permutations(n) {
        let pm = colored_permutation_matrix(&p, d, eps);
        let s = Rational::from_integer(sign(&p));
        for r in 0..size {
            for c in 0..size {
                let x = pm.get(r, c);
                if !x.is_zero() {
                    let v = acc.get(r, c) + &(x * &s);
                    acc.set(r, c, v);
                }
            }
        }
    }
    acc
}

/// Rank by plain fraction Gaussian elimination.
pub fn rank(m: &Matrix) -> usize {
    let mut rows: Vec<Vec<Rational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                for k in 0..m.cols() {
                    let v = &rows[r][k] - &(&f * &rows[rank][k]);
                    rows[r][k] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A 3-tensor of coordinates, `t[i][j][k]` the coefficient of `e_i⊗e_j⊗e_k`.
pub type T3 = Vec<Vec<Vec<Rational>>>;
/// `t[i][j]` the coefficient of `e_i⊗e_j`.
pub type T2 = Vec<Vec<Rational>>;

pub fn zero3(d: usize) -> T3 {
    vec![vec![vec![Rational::zero(); d]; d]; d]
}

pub fn zero2(d: usize) -> T2 {
    vec![vec![Rational::zero(); d]; d]
}

/// Structure constants `D[a][i][j]` of `Δ(e_a)` from a `d² x d` matrix.
pub fn delta_constants(delta: &Matrix, d: usize) -> Vec<T2> {
    (0..d)
        .map(|a| {
            (0..d)
                .map(|i| (0..d).map(|j| delta.get(i * d + j, a).clone()).collect())
                .collect()
        })
        .collect()
}

/// `S[(k,l)][(i,j)]`, the coefficient of `e_k⊗e_l` in `S(e_i⊗e_j)`.
pub struct Braid {
    pub d: usize,
    pub s: Vec<Vec<Vec<Vec<Rational>>>>,
}

impl Braid {
    pub fn from_matrix(m: &Matrix, d: usize) -> Braid {
        let mut s = vec![vec![vec![vec![Rational::zero(); d]; d]; d]; d];
        for (i, si) in s.iter_mut().enumerate() {
            for (j, sij) in si.iter_mut().enumerate() {
                for (k, sijk) in sij.iter_mut().enumerate() {
                    for (l, x) in sijk.iter_mut().enumerate() {
                        *x = m.get(k * d + l, i * d + j).clone();
                    }
                }
            }
        }
        Braid { d, s }
    }

    pub fn apply2(&self, t: &T2) -> T2 {
        let d = self.d;
        let mut out = zero2(d);
        for i in 0..d {
            for j in 0..d {
                if t[i][j].is_zero() {
                    continue;
                }
                for k in 0..d {
                    for l in 0..d {
                        let c = &self.s[i][j][k][l];
                        if !c.is_zero() {
                            out[k][l] += &(c * &t[i][j]);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn s1(&self, t: &T3) -> T3 {
        let d = self.d;
        let mut out = zero3(d);
        for i in 0..d {
            for j in 0..d {
                for m in 0..d {
                    if t[i][j][m].is_zero() {
                        continue;
                    }
                    for k in 0..d {
                        for l in 0..d {
                            let c = &self.s[i][j][k][l];
                            if !c.is_zero() {
                                out[k][l][m] += &(c * &t[i][j][m]);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn s2(&self, t: &T3) -> T3 {
        let d = self.d;
        let mut out = zero3(d);
        for m in 0..d {
            for i in 0..d {
                for j in 0..d {
                    if t[m][i][j].is_zero() {
                        continue;
                    }
                    for k in 0..d {
                        for l in 0..d {
                            let c = &self.s[i][j][k][l];
                            if !c.is_zero() {
                                out[m][k][l] += &(c * &t[m][i][j]);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// `Y₃(-S) = id - S₁ - S₂ + S₁S₂ + S₂S₁ - S₁S₂S₁`.
    pub fn y3(&self, t: &T3) -> T3 {
        let s1 = self.s1(t);
        let s2 = self.s2(t);
        let s1s2 = self.s1(&s2);
        let s2s1 = self.s2(&s1);
        let s1s2s1 = self.s1(&self.s2(&s1));
        combine(&[
            (1, t),
            (-1, &s1),
            (-1, &s2),
            (1, &s1s2),
            (1, &s2s1),
            (-1, &s1s2s1),
        ])
    }

    /// `(id + S₁S₂ + S₂S₁) t`.
    pub fn cyclic(&self, t: &T3) -> T3 {
        let s1s2 = self.s1(&self.s2(t));
        let s2s1 = self.s2(&self.s1(t));
        combine(&[(1, t), (1, &s1s2), (1, &s2s1)])
    }
}

pub fn combine(terms: &[(i64, &T3)]) -> T3 {
    let d = terms[0].1.len();
    let mut out = zero3(d);
    for (c, t) in terms {
        let c = Rational::from_integer(*c);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if !t[i][j][k].is_zero() {
                        out[i][j][k] += &(&c * &t[i][j][k]);
                    }
                }
            }
        }
    }
    out
}

pub fn is_zero3(t: &T3) -> bool {
    t.iter().flatten().flatten().all(Zero::is_zero)
}

/// `(Δ⊗id)Δ(e_a)`: `Σ_b D[a][b][k] D[b][i][j]`.
pub fn left_nested(dc: &[T2], a: usize) -> T3 {
    let d = dc.len();
    let mut out = zero3(d);
    for b in 0..d {
        for k in 0..d {
            let outer = &dc[a][b][k];
            if outer.is_zero() {
                continue;
            }
            for i in 0..d {
                for j in 0..d {
                    out[i][j][k] += &(outer * &dc[b][i][j]);
                }
            }
        }
    }
    out
}

/// `(id⊗Δ)Δ(e_a)`: `Σ_b D[a][i][b] D[b][j][k]`.
pub fn right_nested(dc: &[T2], a: usize) -> T3 {
    let d = dc.len();
    let mut out = zero3(d);
    for i in 0..d {
        for b in 0..d {
            let outer = &dc[a][i][b];
            if outer.is_zero() {
                continue;
            }
            for j in 0..d {
                for k in 0..d {
                    out[i][j][k] += &(outer * &dc[b][j][k]);
                }
            }
        }
    }
    out
}

/// `cJ(Δ)(e_a)`.
pub fn co_jacobiator(s: &Braid, dc: &[T2], a: usize) -> T3 {
    s.cyclic(&left_nested(dc, a))
}

/// Woronowicz form `(Δ⊗id)Δ - (id⊗Δ)Δ - S₂(Δ⊗id)Δ` at `e_a`.
pub fn woronowicz(s: &Braid, dc: &[T2], a: usize) -> T3 {
    let x = left_nested(dc, a);
    let y = right_nested(dc, a);
    let sx = s.s2(&x);
    combine(&[(1, &x), (-1, &y), (-1, &sx)])
}

/// `Y₃(-S)(Δ⊗id - id⊗Δ)Δ(e_a)`.
pub fn blumen_lhs(s: &Braid, dc: &[T2], a: usize) -> T3 {
    let x = left_nested(dc, a);
    let y = right_nested(dc, a);
    s.y3(&combine(&[(1, &x), (-1, &y)]))
}

/// Structure constants of `Δ_S = Δ - SΔ`.
pub fn twisted_constants(s: &Braid, dc: &[T2]) -> Vec<T2> {
    dc.iter()
        .map(|t| {
            let st = s.apply2(t);
            t.iter()
                .zip(&st)
                .map(|(r, sr)| r.iter().zip(sr).map(|(x, y)| x - y).collect())
                .collect()
        })
        .collect()
}

pub fn blumen_rhs(s: &Braid, dc: &[T2], a: usize) -> T3 {
    woronowicz(s, &twisted_constants(s, dc), a)
}

/// `(id + S)Δ(e_a) = 0` for all `a`.
pub fn cocommutative(s: &Braid, dc: &[T2]) -> bool {
    dc.iter().all(|t| {
        let st = s.apply2(t);
        t.iter()
            .flatten()
            .zip(st.iter().flatten())
            .all(|(x, y)| (x + y).is_zero())
    })
}

/// Matrix of `T3`-valued columns, in mixed-radix order.
pub fn flatten3(t: &T3) -> Vec<Rational> {
    t.iter().flatten().flatten().cloned().collect()
}

/// `[e_i, e_j]` coordinates from a `d x d²` multiplication matrix.
pub fn bracket_constants(m: &Matrix, d: usize) -> Vec<Vec<Vec<Rational>>> {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).map(|k| m.get(k, i * d + j).clone()).collect())
                .collect()
        })
        .collect()
}

/// Classical Jacobiator `[[x,y],z] + [[y,z],x] + [[z,x],y]` vanishes on all
/// basis triples.
pub fn classical_jacobi(m: &Matrix, d: usize) -> bool {
    let c = bracket_constants(m, d);
    let br = |u: &[Rational], v: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); d];
        for i in 0..d {
            for j in 0..d {
                let w = &u[i] * &v[j];
                if w.is_zero() {
                    continue;
                }
                for k in 0..d {
                    out[k] += &(&w * &c[i][j][k]);
                }
            }
        }
        out
    };
    let e = |i: usize| -> Vec<Rational> {
        (0..d)
            .map(|k| {
                if k == i {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    };
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let a = br(&br(&e(x), &e(y)), &e(z));
                let b = br(&br(&e(y), &e(z)), &e(x));
                let cc = br(&br(&e(z), &e(x)), &e(y));
                if (0..d).any(|k| !(&(&a[k] + &b[k]) + &cc[k]).is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}
