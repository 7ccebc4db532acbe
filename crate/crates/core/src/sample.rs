//! Seeded random structures. The S-morphism condition, cocommutativity and
//! anticommutativity are linear in the structure constants, so the admissible
//! structures form a subspace; sampling picks a random integer combination of
//! a basis of it.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::BraidingOp;
use crate::exactla::{kernel_basis, Matrix, Rational};
use crate::lie::{SLieAlgebra, SLieCoalgebra};
use crate::tensor::{compose, compose_all, pad, TensorOperator, VectorSpace};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Braidings the sampler knows how to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BraidingFamily {
    Flip,
    /// Super sign `ε_ij = (-1)^{|i||j|}`; the last `⌊d/2⌋` basis vectors are odd.
    Color,
    /// `(g⊗g) τ (g⊗g)^{-1}` for a random invertible integer `g`.
    RandomSymmetric,
}

impl BraidingFamily {
    pub const ALL: [BraidingFamily; 3] = [
        BraidingFamily::Flip,
        BraidingFamily::Color,
        BraidingFamily::RandomSymmetric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BraidingFamily::Flip => "flip",
            BraidingFamily::Color => "color",
            BraidingFamily::RandomSymmetric => "random-symmetric",
        }
    }

    pub fn braiding<R: Rng>(self, space: VectorSpace, rng: &mut R) -> BraidingOp {
        match self {
            BraidingFamily::Flip => BraidingOp::flip(space),
            BraidingFamily::Color => {
                let d = space.dim();
                let odd: Vec<bool> = (0..d).map(|i| i >= d - d / 2).collect();
                BraidingOp::super_sign(&odd)
            }
            BraidingFamily::RandomSymmetric => random_symmetric_braiding(space, rng),
        }
    }
}

/// 0 with probability 1/2, otherwise uniform on `{±1, ±2}`.
pub fn sample_coordinate<R: Rng>(rng: &mut R) -> Rational {
    if rng.gen_bool(0.5) {
        Rational::from_integer(0)
    } else {
        Rational::from_integer(*[-2, -1, 1, 2].choose(rng).expect("non-empty"))
    }
}

fn random_invertible<R: Rng>(d: usize, rng: &mut R) -> (Matrix, Matrix) {
    loop {
        let g = Matrix::from_fn(d, d, |_, _| Rational::from_integer(rng.gen_range(-2..=2)));
        if let Ok(inv) = g.inverse() {
            return (g, inv);
        }
    }
}

/// A symmetry conjugate to the flip, hence Yang-Baxter.
pub fn random_symmetric_braiding<R: Rng>(space: VectorSpace, rng: &mut R) -> BraidingOp {
    let (g, inv) = random_invertible(space.dim(), rng);
    let gg = g.kron(&g);
    let gg_inv = inv.kron(&inv);
    let tau = TensorOperator::flip(space);
    let m = &(&gg * tau.matrix()) * &gg_inv;
    BraidingOp::new(TensorOperator::new(space, 2, 2, m).expect("d² x d²"))
        .expect("conjugate of the flip")
}

/// Extra linear constraints beyond the S-morphism condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    None,
    /// `(id + S)Δ = 0` for coalgebras, `m(id + S) = 0` for algebras.
    Antisymmetric,
}

fn unit_operator(
    space: VectorSpace,
    in_degree: usize,
    out_degree: usize,
    k: usize,
) -> TensorOperator {
    let r = space.power_dim(out_degree);
    let c = space.power_dim(in_degree);
    let m = Matrix::from_fn(r, c, |i, j| {
        Rational::from_integer(i64::from(i * c + j == k))
    });
    TensorOperator::new(space, in_degree, out_degree, m).expect("shape")
}

fn from_coordinates(
    space: VectorSpace,
    in_degree: usize,
    out_degree: usize,
    v: &[Rational],
) -> TensorOperator {
    let c = space.power_dim(in_degree);
    let m = Matrix::from_fn(space.power_dim(out_degree), c, |i, j| v[i * c + j].clone());
    TensorOperator::new(space, in_degree, out_degree, m).expect("shape")
}

/// Basis of the solution space of a linear constraint on operators, found by
/// evaluating the constraint on every matrix unit.
fn solution_basis(
    space: VectorSpace,
    in_degree: usize,
    out_degree: usize,
    constraint: impl Fn(&TensorOperator) -> Vec<TensorOperator>,
) -> Vec<Vec<Rational>> {
    let n = space.power_dim(in_degree) * space.power_dim(out_degree);
    let columns: Vec<Vec<Rational>> = (0..n)
        .map(|k| {
            constraint(&unit_operator(space, in_degree, out_degree, k))
                .iter()
                .flat_map(|op| op.matrix().entries().to_vec())
                .collect()
        })
        .collect();
    let height = columns.first().map_or(0, Vec::len);
    let c = Matrix::from_columns(height, &columns).expect("equal heights");
    kernel_basis(&c).basis().to_vec()
}

fn coalgebra_constraint(
    s: &BraidingOp,
    symmetry: Symmetry,
) -> impl Fn(&TensorOperator) -> Vec<TensorOperator> + '_ {
    let s2s1 = compose(&s.slot(2, 3), &s.slot(1, 3)).expect("degree 3");
    let id_plus_s = TensorOperator::identity(s.space(), 2)
        .add(s.op())
        .expect("degree 2");
    move |delta| {
        let lhs = compose(&pad(delta, 0, 1), s.op()).expect("degrees");
        let rhs = compose(&s2s1, &pad(delta, 1, 0)).expect("degrees");
        let mut out = vec![lhs.sub(&rhs).expect("degrees")];
        if symmetry == Symmetry::Antisymmetric {
            out.push(compose(&id_plus_s, delta).expect("degrees"));
        }
        out
    }
}

fn algebra_constraint(
    s: &BraidingOp,
    symmetry: Symmetry,
) -> impl Fn(&TensorOperator) -> Vec<TensorOperator> + '_ {
    let s2s1 = compose(&s.slot(2, 3), &s.slot(1, 3)).expect("degree 3");
    let id_plus_s = TensorOperator::identity(s.space(), 2)
        .add(s.op())
        .expect("degree 2");
    move |m| {
        let lhs = compose(s.op(), &pad(m, 1, 0)).expect("degrees");
        let rhs = compose_all(&[&pad(m, 0, 1), &s2s1]).expect("degrees");
        let mut out = vec![lhs.sub(&rhs).expect("degrees")];
        if symmetry == Symmetry::Antisymmetric {
            out.push(compose(m, &id_plus_s).expect("degrees"));
        }
        out
    }
}

/// Draws structures from the solution space of the constraints for one braiding.
#[derive(Debug, Clone)]
pub struct Sampler {
    braiding: BraidingOp,
    symmetry: Symmetry,
    basis: Vec<Vec<Rational>>,
}

impl Sampler {
    /// Comultiplications that are S-morphisms, optionally cocommutative.
    pub fn coalgebras(braiding: BraidingOp, symmetry: Symmetry) -> Sampler {
        let basis = solution_basis(
            braiding.space(),
            1,
            2,
            coalgebra_constraint(&braiding, symmetry),
        );
        Sampler {
            braiding,
            symmetry,
            basis,
        }
    }

    /// Multiplications that are S-morphisms, optionally anticommutative.
    pub fn algebras(braiding: BraidingOp, symmetry: Symmetry) -> Sampler {
        let basis = solution_basis(
            braiding.space(),
            2,
            1,
            algebra_constraint(&braiding, symmetry),
        );
        Sampler {
            braiding,
            symmetry,
            basis,
        }
    }

    pub fn braiding(&self) -> &BraidingOp {
        &self.braiding
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    /// Dimension of the solution space.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    fn combination<R: Rng>(&self, rng: &mut R, len: usize) -> Vec<Rational> {
        let mut v = vec![Rational::from_integer(0); len];
        for b in &self.basis {
            let t = sample_coordinate(rng);
            if t == Rational::from_integer(0) {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                *x += &t * y;
            }
        }
        v
    }

    pub fn coalgebra<R: Rng>(&self, rng: &mut R) -> SLieCoalgebra {
        let space = self.braiding.space();
        let v = self.combination(rng, space.power_dim(3));
        SLieCoalgebra::new(self.braiding.clone(), from_coordinates(space, 1, 2, &v))
            .expect("degrees")
    }

    pub fn algebra<R: Rng>(&self, rng: &mut R) -> SLieAlgebra {
        let space = self.braiding.space();
        let v = self.combination(rng, space.power_dim(3));
        SLieAlgebra::new(self.braiding.clone(), from_coordinates(space, 2, 1, &v)).expect("degrees")
    }
}
