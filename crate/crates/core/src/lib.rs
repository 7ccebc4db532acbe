//! Braided Young antisymmetrizers, braided exterior powers and the Koszul
//! equivalence for S-Lie coalgebras, all in exact rational arithmetic.
//!
//! The layers build on each other:
//!
//! - [`exactla`]: rationals, dense matrices, kernels, images, echelon subspaces.
//! - [`tensor`]: tensor powers, Kronecker products, placement operators.
//! - [`braid`]: braidings, braid words, reduced words, `ρ_B` and `Y(±B)`.
//! - [`exterior`]: quotients `G^{⊗n} / ker Y_n(-S)` and induced maps.
//! - [`lie`]: S-Lie (co)algebras, their defining conditions and the Koszul report.
//! - [`sample`]: seeded random structures satisfying linear constraints.
//! - [`cli`]: structure files, reports and the `bkoszul` commands.

pub mod braid;
pub mod cli;
pub mod exactla;
pub mod exterior;
pub mod lie;
pub mod sample;
pub mod tensor;

pub use exactla::{Matrix, Rational, Subspace};
pub use tensor::{TensorOperator, VectorSpace};
