//! Exact linear algebra over the rationals.

mod matrix;
mod rat;
mod subspace;

pub use matrix::{rref, solve_vandermonde, RatMatrix, RatVector, Rref};
pub use rat::Rat;
pub use subspace::Subspace;
