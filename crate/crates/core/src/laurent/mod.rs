//! Laurent polynomials in `z` with integer coefficients, and matrices over them.

mod matrix;
mod poly;
mod rational;

pub use matrix::PolyMatrix;
pub use poly::{z_integer, LaurentPoly, ParseLaurentError};
pub use rational::{LinalgError, RationalMatrix};

/// `(M|_{z -> z^{-1}})^T`.
pub fn dagger(m: &PolyMatrix) -> PolyMatrix {
    m.dagger()
}

/// Entrywise sum of coefficients.
pub fn eval_at_one(m: &PolyMatrix) -> RationalMatrix {
    m.eval_at_one()
}
