//! Exact rational linear algebra: scalars, polynomials, matrices,
//! subspaces and the spectral data of quasi-unipotent matrices.

pub mod matrix;
pub mod poly;
pub mod rational;
pub mod spectral;
pub mod subspace;

pub use matrix::{Matrix, MatrixJson};
pub use poly::Polynomial;
pub use rational::{format_rational, parse_rational, Rational};
pub use spectral::{
    char_poly, cyclotomic, euler_phi, jordan_structure, quasi_unipotency_order, JordanBlock,
    QUASI_UNIPOTENT_BOUND,
};
pub use subspace::Subspace;

/// Rank over the rationals.
pub fn matrix_rank(m: &Matrix) -> usize {
    m.rank()
}
