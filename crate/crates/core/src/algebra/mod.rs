//! Arithmetic over ℝ, ℂ, ℍ and 𝕆 and the matrix kernels built on it.
//!
//! Octonion support stops at scalars: every matrix routine that would need
//! associativity rejects β = 8 with m > 1.

mod linalg;
mod matrix;
mod scalar;
mod spectra;

#[cfg(test)]
pub(crate) mod testutil;

pub use linalg::{
    cholesky_hpd, congruence, logdet_hpd, solve_lower, solve_lower_adjoint, solve_right_lower, HermitianPD,
    HERMITIAN_TOL,
};
pub use matrix::{conj_transpose, matmul, DivMatrix};
pub use scalar::{cayley_dickson_mul, scalar_mul, AlgebraTag, DivScalar};
pub use spectra::{complex_adjoint, hermitian_eigenvalues, singular_values, PAIR_TOL};
