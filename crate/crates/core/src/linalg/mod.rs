//! Exact and floating linear algebra over ℤ, ℚ and ℝ.

pub mod charpoly;
pub mod exact;
pub mod harmonic;
pub mod lattice;
pub mod matrix;
pub mod pdet;

pub use harmonic::{orthonormal_kernel_basis, HarmonicBasis};
pub use lattice::{saturate_columns, smith_rank_and_kernel, Lattice, SmithKernel};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use pdet::{
    laplacian, pseudo_determinant, pseudo_determinant_exact, pseudo_determinant_float, pseudo_determinant_via_kernel,
    pseudo_determinant_with, PdetMethod, PdetValue, PseudoDet, DEFAULT_FLOAT_THRESHOLD, DEFAULT_TAU_REL,
};
