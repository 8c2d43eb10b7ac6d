// Index loops read closer to the formulas in numeric kernels.
#![allow(clippy::needless_range_loop)]

pub mod complex;
pub mod error;
pub mod intersection;
pub mod linalg;
pub mod sequences;
pub mod torsion;

pub use error::{Error, Result};
