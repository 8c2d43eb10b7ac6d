//! Orthonormal kernel bases, kept exact as orthogonal integer vectors plus
//! their squared norms.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::exact;
use super::matrix::{IntMatrix, RatMatrix};

/// Mutually orthogonal primitive integer vectors spanning a subspace.
/// Dividing column `j` by `√squared_norms[j]` gives an orthonormal basis.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicBasis {
    pub vectors: IntMatrix,
    pub squared_norms: Vec<BigInt>,
}

impl HarmonicBasis {
    pub fn dim(&self) -> usize {
        self.vectors.cols()
    }

    /// `ln |det S|` where the orthonormal basis equals `vectors · S`.
    pub fn log_scale(&self) -> f64 {
        -0.5 * self.squared_norms.iter().map(exact::ln_abs_int).sum::<f64>()
    }

    pub fn orthonormal(&self) -> DMatrix<f64> {
        let mut m = self.vectors.to_f64();
        for (j, n2) in self.squared_norms.iter().enumerate() {
            let s = (0.5 * exact::ln_abs_int(n2)).exp();
            for r in 0..m.nrows() {
                m[(r, j)] /= s;
            }
        }
        m
    }
}

/// Gram–Schmidt over ℚ on the columns of `span` (assumed independent).
pub fn orthogonalize(span: &IntMatrix) -> HarmonicBasis {
    let n = span.rows();
    let mut done: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    let mut cols = Vec::new();
    let mut norms = Vec::new();
    for c in 0..span.cols() {
        let mut v: Vec<BigRational> =
            span.column(c).into_iter().map(BigRational::from_integer).collect();
        for (u, uu) in &done {
            let dot: BigRational = v.iter().zip(u).map(|(a, b)| a * b).sum();
            if dot.is_zero() {
                continue;
            }
            let k = dot / uu;
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= &k * ui;
            }
        }
        let (ints, _) = exact::primitive_vector(&v);
        let n2: BigInt = ints.iter().map(|x| x * x).sum();
        let uq: Vec<BigRational> = ints.iter().cloned().map(BigRational::from_integer).collect();
        done.push((uq, BigRational::from_integer(n2.clone())));
        cols.push(ints);
        norms.push(n2);
    }
    HarmonicBasis { vectors: IntMatrix::from_columns(&cols, n), squared_norms: norms }
}

/// Exact orthogonal basis of `ker A`.
pub fn kernel_harmonic_basis(a: &IntMatrix) -> HarmonicBasis {
    orthogonalize(&exact::kernel(a))
}

/// Orthonormal basis of `ker A` as real column vectors.
pub fn orthonormal_kernel_basis(a: &IntMatrix) -> DMatrix<f64> {
    kernel_harmonic_basis(a).orthonormal()
}

pub fn to_rational(h: &HarmonicBasis) -> RatMatrix {
    h.vectors.to_rational()
}
