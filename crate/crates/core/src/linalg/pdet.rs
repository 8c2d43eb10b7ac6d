//! Pseudo-determinants (products of nonzero eigenvalues) of symmetric
//! positive semidefinite integer matrices.

use nalgebra::SymmetricEigen;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::charpoly::characteristic_polynomial;
use super::exact;
use super::matrix::IntMatrix;
use crate::error::{contract, Result};

/// Matrices larger than this go through the eigensolver by default.
pub const DEFAULT_FLOAT_THRESHOLD: usize = 256;
/// Relative eigenvalue cutoff `τ_rel` for the floating path.
pub const DEFAULT_TAU_REL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PdetMethod {
    Exact,
    Floating,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PdetValue {
    Exact(BigInt),
    Float(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PseudoDet {
    pub value: PdetValue,
    pub rank: usize,
    pub nullity: usize,
    pub method: PdetMethod,
}

impl PseudoDet {
    pub fn ln(&self) -> f64 {
        match &self.value {
            PdetValue::Exact(v) => exact::ln_abs_int(v),
            PdetValue::Float(v) => v.ln(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.ln().exp()
    }

    pub fn exact(&self) -> Option<&BigInt> {
        match &self.value {
            PdetValue::Exact(v) => Some(v),
            PdetValue::Float(_) => None,
        }
    }
}

/// `∂_{i+1} ∂_{i+1}ᵀ + ∂_iᵀ ∂_i` for boundary matrices `d_i : C_i → C_{i-1}`
/// and `d_ip1 : C_{i+1} → C_i`.
pub fn laplacian(d_i: &IntMatrix, d_ip1: &IntMatrix) -> IntMatrix {
    assert_eq!(d_i.cols(), d_ip1.rows(), "boundary maps do not compose");
    let up = d_ip1 * &d_ip1.transpose();
    let down = &d_i.transpose() * d_i;
    &up + &down
}

/// Exact for sizes up to [`DEFAULT_FLOAT_THRESHOLD`], floating above.
pub fn pseudo_determinant(a: &IntMatrix) -> Result<PseudoDet> {
    pseudo_determinant_with(a, DEFAULT_FLOAT_THRESHOLD)
}

pub fn pseudo_determinant_with(a: &IntMatrix, float_threshold: usize) -> Result<PseudoDet> {
    if a.rows() > float_threshold {
        pseudo_determinant_float(a, DEFAULT_TAU_REL)
    } else {
        pseudo_determinant_exact(a)
    }
}

/// `|c_nullity|` where `c_k` is the coefficient of `λ^k` in `det(λI − A)`.
pub fn pseudo_determinant_exact(a: &IntMatrix) -> Result<PseudoDet> {
    if !a.is_symmetric() {
        return contract("pseudo-determinant of a non-symmetric matrix");
    }
    let n = a.rows();
    let coeffs = characteristic_polynomial(a);
    // coeffs[k] multiplies λ^(n-k); scan from the constant term upwards
    let nullity = (0..=n).find(|&p| !coeffs[n - p].is_zero()).expect("leading coefficient is 1");
    let value = coeffs[n - nullity].abs();
    Ok(PseudoDet { value: PdetValue::Exact(value), rank: n - nullity, nullity, method: PdetMethod::Exact })
}

/// Product of eigenvalues above `tau_rel · λ_max`.
pub fn pseudo_determinant_float(a: &IntMatrix, tau_rel: f64) -> Result<PseudoDet> {
    if !a.is_symmetric() {
        return contract("pseudo-determinant of a non-symmetric matrix");
    }
    let n = a.rows();
    if n == 0 {
        return Ok(PseudoDet { value: PdetValue::Float(1.0), rank: 0, nullity: 0, method: PdetMethod::Floating });
    }
    let eig = SymmetricEigen::new(a.to_f64());
    let lmax = eig.eigenvalues.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let cutoff = tau_rel * lmax;
    let mut log = 0.0;
    let mut rank = 0;
    for &l in eig.eigenvalues.iter() {
        if l > cutoff && lmax > 0.0 {
            log += l.ln();
            rank += 1;
        }
    }
    Ok(PseudoDet {
        value: PdetValue::Float(log.exp()),
        rank,
        nullity: n - rank,
        method: PdetMethod::Floating,
    })
}

/// Independent exact route: with `K` an integer kernel basis,
/// `det(A + K Kᵀ) = pdet(A) · det(Kᵀ K)`.
pub fn pseudo_determinant_via_kernel(a: &IntMatrix) -> BigInt {
    let k = exact::kernel(a);
    let lifted = a + &(&k * &k.transpose());
    let gram = &k.transpose() * &k;
    let num = exact::det(&lifted);
    let den = exact::det(&gram);
    if den.is_zero() {
        return BigInt::one();
    }
    assert!((&num % &den).is_zero(), "kernel route produced a non-integer pseudo-determinant");
    (num / den).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_laplacian(n: usize) -> IntMatrix {
        IntMatrix::from_fn(n, n, |r, c| {
            if r == c {
                BigInt::from(2)
            } else if (r + 1) % n == c || (c + 1) % n == r {
                BigInt::from(-1)
            } else {
                BigInt::zero()
            }
        })
    }

    #[test]
    fn three_cycle() {
        let p = pseudo_determinant(&cycle_laplacian(3)).unwrap();
        assert_eq!(p.exact(), Some(&BigInt::from(9)));
        assert_eq!((p.rank, p.nullity), (2, 1));
    }

    #[test]
    fn identity_and_zero() {
        let p = pseudo_determinant(&IntMatrix::identity(4)).unwrap();
        assert_eq!(p.exact(), Some(&BigInt::one()));
        assert_eq!(p.rank, 4);
        let z = pseudo_determinant(&IntMatrix::zeros(3, 3)).unwrap();
        assert_eq!(z.exact(), Some(&BigInt::one()));
        assert_eq!((z.rank, z.nullity), (0, 3));
        let f = pseudo_determinant_float(&IntMatrix::zeros(3, 3), DEFAULT_TAU_REL).unwrap();
        assert_eq!(f.rank, 0);
        assert_eq!(f.to_f64(), 1.0);
    }

    #[test]
    fn n_cycle_matches_kirchhoff() {
        // pdet of the n-cycle Laplacian is n times its spanning-tree count n
        for n in 3..12 {
            let l = cycle_laplacian(n);
            let p = pseudo_determinant_exact(&l).unwrap();
            assert_eq!(p.exact(), Some(&BigInt::from(n * n)));
            assert_eq!(pseudo_determinant_via_kernel(&l), BigInt::from(n * n));
            let f = pseudo_determinant_float(&l, DEFAULT_TAU_REL).unwrap();
            assert!((f.ln() - p.ln()).abs() < 1e-9);
            assert_eq!(f.rank, p.rank);
        }
    }

    #[test]
    fn rejects_nonsymmetric() {
        let m = IntMatrix::from_i64(2, 2, &[1, 2, 3, 4]);
        assert!(pseudo_determinant(&m).is_err());
    }
}
