use serde::Serialize;

use crate::complex::ChainComplex;
use crate::error::{contract, Result};
use crate::linalg::{pseudo_determinant_with, DEFAULT_FLOAT_THRESHOLD};

#[derive(Clone, Debug, Serialize)]
pub struct TpReport {
    pub m: usize,
    pub p: usize,
    pub value: f64,
    /// `ln pdet Δ_k` for `k = 0..=m`.
    pub ln_pdet: Vec<f64>,
    /// The defining weights assume an even-dimensional manifold.
    pub odd_dimension: bool,
}

/// `ln T_p = ½ [Σ_{k=0}^{m−p} (−1)^{k+1} k L_k + (m−p) Σ_{k=m−p+1}^{m} (−1)^{k+1} L_k]`
/// with `L_k = ln pdet Δ_k` of the combinatorial Laplacians and `m` the
/// top degree.
pub fn discrete_tp(y: &ChainComplex, p: usize) -> Result<TpReport> {
    discrete_tp_with(y, p, DEFAULT_FLOAT_THRESHOLD)
}

pub fn discrete_tp_with(y: &ChainComplex, p: usize, float_threshold: usize) -> Result<TpReport> {
    if y.offset() != 0 {
        return contract("complex must start in degree 0");
    }
    let m = y.top_degree().max(0) as usize;
    if m == 0 || p >= m {
        return contract(format!("p = {p} outside 0..={}", m as i64 - 1));
    }
    let ln_pdet: Vec<f64> =
        (0..=m).map(|k| pseudo_determinant_with(&y.laplacian(k as i64), float_threshold).map(|d| d.ln())).collect::<Result<_>>()?;
    let sign = |k: usize| if k.is_multiple_of(2) { -1.0 } else { 1.0 };
    let mut acc = 0.0;
    for (k, l) in ln_pdet.iter().enumerate() {
        let weight = if k <= m - p { k as f64 } else { (m - p) as f64 };
        acc += sign(k) * weight * l;
    }
    Ok(TpReport { m, p, value: acc / 2.0, ln_pdet, odd_dimension: m % 2 == 1 })
}
