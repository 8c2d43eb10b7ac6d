//! Intersection chains for stratified complexes with a perversity, and the
//! closed-form torsion of finite cones.

mod chains;
mod cone;

pub use chains::{allowable_chain_complex, basic_sets, intersection_complex, BasicSets, IntersectionChainComplex};
pub use cone::{
    closed_form_laplacian_expansion, cone_homology, cone_intersection_complex_closed_form, cone_torsion_closed_form,
    cone_torsion_closed_form_with,
    metric_correction, metric_corrected_cone_torsion, verify_cone, ConeVerification,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(p_2, …, p_n)` with `p_2 = 0` and steps of 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Perversity {
    values: Vec<i64>,
}

impl Perversity {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Perversity("empty perversity".into()));
        }
        if values[0] != 0 {
            return Err(Error::Perversity(format!("p_2 must be 0, got {}", values[0])));
        }
        for (j, w) in values.windows(2).enumerate() {
            let step = w[1] - w[0];
            if step != 0 && step != 1 {
                return Err(Error::Perversity(format!("p_{} − p_{} = {step}, must be 0 or 1", j + 3, j + 2)));
            }
        }
        Ok(Perversity { values })
    }

    /// Smallest perversity on an `n`-dimensional space with the given top
    /// value, `p_k = max(0, p_n − (n − k))`.
    pub fn with_top(n: usize, p_n: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Perversity(format!("perversities need n ≥ 2, got n = {n}")));
        }
        if p_n < 0 || p_n > n as i64 - 2 {
            return Err(Error::Perversity(format!("p_n = {p_n} outside 0..={} for n = {n}", n - 2)));
        }
        Perversity::new((2..=n).map(|k| (p_n - (n - k) as i64).max(0)).collect())
    }

    /// Lower middle perversity `p_k = ⌊(k − 2)/2⌋`.
    pub fn lower_middle(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Perversity(format!("perversities need n ≥ 2, got n = {n}")));
        }
        Perversity::new((2..=n).map(|k| (k as i64 - 2) / 2).collect())
    }

    pub fn parse_csv(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Perversity(format!("bad perversity entry `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        Perversity::new(values)
    }

    /// The dimension `n` this perversity is defined for.
    pub fn n(&self) -> usize {
        self.values.len() + 1
    }

    /// `p_k` for `2 ≤ k ≤ n`.
    pub fn p(&self, k: usize) -> i64 {
        self.values[k - 2]
    }

    pub fn top(&self) -> i64 {
        *self.values.last().expect("nonempty")
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }
}

/// `(p̄, i)`-allowability of a `dim`-simplex meeting the strata in the given
/// dimensions: `dim ≤ i` and `dim(σ ∩ X_{n−k}) ≤ i − k + p_k`. Each entry of
/// `meets` is `(k, dim(σ ∩ X_{n−k}))`; empty intersections are omitted.
pub fn allowable(dim: usize, i: i64, p: &Perversity, meets: &[(usize, usize)]) -> bool {
    if dim as i64 > i {
        return false;
    }
    meets.iter().all(|&(k, d)| {
        let pk = if k >= 2 { p.p(k) } else { 0 };
        d as i64 <= i - k as i64 + pk
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validity() {
        assert!(Perversity::new(vec![0, 1, 1, 2]).is_ok());
        assert!(Perversity::new(vec![1]).is_err());
        assert!(Perversity::new(vec![0, 2]).is_err());
        assert!(Perversity::new(vec![0, 1, 0]).is_err());
        assert_eq!(Perversity::with_top(4, 1).unwrap().values(), &[0, 0, 1]);
        assert!(Perversity::with_top(3, 5).is_err());
        assert_eq!(Perversity::lower_middle(5).unwrap().values(), &[0, 0, 1, 1]);
        assert_eq!(Perversity::parse_csv("0, 1").unwrap().top(), 1);
    }

    #[test]
    fn allowability_rules() {
        let p = Perversity::with_top(3, 0).unwrap();
        assert!(allowable(1, 1, &p, &[]));
        assert!(!allowable(2, 1, &p, &[]));
        // cone point as a 0-simplex: allowed only when 0 ≤ i − n + p_n
        assert!(!allowable(0, 2, &p, &[(3, 0)]));
        assert!(allowable(0, 3, &p, &[(3, 0)]));
        let p1 = Perversity::with_top(3, 1).unwrap();
        assert!(allowable(0, 2, &p1, &[(3, 0)]));
    }
}
