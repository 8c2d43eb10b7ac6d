use std::collections::{BTreeMap, BTreeSet};

use super::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Filtration `X = X_n ⊃ X_{n−2} ⊃ …` recorded by codimension: `strata[k]`
/// lists the simplices of `X_{n−k}`. Only the singular strata are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    dim: usize,
    strata: BTreeMap<usize, BTreeSet<Simplex>>,
}

impl Stratification {
    pub fn new(dim: usize, strata: BTreeMap<usize, BTreeSet<Simplex>>) -> Self {
        Stratification { dim, strata }
    }

    /// Single point stratum `{w}` in codimension `n`.
    pub fn cone(dim: usize, w: usize) -> Self {
        let mut strata = BTreeMap::new();
        strata.insert(dim, BTreeSet::from([vec![w]]));
        Stratification { dim, strata }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn strata(&self) -> &BTreeMap<usize, BTreeSet<Simplex>> {
        &self.strata
    }

    /// `X_{n−k}`: union of the stored strata of codimension ≥ `k`.
    pub fn skeleton(&self, codim: usize) -> BTreeSet<Simplex> {
        self.strata.range(codim..).flat_map(|(_, s)| s.iter().cloned()).collect()
    }

    pub fn cone_vertex(&self) -> Option<usize> {
        let nonempty: Vec<_> = self.strata.iter().filter(|(_, s)| !s.is_empty()).collect();
        match nonempty.as_slice() {
            [(&k, s)] if k == self.dim && s.len() == 1 => s.iter().next().filter(|v| v.len() == 1).map(|v| v[0]),
            _ => None,
        }
    }

    pub fn validate(&self, k: &SimplicialComplex) -> Result<()> {
        let bad = |m: String| Err(Error::Stratification(m));
        // X_{n−k} is the union of strata of codimension ≥ k and must be closed
        let mut closed: BTreeSet<Simplex> = BTreeSet::new();
        for (&codim, set) in self.strata.iter().rev() {
            closed.extend(set.iter().cloned());
            if codim == 0 || codim > self.dim {
                return bad(format!("codimension {codim} outside 1..={}", self.dim));
            }
            for s in set {
                if !k.contains(s) {
                    return bad(format!("stratum simplex {s:?} is not in the complex"));
                }
                if s.len() > self.dim - codim + 1 {
                    return bad(format!("simplex {s:?} too large for codimension {codim}"));
                }
                for j in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(j);
                    if !f.is_empty() && !closed.contains(&f) {
                        return bad(format!("stratum of codimension {codim} is not a subcomplex"));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cone_stratum() {
        let s = Stratification::cone(3, 7);
        assert_eq!(s.cone_vertex(), Some(7));
        assert_eq!(s.skeleton(2), BTreeSet::from([vec![7]]));
        assert!(s.skeleton(4).is_empty());
    }

    #[test]
    fn rejects_missing_simplex() {
        let k = SimplicialComplex::from_simplices([[0, 1]]).unwrap();
        assert!(Stratification::cone(2, 5).validate(&k).is_err());
        assert!(Stratification::cone(2, 1).validate(&k).is_ok());
    }
}
