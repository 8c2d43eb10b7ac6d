use num_bigint::BigInt;

use super::{SimplicialComplex, Stratification};
use crate::error::{contract, Result};
use crate::linalg::IntMatrix;

/// `w ∗ Y` with `w` one past the largest vertex of `Y`, labelled `"w"`,
/// carrying the one-point stratification in codimension `dim Y + 1`.
pub fn cone(y: &SimplicialComplex) -> Result<SimplicialComplex> {
    let Some(top) = y.dim() else {
        return contract("cone over an empty complex");
    };
    let w = y.max_vertex().expect("nonempty complex has vertices") + 1;
    let mut tops: Vec<Vec<usize>> = vec![vec![w]];
    for s in y.iter_all() {
        let mut c = s.clone();
        c.push(w);
        tops.push(c);
    }
    let mut x = SimplicialComplex::from_simplices(tops)?;
    for (v, l) in y.labels() {
        x.set_label(*v, l.clone());
    }
    x.set_label(w, "w");
    x.set_stratification(Stratification::cone(top + 1, w))?;
    Ok(x)
}

/// `C_k(Y) → C_{k+1}(X)`, `σ ↦ [w, σ] = (−1)^{k+1} [σ, w]` in increasing
/// vertex order.
pub fn cone_generator_matrix(y: &SimplicialComplex, x: &SimplicialComplex, k: usize) -> IntMatrix {
    let w = x.cone_vertex().expect("cone complex carries its cone vertex");
    let sign = if (k + 1).is_multiple_of(2) { 1 } else { -1 };
    let mut m = IntMatrix::zeros(x.count(k + 1), y.count(k));
    for (c, s) in y.simplices(k).iter().enumerate() {
        let mut t = s.clone();
        t.push(w);
        let r = x.index_of(&t).expect("coned simplex present");
        m[(r, c)] = BigInt::from(sign);
    }
    m
}

/// Inclusion `C_k(sub) → C_k(ambient)` in the lexicographic bases.
pub fn inclusion_matrix(sub: &SimplicialComplex, ambient: &SimplicialComplex, k: usize) -> Result<IntMatrix> {
    let mut m = IntMatrix::zeros(ambient.count(k), sub.count(k));
    for (c, s) in sub.simplices(k).iter().enumerate() {
        let Some(r) = ambient.index_of(s) else {
            return contract(format!("simplex {s:?} is not in the ambient complex"));
        };
        m[(r, c)] = BigInt::from(1);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let s1 = SimplicialComplex::from_simplices([[0, 1], [1, 2], [0, 2]]).unwrap();
        assert_eq!(cone(&s1).unwrap().counts(), vec![4, 6, 3]);
        let pt = SimplicialComplex::from_simplices([[0]]).unwrap();
        assert_eq!(cone(&pt).unwrap().counts(), vec![2, 1]);
        let s2 = SimplicialComplex::from_simplices([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        let x = cone(&s2).unwrap();
        assert_eq!(x.counts(), vec![5, 10, 10, 4]);
        assert_eq!(x.cone_vertex(), Some(4));
        assert_eq!(x.label(4), Some("w"));
    }

    #[test]
    fn empty_is_rejected() {
        assert!(cone(&SimplicialComplex::default()).is_err());
    }
}
