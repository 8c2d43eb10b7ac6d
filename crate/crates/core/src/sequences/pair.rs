use serde::Serialize;

use super::BasedExactSequence;
use crate::complex::{inclusion_matrix, ChainComplex, SimplicialComplex};
use crate::error::{contract, Error, Result};
use crate::linalg::{exact, RatMatrix};
use crate::torsion::{harmonic_basis, HomologyBasis};

/// A homology group presented inside a chain group: representative cycles
/// and a spanning set of the boundaries, both in the same coordinates.
#[derive(Clone, Debug)]
pub(crate) struct HomologySpace {
    pub reps: RatMatrix,
    pub bounds: RatMatrix,
    pub log_scale: f64,
}

impl HomologySpace {
    pub fn new(basis: HomologyBasis, bounds: RatMatrix) -> Self {
        HomologySpace { reps: basis.vectors, bounds, log_scale: basis.log_scale }
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    /// Coordinates of the classes of the cycles `z` in the representative
    /// basis.
    pub fn coordinates(&self, z: &RatMatrix) -> Result<RatMatrix> {
        let k = self.dim();
        if z.cols() == 0 {
            return Ok(RatMatrix::zeros(k, z.cols()));
        }
        let a = RatMatrix::hstack(&[&self.reps, &self.bounds], self.reps.rows());
        match exact::solve(&a, z) {
            Some(x) => Ok(x.select_rows(&(0..k).collect::<Vec<_>>())),
            None => Err(Error::Internal("chain is not a cycle of the expected homology group".into())),
        }
    }
}

/// Harmonic basis in degree `q`, empty outside the complex.
pub(crate) fn harmonic_or_empty(c: &ChainComplex, q: usize) -> HomologyBasis {
    if (q as i64) > c.top_degree() {
        HomologyBasis::empty(0)
    } else {
        harmonic_basis(c, q as i64)
    }
}

/// Simplices of `m` not in `y`, per degree, as indices into `m`.
pub(crate) fn relative_support(m: &SimplicialComplex, y: &SimplicialComplex) -> Vec<Vec<usize>> {
    let top = m.dim().map_or(0, |d| d + 1);
    (0..top).map(|q| (0..m.count(q)).filter(|&i| !y.contains(&m.simplices(q)[i])).collect()).collect()
}

/// `C(M)/C(Y)` with the simplices of `M ∖ Y` as basis.
pub fn relative_chain_complex(m: &SimplicialComplex, y: &SimplicialComplex) -> Result<ChainComplex> {
    if !y.is_subcomplex_of(m) {
        return contract("Y is not a subcomplex of M");
    }
    let supp = relative_support(m, y);
    let cm = m.chain_complex();
    let dims: Vec<usize> = supp.iter().map(Vec::len).collect();
    let boundaries = (1..supp.len()).map(|q| cm.boundary(q as i64).select_rows(&supp[q - 1]).select_columns(&supp[q])).collect();
    ChainComplex::new(0, dims, boundaries)
}

/// The long exact sequence of `(M, Y)` in homology, from the top degree
/// down to the truncation degree.
#[derive(Clone, Debug, Serialize)]
pub struct PairSequence {
    #[serde(skip)]
    pub sequence: BasedExactSequence,
    pub truncation: usize,
    pub betti_y: Vec<usize>,
    pub betti_m: Vec<usize>,
    pub betti_relative: Vec<usize>,
    /// Witt condition `H_{m/2}(Y) = 0` for even `m = dim Y`; `None` when
    /// `m` is odd.
    pub witt: Option<bool>,
}

/// `… → H_q(Y) → H_q(M) → H_q(M,Y) → H_{q−1}(Y) → …` over ℚ with
/// orthonormal harmonic bases, including the relative harmonic bases of
/// `C(M)/C(Y)`. Only degrees `q ≥ truncate` are kept (default `dim Y / 2 + 1`,
/// or 0 for empty `Y`); the dropped connecting map must vanish.
pub fn pair_sequence(m: &SimplicialComplex, y: &SimplicialComplex, truncate: Option<usize>) -> Result<PairSequence> {
    if !y.is_subcomplex_of(m) {
        return contract("Y is not a subcomplex of M");
    }
    let Some(top) = m.dim() else {
        return contract("empty M");
    };
    let t = truncate.unwrap_or_else(|| y.dim().map_or(0, |d| d / 2 + 1));
    if t > top {
        return contract(format!("truncation degree {t} exceeds dim M = {top}"));
    }
    let cm = m.chain_complex();
    let cy = y.chain_complex();
    let cr = relative_chain_complex(m, y)?;
    let supp = relative_support(m, y);

    let mut ys = Vec::new();
    let mut ms = Vec::new();
    let mut rs = Vec::new();
    for q in 0..=top {
        let inc = inclusion_matrix(y, m, q)?.to_rational();
        let hy = harmonic_or_empty(&cy, q);
        let hy = HomologyBasis { vectors: &inc * &hy.vectors, log_scale: hy.log_scale };
        let by = &inc * &cy.boundary(q as i64 + 1).to_rational();
        ys.push(HomologySpace::new(hy, by));
        ms.push(HomologySpace::new(harmonic_or_empty(&cm, q), cm.boundary(q as i64 + 1).to_rational()));
        rs.push(HomologySpace::new(harmonic_or_empty(&cr, q), cr.boundary(q as i64 + 1).to_rational()));
    }

    // ∂ : H_q(M,Y) → H_{q−1}(Y), lifting relative chains by zero on Y
    let connecting = |q: usize| -> Result<RatMatrix> {
        let mut lift = RatMatrix::zeros(m.count(q), rs[q].dim());
        for (row, &s) in supp[q].iter().enumerate() {
            for c in 0..rs[q].dim() {
                lift[(s, c)] = rs[q].reps[(row, c)].clone();
            }
        }
        ys[q - 1].coordinates(&(&cm.boundary(q as i64).to_rational() * &lift))
    };
    if t >= 1 && !connecting(t)?.is_zero() {
        return Err(Error::NotExact {
            position: 3 * (top - t) + 3,
            message: format!("truncation at degree {t} drops a nonzero map H_{t}(M,Y) → H_{}(Y)", t - 1),
        });
    }

    let mut dims = Vec::new();
    let mut maps = Vec::new();
    let mut scales = Vec::new();
    let mut labels = Vec::new();
    for q in (t..=top).rev() {
        let rel_rows = &supp[q];
        let i_map = ms[q].coordinates(&ys[q].reps)?;
        let j_map = rs[q].coordinates(&ms[q].reps.select_rows(rel_rows))?;
        dims.extend([ys[q].dim(), ms[q].dim(), rs[q].dim()]);
        scales.extend([ys[q].log_scale, ms[q].log_scale, rs[q].log_scale]);
        labels.extend([format!("H_{q}(Y) [H^{q}]"), format!("H_{q}(M) [H^{q}]"), format!("H_{q}(M,Y) [H^{q}]")]);
        maps.push(i_map);
        maps.push(j_map);
        if q > t {
            maps.push(connecting(q)?);
        }
    }
    let sequence = BasedExactSequence::new(1, dims, maps)?.with_log_scales(scales)?.with_labels(labels)?;
    let m_y = y.dim();
    Ok(PairSequence {
        sequence,
        truncation: t,
        betti_y: cy.betti_numbers(),
        betti_m: cm.betti_numbers(),
        betti_relative: cr.betti_numbers(),
        witt: m_y.and_then(|d| (d % 2 == 0).then(|| cy.betti(d as i64 / 2) == 0)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::exact_sequence_torsion;

    fn triangle() -> (SimplicialComplex, SimplicialComplex) {
        let m = SimplicialComplex::from_simplices([[0, 1, 2]]).unwrap();
        let y = SimplicialComplex::from_simplices([[0, 1], [1, 2], [0, 2]]).unwrap();
        (m, y)
    }

    #[test]
    fn triangle_pair_betti() {
        let (m, y) = triangle();
        let p = pair_sequence(&m, &y, Some(0)).unwrap();
        assert_eq!(p.betti_m, vec![1, 0, 0]);
        assert_eq!(p.betti_y, vec![1, 1]);
        assert_eq!(p.betti_relative, vec![0, 0, 1]);
        assert_eq!(p.witt, None);
        assert_eq!(p.sequence.len(), 9);
    }

    #[test]
    fn triangle_pair_torsion() {
        // ∂[012] is the 3-cycle, of norm √3 against the unit harmonic cycle
        let (m, y) = triangle();
        let p = pair_sequence(&m, &y, Some(0)).unwrap();
        let t = exact_sequence_torsion(&p.sequence).unwrap().log_torsion;
        assert!((t.abs() - 3f64.ln() / 2.0).abs() < 1e-12, "{t}");
    }

    #[test]
    fn pair_with_itself_is_degenerate() {
        let (m, _) = triangle();
        let p = pair_sequence(&m, &m, Some(0)).unwrap();
        assert!(p.betti_relative.iter().all(|&b| b == 0));
        assert!(exact_sequence_torsion(&p.sequence).unwrap().log_torsion.abs() < 1e-12);
    }

    #[test]
    fn rejects_non_subcomplex() {
        let (m, _) = triangle();
        let y = SimplicialComplex::from_simplices([[0, 5]]).unwrap();
        assert!(matches!(pair_sequence(&m, &y, None), Err(Error::Contract(_))));
    }

    #[test]
    fn truncation_must_drop_a_zero_map() {
        // H_1(M,Y) = 0, so the default cut at degree 1 is clean
        let (m, y) = triangle();
        assert!(pair_sequence(&m, &y, None).is_ok());
        // cutting at degree 2 drops ∂ : H_2(M,Y) → H_1(Y), an isomorphism
        assert!(matches!(pair_sequence(&m, &y, Some(2)), Err(Error::NotExact { .. })));
    }
}
