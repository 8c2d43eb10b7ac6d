use std::collections::BTreeSet;

use serde::Serialize;

use super::pair::{harmonic_or_empty, relative_chain_complex, relative_support, HomologySpace};
use super::{exact_sequence_torsion, neg, pair_sequence, split_ses_torsion, split_ses_trivial, BasedExactSequence, PairSequence, SplitSESData};
use crate::complex::{inclusion_matrix, Simplex, SimplicialComplex, Stratification};
use crate::error::{contract, Error, Result};
use crate::intersection::{allowable_chain_complex, basic_sets, Perversity};
use crate::linalg::{exact, RatMatrix};
use crate::torsion::HomologyBasis;

/// One of the short exact pieces `0 → H_q(Y) → IH_q(CY) ⊕ H_q(M) → IH_q(X) → 0`
/// in degrees `q ≤ m/2`.
#[derive(Clone, Debug, Serialize)]
pub struct SplitPiece {
    pub degree: usize,
    pub split_torsion: f64,
    pub trivial: bool,
    /// `ln` scale of the preferred bases against the representatives,
    /// `ℓ(Y) − ℓ(CY ⊕ M) + ℓ(X)`.
    pub scale_adjustment: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MayerVietoris {
    pub n: usize,
    pub perversity: Vec<i64>,
    pub witt: bool,
    pub ih_betti_x: Vec<usize>,
    pub ih_betti_cone: Vec<usize>,
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    pub torsion: f64,
    pub pair: PairSequence,
    pub pair_torsion: f64,
    pub delta: f64,
    pub split_pieces: Vec<SplitPiece>,
    pub basis_convention: String,
    #[serde(skip)]
    pub sequence: BasedExactSequence,
}

const CONVENTION: &str = "H(Y), H(M), H(M,Y): orthonormal harmonic; IH_q(CY) = H_q(Y) carried by inclusion; \
IH_q(X) = image of H_q(M) for q <= m/2, and H_q(M,Y) closed off by a chain in IC(CY) for q > m/2";

/// `X = M ∪ w ∗ Y` stratified by the cone point, with the Mayer–Vietoris
/// sequence `… → H_q(Y) → H_q(M) ⊕ IH_q(CY) → IH_q(X) → H_{q−1}(Y) → …` in
/// lower middle perversity, and the truncated sequence of `(M, Y)` to
/// compare against. `Y = ∂M` must have even dimension `m` and satisfy
/// `H_{m/2}(Y) = 0`.
pub fn mayer_vietoris_sequence(m: &SimplicialComplex, y: &SimplicialComplex, seed: u64) -> Result<MayerVietoris> {
    if !y.is_subcomplex_of(m) {
        return contract("Y is not a subcomplex of M");
    }
    let (Some(n), Some(my)) = (m.dim(), y.dim()) else {
        return contract("M and Y must be nonempty");
    };
    if my + 1 != n || my % 2 != 0 {
        return contract(format!("need dim Y = dim M − 1 even, got dim M = {n}, dim Y = {my}"));
    }
    let cy = y.chain_complex();
    let witt = cy.betti(my as i64 / 2) == 0;
    if !witt {
        return contract(format!("Witt condition fails: b_{}(Y) = {}", my / 2, cy.betti(my as i64 / 2)));
    }
    let half = my / 2;
    let p_n = (n as i64 - 2) / 2;
    let big_n = n - p_n as usize - 1;
    let perversity = Perversity::with_top(n, p_n)?;

    let w = m.max_vertex().expect("nonempty") + 1;
    let mut tops: Vec<Simplex> = m.iter_all().cloned().collect();
    tops.extend(y.iter_all().map(|s| {
        let mut t = s.clone();
        t.push(w);
        t
    }));
    let mut x = SimplicialComplex::from_simplices(tops)?;
    x.set_label(w, "w");
    x.set_stratification(Stratification::cone(n, w))?;

    let bs = basic_sets(&x, &perversity)?;
    let sd = &bs.subdivision;
    let t = &sd.complex;
    let ct = t.chain_complex();
    let region = |pred: &dyn Fn(&[usize]) -> bool, q: usize| -> BTreeSet<usize> {
        (0..t.count(q)).filter(|&i| pred(sd.carrier(&t.simplices(q)[i]))).collect()
    };
    let in_m = |c: &[usize]| !c.contains(&w);
    let in_y = |c: &[usize]| y.contains(c);
    let in_cy = |c: &[usize]| c.contains(&w) || y.contains(c);
    let ic_x = allowable_chain_complex(t, |i, s| bs.contains(i, s), seed);
    let ic_c = allowable_chain_complex(t, |i, s| bs.contains(i, s) && in_cy(sd.carrier(s)), seed);

    let cm = m.chain_complex();
    let cr = relative_chain_complex(m, y)?;
    let supp = relative_support(m, y);
    let d = |q: usize| ct.boundary(q as i64).to_rational();
    let region_bounds = |pred: &dyn Fn(&[usize]) -> bool, q: usize| -> RatMatrix {
        let cols: Vec<usize> = region(pred, q + 1).into_iter().collect();
        d(q + 1).select_columns(&cols)
    };
    let lattice_bounds = |ic: &crate::intersection::IntersectionChainComplex, q: usize| -> RatMatrix {
        match ic.lattices.get(q + 1) {
            Some(l) => &d(q + 1) * &l.basis.to_rational(),
            None => RatMatrix::zeros(t.count(q), 0),
        }
    };
    let to_t = |k: &SimplicialComplex, q: usize, v: &RatMatrix| -> Result<RatMatrix> {
        let inc = inclusion_matrix(k, &x, q)?.to_rational();
        Ok(&sd.chain_map(&x, q).to_rational() * &(&inc * v))
    };

    let mut ys = Vec::new();
    let mut ms = Vec::new();
    let mut cs = Vec::new();
    let mut xs = Vec::new();
    for q in 0..=n {
        let hy = harmonic_or_empty(&cy, q);
        let ry = to_t(y, q, &hy.vectors)?;
        ys.push(HomologySpace::new(HomologyBasis { vectors: ry.clone(), log_scale: hy.log_scale }, region_bounds(&in_y, q)));
        let hm = harmonic_or_empty(&cm, q);
        let rm = to_t(m, q, &hm.vectors)?;
        ms.push(HomologySpace::new(HomologyBasis { vectors: rm.clone(), log_scale: hm.log_scale }, region_bounds(&in_m, q)));
        let hc = if q < big_n { HomologyBasis { vectors: ry, log_scale: hy.log_scale } } else { HomologyBasis::empty(t.count(q)) };
        cs.push(HomologySpace::new(hc, lattice_bounds(&ic_c, q)));
        let hx = if q <= half {
            HomologyBasis { vectors: rm, log_scale: hm.log_scale }
        } else {
            // r + c with r the relative class pushed into T' and c ∈ IC(CY)
            let hr = harmonic_or_empty(&cr, q);
            let mut lift = RatMatrix::zeros(m.count(q), hr.rank());
            for (row, &s) in supp[q].iter().enumerate() {
                for c in 0..hr.rank() {
                    lift[(s, c)] = hr.vectors[(row, c)].clone();
                }
            }
            let r = to_t(m, q, &lift)?;
            let c = if hr.rank() == 0 {
                RatMatrix::zeros(t.count(q), 0)
            } else {
                let basis = ic_c.lattices[q].basis.to_rational();
                let Some(coef) = exact::solve(&(&d(q) * &basis), &neg(&(&d(q) * &r))) else {
                    return Err(Error::Internal(format!("∂ of a relative {q}-cycle does not bound in IC(CY)")));
                };
                &basis * &coef
            };
            HomologyBasis { vectors: &r + &c, log_scale: hr.log_scale }
        };
        xs.push(HomologySpace::new(hx, lattice_bounds(&ic_x, q)));
    }

    let ih_x = ic_x.betti();
    let ih_c = ic_c.betti();
    for q in 0..=n {
        if xs[q].dim() != ih_x[q] || cs[q].dim() != ih_c[q] {
            return Err(Error::Internal(format!(
                "degree {q}: transported bases have ranks ({}, {}) but IH has ({}, {})",
                xs[q].dim(),
                cs[q].dim(),
                ih_x[q],
                ih_c[q]
            )));
        }
    }

    let region_m: Vec<BTreeSet<usize>> = (0..=n).map(|q| region(&in_m, q)).collect();
    let mut dims = Vec::new();
    let mut maps = Vec::new();
    let mut scales = Vec::new();
    let mut labels = Vec::new();
    let mut split_pieces = Vec::new();
    for q in (0..=n).rev() {
        let (yq, mq, cq, xq) = (&ys[q], &ms[q], &cs[q], &xs[q]);
        // α = (i_M, i_CY)
        let alpha = RatMatrix::vstack(&[&mq.coordinates(&yq.reps)?, &cq.coordinates(&yq.reps)?], yq.dim());
        // β(a, b) = a − b
        let beta = RatMatrix::hstack(&[&xq.coordinates(&mq.reps)?, &xq.coordinates(&neg(&cq.reps))?], xq.dim());
        dims.extend([yq.dim(), mq.dim() + cq.dim(), xq.dim()]);
        scales.extend([yq.log_scale, mq.log_scale + cq.log_scale, xq.log_scale]);
        labels.extend([format!("H_{q}(Y)"), format!("H_{q}(M) ⊕ IH_{q}(CY)"), format!("IH_{q}(X)")]);
        if q <= half {
            split_pieces.push(split_piece(q, &alpha, &beta, mq.dim(), cq.dim(), yq.log_scale - mq.log_scale - cq.log_scale + xq.log_scale)?);
        }
        maps.push(alpha);
        maps.push(beta);
        if q >= 1 {
            // ∂[x] = [∂ x_M], x_M the part of x carried by M
            let mut xm = xq.reps.clone();
            for r in 0..xm.rows() {
                if !region_m[q].contains(&r) {
                    for c in 0..xm.cols() {
                        xm[(r, c)] = super::rational(0);
                    }
                }
            }
            maps.push(ys[q - 1].coordinates(&(&d(q) * &xm))?);
        }
    }
    let sequence = BasedExactSequence::new(1, dims.clone(), maps)?.with_log_scales(scales)?.with_labels(labels.clone())?;
    let torsion = exact_sequence_torsion(&sequence)?.log_torsion;
    let pair = pair_sequence(m, y, Some(half + 1))?;
    let pair_torsion = exact_sequence_torsion(&pair.sequence)?.log_torsion;
    Ok(MayerVietoris {
        n,
        perversity: perversity.values().to_vec(),
        witt,
        ih_betti_x: ih_x,
        ih_betti_cone: ih_c,
        labels,
        dims,
        torsion,
        pair,
        pair_torsion,
        delta: (torsion - pair_torsion).abs(),
        split_pieces,
        basis_convention: CONVENTION.into(),
        sequence,
    })
}

/// Lemma-style split data with the middle space ordered `IH(CY) ⊕ H(M)`,
/// so that the first summand receives `H(Y)` and the second maps onto `IH(X)`.
fn split_piece(q: usize, alpha: &RatMatrix, beta: &RatMatrix, dm: usize, dc: usize, scale: f64) -> Result<SplitPiece> {
    let order: Vec<usize> = (dm..dm + dc).chain(0..dm).collect();
    let i = alpha.select_rows(&order);
    let p = beta.select_columns(&order);
    let Some(j) = exact::solve(&p, &RatMatrix::identity(p.rows())) else {
        return Err(Error::Internal(format!("degree {q}: IH(X) is not covered")));
    };
    let data = SplitSESData::new(i, j, p)?;
    Ok(SplitPiece { degree: q, split_torsion: split_ses_torsion(&data)?, trivial: split_ses_trivial(&data), scale_adjustment: scale })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solid_tetrahedron() {
        let m = SimplicialComplex::from_simplices([[0, 1, 2, 3]]).unwrap();
        let y = SimplicialComplex::from_simplices([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        let mv = mayer_vietoris_sequence(&m, &y, 0).unwrap();
        assert!(mv.witt);
        assert_eq!(mv.ih_betti_x, vec![1, 0, 0, 1]);
        assert_eq!(mv.ih_betti_cone, vec![1, 0, 0, 0]);
        assert!(mv.delta < 1e-9, "{} vs {}", mv.torsion, mv.pair_torsion);
        // ∂[0123] has norm 2 against the unit harmonic 2-cycle of S²
        assert!((mv.torsion.abs() - 2f64.ln()).abs() < 1e-12);
        for piece in &mv.split_pieces {
            assert!(piece.trivial);
            assert!(piece.split_torsion.abs() < 1e-12 && piece.scale_adjustment.abs() < 1e-12);
        }
    }

    #[test]
    fn odd_boundary_is_rejected() {
        let m = SimplicialComplex::from_simplices([[0, 1, 2]]).unwrap();
        let y = SimplicialComplex::from_simplices([[0, 1], [1, 2], [0, 2]]).unwrap();
        assert!(mayer_vietoris_sequence(&m, &y, 0).is_err());
    }
}
