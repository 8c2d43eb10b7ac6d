use serde::{Deserialize, Serialize};

use super::chains::{allowable_chain_complex, induced_complex, intersection_complex, IntersectionChainComplex};
use super::Perversity;
use crate::complex::{cone, cone_generator_matrix, inclusion_matrix, ChainComplex, SimplicialComplex};
use crate::error::{contract, Error, Result};
use crate::linalg::{smith_rank_and_kernel, IntMatrix, Lattice, RatMatrix, DEFAULT_FLOAT_THRESHOLD};
use crate::torsion::{
    change_of_basis_homology_log, harmonic_basis, transition_log_dets_with, DegreeEntry, HomologyBasis, Method,
    TorsionReport,
};

fn check_range(n: usize, p_n: i64) -> Result<()> {
    Perversity::with_top(n, p_n).map(|_| ())
}

/// `IC_i` of `w ∗ Y` in three regimes: `C_i(Y)` below `n − p_n`, chains with
/// boundary in `Y` at `n − p_n`, all of `C_i(X)` above.
pub fn cone_intersection_complex_closed_form(y: &SimplicialComplex, p_n: i64) -> Result<IntersectionChainComplex> {
    let Some(m) = y.dim() else {
        return contract("cone over an empty complex");
    };
    let n = m + 1;
    check_range(n, p_n)?;
    let x = cone(y)?;
    let mid = (n as i64 - p_n) as usize;
    let yc = y.chain_complex();
    let mut lattices = Vec::new();
    for i in 0..=n {
        let nx = x.count(i);
        let y_support: Vec<usize> = y.simplices(i).iter().map(|s| x.index_of(s).expect("Y ⊂ X")).collect();
        let lat = if i < mid {
            Lattice::coordinate(nx, &y_support)
        } else if i == mid {
            // C_mid(Y) ⊕ [w, Z_{mid−1}(Y)]
            let z = smith_rank_and_kernel(&yc.boundary(mid as i64 - 1)).kernel;
            let g = cone_generator_matrix(y, &x, mid - 1);
            let coned = &g * &z.basis;
            let coned_inv = &z.left_inverse * &g.transpose();
            let ypart = Lattice::coordinate(nx, &y_support);
            let basis = IntMatrix::hstack(&[&ypart.basis, &coned], nx);
            let left_inverse = IntMatrix::vstack(&[&ypart.left_inverse, &coned_inv], nx);
            Lattice { basis, left_inverse }
        } else {
            Lattice::full(nx)
        };
        lattices.push(lat);
    }
    let complex = induced_complex(&x.chain_complex(), &lattices);
    Ok(IntersectionChainComplex { ambient: x, subdivision: None, complex, lattices })
}

/// Harmonic bases of `H_i(Y)` for the degrees where `IH_i = H_i(Y)`, i.e.
/// `i < n − p_n − 1`, in `C_i(Y)` coordinates. Degrees above are empty.
pub fn cone_homology(y: &SimplicialComplex, p_n: i64) -> Vec<HomologyBasis> {
    let n = y.dim().map_or(0, |d| d + 1);
    let yc = y.chain_complex();
    (0..=n)
        .map(|i| {
            if (i as i64) < n as i64 - p_n - 1 {
                harmonic_basis(&yc, i as i64)
            } else {
                HomologyBasis::empty(y.count(i))
            }
        })
        .collect()
}

fn ln_a(logs: &[f64], p: usize) -> f64 {
    logs.get(p).copied().unwrap_or(0.0)
}

/// `Σ_{p=0}^{n−p_n−1} (−1)^p ln A_p`, with the per-degree `ln D_p` ledger:
/// `D_p = A_p A_{p−1}` for `n − p_n < p < n`, `D_n = A_{n−1}` when `p_n ≥ 1`,
/// and `D_p = A_p` otherwise.
pub fn cone_torsion_closed_form(y: &ChainComplex, n: usize, p_n: i64) -> Result<TorsionReport> {
    cone_torsion_closed_form_with(y, n, p_n, DEFAULT_FLOAT_THRESHOLD)
}

/// [`cone_torsion_closed_form`] with a floating pseudo-determinant above
/// `float_threshold`.
pub fn cone_torsion_closed_form_with(y: &ChainComplex, n: usize, p_n: i64, float_threshold: usize) -> Result<TorsionReport> {
    check_range(n, p_n)?;
    if y.offset() != 0 || y.top_degree() > n as i64 - 1 {
        return contract(format!("cross-section must live in degrees 0..={}", n - 1));
    }
    let logs = transition_log_dets_with(y, float_threshold)?;
    let mid = n - p_n as usize;
    let ranks = cone_ranks(y, n, mid);
    let mut entries = Vec::new();
    for p in 0..=n {
        let ln_d = if p == n && p_n >= 1 {
            ln_a(&logs, n - 1)
        } else if p > mid && p < n {
            ln_a(&logs, p) + ln_a(&logs, p - 1)
        } else {
            ln_a(&logs, p)
        };
        let betti = if p + 1 < mid { y.betti(p as i64) } else { 0 };
        entries.push(DegreeEntry {
            degree: p as i64,
            ln_contribution: ln_d,
            pseudo_det: None,
            ln_pseudo_det: None,
            rank_boundary: ranks[p],
            betti,
        });
    }
    Ok(TorsionReport::from_entries(Method::ClosedForm, entries))
}

/// Ranks of `∂_p` on the closed-form intersection complex.
fn cone_ranks(y: &ChainComplex, n: usize, mid: usize) -> Vec<usize> {
    let cy = |q: usize| y.dim(q as i64);
    let cx = |q: usize| cy(q) + if q == 0 { 1 } else { cy(q - 1) };
    let mut rx = vec![0usize; n + 2];
    for q in 1..=n {
        // the cone is acyclic above degree 0 and has H_0 = ℤ
        rx[q] = cx(q - 1) - rx[q - 1] - usize::from(q == 1);
    }
    (0..=n)
        .map(|p| {
            if p == 0 {
                0
            } else if p < mid {
                y.boundary_rank(p as i64)
            } else if p == mid {
                cy(mid - 1) - y.boundary_rank(mid as i64 - 1)
            } else {
                rx[p]
            }
        })
        .collect()
}

/// `½ Σ_{k<N} (−1)^{k+1}(k+1) ln pdet Δ_k + (n−p_n)/2 · Σ_{k=N}^{n−1} (−1)^{k+1} ln pdet Δ_k`
/// with `N = n − p_n − 1`: the closed form expanded in Laplacians of `Y`.
pub fn closed_form_laplacian_expansion(y: &ChainComplex, n: usize, p_n: i64) -> Result<f64> {
    check_range(n, p_n)?;
    let big_n = n - p_n as usize - 1;
    let mut acc = 0.0;
    for k in 0..n {
        let l = crate::linalg::pseudo_determinant(&y.laplacian(k as i64))?.ln();
        let s = if k % 2 == 0 { -1.0 } else { 1.0 };
        let w = if k < big_n { (k + 1) as f64 } else { (n as i64 - p_n) as f64 };
        acc += 0.5 * s * w * l;
    }
    Ok(acc)
}

/// Per-degree `ln |det [h′_p / h_p]| = b_p(Y) · ln(n − 2p) / 2` for `p < n/2`,
/// rescaling harmonic bases of `Y` to unit length in the cone metric.
pub fn metric_correction(y: &ChainComplex, n: usize) -> Vec<(i64, f64)> {
    (0..n)
        .filter(|&p| 2 * p < n)
        .map(|p| (p as i64, y.betti(p as i64) as f64 * ((n - 2 * p) as f64).ln() / 2.0))
        .collect()
}

/// Closed form for the lower middle perversity with the metric correction
/// applied through the homology change-of-basis law.
pub fn metric_corrected_cone_torsion(y: &ChainComplex, n: usize) -> Result<TorsionReport> {
    if n < 2 {
        return Err(Error::Perversity(format!("cone dimension n = {n} must be at least 2")));
    }
    let p_n = (n as i64 - 2) / 2;
    let base = cone_torsion_closed_form(y, n, p_n)?;
    change_of_basis_homology_log(&base, &metric_correction(y, n))
}

/// Three evaluations of the cone torsion and their agreement.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeVerification {
    pub n: usize,
    pub p_n: i64,
    pub perversity: Vec<i64>,
    pub basic_sets_dims: Vec<usize>,
    pub closed_form_dims: Vec<usize>,
    pub ih_betti_basic_sets: Vec<usize>,
    pub ih_betti_closed_form: Vec<usize>,
    pub ih_expected: Vec<usize>,
    /// Lattice torsion on `T'`, normalized by the covolumes of `IC(X)`.
    pub basic_sets_torsion: f64,
    /// Lattice torsion on `T'`, normalized as if `T'` simplices were
    /// orthonormal. Not subdivision invariant; reported for diagnosis only.
    pub basic_sets_subdivided_metric_torsion: f64,
    pub basic_sets_lattice_torsion: f64,
    pub closed_form_lattice_torsion: f64,
    pub closed_form_complex_torsion: f64,
    pub closed_form_value: f64,
    pub delta_basic_vs_complex: f64,
    pub delta_basic_vs_value: f64,
    pub delta_complex_vs_value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Torsion of `IC(w ∗ Y)` by `torsion_direct` on the basic-sets complex of
/// the subdivision, by `torsion_direct` on the closed-form complex, and by
/// `Σ (−1)^p ln A_p`. Homology bases are harmonic bases of `H_*(Y)`,
/// carried into `X` by inclusion and into `T'` by the subdivision map.
///
/// Preferred chain bases are orthonormal for the metric in which simplices
/// of `X` are orthonormal. The subdivided route gets its covolumes from
/// `IC(X)` built simplex by simplex, since that metric lives on `X`.
pub fn verify_cone(y: &SimplicialComplex, p_n: i64, seed: u64, tolerance: f64) -> Result<ConeVerification> {
    let Some(m) = y.dim() else {
        return contract("cone over an empty complex");
    };
    let n = m + 1;
    let perversity = Perversity::with_top(n, p_n)?;
    let x = cone(y)?;
    let yc = y.chain_complex();
    let hy = cone_homology(y, p_n);

    let included: Vec<HomologyBasis> = (0..=n)
        .map(|i| {
            let inc = inclusion_matrix(y, &x, i).expect("Y ⊂ X").to_rational();
            HomologyBasis { vectors: &inc * &hy[i].vectors, log_scale: hy[i].log_scale }
        })
        .collect();

    let closed = cone_intersection_complex_closed_form(y, p_n)?;
    let h_closed = closed.homology_from_ambient(&included)?;
    let t_closed = closed.torsion(&h_closed, seed)?;

    let mid = (n as i64 - p_n) as usize;
    let w = x.cone_vertex().expect("cone carries its vertex");
    let on_x = allowable_chain_complex(&x, |i, s| i >= mid || !s.contains(&w), seed);
    let covol_x = on_x.log_covolumes();

    let basic = intersection_complex(&x, &perversity, seed)?;
    let sd = basic.subdivision.as_ref().expect("basic-sets complex carries its subdivision");
    let subdivided: Vec<HomologyBasis> = included
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let s: RatMatrix = sd.chain_map(&x, i).to_rational();
            HomologyBasis { vectors: &s * &h.vectors, log_scale: h.log_scale }
        })
        .collect();
    let h_basic = basic.homology_from_ambient(&subdivided)?;
    let t_basic = basic.torsion_normalized_by(&h_basic, seed, &covol_x)?;
    let t_basic_sd = basic.torsion(&h_basic, seed)?;
    let lat_basic = basic.lattice_torsion(&h_basic, seed)?;
    let lat_closed = closed.lattice_torsion(&h_closed, seed)?;

    let value = cone_torsion_closed_form(&yc, n, p_n)?.log_torsion;
    let ih_expected: Vec<usize> =
        (0..=n).map(|i| if (i as i64) < n as i64 - p_n - 1 { yc.betti(i as i64) } else { 0 }).collect();
    let ih_b = basic.betti();
    let ih_c = closed.betti();
    let d1 = (t_basic.log_torsion - t_closed.log_torsion).abs();
    let d2 = (t_basic.log_torsion - value).abs();
    let d3 = (t_closed.log_torsion - value).abs();
    let pass = d1 <= tolerance && d2 <= tolerance && d3 <= tolerance && ih_b == ih_expected && ih_c == ih_expected;
    Ok(ConeVerification {
        n,
        p_n,
        perversity: perversity.values().to_vec(),
        basic_sets_dims: basic.dims(),
        closed_form_dims: closed.dims(),
        ih_betti_basic_sets: ih_b,
        ih_betti_closed_form: ih_c,
        ih_expected,
        basic_sets_torsion: t_basic.log_torsion,
        basic_sets_subdivided_metric_torsion: t_basic_sd.log_torsion,
        basic_sets_lattice_torsion: lat_basic.log_torsion,
        closed_form_lattice_torsion: lat_closed.log_torsion,
        closed_form_complex_torsion: t_closed.log_torsion,
        closed_form_value: value,
        delta_basic_vs_complex: d1,
        delta_basic_vs_value: d2,
        delta_complex_vs_value: d3,
        tolerance,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> SimplicialComplex {
        SimplicialComplex::from_simplices([[0, 1], [1, 2], [0, 2]]).unwrap()
    }

    fn sphere() -> SimplicialComplex {
        SimplicialComplex::from_simplices([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
    }

    #[test]
    fn circle_cone_is_ln3() {
        let v = verify_cone(&circle(), 0, 0, 1e-9).unwrap();
        assert!(v.pass, "{v:?}");
        assert!((v.closed_form_value - 3f64.ln()).abs() < 1e-12);
        assert_eq!(v.ih_expected, vec![1, 0, 0]);
    }

    #[test]
    fn sphere_cone_both_perversities() {
        for p in [0, 1] {
            let v = verify_cone(&sphere(), p, 0, 1e-9).unwrap();
            assert!(v.pass, "{v:?}");
            assert!((v.basic_sets_lattice_torsion - v.closed_form_lattice_torsion).abs() < 1e-12);
        }
    }

    #[test]
    fn seeds_do_not_move_the_torsion() {
        let base = verify_cone(&sphere(), 1, 0, 1e-9).unwrap();
        for seed in 1..3 {
            let v = verify_cone(&sphere(), 1, seed, 1e-9).unwrap();
            assert!((v.basic_sets_torsion - base.basic_sets_torsion).abs() < 1e-12);
            assert!((v.closed_form_complex_torsion - base.closed_form_complex_torsion).abs() < 1e-12);
        }
    }

    #[test]
    fn laplacian_expansion_matches() {
        for (y, ps) in [(circle(), vec![0]), (sphere(), vec![0, 1])] {
            let c = y.chain_complex();
            let n = y.dim().unwrap() + 1;
            for p in ps {
                let a = cone_torsion_closed_form(&c, n, p).unwrap().log_torsion;
                let b = closed_form_laplacian_expansion(&c, n, p).unwrap();
                assert!((a - b).abs() < 1e-12, "{a} vs {b}");
            }
        }
        // a wider cone over the circle
        let c = circle().chain_complex();
        for (n, p) in [(3, 0), (3, 1), (4, 2)] {
            let a = cone_torsion_closed_form(&c, n, p).unwrap().log_torsion;
            let b = closed_form_laplacian_expansion(&c, n, p).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn reported_ranks_match_the_complex() {
        for (y, p) in [(circle(), 0), (sphere(), 0), (sphere(), 1)] {
            let n = y.dim().unwrap() + 1;
            let r = cone_torsion_closed_form(&y.chain_complex(), n, p).unwrap();
            let ic = cone_intersection_complex_closed_form(&y, p).unwrap();
            for e in &r.per_degree {
                assert_eq!(e.rank_boundary, ic.complex.boundary_rank(e.degree));
                assert_eq!(e.betti, ic.complex.betti(e.degree));
            }
        }
    }

    #[test]
    fn closed_form_complex_is_the_allowable_one() {
        let y = sphere();
        let x = cone(&y).unwrap();
        for p in [0i64, 1] {
            let mid = (3 - p) as usize;
            let a = cone_intersection_complex_closed_form(&y, p).unwrap();
            let b = allowable_chain_complex(&x, |i, s| i >= mid || !s.contains(&4), 0);
            assert_eq!(a.dims(), b.dims());
            for (la, lb) in a.lattices.iter().zip(&b.lattices) {
                assert!((la.log_covolume() - lb.log_covolume()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn perversity_range_is_enforced() {
        let c = circle().chain_complex();
        assert!(matches!(cone_torsion_closed_form(&c, 2, 1), Err(Error::Perversity(_))));
        assert!(matches!(cone_torsion_closed_form(&c, 2, -1), Err(Error::Perversity(_))));
        assert!(cone_torsion_closed_form(&c, 1, 0).is_err());
    }

    #[test]
    fn metric_correction_values() {
        let s1 = circle().chain_complex();
        assert_eq!(metric_correction(&s1, 3), vec![(0, 3f64.ln() / 2.0), (1, 0.0)]);
        let s2 = sphere().chain_complex();
        let m = metric_correction(&s2, 4);
        assert!((m[0].1 - 2f64.ln()).abs() < 1e-15 && m[1].1 == 0.0);
        let base = cone_torsion_closed_form(&s2, 4, 1).unwrap().log_torsion;
        let corrected = metric_corrected_cone_torsion(&s2, 4).unwrap().log_torsion;
        assert!((corrected - base - 2f64.ln()).abs() < 1e-12);
    }
}
