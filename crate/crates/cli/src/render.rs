//! Plain-text tables.
// `+ 0.0` turns a printed `-0` into `0`.

use std::fmt::Write;

use cone_torsion::intersection::ConeVerification;
use cone_torsion::sequences::{MayerVietoris, TpReport};
use cone_torsion::torsion::TorsionReport;

fn per_degree(out: &mut String, r: &TorsionReport) {
    writeln!(out, "  {:>6}  {:>6}  {:>5}  {:>14}  {:>14}", "degree", "rank ∂", "betti", "ln pdet Δ", "contribution").unwrap();
    for e in &r.per_degree {
        let lp = e.ln_pseudo_det.map_or_else(|| "-".to_string(), |v| format!("{v:.10}"));
        writeln!(out, "  {:>6}  {:>6}  {:>5}  {:>14}  {:>14.10}", e.degree, e.rank_boundary, e.betti, lp, e.ln_contribution + 0.0).unwrap();
    }
}

pub fn torsion(
    counts: &[usize],
    betti: &[usize],
    direct: Option<&TorsionReport>,
    hodge: Option<&TorsionReport>,
    delta: Option<f64>,
    tol: f64,
) -> String {
    let mut out = String::new();
    writeln!(out, "simplices per dimension: {counts:?}").unwrap();
    writeln!(out, "betti numbers:           {betti:?}").unwrap();
    for (name, r) in [("direct", direct), ("hodge", hodge)] {
        if let Some(r) = r {
            writeln!(out, "\n{name}: ln τ = {:.12}", r.log_torsion).unwrap();
            per_degree(&mut out, r);
        }
    }
    if let Some(d) = delta {
        writeln!(out, "\n|direct − hodge| = {d:.3e}  ({})", if d <= tol { "agree" } else { "DISAGREE" }).unwrap();
    }
    out
}

pub fn icone(n: usize, p_n: i64, correction: &[(i64, f64)], r: &TorsionReport) -> String {
    let mut out = String::new();
    writeln!(out, "cone dimension n = {n}, p_n = {p_n}").unwrap();
    if !correction.is_empty() {
        writeln!(out, "metric correction per degree: {correction:?}").unwrap();
    }
    writeln!(out, "ln τ = {:.12}", r.log_torsion).unwrap();
    writeln!(out, "  {:>6}  {:>6}  {:>5}  {:>14}", "degree", "rank ∂", "betti", "ln D_p").unwrap();
    for e in &r.per_degree {
        writeln!(out, "  {:>6}  {:>6}  {:>5}  {:>14.10}", e.degree, e.rank_boundary, e.betti, e.ln_contribution + 0.0).unwrap();
    }
    out
}

pub fn verification(v: &ConeVerification) -> String {
    let mut out = String::new();
    writeln!(out, "n = {}, p_n = {}, perversity {:?}", v.n, v.p_n, v.perversity).unwrap();
    writeln!(out, "dims: subdivided {:?}, closed form {:?}", v.basic_sets_dims, v.closed_form_dims).unwrap();
    writeln!(out, "IH betti: subdivided {:?}, closed form {:?}, expected {:?}", v.ih_betti_basic_sets, v.ih_betti_closed_form, v.ih_expected).unwrap();
    writeln!(out, "torsion (subdivided complex)   {:.12}", v.basic_sets_torsion).unwrap();
    writeln!(out, "torsion (closed-form complex)  {:.12}", v.closed_form_complex_torsion).unwrap();
    writeln!(out, "Σ (−1)^p ln A_p                {:.12}", v.closed_form_value).unwrap();
    writeln!(
        out,
        "deltas {:.3e} {:.3e} {:.3e} against tolerance {:.1e}: {}",
        v.delta_basic_vs_complex,
        v.delta_basic_vs_value,
        v.delta_complex_vs_value,
        v.tolerance,
        if v.pass { "PASS" } else { "FAIL" }
    )
    .unwrap();
    out
}

pub fn sequence(labels: &[String], dims: &[usize], first: usize, r: &TorsionReport) -> String {
    let mut out = String::new();
    for (k, (l, d)) in labels.iter().zip(dims).enumerate() {
        writeln!(out, "  V{:<3} {:<28} dim {d}", first + k, l).unwrap();
    }
    writeln!(out, "ln τ = {:.12}", r.log_torsion).unwrap();
    out
}

pub fn mayer_vietoris(mv: &MayerVietoris, tol: f64) -> String {
    let mut out = String::new();
    writeln!(out, "n = {}, perversity {:?}, Witt condition {}", mv.n, mv.perversity, if mv.witt { "holds" } else { "fails" }).unwrap();
    writeln!(out, "IH betti: X {:?}, cone {:?}", mv.ih_betti_x, mv.ih_betti_cone).unwrap();
    for (l, d) in mv.labels.iter().zip(&mv.dims) {
        if *d > 0 {
            writeln!(out, "  {l:<24} dim {d}").unwrap();
        }
    }
    for p in &mv.split_pieces {
        writeln!(out, "split piece q = {}: ln τ = {:.3e}, trivial: {}", p.degree, p.split_torsion + p.scale_adjustment, p.trivial).unwrap();
    }
    writeln!(out, "Mayer–Vietoris ln τ   {:.12}", mv.torsion).unwrap();
    writeln!(out, "truncated pair ln τ   {:.12}  (from degree {})", mv.pair_torsion, mv.pair.truncation).unwrap();
    writeln!(out, "delta {:.3e}: {}", mv.delta, if mv.delta <= tol { "PASS" } else { "FAIL" }).unwrap();
    writeln!(out, "bases: {}", mv.basis_convention).unwrap();
    out
}

pub fn tp(r: &TpReport) -> String {
    let mut out = String::new();
    writeln!(out, "m = {}, p = {}", r.m, r.p).unwrap();
    if r.odd_dimension {
        writeln!(out, "note: m is odd; the weights are meant for even m").unwrap();
    }
    for (k, l) in r.ln_pdet.iter().enumerate() {
        writeln!(out, "  ln pdet Δ_{k} = {l:.12}").unwrap();
    }
    writeln!(out, "ln T_p = {:.12}", r.value).unwrap();
    out
}
