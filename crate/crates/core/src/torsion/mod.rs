//! R-torsion of based chain complexes.
//!
//! Convention: `ln τ = Σ_i (−1)^i ln |det [b_i h_i b̃_{i−1}]|`, so the
//! two-term complex `ℝ --2--> ℝ` in degrees 1, 0 has `ln τ = ln 2`.

mod homology;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use homology::{harmonic_basis, BasedHomology, HomologyBasis};

use crate::complex::chain::row_integral;
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::matrix::Ring;
use crate::linalg::{exact, pseudo_determinant, pseudo_determinant_with, IntMatrix, RatMatrix, DEFAULT_FLOAT_THRESHOLD};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Direct,
    Hodge,
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeEntry {
    pub degree: i64,
    /// Unsigned term; the torsion adds `(−1)^degree` times this.
    pub ln_contribution: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pseudo_det: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ln_pseudo_det: Option<f64>,
    pub rank_boundary: usize,
    pub betti: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub method: Method,
    pub log_torsion: f64,
    pub per_degree: Vec<DegreeEntry>,
}

pub(crate) fn sign(degree: i64) -> f64 {
    if degree.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

impl TorsionReport {
    pub fn from_entries(method: Method, per_degree: Vec<DegreeEntry>) -> Self {
        let log_torsion = per_degree.iter().map(|e| sign(e.degree) * e.ln_contribution).sum();
        TorsionReport { method, log_torsion, per_degree }
    }

    pub fn signed_sum(&self) -> f64 {
        self.per_degree.iter().map(|e| sign(e.degree) * e.ln_contribution).sum()
    }

    pub fn entry(&self, degree: i64) -> Option<&DegreeEntry> {
        self.per_degree.iter().find(|e| e.degree == degree)
    }

    fn adjust(&mut self, degree: i64, delta: f64) {
        match self.per_degree.iter_mut().find(|e| e.degree == degree) {
            Some(e) => e.ln_contribution += delta,
            None => {
                self.per_degree.push(DegreeEntry {
                    degree,
                    ln_contribution: delta,
                    pseudo_det: None,
                    ln_pseudo_det: None,
                    rank_boundary: 0,
                    betti: 0,
                });
                self.per_degree.sort_by_key(|e| e.degree);
            }
        }
        self.log_torsion += sign(degree) * delta;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Random `r × r` integer matrix with determinant ±1.
pub(crate) fn random_unimodular(r: usize, rng: &mut ChaCha8Rng) -> RatMatrix {
    let mut m = IntMatrix::identity(r);
    if r == 0 {
        return m.to_rational();
    }
    let mut perm: Vec<usize> = (0..r).collect();
    perm.shuffle(rng);
    m = m.select_columns(&perm);
    for _ in 0..3 * r {
        let a = rng.gen_range(0..r);
        let b = rng.gen_range(0..r);
        if a == b {
            continue;
        }
        let k = BigInt::from(rng.gen_range(-2i64..=2));
        for row in 0..r {
            let delta = &k * &m[(row, a)];
            m[(row, b)] += delta;
        }
    }
    for c in 0..r {
        if rng.gen_bool(0.5) {
            for row in 0..r {
                m[(row, c)] = -m[(row, c)].clone();
            }
        }
    }
    m.to_rational()
}

fn random_small(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> RatMatrix {
    RatMatrix::from_fn(rows, cols, |_, _| BigRational::from_integer(BigInt::from(rng.gen_range(-2i64..=2))))
}

/// Boundary basis `b` of `im ∂` and lifts `b̃` with `∂ b̃ = b`.
struct BoundaryBasis {
    b: RatMatrix,
    lift: RatMatrix,
}

fn boundary_basis(d: &RatMatrix, rng: Option<&mut ChaCha8Rng>) -> BoundaryBasis {
    let int = row_integral(d);
    let pivots = exact::pivot_columns(&int);
    let mut b = d.select_columns(&pivots);
    let mut lift = RatMatrix::zeros(d.cols(), pivots.len());
    for (j, &p) in pivots.iter().enumerate() {
        lift[(p, j)] = BigRational::one();
    }
    if let Some(rng) = rng {
        let u = random_unimodular(pivots.len(), rng);
        b = &b * &u;
        lift = &lift * &u;
        let cycles = exact::kernel(&int).to_rational();
        if cycles.cols() > 0 && !pivots.is_empty() {
            let r = random_small(cycles.cols(), pivots.len(), rng);
            lift = &lift + &(&cycles * &r);
        }
    }
    BoundaryBasis { b, lift }
}

/// Torsion from the definition: assemble `[b_i h_i b̃_{i−1}]` per degree and
/// take exact determinants. `seed = 0` uses pivot columns and unit lifts;
/// any other seed randomizes both.
pub fn torsion_direct<T: Ring>(c: &ChainComplex<T>, h: &BasedHomology, seed: u64) -> Result<TorsionReport> {
    h.validate(c)?;
    let rc = c.to_rational();
    let mut rng = (seed != 0).then(|| ChaCha8Rng::seed_from_u64(seed));
    let top = rc.top_degree();
    let mut bases: Vec<BoundaryBasis> = Vec::new();
    for d in rc.degrees() {
        // basis of im ∂_{d+1} ⊂ C_d, lifted to C_{d+1}
        bases.push(boundary_basis(&rc.boundary(d + 1), rng.as_mut()));
    }
    let mut entries = Vec::new();
    for (k, d) in rc.degrees().enumerate() {
        let n = rc.dim(d);
        let empty = HomologyBasis::empty(n);
        let hb = h.get(d).unwrap_or(&empty);
        let mut blocks: Vec<&RatMatrix> = vec![&bases[k].b, &hb.vectors];
        let zero_lift = RatMatrix::zeros(n, 0);
        if k >= 1 {
            blocks.push(&bases[k - 1].lift);
        } else {
            blocks.push(&zero_lift);
        }
        let m = RatMatrix::hstack(&blocks, n);
        if m.cols() != n {
            return Err(Error::Internal(format!("basis assembly failed in degree {d}: {} columns for dimension {n}", m.cols())));
        }
        let det = exact::det_rational(&m);
        if det.is_zero() {
            return Err(Error::Internal(format!("basis assembly failed in degree {d}")));
        }
        entries.push(DegreeEntry {
            degree: d,
            ln_contribution: exact::ln_abs_rational(&det) + hb.log_scale,
            pseudo_det: None,
            ln_pseudo_det: None,
            rank_boundary: if d == rc.offset() { 0 } else { bases[k - 1].b.cols() },
            betti: hb.rank(),
        });
    }
    debug_assert!(entries.last().is_none_or(|e| e.degree == top));
    Ok(TorsionReport::from_entries(Method::Direct, entries))
}

/// `ln τ = ½ Σ_i (−1)^{i+1} i ln pdet Δ_i`, with the orthonormal harmonic
/// homology basis.
pub fn torsion_hodge(c: &ChainComplex) -> Result<TorsionReport> {
    torsion_hodge_with(c, DEFAULT_FLOAT_THRESHOLD)
}

/// [`torsion_hodge`] switching to the floating eigensolver for Laplacians
/// larger than `float_threshold`.
pub fn torsion_hodge_with(c: &ChainComplex, float_threshold: usize) -> Result<TorsionReport> {
    let mut entries = Vec::new();
    for d in c.degrees() {
        let lap = c.laplacian(d);
        let p = pseudo_determinant_with(&lap, float_threshold)?;
        let ln_p = p.ln();
        entries.push(DegreeEntry {
            degree: d,
            ln_contribution: -0.5 * d as f64 * ln_p,
            pseudo_det: Some(p.exact().map_or_else(|| format!("{:e}", p.to_f64()), BigInt::to_string)),
            ln_pseudo_det: Some(ln_p),
            rank_boundary: c.boundary_rank_int(d),
            betti: p.nullity,
        });
    }
    Ok(TorsionReport::from_entries(Method::Hodge, entries))
}

fn apply_transitions(
    report: &TorsionReport,
    transitions: &[(i64, RatMatrix)],
) -> Result<TorsionReport> {
    let mut out = report.clone();
    for (d, t) in transitions {
        if !t.is_square() {
            return Err(Error::Contract(format!("transition in degree {d} is not square")));
        }
        let det = exact::det_rational(t);
        if det.is_zero() {
            return Err(Error::SingularTransition(*d));
        }
        out.adjust(*d, exact::ln_abs_rational(&det));
    }
    Ok(out)
}

/// `ln τ(c′, h) = ln τ(c, h) + Σ (−1)^i ln |[c_i / c′_i]|`, where the
/// transition in degree `i` expresses the old basis in the new one.
pub fn change_of_basis_chain(report: &TorsionReport, transitions: &[(i64, RatMatrix)]) -> Result<TorsionReport> {
    apply_transitions(report, transitions)
}

/// `ln τ(c, h′) = ln τ(c, h) + Σ (−1)^i ln |[h′_i / h_i]|`, where the
/// transition expresses the new homology basis in the old one.
pub fn change_of_basis_homology(report: &TorsionReport, transitions: &[(i64, RatMatrix)]) -> Result<TorsionReport> {
    apply_transitions(report, transitions)
}

/// [`change_of_basis_chain`] with each transition given by `ln |det|`,
/// for transitions to orthonormal bases whose determinants are irrational.
pub fn change_of_basis_chain_log(report: &TorsionReport, log_dets: &[(i64, f64)]) -> Result<TorsionReport> {
    let mut out = report.clone();
    for &(d, l) in log_dets {
        out.adjust(d, l);
    }
    Ok(out)
}

/// [`change_of_basis_homology`] with each transition given by `ln |det|`.
pub fn change_of_basis_homology_log(report: &TorsionReport, log_dets: &[(i64, f64)]) -> Result<TorsionReport> {
    change_of_basis_chain_log(report, log_dets)
}

/// `ln A_p = −½ Σ_{k=p}^{top} (−1)^{k−p} ln pdet Δ_k` for every degree `p`
/// of the complex, returned in degree order.
pub fn transition_log_dets(y: &ChainComplex) -> Result<Vec<f64>> {
    transition_log_dets_with(y, DEFAULT_FLOAT_THRESHOLD)
}

pub fn transition_log_dets_with(y: &ChainComplex, float_threshold: usize) -> Result<Vec<f64>> {
    let logs: Vec<f64> = y
        .degrees()
        .map(|d| pseudo_determinant_with(&y.laplacian(d), float_threshold).map(|p| p.ln()))
        .collect::<Result<_>>()?;
    let mut out = vec![0.0; logs.len()];
    for p in 0..logs.len() {
        let mut acc = 0.0;
        for (k, l) in logs.iter().enumerate().skip(p) {
            acc += if (k - p) % 2 == 0 { *l } else { -*l };
        }
        out[p] = -0.5 * acc;
    }
    Ok(out)
}

/// `ln A_p = −½ ln pdet(∂_pᵀ ∂_p)`; agrees with [`transition_log_dets`].
pub fn transition_log_dets_by_boundary(y: &ChainComplex) -> Result<Vec<f64>> {
    y.degrees()
        .map(|d| {
            let b = y.boundary(d);
            pseudo_determinant(&(&b.transpose() * &b)).map(|p| -0.5 * p.ln())
        })
        .collect()
}
