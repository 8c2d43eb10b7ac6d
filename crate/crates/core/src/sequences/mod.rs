//! Torsion of exact sequences of based vector spaces: long exact sequences,
//! split short exact sequences, homology sequences of simplicial pairs and
//! Mayer–Vietoris sequences of a cone glued to a manifold with boundary.

mod json;
mod mayer_vietoris;
mod pair;
mod tp;

pub use mayer_vietoris::{mayer_vietoris_sequence, MayerVietoris};
pub use pair::{pair_sequence, relative_chain_complex, PairSequence};
pub use tp::{discrete_tp, discrete_tp_with, TpReport};

use num_rational::BigRational;
use num_traits::Zero;

use crate::complex::RatChainComplex;
use crate::error::{contract, Error, Result};
use crate::linalg::{exact, RatMatrix};
use crate::torsion::{change_of_basis_chain_log, torsion_direct, BasedHomology, TorsionReport};

/// `V_s → V_{s+1} → …` with `s = first_index`. The preferred basis of `V_j`
/// is the coordinate basis scaled so that its determinant against the
/// coordinates is `exp(log_scales[j])`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasedExactSequence {
    first_index: usize,
    dims: Vec<usize>,
    maps: Vec<RatMatrix>,
    log_scales: Vec<f64>,
    labels: Vec<String>,
}

impl BasedExactSequence {
    /// `maps[k] : V_k → V_{k+1}` as a `dims[k+1] × dims[k]` matrix. Checks
    /// shapes, composites and exactness at every position, counting the
    /// implicit zeros at both ends.
    pub fn new(first_index: usize, dims: Vec<usize>, maps: Vec<RatMatrix>) -> Result<Self> {
        if dims.is_empty() {
            return contract("exact sequence with no spaces");
        }
        if maps.len() + 1 != dims.len() {
            return contract(format!("{} spaces need {} maps, got {}", dims.len(), dims.len() - 1, maps.len()));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.shape() != (dims[k + 1], dims[k]) {
                return contract(format!(
                    "map out of position {} has shape {:?}, expected {:?}",
                    first_index + k,
                    m.shape(),
                    (dims[k + 1], dims[k])
                ));
            }
        }
        let s = BasedExactSequence {
            first_index,
            log_scales: vec![0.0; dims.len()],
            labels: (0..dims.len()).map(|k| format!("V{}", first_index + k)).collect(),
            dims,
            maps,
        };
        s.check_exact()?;
        Ok(s)
    }

    pub fn with_log_scales(mut self, log_scales: Vec<f64>) -> Result<Self> {
        if log_scales.len() != self.dims.len() {
            return contract(format!("{} log scales for {} spaces", log_scales.len(), self.dims.len()));
        }
        self.log_scales = log_scales;
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dims.len() {
            return contract(format!("{} labels for {} spaces", labels.len(), self.dims.len()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Parses `{"dims": [...], "maps": [...]}` with optional `first_index`,
    /// `log_scales` and `labels`. Matrix entries are integers, decimals or
    /// `"p/q"` strings.
    pub fn from_json(text: &str) -> Result<Self> {
        json::parse_sequence(text)
    }

    pub fn first_index(&self) -> usize {
        self.first_index
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[RatMatrix] {
        &self.maps
    }

    pub fn log_scales(&self) -> &[f64] {
        &self.log_scales
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    fn incoming(&self, k: usize) -> RatMatrix {
        if k == 0 {
            RatMatrix::zeros(self.dims[0], 0)
        } else {
            self.maps[k - 1].clone()
        }
    }

    fn outgoing(&self, k: usize) -> RatMatrix {
        self.maps.get(k).cloned().unwrap_or_else(|| RatMatrix::zeros(0, self.dims[k]))
    }

    fn check_exact(&self) -> Result<()> {
        for k in 0..self.dims.len() {
            let position = self.first_index + k;
            let (inc, out) = (self.incoming(k), self.outgoing(k));
            if !(&out * &inc).is_zero() {
                return Err(Error::NotExact { position, message: "composite of consecutive maps is nonzero".into() });
            }
            let (ri, ro) = (exact::rank_rational(&inc), exact::rank_rational(&out));
            if ri + ro != self.dims[k] {
                return Err(Error::NotExact {
                    position,
                    message: format!(
                        "dim ker = {} but dim im = {ri} in {} (dimension {})",
                        self.dims[k] - ro,
                        self.labels[k],
                        self.dims[k]
                    ),
                });
            }
        }
        Ok(())
    }

    /// The sequence as an acyclic chain complex with `C_{−j} = V_j`.
    pub fn to_chain_complex(&self) -> RatChainComplex {
        let last = (self.first_index + self.dims.len() - 1) as i64;
        let dims: Vec<usize> = self.dims.iter().rev().copied().collect();
        let boundaries: Vec<RatMatrix> = self.maps.iter().rev().cloned().collect();
        RatChainComplex::new(-last, dims, boundaries).expect("exact sequences square to zero")
    }

    /// Chain degree of position `k`.
    fn degree(&self, k: usize) -> i64 {
        -((self.first_index + k) as i64)
    }
}

/// Torsion of the sequence viewed as an acyclic chain complex in degrees
/// `−j`, with preferred bases rescaled by the per-space log scales.
pub fn exact_sequence_torsion(s: &BasedExactSequence) -> Result<TorsionReport> {
    exact_sequence_torsion_seeded(s, 0)
}

/// [`exact_sequence_torsion`] with randomized boundary bases and lifts.
pub fn exact_sequence_torsion_seeded(s: &BasedExactSequence, seed: u64) -> Result<TorsionReport> {
    let c = s.to_chain_complex();
    let empty = BasedHomology::from_vectors(c.offset(), c.degrees().map(|d| RatMatrix::zeros(c.dim(d), 0)).collect());
    let report = torsion_direct(&c, &empty, seed)?;
    let scales: Vec<(i64, f64)> = s.log_scales.iter().enumerate().map(|(k, &l)| (s.degree(k), -l)).collect();
    change_of_basis_chain_log(&report, &scales)
}

/// `0 → V₁ →ⁱ V₂ →ᵖ V₃ → 0` with a section `j`, `p j = id`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitSESData {
    pub i: RatMatrix,
    pub j: RatMatrix,
    pub p: RatMatrix,
}

impl SplitSESData {
    pub fn new(i: RatMatrix, j: RatMatrix, p: RatMatrix) -> Result<Self> {
        let v2 = i.rows();
        if j.rows() != v2 || p.cols() != v2 || j.cols() != p.rows() {
            return contract(format!(
                "incompatible shapes: i {:?}, j {:?}, p {:?}",
                i.shape(),
                j.shape(),
                p.shape()
            ));
        }
        if !(&p * &i).is_zero() {
            return contract("p · i ≠ 0");
        }
        if &p * &j != RatMatrix::identity(p.rows()) {
            return contract("p · j ≠ id");
        }
        Ok(SplitSESData { i, j, p })
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.i.cols(), self.i.rows(), self.p.rows())
    }

    /// The three-term sequence `V₁ → V₂ → V₃` at positions 1, 2, 3.
    pub fn to_sequence(&self) -> Result<BasedExactSequence> {
        let (a, b, c) = self.dims();
        BasedExactSequence::new(1, vec![a, b, c], vec![self.i.clone(), self.p.clone()])
    }
}

/// `ln |det [i(c₁) j(c₃)]|` in the coordinates of `c₂`.
pub fn split_ses_torsion(d: &SplitSESData) -> Result<f64> {
    let (_, v2, _) = d.dims();
    let m = RatMatrix::hstack(&[&d.i, &d.j], v2);
    if !m.is_square() {
        return contract(format!("[i(c₁) j(c₃)] is {}×{}; the sequence is not exact", m.rows(), m.cols()));
    }
    let det = exact::det_rational(&m);
    if det.is_zero() {
        return contract("[i(c₁) j(c₃)] is singular; the sequence is not exact");
    }
    Ok(exact::ln_abs_rational(&det))
}

/// With `V₂ = V₁ ⊕ V₃` in coordinates: `p₁ i` is orthogonal and `p i₂ = id`,
/// where `p₁` projects to the first summand and `i₂` includes the second.
pub fn split_ses_trivial(d: &SplitSESData) -> bool {
    let (a, b, c) = d.dims();
    if a + c != b {
        return false;
    }
    let first: Vec<usize> = (0..a).collect();
    let second: Vec<usize> = (a..b).collect();
    let p1i = d.i.select_rows(&first);
    let p_i2 = d.p.select_columns(&second);
    let gram = &p1i.transpose() * &p1i;
    gram == RatMatrix::identity(a) && p_i2 == RatMatrix::identity(c)
}

pub(crate) fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub(crate) fn neg(m: &RatMatrix) -> RatMatrix {
    m.map(|x| -x.clone())
}
