use num_rational::BigRational;
use num_traits::Zero;

use crate::complex::ChainComplex;
use crate::error::{contract, Result};
use crate::linalg::harmonic::orthogonalize;
use crate::linalg::matrix::{Matrix, Ring};
use crate::linalg::{exact, RatMatrix};

/// Homology basis in one degree: the preferred basis is `vectors · S` with
/// `ln |det S| = log_scale`. Keeping `S` symbolic lets orthonormal bases
/// stay exact.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyBasis {
    pub vectors: RatMatrix,
    pub log_scale: f64,
}

impl HomologyBasis {
    pub fn new(vectors: RatMatrix) -> Self {
        HomologyBasis { vectors, log_scale: 0.0 }
    }

    pub fn empty(chain_dim: usize) -> Self {
        HomologyBasis::new(RatMatrix::zeros(chain_dim, 0))
    }

    pub fn rank(&self) -> usize {
        self.vectors.cols()
    }
}

/// Homology bases for every degree of a chain complex, given by cycle
/// representatives in chain coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct BasedHomology {
    offset: i64,
    bases: Vec<HomologyBasis>,
}

impl BasedHomology {
    pub fn new(offset: i64, bases: Vec<HomologyBasis>) -> Self {
        BasedHomology { offset, bases }
    }

    /// Plain representative vectors with no extra scale.
    pub fn from_vectors(offset: i64, vectors: Vec<RatMatrix>) -> Self {
        BasedHomology::new(offset, vectors.into_iter().map(HomologyBasis::new).collect())
    }

    /// Orthonormal bases of the harmonic spaces `ker ∂_i ∩ ker ∂_{i+1}ᵀ`,
    /// the kernels of the combinatorial Laplacians.
    pub fn harmonic<T: Ring>(c: &ChainComplex<T>) -> Self {
        let bases = c.degrees().map(|d| harmonic_basis(c, d)).collect();
        BasedHomology { offset: c.offset(), bases }
    }

    pub fn get(&self, degree: i64) -> Option<&HomologyBasis> {
        let k = degree - self.offset;
        if k < 0 {
            return None;
        }
        self.bases.get(k as usize)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.bases.len()).map(move |k| self.offset + k as i64)
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.get(degree).map_or(0, HomologyBasis::rank)
    }

    /// Same cycles with each degree's basis transformed by `[h′/h]`.
    pub fn transformed(&self, degree: i64, t: &RatMatrix) -> Result<Self> {
        let Some(b) = self.get(degree) else {
            return contract(format!("no homology basis in degree {degree}"));
        };
        let d = exact::det_rational(t);
        if d.is_zero() {
            return Err(crate::error::Error::SingularTransition(degree));
        }
        let mut out = self.clone();
        let k = (degree - self.offset) as usize;
        out.bases[k] = HomologyBasis { vectors: &b.vectors * t, log_scale: b.log_scale };
        Ok(out)
    }

    /// Cycle, independence and count checks against `c`.
    pub fn validate<T: Ring>(&self, c: &ChainComplex<T>) -> Result<()> {
        for d in self.degrees() {
            if self.rank(d) > 0 && (d < c.offset() || d > c.top_degree()) {
                return contract(format!("homology basis given in degree {d} outside the complex"));
            }
        }
        for d in c.degrees() {
            let h = self.get(d).map(|b| b.vectors.clone()).unwrap_or_else(|| RatMatrix::zeros(c.dim(d), 0));
            if h.rows() != c.dim(d) {
                return contract(format!("homology basis in degree {d} has {} rows, chain group has {}", h.rows(), c.dim(d)));
            }
            let betti = c.betti(d);
            if h.cols() != betti {
                return contract(format!("degree {d}: {} homology vectors but Betti number {betti}", h.cols()));
            }
            if !(&c.boundary(d).to_rational_matrix() * &h).is_zero() {
                return contract(format!("degree {d}: homology vector is not a cycle"));
            }
            let bnd = c.boundary(d + 1).to_rational_matrix();
            let r = exact::rank_rational(&bnd);
            let both = RatMatrix::hstack(&[&bnd, &h], c.dim(d));
            if exact::rank_rational(&both) != r + h.cols() {
                return contract(format!("degree {d}: homology vectors dependent modulo boundaries"));
            }
        }
        Ok(())
    }
}

/// Exact orthogonal basis of `ker ∂_d ∩ ker ∂_{d+1}ᵀ` scaled to unit length.
pub fn harmonic_basis<T: Ring>(c: &ChainComplex<T>, d: i64) -> HomologyBasis {
    let n = c.dim(d);
    let down: Matrix<BigRational> = c.boundary(d).to_rational_matrix();
    let up = c.boundary(d + 1).to_rational_matrix().transpose();
    let stacked = RatMatrix::vstack(&[&down, &up], n);
    let kernel = exact::kernel_rational(&stacked);
    let h = orthogonalize(&kernel);
    HomologyBasis { vectors: h.vectors.to_rational(), log_scale: h.log_scale() }
}
