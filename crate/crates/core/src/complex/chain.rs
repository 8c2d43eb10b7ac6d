use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{contract, Result};
use crate::linalg::matrix::{Matrix, Ring};
use crate::linalg::{exact, pdet, IntMatrix, RatMatrix};

/// A bounded chain complex of finite-dimensional free modules with the
/// standard basis as preferred basis.
///
/// `boundaries[k]` is `∂ : C_{offset+k+1} → C_{offset+k}`.
#[derive(Clone, PartialEq)]
pub struct ChainComplex<T = BigInt> {
    offset: i64,
    dims: Vec<usize>,
    boundaries: Vec<Matrix<T>>,
}

pub type RatChainComplex = ChainComplex<BigRational>;

impl<T: Ring> std::fmt::Debug for ChainComplex<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChainComplex")
            .field("offset", &self.offset)
            .field("dims", &self.dims)
            .field("boundaries", &self.boundaries)
            .finish()
    }
}

impl<T: Ring> ChainComplex<T> {
    /// Checks shapes and `∂∂ = 0`. `boundaries` may be shorter than
    /// `dims.len() - 1`; missing maps are zero.
    pub fn new(offset: i64, dims: Vec<usize>, mut boundaries: Vec<Matrix<T>>) -> Result<Self> {
        if dims.is_empty() && !boundaries.is_empty() {
            return contract("boundary maps on an empty complex");
        }
        if boundaries.len() + 1 > dims.len().max(1) {
            return contract("more boundary maps than degrees");
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.shape() != (dims[k], dims[k + 1]) {
                return contract(format!(
                    "boundary into degree {} has shape {:?}, expected {:?}",
                    offset + k as i64,
                    b.shape(),
                    (dims[k], dims[k + 1])
                ));
            }
        }
        while boundaries.len() + 1 < dims.len() {
            let k = boundaries.len();
            boundaries.push(Matrix::zeros(dims[k], dims[k + 1]));
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul_ring(&boundaries[k]).is_zero() {
                return contract(format!("∂∂ ≠ 0 at degree {}", offset + k as i64 + 1));
            }
        }
        Ok(ChainComplex { offset, dims, boundaries })
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Highest degree carried (may hold a zero-dimensional group).
    pub fn top_degree(&self) -> i64 {
        self.offset + self.dims.len() as i64 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.offset..=self.top_degree()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.slot(degree).map_or(0, |k| self.dims[k])
    }

    fn slot(&self, degree: i64) -> Option<usize> {
        let k = degree - self.offset;
        (k >= 0 && (k as usize) < self.dims.len()).then_some(k as usize)
    }

    /// `∂_degree : C_degree → C_{degree-1}`, zero of the right shape when
    /// absent.
    pub fn boundary(&self, degree: i64) -> Matrix<T> {
        match self.slot(degree) {
            Some(k) if k >= 1 => self.boundaries[k - 1].clone(),
            _ => Matrix::zeros(self.dim(degree - 1), self.dim(degree)),
        }
    }

    pub fn boundary_ref(&self, degree: i64) -> Option<&Matrix<T>> {
        let k = self.slot(degree)?;
        if k == 0 {
            None
        } else {
            self.boundaries.get(k - 1)
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|d| if d.rem_euclid(2) == 0 { self.dim(d) as i64 } else { -(self.dim(d) as i64) }).sum()
    }

    pub fn to_rational(&self) -> RatChainComplex {
        ChainComplex {
            offset: self.offset,
            dims: self.dims.clone(),
            boundaries: self.boundaries.iter().map(Matrix::to_rational_matrix).collect(),
        }
    }

    /// Rank of `∂_degree` over ℚ.
    pub fn boundary_rank(&self, degree: i64) -> usize {
        match self.boundary_ref(degree) {
            Some(b) => exact::rank_rational(&b.to_rational_matrix()),
            None => 0,
        }
    }

    pub fn betti(&self, degree: i64) -> usize {
        self.dim(degree) - self.boundary_rank(degree) - self.boundary_rank(degree + 1)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees().map(|d| self.betti(d)).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|d| self.betti(d) == 0)
    }

    /// Same groups and maps, degrees moved by `shift`.
    pub fn shifted(&self, shift: i64) -> Self {
        ChainComplex { offset: self.offset + shift, ..self.clone() }
    }
}

impl ChainComplex<BigInt> {
    /// `∂_{i+1} ∂_{i+1}ᵀ + ∂_iᵀ ∂_i`.
    pub fn laplacian(&self, degree: i64) -> IntMatrix {
        pdet::laplacian(&self.boundary(degree), &self.boundary(degree + 1))
    }

    pub fn boundary_rank_int(&self, degree: i64) -> usize {
        self.boundary_ref(degree).map_or(0, exact::rank)
    }
}

impl RatChainComplex {
    /// Boundary maps with each row scaled by the lcm of its denominators.
    /// Row scaling keeps kernels, ranks and pivot columns.
    pub fn row_integral_boundary(&self, degree: i64) -> IntMatrix {
        row_integral(&self.boundary(degree))
    }
}

pub(crate) fn row_integral(m: &RatMatrix) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|r| exact::primitive_vector(m.row(r)).0).collect();
    IntMatrix::from_rows(&rows, m.cols())
}

/// Combinatorial Laplacian of a chain complex in the given degree.
pub fn combinatorial_laplacian(c: &ChainComplex, degree: i64) -> IntMatrix {
    c.laplacian(degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonzero_square() {
        let d1 = IntMatrix::from_i64(1, 1, &[1]);
        let d2 = IntMatrix::from_i64(1, 1, &[1]);
        assert!(ChainComplex::new(0, vec![1, 1, 1], vec![d1, d2]).is_err());
    }

    #[test]
    fn rejects_bad_shape() {
        let d1 = IntMatrix::from_i64(1, 2, &[1, 1]);
        assert!(ChainComplex::new(0, vec![1, 1], vec![d1]).is_err());
    }

    #[test]
    fn negative_offset() {
        let d = IntMatrix::from_i64(1, 1, &[2]);
        let c = ChainComplex::new(-3, vec![1, 1], vec![d.clone()]).unwrap();
        assert_eq!(c.boundary(-2), d);
        assert_eq!(c.dim(-4), 0);
        assert_eq!(c.boundary(-3).shape(), (0, 1));
        assert!(c.is_acyclic());
    }
}
