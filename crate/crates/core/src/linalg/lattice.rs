//! Saturated integer lattices: kernels of integer matrices computed with
//! unimodular column operations, so every basis we hand out extends to a
//! basis of the ambient `ℤ^n`.

use num_bigint::BigInt;
use num_integer::{ExtendedGcd, Integer};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::exact;
use super::matrix::{IntMatrix, RatMatrix};

/// A sublattice of `ℤ^n` given by a basis together with an integer left
/// inverse (`left_inverse · basis = I`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub basis: IntMatrix,
    pub left_inverse: IntMatrix,
}

impl Lattice {
    /// The full lattice `ℤ^n`.
    pub fn full(n: usize) -> Self {
        Lattice { basis: IntMatrix::identity(n), left_inverse: IntMatrix::identity(n) }
    }

    /// Coordinate sublattice spanned by the listed standard basis vectors.
    pub fn coordinate(n: usize, support: &[usize]) -> Self {
        let mut basis = IntMatrix::zeros(n, support.len());
        for (j, &s) in support.iter().enumerate() {
            basis[(s, j)] = BigInt::one();
        }
        let left_inverse = basis.transpose();
        Lattice { basis, left_inverse }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of the columns of `x` in this lattice basis, or `None`
    /// if some column is not in the rational span.
    pub fn coordinates(&self, x: &RatMatrix) -> Option<RatMatrix> {
        let coords = &self.left_inverse.to_rational() * x;
        let back = &self.basis.to_rational() * &coords;
        (back == *x).then_some(coords)
    }

    pub fn coordinates_int(&self, x: &IntMatrix) -> Option<IntMatrix> {
        let coords = &self.left_inverse * x;
        let back = &self.basis * &coords;
        (back == *x).then_some(coords)
    }

    /// Volume of the fundamental domain in the induced Euclidean metric,
    /// returned as its square `det(Bᵀ B)` (an exact integer).
    pub fn gram_determinant(&self) -> BigInt {
        let gram = &self.basis.transpose() * &self.basis;
        exact::det(&gram)
    }

    /// `ln` of the covolume, i.e. `½ ln det(Bᵀ B)`.
    pub fn log_covolume(&self) -> f64 {
        0.5 * exact::ln_abs_int(&self.gram_determinant())
    }
}

/// Result of [`smith_rank_and_kernel`].
#[derive(Clone, Debug)]
pub struct SmithKernel {
    /// Rank over the rationals.
    pub rank: usize,
    /// Saturated basis of `ker A ∩ ℤ^n`.
    pub kernel: Lattice,
}

/// Rank of an integer matrix and a saturated basis of its integer kernel.
///
/// Column-style Hermite reduction: `A · U = [H | 0]` with `U` unimodular.
/// The trailing columns of `U` span the kernel lattice and the matching rows
/// of `U⁻¹` give integer coordinates on it.
pub fn smith_rank_and_kernel(a: &IntMatrix) -> SmithKernel {
    let order: Vec<usize> = (0..a.cols()).collect();
    smith_rank_and_kernel_ordered(a, &order)
}

/// Same as [`smith_rank_and_kernel`] but eliminating columns in the given
/// order. Different orders give kernel bases that differ by a unimodular
/// change of basis.
pub fn smith_rank_and_kernel_ordered(a: &IntMatrix, order: &[usize]) -> SmithKernel {
    let n = a.cols();
    assert_eq!(order.len(), n, "column order must be a permutation");
    let mut w = a.select_columns(order);
    let mut u = IntMatrix::identity(n);
    let mut uinv = IntMatrix::identity(n);
    let mut next = 0;
    for row in 0..w.rows() {
        if next == n {
            break;
        }
        // smallest nonzero entry of this row among unreduced columns
        let mut pivot: Option<usize> = None;
        for c in next..n {
            if w[(row, c)].is_zero() {
                continue;
            }
            match pivot {
                Some(p) if w[(row, p)].abs() <= w[(row, c)].abs() => {}
                _ => pivot = Some(c),
            }
        }
        let Some(p) = pivot else { continue };
        swap_columns(&mut w, &mut u, &mut uinv, next, p);
        for c in next + 1..n {
            if w[(row, c)].is_zero() {
                continue;
            }
            let x = w[(row, next)].clone();
            let y = w[(row, c)].clone();
            if y.is_multiple_of(&x) {
                let q = &y / &x;
                add_column_multiple(&mut w, &mut u, &mut uinv, c, next, &-q);
            } else {
                gcd_combine(&mut w, &mut u, &mut uinv, next, c, &x, &y);
            }
        }
        next += 1;
    }
    let rank = next;
    let kernel_cols: Vec<usize> = (rank..n).collect();
    let basis_perm = u.select_columns(&kernel_cols);
    let linv_perm = uinv.select_rows(&kernel_cols);
    // undo the initial column permutation: row order[i] of the ambient space
    let mut basis = IntMatrix::zeros(n, kernel_cols.len());
    let mut left_inverse = IntMatrix::zeros(kernel_cols.len(), n);
    for (i, &orig) in order.iter().enumerate() {
        for j in 0..kernel_cols.len() {
            basis[(orig, j)] = basis_perm[(i, j)].clone();
            left_inverse[(j, orig)] = linv_perm[(j, i)].clone();
        }
    }
    SmithKernel { rank, kernel: Lattice { basis, left_inverse } }
}

fn swap_columns(w: &mut IntMatrix, u: &mut IntMatrix, uinv: &mut IntMatrix, a: usize, b: usize) {
    w.swap_cols(a, b);
    u.swap_cols(a, b);
    uinv.swap_rows(a, b);
}

/// col_dst += k · col_src (and the inverse row operation on `uinv`).
fn add_column_multiple(
    w: &mut IntMatrix,
    u: &mut IntMatrix,
    uinv: &mut IntMatrix,
    dst: usize,
    src: usize,
    k: &BigInt,
) {
    for m in [&mut *w, &mut *u] {
        for r in 0..m.rows() {
            if !m[(r, src)].is_zero() {
                let delta = k * &m[(r, src)];
                m[(r, dst)] += delta;
            }
        }
    }
    // U' = U E with E = I + k e_src e_dstᵀ, so U'^{-1} = (I - k e_src e_dstᵀ) U^{-1}
    for c in 0..uinv.cols() {
        if !uinv[(dst, c)].is_zero() {
            let delta = k * &uinv[(dst, c)];
            uinv[(src, c)] -= delta;
        }
    }
}

/// Replace columns (a, b) with entries (x, y) in the current row by
/// (s·a + t·b, −(y/g)·a + (x/g)·b), which puts g = gcd(x, y) in column a and
/// zero in column b. The 2×2 transform has determinant one.
fn gcd_combine(
    w: &mut IntMatrix,
    u: &mut IntMatrix,
    uinv: &mut IntMatrix,
    a: usize,
    b: usize,
    x: &BigInt,
    y: &BigInt,
) {
    let ExtendedGcd { gcd: g, x: s, y: t, .. } = x.extended_gcd(y);
    let xg = x / &g;
    let yg = y / &g;
    for m in [&mut *w, &mut *u] {
        for r in 0..m.rows() {
            let ca = m[(r, a)].clone();
            let cb = m[(r, b)].clone();
            if ca.is_zero() && cb.is_zero() {
                continue;
            }
            m[(r, a)] = &s * &ca + &t * &cb;
            m[(r, b)] = &xg * &cb - &yg * &ca;
        }
    }
    for c in 0..uinv.cols() {
        let ra = uinv[(a, c)].clone();
        let rb = uinv[(b, c)].clone();
        if ra.is_zero() && rb.is_zero() {
            continue;
        }
        uinv[(a, c)] = &xg * &ra + &yg * &rb;
        uinv[(b, c)] = &s * &rb - &t * &ra;
    }
}

/// Saturation of the lattice spanned by the columns of `m`: the integer
/// points of its rational span.
pub fn saturate_columns(m: &IntMatrix) -> Lattice {
    // span ∩ ℤ^n = ker(K^T) ∩ ℤ^n where K spans the orthogonal complement.
    let complement = exact::kernel(&m.transpose());
    smith_rank_and_kernel(&complement.transpose()).kernel
}

pub fn to_rational_vector(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}
