//! Exact elimination over the integers and rationals.
//!
//! Rational problems are cleared to integer rows first and reduced with
//! gcd-normalised row operations, which keeps entry growth small on the
//! sparse signed-incidence matrices this crate works with.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{IntMatrix, RatMatrix};

/// Row echelon form produced by integer elimination.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    /// Reduced rows; only the first `pivots.len()` rows are nonzero in the
    /// eliminated column range.
    pub rows: Vec<Vec<BigInt>>,
    /// Pivot column of each leading row, strictly increasing.
    pub pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn content(row: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in row {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

fn normalize_row(row: &mut [BigInt]) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x / &g;
            }
        }
    }
}

/// Integer row echelon form of `rows`, choosing pivots only among the first
/// `limit` columns. Row operations act on whole rows so trailing columns
/// (an augmented right-hand side) are carried along.
pub fn row_echelon_rows(mut rows: Vec<Vec<BigInt>>, limit: usize) -> RowEchelon {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..limit {
        if next == rows.len() {
            break;
        }
        let mut best: Option<usize> = None;
        for r in next..rows.len() {
            let v = &rows[r][col];
            if v.is_zero() {
                continue;
            }
            match best {
                Some(b) if rows[b][col].abs() <= v.abs() => {}
                _ => best = Some(r),
            }
        }
        let Some(p) = best else { continue };
        rows.swap(next, p);
        let (head, tail) = rows.split_at_mut(next + 1);
        let prow = &head[next];
        let a = &prow[col];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let g = a.gcd(&row[col]);
            let fa = a / &g;
            let fb = &row[col] / &g;
            for (x, y) in row.iter_mut().zip(prow.iter()) {
                let scaled = if fa.is_one() { x.clone() } else { &*x * &fa };
                *x = if y.is_zero() { scaled } else { scaled - &fb * y };
            }
            normalize_row(row);
        }
        pivots.push(col);
        next += 1;
    }
    RowEchelon { rows, pivots }
}

pub fn row_echelon(m: &IntMatrix) -> RowEchelon {
    let cols = m.cols();
    row_echelon_rows(m.clone().into_rows(), cols)
}

pub fn rank(m: &IntMatrix) -> usize {
    row_echelon(m).rank()
}

pub fn rank_rational(m: &RatMatrix) -> usize {
    row_echelon_rows(clear_row_denominators(m), m.cols()).rank()
}

/// Indices of the lexicographically first set of columns spanning the
/// column space.
pub fn pivot_columns(m: &IntMatrix) -> Vec<usize> {
    row_echelon(m).pivots
}

fn lcm_of_denominators<'a>(xs: impl Iterator<Item = &'a BigRational>) -> BigInt {
    xs.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn clear_row_denominators(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let l = lcm_of_denominators(row.iter());
            row.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

/// Back-substitution on an echelon system whose first `n` columns are the
/// coefficients; column `n + k` holds the `k`-th right-hand side. Free
/// variables are set to zero.
fn back_substitute(ech: &RowEchelon, n: usize, rhs_cols: usize) -> RatMatrix {
    let mut x = RatMatrix::zeros(n, rhs_cols);
    for k in (0..ech.rank()).rev() {
        let row = &ech.rows[k];
        let pc = ech.pivots[k];
        let lead = BigRational::from_integer(row[pc].clone());
        for j in 0..rhs_cols {
            let mut acc = BigRational::from_integer(row[n + j].clone());
            for &q in &ech.pivots[k + 1..] {
                if !row[q].is_zero() && !x[(q, j)].is_zero() {
                    acc -= BigRational::from_integer(row[q].clone()) * &x[(q, j)];
                }
            }
            x[(pc, j)] = acc / &lead;
        }
    }
    x
}

/// A particular solution of `a · x = b`, or `None` when inconsistent.
pub fn solve(a: &RatMatrix, b: &RatMatrix) -> Option<RatMatrix> {
    assert_eq!(a.rows(), b.rows(), "solve: row mismatch");
    let n = a.cols();
    let aug = RatMatrix::hstack(&[a, b], a.rows());
    let ech = row_echelon_rows(clear_row_denominators(&aug), n);
    for row in &ech.rows[ech.rank()..] {
        if row[n..].iter().any(|x| !x.is_zero()) {
            return None;
        }
    }
    Some(back_substitute(&ech, n, b.cols()))
}

pub fn solve_int(a: &IntMatrix, b: &RatMatrix) -> Option<RatMatrix> {
    solve(&a.to_rational(), b)
}

/// Basis of the rational null space, one primitive integer column per free
/// variable.
pub fn kernel(m: &IntMatrix) -> IntMatrix {
    kernel_of_rows(m.clone().into_rows(), m.cols())
}

pub fn kernel_rational(m: &RatMatrix) -> IntMatrix {
    kernel_of_rows(clear_row_denominators(m), m.cols())
}

fn kernel_of_rows(rows: Vec<Vec<BigInt>>, n: usize) -> IntMatrix {
    let ech = row_echelon_rows(rows, n);
    let mut is_pivot = vec![false; n];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut cols = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = vec![BigRational::zero(); n];
        x[f] = BigRational::one();
        for k in (0..ech.rank()).rev() {
            let row = &ech.rows[k];
            let pc = ech.pivots[k];
            let mut acc = BigRational::zero();
            for c in pc + 1..n {
                if !row[c].is_zero() && !x[c].is_zero() {
                    acc -= BigRational::from_integer(row[c].clone()) * &x[c];
                }
            }
            x[pc] = acc / BigRational::from_integer(row[pc].clone());
        }
        cols.push(primitive_vector(&x).0);
    }
    IntMatrix::from_columns(&cols, n)
}

/// Clears denominators and removes the content of a rational vector.
/// Returns the primitive integer vector `v` and the factor `f` with
/// `v = f · x` (`f = 1` for the zero vector).
pub fn primitive_vector(x: &[BigRational]) -> (Vec<BigInt>, BigRational) {
    let l = lcm_of_denominators(x.iter());
    let ints: Vec<BigInt> =
        x.iter().map(|v| (v * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = content(&ints);
    if g.is_zero() {
        return (ints, BigRational::one());
    }
    let ints = ints.into_iter().map(|v| v / &g).collect();
    (ints, BigRational::new(l, g))
}

pub fn inverse(a: &RatMatrix) -> Option<RatMatrix> {
    if !a.is_square() {
        return None;
    }
    if rank_rational(a) < a.rows() {
        return None;
    }
    solve(a, &RatMatrix::identity(a.rows()))
}

/// Determinant of a square integer matrix.
///
/// Columns or rows with a single nonzero entry are expanded away first
/// (lift vectors are usually unit columns), then the remaining core goes
/// through fraction-free Bareiss elimination.
pub fn det(m: &IntMatrix) -> BigInt {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut row_alive = vec![true; n];
    let mut col_alive = vec![true; n];
    let mut factor = BigInt::one();
    loop {
        let mut changed = false;
        for c in 0..n {
            if !col_alive[c] {
                continue;
            }
            let mut hit = None;
            let mut count = 0;
            for r in 0..n {
                if row_alive[r] && !m[(r, c)].is_zero() {
                    count += 1;
                    hit = Some(r);
                    if count > 1 {
                        break;
                    }
                }
            }
            match (count, hit) {
                (0, _) => return BigInt::zero(),
                (1, Some(r)) => {
                    let pr = (0..r).filter(|&i| row_alive[i]).count();
                    let pc = (0..c).filter(|&j| col_alive[j]).count();
                    factor *= &m[(r, c)];
                    if (pr + pc) % 2 == 1 {
                        factor = -factor;
                    }
                    row_alive[r] = false;
                    col_alive[c] = false;
                    changed = true;
                }
                _ => {}
            }
        }
        for r in 0..n {
            if !row_alive[r] {
                continue;
            }
            let mut hit = None;
            let mut count = 0;
            for c in 0..n {
                if col_alive[c] && !m[(r, c)].is_zero() {
                    count += 1;
                    hit = Some(c);
                    if count > 1 {
                        break;
                    }
                }
            }
            match (count, hit) {
                (0, _) => return BigInt::zero(),
                (1, Some(c)) => {
                    let pr = (0..r).filter(|&i| row_alive[i]).count();
                    let pc = (0..c).filter(|&j| col_alive[j]).count();
                    factor *= &m[(r, c)];
                    if (pr + pc) % 2 == 1 {
                        factor = -factor;
                    }
                    row_alive[r] = false;
                    col_alive[c] = false;
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let rows: Vec<usize> = (0..n).filter(|&r| row_alive[r]).collect();
    let cols: Vec<usize> = (0..n).filter(|&c| col_alive[c]).collect();
    if rows.is_empty() {
        return factor;
    }
    let core = m.select_rows(&rows).select_columns(&cols);
    factor * bareiss_det(core)
}

fn bareiss_det(mut a: IntMatrix) -> BigInt {
    let n = a.rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            let aik = a[(i, k)].clone();
            for j in k + 1..n {
                let v = &pivot * &a[(i, j)];
                let v = if aik.is_zero() || a[(k, j)].is_zero() { v } else { v - &aik * &a[(k, j)] };
                a[(i, j)] = if prev.is_one() { v } else { v / &prev };
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = pivot;
    }
    sign * &a[(n - 1, n - 1)]
}

/// Determinant of a square rational matrix, computed on the column-cleared
/// integer matrix.
pub fn det_rational(m: &RatMatrix) -> BigRational {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut scale = BigInt::one();
    let mut ints = IntMatrix::zeros(n, n);
    for c in 0..n {
        let l = lcm_of_denominators((0..n).map(|r| &m[(r, c)]));
        for r in 0..n {
            ints[(r, c)] = (&m[(r, c)] * BigRational::from_integer(l.clone())).to_integer();
        }
        scale *= l;
    }
    BigRational::new(det(&ints), scale)
}

/// Natural log of |x| for arbitrarily large integers; `-inf` for zero.
pub fn ln_abs_int(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.abs().to_f64().expect("finite for < 1000 bits").ln();
    }
    let shift = bits - 64;
    let top = (x.abs() >> shift).to_f64().expect("64-bit head");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_abs_rational(x: &BigRational) -> f64 {
    ln_abs_int(x.numer()) - ln_abs_int(x.denom())
}

pub fn is_negative(x: &BigInt) -> bool {
    x.sign() == Sign::Minus
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn triangle_boundary_rank_and_kernel() {
        // edges 01, 02, 12 on vertices 0,1,2
        let d1 = IntMatrix::from_i64(3, 3, &[-1, -1, 0, 1, 0, -1, 0, 1, 1]);
        assert_eq!(rank(&d1), 2);
        let k = kernel(&d1);
        assert_eq!(k.shape(), (3, 1));
        let prod = &d1 * &k;
        assert!(prod.is_zero());
        // the fundamental cycle 01 - 02 + 12 up to sign
        let col: Vec<i64> = k.column(0).iter().map(|x| x.to_i64().unwrap()).collect();
        assert!(col == vec![1, -1, 1] || col == vec![-1, 1, -1]);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = IntMatrix::from_i64(3, 3, &[2, -1, 0, -1, 2, -1, 0, -1, 2]);
        assert_eq!(det(&m), BigInt::from(4));
        let m = IntMatrix::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 5]);
        assert_eq!(det(&m), BigInt::from(-5));
        let m = IntMatrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert_eq!(det(&m), BigInt::zero());
        assert_eq!(det(&IntMatrix::zeros(0, 0)), BigInt::one());
    }

    #[test]
    fn bareiss_core_with_dense_block() {
        let m = IntMatrix::from_i64(
            4,
            4,
            &[3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3],
        );
        // Leibniz expansion done independently
        let mut total = 0i64;
        let perms = [
            [0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3], [0, 2, 3, 1], [0, 3, 1, 2], [0, 3, 2, 1],
            [1, 0, 2, 3], [1, 0, 3, 2], [1, 2, 0, 3], [1, 2, 3, 0], [1, 3, 0, 2], [1, 3, 2, 0],
            [2, 0, 1, 3], [2, 0, 3, 1], [2, 1, 0, 3], [2, 1, 3, 0], [2, 3, 0, 1], [2, 3, 1, 0],
            [3, 0, 1, 2], [3, 0, 2, 1], [3, 1, 0, 2], [3, 1, 2, 0], [3, 2, 0, 1], [3, 2, 1, 0],
        ];
        let vals = [3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3];
        for p in perms {
            let mut inv = 0;
            for i in 0..4 {
                for j in i + 1..4 {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            let prod: i64 = (0..4).map(|r| vals[r * 4 + p[r]]).product();
            total += if inv % 2 == 0 { prod } else { -prod };
        }
        assert_eq!(det(&m), BigInt::from(total));
    }

    #[test]
    fn rational_solve_and_inverse() {
        let a = RatMatrix::from_vec(2, 2, vec![q(1, 2), q(1, 3), q(0, 1), q(2, 1)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(&a * &inv, RatMatrix::identity(2));
        assert_eq!(det_rational(&a), q(1, 1));
        let singular = RatMatrix::from_vec(2, 2, vec![q(1, 1), q(2, 1), q(2, 1), q(4, 1)]);
        assert!(inverse(&singular).is_none());
        let b = RatMatrix::from_vec(2, 1, vec![q(1, 1), q(3, 1)]);
        assert!(solve(&singular, &b).is_none());
    }

    #[test]
    fn logs_of_huge_integers() {
        let big = BigInt::from(3).pow(2000u32);
        let expected = 2000.0 * 3f64.ln();
        assert!((ln_abs_int(&big) - expected).abs() < 1e-9 * expected);
        assert_eq!(ln_abs_int(&BigInt::zero()), f64::NEG_INFINITY);
        assert!((ln_abs_rational(&q(-9, 3)) - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn pivot_columns_are_leftmost() {
        let m = IntMatrix::from_i64(2, 4, &[1, 2, 0, 1, 0, 0, 1, 1]);
        assert_eq!(pivot_columns(&m), vec![0, 2]);
    }
}
