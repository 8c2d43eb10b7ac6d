//! Exact characteristic polynomials of integer matrices.
//!
//! Coefficients are returned highest degree first: `c[k]` multiplies
//! `λ^(n-k)` in `det(λI − A)`, so `c[0] = 1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;

/// Above this size the multi-modular route is used.
pub const BERKOWITZ_MAX: usize = 32;

pub fn characteristic_polynomial(a: &IntMatrix) -> Vec<BigInt> {
    if a.rows() <= BERKOWITZ_MAX {
        charpoly_berkowitz(a)
    } else {
        charpoly_multimodular(a)
    }
}

/// Division-free Berkowitz recurrence.
pub fn charpoly_berkowitz(a: &IntMatrix) -> Vec<BigInt> {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let n = a.rows();
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        // A_r = [[M, C], [R, a_rr]] with M the leading r×r block
        let row: Vec<BigInt> = (0..r).map(|j| a[(r, j)].clone()).collect();
        let mut col: Vec<BigInt> = (0..r).map(|i| a[(i, r)].clone()).collect();
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-a[(r, r)].clone());
        for _ in 0..r {
            // −R · M^k · C
            let dot: BigInt = row.iter().zip(&col).map(|(x, y)| x * y).sum();
            t.push(-dot);
            let next: Vec<BigInt> = (0..r)
                .map(|i| {
                    let mut acc = BigInt::zero();
                    for (j, cj) in col.iter().enumerate() {
                        let m = &a[(i, j)];
                        if !m.is_zero() && !cj.is_zero() {
                            acc += m * cj;
                        }
                    }
                    acc
                })
                .collect();
            col = next;
        }
        // Toeplitz product: new[i] = Σ_j t[i − j] · p[j]
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate() {
                if j <= i && i - j < t.len() && !pj.is_zero() {
                    *slot += &t[i - j] * pj;
                }
            }
        }
        p = next;
    }
    p
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn primes_below(start: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = start | 1;
    while out.len() < count {
        c -= 2;
        if is_prime(c) {
            out.push(c);
        }
    }
    out
}

/// Hessenberg reduction and recurrence over `ℤ/p`.
fn charpoly_mod_p(a: &IntMatrix, p: u64) -> Vec<u64> {
    let n = a.rows();
    let pb = BigInt::from(p);
    let mut h: Vec<Vec<u64>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let v = &a[(r, c)] % &pb;
                    let v = if v.is_negative() { v + &pb } else { v };
                    v.to_u64().expect("reduced residue")
                })
                .collect()
        })
        .collect();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = pow_mod(h[m][m - 1], p - 2, p);
        for j in m + 1..n {
            if h[j][m - 1] == 0 {
                continue;
            }
            let u = mul_mod(h[j][m - 1], inv, p);
            for k in 0..n {
                let sub = mul_mod(u, h[m][k], p);
                h[j][k] = (h[j][k] + p - sub) % p;
            }
            for row in h.iter_mut() {
                let add = mul_mod(u, row[j], p);
                row[m] = (row[m] + add) % p;
            }
        }
    }
    // polys[m] has coefficients lowest degree first, length m + 1
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut pm = vec![0u64; m + 1];
        let diag = h[m - 1][m - 1];
        for (k, &c) in prev.iter().enumerate() {
            pm[k + 1] = (pm[k + 1] + c) % p;
            pm[k] = (pm[k] + p - mul_mod(diag, c, p)) % p;
        }
        let mut t = 1u64;
        for i in 1..m {
            t = mul_mod(t, h[m - i][m - i - 1], p);
            let coeff = mul_mod(t, h[m - i - 1][m - 1], p);
            if coeff == 0 {
                continue;
            }
            for (k, &c) in polys[m - i - 1].iter().enumerate() {
                pm[k] = (pm[k] + p - mul_mod(coeff, c, p)) % p;
            }
        }
        polys.push(pm);
    }
    let mut out = polys.pop().expect("n + 1 polynomials");
    out.reverse();
    out
}

/// Bits needed to represent every coefficient in symmetric range.
fn coefficient_bits(a: &IntMatrix) -> u64 {
    let n = a.rows();
    let mut worst_row = 1.0f64;
    for r in 0..n {
        let norm2: f64 = a.row(r).iter().map(|x| x.to_f64().unwrap_or(f64::MAX).powi(2)).sum();
        worst_row = worst_row.max(norm2.sqrt());
    }
    // |coefficient of λ^(n-k)| ≤ C(n, k) · R^k ≤ 2^n · R^n
    (n as f64 * (1.0 + worst_row.log2()) + 2.0).ceil() as u64
}

/// Characteristic polynomial by Hessenberg reduction modulo enough 61-bit
/// primes to cover the Hadamard bound, then Chinese remaindering.
pub fn charpoly_multimodular(a: &IntMatrix) -> Vec<BigInt> {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let n = a.rows();
    let bits = coefficient_bits(a);
    let count = (bits / 60 + 1) as usize;
    let primes = primes_below(1u64 << 61, count);
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    for &p in &primes {
        let residues = charpoly_mod_p(a, p);
        let pb = BigInt::from(p);
        // Garner step: x ≡ acc (mod modulus), x ≡ r (mod p)
        let m_mod_p = (&modulus % &pb).to_u64().expect("residue");
        let inv = pow_mod(m_mod_p, p - 2, p);
        for (slot, &r) in acc.iter_mut().zip(&residues) {
            let cur = {
                let v = &*slot % &pb;
                let v = if v.is_negative() { v + &pb } else { v };
                v.to_u64().expect("residue")
            };
            let diff = (r + p - cur) % p;
            let k = mul_mod(diff, inv, p);
            *slot += &modulus * BigInt::from(k);
        }
        modulus *= &pb;
    }
    let half = &modulus >> 1u32;
    acc.into_iter().map(|x| if x > half { x - &modulus } else { x }).collect()
}
