//! Seeded generators shared by the property tests and the acceptance run.
#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cone_torsion::complex::{read_complex, SimplicialComplex};
use cone_torsion::linalg::{exact, RatMatrix};
use cone_torsion::sequences::SplitSESData;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_path(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect()
}

pub const COMPLEX_FIXTURES: [&str; 11] = [
    "s1_triangle.cx",
    "s1_square.cx",
    "s2_tetra.cx",
    "s2_octahedron.cx",
    "torus7.cx",
    "rp2_6.cx",
    "solid_tetra.cx",
    "cone_s1.cx",
    "cone_s2.cx",
    "cone_torus7.cx",
    "cone_rp2_6.cx",
];

pub const CONE_FIXTURES: [&str; 4] = ["cone_s1.cx", "cone_s2.cx", "cone_torus7.cx", "cone_rp2_6.cx"];

pub fn fixture(name: &str) -> SimplicialComplex {
    read_complex(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Face-closed complex on at most 7 vertices with at most `max_simplices`
/// simplices of dimension ≤ 3.
pub fn random_complex(rng: &mut ChaCha8Rng, max_simplices: usize) -> SimplicialComplex {
    let n = rng.gen_range(3..=7usize);
    let mut tops: Vec<Vec<usize>> = vec![vec![0]];
    let mut current = SimplicialComplex::from_simplices(&tops).unwrap();
    for _ in 0..12 {
        let d = rng.gen_range(1..=3usize).min(n - 1);
        let mut verts: Vec<usize> = (0..n).collect();
        verts.shuffle(rng);
        let mut s = verts[..=d].to_vec();
        s.sort_unstable();
        tops.push(s);
        let candidate = SimplicialComplex::from_simplices(&tops).unwrap();
        if candidate.counts().iter().sum::<usize>() > max_simplices {
            tops.pop();
        } else {
            current = candidate;
        }
    }
    current
}

fn small_nonzero(rng: &mut ChaCha8Rng, unimodular: bool) -> i64 {
    let v = if unimodular { 1 } else { rng.gen_range(1..=3) };
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// `P · L · U` with small integer entries; with `unimodular` the diagonals
/// are ±1 so the determinant is ±1.
pub fn random_invertible(r: usize, rng: &mut ChaCha8Rng, unimodular: bool) -> RatMatrix {
    let mut l = RatMatrix::identity(r);
    let mut u = RatMatrix::identity(r);
    for a in 0..r {
        for b in 0..r {
            if a > b {
                l[(a, b)] = q(rng.gen_range(-2..=2));
            } else if a < b {
                u[(a, b)] = q(rng.gen_range(-2..=2));
            } else {
                l[(a, b)] = q(small_nonzero(rng, unimodular));
                u[(a, b)] = q(small_nonzero(rng, true));
            }
        }
    }
    let mut perm: Vec<usize> = (0..r).collect();
    perm.shuffle(rng);
    let lu = &l * &u;
    lu.select_rows(&perm)
}

/// Orthogonal rational matrix: signed permutation times rotations by the
/// 3-4-5 angle in random coordinate planes.
pub fn random_orthogonal(r: usize, rng: &mut ChaCha8Rng) -> RatMatrix {
    let mut m = RatMatrix::identity(r);
    for c in 0..r {
        if rng.gen_bool(0.5) {
            m[(c, c)] = q(-1);
        }
    }
    let mut perm: Vec<usize> = (0..r).collect();
    perm.shuffle(rng);
    m = m.select_columns(&perm);
    let fifth = |k: i64| BigRational::new(BigInt::from(k), BigInt::from(5));
    for _ in 0..r {
        if r < 2 {
            break;
        }
        let a = rng.gen_range(0..r);
        let b = rng.gen_range(0..r);
        if a == b {
            continue;
        }
        let mut g = RatMatrix::identity(r);
        g[(a, a)] = fifth(3);
        g[(a, b)] = fifth(-4);
        g[(b, a)] = fifth(4);
        g[(b, b)] = fifth(3);
        m = &g * &m;
    }
    m
}

/// A split short exact sequence built from an invertible `[i j]`; returns
/// the data and `ln |det [i j]|` computed independently.
pub fn random_split(rng: &mut ChaCha8Rng) -> (SplitSESData, f64) {
    let a = rng.gen_range(0..=3usize);
    let c = rng.gen_range(0..=3usize);
    let b = a + c;
    let m = random_invertible(b, rng, false);
    let det = exact::det_rational(&m);
    let inv = exact::inverse(&m).expect("invertible");
    let i = m.select_columns(&(0..a).collect::<Vec<_>>());
    let j = m.select_columns(&(a..b).collect::<Vec<_>>());
    let p = inv.select_rows(&(a..b).collect::<Vec<_>>());
    let d = SplitSESData::new(i, j, p).expect("split by construction");
    (d, exact::ln_abs_rational(&det))
}

/// Split data meeting the triviality hypothesis: `i = [Q; K]` with `Q`
/// orthogonal, `p = [−K Qᵀ | I]`, and a section shifted by an arbitrary
/// multiple of `i`.
pub fn random_trivial_split(rng: &mut ChaCha8Rng) -> SplitSESData {
    let a = rng.gen_range(1..=3usize);
    let c = rng.gen_range(1..=3usize);
    let qm = random_orthogonal(a, rng);
    let k = RatMatrix::from_fn(c, a, |_, _| q(rng.gen_range(-3..=3)));
    let i = RatMatrix::vstack(&[&qm, &k], a);
    let minus_kqt = (&k * &qm.transpose()).map(|x| -x.clone());
    let p = RatMatrix::hstack(&[&minus_kqt, &RatMatrix::identity(c)], c);
    let i2 = RatMatrix::vstack(&[&RatMatrix::zeros(a, c), &RatMatrix::identity(c)], c);
    let r = RatMatrix::from_fn(a, c, |_, _| q(rng.gen_range(-2..=2)));
    let j = &i2 + &(&i * &r);
    SplitSESData::new(i, j, p).expect("split by construction")
}
