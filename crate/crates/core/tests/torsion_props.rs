mod common;

use common::{fixture, random_complex, random_invertible, rng, COMPLEX_FIXTURES};
use cone_torsion::complex::{ChainComplex, RatChainComplex};
use cone_torsion::linalg::{exact, RatMatrix};
use cone_torsion::torsion::{
    change_of_basis_chain, change_of_basis_homology, torsion_direct, torsion_hodge, BasedHomology, HomologyBasis,
};
use proptest::prelude::*;

/// Re-express `c` in the bases `c′_i = c_i · S_i`: `∂′ = S⁻¹ ∂ S`, and the
/// homology representatives follow.
fn rebase(c: &ChainComplex, h: &BasedHomology, s: &[RatMatrix]) -> (RatChainComplex, BasedHomology) {
    let rc = c.to_rational();
    let inv: Vec<RatMatrix> = s.iter().map(|m| exact::inverse(m).unwrap()).collect();
    let boundaries = (1..s.len()).map(|k| &(&inv[k - 1] * &rc.boundary(k as i64)) * &s[k]).collect();
    let c2 = ChainComplex::new(0, rc.dims().to_vec(), boundaries).unwrap();
    let bases = c
        .degrees()
        .map(|d| {
            let b = h.get(d).unwrap();
            HomologyBasis { vectors: &inv[d as usize] * &b.vectors, log_scale: b.log_scale }
        })
        .collect();
    (c2, BasedHomology::new(0, bases))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hodge_equals_direct(seed in any::<u64>()) {
        let k = random_complex(&mut rng(seed), 40);
        let c = k.chain_complex();
        let direct = torsion_direct(&c, &BasedHomology::harmonic(&c), 0).unwrap().log_torsion;
        let hodge = torsion_hodge(&c).unwrap().log_torsion;
        prop_assert!((direct - hodge).abs() <= 1e-9, "direct {direct}, hodge {hodge}");
    }

    #[test]
    fn chain_basis_law(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_complex(&mut r, 30).chain_complex();
        let h = BasedHomology::harmonic(&c);
        let before = torsion_direct(&c, &h, 0).unwrap();
        let s: Vec<RatMatrix> = c.dims().iter().map(|&n| random_invertible(n, &mut r, false)).collect();
        let (c2, h2) = rebase(&c, &h, &s);
        let recomputed = torsion_direct(&c2, &h2, 0).unwrap().log_torsion;
        // [c / c′] = S⁻¹
        let transitions: Vec<(i64, RatMatrix)> =
            s.iter().enumerate().map(|(d, m)| (d as i64, exact::inverse(m).unwrap())).collect();
        let predicted = change_of_basis_chain(&before, &transitions).unwrap().log_torsion;
        prop_assert!((recomputed - predicted).abs() <= 1e-9, "recomputed {recomputed}, law {predicted}");
    }

    #[test]
    fn unimodular_chain_change_is_invisible(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_complex(&mut r, 30).chain_complex();
        let h = BasedHomology::harmonic(&c);
        let before = torsion_direct(&c, &h, 0).unwrap().log_torsion;
        let s: Vec<RatMatrix> = c.dims().iter().map(|&n| random_invertible(n, &mut r, true)).collect();
        let (c2, h2) = rebase(&c, &h, &s);
        let after = torsion_direct(&c2, &h2, 0).unwrap().log_torsion;
        prop_assert!((before - after).abs() <= 1e-12);
    }

    #[test]
    fn homology_basis_law(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_complex(&mut r, 30).chain_complex();
        let h = BasedHomology::harmonic(&c);
        let before = torsion_direct(&c, &h, 0).unwrap();
        let mut h2 = h.clone();
        let mut transitions = Vec::new();
        for d in c.degrees() {
            let t = random_invertible(h.rank(d), &mut r, false);
            h2 = h2.transformed(d, &t).unwrap();
            transitions.push((d, t));
        }
        let recomputed = torsion_direct(&c, &h2, 0).unwrap().log_torsion;
        let predicted = change_of_basis_homology(&before, &transitions).unwrap().log_torsion;
        prop_assert!((recomputed - predicted).abs() <= 1e-9);
    }

    #[test]
    fn lifts_do_not_matter(seed in 1u64..u64::MAX) {
        let c = random_complex(&mut rng(seed), 40).chain_complex();
        let h = BasedHomology::harmonic(&c);
        let a = torsion_direct(&c, &h, 0).unwrap().log_torsion;
        let b = torsion_direct(&c, &h, seed).unwrap().log_torsion;
        prop_assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn fixtures_direct_matches_hodge() {
    for name in COMPLEX_FIXTURES {
        let c = fixture(name).chain_complex();
        let d = torsion_direct(&c, &BasedHomology::harmonic(&c), 7).unwrap().log_torsion;
        let h = torsion_hodge(&c).unwrap().log_torsion;
        assert!((d - h).abs() < 1e-9, "{name}: {d} vs {h}");
    }
}

#[test]
fn polygon_torsion_grows_with_length() {
    // the k-gon has ln τ = ln k
    for name in ["s1_triangle.cx", "s1_square.cx"] {
        let c = fixture(name).chain_complex();
        let k = c.dim(0) as f64;
        assert!((torsion_hodge(&c).unwrap().log_torsion - k.ln()).abs() < 1e-12, "{name}");
    }
}

#[test]
fn shift_flips_sign() {
    let c = fixture("solid_tetra.cx").chain_complex();
    let h = BasedHomology::harmonic(&c);
    let t = torsion_direct(&c, &h, 0).unwrap().log_torsion;
    let shifted = c.shifted(1);
    let t1 = torsion_direct(&shifted, &BasedHomology::harmonic(&shifted), 0).unwrap().log_torsion;
    assert!((t + t1).abs() < 1e-12, "{t} vs {t1}");
}
