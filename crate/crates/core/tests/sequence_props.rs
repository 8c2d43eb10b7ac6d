mod common;

use common::{fixture, random_split, random_trivial_split, rng};
use cone_torsion::complex::SimplicialComplex;
use cone_torsion::sequences::{
    exact_sequence_torsion, exact_sequence_torsion_seeded, mayer_vietoris_sequence, pair_sequence, split_ses_torsion,
    split_ses_trivial, BasedExactSequence,
};
use cone_torsion::Error;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn split_matches_general(seed in any::<u64>()) {
        let (d, ln_det) = random_split(&mut rng(seed));
        let split = split_ses_torsion(&d).unwrap();
        let general = exact_sequence_torsion(&d.to_sequence().unwrap()).unwrap().log_torsion;
        prop_assert!((split - ln_det).abs() < 1e-12);
        prop_assert!((split - general).abs() < 1e-12, "split {split}, general {general}");
    }

    #[test]
    fn trivial_splits_have_zero_torsion(seed in any::<u64>()) {
        let d = random_trivial_split(&mut rng(seed));
        prop_assert!(split_ses_trivial(&d));
        let t = exact_sequence_torsion(&d.to_sequence().unwrap()).unwrap().log_torsion;
        prop_assert!(t.abs() < 1e-12);
    }

    #[test]
    fn sequence_torsion_ignores_lifts(seed in 1u64..u64::MAX) {
        let (d, _) = random_split(&mut rng(seed));
        let s = d.to_sequence().unwrap();
        let a = exact_sequence_torsion(&s).unwrap().log_torsion;
        let b = exact_sequence_torsion_seeded(&s, seed).unwrap().log_torsion;
        prop_assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn inexact_sequence_reports_position() {
    // exact at V₂, but V₂ → V₃ is not onto
    let json = r#"{"dims": [1, 1, 1], "maps": [[["1"]], [["0"]]]}"#;
    match BasedExactSequence::from_json(json) {
        Err(Error::NotExact { position, .. }) => assert_eq!(position, 3),
        other => panic!("expected NotExact, got {other:?}"),
    }
}

#[test]
fn basis_scale_enters_with_alternating_sign() {
    let plain = BasedExactSequence::from_json(r#"{"dims": [1, 1], "maps": [[["3"]]]}"#).unwrap();
    let t = exact_sequence_torsion(&plain).unwrap().log_torsion;
    assert!((t - 3f64.ln()).abs() < 1e-12);
    let scaled = plain.clone().with_log_scales(vec![0.0, 3f64.ln()]).unwrap();
    assert!(exact_sequence_torsion(&scaled).unwrap().log_torsion.abs() < 1e-12);
}

#[test]
fn pair_sequence_of_disk_and_boundary() {
    let m = fixture("solid_tetra.cx");
    let y = fixture("s2_tetra.cx");
    let p = pair_sequence(&m, &y, Some(0)).unwrap();
    assert_eq!(p.betti_relative, vec![0, 0, 0, 1]);
    assert_eq!(p.witt, Some(true));
    assert!(exact_sequence_torsion(&p.sequence).is_ok());
}

#[test]
fn mayer_vietoris_agrees_with_pair() {
    let mv = mayer_vietoris_sequence(&fixture("solid_tetra.cx"), &fixture("s2_tetra.cx"), 3).unwrap();
    assert!(mv.witt);
    assert!(mv.delta < 1e-9, "delta {}", mv.delta);
    assert!(mv.split_pieces.iter().all(|p| p.trivial));
}

#[test]
fn mayer_vietoris_needs_codimension_one_boundary() {
    let m = fixture("solid_tetra.cx");
    let y = SimplicialComplex::from_simplices([[0, 1]]).unwrap();
    assert!(mayer_vietoris_sequence(&m, &y, 0).is_err());
}
