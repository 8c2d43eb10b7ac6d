use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cone-torsion")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn close(v: &serde_json::Value, expected: f64) -> bool {
    (v.as_f64().unwrap() - expected).abs() < 1e-9
}

#[test]
fn torsion_of_triangle_agrees_across_methods() {
    let out = run(&["torsion", &fixture("s1_triangle.cx"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(close(&v["direct"]["log_torsion"], 3f64.ln()));
    assert!(close(&v["hodge"]["log_torsion"], 3f64.ln()));
    assert_eq!(v["betti"], serde_json::json!([1, 1]));
}

#[test]
fn float_flag_matches_exact() {
    let exact = json(&run(&["torsion", &fixture("torus7.cx"), "--method", "hodge", "--format", "json"]));
    let float = json(&run(&["torsion", &fixture("torus7.cx"), "--method", "hodge", "--float", "--format", "json"]));
    let (a, b) = (exact["hodge"]["log_torsion"].as_f64().unwrap(), float["hodge"]["log_torsion"].as_f64().unwrap());
    assert!((a - b).abs() < 1e-9 * a.abs().max(1.0));
}

#[test]
fn icone_reads_cone_files_and_links() {
    let from_cone = json(&run(&["icone", &fixture("cone_s1.cx"), "--pn", "0", "--format", "json"]));
    let from_link = json(&run(&["icone", &fixture("s1_triangle.cx"), "--pn", "0", "--format", "json"]));
    assert!(close(&from_cone["report"]["log_torsion"], 3f64.ln()));
    assert_eq!(from_cone["report"]["log_torsion"], from_link["report"]["log_torsion"]);
}

#[test]
fn metric_correction_adds_half_ln3_at_n3() {
    let plain = json(&run(&["icone", &fixture("s1_triangle.cx"), "--n", "3", "--pn", "0", "--format", "json"]));
    let metric = json(&run(&["icone", &fixture("s1_triangle.cx"), "--n", "3", "--metric", "--format", "json"]));
    let gap = metric["report"]["log_torsion"].as_f64().unwrap() - plain["report"]["log_torsion"].as_f64().unwrap();
    assert!((gap - 3f64.ln() / 2.0).abs() < 1e-12);
}

#[test]
fn icone_perversity_out_of_range_is_input_error() {
    let out = run(&["icone", &fixture("s2_tetra.cx"), "--pn", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_cone_passes_and_tolerance_can_fail_it() {
    let out = run(&["verify-cone", &fixture("cone_s2.cx"), "--pn", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], serde_json::json!(true));
    // a negative tolerance can never be met
    let out = run(&["verify-cone", &fixture("s1_triangle.cx"), "--pn", "0", "--tol=-1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_cone_accepts_full_perversity() {
    let out = run(&["verify-cone", &fixture("s2_tetra.cx"), "--perversity", "0,0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["verify-cone", &fixture("s2_tetra.cx"), "--perversity", "0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sequence_from_json() {
    let v = json(&run(&["sequence", &fixture("scaled_iso.json"), "--format", "json"]));
    assert!(close(&v["report"]["log_torsion"], 2f64.ln()));
}

#[test]
fn pair_sequence_of_disk() {
    let v = json(&run(&["sequence", &fixture("solid_tetra.cx"), &fixture("s2_tetra.cx"), "--truncate", "0", "--format", "json"]));
    assert_eq!(v["pair"]["betti_relative"], serde_json::json!([0, 0, 0, 1]));
}

#[test]
fn mayer_vietoris_matches_pair() {
    let out = run(&["sequence", &fixture("solid_tetra.cx"), &fixture("s2_tetra.cx"), "--mayer-vietoris", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["delta"].as_f64().unwrap() < 1e-9);
}

#[test]
fn tp_rejects_top_degree() {
    assert_eq!(run(&["tp", &fixture("s2_tetra.cx"), "--p", "2"]).status.code(), Some(2));
    let v = json(&run(&["tp", &fixture("s1_triangle.cx"), "--p", "0", "--format", "json"]));
    assert!(close(&v["value"], 3f64.ln()));
}

#[test]
fn missing_file_exits_two() {
    let out = run(&["torsion", "/nonexistent/k.cx"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read"));
}

#[test]
fn malformed_json_exits_two() {
    let out = run(&["sequence", &fixture("s1_triangle.cx")]);
    assert_eq!(out.status.code(), Some(2));
}
