use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn sdr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdr")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn run_json(cmd: &str, file: &str, extra: &[&str]) -> (i32, Value) {
    let path = fixture(file);
    let mut args = vec![cmd, path.to_str().unwrap(), "--format", "json"];
    args.extend_from_slice(extra);
    let out = sdr(&args);
    (out.status.code().unwrap(), json_of(&out))
}

#[test]
fn cohomology_dimensions_of_fixtures() {
    let cases = [
        ("delta2.json", vec![1, 0, 0, 0]),
        ("boundary_delta3.json", vec![1, 0, 1, 0]),
        ("sphere2.json", vec![1, 0, 1, 0]),
        ("sphere3.json", vec![1, 0, 0, 1]),
        ("torus.json", vec![1, 2, 1, 0]),
    ];
    for (file, dims) in cases {
        let (code, v) = run_json("cohomology", file, &["--window", "0..3"]);
        assert_eq!(code, 0, "{file}");
        assert_eq!(v["report"]["dimensions"], serde_json::json!(dims), "{file}");
    }
}

#[test]
fn torus_ring_has_nonzero_product_of_one_classes() {
    let (_, v) = run_json("cohomology", "torus.json", &["--window", "0..2"]);
    let ring = v["report"]["ring"].as_array().unwrap();
    let nonzero = ring
        .iter()
        .filter(|s| s["left"][0] == 1 && s["right"][0] == 1 && !s["coefficients"].as_array().unwrap().is_empty())
        .count();
    assert_eq!(nonzero, 2);
}

#[test]
fn derham_check_passes_on_fixtures() {
    for file in ["delta2.json", "boundary_delta3.json", "sphere2.json", "sphere3.json", "torus.json"] {
        let (code, v) = run_json("derham-check", file, &["--window", "0..3"]);
        assert_eq!(code, 0, "{file}");
        assert_eq!(v["verdict"], "PASS", "{file}");
    }
}

#[test]
fn corrupted_presentation_fails_validation() {
    let (code, v) = run_json("derham-check", "corrupted_torus.json", &[]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "FAIL");
    assert_eq!(v["stage"], "validation");
    let err = v["error"].as_str().unwrap();
    assert!(err.contains("`U`"), "{err}");
    assert!(!err.contains('/'), "no filesystem paths in the report: {err}");
}

#[test]
fn form_fixtures_are_checked() {
    let good = fixture("torus_form1.json");
    let (code, v) = run_json("derham-check", "torus.json", &["--window", "0..2", "--form", good.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["form"]["stokes"], true);
    assert_eq!(v["form"]["integral"], serde_json::json!({"a": "1", "c": "2"}));

    let bad = fixture("torus_form1_bad.json");
    let (code, v) = run_json("derham-check", "torus.json", &["--window", "0..2", "--form", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "FAIL");
    assert_eq!(
        v["form"]["violations"],
        serde_json::json!([{"generator": "U", "face": 2}, {"generator": "L", "face": 0}])
    );
}

#[test]
fn bar_and_emss_on_sphere_algebra() {
    let (code, v) = run_json("bar", "dga_s2.json", &["--window", "0..6"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["dimensions"], serde_json::json!(vec![1; 7]));
    assert_eq!(v["report"]["degrees"][2]["representatives"][0], serde_json::json!({"k[x|x]k": "1"}));

    let (code, v) = run_json("emss", "dga_s2.json", &["--window", "0..6"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "PASS");
}

#[test]
fn emss_warning_exits_three() {
    let (code, v) = run_json("emss", "dga_exterior3.json", &["--window", "0..1"]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "WARNING");
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(sdr(&[]).status.code(), Some(2));
    let path = fixture("dga_s2.json");
    assert_eq!(sdr(&["bar", path.to_str().unwrap(), "--window", "3..1"]).status.code(), Some(2));
    let out = sdr(&["bar", fixture("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    // a simplicial set is not a DGA
    assert_eq!(sdr(&["emss", fixture("torus.json").to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = std::env::temp_dir().join(format!("sdr-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("report.json");
    let path = fixture("torus.json");
    let out = sdr(&["cohomology", path.to_str().unwrap(), "--format", "json", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let stdout = sdr(&["cohomology", path.to_str().unwrap(), "--format", "json"]).stdout;
    assert_eq!(std::fs::read(&target).unwrap(), stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
