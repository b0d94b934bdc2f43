//! Runs the binary end to end and checks exit codes and artifacts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use numrange::analytic::{bell_projector, pauli_block_pair, xx_xy_zz_yz};
use numrange::qlinalg::{DimensionProfile, HermitianMatrix};
use numrange::ObservableSet;
use numrange_cli::io::ObservableFile;

fn numrange(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_numrange")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn save(dir: &Path, name: &str, obs: &ObservableSet) -> String {
    let p = dir.join(name);
    ObservableFile::from_set(obs).save(&p).unwrap();
    p.to_str().unwrap().to_string()
}

fn bell(dir: &Path) -> String {
    let obs = ObservableSet::new(DimensionProfile::qubits(2), vec![bell_projector()]).unwrap();
    save(dir, "bell.json", &obs)
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn ratio_reports_bracket_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let f = save(dir.path(), "pair.json", &pauli_block_pair());
    let args = ["ratio", &f, "--directions", "180", "--mc-samples", "1000", "--format", "csv"];
    let a = numrange(&args);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    assert!(text.starts_with("# numrange "), "{text}");
    assert!(text.contains("seed=0") && text.contains("# directions=180"));
    assert_eq!(a.stdout, numrange(&args).stdout);

    let json = numrange(&["ratio", &f, "--directions", "180", "--mc-samples", "1000"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let est = v["ratio"]["estimate"].as_f64().unwrap();
    assert!((est - 0.25).abs() < 0.01, "{v}");
    assert_eq!(v["k"], 2);
    assert_eq!(v["sep_certified"].as_array().unwrap().len(), v["directions"].as_u64().unwrap() as usize);
}

#[test]
fn ratio_errors_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let four = save(dir.path(), "four.json", &xx_xy_zz_yz());
    assert_eq!(code(&numrange(&["ratio", &four])), 2);
    assert_eq!(code(&numrange(&["ratio", "/nonexistent/obs.json"])), 1);
    let broken = write(dir.path(), "broken.json", "{\"dims\": [2, 2], \"observables\": [");
    assert_eq!(code(&numrange(&["ratio", &broken])), 1);
    let not_hermitian = write(
        dir.path(),
        "nh.json",
        r#"{"dims": [2], "observables": [{"re": [[0, 1], [0, 0]]}]}"#,
    );
    assert_eq!(code(&numrange(&["ratio", &not_hermitian])), 1);
    let wrong_size = write(dir.path(), "ws.json", r#"{"dims": [2, 2], "observables": [{"re": [[1, 0], [0, 1]]}]}"#);
    assert_eq!(code(&numrange(&["ratio", &wrong_size])), 1);
}

#[test]
fn confidence_certifies_bell_data_only() {
    let dir = tempfile::tempdir().unwrap();
    let obs = bell(dir.path());
    let out_dir = dir.path().to_str().unwrap();
    for (state, expected) in [("phi-plus", 0), ("mixed", 3)] {
        let sim = numrange(&["simulate", &obs, "--state", state, "--shots", "10000", "--out-dir", out_dir]);
        assert_eq!(code(&sim), 0);
        let data = dir.path().join("simulate.csv");
        let run = numrange(&["confidence", &obs, data.to_str().unwrap(), "--alpha", "0.05"]);
        assert_eq!(code(&run), expected, "{state}");
        let v: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
        assert_eq!(v["certified"], expected == 0);
        if expected == 0 {
            let c = &v["certificate"];
            assert!(c["margin"].as_f64().unwrap() > 0.0);
            assert!((c["sep_support_certified"].as_f64().unwrap() - 0.5).abs() < 0.01);
        } else {
            assert!(v["certificate"].is_null());
        }
    }
}

#[test]
fn confidence_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let obs = bell(dir.path());
    let bad = write(dir.path(), "bad.csv", "obs0\n1\nfoo\n");
    assert_eq!(code(&numrange(&["confidence", &obs, &bad])), 1);
    let outside = write(dir.path(), "outside.csv", "obs0\n1\n2\n");
    assert_eq!(code(&numrange(&["confidence", &obs, &outside])), 1);

    let qutrits = ObservableSet::new(DimensionProfile::bipartite(3), vec![HermitianMatrix::identity(9)]).unwrap();
    let q = save(dir.path(), "q.json", &qutrits);
    let data = write(dir.path(), "q.csv", "obs0\n1\n");
    assert_eq!(code(&numrange(&["confidence", &q, &data])), 2);
}

#[test]
fn tables_and_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let b = numrange(&["bounds", "--format", "json"]);
    assert_eq!(code(&b), 0);
    let v: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(v["violations"], 0);
    assert!((v["rows"][2]["bound"].as_f64().unwrap() - 1.0 / 27.0).abs() < 1e-15);

    let s = numrange(&["product-sweep", "--grid", "8", "--directions", "120", "--out-dir", out_dir, "--format", "csv"]);
    assert_eq!(code(&s), 0, "{}", String::from_utf8_lossy(&s.stderr));
    let names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert!(names.iter().any(|n| n == "product-sweep.csv"));
    let svg = names.iter().find(|n| n.starts_with("product-sweep-") && n.ends_with(".svg")).unwrap();
    assert!(std::fs::read_to_string(dir.path().join(svg)).unwrap().starts_with("<svg"));

    assert_eq!(code(&numrange(&["product-sweep", "--grid", "4"])), 2);
    assert_eq!(code(&numrange(&["goe", "--d", "5"])), 2);
    assert_eq!(code(&numrange(&["goe", "--samples", "3"])), 2);
}
