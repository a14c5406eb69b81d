use std::process::Command;

fn hopfcyc(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hopfcyc")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn cyclic_summary_scopes_numbers() {
    let (code, text) = hopfcyc(&["cyclic", "--n", "1", "--degree-max", "2", "--weight-max", "7"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("n=1, jet=9, degree_max=2, weight_max=7"), "{text}");
    assert!(text.contains("degree 1: dim 2 at weights [1, 2]"), "{text}");
    assert!(text.contains("degree 2: dim 5"), "{text}");
}

#[test]
fn json_is_identical_across_thread_counts() {
    let a = hopfcyc(&["hochschild", "--weight-max", "5", "--json", "--threads", "1"]);
    let b = hopfcyc(&["hochschild", "--weight-max", "5", "--json", "--threads", "4"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["schema"], 1);
    let table = &v["sections"][0]["table"];
    assert_eq!(table["kind"], "absolute");
    assert_eq!(table["jet_cut"], 7);
    let coeff = &table["blocks"][0]["certificates"][0]["representative"][0]["coeff"];
    assert!(coeff.is_string());
}

#[test]
fn chern_labels_and_exit_code() {
    let (code, out) = hopfcyc(&["chern", "--n", "2", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let labels: Vec<&str> =
        v["sections"][0]["chern"]["classes"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["C[0;]", "C[1;1]", "C[2;2]", "C[2;1,1]"]);
}

#[test]
fn invalid_configurations_exit_2() {
    assert_eq!(hopfcyc(&["verify-hopf", "--n", "0"]).0, 2);
    assert_eq!(hopfcyc(&["verify-hopf", "--weight", "0"]).0, 2);
    assert_eq!(hopfcyc(&["cyclic", "--weight-max", "7", "--jet", "4"]).0, 2);
    assert_eq!(hopfcyc(&["verify-matched-pair", "--jet", "1"]).0, 2);
    assert_eq!(hopfcyc(&["goncarova", "--threads", "0"]).0, 2);
}

#[test]
fn output_file_matches_stdout_json() {
    let dir = std::env::temp_dir().join(format!("hopfcyc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let (code, out) = hopfcyc(&["goncarova", "--weight-max", "5", "--degree-max", "1", "--json", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim(), out.trim());
    std::fs::remove_dir_all(dir).unwrap();
}
