//! CLI behavior beyond the acceptance contract: flag handling, emitted
//! files, and the text/JSON surfaces of each subcommand.

use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ldikit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn four_qubit() -> String {
    format!(
        "{}/../../codes/q2_n4_c1_d3.code",
        env!("CARGO_MANIFEST_DIR")
    )
}

fn dual() -> String {
    format!("{}/../../codes/q5_n4_dual.code", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn info_reports_parameters() {
    let out = run(&["info", &four_qubit()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[[4, 1, 3; 1]]_2"), "{text}");
    assert!(text.contains("(1, 2) -> 1"), "{text}");
}

#[test]
fn info_views_one_matrix_at_two_primes() {
    let at5 = stdout(&run(&["info", &dual(), "--p", "5"]));
    assert!(at5.contains("[[4, 2, 2; 2]]_5"), "{at5}");
    let at3 = stdout(&run(&["info", &dual(), "--p", "3"]));
    assert!(at3.contains("; 0]]_3"), "{at3}");
}

#[test]
fn distance_reports_three_for_the_dual_code_mod_three() {
    let out = run(&["distance", &dual(), "--p", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("distance = 3"), "{}", stdout(&out));

    let json = run(&["distance", &dual(), "--p", "3", "--json"]);
    let value: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(value["report"]["d_pure"], 3);
    assert!(value["report"]["d"].is_null());
    assert_eq!(value["report"]["degenerate"], false);
}

#[test]
fn distance_honors_max_weight_cap() {
    let out = run(&["distance", &dual(), "--p", "3", "--max-weight", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("cap_hit = true"), "{text}");
    assert!(text.contains("distance = -"), "{text}");
}

#[test]
fn bounds_without_distance_reports_b_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bare.code");
    fs::write(&path, "q 2\nn 2\nk 1\n1 0 0 0\n").unwrap();
    let text = stdout(&run(&["bounds", path.to_str().unwrap()]));
    assert!(text.contains("B = 3"), "{text}");
    assert!(text.contains("give --distance"), "{text}");
}

#[test]
fn bounds_notes_vacuous_threshold_at_distance_one() {
    let text = stdout(&run(&["bounds", &four_qubit(), "--distance", "1"]));
    assert!(text.contains("p* = 1"), "{text}");
    assert!(text.contains("vacuous"), "{text}");
}

#[test]
fn rates_flip_to_zero_after_the_lift() {
    let dir = tempfile::tempdir().unwrap();
    let lifted = dir.path().join("lifted.code");
    assert!(run(&[
        "transform",
        &four_qubit(),
        "--to-p",
        "5",
        "-o",
        lifted.to_str().unwrap(),
    ])
    .status
    .success());

    let before = stdout(&run(&["rates", &four_qubit()]));
    assert!(
        before.contains("entanglement-assisted rate: 1/4"),
        "{before}"
    );

    let after = stdout(&run(&["rates", lifted.to_str().unwrap(), "--p", "5"]));
    assert!(after.contains("entanglement-assisted rate: 0"), "{after}");
    assert!(after.contains("trade-off rate: (0, 0)"), "{after}");
}

#[test]
fn canonical_out_file_is_already_canonical() {
    let dir = tempfile::tempdir().unwrap();
    let canon = dir.path().join("canon.code");
    assert!(
        run(&["canonical", &four_qubit(), "-o", canon.to_str().unwrap()])
            .status
            .success()
    );
    // Canonicalizing the emitted file again is a no-op with an empty log.
    let text = stdout(&run(&["canonical", canon.to_str().unwrap()]));
    assert!(text.contains("log (0 steps)"), "{text}");
}

#[test]
fn scan_json_carries_per_prime_entries() {
    let out = run(&["scan", &four_qubit(), "--primes", "2,3,5", "--json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = value["scan"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    assert!(entries[0]["error"].as_str().unwrap().contains("q = 2"));
    for entry in &entries[1..] {
        assert!(entry["error"].is_null());
        assert_eq!(entry["verification"]["mod_p_commuting"], true);
        assert_eq!(entry["label"], "effectively_ldi");
    }
}

#[test]
fn transform_json_exposes_the_decomposition() {
    let out = run(&["transform", &four_qubit(), "--to-p", "5", "--json"]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["decomposition"]["nu"], 2);
    assert_eq!(value["decomposition"]["nu_inv"], 3);
    let pairs = value["decomposition"]["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 6);
    assert_eq!(value["verification"]["mod_q_preserved"], true);
}

#[test]
fn minimize_flag_shrinks_entries() {
    let exact = run(&["transform", &four_qubit(), "--to-p", "11", "--json"]);
    let min = run(&[
        "transform",
        &four_qubit(),
        "--to-p",
        "11",
        "--minimize",
        "--json",
    ]);
    let max_of = |out: &Output| {
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v["verification"]["max_entry_observed"].as_i64().unwrap()
    };
    assert!(max_of(&min) <= max_of(&exact));
}

#[test]
fn missing_file_is_a_parse_failure() {
    assert_eq!(run(&["info", "/nonexistent.code"]).status.code(), Some(2));
}

#[test]
fn pauli_rows_parse_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pauli.code");
    fs::write(&path, "q 2\nn 4\nk 2\nZ X Z I\nX I X Z\n").unwrap();
    let out = run(&["info", path.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
