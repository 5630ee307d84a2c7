//! End-to-end tests of the binary: exit-code contract, output shape, and
//! agreement with the library on a few computed values.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiflat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn check_reports_betti_and_uses_the_exit_contract() {
    let good = run(&["check", "--spec", "(0,0,0,0,12,13)"]);
    assert_eq!(code(&good), 0, "{}", stderr(&good));
    let text = stdout(&good);
    assert!(text.contains("jacobi:     ok"), "{text}");
    let expected_betti = semiflat::lie::parse_salamon("(0,0,0,0,12,13)", &Default::default())
        .unwrap()
        .betti_vector()
        .unwrap();
    assert!(text.contains(&format!("{expected_betti:?}")), "{text}");

    let bad = run(&["check", "--spec", "(0,12,23,0,0,0)"]);
    assert_eq!(code(&bad), 1, "non-Jacobi spec is a verification failure");

    let malformed = run(&["check", "--spec", "(0,12"]);
    assert_eq!(code(&malformed), 2, "parse errors are usage errors");

    let missing_flag = run(&["check"]);
    assert_eq!(code(&missing_flag), 2);
}

#[test]
fn su3_resolves_catalog_names_and_specs() {
    let row3 = run(&["su3", "--affine", "table1:3"]);
    assert_eq!(code(&row3), 0, "{}", stderr(&row3));
    let text = stdout(&row3);
    assert!(text.contains("scale:             2"), "{text}");
    assert!(text.contains("type IIA:          true"), "{text}");

    assert_eq!(code(&run(&["su3", "--affine", "nonsense"])), 2);
    assert_eq!(code(&run(&["su3"])), 2);
    let both = run(&["su3", "--spec", "(0,0,0,0,12,13)", "--affine", "table1:1"]);
    assert_eq!(code(&both), 2, "the two target flags conflict");
    let unused = run(&["su3", "--affine", "table1:1", "--lambda", "5"]);
    assert_eq!(code(&unused), 2, "a parameter on a fixed row is a usage error");
    assert!(stderr(&unused).contains("takes no parameter"), "{}", stderr(&unused));
}

#[test]
fn mirror_build_verifies_both_sides() {
    let built = run(&["mirror", "build", "--affine", "H3-twisted", "--lambda", "2"]);
    assert_eq!(code(&built), 0, "{}", stderr(&built));
    let text = stdout(&built);
    assert!(text.contains("listing equations:     ok"), "{text}");
    assert!(text.contains("type IIA / type IIB:   true / true"), "{text}");

    let missing = run(&["mirror", "build", "--affine", "H3-twisted"]);
    assert_eq!(code(&missing), 2, "missing lambda is a usage error");
    let excluded = run(&["mirror", "build", "--affine", "H3-twisted", "--lambda", "1"]);
    assert_eq!(code(&excluded), 2, "excluded lambda is a usage error");
    let unused = run(&["mirror", "build", "--affine", "R3-twisted", "--lambda", "2"]);
    assert_eq!(code(&unused), 2, "lambda on a parameter-free family is a usage error");
}

#[test]
fn holonomy_covers_other_trace_values() {
    let four = run(&["mirror", "holonomy", "--m", "4"]);
    assert_eq!(code(&four), 0, "{}", stderr(&four));
    assert!(stdout(&four).contains("discriminant: 12"));
    assert_eq!(code(&run(&["mirror", "holonomy", "--m", "2"])), 2);
}

#[test]
fn cohomology_tables_match_the_catalog() {
    let ty = run(&["--json", "cohomology", "ty", "--affine", "R3-twisted"]);
    assert_eq!(code(&ty), 0, "{}", stderr(&ty));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&ty)).expect("valid JSON");
    let dims: Vec<u64> = parsed["report"]["tabulated"]
        .as_array()
        .unwrap()
        .iter()
        .map(|cell| cell["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 3, 2, 6, 3, 4, 7]);

    let bc = run(&["cohomology", "bc", "--affine", "R3-twisted:iib", "--all-pq"]);
    assert_eq!(code(&bc), 0, "{}", stderr(&bc));
    let text = stdout(&bc);
    assert!(text.contains("p=3"), "--all-pq prints the full diamond: {text}");

    // The flat structure on a nonabelian algebra is not integrable, which
    // is a data failure rather than a usage error.
    let not_integrable = run(&["cohomology", "bc", "--spec", "(0,0,0,0,12,13)"]);
    assert_eq!(code(&not_integrable), 1);
    assert!(stderr(&not_integrable).contains("not integrable"));
}

#[test]
fn fm_verify_passes() {
    let output = run(&["fm", "verify"]);
    assert_eq!(code(&output), 0, "{}", stderr(&output));
    assert!(stdout(&output).contains("verdict: pass"));
}

#[test]
fn table1_passes_and_echoes_notes() {
    let output = run(&["table1"]);
    assert_eq!(code(&output), 0, "{}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("verdict: pass"), "{text}");
    for index in 1..=8 {
        assert!(text.contains(&format!("row {index}:")), "note for row {index}: {text}");
    }
}

#[test]
fn table2_json_is_deterministic_and_complete() {
    let first = run(&["table2", "--json"]);
    assert_eq!(code(&first), 0, "{}", stderr(&first));
    let second = run(&["table2", "--json"]);
    assert_eq!(first.stdout, second.stdout, "identical bytes across runs");

    let parsed: serde_json::Value = serde_json::from_str(&stdout(&first)).expect("valid JSON");
    assert_eq!(parsed["schema"], "semiflat-report/1");
    assert_eq!(parsed["pass"], true);
    let rows = parsed["report"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    let sixth: Vec<u64> = rows[5]["expected"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(sixth, vec![1, 1, 1, 3, 1, 3, 3]);
    for row in rows {
        assert!(!row["note"].as_str().unwrap().is_empty());
    }
}

#[test]
fn catalog_list_is_complete() {
    let output = run(&["catalog", "list", "--json"]);
    assert_eq!(code(&output), 0, "{}", stderr(&output));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("valid JSON");
    let entries = parsed["report"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 20);
    let count = |kind: &str| entries.iter().filter(|e| e["kind"] == kind).count();
    assert_eq!(count("table1_row"), 8);
    assert_eq!(count("affine_structure"), 5);
    assert_eq!(count("mirror_row"), 7);
}
