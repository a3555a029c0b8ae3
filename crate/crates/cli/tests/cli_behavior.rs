//! End-to-end behavior of the `gateforge` binary: exit codes, report
//! schemas, byte stability, and coefficient-exact round-trips.

use gateforge_core::synthesis::hamiltonian_xor;
use std::path::Path;
use std::process::{Command, Output};

fn gateforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gateforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn synth_xor_at_zero_angles_emits_the_three_term_form() {
    let out = gateforge(&["synth", "xor", r#"{"alpha":0,"beta":0,"gamma":0}"#]);
    let doc = stdout_json(&out);
    assert_eq!(doc["schema"], "gateforge/1");
    assert_eq!(doc["n_qubits"], 3);
    let terms = doc["terms"].as_array().unwrap();
    let expected = [
        ("IYX", -std::f64::consts::PI / 4.0),
        ("IZY", std::f64::consts::SQRT_2 * std::f64::consts::PI / 4.0),
        ("ZYI", std::f64::consts::SQRT_2 * std::f64::consts::PI / 4.0),
    ];
    assert_eq!(terms.len(), expected.len());
    for (term, (string, value)) in terms.iter().zip(expected) {
        assert_eq!(term["string"], string);
        let c = term["coefficient"].as_f64().unwrap();
        assert!((c - value).abs() < 1e-15, "{string}: {c} vs {value}");
    }
}

#[test]
fn synth_rejects_missing_and_unknown_fields_with_exit_2() {
    let missing = gateforge(&["synth", "xor", r#"{"alpha":0,"beta":0}"#]);
    assert_eq!(exit_code(&missing), 2);
    let unknown = gateforge(&[
        "synth",
        "xor",
        r#"{"alpha":0,"beta":0,"gamma":0,"extra":1}"#,
    ]);
    assert_eq!(exit_code(&unknown), 2);
    let no_such_file = gateforge(&["synth", "xor", "does-not-exist.json"]);
    assert_eq!(exit_code(&no_such_file), 2);
}

#[test]
fn synth_output_reparses_to_the_exact_polynomial() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    let out = gateforge(&[
        "synth",
        "xor",
        r#"{"alpha":0.37,"beta":-1.21,"gamma":0.88}"#,
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);

    let reference = hamiltonian_xor(0.37f64, -1.21, 0.88, 1.0, 1.0).unwrap();
    let doc = read_json(&path);
    let terms = doc["terms"].as_array().unwrap();
    assert_eq!(terms.len(), reference.num_terms());
    for term in terms {
        let string: gateforge_core::pauli::PauliString =
            term["string"].as_str().unwrap().parse().unwrap();
        let parsed = term["coefficient"].as_f64().unwrap();
        assert_eq!(
            parsed.to_bits(),
            reference.coefficient(&string).to_bits(),
            "coefficient of {string} drifted in the round trip"
        );
    }
}

#[test]
fn verify_accepts_synth_output_and_rejects_qubit_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    let path_str = path.to_str().unwrap();
    gateforge(&[
        "synth",
        "xor",
        r#"{"alpha":0.3,"beta":0.4,"gamma":-0.9}"#,
        "--out",
        path_str,
    ]);
    let ok = gateforge(&["verify", path_str, "xor"]);
    assert_eq!(exit_code(&ok), 0);
    let report = stdout_json(&ok);
    assert_eq!(report["passed"], true);

    let mismatch = gateforge(&["verify", path_str, "not2"]);
    assert_eq!(exit_code(&mismatch), 2);
}

#[test]
fn verify_fails_the_zero_hamiltonian_with_exit_1() {
    let zero = r#"{"schema":"gateforge/1","n_qubits":3,"hbar":1.0,"delta_t":1.0,"terms":[]}"#;
    let out = gateforge(&["verify", zero, "xor"]);
    assert_eq!(exit_code(&out), 1);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], false);
    assert!(report["worst_leakage"].as_f64().unwrap() > 0.5);
}

#[test]
fn verify_rejects_wrong_schema_version() {
    let bad = r#"{"schema":"gateforge/0","n_qubits":1,"hbar":1.0,"delta_t":1.0,"terms":[]}"#;
    let out = gateforge(&["verify", bad, "not1"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn reports_are_byte_stable_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for path in [&a, &b] {
        let out = gateforge(&[
            "synth",
            "not2",
            r#"{"E":0.82,"N":1,"gamma":0.41}"#,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&out), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let config = r#"{"seed":9,"restarts":2,"max_evaluations":150,"target_leakage":1e-12}"#;
    let (sa, sb) = (dir.path().join("sa.json"), dir.path().join("sb.json"));
    for path in [&sa, &sb] {
        gateforge(&[
            "search",
            r#"{"family":"not2"}"#,
            "not2",
            config,
            "--out",
            path.to_str().unwrap(),
        ]);
    }
    assert_eq!(std::fs::read(&sa).unwrap(), std::fs::read(&sb).unwrap());
}

#[test]
fn manifest_sits_next_to_the_report_and_records_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    gateforge(&[
        "synth",
        "not1",
        r#"{"N":0,"gamma":0.25}"#,
        "--out",
        path.to_str().unwrap(),
    ]);
    let manifest = read_json(&dir.path().join("h.json.manifest.json"));
    assert_eq!(manifest["schema"], "gateforge/1");
    assert_eq!(manifest["config"]["params"]["gamma"], 0.25);
    assert!(manifest["version"].as_str().unwrap().contains('.'));
    let argv: Vec<&str> = manifest["command"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert!(argv.contains(&"synth") && argv.contains(&"not1"));
    assert!(manifest["wall_clock"]["started_unix_s"].as_u64().unwrap() > 0);
}

#[test]
fn degrees_flag_converts_inputs_but_never_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let (deg, rad) = (dir.path().join("deg.json"), dir.path().join("rad.json"));
    gateforge(&[
        "synth",
        "not2",
        r#"{"E":0.5,"N":0,"gamma":90}"#,
        "--degrees",
        "--out",
        deg.to_str().unwrap(),
    ]);
    gateforge(&[
        "synth",
        "not2",
        &format!(r#"{{"E":0.5,"N":0,"gamma":{}}}"#, std::f64::consts::FRAC_PI_2),
        "--out",
        rad.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read(&deg).unwrap(), std::fs::read(&rad).unwrap());
}

#[test]
fn csv_format_emits_plot_ready_tables() {
    let out = gateforge(&["synth", "not1", r#"{"N":0,"gamma":0}"#, "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "string,coefficient");
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("X,-1.5707963267948966e0"));
}

#[test]
fn search_exit_codes_separate_met_targets_from_exhausted_budgets() {
    // A handful of random evaluations cannot reach 1e−9 leakage on the
    // two-spin NOT, so the budget runs out: exit 1.
    let exhausted = gateforge(&[
        "search",
        r#"{"family":"ising","n_qubits":2}"#,
        "not2",
        r#"{"seed":3,"restarts":1,"max_evaluations":40,"optimizer":"random"}"#,
    ]);
    assert_eq!(exit_code(&exhausted), 1);

    // An explicit empty term list is a validation error: exit 2.
    let empty = gateforge(&["search", r#"{"terms":[]}"#, "not2"]);
    assert_eq!(exit_code(&empty), 2);

    // A generous target is met immediately: exit 0.
    let met = gateforge(&[
        "search",
        r#"{"family":"not2"}"#,
        "not2",
        r#"{"seed":3,"restarts":1,"max_evaluations":200,"target_leakage":0.75}"#,
    ]);
    assert_eq!(exit_code(&met), 0);
}

#[test]
fn params_read_from_stdin_when_dash_is_given() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_gateforge"))
        .args(["synth", "not1", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"N":1,"gamma":0.5}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let doc = stdout_json(&out);
    assert_eq!(doc["n_qubits"], 1);
}

#[test]
fn evolve_emits_a_unitary_for_both_pulse_shapes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    gateforge(&[
        "synth",
        "not1",
        r#"{"N":0,"gamma":0}"#,
        "--out",
        path.to_str().unwrap(),
    ]);
    for shape in ["constant", "raised-cosine"] {
        let out = gateforge(&["evolve", path.to_str().unwrap(), "--shape", shape]);
        let doc = stdout_json(&out);
        assert_eq!(doc["dim"], 2);
        assert!(doc["unitarity_residual"].as_f64().unwrap() < 1e-12);
        // A NOT pulse: the off-diagonal magnitude is 1.
        let entries = doc["entries"].as_array().unwrap();
        let re = entries[1][0].as_f64().unwrap();
        let im = entries[1][1].as_f64().unwrap();
        assert!((re.hypot(im) - 1.0).abs() < 1e-9, "shape {shape}");
    }
}

#[test]
fn decompose_round_trips_a_pauli_sum_and_rejects_non_hermitian_input() {
    let matrix = r#"{"schema":"gateforge/1","dim":2,"entries":[[0.5,0],[0,-0.25],[0,0.25],[-0.5,0]]}"#;
    let out = gateforge(&["decompose", matrix]);
    let doc = stdout_json(&out);
    let terms = doc["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["string"], "Y");
    assert_eq!(terms[0]["coefficient"].as_f64().unwrap(), 0.25);
    assert_eq!(terms[1]["string"], "Z");
    assert_eq!(terms[1]["coefficient"].as_f64().unwrap(), 0.5);

    let skew = r#"{"schema":"gateforge/1","dim":2,"entries":[[0,0],[1,0],[0,0],[0,0]]}"#;
    let rejected = gateforge(&["decompose", skew]);
    assert_eq!(exit_code(&rejected), 3);
}
