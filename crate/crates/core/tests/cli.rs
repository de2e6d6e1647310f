use std::process::{Command, Output};

fn rwa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rwa"))
        .args(args)
        .env_remove("RWA_THREADS")
        .output()
        .expect("binary runs")
}

fn stderr_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stderr).expect("stderr is one JSON object")
}

#[test]
fn sweep_is_byte_identical_across_runs_and_thread_counts() {
    let args = [
        "sweep", "--g", "0.01", "--axis", "n", "--values", "1:2000:16:log", "--t", "0.04",
    ];
    let mut first = args.to_vec();
    first.extend(["--threads", "2"]);
    let a = rwa(&first);
    let b = rwa(&first);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let mut one = args.to_vec();
    one.extend(["--threads", "1"]);
    assert_eq!(rwa(&one).stdout, a.stdout);
}

#[test]
fn thread_count_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_rwa"))
        .args(["bounds", "--g", "0.01", "--t", "0.04"])
        .env("RWA_THREADS", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_rwa"))
        .args(["bounds", "--g", "0.01", "--t", "0.04"])
        .env("RWA_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn fig2_file_has_fixed_columns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.csv");
    let out = rwa(&["fig2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 41);
    assert_eq!(lines[0], "n,exact,lower_raw,lower_clamped,upper,cert_error");
    assert!(lines[1].starts_with("1,"));
    assert!(lines[40].starts_with("10000,"));
    // 17 significant digits in scientific notation
    let cell = lines[5].split(',').nth(1).unwrap();
    let mantissa = cell.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17, "{cell}");
}

#[test]
fn json_mirrors_csv_fields() {
    let csv = rwa(&["bounds", "--g", "0.01", "--state", "fock:10", "--t", "0.04"]);
    let json = rwa(&["bounds", "--g", "0.01", "--state", "fock:10", "--t", "0.04", "--format", "json"]);
    let header = String::from_utf8(csv.stdout).unwrap().lines().next().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let keys: Vec<&str> = v[0].as_object().unwrap().keys().map(String::as_str).collect();
    let mut cols: Vec<&str> = header.split(',').collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    cols.sort_unstable();
    assert_eq!(sorted, cols);
    assert_eq!(v[0]["sandwich_ok"], true);
}

#[test]
fn parameter_errors_exit_two() {
    let out = rwa(&["bounds", "--omega", "0", "--lambda", "0.1", "--t", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "NonPositiveFrequency");

    let out = rwa(&["bounds", "--g", "0.1", "--omega", "2", "--t", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "Usage");

    let out = rwa(&["bounds", "--g", "0.1", "--t", "1", "--tol", "1e-2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "DomainError");

    let out = rwa(&["bounds", "--g", "0.1", "--t", "1", "--state", "thermal:3"]);
    assert_eq!(out.status.code(), Some(2));

    let out = rwa(&["verify", "--only", ""]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "InvalidArgument");
}

#[test]
fn verify_exit_codes() {
    let ok = rwa(&["verify", "--only", "unitarity,oracle"]);
    assert_eq!(ok.status.code(), Some(0));
    let fault = rwa(&["verify", "--only", "unitarity", "--fault-inject"]);
    assert_eq!(fault.status.code(), Some(1));
    let text = String::from_utf8(fault.stdout).unwrap();
    assert!(text.contains("unitarity,false"));
}

#[test]
fn ibp_and_epswindow_subcommands() {
    let out = rwa(&["ibp", "--g", "0.05", "--delta", "0.1", "--state", "fock:3", "--t", "1.5707963267948966"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = rwa(&["epswindow", "--g", "0.01", "--n", "1", "--grid", "64", "--refine", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().ends_with(",false,"));
    let out = rwa(&["epswindow", "--g", "0.01", "--n", "4", "--grid", "8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_convergence_exits_three() {
    let out = rwa(&["ibp", "--g", "0.1", "--state", "fock:2", "--t", "1", "--tol", "1e-300", "--max-levels", "2"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stderr_json(&out)["error"], "QuadratureNoConvergence");
}
