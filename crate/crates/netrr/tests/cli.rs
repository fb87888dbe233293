//! Exit-code contract and output determinism of the command-line binary.

use std::process::{Command, Output};

fn netrr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netrr")).args(args).output().unwrap()
}

#[test]
fn curve_info_valid_and_invalid() {
    let out = netrr(&["curve-info", "--family", "hermitian", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["n"], 9);
    assert_eq!(v["genus"], 1);
    assert_eq!(v["maximal"], true);

    // q = 7 is outside the supported hermitian range
    let out = netrr(&["curve-info", "--family", "hermitian", "--q", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let out = netrr(&["code", "verify", "--family", "hermitian", "--q", "2", "--k", "1", "--s", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.starts_with("quantity,theory,measured,verdict,note"));
    assert!(stdout.contains("pass"));
    assert!(!stdout.contains("deviation"));

    let out = netrr(&["code", "verify", "--family", "hermitian", "--q", "2", "--k", "1", "--s", "1"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stdout).contains("deviation"));
}

#[test]
fn field_cap_exit_code() {
    // F_97 is above the default cap of 81
    let out = Command::new(env!("CARGO_BIN_EXE_netrr"))
        .args(["curve-info", "--family", "p1", "--q", "97"])
        .env_remove("NETRR_MAX_Q")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn params_supports_parameter_only_families() {
    let out = netrr(&["code", "params", "--family", "suzuki", "--m", "1", "--k", "1", "--s", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["params"]["genus"], 14);
    assert_eq!(v["params"]["n_points"], 65);
    assert_eq!(v["params"]["parameters_only"], true);

    // parameter-only families cannot be built
    let out = netrr(&["code", "build", "--family", "suzuki", "--q", "8", "--k", "1", "--s", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn build_mindist_simulate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    let path_s = path.to_str().unwrap();

    let out = netrr(&[
        "code", "build", "--family", "p1", "--q", "3", "--k", "2", "--s", "2", "--out", path_s,
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let out = netrr(&["code", "mindist", "--family", "p1", "--q", "3", "--k", "2", "--s", "2", "--in", path_s]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["d"], 4);

    let sim = |seed: &str| {
        netrr(&[
            "simulate", "--in", path_s, "--deletions", "1", "--trials", "50", "--seed", seed,
        ])
    };
    let a = sim("7");
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = sim("7");
    assert_eq!(a.stdout, b.stdout, "summary not deterministic for a fixed seed");
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["successes"], 50);
    let c = sim("8");
    assert_eq!(c.status.code(), Some(0));
}

#[test]
fn usage_errors() {
    let out = netrr(&["code", "build", "--family", "p1", "--k", "1", "--s", "1"]);
    assert_eq!(out.status.code(), Some(2), "missing --q should be a usage error");

    let out = netrr(&["code", "params", "--family", "ree", "--q", "27", "--k", "1", "--s", "2"]);
    assert_eq!(out.status.code(), Some(2), "ree needs --m, not --q");
}
