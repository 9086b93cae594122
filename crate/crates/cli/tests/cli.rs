//! End-to-end tests of the command line surface: exit codes, output shape,
//! and byte-stable reports under a fixed seed.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");
    format!("{dir}/{name}")
}

fn shcp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shcp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("shcp-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn validate_ok_and_broken() {
    let out = shcp(&["validate", "--pair", &fixture("gl11.json")]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("super Jacobi identity"));

    let broken = std::fs::read_to_string(fixture("gl11.json"))
        .unwrap()
        .replace("\"[Yp,Ym]\": { \"X1\": \"1\", \"X2\": \"1\" }", "\"[Yp,Ym]\": { \"X1\": \"1\", \"X2\": \"-1\" }");
    let path = write_temp("broken.json", &broken);
    let out = shcp(&["validate", "--pair", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Jacobi"));
}

#[test]
fn normalize_reorder_example() {
    let word = write_temp(
        "word-reorder.json",
        r#"{ "pair": "gl11", "weil": "grassmann:2", "word": ["odd:Ym:xi2", "odd:Yp:xi1"] }"#,
    );
    let out = shcp(&[
        "normalize",
        "--pair",
        &fixture("gl11.json"),
        "--weil",
        "grassmann:2",
        "--word",
        word.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["even_log"]["X1"], "xi1*xi2");
    assert_eq!(v["even_log"]["X2"], "xi1*xi2");
    assert_eq!(v["coords"]["Yp"], "xi1");
    assert_eq!(v["coords"]["Ym"], "xi2");
}

#[test]
fn mul_inv_exp_log() {
    let w1 = write_temp("word-a.json", r#"{ "word": ["odd:Yp:xi1"] }"#);
    let w2 = write_temp("word-b.json", r#"{ "word": ["odd:Ym:xi2"] }"#);
    let gl11 = fixture("gl11.json");

    let out = shcp(&[
        "mul", "--pair", &gl11, "--weil", "grassmann:2",
        "--word", w1.to_str().unwrap(), "--word", w2.to_str().unwrap(),
        "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["coords"]["Yp"], "xi1");
    assert_eq!(v["coords"]["Ym"], "xi2");

    let out = shcp(&[
        "inv", "--pair", &gl11, "--weil", "grassmann:2",
        "--word", w1.to_str().unwrap(), "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["coords"]["Yp"], "-xi1");

    let out = shcp(&[
        "exp", "--pair", &gl11, "--weil", "grassmann:2",
        "--point", "Yp:xi1,Ym:xi2", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["even_log"]["X1"], "1/2*xi1*xi2");
    assert_eq!(v["coords"]["Yp"], "xi1");

    // log of a kernel word
    let out = shcp(&[
        "log", "--pair", &gl11, "--weil", "grassmann:2",
        "--word", w1.to_str().unwrap(), "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["coefficients"]["Yp"], "xi1");

    // log of a non-kernel word fails with exit 1
    let kw = write_temp("word-k.json", r#"{ "word": ["kpt:k"] }"#);
    let out = shcp(&[
        "log", "--pair", &gl11, "--weil", "grassmann:2",
        "--word", kw.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_all_passes_and_is_deterministic() {
    let gl11 = fixture("gl11.json");
    let args = [
        "check", "all", "--pair", gl11.as_str(), "--weil", "grassmann:2",
        "--trials", "25", "--seed", "42", "--format", "json",
    ];
    let out1 = shcp(&args);
    assert!(out1.status.success(), "{}", String::from_utf8_lossy(&out1.stderr));
    let out2 = shcp(&args);
    let strip = |bytes: &[u8]| {
        let mut v: serde_json::Value = serde_json::from_slice(bytes).unwrap();
        for r in v["reports"].as_array_mut().unwrap() {
            r.as_object_mut().unwrap().remove("elapsed_ms");
        }
        v
    };
    assert_eq!(strip(&out1.stdout), strip(&out2.stdout));
    let v = strip(&out1.stdout);
    assert_eq!(v["passed"], true);
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn seed_env_variable_is_honored() {
    let gl11 = fixture("gl11.json");
    let with_env = Command::new(env!("CARGO_BIN_EXE_shcp"))
        .args([
            "check", "relations", "--pair", &gl11, "--weil", "grassmann:2",
            "--trials", "5", "--format", "json",
        ])
        .env("SHCP_SEED", "777")
        .output()
        .unwrap();
    let with_flag = shcp(&[
        "check", "relations", "--pair", &gl11, "--weil", "grassmann:2",
        "--trials", "5", "--seed", "777", "--format", "json",
    ]);
    let seed_of = |bytes: &[u8]| {
        let v: serde_json::Value = serde_json::from_slice(bytes).unwrap();
        v["reports"][0]["seed"].as_u64().unwrap()
    };
    assert_eq!(seed_of(&with_env.stdout), 777);
    assert_eq!(seed_of(&with_flag.stdout), 777);
}

#[test]
fn induce_commands() {
    let gl11 = fixture("gl11.json");
    let out = shcp(&["induce", "--pair", &gl11, "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dimension"], 4);

    let module = write_temp(
        "m0.json",
        r#"{
            "even_dim": 1, "odd_dim": 0,
            "g0": { "X1": [["1"]], "X2": [["0"]] },
            "kpoints": { "k": [["2"]] }
        }"#,
    );
    let out = shcp(&[
        "induce", "--pair", &gl11, "--module", module.to_str().unwrap(), "--format", "json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dimension"], 4);
}

#[test]
fn usage_errors_exit_2() {
    let out = shcp(&["normalize", "--pair", &fixture("gl11.json")]);
    assert_eq!(out.status.code(), Some(2));
    let out = shcp(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn heisenberg_check_all() {
    let out = shcp(&[
        "check", "all", "--pair", &fixture("heisenberg.json"), "--weil", "grassmann:3",
        "--trials", "20", "--seed", "7",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("overall: PASS"));
}
