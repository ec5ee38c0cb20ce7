use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn shintani(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shintani")).args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn error_kind(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn lerch_neg_golden_field() {
    let out = shintani(&["lerch-neg", "--poly=-1,-1,1", "--k", "1,2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["task"], "lerch-neg");
    let vals = &v["results"]["points"][0]["values"];
    assert_eq!(vals[0]["value"]["rational"], "1/30");
    assert_eq!(vals[1]["value"]["rational"], "0");
    for key in ["library", "inputs", "conventions", "provenance", "verification", "cache_key"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn funeq_over_q() {
    let out = shintani(&["funeq", "--poly=0,1", "--k", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["verification"]["all_hold"], true);
}

#[test]
fn reducible_polynomial_is_rejected() {
    let out = shintani(&["field", "--poly=-1,0,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "Reducible");
}

#[test]
fn malformed_polynomial_is_rejected() {
    let out = shintani(&["field", "--poly=1,x"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "InvalidInput");
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.toml");
    std::fs::write(&cfg, "[field]\nmin_poly = [-1, -1, 1]\nflavour = 2\n").unwrap();
    let out = shintani(&["field", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("flavour"));
}

#[test]
fn precision_above_double_is_an_error() {
    let out = shintani(&["field", "--poly=-1,-1,1", "--prec", "100"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "Precision");
}

#[test]
fn cache_hit_and_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let run = |out: &Path| {
        let o = shintani(&["hecke", "--poly=-1,-1,1", "--modulus", "3", "--s", "3", "--cache", cache.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    };
    run(&a);
    run(&b);
    let ta = read_json(&dir.path().join("a.json.timings.json"));
    let tb = read_json(&dir.path().join("b.json.timings.json"));
    assert_eq!(ta["cache"], "miss");
    assert_eq!(tb["cache"], "hit");
    assert!(tb["total_ms"].as_f64().unwrap() * 10.0 <= ta["total_ms"].as_f64().unwrap());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let one = shintani(&["hecke", "--poly=0,1", "--modulus", "7", "--k", "1", "--s", "3", "--jobs", "1"]);
    let four = shintani(&["hecke", "--poly=0,1", "--modulus", "7", "--k", "1", "--s", "3", "--jobs", "4"]);
    assert!(one.status.success());
    let (mut a, mut b) = (json_of(&one), json_of(&four));
    assert_eq!(a["verification"]["all_hold"], true);
    // jobs is an execution detail and not part of the inputs
    a["inputs"].take();
    b["inputs"].take();
    assert_eq!(a, b);
}

#[test]
fn cohomology_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let out = shintani(&["cohomology", "--poly=-3,0,1", "--csv", csv.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["results"]["log_tables"][0]["h_plus"], 2);
    assert!(v["results"]["log_tables"][0]["plectic_fiber"].is_null());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.lines().count() > 1);
    let plectic = json_of(&shintani(&["cohomology", "--poly=-3,0,1", "--assume-plectic"]));
    assert_eq!(plectic["results"]["log_tables"][0]["plectic_fiber"], 1);
}

#[test]
fn ler_vector_is_real() {
    let out = shintani(&["ler-vector", "--poly=-2,0,1", "--modulus", "2", "--n", "2,3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["verification"]["all_hold"], true);
    for vec in v["results"]["vectors"].as_array().unwrap() {
        for entry in vec["vector"].as_array().unwrap() {
            assert!(entry["imag"].as_f64().unwrap().abs() <= 1e-10);
        }
    }
}

#[test]
fn imprimitive_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("imp.toml");
    std::fs::write(
        &cfg,
        "[field]\nmin_poly = [0, 1]\n[modulus]\ngenerators = [[3]]\n[task]\nkind = \"imprimitive\"\nk = [1, 2]\ns = [2.0]\nprime = [[5]]\n",
    )
    .unwrap();
    let out = shintani(&["imprimitive", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json_of(&out)["verification"]["all_hold"], true);
    let wrong = shintani(&["gauss", "--config", cfg.to_str().unwrap()]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn verify_all_passes() {
    let out = shintani(&["verify-all", "--jobs", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["verification"]["checks"].as_array().unwrap().len(), 11);
}
