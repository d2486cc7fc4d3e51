use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use bdtwist::exactring::Scalar;
use bdtwist::io::{tensor_from_json, tensor_to_json};
use bdtwist::liecore::standard_R;
use bdtwist::quantum::check_qybe;
use serde_json::{json, Value};

fn bdtwist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdtwist")).args(args).env_remove("BDTWIST_ORDER").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_json(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

fn triple_file(dir: &Path, name: &str, n: usize, g1: &[usize], g2: &[usize]) -> String {
    let t_map: Vec<[usize; 2]> = g1.iter().zip(g2).map(|(a, b)| [*a, *b]).collect();
    write_json(dir, name, &json!({ "n": n, "gamma1": g1, "gamma2": g2, "t_map": t_map }))
}

#[test]
fn enumerate_counts_and_bad_rank() {
    let o = bdtwist(&["enumerate", "--n", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = bdtwist(&["enumerate", "--n", "3", "--nilpotent"]);
    assert_eq!(stdout(&o).lines().count(), 3);
    for line in stdout(&o).lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["nilpotent"], json!(true));
    }
    assert_eq!(code(&bdtwist(&["enumerate", "--n", "1"])), 2);
    assert_eq!(code(&bdtwist(&["enumerate"])), 2);
}

#[test]
fn quantum_build() {
    let dir = tempfile::tempdir().unwrap();
    let cg = triple_file(dir.path(), "cg.json", 3, &[1], &[2]);
    let out = dir.path().join("R.json");
    let o = bdtwist(&["quantum", "build", "--triple", &cg, "--s", "auto", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let first = fs::read(&out).unwrap();
    let r = tensor_from_json::<Scalar>(&serde_json::from_slice(&first).unwrap()).unwrap();
    assert_eq!(r.dim(), 9);
    assert!(check_qybe(&r).is_zero());
    // same input, same bytes
    bdtwist(&["quantum", "build", "--triple", &cg, "--out", out.to_str().unwrap()]);
    assert_eq!(fs::read(&out).unwrap(), first);

    let empty = triple_file(dir.path(), "empty.json", 3, &[], &[]);
    let o = bdtwist(&["quantum", "build", "--triple", &empty]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, tensor_to_json(&standard_R(3)));
}

#[test]
fn build_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let flip = triple_file(dir.path(), "flip.json", 3, &[1, 2], &[2, 1]);
    assert_eq!(code(&bdtwist(&["quantum", "build", "--triple", &flip, "--s", "auto"])), 3);
    assert_eq!(code(&bdtwist(&["classical", "build", "--triple", &flip])), 3);
    let cg = triple_file(dir.path(), "cg.json", 3, &[1], &[2]);
    let zero_s = write_json(dir.path(), "s0.json", &json!({ "n": 3, "matrix": [["0", "0"], ["0", "0"]] }));
    assert_eq!(code(&bdtwist(&["quantum", "build", "--triple", &cg, "--s", &zero_s])), 4);
    let good_s = write_json(dir.path(), "s.json", &json!({ "n": 3, "matrix": [["0", "1/6"], ["-1/6", "0"]] }));
    assert_eq!(code(&bdtwist(&["quantum", "build", "--triple", &cg, "--s", &good_s])), 0);
    let bad = triple_file(dir.path(), "bad.json", 3, &[1], &[1, 2]);
    assert_eq!(code(&bdtwist(&["quantum", "build", "--triple", &bad])), 2);
    assert_eq!(code(&bdtwist(&["quantum", "build", "--triple", "/nonexistent.json"])), 2);
}

#[test]
fn classical_build() {
    let dir = tempfile::tempdir().unwrap();
    let cg = triple_file(dir.path(), "cg.json", 3, &[1], &[2]);
    let o = bdtwist(&["classical", "build", "--triple", &cg]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["arity"], json!(2));
    let flip = triple_file(dir.path(), "flip.json", 3, &[1, 2], &[2, 1]);
    let o = bdtwist(&["classical", "build", "--triple", &flip, "--dynamical"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["r_T"]["vars"], json!(1));
}

#[test]
fn dynamical_order_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let id = triple_file(dir.path(), "id.json", 2, &[1], &[1]);
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_bdtwist"));
        c.args(["quantum", "build", "--dynamical", "--triple", &id]).args(extra).env_remove("BDTWIST_ORDER");
        if let Some(e) = env {
            c.env("BDTWIST_ORDER", e);
        }
        let v: Value = serde_json::from_slice(&c.output().unwrap().stdout).unwrap();
        v["R_T"]["order"].as_u64().unwrap()
    };
    assert_eq!(run(None, &[]), 8);
    assert_eq!(run(Some("5"), &[]), 5);
    assert_eq!(run(Some("5"), &["--order", "3"]), 3);
}

#[test]
fn verify_suites() {
    let o = bdtwist(&["verify", "--suite", "qybe", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("0 failed"));
    assert_eq!(code(&bdtwist(&["verify", "--suite", "golden7"])), 0);
    assert_eq!(code(&bdtwist(&["quantum", "verify", "--suite", "hecke", "--n", "2"])), 0);
    assert_eq!(code(&bdtwist(&["classical", "verify", "--suite", "cdybe", "--n", "3"])), 0);
    assert_eq!(code(&bdtwist(&["verify", "--suite", "bogus"])), 2);
    assert_eq!(code(&bdtwist(&["verify", "--suite", "qybe", "--n", "9"])), 2);
}

#[test]
fn corrupted_golden_fails_with_entry() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("golden.json");
    let o = bdtwist(&["golden", "--out", path.to_str().unwrap(), "--order", "6"]);
    assert_eq!(code(&o), 0);
    let p = path.to_str().unwrap();
    assert_eq!(code(&bdtwist(&["verify", "--suite", "golden7", "--golden", p])), 0);
    let mut g: Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    g["cases"][2]["twist"]["entries"][0][2]["num"][0][1] = json!({ "0": "7" });
    fs::write(&path, g.to_string()).unwrap();
    let o = bdtwist(&["verify", "--suite", "golden7", "--golden", p]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("FAIL golden7 closed form flip sl(3)"), "{text}");
    assert!(text.contains("first=("), "{text}");
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let o1 = bdtwist(&["verify", "--suite", "gauge-flat", "--n", "3", "--jobs", "4", "--out", a.to_str().unwrap()]);
    let o2 = bdtwist(&["verify", "--suite", "gauge-flat", "--n", "3", "--jobs", "1", "--out", b.to_str().unwrap()]);
    assert_eq!(code(&o1), 0);
    assert_eq!(o1.stdout, o2.stdout);
    let (ra, rb): (Value, Value) =
        (serde_json::from_slice(&fs::read(&a).unwrap()).unwrap(), serde_json::from_slice(&fs::read(&b).unwrap()).unwrap());
    assert_eq!(ra["checks"], rb["checks"]);
    assert_eq!(ra["passed"], json!(true));
}
