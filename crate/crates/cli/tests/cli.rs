use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const JW2: &str = r#"{"pauli": {"n": 2, "d": 2, "terms": [
    {"pauli": "XI", "coeff": 0.3}, {"pauli": "YI", "coeff": -0.7}, {"pauli": "ZX", "coeff": 1.1},
    {"pauli": "ZY", "coeff": 0.5}, {"pauli": "ZZ", "coeff": [0.2, -0.4]}]}, "k": 3}"#;
const CYCLE: &str = r#"{"abstract": {"m": 4, "a": 2,
    "phases": [[1,2,1],[2,3,1],[3,4,1],[1,4,1]], "coeffs": [1, 1, 1, 1]}, "k": 2}"#;
const SINGLE: &str = r#"{"abstract": {"m": 1, "a": 2, "coeffs": [2.0]}}"#;
const ANTI: &str = r#"{"abstract": {"m": 2, "a": 2, "phases": [[1,2,1]], "coeffs": [1, 1]}}"#;
const COMMUTING: &str = r#"{"abstract": {"m": 5, "a": 2, "coeffs": [1, 2, 3, 4, 5]}}"#;
// needs a relabeling before the MPS applies
const QUTRIT: &str = r#"{"abstract": {"m": 3, "a": 3, "phases": [[1,2,1],[1,3,1],[2,3,2]],
    "coeffs": [[0.5, 0.25], [-0.75, 1.0], [1.5, -0.5]]}, "k": 5, "queries": "all"}"#;

struct Sandbox {
    dir: TempDir,
}

impl Sandbox {
    fn new() -> Self {
        Sandbox {
            dir: TempDir::new().unwrap(),
        }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twmps")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn amps(v: &Value) -> Vec<(String, f64, f64)> {
    v["amplitudes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| {
            (
                a["r"].as_str().unwrap().to_string(),
                a["re"].as_f64().unwrap(),
                a["im"].as_f64().unwrap(),
            )
        })
        .collect()
}

#[test]
fn check_order_cases() {
    let sb = Sandbox::new();
    let out = run(&["check-order", "--spec", sb.file("jw.json", JW2).to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["found"], true);
    assert_eq!(v["identity"], true);
    let qs = v["q"].as_array().unwrap();
    assert_eq!(qs.len(), 5);
    assert!(qs[1..].iter().all(|q| q[0] == -1.0 && q[1] == 0.0));

    let out = run(&["check-order", "--spec", sb.file("cycle.json", CYCLE).to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["found"], false);

    let out = run(&["check-order", "--spec", sb.file("one.json", SINGLE).to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["perm"], serde_json::json!([1]));
}

#[test]
fn amplitude_examples() {
    let sb = Sandbox::new();
    let one = sb.file("one.json", SINGLE);
    let out = run(&[
        "amplitudes",
        "--spec",
        one.to_str().unwrap(),
        "--k",
        "3",
        "--query",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(amps(&json(&out)), vec![("1".to_string(), 8.0, 0.0)]);

    let anti = sb.file("anti.json", ANTI);
    let out = run(&["amplitudes", "--spec", anti.to_str().unwrap(), "--k", "2", "--all"]);
    assert_eq!(amps(&json(&out)), vec![("00".to_string(), 2.0, 0.0)]);

    let comm = sb.file("comm.json", COMMUTING);
    let out = run(&["amplitudes", "--spec", comm.to_str().unwrap(), "--poly", "0,1", "--all"]);
    let expect: Vec<(String, f64, f64)> = (0..5)
        .rev()
        .map(|j| {
            let mut r = vec!['0'; 5];
            r[j] = '1';
            (r.into_iter().collect(), (j + 1) as f64, 0.0)
        })
        .collect();
    assert_eq!(amps(&json(&out)), expect);
}

#[test]
fn records_are_sorted_and_seventeen_digits() {
    let sb = Sandbox::new();
    let anti = sb.file("anti.json", ANTI);
    let out = run(&[
        "amplitudes",
        "--spec",
        anti.to_str().unwrap(),
        "--k",
        "1",
        "--query",
        "10,01,00",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "r,re,im\n\
         00,0.0000000000000000e0,0.0000000000000000e0\n\
         01,1.0000000000000000e0,0.0000000000000000e0\n\
         10,1.0000000000000000e0,0.0000000000000000e0\n"
    );
}

#[test]
fn relabeled_output_matches_oracle_in_input_order() {
    let sb = Sandbox::new();
    let spec = sb.file("q.json", QUTRIT);
    let mps = run(&["amplitudes", "--spec", spec.to_str().unwrap()]);
    let oracle = run(&["amplitudes", "--spec", spec.to_str().unwrap(), "--oracle"]);
    assert_eq!(code(&mps), 0);
    assert_eq!(code(&oracle), 0);
    let (a, b) = (json(&mps), json(&oracle));
    assert_eq!(a["method"], "mps");
    assert_eq!(b["method"], "wordwise-oracle");
    let (a, b) = (amps(&a), amps(&b));
    assert_eq!(a.len(), 6);
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.0, y.0);
        assert!((x.1 - y.1).abs() < 1e-12 && (x.2 - y.2).abs() < 1e-12, "{x:?} vs {y:?}");
    }
    let check = json(&run(&["check-order", "--spec", spec.to_str().unwrap()]));
    assert_eq!(check["identity"], false);
}

#[test]
fn dependent_pauli_family_through_mps() {
    let sb = Sandbox::new();
    let out = run(&[
        "amplitudes",
        "--spec",
        sb.file("jw.json", JW2).to_str().unwrap(),
        "--all",
    ]);
    assert_eq!(code(&out), 0);
    assert!(!amps(&json(&out)).is_empty());
}

#[test]
fn exit_codes() {
    let sb = Sandbox::new();
    let cycle = sb.file("cycle.json", CYCLE);
    assert_eq!(code(&run(&["amplitudes", "--spec", cycle.to_str().unwrap()])), 2);
    let out = run(&["amplitudes", "--spec", cycle.to_str().unwrap(), "--oracle", "--all"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        amps(&json(&out)),
        vec![
            ("0000".into(), 4.0, 0.0),
            ("0101".into(), 2.0, 0.0),
            ("1010".into(), 2.0, 0.0)
        ]
    );

    let coeffs = vec!["1"; 25].join(",");
    let big = sb.file(
        "big.json",
        &format!(r#"{{"abstract": {{"m": 25, "a": 2, "coeffs": [{coeffs}]}}, "k": 2}}"#),
    );
    assert_eq!(code(&run(&["amplitudes", "--spec", big.to_str().unwrap(), "--all"])), 3);
    assert_eq!(
        code(&run(&[
            "amplitudes",
            "--spec",
            big.to_str().unwrap(),
            "--query",
            &"0".repeat(25)
        ])),
        0
    );

    let bad = sb.file("bad.json", "{\"abstract\": ");
    assert_eq!(code(&run(&["check-order", "--spec", bad.to_str().unwrap()])), 1);
    assert_eq!(code(&run(&["check-order", "--spec", "/nonexistent/spec.json"])), 1);
    let anti = sb.file("anti.json", ANTI);
    assert_eq!(
        code(&run(&[
            "amplitudes",
            "--spec",
            anti.to_str().unwrap(),
            "--k",
            "2",
            "--query",
            "2"
        ])),
        1
    );
    assert_eq!(code(&run(&["amplitudes", "--spec", anti.to_str().unwrap()])), 1);
    assert_eq!(
        code(&run(&["amplitudes", "--spec", anti.to_str().unwrap(), "--k", "-1"])),
        1
    );
    assert_eq!(code(&run(&["no-such-command"])), 1);
}

#[test]
fn graph_reports() {
    let sb = Sandbox::new();
    let v = json(&run(&["graph", "--spec", sb.file("jw.json", JW2).to_str().unwrap()]));
    assert_eq!(v["component_sizes"], serde_json::json!([5]));
    assert_eq!(v["c_max"], 5);
    let v = json(&run(&[
        "graph",
        "--spec",
        sb.file("comm.json", COMMUTING).to_str().unwrap(),
    ]));
    assert_eq!(v["component_sizes"], serde_json::json!([1, 1, 1, 1, 1]));
    assert_eq!(v["edges"], serde_json::json!([]));
    let v = json(&run(&[
        "graph",
        "--spec",
        sb.file("cycle.json", CYCLE).to_str().unwrap(),
    ]));
    assert_eq!(v["component_sizes"], serde_json::json!([4]));
}

#[test]
fn output_is_deterministic() {
    let sb = Sandbox::new();
    let spec = sb.file("q.json", QUTRIT);
    let (a, b) = (sb.dir.path().join("a.json"), sb.dir.path().join("b.json"));
    for p in [&a, &b] {
        let out = run(&[
            "amplitudes",
            "--spec",
            spec.to_str().unwrap(),
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let s1 = run(&["selftest", "--seed", "11", "--format", "csv"]);
    let s2 = run(&["selftest", "--seed", "11", "--format", "csv"]);
    // the timing row differs between runs; everything else must not
    let strip = |o: &Output| -> Vec<String> {
        String::from_utf8_lossy(&o.stdout)
            .lines()
            .filter(|l| !l.starts_with("10,"))
            .map(String::from)
            .collect()
    };
    assert_eq!(strip(&s1), strip(&s2));
    assert_eq!(strip(&s1).len(), 10);
}

#[test]
fn bench_csv() {
    let out = run(&["bench", "--m", "5,10", "--k", "0,4", "--reps", "3"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,k,nanos");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("5,0,"));
}
