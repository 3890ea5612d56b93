use std::path::PathBuf;
use std::process::{Command, Output};

use approxdim::repmod::write_module;
use approxdim::{corpus, Representation};

fn approxdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_approxdim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("approxdim-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

const A3_ALG: &str = "\
name a3
field 32003
vertices 3
arrow a 1 2
arrow b 2 3
";

#[test]
fn fadim_from_files() {
    let alg = scratch("a3.alg", A3_ALG);
    let a = std::sync::Arc::new(approxdim::algebra::parse_algebra(A3_ALG).unwrap());
    let omega = scratch("dlambda.mod", &write_module(&Representation::dual_regular(&a)));
    let o = approxdim(&["fadim", "--algebra", alg.to_str().unwrap(), "--omega", omega.to_str().unwrap(), "--cutoff", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Infinity (certified)"));
}

#[test]
fn domdim_both_methods() {
    let alg = scratch("a3b.alg", A3_ALG);
    let o = approxdim(&["domdim", "--algebra", alg.to_str().unwrap(), "--module", "regular", "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 / 1 (agree)"));
}

#[test]
fn verify_syzygy_pair() {
    let o = approxdim(&["verify", "--pair", "nak33-syz1", "--check", "thm35", "--cutoff", "6", "--seed", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn json_is_deterministic() {
    let args = ["--json", "verify", "--pair", "a3-id", "--check", "fadim", "--cutoff", "6", "--seed", "5"];
    let a = approxdim(&args);
    let b = approxdim(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 5);
    assert!(v["version"].is_string());
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    assert!(!stdout(&a).contains("time"));
}

#[test]
fn human_output_has_timestamp() {
    let o = approxdim(&["fadim", "--algebra", "a3", "--omega", "dual"]);
    assert!(stdout(&o).lines().next().unwrap().contains("time"));
}

#[test]
fn exit_codes() {
    let bad = scratch("bad.alg", "vertices 2\narrow a 1 5\n");
    assert_eq!(approxdim(&["algebra-check", "--algebra", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(approxdim(&["verify", "--pair", "nope"]).status.code(), Some(2));
    assert_eq!(approxdim(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(approxdim(&["--cutoff", "0", "fadim", "--algebra", "a3", "--omega", "dual"]).status.code(), Some(2));
    let no = approxdim(&["check-tilting", "--algebra", "dual", "--omega", "simple:1"]);
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).contains("no"));
    assert_eq!(approxdim(&["check-tilting", "--algebra", "a3", "--omega", "dual"]).status.code(), Some(0));
}

#[test]
fn corpus_names_load() {
    let o = approxdim(&["corpus-list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in corpus::NAMES {
        assert!(text.contains(name));
        assert_eq!(approxdim(&["algebra-check", "--algebra", name]).status.code(), Some(0), "{name}");
    }
    for pair in ["a3-id", "nak33-id", "nak33-syz1", "nak33-syz2", "square-id", "nak32-id", "dual-id"] {
        assert!(text.contains(pair));
    }
}

#[test]
fn tau_round_trip_through_files() {
    let o = approxdim(&["tau", "--algebra", "a3", "--module", "simple:2"]);
    assert_eq!(o.status.code(), Some(0));
    let body: String = stdout(&o).lines().skip(1).map(|l| format!("{l}\n")).collect();
    let f = scratch("tau.mod", &body);
    let back = approxdim(&["tau", "--inverse", "--algebra", "a3", "--module", f.to_str().unwrap()]);
    let a = std::sync::Arc::new(corpus::a3());
    let s2 = write_module(&Representation::simple(&a, 1));
    let got: String = stdout(&back).lines().skip(1).map(|l| format!("{l}\n")).collect();
    assert_eq!(got, s2);
}

#[test]
fn negative_control_pair_runs() {
    let o = approxdim(&["verify", "--pair", "nak32-id", "--check", "fadim", "--cutoff", "6"]);
    assert!(matches!(o.status.code(), Some(0) | Some(1)));
    assert!(stdout(&o).contains("negative control"));
}
