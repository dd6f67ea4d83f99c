use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cubulator(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubulator")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cubulator-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn exit_codes() {
    let found = cubulator(&["cubulate", "--system", "B3", "--element", "w0"]);
    assert_eq!(found.status.code(), Some(0));
    assert_eq!(json(&found)["lattice"], serde_json::json!([1, 3, 5]));

    let exhausted = cubulator(&["cubulate", "--system", "A3", "--word", "2 1 3 2"]);
    assert_eq!(exhausted.status.code(), Some(1));
    assert_eq!(json(&exhausted)["status"], "Exhausted");

    assert_eq!(cubulator(&["interval", "--system", "Q9", "--element", "w0"]).status.code(), Some(2));
    assert_eq!(cubulator(&["cubulate", "--system", "A3", "--word", "1 9"]).status.code(), Some(2));
    assert_eq!(cubulator(&["cubulate", "--system", "A3", "--element", "w0", "--budget", "0"]).status.code(), Some(2));
}

#[test]
fn checkpoint_resume_reaches_same_answer() {
    let cp = scratch("b4.checkpoint.json");
    let _ = std::fs::remove_file(&cp);
    let cp_arg = cp.to_str().unwrap();
    let args = ["cubulate", "--system", "B4", "--element", "w0", "--budget", "10^3", "--checkpoint", cp_arg];
    let first = cubulator(&args);
    assert_eq!(first.status.code(), Some(3));
    assert!(cp.exists());
    let mut last = first;
    for _ in 0..1000 {
        if last.status.code() != Some(3) {
            break;
        }
        last = cubulator(&args);
    }
    assert_eq!(last.status.code(), Some(0));
    let direct = cubulator(&["cubulate", "--system", "B4", "--element", "w0"]);
    assert_eq!(json(&last)["assignment"], json(&direct)["assignment"]);
}

#[test]
fn job_file_and_out_flag() {
    let job = scratch("job.json");
    let out = scratch("out.json");
    std::fs::write(&job, r#"{"command": "construct", "system": "B3", "tag": "nff"}"#).unwrap();
    let o = cubulator(&["run", job.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["provenance"], "nff-B");
    assert_eq!(v["lattice"], serde_json::json!([1, 3, 5]));

    std::fs::write(&job, r#"{"command": "construct", "system": "B3", "tag": "nff", "colour": 2}"#).unwrap();
    assert_eq!(cubulator(&["run", job.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn growth_document() {
    let o = cubulator(&["growth", "--system", "Atilde2", "--radius", "10"]);
    let v = json(&o);
    assert_eq!(v["ball_sizes"][3], 19);
    assert_eq!(v["poincare"], v["bott"]);
    assert_eq!(v["probe"]["stabilization"]["shape"], serde_json::json!([3]));
}
