use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_torsion-forge"));
    cmd.env_remove("TORSION_FORGE_JOBS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn family_prints_the_integral_model() {
    let out = run(&["family", "--family", "thmB", "--g", "2", "--integral"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["family"], "thmB");
    let f_int: Vec<&str> = v["f_int"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(f_int.len(), 6);
    assert!(v["integral_marked_points"].is_array());

    let out = run(&["family", "--family", "cor43", "--g", "2", "--t", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["f_int"][5], "-299054816676000");
}

#[test]
fn family_usage_errors() {
    for args in [
        &["family", "--family", "thm41", "--g", "4", "--beta", "2"][..],
        &["family", "--family", "thmA", "--g", "1"],
        &["family", "--family", "nope", "--g", "3"],
        &["family", "--family", "cor43", "--g", "3", "--t", "1"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn certify_exit_codes() {
    let ok = run(&["certify", "--family", "thmA", "--g", "3", "--point", "P0", "--modp", "2", "--relations", "--l-cert"]);
    assert_eq!(ok.status.code(), Some(0));
    let v = json(&ok);
    assert_eq!(v["claimed_order"], 40);
    assert_eq!(v["valid"], true);
    assert_eq!(v["modp"].as_array().unwrap().len(), 2);

    let wrong = run(&["certify", "--family", "thmA", "--g", "3", "--point", "P0", "--order", "80"]);
    assert_eq!(wrong.status.code(), Some(1));
    assert_eq!(json(&wrong)["valid"], false);

    let off = run(&["certify", "--family", "thmA", "--g", "2", "--point", "3,3", "--order", "5"]);
    assert_eq!(off.status.code(), Some(2));
}

#[test]
fn certify_reads_curve_files() {
    let family = run(&["family", "--family", "thmA", "--g", "2"]);
    let path = scratch("thm_a_g2.json");
    std::fs::write(&path, &family.stdout).unwrap();
    let out = run(&["certify", "--curve", path.to_str().unwrap(), "--point", "P1", "--order", "9"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let raw = scratch("c2_raw.json");
    std::fs::write(&raw, r#"{"f_int": ["4", "-28", "53", "-14", "17", "-16"]}"#).unwrap();
    let out = run(&["certify", "--curve", raw.to_str().unwrap(), "--point", "0,2", "--order", "18"]);
    assert_eq!(out.status.code(), Some(0));
    let a = json(&out);
    let again = json(&run(&["certify", "--curve", raw.to_str().unwrap(), "--point", "0,2", "--order", "18"]));
    assert_eq!(a, again);
}

#[test]
fn corpus_runs() {
    let out = run(&["corpus", "--modp", "1", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["summary"].as_array().unwrap().len(), 13);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Ex3.3-C5'-D1"));

    // the parallel run is byte-identical to a serial one
    let serial = bin().args(["corpus", "--modp", "1"]).env("TORSION_FORGE_JOBS", "1").output().unwrap();
    assert_eq!(serial.stdout, out.stdout);
}

#[test]
fn corpus_failures_and_edge_cases() {
    let shipped: Value = serde_json::from_str(torsion_forge::corpus::SHIPPED_CORPUS).unwrap();
    let mut edited = shipped.clone();
    edited[0]["claimed_order"] = Value::from(36);
    let path = scratch("edited.json");
    std::fs::write(&path, serde_json::to_vec(&edited).unwrap()).unwrap();
    assert_eq!(run(&["corpus", path.to_str().unwrap()]).status.code(), Some(1));

    let empty = scratch("empty.json");
    std::fs::write(&empty, "[]").unwrap();
    let out = run(&["corpus", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);

    let bad = scratch("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["corpus", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["corpus", "/nonexistent/corpus.json"]).status.code(), Some(2));
}

#[test]
fn relations_and_version() {
    let out = run(&["relations", "--family", "thm41", "--g", "3", "--beta", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["determinant"], 40);
    assert_eq!(v["pass"], true);

    let out = run(&["version"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains(env!("CARGO_PKG_VERSION")));
}
