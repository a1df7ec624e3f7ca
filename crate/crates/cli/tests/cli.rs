use std::process::{Command, Output};

fn convkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_convkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn enumerate_counts() {
    let o = convkit(&["enumerate", "--size", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("total 64, topological 29"));
    let o = convkit(&["enumerate", "--size", "1", "--classify"]);
    assert!(stdout(&o).contains("total 1, topological 1"));
    assert!(!convkit(&["enumerate", "--size", "6"]).status.success());
}

#[test]
fn verify_and_unknown_suite() {
    let o = convkit(&["verify", "lex"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 fail"));
    let o = convkit(&["verify", "no-such-suite"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
}

#[test]
fn seeded_reports_repeat() {
    let dir = tempfile::tempdir().unwrap();
    let read = |name: &str| {
        let path = dir.path().join(name);
        let o = convkit(&["verify", "bas", "--seed", "5", "--out", path.to_str().unwrap()]);
        assert!(o.status.success());
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("duration_ms");
        v
    };
    let (a, b) = (read("a.json"), read("b.json"));
    assert_eq!(a, b);
    assert_eq!(a["seed"], 5);
    assert_eq!(a["pass"], 200);
}

#[test]
fn typewriter_single_set() {
    let o = convkit(&["typewriter", "--terms", "1", "--samples", "0", "--subseq", "pow2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("A_1 = [0, 1) measure 1"));
    assert!(!convkit(&["typewriter", "--terms", "0"]).status.success());
}

#[test]
fn roundtrip_documents() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain.convspace.json");
    std::fs::write(&path, r#"{"points": ["a", "b", "c"], "V": {"c": ["c", "b"], "a": ["a"], "b": ["b", "a"]}}"#).unwrap();
    let o = convkit(&["roundtrip", path.to_str().unwrap()]);
    assert!(o.status.success());
    let canon = stdout(&o);
    assert!(canon.find("\"a\"").unwrap() < canon.find("\"c\": [").unwrap());
    std::fs::write(&path, &canon).unwrap();
    assert_eq!(stdout(&convkit(&["roundtrip", path.to_str().unwrap()])), canon);

    let bad = dir.path().join("bad.convspace.json");
    std::fs::write(&bad, r#"{"points": ["a", "b"], "V": {"a": ["b"], "b": ["b"]}}"#).unwrap();
    let o = convkit(&["roundtrip", bad.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("V.a"));

    let other = dir.path().join("notes.txt");
    std::fs::write(&other, "{}").unwrap();
    assert!(!convkit(&["roundtrip", other.to_str().unwrap()]).status.success());
}

#[test]
fn roundtrip_suite_without_file() {
    let o = convkit(&["roundtrip", "--size", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("suite: roundtrip"));
}
