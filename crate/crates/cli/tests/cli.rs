use std::io::Write;
use std::process::{Command, Output};

use neron_trace::JsonReport;

const I0_STAR: &str = r#"{"p":3,"components":[
  {"id":"c","genus":0,"multiplicity":2},
  {"id":"a","genus":0,"multiplicity":1},
  {"id":"b","genus":0,"multiplicity":1},
  {"id":"d","genus":0,"multiplicity":1},
  {"id":"e","genus":0,"multiplicity":1}],
 "edges":[["c","a"],["c","b"],["c","d"],["c","e"]]}"#;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_neron-trace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn doc(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_i0_star() {
    let f = doc(I0_STAR);
    let o = bin(&["compute", "--input", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("P_phi           Phi_2^2"), "{s}");
    assert!(s.contains("P_phi(1)        4"), "{s}");
    assert!(s.contains("trace formula   holds"), "{s}");
}

#[test]
fn compute_json_round_trips() {
    let f = doc(I0_STAR);
    let path = f.path().to_str().unwrap();
    let o = bin(&[
        "compute",
        "--input",
        path,
        "--json",
        "--qcheck",
        "--assert-tame",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r: JsonReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.trace_value, 4.into());
    assert_eq!(r.phi_a, Some(4.into()));
    assert_eq!(r.p_phi.text, "Phi_2^2");
    assert!(r.qcheck.unwrap().holds);
    assert_eq!(r.zeta_tame.unwrap().text, "Phi_1^-2 * Phi_2^2");
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["phi_A"], "4");
    assert_eq!(v["trace_value"], "4");
}

#[test]
fn json_is_byte_stable() {
    let f = doc(I0_STAR);
    let path = f.path().to_str().unwrap();
    let a = bin(&["compute", "--input", path, "--json"]);
    let b = bin(&["compute", "--input", path, "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let c = bin(&[
        "random", "--seed", "5", "--count", "20", "--check", "--json",
    ]);
    let d = bin(&[
        "random", "--seed", "5", "--count", "20", "--check", "--json",
    ]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn p_override_makes_i0_star_wild() {
    let f = doc(I0_STAR);
    let o = bin(&[
        "compute",
        "--input",
        f.path().to_str().unwrap(),
        "--p",
        "2",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r: JsonReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.trace_value, 1.into());
    assert_eq!(r.euler_char_neron, 4.into());
    assert!(!r.tame_compatible);
    assert!(!r.trace_formula_holds);
    assert!(r.inconsistency.is_none());
}

#[test]
fn assert_tame_rejected_for_wild_fiber() {
    let f = doc(I0_STAR);
    let o = bin(&[
        "compute",
        "--input",
        f.path().to_str().unwrap(),
        "--p",
        "2",
        "--assert-tame",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn corpus_verify_passes() {
    let o = bin(&["corpus", "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("23 entries, 0 failed\n"));
    let j = bin(&["corpus", "--verify", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|e| e["passed"] == true));
}

#[test]
fn corpus_list_and_show() {
    let o = bin(&["corpus", "--list"]);
    assert!(stdout(&o).lines().any(|l| l == "III*"));
    let o = bin(&["corpus", "--show", "II*", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: JsonReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.p_phi_poly.unwrap().text, "1 - 1*T + 1*T^2");
    assert_eq!(bin(&["corpus", "--show", "nope"]).status.code(), Some(1));
}

#[test]
fn random_check_passes() {
    for profile in ["purely-additive-tree", "with-cycles", "mixed-genus"] {
        let o = bin(&[
            "random",
            "--seed",
            "100",
            "--profile",
            profile,
            "--count",
            "50",
            "--check",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
}

#[test]
fn random_output_feeds_compute() {
    let o = bin(&["random", "--seed", "9", "--profile", "purely-additive-tree"]);
    let f = doc(&stdout(&o));
    let q = bin(&["qcheck", "--input", f.path().to_str().unwrap(), "--json"]);
    assert_eq!(q.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&q.stdout).unwrap();
    assert_eq!(v["holds"], true);
}

#[test]
fn invalid_inputs_exit_1() {
    let disconnected = doc(
        r#"{"p":1,"components":[{"id":"a","genus":0,"multiplicity":1},{"id":"b","genus":0,"multiplicity":1}]}"#,
    );
    let self_loop =
        doc(r#"{"p":1,"components":[{"id":"a","genus":0,"multiplicity":1}],"edges":[["a","a"]]}"#);
    let bad_p = doc(r#"{"p":4,"components":[{"id":"a","genus":1,"multiplicity":1}]}"#);
    let zero_mult = doc(r#"{"p":1,"components":[{"id":"a","genus":1,"multiplicity":0}]}"#);
    let garbage = doc("not json");
    for f in [&disconnected, &self_loop, &bad_p, &zero_mult, &garbage] {
        let o = bin(&["compute", "--input", f.path().to_str().unwrap()]);
        assert_eq!(
            o.status.code(),
            Some(1),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(o.stdout.is_empty());
    }
    assert_eq!(
        bin(&["compute", "--input", "/nonexistent/fiber.json"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(bin(&["compute"]).status.code(), Some(1));
    assert_eq!(
        bin(&["random", "--profile", "trees"]).status.code(),
        Some(1)
    );
}

#[test]
fn qcheck_rejects_non_additive() {
    let f = doc(r#"{"p":1,"components":[{"id":"a","genus":1,"multiplicity":1}]}"#);
    let o = bin(&["qcheck", "--input", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_exits_0() {
    let o = bin(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("compute"));
}
