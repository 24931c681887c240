use std::io::Write;
use std::process::{Command, Output, Stdio};

use qhd::parse_presentation;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn qhd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhd")).args(args).env_remove("QHD_CAP").output().unwrap()
}

fn qhd_stdin(args: &[&str], input: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qhd"));
    cmd.args(args).env_remove("QHD_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

const MONOMIAL2: &str = "\
vertices v1 v2 v3 v4
arrow a: v1 -> v2
arrow b: v2 -> v4
arrow c: v1 -> v3
arrow d: v3 -> v4
arrow e: v4 -> v1
rel ab
rel be
rel ea
rel cde
rel ecd
";

#[test]
fn example1_is_quasi_hereditary() {
    let o = qhd(&["qh", &fixture("example1.qhd")]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("verdict: quasi_hereditary\n"), "{out}");
    assert!(out.contains("ordering: (v3, v1, v2, v4, v5, v6)\n"), "{out}");
}

#[test]
fn example2_first_order_is_unknown() {
    let o = qhd(&["qh", "--order", "lenlex a>b>c>d>e", &fixture("example2.qhd")]);
    assert_eq!(code(&o), 2);
    let j = json(&qhd(&["qh", "--json", "--order", "lenlex a>b>c>d>e", &fixture("example2.qhd")]));
    assert_eq!(j["verdict"], "unknown");
    assert_eq!(j["gb"]["tips"], serde_json::json!(["ea", "be", "ab", "ecd", "cde"]));
}

#[test]
fn example2_second_order_certifies() {
    let o = qhd(&["qh", "--json", "--order", "lenlex e>d>c>b>a", &fixture("example2.qhd")]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    assert_eq!(j["verdict"], "quasi_hereditary");
    assert_eq!(j["ordering"], serde_json::json!(["v2", "v1", "v3", "v4"]));
    assert_eq!(j["gb"]["tips"], serde_json::json!(["be", "cd", "ea"]));
    assert_eq!(j["steps"].as_array().unwrap().len(), 4);
    assert_eq!(j["steps"][0]["checks"], serde_json::json!({"L2": true, "LJL": true, "proj": true}));
}

#[test]
fn default_order_list_tries_the_reverse() {
    let o = qhd(&["qh", &fixture("example2.qhd")]);
    assert_eq!(code(&o), 0);
    let o = qhd(&["qh", "--orders", "lenlex a>b>c>d>e;lenlex e>d>c>b>a", &fixture("example2.qhd")]);
    assert_eq!(code(&o), 0);
    let o = qhd(&["qh", "--orders", "lenlex a>b>c>d>e", &fixture("example2.qhd")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn monomial_obstruction_is_rejected() {
    let o = qhd_stdin(&["qh", "--monomial", "--json", "-"], MONOMIAL2, &[]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["verdict"], "not_quasi_hereditary");
    let o = qhd(&["qh", "--monomial", &fixture("example2.qhd")]);
    assert_eq!(code(&o), 3);
}

#[test]
fn json_key_order_and_determinism() {
    let args = ["qh", "--json", &fixture("example1.qhd")];
    let first = qhd(&args).stdout;
    for _ in 0..3 {
        assert_eq!(qhd(&args).stdout, first);
    }
    let text = String::from_utf8(first).unwrap();
    let keys = ["\"verdict\"", "\"ordering\"", "\"steps\"", "\"gb\"", "\"order_used\""];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{text}");
}

#[test]
fn acyclic_quiver_without_relations() {
    let input = "vertices x y z\narrow a: x -> y\narrow b: y -> z\narrow c: x -> z\n";
    let o = qhd_stdin(&["qh", "--json", "-"], input, &[]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    assert_eq!(j["verdict"], "quasi_hereditary");
    assert_eq!(j["gb"]["tips"], serde_json::json!([]));
    assert_eq!(j["gb"]["dim"], 7);
}

#[test]
fn gb_and_dim() {
    let o = qhd(&["gb", "--json", &fixture("example2.qhd")]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    assert_eq!(j["dim"], 13);
    assert_eq!(j["length_bound"], 4);
    assert_eq!(j["basis"].as_array().unwrap().len(), 5);
    let o = qhd(&["dim", &fixture("example1.qhd")]);
    assert_eq!(code(&o), 0);
    let o2 = qhd(&["dim", "--json", &fixture("example1.qhd")]);
    assert_eq!(json(&o2)["dim"].to_string() + "\n", stdout(&o));
}

#[test]
fn stdin_matches_file() {
    let text = std::fs::read_to_string(fixture("example2.qhd")).unwrap();
    let a = qhd_stdin(&["gb", "-"], &text, &[]);
    let b = qhd(&["gb", &fixture("example2.qhd")]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cap_from_environment_and_flag() {
    let text = std::fs::read_to_string(fixture("example2.qhd")).unwrap();
    let o = qhd_stdin(&["gb", "-"], &text, &[("QHD_CAP", "2")]);
    assert_eq!(code(&o), 3, "{}", stdout(&o));
    let o = qhd_stdin(&["gb", "--cap", "20", "-"], &text, &[("QHD_CAP", "2")]);
    assert_eq!(code(&o), 0);
    let o = qhd_stdin(&["gb", "-"], &text, &[("QHD_CAP", "lots")]);
    assert_eq!(code(&o), 3);
}

#[test]
fn verify_given_orderings() {
    let f = fixture("example2.qhd");
    let o = qhd(&["verify", "--order", "lenlex e>d>c>b>a", "--ordering", "v2,v1,v3,v4", &f]);
    assert_eq!(code(&o), 0);
    let o = qhd(&["verify", "--order", "lenlex e>d>c>b>a", "--ordering", "v1,v2,v3,v4", &f]);
    assert_eq!(code(&o), 1);
    let o = qhd(&["verify", "--ordering", "v1,v2", &f]);
    assert_eq!(code(&o), 3);
    let o = qhd(&["verify", "--ordering", "v1,v2,v3,w", &f]);
    assert_eq!(code(&o), 3);
}

#[test]
fn quotient_output_is_a_presentation() {
    let o = qhd(&["quotient", "--remove", "v3", &fixture("example1.qhd")]);
    assert_eq!(code(&o), 0);
    let p = parse_presentation(&stdout(&o)).unwrap();
    assert_eq!(p.quiver.vertex_count(), 5);
    assert!(p.quiver.vertex_by_name("v3").is_none());
    let again = qhd_stdin(&["qh", "-"], &stdout(&o), &[]);
    assert_eq!(code(&again), 0);
}

#[test]
fn prime_field() {
    let f = fixture("example2.qhd");
    let o = qhd(&["dim", "--field", "fp:7", &f]);
    assert_eq!(stdout(&o), "13\n");
    let o = qhd(&["qh", "--field", "fp:7", "--order", "lenlex e>d>c>b>a", &f]);
    assert_eq!(code(&o), 0);
    let half = "vertices x y\narrow a: x -> y\narrow b: y -> y\nrel ab - 1/2*ab\nrel bb\n";
    let o = qhd_stdin(&["dim", "--field", "fp:2", "-"], half, &[]);
    assert_eq!(code(&o), 3);
    let o = qhd(&["dim", "--field", "fp:9", &f]);
    assert_eq!(code(&o), 3);
}

#[test]
fn bad_input_exits_3() {
    let o = qhd_stdin(&["gb", "-"], "vertices a\narrow x: a -> b\n", &[]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(code(&qhd(&["gb", "/nonexistent/file.qhd"])), 3);
    assert_eq!(code(&qhd(&["frobnicate"])), 3);
    let o = qhd(&["qh", "--order", "lenlex a>b", &fixture("example2.qhd")]);
    assert_eq!(code(&o), 3);
}
