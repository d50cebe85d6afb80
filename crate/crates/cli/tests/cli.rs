use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_forestalg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(input) = stdin {
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const TRIANGLE: &str = "3 3\n0 1\n1 2\n0 2\n";

#[test]
fn tutte_examples() {
    let out = run(&["tutte", "-"], Some(TRIANGLE));
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x^2 + x + y");
    assert_eq!(stdout(&run(&["tutte", "-"], Some("0 0\n"))).trim(), "1");
    assert_eq!(stdout(&run(&["tutte", "-"], Some("1 1\n0 0\n"))).trim(), "y");
}

#[test]
fn tutte_via_activity_agrees() {
    let out = run(&["tutte", "--builtin", "k4", "--via-activity", "--format", "json"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["equal"], true);
    assert_eq!(v["tutte"]["poly"], v["via_activity"]["poly"]);
}

#[test]
fn jpoly_with_clone_check() {
    let out = run(&["jpoly", "--builtin", "triangle", "--t", "2", "--check", "--format", "json"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["clone_check"], true);
}

#[test]
fn hilbert_all_methods_on_triangle() {
    let out = run(&["hilbert", "-", "--t", "1", "--method", "all", "--format", "json"], Some(TRIANGLE));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    let methods = v["methods"].as_array().unwrap();
    assert_eq!(methods.len(), 4);
    for m in methods {
        assert_eq!(m["hilbert"]["dims"], serde_json::json!([1, 2, 3, 1]));
    }
}

#[test]
fn hilbert_single_methods() {
    for method in ["forests", "tutte", "subalgebra", "quotient"] {
        let out = run(&["hilbert", "--builtin", "edge", "--t", "2", "--method", method], None);
        assert_eq!(stdout(&out).trim(), "[1, 1, 1]", "{method}");
        let out = run(&["hilbert", "-", "--t", "3", "--method", method], Some("4 0\n"));
        assert_eq!(stdout(&out).trim(), "[1]", "{method}");
    }
}

#[test]
fn recover_examples() {
    let tri = run(&["hilbert", "--builtin", "triangle", "--t", "3", "--method", "forests", "--format", "json"], None);
    let out = run(&["recover", "-", "--n", "3"], Some(&stdout(&tri)));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().next().unwrap(), "x^2 + x + y");

    let out = run(&["recover", "-", "--t", "2", "--n", "2", "--format", "json"], Some("[1, 1, 1]"));
    let v = json(&out);
    assert_eq!(v["tutte"]["poly"], serde_json::json!([[1, 0, "1"]]));
    assert_eq!(v["counts"], serde_json::json!([[0, 0, 1], [1, 0, 1]]));

    let out = run(&["recover", "-", "--n", "1"], Some(r#"{"t": 5, "dims": [1]}"#));
    assert_eq!(stdout(&out).lines().next().unwrap(), "1");
}

#[test]
fn corrupted_dims_give_structured_error() {
    let out = run(&["recover", "-", "--t", "3", "--n", "3", "--format", "json"], Some("[1,2,3,4,5,6,7,5,2,1]"));
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "negative-residual");
    assert_eq!(err["exit_code"], 1);
}

#[test]
fn exit_codes() {
    let out = run(&["tutte", "-"], Some("3 2\n0 1\n1 x\n"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    assert_eq!(run(&["hilbert", "--builtin", "k4", "--t", "3", "--max-basis", "10"], None).status.code(), Some(3));
    assert_eq!(run(&["forests", "--builtin", "k4", "--max-forests", "5"], None).status.code(), Some(3));
    assert_eq!(run(&["tutte", "--builtin", "k4", "--budget", "1"], None).status.code(), Some(3));
    assert_eq!(run(&["hilbert", "--builtin", "edge", "--t", "0"], None).status.code(), Some(2));
    assert_eq!(run(&["hilbert", "--builtin", "nope"], None).status.code(), Some(2));
    assert_eq!(run(&["recover", "-", "--n", "2"], Some("[1, 1, 1]")).status.code(), Some(2));
}

#[test]
fn forests_table() {
    let v = json(&run(&["forests", "--builtin", "triangle", "--list", "--format", "json"], None));
    assert_eq!(v["table"]["counts"], serde_json::json!([[0, 0, 1], [1, 0, 3], [2, 0, 2], [2, 1, 1]]));
    assert_eq!(v["forests"].as_array().unwrap().len(), 7);
}

#[test]
fn verify_corpus_with_extra_graph() {
    let dir = std::env::temp_dir().join(format!("forestalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let k4 = dir.join("k4.txt");
    std::fs::write(&k4, "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let out = run(&["verify", k4.to_str().unwrap(), "--t", "2", "--format", "json"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert!(v["entries"].as_array().unwrap().iter().any(|e| e["graph"] == k4.to_str().unwrap()));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--t", "1", "--t", "2", "--seed", "7", "--format", "json"];
    let a = run(&args, None);
    let b = run(&args, None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("timings_ms"));
}

#[test]
fn trace_reports_ranks() {
    let v =
        json(&run(&["hilbert", "--builtin", "triangle", "--method", "quotient", "--trace", "--format", "json"], None));
    let trace = v["trace"].as_array().unwrap();
    assert_eq!(trace[0]["rank"], 0);
    assert_eq!(trace.last().unwrap()["columns"], trace.last().unwrap()["rank"]);
    let out = run(&["hilbert", "--builtin", "triangle", "--method", "tutte", "--trace"], None);
    assert_eq!(out.status.code(), Some(2));
}
