use std::io::Write;
use std::process::{Command, Output, Stdio};

fn ptq(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ptq"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).to_string()
}

#[test]
fn reduce_prints_the_normal_form() {
    let o = ptq(&["reduce"], r"* ; \k:X. (k ; x)");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "* ; x");
}

#[test]
fn typecheck_a_judgment() {
    let o = ptq(&["typecheck"], "x:pX |- x : pX");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "OK pX");
}

#[test]
fn translate_an_abstraction_by_name() {
    let o = ptq(
        &["translate", "--strategy", "cbn", "--form", "term"],
        r"\x:X. x",
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), r"\(x:X,k:X). k ; x");
}

#[test]
fn reduce_trace_lists_rules() {
    let o = ptq(
        &["reduce", "--trace"],
        r"<y, *> ; \(x:X,k:X). (%k:X. k ; x) ! k",
    );
    let out = stdout(&o);
    let rules: Vec<&str> = out
        .lines()
        .skip(1)
        .filter_map(|l| l.split_whitespace().next())
        .collect();
    assert_eq!(rules, ["Beta", "QApp", "2"]);
    assert!(out.lines().nth(2).unwrap().ends_with("* ; y"));
}

#[test]
fn json_traces_replay() {
    let o = ptq(
        &["reduce", "--json"],
        r"<y, *> ; \(x:X,k:X). (%k:X. k ; x) ! k",
    );
    assert_eq!(o.status.code(), Some(0));
    let trace = ptq_core::machine::Trace::from_json(&stdout(&o)).unwrap();
    assert_eq!(trace.replay().unwrap().to_string(), "* ; y");
}

#[test]
fn typecheck_lambda_terms() {
    let o = ptq(
        &["typecheck", "--lang", "lam"],
        r"y:A, []:A -> B |- [] y : B",
    );
    assert_eq!(stdout(&o), "OK B");
    let o = ptq(&["typecheck", "--lang", "lam"], r"\x:A. x");
    assert_eq!(stdout(&o), "OK A -> A");
}

#[test]
fn readback_and_measure() {
    let o = ptq(&["readback"], r"<y, *> ; \(x:X,k:X). k ; x");
    assert_eq!(stdout(&o), r"(\x:X. x) y");
    let o = ptq(&["measure"], r"* ; \k:X. (k ; x)");
    assert_eq!(stdout(&o), "measure 2\ncontrol-length 1");
}

#[test]
fn eval_by_value() {
    let o = ptq(
        &["eval", "--strategy", "cbv"],
        r"(\x:X -> X. x) ((\y:X -> X. y) (\z:X. z))",
    );
    assert_eq!(stdout(&o), r"\z:X. z");
}

#[test]
fn plotkin_translation() {
    let o = ptq(
        &["translate", "--strategy", "cbn", "--form", "plotkin"],
        "x y",
    );
    assert_eq!(stdout(&o), r"\k. x (\m. m y k)");
}

#[test]
fn domain_errors_exit_one_with_their_kind() {
    let o = ptq(&["reduce"], "* ;");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("SyntaxError"));
    let o = ptq(&["typecheck"], "|> k:tA |- k : tB");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("TypeClash"));
    let o = ptq(&["reduce"], r"k ; \(x:X,k:X). k ; x");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NotTClosed"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ptq(&["reduce", "--bogus"], "").status.code(), Some(2));
    assert_eq!(
        ptq(&["translate", "--strategy", "cbx"], "x").status.code(),
        Some(2)
    );
    assert_eq!(ptq(&[], "").status.code(), Some(2));
}

#[test]
fn verify_reports_and_json() {
    let o = ptq(
        &[
            "verify",
            "--property",
            "typing,soundness",
            "--count",
            "20",
            "--max-size",
            "4",
            "--seed",
            "9",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("PASS typing 20/20"));
    assert!(out.contains("PASS soundness 20/20"));
    let o = ptq(
        &["verify", "--property", "measure", "--count", "5", "--json"],
        "",
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
    assert_eq!(v[0]["verdict"], "pass");
    let o = ptq(&["verify", "--property", "nonsense"], "");
    assert_eq!(o.status.code(), Some(1));
}
