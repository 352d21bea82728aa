use std::process::{Command, Output};

fn powersym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powersym"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn express_latex_reports_verification() {
    let o = powersym(&["express", "--ring", "F2", "--n", "2", "--k", "2", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains(r"\frac{p_{1} p_{2} + p_{3}}{p_{1}}"), "{out}");
    assert!(out.contains("verification: verified"));
}

#[test]
fn express_shorthand_and_relation() {
    let o = powersym(&["express", "--ring", "F2", "--n", "3", "--k", "2", "--format", "latex", "--shorthand"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("p_{13}"), "{}", stdout(&o));
    let o = powersym(&["express", "--ring", "F3", "--n", "4", "--k", "3", "--keep-e"]);
    assert!(stdout(&o).contains("relation: e3 = "));
}

#[test]
fn express_over_q_is_a_polynomial() {
    let o = powersym(&["express", "--ring", "Q", "--n", "3", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let first = stdout(&o).lines().next().unwrap().to_string();
    assert_eq!(first, "e3 = 1/6*p1^3 - 1/2*p1*p2 + 1/3*p3");
}

#[test]
fn express_json_round_trips() {
    let o = powersym(&["express", "--ring", "Z", "--n", "3", "--k", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: powersym::newton_engine::EFormulaDoc = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc.verified, Some(true));
    let f = powersym::newton_engine::EFormula::from_json(&doc).unwrap();
    assert_eq!(f, powersym::express_e(2, 3, powersym::RingSpec::Integers).unwrap());
}

#[test]
fn verify_sweep_default_grid_is_fully_verified() {
    let o = powersym(&["verify-sweep", "--rings", "Z,F2,F3,F5", "--max-n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.trim_end().ends_with("60/60 verified (100.0%)"), "{out}");
    assert_eq!(out.lines().count(), 62);
}

#[test]
fn hankel_det_checks_identity() {
    let o = powersym(&["hankel-det", "--d", "2", "--n", "2", "--ring", "Z"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("det P_{2,2} = p1*p3 - p2^2"));
    assert!(out.contains("x1^3*x2 - 2*x1^2*x2^2 + x1*x2^3"));
    assert!(out.contains(": holds"));
    let o = powersym(&["hankel-det", "--d", "3", "--n", "2", "--ring", "Z"]);
    assert!(stdout(&o).contains("in x1..x2: 0"));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn charpoly_ambiguous_f3_traces() {
    // the default uniqueness check finds that e3 is not determined
    let o = powersym(&["charpoly", "--ring", "F3", "--n", "3", "--traces", "0,-1,0,-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("indeterminate: e3"));

    let o = powersym(&["charpoly", "--ring", "F3", "--n", "3", "--traces", "0,-1,0,-1", "--no-uniqueness-check"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("X^3 - X"));
    assert!(out.contains("e3 = 0 (removable-pole)"));
}

#[test]
fn charpoly_json_and_warnings() {
    let o = powersym(&[
        "charpoly", "--ring", "F3", "--n", "3", "--traces", "0,-1,0,-1", "--no-uniqueness-check", "--format", "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["provenance"]["e3"], "removable-pole");
    assert_eq!(doc["coeffs"].as_array().unwrap().len(), 4);

    let o = powersym(&["charpoly", "--ring", "F2", "--n", "2", "--traces", "1,0,1"]);
    assert!(stderr(&o).contains("warning: Tr(T^2)"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn charpoly_reports_trace_positions() {
    let o = powersym(&["charpoly", "--ring", "F3", "--n", "3", "--traces", "0,x,0,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("parse error at 2"), "{}", stderr(&o));
    let o = powersym(&["charpoly", "--ring", "F3", "--n", "3", "--traces", "0,1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn traces_of_feeds_charpoly() {
    let o = powersym(&["traces-of", "--ring", "F5", "--matrix", "[[1,2],[3,4]]"]);
    assert_eq!(o.status.code(), Some(0));
    let traces = stdout(&o).trim().to_string();
    let o = powersym(&["charpoly", "--ring", "F5", "--n", "2", "--traces", &traces]);
    assert_eq!(o.status.code(), Some(0));
    // X^2 - 5X - 2 over F5
    assert_eq!(stdout(&o).lines().next(), Some("X^2 - 2"));
}

#[test]
fn membership_negative_exits_two() {
    let o = powersym(&["membership", "--ring", "F2", "--n", "2", "--target", "e2", "--verbose"]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("NOT a member"));
    assert!(out.contains("degree 2: slice dimension 2, 1 generator products spanning dimension 1"));
}

#[test]
fn membership_positive_with_certificate() {
    let o = powersym(&["membership", "--ring", "F3", "--n", "3", "--target", "e2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: powersym::subalgebra_lab::MembershipDoc = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(doc.member);
    assert_eq!(doc.certificate.len(), 2);
    let o = powersym(&["membership", "--ring", "F5", "--n", "3", "--target", "p5", "--generators", "1,2,3,4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn membership_rejects_integers_and_bad_targets() {
    let o = powersym(&["membership", "--ring", "Z", "--n", "2", "--target", "e2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = powersym(&["membership", "--ring", "F3", "--n", "3", "--target", "e2 +* e1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("parse error at 4"));
}

#[test]
fn witness_prints_coefficient() {
    let o = powersym(&["witness", "--ring", "F2", "--k", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("coefficient of e2^2*e1 in p5"));
    let o = powersym(&["witness", "--ring", "F3", "--k", "6"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_file_and_usage_errors() {
    let path = std::env::temp_dir().join(format!("powersym-cli-test-{}.json", std::process::id()));
    let o = powersym(&[
        "express", "--ring", "F2", "--n", "2", "--k", "1", "--format", "json", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.contains("\"k\": 1"));

    assert_eq!(powersym(&["express", "--ring", "F4", "--n", "2", "--k", "1"]).status.code(), Some(1));
    assert_eq!(powersym(&["express", "--ring", "F2", "--n", "2", "--k", "3"]).status.code(), Some(1));
    assert_eq!(powersym(&["nonsense"]).status.code(), Some(1));
    assert_eq!(powersym(&["--help"]).status.code(), Some(0));
}
