use qiso_cli::run;
use qiso_core::invariants::InvariantElement;
use qiso_core::TorusElement;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qiso").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn call_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, _) = call(&full);
    (code, serde_json::from_str(&out).expect("one JSON object"))
}

#[test]
fn sigma_json_round_trips() {
    for (n, m) in [("2", "1"), ("2", "3"), ("4", "2")] {
        let (code, v) = call_json(&["sigma", "--rank", n, "--m", m]);
        assert_eq!(code, 0);
        let parsed: InvariantElement = serde_json::from_value(v.clone()).unwrap();
        let expected = InvariantElement::sigma(n.parse().unwrap(), m.parse().unwrap()).unwrap();
        assert_eq!(parsed, expected);
        let body = TorusElement::from_json(n.parse().unwrap(), &v["body"]).unwrap();
        assert_eq!(&body, expected.body());
    }
}

#[test]
fn sigma_one_rank_two_has_seven_terms() {
    let (_, v) = call_json(&["sigma", "--rank", "2", "--m", "1"]);
    assert_eq!(v["body"].as_array().unwrap().len(), 7);
}

#[test]
fn lattice_rank_three() {
    let (code, v) = call_json(&["lattice", "--rank", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["equal"], true);
    assert_eq!(v["index"], 4);
    assert_eq!(
        v["closed_form"],
        serde_json::json!([[2, 0, 0], [0, 2, 0], [1, 0, 1]])
    );
}

#[test]
fn distinguish_exit_codes() {
    let (code, v) = call_json(&[
        "distinguish",
        "--rank",
        "2",
        "--q",
        "2",
        "--p",
        "3",
        "--max-coord",
        "0",
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["result"], "witness");
    assert_eq!(v["witness"]["lhs"], "441/16");
    assert_eq!(v["witness"]["rhs"], "8281/81");

    let (code, v) = call_json(&[
        "charspec",
        "--rank",
        "2",
        "--q",
        "2",
        "--p",
        "-2",
        "--indices",
        "1,3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], "indistinguishable");

    let (code, _, err) = call(&["distinguish", "--rank", "3", "--q", "2", "--p", "3"]);
    assert_eq!(code, 1);
    assert!(err.contains("even"));
}

#[test]
fn validation_errors_exit_one() {
    assert_eq!(
        call(&["distinguish", "--rank", "2", "--q", "1/0", "--p", "3"]).0,
        1
    );
    assert_eq!(
        call(&["distinguish", "--rank", "2", "--q", "1", "--p", "3"]).0,
        1
    );
    assert_eq!(call(&["force", "--q", "abc"]).0, 1);
    assert_eq!(call(&["sigma", "--rank", "2", "--m", "9"]).0, 1);
    assert_eq!(call(&["lattice", "--rank", "0"]).0, 1);
    assert_eq!(call(&["lattice", "--rank", "2", "--bogus"]).0, 1);
    assert_eq!(call(&["no-such-command"]).0, 1);
    assert_eq!(call(&["nc-check", "--expr", "E^-1"]).0, 1);
    let (code, v) = call_json(&["force", "--q", "0"]);
    assert_eq!(code, 1);
    assert!(v["error"].is_string());
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("distinguish"));
}

#[test]
fn seeded_output_is_deterministic() {
    for args in [
        &["--json", "independence", "--rank", "4", "--seed", "17"][..],
        &["independence", "--rank", "2", "--seed", "3"][..],
        &["--json", "nc-check", "--seed", "5"][..],
    ] {
        let a = call(args);
        let b = call(args);
        assert_eq!(a, b);
        assert_eq!(a.0, 0);
    }
}

#[test]
fn force_lists_four_solutions() {
    let (code, v) = call_json(&["force", "--q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["solutions"],
        serde_json::json!(["-2/1", "-1/2", "1/2", "2/1"])
    );
    assert_eq!(v["factors"].as_array().unwrap().len(), 4);
}

#[test]
fn nc_and_rep_checks() {
    let (code, v) = call_json(&["nc-check"]);
    assert_eq!((code, &v["all"]), (0, &Value::Bool(true)));
    let (code, v) = call_json(&["nc-check", "--expr", "F*E + (q*K + q^-1*K^-1)/(q - q^-1)^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["is_central"], true);
    assert_eq!(v["is_unit"], false);
    let (_, v) = call_json(&["nc-check", "--expr", "2*K^3"]);
    assert_eq!(v["is_unit"], true);
    let (code, v) = call_json(&["rep-check", "--rank", "3"]);
    assert_eq!((code, &v["all"]), (0, &Value::Bool(true)));
}

#[test]
fn symmetry_and_char_reports() {
    let (code, v) = call_json(&["symmetry", "--rank", "2"]);
    assert_eq!(code, 0);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows
        .iter()
        .all(|r| r["w_invariant"] == true && r["diagram_reciprocal"] == true));
    let (code, v) = call_json(&[
        "char",
        "--rank",
        "2",
        "--max-coord",
        "0",
        "--q",
        "2",
        "--indices",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"][0]["characters"][0]["specialized"], "441/16");
}
