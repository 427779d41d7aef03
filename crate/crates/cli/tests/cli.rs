use std::path::PathBuf;
use std::process::{Command, Output};

use ringcodes_core::{Budget, LinearCode, Matrix, Ring};
use serde_json::Value;

fn ringcodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringcodes"))
        .args(args)
        .env_remove("RINGCODES_BUDGET")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

const EX1: &[&str] = &[
    "verify",
    "--code",
    "span Z/20 len 1 { (10) }",
    "--code",
    "span Z/20 len 1 { (4) }",
    "--matrix",
    "[[1,2],[0,0]]",
];

fn with<'a>(base: &[&'a str], extra: &[&'a str]) -> Vec<&'a str> {
    base.iter().chain(extra).copied().collect()
}

fn schema(name: &str) -> Value {
    let path: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "..",
        "..",
        "docs",
        "schemas",
        name,
    ]
    .iter()
    .collect();
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Checks `type`, `enum`, `required`, `properties`, `items` and file `$ref`s.
fn conforms(value: &Value, schema: &Value) -> Result<(), String> {
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        return conforms(value, &self::schema(r));
    }
    if let Some(t) = schema.get("type") {
        let types: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => vec![],
        };
        let ok = types.iter().any(|t| match *t {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.is_u64() || value.is_i64(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            _ => false,
        });
        if !ok {
            return Err(format!("{value} is not of type {t}"));
        }
    }
    if let Some(e) = schema.get("enum").and_then(Value::as_array) {
        if !e.contains(value) {
            return Err(format!("{value} not in {e:?}"));
        }
    }
    if let Some(req) = schema.get("required").and_then(Value::as_array) {
        for k in req {
            let k = k.as_str().unwrap();
            if value.get(k).is_none() {
                return Err(format!("missing key {k}"));
            }
        }
    }
    if let (Some(props), Some(obj)) = (
        schema.get("properties").and_then(Value::as_object),
        value.as_object(),
    ) {
        for (k, v) in obj {
            if let Some(s) = props.get(k) {
                conforms(v, s).map_err(|e| format!("{k}: {e}"))?;
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
        for v in arr {
            conforms(v, items)?;
        }
    }
    Ok(())
}

#[test]
fn verify_ex1_expect_self_orthogonal() {
    let o = ringcodes(&with(EX1, &["--expect", "self-orthogonal"]));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("PASS self-orthogonal"));
    assert!(out.contains("SelfOrthogonal by thm-self-orth-1"));
    assert!(out.contains("gram: diag(5,0)"));
}

#[test]
fn verify_failing_property_exits_one() {
    let o = ringcodes(&with(EX1, &["--expect", "self-dual"]));
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL self-dual"));
}

#[test]
fn singular_matrix_with_dual_theorem() {
    let o = ringcodes(&with(EX1, &["--use-dual-theorem"]));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("theorem requires non-singular A"));
}

#[test]
fn trivial_spec_passes() {
    let o = ringcodes(&[
        "verify",
        "--code",
        "span Z/4 len 1 { }",
        "--code",
        "span Z/4 len 1 { }",
        "--matrix",
        "[[1,0],[0,1]]",
        "--expect",
        "self-orthogonal",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn unknown_property_is_input_error() {
    let o = ringcodes(&with(EX1, &["--expect", "self-orthogonalish"]));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_carry_position() {
    let o = ringcodes(&[
        "verify",
        "--code",
        "span Z/20 len 1 { (10) }",
        "--code",
        "span Z/20 len 1 { (4) }",
        "--matrix",
        "[[1,2],[0,0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1, column"), "{}", stderr(&o));
}

#[test]
fn text_and_json_verdicts_agree() {
    for expect in ["self-orthogonal", "self-dual", "equivalence"] {
        let args = with(EX1, &["--expect", expect]);
        let text = ringcodes(&args);
        let js = ringcodes(&with(&args, &["--format", "json"]));
        assert_eq!(text.status.code(), js.status.code());
        let v = json(&js);
        let verdict = if text.status.code() == Some(0) {
            "pass"
        } else {
            "fail"
        };
        assert_eq!(v["verdict"], verdict);
        assert!(stdout(&text).contains(&format!("verdict: {verdict}")));
    }
}

#[test]
fn verify_json_matches_schema() {
    let o = ringcodes(&[
        "verify",
        "--code",
        "span Z/25 len 2 { (1,7) }",
        "--code",
        "span Z/25 len 2 { (1,7) }",
        "--matrix",
        "[[1,7],[7,1]]",
        "--use-dual-theorem",
        "--expect",
        "self-dual",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    conforms(&v, &schema("verify.schema.json")).unwrap();
    assert_eq!(v["dual_theorem"]["agrees_with_bruteforce"], true);
    let ids: Vec<&str> = v["report"]["conditions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids.len(), 10);
    assert!(v["report"]["conclusions"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["property"] == "SelfDual" && c["justified_by"] == "thm-self-dual"));
}

#[test]
fn reproduce_ex1() {
    let o = ringcodes(&["reproduce", "ex1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("PASS MPC = 10Z/20 x {0}: {(0,0), (10,0)}"));
    assert!(out.contains("PASS dual = 2Z/20 x Z/20: 200 codewords"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn reproduce_ex2_lists() {
    let o = ringcodes(&["reproduce", "ex2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("{(0,0,0,0), (0,4,12,0), (0,8,4,0), (0,12,16,0), (0,16,8,0)}"));
    assert!(out.contains("{(0,0,0,0), (0,4,0,8), (0,8,0,16), (0,12,0,4), (0,16,0,12)}"));
}

#[test]
fn reproduce_z25() {
    let o = ringcodes(&["reproduce", "z25-selfdual", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    conforms(&v, &schema("scenario.schema.json")).unwrap();
    let names: Vec<&str> = v["expectations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"minimum distance 2"));
    assert!(names.contains(&"rate 1/2"));
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn reproduce_parameterised() {
    for id in [
        "prime-square:5",
        "lemma-diag1:Z/25:1",
        "lemma-diag1:Z/9:1",
        "lemma-adiag1:Z/25",
        "lemma-adiag1:Z/13",
        "lemma-adiag3:Z/13",
    ] {
        let o = ringcodes(&["reproduce", id]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{id}: {}{}",
            stdout(&o),
            stderr(&o)
        );
    }
    let o = ringcodes(&["reproduce", "prime-square:3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reproduce_unknown() {
    let o = ringcodes(&["reproduce", "ex9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown scenario"));
}

#[test]
fn construct_adiag3() {
    let o = ringcodes(&["construct", "adiag3", "--ring", "Z/25"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("matrix: [[1,7],[7,1]]"));
    assert!(out.contains("gram: adiag(14,14)"));
    let j = json(&ringcodes(&[
        "construct",
        "adiag3",
        "--ring",
        "Z/25",
        "--format",
        "json",
    ]));
    conforms(&j, &schema("certificate.schema.json")).unwrap();
}

#[test]
fn construct_diag1_rejects_z20() {
    let o = ringcodes(&["construct", "diag1", "--ring", "Z/20"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("2 is a zero divisor"));
}

#[test]
fn construct_block_two_is_adiag3() {
    let a = ringcodes(&["construct", "block", "--ring", "Z/25", "--s", "2"]);
    let b = ringcodes(&["construct", "adiag3", "--ring", "Z/25"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn construct_with_explicit_u() {
    let o = ringcodes(&[
        "construct",
        "adiag1b",
        "--ring",
        "Z/13",
        "--u",
        "5",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["deltas"], serde_json::json!([4, 3]));
    let o = ringcodes(&["construct", "adiag1a", "--ring", "Z/20", "--u", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_flag_and_env() {
    let args = ["dual", "--code", "span Z/25 len 2 { (1,7) }"];
    let o = ringcodes(&with(&args, &["--budget", "10"]));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds budget of 10"));
    let o = Command::new(env!("CARGO_BIN_EXE_ringcodes"))
        .args(args)
        .env("RINGCODES_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_ringcodes"))
        .args(with(&args, &["--budget", "1000"]))
        .env("RINGCODES_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn printed_objects_reparse() {
    let o = ringcodes(&[
        "dual",
        "--ring",
        "Z/9[x]/(x^2+x+2)",
        "--code",
        "span Z/9[x]/(x^2+x+2) len 1 { (3x+3) }",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    conforms(&v["dual"], &schema("code.schema.json")).unwrap();
    let b = Budget::default();
    let dual = LinearCode::from_json(&v["dual"], b).unwrap();
    assert_eq!(LinearCode::parse(&dual.to_string(), b).unwrap(), dual);
    let ring = Ring::parse(v["dual"]["ring"].as_str().unwrap()).unwrap();
    assert_eq!(ring, Ring::galois(3, 2, 2).unwrap());
    let cert = json(&ringcodes(&[
        "construct",
        "block",
        "--ring",
        "Z/13",
        "--s",
        "3",
        "--format",
        "json",
    ]));
    let r = Ring::parse(cert["ring"].as_str().unwrap()).unwrap();
    let m = Matrix::parse(&r, cert["matrix"].as_str().unwrap()).unwrap();
    assert_eq!(m.to_string(), cert["matrix"].as_str().unwrap());
}

#[test]
fn distance_with_bound() {
    let o = ringcodes(&[
        "distance",
        "--code",
        "span Z/25 len 2 { (1,7) }",
        "--code",
        "span Z/25 len 2 { (1,7) }",
        "--matrix",
        "[[1,7],[7,1]]",
        "--format",
        "json",
    ]);
    let v = json(&o);
    assert_eq!(v["min_distance"], 2);
    assert_eq!(v["bound"], 2);
    assert_eq!(v["row_code_distances"], serde_json::json!([2, 1]));
    let o = ringcodes(&["distance", "--code", "span Z/4 len 2 { }"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn block_odd_reports_both_bounds() {
    let o = ringcodes(&["construct", "block", "--ring", "Z/13", "--s", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("bound: min(2d_1,2d_2,d_3,d_4,d_5)"), "{out}");
    assert!(
        out.contains("printed odd bound: min(2d_1,2d_2,d_4,d_5)"),
        "{out}"
    );
}
