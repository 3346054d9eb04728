use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonorient"))
        .args(args)
        .env_remove("NONORIENT_BOUND")
        .env_remove("NONORIENT_POWER_BOUND")
        .env_remove("NONORIENT_ORBIT_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

/// Validates the subset of JSON Schema the shipped schema uses.
fn validate(schema: &Value, v: &Value, path: &str) -> Result<(), String> {
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(v) {
            return Err(format!("{path}: {v} not in enum"));
        }
    }
    let ty = schema.get("type").and_then(Value::as_str);
    let ok = match ty {
        None => true,
        Some("object") => v.is_object(),
        Some("array") => v.is_array(),
        Some("string") => v.is_string(),
        Some("integer") => v.is_u64() || v.is_i64(),
        Some("boolean") => v.is_boolean(),
        Some(t) => return Err(format!("{path}: unsupported type {t}")),
    };
    if !ok {
        return Err(format!("{path}: expected {}", ty.unwrap()));
    }
    if let (Some(min), Some(n)) = (schema.get("minimum").and_then(Value::as_i64), v.as_i64()) {
        if n < min {
            return Err(format!("{path}: {n} < {min}"));
        }
    }
    if let Some(obj) = v.as_object() {
        let props = schema.get("properties").and_then(Value::as_object);
        for key in schema.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !obj.contains_key(key.as_str().unwrap()) {
                return Err(format!("{path}: missing {key}"));
            }
        }
        for (k, val) in obj {
            let sub = props.and_then(|p| p.get(k));
            match (sub, schema.get("additionalProperties")) {
                (Some(s), _) => validate(s, val, &format!("{path}.{k}"))?,
                (None, Some(Value::Bool(false))) => return Err(format!("{path}: unexpected key {k}")),
                (None, Some(s)) if s.is_object() => validate(s, val, &format!("{path}.{k}"))?,
                _ => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            validate(items, x, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

fn schema() -> Value {
    serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap()
}

#[test]
fn eval_curve_reports_gamma_target() {
    let o = run(&["eval", "--genus", "4", "--word", "(123)^2", "--curve", "g1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("image is conjugate to gamma3"), "{}", stdout(&o));
}

#[test]
fn eval_cancelling_word_is_identity() {
    let o = run(&["eval", "--genus", "3", "--word", "1 1'", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["identity"], Value::Bool(true));
    assert_eq!(v["images"], serde_json::json!(["x1", "x2", "x3"]));
}

#[test]
fn parse_expands_and_reduces() {
    let o = run(&["parse", "--genus", "4", "--word", "(12)^2 2'", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["expanded"], "12122'");
    assert_eq!(v["reduced"], "121");
}

#[test]
fn equal_exit_code_follows_answer() {
    assert_eq!(run(&["equal", "--genus", "3", "121", "212"]).status.code(), Some(0));
    assert_eq!(run(&["equal", "--genus", "3", "1", "2"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["parse", "--genus", "7", "--word", "1"]).status.code(), Some(2));
    assert_eq!(run(&["parse", "--genus", "3", "--word", "(1"]).status.code(), Some(2));
    assert_eq!(run(&["blowup-flow", "--from", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--class", "9;9"]).status.code(), Some(2));
}

#[test]
fn class_report_validates_and_passes() {
    let o = run(&["verify", "--class", "4;7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    validate(&schema(), &v, "$").unwrap();
    assert_eq!(v["summary"]["ok"], Value::Bool(true));
    assert_eq!(v["checks"][0]["check_id"], "involution/4;7");
}

#[test]
fn full_report_is_deterministic_and_exit_matches() {
    let a = run(&["verify", "--all", "--format", "json", "--no-timing", "--jobs", "4"]);
    let b = run(&["verify", "--all", "--format", "json", "--no-timing", "--jobs", "1"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    validate(&schema(), &v, "$").unwrap();
    let ok = v["summary"]["ok"].as_bool().unwrap();
    assert_eq!(a.status.code(), Some(if ok { 0 } else { 1 }));
    let checks = v["checks"].as_array().unwrap();
    let inv: Vec<&Value> = checks.iter().filter(|c| c["kind"] == "involution").collect();
    assert_eq!(inv.len(), 30);
}

#[test]
fn schema_rejects_bad_status() {
    let mut v = json(&run(&["verify", "--derivations", "--format", "json"]));
    v["checks"][0]["status"] = Value::String("maybe".into());
    assert!(validate(&schema(), &v, "$").is_err());
}

#[test]
fn env_bound_is_honoured() {
    let o = Command::new(env!("CARGO_BIN_EXE_nonorient"))
        .args(["verify", "--class", "4;7", "--format", "json"])
        .env("NONORIENT_BOUND", "0")
        .env("NONORIENT_ORBIT_CAP", "1")
        .output()
        .unwrap();
    let v = json(&o);
    assert!(v["summary"]["pass"].as_u64().unwrap() < v["summary"]["total"].as_u64().unwrap());
}

#[test]
fn classify_and_flows() {
    let v = json(&run(&["classify", "--format", "json"]));
    let counts: Vec<usize> =
        (2..=5).map(|g| v.as_array().unwrap().iter().filter(|c| c["genus"] == g).count()).collect();
    assert_eq!(counts, vec![5, 3, 14, 8]);
    for from in ["2", "4"] {
        let f = json(&run(&["blowup-flow", "--from", from, "--format", "json"]));
        assert!(f["edges"].as_array().unwrap().iter().all(|e| !e["target"].is_null()));
        assert!(f["identities"].as_array().unwrap().iter().all(|s| s["holds"] == true));
    }
}
