use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn k3lat(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_k3lat"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn run_json(args: &[&str], stdin: Option<&str>) -> (i32, Value) {
    let out = k3lat(args, stdin);
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().unwrap(), v)
}

fn run_text(args: &[&str]) -> (i32, String) {
    let out = k3lat(args, None);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn reduce_example() {
    let (code, v) = run_json(&["reduce", "4", "4", "16"], None);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"a": 4, "b": 0, "c": 12}));
    let (_, v) = run_json(&["reduce"], Some(r#"{"a":8,"b":-4,"c":8}"#));
    assert_eq!(v, json!({"a": 8, "b": 4, "c": 8}));
}

#[test]
fn period_example() {
    let (code, v) = run_json(&["period", "--family", "verrill", "--tau", "3", "-6", "4"], None);
    assert_eq!(code, 0);
    assert_eq!(v["form"], json!({"a": 2, "b": 0, "c": 6}));
    let pqr: Vec<i64> = serde_json::from_value(v["pqr"].clone()).unwrap();
    assert_eq!(pqr.iter().map(|x| x.abs()).collect::<Vec<_>>(), [1, 1, 4]);

    let (_, data) = run_json(&["dataset"], None);
    let entry = data["periods"].as_array().unwrap().iter().find(|p| p["name"] == "Y_3sqrt-5").unwrap().clone();
    let tau: Vec<String> = entry["tau"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
    let mut args = vec!["period", "--family", "apery-fermi", "--tau"];
    args.extend(tau.iter().map(String::as_str));
    let (_, v) = run_json(&args, None);
    assert_eq!(v["form"], json!({"a": 8, "b": 2, "c": 8}));
    assert_eq!(v["form"], entry["expected"]);
}

fn matrix(v: &Value) -> Vec<Vec<i64>> {
    serde_json::from_value(v["entries"].clone()).unwrap()
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..a.len()).map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

#[test]
fn snf_example() {
    let (code, v) = run_json(&["snf"], Some(r#"{"gram":[[8,4],[4,8]]}"#));
    assert_eq!(code, 0);
    assert_eq!(v["invariant_factors"], json!([4, 12]));
    let a = vec![vec![8, 4], vec![4, 8]];
    assert_eq!(mul(&mul(&matrix(&v["u"]), &a), &matrix(&v["v"])), matrix(&v["d"]));
    assert_eq!(matrix(&v["d"]), vec![vec![4, 0], vec![0, 12]]);
}

#[test]
fn det_and_discform() {
    let (_, v) = run_json(&["det"], Some(r#"{"rows":2,"cols":2,"entries":[[2,1],[1,-4]]}"#));
    assert_eq!(v, json!({"det": -9}));
    let (_, v) = run_json(&["discform"], Some(r#"{"gram":[[8,4],[4,8]]}"#));
    assert_eq!(v["orders"], json!([4, 12]));
    assert_eq!(v["group_order"], json!(48));
}

#[test]
fn exit_codes() {
    let out = k3lat(&["det"], Some("{\"gram\": [[1,2],"));
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(k3lat(&["no-such-command"], None).status.code(), Some(2));
    assert_eq!(k3lat(&["reduce", "1", "2"], None).status.code(), Some(2));

    let (code, v) = run_json(&["discform"], Some(r#"{"gram":[[2,1],[1,2]],"x":0}"#));
    assert_eq!((code, &v["orders"]), (0, &json!([3])));
    let (code, v) = run_json(&["discform"], Some(r#"{"gram":[[2,1],[1,3]]}"#));
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "not_even");
    let (code, v) = run_json(&["discform"], Some(r#"{"gram":[[2,2],[2,2]]}"#));
    assert_eq!((code, v["error"]["kind"].as_str()), (1, Some("singular")));
    let (code, v) = run_json(&["reduce", "2", "3", "2"], None);
    assert_eq!((code, v["error"]["kind"].as_str()), (1, Some("not_positive_definite")));
}

#[test]
fn enumerate_and_keum() {
    let (_, v) = run_json(&["enumerate", "48"], None);
    assert_eq!(v["count"], 4);
    assert_eq!(v["forms"][3], json!({"a": 8, "b": 4, "c": 8}));
    let (_, v) = run_json(&["keum", "15"], None);
    assert_eq!(v["squarefree"], true);
    assert_eq!(v["options"], json!([{"l": 1, "det_j": 15}]));
}

#[test]
fn complement_of_a_vector() {
    let input = r#"{"gram":[[0,0,1],[0,6,0],[1,0,0]],"v":[-1,-1,4]}"#;
    let (code, v) = run_json(&["complement"], Some(input));
    assert_eq!(code, 0);
    assert_eq!(v["form"], json!({"a": 2, "b": 0, "c": 6}));
}

#[test]
fn ns_build_then_match() {
    let (code, ns) = run_json(&["ns-build", "--dataset", "Z_-6"], None);
    assert_eq!(code, 0);
    assert_eq!(ns["det"], -48);
    assert_eq!(ns["labels"].as_array().unwrap().len(), 20);
    let gram = json!({"gram": ns["gram"]}).to_string();
    let (_, v) = run_json(&["match"], Some(&gram));
    assert_eq!(v["candidates"], json!([{"a": 8, "b": 4, "c": 8}]));
    assert_eq!(v["unique"], true);

    let with_t = json!({"gram": ns["gram"], "t": {"gram": [[8, 4], [4, 8]]}}).to_string();
    assert_eq!(run_json(&["match"], Some(&with_t)), (0, json!({"check": "match"})));
    let wrong = json!({"gram": ns["gram"], "t": {"gram": [[2, 0], [0, 24]]}}).to_string();
    let (code, v) = run_json(&["match"], Some(&wrong));
    assert_eq!((code, v["check"].as_str()), (1, Some("disc-form-mismatch")));
}

#[test]
fn ns_build_from_spec_json() {
    let spec = r#"{"fibers":[{"kind":"II*"},{"kind":"II*"},{"kind":"I2"},{"kind":"I1"},{"kind":"I1"}]}"#;
    let (code, v) = run_json(&["ns-build"], Some(spec));
    assert_eq!(code, 0);
    assert_eq!(v["rank"], 19);
    assert_eq!(v["det"], 2);
}

#[test]
fn torsion_relation() {
    let (code, v) = run_json(&["ns-verify-torsion", "--dataset", "Z_k"], None);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], true);
    assert_eq!(v["coefficients"]["theta4"], "2");

    let spec = r#"{
        "fibers": [{"kind": "I4"}, {"kind": "I4"}, {"kind": "I4"}, {"kind": "I4"}, {"kind": "I4"}, {"kind": "I4"}],
        "torsion": [{"name": "s2", "order": 2}],
        "sections": [{"name": "s2", "hits": {"I4(0)": 2}}],
        "coefficients": {}
    }"#;
    let out = k3lat(&["ns-verify-torsion"], Some(spec));
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn fibers_and_specialize() {
    let (_, t) = run_text(&["fibers", "--dataset", "F_12", "--format", "text"]);
    assert_eq!(t.lines().next(), Some("I8(0) I3(-16) 2I2(-96,-15) III*(inf)"));

    let (code, m) = run_json(&["specialize", "--family", "F", "--k", "-6", "--u", "2"], None);
    assert_eq!(code, 0);
    let (_, r) = run_json(&["fibers"], Some(&m.to_string()));
    assert_eq!(r["text"], "I8(0) I3(2) I2(3) 2I1(-6,3/4) III*(inf)");
    assert_eq!(r["euler_sum"], 24);

    let j0 = r#"{"a":{"a6":[0,0,0,0,0,1024,-2048,1024]}}"#;
    let (_, r) = run_json(&["fibers"], Some(j0));
    assert_eq!(r["text"], "II*(0) IV(1) II*(inf)");
}

#[test]
fn verify_point() {
    for name in ["F_-6:P", "F_4:P", "F_-12:P"] {
        let (code, v) = run_json(&["verify-point", "--dataset", name], None);
        assert_eq!((code, &v["on_curve"]), (0, &json!(true)), "{name}");
    }
    // (x, y) = (-48 + 16t, i(4t - 12)(t^2 - 24)) on F_-6
    let good = r#"{"model":"F_-6","d":-1,"x":[-48,16],"y":[[0,288],[0,-96],[0,-12],[0,4]]}"#;
    assert_eq!(run_json(&["verify-point"], Some(good)).0, 0);
    let bad = r#"{"model":"F_-6","d":-1,"x":[-48,16],"y":[[0,288],[0,-96],[0,-12],[0,5]]}"#;
    let (code, v) = run_json(&["verify-point"], Some(bad));
    assert_eq!((code, &v["on_curve"]), (1, &json!(false)));
}

#[test]
fn dataset_dump() {
    let (code, v) = run_json(&["dataset"], None);
    assert_eq!(code, 0);
    let periods = v["periods"].as_array().unwrap();
    assert_eq!(periods.len(), 20);
    let mut names: Vec<&str> = periods.iter().map(|p| p["name"].as_str().unwrap()).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), 20);
}

/// Validates `v` against the subset of JSON Schema used by the shipped
/// schema: `type`, `required`, `properties`, `additionalProperties: false`,
/// `items`, `enum`, `minLength` and `minimum`.
fn validate(v: &Value, schema: &Value, path: &str) -> Result<(), String> {
    if let Some(t) = schema.get("type").and_then(Value::as_str) {
        let ok = match t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "integer" => v.is_i64() || v.is_u64(),
            "boolean" => v.is_boolean(),
            other => return Err(format!("{path}: unsupported type {other}")),
        };
        if !ok {
            return Err(format!("{path}: expected {t}, got {v}"));
        }
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(v) {
            return Err(format!("{path}: {v} not in {allowed:?}"));
        }
    }
    if let Some(n) = schema.get("minLength").and_then(Value::as_u64) {
        if (v.as_str().unwrap().chars().count() as u64) < n {
            return Err(format!("{path}: shorter than {n}"));
        }
    }
    if let Some(n) = schema.get("minimum").and_then(Value::as_i64) {
        if v.as_i64().unwrap() < n {
            return Err(format!("{path}: below {n}"));
        }
    }
    if let Some(obj) = v.as_object() {
        let props = schema.get("properties").and_then(Value::as_object);
        for key in schema.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !obj.contains_key(key.as_str().unwrap()) {
                return Err(format!("{path}: missing {key}"));
            }
        }
        for (k, x) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(s) => validate(x, s, &format!("{path}.{k}"))?,
                None if schema.get("additionalProperties") == Some(&json!(false)) => {
                    return Err(format!("{path}: unexpected key {k}"))
                }
                None => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            validate(x, items, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

fn schema() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/verification-report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn verify_paper_report() {
    let first = k3lat(&["verify-paper", "--json"], None);
    assert_eq!(first.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&first.stdout).unwrap();
    validate(&report, &schema(), "$").unwrap();

    let s = &report["summary"];
    assert_eq!(s["fail"], 0);
    assert!(s["pass"].as_u64().unwrap() >= 40);
    let records = report["records"].as_array().unwrap();
    assert_eq!(s["total"].as_u64().unwrap() as usize, records.len());
    let ids: Vec<&str> = records.iter().map(|r| r["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(ids, sorted, "ids are unique and sorted");
    let z36 = records.iter().find(|r| r["id"] == "surface.Z_-36").unwrap();
    assert_eq!(z36["status"], "conjectural-skipped");

    let again = k3lat(&["verify-paper", "--json", "--sequential"], None);
    assert_eq!(first.stdout, again.stdout, "output is byte-identical across runs");
}

#[test]
fn verify_paper_filters_and_output_file() {
    let (code, v) = run_json(&["verify-paper", "--only", "period."], None);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["total"], 20);
    assert_eq!(v["summary"]["pass"], 20);

    let dir = std::env::temp_dir().join(format!("k3lat-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.txt");
    let out = k3lat(&["verify-paper", "--only", "ns.Z_k", "--format", "text", "--out", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().last().unwrap().ends_with("0 fail, 1 erratum-candidate, 0 conjectural-skipped"), "{text}");
    std::fs::remove_dir_all(&dir).unwrap();

    let (code, v) = run_json(&["verify-paper", "--only", "no-such-claim", "--fail-fast"], None);
    assert_eq!((code, &v["summary"]["total"]), (0, &json!(0)));
}
