use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lorentz_sep::report::{AnalysisReport, SampleReport};
use lorentz_sep_core::analysis::Tolerances;
use serde_json::Value;
use tempfile::TempDir;

const EXAMPLE_PAIR: &str = r#"{"a":[0,0.64,0],"b":[0,0.64,0],"t_diag":[0.3,0.3,0.3]}"#;
const EXAMPLE_CUBIC: &str = r#"{"a":[0.1,0.15,0],"b":[0.1,0.15,0],"t_diag":[0.3,-0.2,0.4]}"#;

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn write(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lorentz-sep"))
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn analyze_json(path: &Path) -> (i32, Value) {
    let o = run(&["analyze", path.to_str().unwrap(), "--format", "json"]);
    (code(&o), serde_json::from_str(&stdout(&o)).unwrap())
}

#[test]
fn entangled_example_exits_one() {
    let f = Files::new();
    let (c, v) = analyze_json(&f.write("s.json", EXAMPLE_PAIR));
    assert_eq!(c, 1);
    assert_eq!(v["ppt_verdict"]["verdict"], "entangled");
    assert_eq!(v["lorentz_verdict"]["verdict"], "entangled");
}

#[test]
fn maximally_mixed_exits_zero() {
    let f = Files::new();
    let (c, v) = analyze_json(&f.write("s.json", r#"{"a":[0,0,0],"b":[0,0,0],"t_diag":[0,0,0]}"#));
    assert_eq!(c, 0);
    assert_eq!(v["ppt_verdict"]["verdict"], "separable");
}

#[test]
fn cubic_example_ratios() {
    let f = Files::new();
    let (c, v) = analyze_json(&f.write("s.json", EXAMPLE_CUBIC));
    assert_eq!(c, 0);
    assert_eq!(v["ppt_verdict"]["verdict"], "separable");
    assert_eq!(v["lorentz_verdict"]["verdict"], "separable");
    let mut got: Vec<f64> = v["tprime"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    got.sort_by(f64::total_cmp);
    for (g, w) in got.iter().zip([-0.2384, 0.3039, 0.4156]) {
        assert!((g - w).abs() < 1e-3, "{g} vs {w}");
    }
    assert!(v["lorentz_sum"].as_f64().unwrap() < 1.0);
}

#[test]
fn non_generic_exits_three_and_omits_lorentz_fields() {
    let f = Files::new();
    let (c, v) = analyze_json(&f.write("d.json", r#"{"a":[1,0,0],"b":[1,0,0],"t_diag":[1,0,0]}"#));
    assert_eq!(c, 3);
    assert_eq!(v["classification"]["kind"], "NonGenericD");
    for key in ["sigma", "tprime", "lorentz_sum", "lorentz_verdict"] {
        assert!(v.get(key).is_none(), "{key} present");
    }
    assert!(v["ppt_verdict"].is_object());
}

#[test]
fn non_state_exits_two() {
    let f = Files::new();
    let o = run(&["analyze", f.write("s.json", r#"{"a":[0,0,0],"b":[0,0,0],"t_diag":[1,1,1]}"#).to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a state"));
}

#[test]
fn malformed_files_exit_two_naming_the_field() {
    let f = Files::new();
    for (body, field) in [
        (r#"{"a":[0,0,0],"b":[0,0],"t_diag":[0,0,0]}"#, "`b`"),
        (r#"{"a":[0,0,0],"b":[0,0,0]}"#, "`t_diag`"),
        (r#"{"a":[0,0,0],"b":[0,0,0],"t_full":[0,0,0]}"#, "`t_full`"),
        (r#"{"a":[0,0,0],"b":[0,0,0],"t_diag":[0,0,0],"r00":2}"#, "`r00`"),
    ] {
        let path = f.write("bad.json", body);
        for cmd in ["analyze", "classify"] {
            let o = run(&[cmd, path.to_str().unwrap()]);
            assert_eq!(code(&o), 2);
            let err = String::from_utf8_lossy(&o.stderr).to_string();
            assert!(err.contains(field), "{err} should name {field}");
        }
    }
    let o = run(&["analyze", "/nonexistent/state.json"]);
    assert_eq!(code(&o), 2);
    let o = run(&["analyze", f.write("bad.json", "not json").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn bad_arguments_exit_two() {
    let f = Files::new();
    let p = f.write("s.json", EXAMPLE_PAIR);
    assert_eq!(code(&run(&["analyze", p.to_str().unwrap(), "--tol-psd", "-1"])), 2);
    assert_eq!(code(&run(&["analyze", p.to_str().unwrap(), "--format", "xml"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn classify_lines() {
    let f = Files::new();
    let line = |body: &str| stdout(&run(&["classify", f.write("s.json", body).to_str().unwrap()]));
    assert!(line(r#"{"a":[1,0,0],"b":[0,0,0],"t_diag":[0,0,0]}"#)
        .starts_with("NonGenericA: pure state of A multiplied by the unit matrix of B"));
    assert!(line(r#"{"a":[0.5,0,0],"b":[0.5,0,0],"t_diag":[0,0,0]}"#).starts_with("NonGenericC: "));
    assert!(line(EXAMPLE_CUBIC).starts_with("Generic: "));
}

#[test]
fn sample_is_deterministic() {
    let args = ["sample", "--family", "mds", "--count", "100", "--seed", "7", "--format", "json"];
    let (o1, o2) = (run(&args), run(&args));
    assert_eq!(code(&o1), 0);
    assert_eq!(o1.stdout, o2.stdout);
    let r: SampleReport = serde_json::from_str(&stdout(&o1)).unwrap();
    assert_eq!((r.total, r.disagree, r.family.as_str()), (100, 0, "mds"));
    let direct = lorentz_sep::sample("mds", 100, 7).unwrap();
    assert_eq!(r, direct);
}

#[test]
fn sample_single_pair_agrees() {
    let o = run(&["sample", "--family", "single-pair", "--count", "1000", "--seed", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r: SampleReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.disagree, 0);
}

#[test]
fn sample_usage_errors() {
    assert_eq!(code(&run(&["sample", "--family", "mds", "--count", "0", "--seed", "1"])), 2);
    assert_eq!(code(&run(&["sample", "--family", "nope", "--count", "5", "--seed", "1"])), 2);
}

#[test]
fn json_report_round_trips_bit_exact() {
    let f = Files::new();
    for body in [EXAMPLE_PAIR, EXAMPLE_CUBIC, r#"{"a":[0,0,0],"b":[0,0,0],"t_diag":[1,1,1]}"#] {
        let path = f.write("s.json", body);
        let direct = lorentz_sep::analyze(&path, &Tolerances::default()).unwrap();
        let o = run(&["analyze", path.to_str().unwrap(), "--format", "json"]);
        let parsed: AnalysisReport = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(parsed, direct);
        let again: AnalysisReport =
            serde_json::from_str(&serde_json::to_string(&parsed).unwrap()).unwrap();
        assert_eq!(again, parsed);
    }
}

fn json_numbers(v: &Value, out: &mut Vec<f64>) {
    match v {
        Value::Number(n) => out.push(n.as_f64().unwrap()),
        Value::Array(a) => a.iter().for_each(|x| json_numbers(x, out)),
        Value::Object(m) => m.values().for_each(|x| json_numbers(x, out)),
        _ => {}
    }
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let f = Files::new();
    let path = f.write("s.json", EXAMPLE_CUBIC);
    let p = path.to_str().unwrap();
    let (_, v) = analyze_json(&path);
    let mut from_json = Vec::new();
    json_numbers(&v, &mut from_json);
    let text = stdout(&run(&["analyze", p, "--format", "text"]));
    let mut from_text: Vec<f64> = text
        .lines()
        .flat_map(|l| l.split_once(": ").unwrap().1.split(' '))
        .filter_map(|tok| tok.parse::<f64>().ok())
        .collect();
    from_json.sort_by(f64::total_cmp);
    from_text.sort_by(f64::total_cmp);
    assert_eq!(from_json, from_text);
}
