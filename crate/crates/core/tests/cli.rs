use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

const WORKBENCH: &str = r#"{
  "rings": { "Z36": { "zn": 36 }, "Z12": { "zn": 12 } },
  "modules": { "M36": { "regular": "Z36" }, "M12": { "regular": "Z12" } },
  "submodules": {
    "N": { "module": "M36", "gens": [6] },
    "K": { "module": "M12", "gens": [6] }
  },
  "multsets": { "S": { "ring": "Z36", "gens": [3] } }
}"#;

fn config(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn sprimary(cfg: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sprimary"));
    if let Some(p) = cfg {
        cmd.arg("--config").arg(p);
    }
    cmd.args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn exit_codes() {
    let good = config(WORKBENCH);
    let g = Some(good.path());
    let cases: &[(Option<&Path>, &[&str], i32)] = &[
        (g, &["check", "kind=weakly-s-primary", "submodule=N", "multset=S"], 0),
        (g, &["check", "kind=weakly-primary", "submodule=K"], 1),
        (g, &["check", "kind=nonsense", "submodule=N"], 2),
        (g, &["check", "kind=weakly-s-primary", "submodule=Missing", "multset=S"], 2),
        (g, &["check", "submodule=N"], 2),
        (g, &["describe", "claim=NO-SUCH-CLAIM"], 2),
        (g, &["verify", "claims=NO-SUCH-CLAIM"], 2),
        (g, &["enumerate", "module=M12"], 0),
        (g, &["bogus"], 2),
        (Some(Path::new("/nonexistent/workbench.json")), &["describe", "ring=Z12"], 2),
    ];
    for (cfg, args, want) in cases {
        let o = sprimary(*cfg, args);
        assert_eq!(code(&o), *want, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn malformed_configs_exit_two() {
    for text in [
        "{\n  \"rings\": {\n    \"R\": {\"zn\": }\n}",
        r#"{"modules":{"M":{"regular":"Q"}}}"#,
        r#"{"rings":{"R":{"zn":12}},"multsets":{"S":{"ring":"R","gens":[2],"closure":false}}}"#,
        r#"{"rings":{"R":{"zn":12}},"unknown_section":{}}"#,
    ] {
        let f = config(text);
        let o = sprimary(Some(f.path()), &["describe", "ring=R"]);
        assert_eq!(code(&o), 2, "{text}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn check_reports_witness_and_counterexample() {
    let f = config(WORKBENCH);
    let o = sprimary(Some(f.path()), &["--format", "json", "check", "kind=weakly-s-primary", "submodule=N", "multset=S"]);
    let r = &json(&o)["results"][0];
    assert_eq!(r["holds"], Value::Bool(true));
    assert_eq!(r["witness"].as_str(), Some("3"));

    let o = sprimary(Some(f.path()), &["--format", "json", "check", "kind=weakly-primary", "submodule=K"]);
    let r = &json(&o)["results"][0];
    assert_eq!(r["holds"], Value::Bool(false));
    assert_eq!(r["counterexample"].as_str(), Some("a=2, m=3"));
}

#[test]
fn report_file_has_the_documented_keys() {
    let f = config(WORKBENCH);
    let out = tempfile::tempdir().unwrap();
    let path = out.path().join("report.json");
    let o = sprimary(Some(f.path()), &["--report", path.to_str().unwrap(), "witnesses", "submodule=N", "multset=S"]);
    assert_eq!(code(&o), 0);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let keys: Vec<&str> = report.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["version", "params_fingerprint", "results", "claims"] {
        assert!(keys.contains(&k), "{keys:?}");
    }
    assert_eq!(report["params_fingerprint"].as_str().unwrap().len(), 64);
    assert_eq!(report["results"][0]["command"].as_str(), Some("witnesses submodule=N multset=S"));
}

fn leaves(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => m.values().for_each(|x| leaves(x, out)),
        Value::Array(a) => a.iter().for_each(|x| leaves(x, out)),
        Value::String(s) => out.push(s.clone()),
        Value::Null => out.push("none".into()),
        other => out.push(other.to_string()),
    }
}

#[test]
fn human_output_carries_every_json_value() {
    let f = config(WORKBENCH);
    let commands: &[&[&str]] = &[
        &["check", "kind=weakly-s-primary", "submodule=N", "multset=S"],
        &["check", "kind=weakly-primary", "submodule=K"],
        &["witnesses", "submodule=N", "multset=S"],
        &["enumerate", "module=M12"],
        &["describe", "multset=S"],
        &["describe", "submodule=N"],
    ];
    for args in commands {
        let mut j = vec!["--format", "json"];
        j.extend_from_slice(args);
        let data = json(&sprimary(Some(f.path()), &j));
        let text = String::from_utf8(sprimary(Some(f.path()), args).stdout).unwrap();
        let mut vals = Vec::new();
        leaves(&data, &mut vals);
        for v in vals {
            assert!(text.contains(&v), "{args:?}: {v:?} missing from\n{text}");
        }
    }
}

#[test]
fn verify_runs_a_claim_subset() {
    let o = sprimary(None, &["--format", "json", "--max-ring-order", "12", "verify", "claims=HIERARCHY,SAT"]);
    assert!(matches!(code(&o), 0 | 1));
    let r = json(&o);
    let ids: Vec<&str> = r["claims"].as_array().unwrap().iter().map(|c| c["claim_id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["HIERARCHY", "SAT"]);
    for c in r["claims"].as_array().unwrap() {
        assert_eq!(c["status"].as_str(), Some("PASS"), "{c}");
    }
    let human = String::from_utf8(sprimary(None, &["--max-ring-order", "12", "--claims", "SAT", "verify"]).stdout).unwrap();
    assert!(human.contains("SAT") && human.contains("PASS"), "{human}");
}

#[test]
fn claims_given_twice_is_a_usage_error() {
    let o = sprimary(None, &["--claims", "SAT", "verify", "claims=SAT"]);
    assert_eq!(code(&o), 2);
}
