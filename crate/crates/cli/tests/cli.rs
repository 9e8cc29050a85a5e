use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn tca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tca"))
        .args(args)
        .env_remove("TCA_MAX_BASIS")
        .env_remove("TCA_MAX_MONOMIALS")
        .output()
        .expect("run tca")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn config(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tca-cli-tests-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

#[test]
fn character_examples() {
    let o = tca(&["character", "--family", "determinantal", "--d", "2", "--r", "1", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("s[] + 2*s[1] + 3*s[2] + 4*s[3]"));
    let o = tca(&["character", "--family", "full", "--d", "1", "--degree", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "partition,size,multiplicity\n[],0,1\n[1],1,1\n[2],2,1\n");
}

#[test]
fn malformed_config_reports_position() {
    let path = config("syntax.json", "{\n  \"variant\": \"determinantal\",\n  \"d\": 2 \"r\": 1\n}\n");
    let o = tca(&["character", "--config", path.to_str().unwrap(), "--degree", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3, column 10"));

    let path = config("template.json", "{\n  \"variant\": \"user\",\n  \"d\": 2,\n  \"generators\": [\"x[1,1]*x[3,1]\"]\n}\n");
    let o = tca(&["betti", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4, column 28"));
}

#[test]
fn usage_errors_are_config_errors() {
    assert_eq!(tca(&["character", "--family", "determinantal", "--d", "2"]).status.code(), Some(3));
    assert_eq!(tca(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(tca(&["verify", "--family", "full", "--d", "2", "--n-min", "4", "--n-max", "2"]).status.code(), Some(3));
    assert_eq!(tca(&["--help"]).status.code(), Some(0));
}

#[test]
fn invariants_table_flags() {
    let o = tca(&["invariants-table", "--family", "determinantal", "--d", "2", "--r", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let flags: Vec<usize> = header.iter().enumerate().filter(|(_, h)| h.ends_with("_match")).map(|(i, _)| i).collect();
    assert_eq!(flags.len(), 4);
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        assert!(flags.iter().all(|&i| cells[i] == "true"), "{line}");
    }

    // r = d: nothing to resolve
    let o = tca(&["invariants-table", "--family", "determinantal", "--d", "2", "--r", "2", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for row in rows.as_array().unwrap() {
        assert_eq!(row["pdim"], 0);
        if row["n"].as_u64().unwrap() < 2 {
            assert_eq!(row["valid"], false);
            assert!(row["expected_pdim"].is_null());
        }
    }
}

#[test]
fn builtin_suite_passes() {
    let o = tca(&["verify", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let verdicts: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let verdicts = verdicts.as_array().unwrap();
    assert!(verdicts.len() > 40);
    assert!(verdicts.iter().all(|v| v["outcome"] == "pass"));
}

#[test]
fn small_truncation_is_inconclusive() {
    let o = tca(&["verify", "--family", "determinantal", "--d", "2", "--r", "1", "--n-max", "6", "--degree", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let verdicts: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(verdicts[0]["check"], "gamma-linear");
    assert_eq!(verdicts[0]["outcome"], "inconclusive");
}

#[test]
fn corrupted_fixture_fails_at_first_bad_n() {
    let path = config("corrupt.json", r#"{"variant": "user", "d": 2, "generators": ["x[1,1]"]}"#);
    let o = tca(&["verify", "--config", path.to_str().unwrap(), "--n-min", "2", "--n-max", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let verdicts: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let krull = verdicts.as_array().unwrap().iter().find(|v| v["check"] == "krull-intercept").unwrap();
    assert_eq!(krull["outcome"], "fail");
    assert_eq!(krull["witness"], 2);
}

#[test]
fn strands_report() {
    let o = tca(&["strands", "--family", "determinantal", "--d", "2", "--r", "1", "--n-max", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,pdim,strand_pdim,matches\n1,0,0,true\n2,1,1,true\n3,2,2,true\n");
    let o = tca(&["strands", "--family", "linear", "--d", "1", "--c", "1", "--n-max", "5", "--format", "json"]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["stable"], true);
    assert_eq!(report["verdict"]["outcome"], "pass");
}

#[test]
fn fit_reports_slopes() {
    let o = tca(&["fit", "--family", "determinantal", "--d", "3", "--r", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("\"determinantal(d=3,r=1)\",pdim,2,-2,1,true,4"), "{text}");
    assert!(text.contains("\"determinantal(d=3,r=1)\",depth,1,2,1,true,4"), "{text}");
}

#[test]
fn resource_ceiling_exit_code() {
    let o = Command::new(env!("CARGO_BIN_EXE_tca"))
        .args(["betti", "--family", "determinantal", "--d", "2", "--r", "1", "--n-max", "4"])
        .env("TCA_MAX_BASIS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    let o = tca(&["verify", "--family", "determinantal", "--d", "3", "--r", "1", "--max-monomials", "1"]);
    assert_eq!(o.status.code(), Some(4), "{}", stdout(&o));
}

#[test]
fn output_is_deterministic() {
    let args = ["invariants-table", "--family", "determinantal", "--d", "3", "--r", "2", "--n-min", "2", "--n-max", "4", "--format", "json"];
    assert_eq!(tca(&args).stdout, tca(&args).stdout);
    let out = config("out.csv", "");
    let o = tca(&["betti", "--family", "linear", "--d", "2", "--c", "1", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = fs::read_to_string(&out).unwrap();
    assert!(written.starts_with("n,p,j,beta\n1,0,0,1\n1,1,1,1\n"), "{written}");
}
