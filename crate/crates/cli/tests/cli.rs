use std::process::{Command, Output};

fn ellw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellw")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_examples() {
    let o = ellw(&["eval", "q-number", "r=2", "q=2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2.5+0i\n");

    let o = ellw(&["eval", "Y", "N=2", "M=1", "q=0.5", "p=0.0625", "x=0.7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0.99999999999999") || stdout(&o).starts_with("1+"), "{}", stdout(&o));
}

#[test]
fn flags_and_pairs_mix() {
    let a = ellw(&["eval", "Y", "--M", "-1", "--x", "0.3+0.8i"]);
    let b = ellw(&["eval", "Y", "M=-1", "x=0.3+0.8i"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn exit_codes() {
    assert_eq!(ellw(&["eval", "nope"]).status.code(), Some(2));
    assert_eq!(ellw(&["eval", "f"]).status.code(), Some(2));
    assert_eq!(ellw(&["eval", "f", "bogus=1", "x=0.3"]).status.code(), Some(2));
    assert_eq!(ellw(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(ellw(&["--bogus"]).status.code(), Some(2));
    let pole = ellw(&["eval", "f", "x=1"]);
    assert_eq!(pole.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&pole.stderr).contains("pole"));
    assert_eq!(ellw(&["eval", "Y", "M=0", "x=0.3"]).status.code(), Some(3));
}

#[test]
fn verify_reports() {
    let o = ellw(&["verify", "rmatrix", "N=2", "q=0.5", "p=0.3", "samples=20", "tol=1e-8"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["overall_pass"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 5);
    assert_eq!(v["params"]["samples"], "20");

    let o = ellw(&["verify", "structure", "N=3", "M=1", "q=0.4", "p=0.2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    assert!(csv.starts_with("name,samples,max_residual,tolerance,pass,skipped\n"));
    assert!(csv.lines().any(|l| l.starts_with("y.product,") && l.contains(",true,")));
}

#[test]
fn forced_failure_reports_every_residual() {
    let o = ellw(&["verify", "all", "tol=1e-16"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["overall_pass"], false);
    for ch in v["checks"].as_array().unwrap() {
        assert!(ch["max_residual"].as_f64().unwrap().is_finite(), "{ch}");
    }
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = ellw(&["verify", "special", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let direct = ellw(&["verify", "special"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn tables() {
    let o = ellw(&["table", "critical-k0", "N=2", "q=0.5", "r_max=5"]);
    let csv = stdout(&o);
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines[0], "r,re,im");
    assert_eq!(lines.len(), 12);
    assert!(lines.iter().any(|l| l.starts_with("0,0.0000000000000000e0,0.0000000000000000e0")));

    let o = ellw(&["table", "higher-spin-k0", "N=3", "i=1", "j=3"]);
    for l in stdout(&o).lines().skip(1) {
        let cols: Vec<f64> = l.split(',').skip(1).map(|v| v.parse().unwrap()).collect();
        assert_eq!(cols, vec![0.0, 0.0]);
    }

    let a = ellw(&["table", "h-limit", "N=2", "M=1", "h=2", "q=0.5", "r_max=5"]);
    let b = ellw(&["table", "critical-k0", "N=2", "q=0.5", "r_max=5"]);
    assert_eq!(a.stdout, b.stdout);

    let j = ellw(&["table", "sl2-sector", "k=1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(v["label"]["kind"], "sl2_sector");
    assert_eq!(v["rows"].as_array().unwrap().len(), 11);
}
