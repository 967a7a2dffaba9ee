use std::process::{Command, Output};

use serde_json::Value;

fn abelian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abelian"))
        .args(args)
        .output()
        .expect("run abelian")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn tm_complexity_alternates() {
    let out = abelian(&["complexity", "--word", "tm", "--n-max", "64", "--prefix", "65536"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,value"));
    for (n, line) in (1..).zip(lines) {
        let expected = if n % 2 == 1 { 2 } else { 3 };
        assert_eq!(line, format!("{n},{expected}"));
    }
}

#[test]
fn g_fixed_point_prefix_avoids_squares() {
    let out = abelian(&["scan-squares", "--word", "g_fp", "--pos", "0", "--max-period", "100000"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "pos,result,period\n0,avoids,\n");
    let out = abelian(&["scan-squares", "--word", "g_fp", "--pos", "1", "--max-period", "10"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_mirrors_csv_fields() {
    let csv = stdout(&abelian(&["scan-squares", "--word", "f_wh", "--from", "10", "--to", "16", "--max-period", "100"]));
    let json = abelian(&[
        "scan-squares", "--word", "f_wh", "--from", "10", "--to", "16", "--max-period", "100", "--format", "json",
    ]);
    let rows: Vec<Value> = serde_json::from_slice(&json.stdout).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(rows.len(), lines.count());
    let keys: Vec<&str> = rows[0].as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, header);
    assert_eq!(rows[4]["pos"], 14);
    assert_eq!(rows[4]["result"], "avoids");
}

#[test]
fn reports_are_deterministic() {
    let args = ["density", "--word", "random:5", "--horizon", "2000", "--max-period", "50"];
    assert_eq!(abelian(&args).stdout, abelian(&args).stdout);
    let args = ["verify", "cube-period-bound", "--format", "json"];
    assert_eq!(abelian(&args).stdout, abelian(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(abelian(&["pvhh", "--values", "1,2,1,2"]).status.code(), Some(1));
    assert_eq!(abelian(&["pvhh", "--values", "1,2,1"]).status.code(), Some(0));
    assert_eq!(abelian(&["tau", "--values", "2"]).status.code(), Some(2));
    assert_eq!(abelian(&["complexity", "--word", "nope"]).status.code(), Some(2));
    assert_eq!(abelian(&["complexity", "--word", "tm", "--n-max", "10", "--prefix", "5"]).status.code(), Some(2));
    assert_eq!(abelian(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(abelian(&["repetitive", "--word", "tm", "--k", "3", "--n", "60", "--prefix", "4096"]).status.code(), Some(1));
    assert_eq!(abelian(&["repetitive", "--word", "tm", "--k", "2", "--n", "10", "--prefix", "4096"]).status.code(), Some(0));
    let found = abelian(&["scan-prefix-pattern", "--word", "fixpoint:mu:0", "--kind", "0x0y0", "--bound", "100"]);
    assert_eq!(found.status.code(), Some(1));
    let absent = abelian(&["scan-prefix-pattern", "--word", "w_h", "--kind", "010x0y0", "--bound", "10000"]);
    assert_eq!(absent.status.code(), Some(0));
}

#[test]
fn generate_and_tau() {
    assert_eq!(stdout(&abelian(&["generate", "--word", "f_wh", "--len", "10", "--raw"])), "0001101100\n");
    assert_eq!(stdout(&abelian(&["generate", "--word", "g_fp", "--len", "12", "--raw"])), "011111001110\n");
    assert_eq!(stdout(&abelian(&["generate", "--word", "v:3", "--len", "3"])), "n,value\n0,1\n1,2\n2,-3\n");
    assert_eq!(
        stdout(&abelian(&["tau", "--values", "1,3"])),
        "input,encoded,boundaries\n\"1,3\",01001110,0 3\n"
    );
}

#[test]
fn morphism_file_and_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let morphism = dir.path().join("tribonacci.toml");
    std::fs::write(
        &morphism,
        "name = \"tribonacci\"\ndomain = [\"a\", \"b\", \"c\"]\nrules = [\"a -> ab\", \"b -> ac\", \"c -> a\"]\n",
    )
    .unwrap();
    let spec = format!("fixpoint:{}:a", morphism.display());
    let out = abelian(&["generate", "--word", &spec, "--len", "13", "--raw"]);
    assert_eq!(stdout(&out), "abacabaabacab\n");

    let report = dir.path().join("profile.csv");
    let out = abelian(&[
        "complexity", "--word", &spec, "--n-max", "4", "--prefix", "4096", "--output", report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.starts_with("n,value\n1,3\n"), "{text}");

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "domain = [\"0\", \"1\"]\nrules = [\"0 -> 01\"]\n").unwrap();
    let out = abelian(&["generate", "--word", &format!("fixpoint:{}:0", bad.display())]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn verify_schema() {
    let out = abelian(&["verify", "4", "boundedness-classifier"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("suite,statement,horizon,expected,observed,pass\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS 04 expansion-lemma"));
    assert_eq!(abelian(&["verify", "15"]).status.code(), Some(2));
}
