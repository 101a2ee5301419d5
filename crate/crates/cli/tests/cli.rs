use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use l2hodge::table::AuditReport;
use l2hodge::weight_filtration::{FiltrationJson, TwistLedger};
use l2hodge::{
    fixtures, FamilyDescriptor, FamilyReport, HodgeNumbers, Kind, Matrix, MonodromyClass,
};
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_l2hodge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn l2hodge")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn l2hodge");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr_error(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stderr)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    v["error"].clone()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn write_json<T: serde::Serialize>(dir: &TempDir, name: &str, value: &T) -> PathBuf {
    write(dir, name, &serde_json::to_string(value).unwrap())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn mum() -> Matrix {
    fixtures::unipotent_block(4)
}

#[test]
fn classify_mum_is_type_iii() {
    let dir = TempDir::new().unwrap();
    let m = write_json(&dir, "mum.json", &mum());
    let out = run(&["classify", "--weight", "3", "--matrix", s(&m)]);
    assert_eq!(out.status.code(), Some(0));
    let class: MonodromyClass = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(class.kind, Kind::III);
    assert_eq!(class.semisimple_order, 1);
    assert_eq!(stdout_json(&out)["kind"], "III");
}

#[test]
fn classify_reads_stdin_and_powers() {
    let t = fixtures::negative_block(2);
    let text = serde_json::to_string(&t).unwrap();
    let out = run_stdin(&["classify", "--weight", "1", "--matrix", "-"], &text);
    assert_eq!(stdout_json(&out)["semisimple_order"], 2);
    let out = run_stdin(
        &["classify", "--weight", "1", "--matrix", "-", "--power", "2"],
        &text,
    );
    assert_eq!(stdout_json(&out)["semisimple_order"], 1);
    assert_eq!(stdout_json(&out)["kind"], "I");
}

#[test]
fn rejection_is_a_verdict_with_exit_zero() {
    let out = run_stdin(
        &["classify", "--weight", "1", "--matrix", "-"],
        r#"{"n":2,"entries":[["2","0"],["0","1"]]}"#,
    );
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["weight"], 1);
    assert_eq!(v["rejected"]["reason"], "NotQuasiUnipotent");

    let dir = TempDir::new().unwrap();
    for f in fixtures::normal_forms() {
        if let fixtures::Expected::Rejected(reason) = f.expected {
            let m = write_json(&dir, "m.json", &f.matrix);
            let w = f.weight.get().to_string();
            let out = run(&["classify", "--weight", &w, "--matrix", s(&m)]);
            assert_eq!(out.status.code(), Some(0), "{}", f.name);
            let got = stdout_json(&out)["rejected"]["reason"].clone();
            assert_eq!(got, serde_json::to_value(reason).unwrap(), "{}", f.name);
        }
    }
}

#[test]
fn malformed_inputs_exit_one_with_json_error() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("not json", "Json"),
        (r#"{"n":2,"entries":[["1","x"],["0","1"]]}"#, "Json"),
        (r#"{"n":2,"entries":[["1","1/0"],["0","1"]]}"#, "Json"),
        (r#"{"n":3,"entries":[["1","0"],["0","1"]]}"#, "Json"),
        (
            r#"{"n":5,"entries":[["1","0","0","0","0"],["0","1","0","0","0"],["0","0","1","0","0"],["0","0","0","1","0"],["0","0","0","0","1"]]}"#,
            "Dimension",
        ),
        (r#"{"n":2,"entries":[["0","0"],["0","0"]]}"#, "Singular"),
    ];
    for (i, (text, code)) in cases.iter().enumerate() {
        let m = write(&dir, &format!("bad{i}.json"), text);
        let out = run(&["classify", "--weight", "1", "--matrix", s(&m)]);
        assert_eq!(out.status.code(), Some(1), "{text}");
        assert!(out.stdout.is_empty());
        let err = stderr_error(&out);
        assert_eq!(err["code"], *code, "{text}: {err}");
        assert!(err["message"].as_str().is_some_and(|m| !m.is_empty()));
    }
    let out = run(&[
        "classify",
        "--weight",
        "1",
        "--matrix",
        "/definitely/missing.json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_error(&out)["code"], "Io");
}

#[test]
fn bad_flags_are_rejected_by_the_parser() {
    let out = run(&["classify", "--weight", "4", "--matrix", "x.json"]);
    assert_ne!(out.status.code(), Some(0));
    let out = run(&["ledger", "--weight", "3", "--type", "V"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_error(&out)["code"], "Parse");
}

#[test]
fn filtration_of_unipotent_and_nilpotent_agree() {
    let dir = TempDir::new().unwrap();
    let t = write_json(&dir, "t.json", &mum());
    let out = run(&["filtration", "--matrix", s(&t)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["source"], "log T");
    let f: FiltrationJson = serde_json::from_value(v["filtration"].clone()).unwrap();
    let dims: Vec<(i64, usize)> = f.graded.iter().map(|g| (g.k, g.dim)).collect();
    let mut sorted = dims.clone();
    sorted.sort();
    assert_eq!(sorted, vec![(-3, 1), (-1, 1), (1, 1), (3, 1)]);

    // feed the emitted N back in
    let n: Matrix = serde_json::from_value(v["nilpotent"].clone()).unwrap();
    let np = write_json(&dir, "n.json", &n);
    let again = stdout_json(&run(&["filtration", "--matrix", s(&np)]));
    assert_eq!(again["source"], "N");
    assert_eq!(again["filtration"], v["filtration"]);

    let out = run(&[
        "filtration",
        "--matrix",
        s(&write_json(&dir, "neg.json", &fixtures::negative_block(2))),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_error(&out)["code"], "Precondition");
}

#[test]
fn ledger_for_type_iii() {
    let out = run(&["ledger", "--weight", "3", "--type", "III"]);
    let l: TwistLedger = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(l.twist0, vec![-1, -1, 0, 0]);
    assert_eq!(l.twist1, vec![0, 0, 0, 1]);
}

#[test]
fn decomposed_case_vanishes() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "decomposed.json",
        r#"{"g":0,"a":"0","b":"-1","counts":{"II":2,"IV":1}}"#,
    );
    let out = run(&[
        "hodge",
        "--weight",
        "3",
        "--input",
        s(&input),
        "--decomposed",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let h: HodgeNumbers = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(h.total, 0);
    assert_eq!(h.components.len(), 5);
    assert!(h.components.iter().all(|c| c.h == 0));

    let text = run(&[
        "--format",
        "text",
        "hodge",
        "--weight",
        "3",
        "--input",
        s(&input),
        "--decomposed",
    ]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("total 0"));
}

#[test]
fn hodge_errors_are_structured() {
    let dir = TempDir::new().unwrap();
    let neg = write(&dir, "neg.json", r#"{"g":0,"a":1,"counts":{"I":3}}"#);
    let out = run(&["hodge", "--weight", "1", "--input", s(&neg)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_error(&out)["code"], "InconsistentInput");

    let gate = write(
        &dir,
        "gate.json",
        r#"{"g":0,"a":"0","b":"0","counts":{"II":3}}"#,
    );
    let out = run(&[
        "hodge",
        "--weight",
        "3",
        "--input",
        s(&gate),
        "--decomposed",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_error(&out)["code"], "Precondition");

    let unknown = write(
        &dir,
        "unk.json",
        r#"{"g":0,"a":0,"counts":{"II":1},"extra":1}"#,
    );
    let out = run(&["hodge", "--weight", "3", "--input", s(&unknown)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn family_report_and_base_change_round_trip() {
    let dir = TempDir::new().unwrap();
    let quintic = write_json(&dir, "quintic.json", &fixtures::quintic());
    let out = run(&["hodge-family", "--family", s(&quintic)]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: FamilyReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.resolution.counts.n_iii, 1);

    let out = run(&[
        "base-change",
        "--family",
        s(&quintic),
        "--e",
        "5",
        "--a",
        "0",
        "--b",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let pulled: FamilyDescriptor = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(pulled.points.len(), 7);
    assert_eq!(pulled.a, Some(0));

    let path = write(&dir, "pulled.json", &String::from_utf8_lossy(&out.stdout));
    let out = run(&["hodge-family", "--family", s(&path)]);
    assert_eq!(out.status.code(), Some(0));
    let report: FamilyReport = serde_json::from_slice(&out.stdout).unwrap();
    let c = report.resolution.counts;
    assert_eq!((c.n_i, c.n_iii), (5, 1));
}

#[test]
fn family_schema_errors() {
    let dir = TempDir::new().unwrap();
    let both = write(
        &dir,
        "both.json",
        r#"{"weight":3,"genus":0,"points":[{"label":"0","type":"I","matrix":{"n":1,"entries":[["1"]]}}]}"#,
    );
    let out = run(&["hodge-family", "--family", s(&both)]);
    assert_eq!(out.status.code(), Some(1));

    let bad_point = write(
        &dir,
        "bad.json",
        r#"{"weight":1,"genus":0,"points":[{"label":"p","matrix":{"n":2,"entries":[["2","0"],["0","1"]]}}]}"#,
    );
    let out = run(&["hodge-family", "--family", s(&bad_point)]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_error(&out);
    assert_eq!(err["code"], "NotQuasiUnipotent");
    assert_eq!(err["label"], "p");
}

#[test]
fn table_check_flags_one_row() {
    let out = run(&["table-check"]);
    assert_eq!(out.status.code(), Some(2));
    let report: AuditReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.summary.flagged, 1);
    let flagged: Vec<_> = report.flagged().collect();
    assert_eq!((flagged[0].model_id, flagged[0].e), (1, 10));

    let text = run(&["table-check", "--format", "text", "--kmax", "2"]);
    assert_eq!(text.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&text.stdout).contains("FLAG"));
}

#[test]
fn table_check_on_custom_files() {
    let dir = TempDir::new().unwrap();
    let good = write(
        &dir,
        "good.json",
        r#"{"models":[{"id":3,"model":"P(1,1,1,1,1,1,1,1)[2,2,2,2]","t_infty":"1/2",
            "rows":[{"e":1,"h1":0,"h40":0,"h31":0,"h22":0,"a":0,"b":0}]}]}"#,
    );
    let out = run(&["table-check", "--file", s(&good)]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let bad = write(
        &dir,
        "bad.json",
        r#"{"models":[{"id":1,"rows":[{"e":1}]}]}"#,
    );
    let out = run(&["table-check", "--file", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_error(&out);
    assert_eq!(err["code"], "Schema", "{err}");
}

#[test]
fn arakelov_and_parabolic_degree() {
    let out = run(&[
        "arakelov",
        "--k",
        "1",
        "--genus",
        "0",
        "--num-d",
        "4",
        "--ranks",
        "1",
        "--kernels",
        "0",
        "--degree",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["bound"], "1");
    assert_eq!(v["satisfied"], true);

    let out = run(&[
        "arakelov",
        "--k",
        "2",
        "--genus",
        "0",
        "--num-d",
        "4",
        "--ranks",
        "1",
        "--kernels",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&[
        "parabolic-degree",
        "--deg",
        "-1",
        "--point",
        "1/2:2",
        "--point",
        "1/3,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["degree"], "1/3");

    let out = run(&["parabolic-degree", "--deg", "0", "--point", "1:1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["parabolic-degree", "--deg", "0", "--point", "1/2:x"]);
    assert_eq!(stderr_error(&out)["code"], "Parse");
}

#[test]
fn output_is_deterministic() {
    let a = run(&["table-check"]).stdout;
    let b = run(&["table-check"]).stdout;
    assert_eq!(a, b);
}
