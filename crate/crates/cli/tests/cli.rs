use std::path::PathBuf;
use std::process::{Command, Output};

use graded_centre::centre::CentreRecord;
use graded_centre::effectlang::ReorderEntry;
use graded_centre::report::Report;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

fn gcentre(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcentre"))
        .args(args)
        .env_remove("GCENTRE_FIXTURES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn pomonoid_centre_of_multi_error() {
    let o = gcentre(&["pomonoid", "centre", &fixture("multi_error.pom")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{t, e}\n");
}

#[test]
fn pomonoid_centre_of_left_zero_monoid_is_trivial() {
    let o = gcentre(&["pomonoid", "centre", &fixture("left_zero.pom"), "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["centre"], serde_json::json!(["1"]));
}

#[test]
fn exit_codes() {
    assert_eq!(gcentre(&["pomonoid", "check", &fixture("multi_error.pom")]).status.code(), Some(0));
    let broken = gcentre(&["pomonoid", "check", &fixture("broken_assoc.pom")]);
    assert_eq!(broken.status.code(), Some(1));
    assert!(stdout(&broken).contains("associativity"));
    let missing = gcentre(&["pomonoid", "check", "no/such/file.pom"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("file not found"));
    assert_eq!(gcentre(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gcentre(&["monad", "laws", "--monad", "no_such_monad"]).status.code(), Some(2));
    assert_eq!(gcentre(&["monad", "laws"]).status.code(), Some(2));
}

#[test]
fn malformed_pomonoid_is_an_input_error() {
    let dir = std::env::temp_dir().join(format!("gcentre-malformed-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("short.pom");
    std::fs::write(&path, "elements a b\nunit a\nmul a a a\n").unwrap();
    let o = gcentre(&["pomonoid", "check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing table entry"), "{}", stderr(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn identity_monad_laws_pass() {
    let o = gcentre(&["monad", "laws", "--monad", "identity", "--pomonoid", &fixture("multi_error.pom"), "--max-set-size", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn multi_error_writer_is_not_commutative() {
    let o = gcentre(&["monad", "commutative", "--monad", "multi_error_writer", "--max-set-size", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("grades=[wa,wb]"), "{}", stdout(&o));
}

#[test]
fn json_reports_round_trip() {
    let o = gcentre(&["monad", "commutative", "--monad", "multi_error_writer", "--max-set-size", "1", "--json"]);
    let text = stdout(&o);
    let line = text.lines().next().unwrap();
    let r: Report = serde_json::from_str(line).unwrap();
    assert!(!r.passed());
    assert_eq!(serde_json::to_string(&r).unwrap(), line);
}

#[test]
fn centre_records_filter_by_grade_and_size() {
    let o = gcentre(&["monad", "centre", "--monad", "multi_error_writer", "--grade", "t", "--set-size", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let recs: Vec<CentreRecord> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 1);
    assert_eq!((recs[0].carrier_size, recs[0].centre_size), (2, 2));
    let bad = gcentre(&["monad", "centre", "--monad", "multi_error_writer", "--grade", "wa"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn centre_inclusion_is_a_morphism() {
    let o = gcentre(&["monad", "morphism", "--from", "centre:multi_error_writer", "--to", "multi_error_writer", "--max-set-size", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn centrality_verdicts() {
    let k = ["--max-set-size", "2"];
    let both_true = gcentre(&[&["monad", "centrality", "--from", "centre:multi_error_writer", "--to", "multi_error_writer"][..], &k].concat());
    assert_eq!(both_true.status.code(), Some(0));
    assert!(stdout(&both_true).contains("condition 1: true, condition 2: true"));
    let both_false = gcentre(&[&["monad", "centrality", "--from", "regrade:bool_writer_pair", "--to", "bool_writer_pair"][..], &k].concat());
    assert_eq!(both_false.status.code(), Some(1));
    assert!(stdout(&both_false).contains("condition 1: false, condition 2: false"));
}

#[test]
fn duoid_files() {
    assert_eq!(gcentre(&["duoid", "check", &fixture("bool_degenerate.duo")]).status.code(), Some(0));
    let o = gcentre(&["duoid", "check", &fixture("noncommutative_par.duo")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("par-commutative"));
    assert_eq!(gcentre(&["duoid", "check", &fixture("multi_error.pom")]).status.code(), Some(2));
    assert_eq!(gcentre(&["bimonoid", "check", &fixture("absorbing_top.bim")]).status.code(), Some(0));
    let top = gcentre(&["bimonoid", "from-top", &fixture("multi_error_top.pom"), "--top", "e"]);
    assert_eq!(top.status.code(), Some(0));
    assert!(stdout(&top).contains("op2 wa wb e"));
    let not_top = gcentre(&["bimonoid", "from-top", &fixture("multi_error.pom"), "--top", "e"]);
    assert_eq!(not_top.status.code(), Some(1));
}

#[test]
fn duoidal_writer_over_one_letter() {
    let o = gcentre(&["duoidal", "check", "--monad", "language_writer", "--alphabet", "a", "--cap", "2", "--max-set-size", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn duoidal_writer_over_two_letters_fails_interchange() {
    let o = gcentre(&["duoidal", "check", "--monad", "language_writer", "--alphabet", "ab", "--cap", "2", "--max-set-size", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness duoidal-main"));
}

fn verdicts(out: &str) -> Vec<String> {
    out.lines()
        .map(|l| serde_json::from_str::<ReorderEntry>(l).unwrap())
        .map(|e| format!("{},{}:{}", e.a, e.b, e.verdict))
        .collect()
}

#[test]
fn analyzer_on_bool_program() {
    let (prog, pom, monoid) = (fixture("bool_order.eff"), fixture("bool.pom"), fixture("multi_error.pom"));
    let o = gcentre(&["analyze", &prog, "--pomonoid", &pom, "--monad", "bool_writer_pair", "--monoid", &monoid, "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(verdicts(&stdout(&o)), ["tt,ff:FREE", "ff,tt:FREE", "tt,tt:FREE", "ff,ff:FORCED"]);
    let o = gcentre(&["analyze", &prog, "--pomonoid", &pom, "--json"]);
    assert_eq!(verdicts(&stdout(&o)), ["tt,ff:FREE", "ff,tt:FREE", "tt,tt:FREE", "ff,ff:FREE"]);
}

#[test]
fn analyzer_reports_positions_and_grading_mismatch() {
    let dir = std::env::temp_dir().join(format!("gcentre-analyze-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.eff");
    std::fs::write(&path, "prim f ! tt\nmain = op+(f(1) f(2))\n").unwrap();
    let o = gcentre(&["analyze", path.to_str().unwrap(), "--pomonoid", &fixture("bool.pom")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("2:17"), "{}", stderr(&o));
    let o = gcentre(&["analyze", &fixture("warnings.eff"), "--pomonoid", &fixture("multi_error.pom"), "--monad", "bool_writer_pair"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fixture_directory_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_gcentre"))
        .args(["pomonoid", "centre", "multi_error.pom"])
        .env("GCENTRE_FIXTURES", fixtures())
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "{t, e}\n");
}

#[test]
fn examples_list_names_builtins_and_fixtures() {
    let o = Command::new(env!("CARGO_BIN_EXE_gcentre"))
        .args(["examples", "list"])
        .env("GCENTRE_FIXTURES", fixtures())
        .output()
        .unwrap();
    let out = stdout(&o);
    for name in ["identity", "multi_error_writer", "bool_writer_pair", "monoid_writer", "language_writer"] {
        assert!(out.contains(name), "{out}");
    }
    assert!(out.contains("bool_order.eff"));
}

#[test]
fn output_is_deterministic() {
    let args = ["monad", "centre", "--monad", "multi_error_writer", "--max-set-size", "2"];
    assert_eq!(gcentre(&args).stdout, gcentre(&args).stdout);
}
