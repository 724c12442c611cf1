use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;

const SL2: &str = "type: A\nn0: 2\ntail: periodic (2,0,0)\n";
const SPARSE: &str = "type: A\nn0: 2\ntail: proportional (2,0,1)\n";
const SO2: &str = "type: O\nn0: 4\ntail: periodic (2,0,0)\n";
const SP2: &str = "type: C\nn0: 2\ntail: periodic (2,0,0)\n";
const SL3: &str = "type: A\nn0: 3\ntail: periodic (3,0,0)\n";
const STRONG_WIDE: &str =
    "type: A\nS: default 1\nC: default 1\ndensity: pure\nsymmetry: strongly-non-symmetric\ndelta: 1\nsigma: [1/4,1/2]\n";
const STRONG_POINT: &str =
    "type: A\nS: default 1\nC: default 1\ndensity: pure\nsymmetry: strongly-non-symmetric\ndelta: 1\nsigma: 1/3\n";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn dla(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_dla"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn workspace() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("a.dla", SL2),
        ("b.dla", SPARSE),
        ("so2inf.dla", SO2),
        ("sp2inf.dla", SP2),
        ("sl3inf.dla", SL3),
        ("wide.dla", STRONG_WIDE),
        ("point.dla", STRONG_POINT),
    ] {
        std::fs::write(dir.path().join(name), text).unwrap();
    }
    dir
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn embed_prints_a_verified_diagram() {
    let dir = workspace();
    let r = dla(dir.path(), &["embed", "a.dla", "b.dla", "--witness-depth", "3"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.starts_with("RESULT: YES\n"));
    assert!(r.stdout.contains("COND witness PASS"));
    assert!(r.stdout.contains("LEVEL 0 2 4 4 2\nLEVEL 1 3 4 4 22\n"));
}

#[test]
fn embed_writes_the_witness_file() {
    let dir = workspace();
    let r = dla(dir.path(), &["embed", "a.dla", "b.dla", "--out", "w.txt"]);
    assert_eq!(r.code, 0);
    let check = dla(dir.path(), &["check", "w.txt"]);
    assert_eq!(check.code, 0, "{}", check.stdout);
}

#[test]
fn isomorphism_exit_codes() {
    let dir = workspace();
    let yes = dla(dir.path(), &["iso", "so2inf.dla", "sp2inf.dla"]);
    assert_eq!(yes.code, 0, "{}", yes.stdout);
    let no = dla(dir.path(), &["iso", "a.dla", "sl3inf.dla"]);
    assert_eq!(no.code, 1);
    assert!(no.stdout.contains("COND A2 FAIL"));
    let unknown = dla(dir.path(), &["embed", "wide.dla", "point.dla"]);
    assert_eq!(unknown.code, 2, "{}", unknown.stdout);
    assert!(unknown.stdout.starts_with("RESULT: UNKNOWN\n"));
}

#[test]
fn inline_literals_and_equivalence() {
    let dir = workspace();
    let r = dla(dir.path(), &["equiv", "a.dla", "type: A;n0: 4;tail: periodic (4,0,0)"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    let r = dla(dir.path(), &["equiv", "a.dla", "b.dla"]);
    assert_eq!(r.code, 1);
}

#[test]
fn triangle_command() {
    let dir = workspace();
    let r = dla(dir.path(), &["triangle", "--q", "4", "--target", "2^inf", "--depth", "4", "--out", "t.txt"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.starts_with("RESULT: VALID\n"));
    assert_eq!(r.stdout.lines().filter(|l| l.starts_with("ROW ")).count(), 5);
    assert_eq!(dla(dir.path(), &["check", "t.txt"]).code, 0);

    let r = dla(dir.path(), &["triangle", "--constant", "3", "--depth", "2"]);
    assert!(r.stdout.contains("ROW 2 2 1 5\n"), "{}", r.stdout);

    let small = dla(dir.path(), &["triangle", "--target", "2^3", "--depth", "2"]);
    assert_eq!(small.code, 1, "{}", small.stdout);
    let bad_q = dla(dir.path(), &["triangle", "--q", "3", "--target", "2^inf"]);
    assert_eq!(bad_q.code, 3);
}

#[test]
fn diagram_round_trip_and_tampering() {
    let dir = workspace();
    let r = dla(dir.path(), &["diagram", "a.dla", "b.dla", "--depth", "4", "--out", "d.txt"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    let check = dla(dir.path(), &["check", "d.txt"]);
    assert_eq!(check.code, 0, "{}", check.stdout);

    let text = std::fs::read_to_string(path(&dir, "d.txt")).unwrap();
    std::fs::write(path(&dir, "bad.txt"), text.replace("level 0 2 4 4 2", "level 0 2 4 4 1")).unwrap();
    let check = dla(dir.path(), &["check", "bad.txt"]);
    assert_eq!(check.code, 1);
    assert!(check.stdout.contains("COND verify FAIL"));

    let not = dla(dir.path(), &["diagram", "b.dla", "a.dla"]);
    assert_eq!(not.code, 1);
}

#[test]
fn reports_are_deterministic() {
    let dir = workspace();
    let args = ["embed", "a.dla", "b.dla", "--trace"];
    let first = dla(dir.path(), &args);
    let second = dla(dir.path(), &args);
    assert_eq!(first.stdout, second.stdout);
    assert!(first.stdout.contains("TRACE first.S: 2^inf"));
}

#[test]
fn key_value_output_mirrors_the_report() {
    let dir = workspace();
    let r = dla(dir.path(), &["iso", "a.dla", "sl3inf.dla", "--kv"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("result=NO\nexit=1\n"));
    assert!(r.stdout.contains("cond.A2.status=FAIL\n"));
    assert!(r.stdout.contains("precision_used=0\n"));
    let r = dla(dir.path(), &["diagram", "a.dla", "b.dla", "--depth", "2", "--kv"]);
    assert!(r.stdout.contains("level.1=1 3 4 4 22\n"), "{}", r.stdout);
}

#[test]
fn parse_errors_name_line_and_column() {
    let dir = workspace();
    std::fs::write(path(&dir, "bad.dla"), "type: A\nn0: x\n").unwrap();
    let r = dla(dir.path(), &["profile", "bad.dla"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("line 2, column 5"), "{}", r.stderr);
    let r = dla(dir.path(), &["iso", "a.dla", "b.dla", "--precision", "1/0"]);
    assert_eq!(r.code, 3);
    assert_eq!(dla(dir.path(), &["frobnicate"]).code, 3);
    assert_eq!(dla(dir.path(), &["--help"]).code, 0);
    assert_eq!(dla(dir.path(), &["check", "missing.txt"]).code, 4);
}

#[test]
fn profile_and_universality() {
    let dir = workspace();
    let r = dla(dir.path(), &["profile", "b.dla"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("FIELD density: sparse\n"), "{}", r.stdout);
    let universal = "type: A;S: default inf;C: default inf;density: sparse;symmetry: one-sided;delta: 0";
    assert_eq!(dla(dir.path(), &["universal", universal]).code, 0);
    assert_eq!(dla(dir.path(), &["universal", "b.dla"]).code, 1);
}

#[test]
fn branching_subcommands() {
    let dir = workspace();
    let r = dla(dir.path(), &["branch", "gt", "[2,1,0]"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("COND oracle PASS"));
    assert_eq!(r.stdout.lines().filter(|l| l.starts_with("COMPONENT")).count(), 4);
    let r = dla(dir.path(), &["branch", "diag", "[1,1,0,0]", "--copies", "2", "--rank", "2"]);
    assert!(r.stdout.contains("COMPONENT [1,1] 3 1\nCOMPONENT [2,0] 1 3\n"), "{}", r.stdout);
    let value = |args: &[&str]| dla(dir.path(), args).stdout.lines().find_map(|l| l.strip_prefix("VALUE ").map(String::from));
    assert_eq!(value(&["branch", "lr", "[1,1,0]", "[1,0,0]", "[2,1,0]"]).as_deref(), Some("1"));
    assert_eq!(value(&["branch", "dim", "[2,1,0]"]).as_deref(), Some("8"));
    assert_eq!(value(&["branch", "index", "[2,0]"]).as_deref(), Some("4"));
    assert_eq!(dla(dir.path(), &["branch", "gt", "[0,1]"]).code, 3);
}

#[test]
fn library_entry_point_matches_binary() {
    let dir = workspace();
    let a = path(&dir, "a.dla");
    let b = path(&dir, "b.dla");
    let lib = dla_cli::run(["dla", "embed", a.to_str().unwrap(), b.to_str().unwrap()]);
    let bin = dla(dir.path(), &["embed", "a.dla", "b.dla"]);
    assert_eq!(lib.code, bin.code);
    assert_eq!(lib.stdout, bin.stdout);
}
