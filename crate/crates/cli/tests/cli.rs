use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn gcdeform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcdeform")).args(args).output().expect("binary runs")
}

fn corpus(name: &str) -> String {
    let p: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(name);
    p.to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn kodaira_report_matches_golden_file() {
    let o = gcdeform(&["--preset", "kodaira", "report"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("kodaira_report.txt"));
    assert!(o.stderr.is_empty());
}

#[test]
fn machine_format_matches_golden_file_and_parses() {
    let o = gcdeform(&["--preset", "kodaira", "--format", "machine", "strata"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text, golden("kodaira_strata.json"));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["sections"][0]["name"], "type strata");
}

#[test]
fn report_is_byte_identical_across_runs() {
    let a = gcdeform(&["--input", &corpus("symplectic_ok.gcw"), "report"]);
    let b = gcdeform(&["--input", &corpus("symplectic_ok.gcw"), "report"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn type_at_a_point() {
    let o = gcdeform(&["--preset", "kodaira", "type", "--at", "t14=0,t32=1,t11=0,t22=0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("k = 2 (complex type, non-classical)"));
    let o = gcdeform(&["--preset", "kodaira", "type", "--at", "t14=0,t32=0,t11=2,t22=0"]);
    assert_eq!(stdout(&o).lines().last(), Some("k = 2 (complex type, classical complex)"));
    let o = gcdeform(&["--preset", "kodaira", "type", "--at", "t14=1,t32=0,t11=0,t22=0"]);
    assert_eq!(stdout(&o).lines().last(), Some("k = 0 (symplectic type)"));
}

#[test]
fn abelian_mc_is_empty() {
    let o = gcdeform(&["--input", &corpus("abelian_complex.gcw"), "mc"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("MC system: empty (all deformations unobstructed at this level)\n"));
}

#[test]
fn every_verb_runs_on_the_preset() {
    for verb in ["validate", "brackets", "mc", "gauge", "family", "strata", "report"] {
        let o = gcdeform(&["--preset", "kodaira", verb]);
        assert_eq!(o.status.code(), Some(0), "{verb}");
        assert!(!o.stdout.is_empty(), "{verb}");
    }
    let o = gcdeform(&["--preset", "kodaira", "family"]);
    assert!(stdout(&o).contains("free parameters: 4 (t11, t14, t22, t32)\n"));
}

#[test]
fn exit_codes_on_corpus() {
    let cases = [
        ("abelian_complex.gcw", 0),
        ("symplectic_ok.gcw", 0),
        ("conflicting_bracket.gcw", 1),
        ("non_skew_bracket.gcw", 1),
        ("unknown_name.gcw", 1),
        ("malformed_rational.gcw", 1),
        ("missing_basis.gcw", 1),
        ("partial_j.gcw", 1),
        ("mixed_structures.gcw", 1),
        ("jacobi_mutant.gcw", 2),
        ("j_not_complex.gcw", 2),
        ("symplectic_not_closed.gcw", 2),
        ("symplectic_degenerate.gcw", 2),
        ("not_isotropic.gcw", 2),
    ];
    for (file, code) in cases {
        let o = gcdeform(&["--input", &corpus(file), "report"]);
        assert_eq!(o.status.code(), Some(code), "{file}");
        if code != 0 {
            assert!(o.stdout.is_empty(), "{file}");
            assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "), "{file}");
        }
    }
}

#[test]
fn parse_errors_are_positioned_and_name_the_line() {
    let o = gcdeform(&["--input", &corpus("conflicting_bracket.gcw"), "validate"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    let o = gcdeform(&["--input", &corpus("unknown_name.gcw"), "validate"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 11: unknown basis name 'Z'"));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(gcdeform(&["--preset", "kodaira", "bogus"]).status.code(), Some(1));
    assert_eq!(gcdeform(&["report"]).status.code(), Some(1));
    assert_eq!(gcdeform(&["--input", "/nonexistent/file.gcw", "report"]).status.code(), Some(1));
    assert_eq!(gcdeform(&["--preset", "kodaira", "type", "--at", "t12=0"]).status.code(), Some(1));
    assert_eq!(gcdeform(&["--preset", "kodaira", "type", "--at", "t11=1,t14=0,t22=0,t32=0"]).status.code(), Some(2));
    assert_eq!(gcdeform(&["--help"]).status.code(), Some(0));
}
