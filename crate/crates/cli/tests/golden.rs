use std::path::PathBuf;
use std::process::Command;

use crsym_cli::report::Report;
use crsym_cli::run;

/// The six reference surfaces.
pub const SURFACES: [(&str, &str); 6] = [
    ("o4", "z^2*zb^2"),
    ("o4_harmonic", "z^2*zb^2 + z^5 + zb^5"),
    ("k4_l1", "z^3*zb + z*zb^3"),
    ("k5_l1", "z^4*zb + z*zb^4"),
    ("weakly_spherical", "z^2*zb^2 + z^5*zb^5"),
    ("e5", "z^2*zb^2 + z^6*zb^2 + z^2*zb^6"),
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn args(cmd: &str, expr: &str) -> Vec<String> {
    ["crsym", cmd, "--surface", expr, "--format", "json"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

fn check(name: &str, cmd: &str, expr: &str) {
    let first = run(args(cmd, expr));
    let second = run(args(cmd, expr));
    assert_eq!(first, second, "{name} {cmd}: output differs between runs");

    let bin = Command::new(env!("CARGO_BIN_EXE_crsym"))
        .args(&args(cmd, expr)[1..])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(bin.stdout).unwrap(), first.stdout);
    assert_eq!(bin.status.code(), Some(first.code));

    let report: Report = serde_json::from_str(&first.stdout).unwrap();
    assert_eq!(
        report.to_json(),
        first.stdout,
        "{name} {cmd}: report does not round trip"
    );

    let path = golden_dir().join(format!("{name}.{cmd}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &first.stdout).unwrap();
    }
    let want = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("missing golden file {}: {e}", path.display()));
    assert_eq!(
        first.stdout,
        want,
        "{name} {cmd}: differs from {}",
        path.display()
    );
}

#[test]
fn classify_reports_match_golden_files() {
    for (name, expr) in SURFACES {
        check(name, "classify", expr);
    }
}

#[test]
fn normalize_reports_match_golden_files() {
    for (name, expr) in SURFACES {
        check(name, "normalize", expr);
    }
}

#[test]
fn analyze_reports_match_golden_files() {
    for (name, expr) in SURFACES {
        check(name, "analyze", expr);
    }
}
