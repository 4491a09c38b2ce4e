#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

/// (instance stem, case name, arguments before the input path, exit code,
/// writes an SVG)
pub const CASES: &[(&str, &str, &[&str], i32, bool)] = &[
    ("diamond", "draw-2", &["draw", "--slopes", "2"], 0, true),
    ("diamond", "draw-3", &["draw", "--slopes", "3"], 0, false),
    (
        "diamond",
        "dump-flow-2",
        &["dump-flow", "--slopes", "2"],
        0,
        false,
    ),
    (
        "diamond",
        "dump-distance-2",
        &["dump-distance", "--slopes", "2"],
        0,
        false,
    ),
    (
        "diamond",
        "enumerate-2",
        &["enumerate", "--slopes", "2"],
        0,
        false,
    ),
    ("diamond", "validate", &["validate"], 0, false),
    ("out-fan-3", "draw-2", &["draw", "--slopes", "2"], 1, false),
    (
        "out-fan-3",
        "draw-3",
        &["draw", "--slopes", "3", "--grid"],
        0,
        true,
    ),
    (
        "out-fan-3",
        "dump-distance-2",
        &["dump-distance", "--slopes", "2"],
        0,
        false,
    ),
    (
        "out-fan-3",
        "dump-flow-3",
        &["dump-flow", "--slopes", "3"],
        0,
        false,
    ),
    ("ladder", "draw-2", &["draw", "--slopes", "2"], 0, true),
    (
        "ladder",
        "enumerate-2",
        &["enumerate", "--slopes", "2"],
        0,
        false,
    ),
    (
        "stacked-components",
        "draw-3",
        &["draw", "--slopes", "3"],
        0,
        false,
    ),
    (
        "stacked-components",
        "enumerate-3",
        &["enumerate", "--slopes", "3"],
        0,
        false,
    ),
    ("wedge", "draw-2", &["draw", "--slopes", "2"], 0, false),
    (
        "wedge",
        "enumerate-2",
        &["enumerate", "--slopes", "2"],
        0,
        false,
    ),
    (
        "wedge",
        "enumerate-guard",
        &["enumerate", "--slopes", "2", "--max-n", "3"],
        2,
        false,
    ),
    ("long-edge", "draw-2", &["draw", "--slopes", "2"], 2, false),
    (
        "long-edge",
        "subdivide-2",
        &["draw", "--slopes", "2", "--subdivide"],
        0,
        true,
    ),
    (
        "partial-diamond",
        "extend-2",
        &["extend", "--slopes", "2"],
        0,
        true,
    ),
    (
        "partial-diamond",
        "enumerate-2",
        &["enumerate", "--slopes", "2"],
        0,
        false,
    ),
    (
        "partial-conflict",
        "extend-2",
        &["extend", "--slopes", "2"],
        1,
        false,
    ),
    (
        "partial-conflict",
        "validate-2",
        &["validate", "--slopes", "2"],
        0,
        false,
    ),
    (
        "simultaneous-trailing",
        "simultaneous-2",
        &["simultaneous", "--slopes", "2", "--trace"],
        0,
        false,
    ),
    (
        "simultaneous-trailing",
        "enumerate-2",
        &["enumerate", "--slopes", "2"],
        0,
        false,
    ),
    (
        "simultaneous-conflict",
        "simultaneous-2",
        &["simultaneous", "--slopes", "2"],
        1,
        false,
    ),
    (
        "simultaneous-conflict",
        "enumerate-2",
        &["enumerate", "--slopes", "2"],
        0,
        false,
    ),
    ("invalid-crossing", "validate", &["validate"], 2, false),
    (
        "invalid-crossing",
        "draw-2",
        &["draw", "--slopes", "2"],
        2,
        false,
    ),
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct Run {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
    pub svg: Option<Vec<u8>>,
}

pub fn run(stem: &str, args: &[&str], svg: bool) -> Run {
    let tmp = tempfile::tempdir().unwrap();
    let svg_path = tmp.path().join("out.svg");
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_levdraw"));
    cmd.args(args).env_remove("LEVDRAW_ORACLE_MAX_N");
    if svg {
        cmd.arg("--svg").arg(&svg_path);
    }
    let out = cmd
        .arg(golden_dir().join(format!("{stem}.txt")))
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: out.stdout,
        stderr: out.stderr,
        svg: svg.then(|| std::fs::read(&svg_path).unwrap()),
    }
}

/// Diagnostics mention the input path, which differs between checkouts.
pub fn portable(stderr: &[u8]) -> Vec<u8> {
    let dir = golden_dir().display().to_string();
    String::from_utf8_lossy(stderr)
        .replace(&dir, "<golden>")
        .into_bytes()
}

/// Where a case's expected output lives, by extension (`out`, `err`, `svg`).
pub fn expected_path(stem: &str, case: &str, ext: &str) -> PathBuf {
    golden_dir().join(format!("{stem}.{case}.{ext}"))
}
