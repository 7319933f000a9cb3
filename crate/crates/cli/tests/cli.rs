use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use twist_core::dynamics::{scramble, PuzzleState};
use twist_core::presets;

fn twist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn preset_round_trips_through_validate() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("theta5.json");
    assert_eq!(code(&twist(&["preset", "theta5", "--out", s(&f)])), 0);
    let out = twist(&["validate", s(&f)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("\"simple_collapse_class\": \"Theta5\""));
}

#[test]
fn classify_fifteen_plus_four() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.json", &presets::fifteen_plus_four().to_json());
    let out = twist(&["classify", s(&f)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("case: TwistBipartiteParity"), "{text}");
    assert!(text.contains("order: "));
    assert!(text.contains("certificates:"));
}

#[test]
fn classify_json_is_stable() {
    let a = twist(&["classify", "preset:theta7", "--json"]);
    let b = twist(&["classify", "preset:theta7", "--json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["case"], "Theta7Plain");
    assert_eq!(v["order"], "120");
}

#[test]
fn check_exit_codes() {
    let g = presets::fifteen_plus_four();
    let dir = tempfile::tempdir().unwrap();
    let gf = write(dir.path(), "g.json", &g.to_json());
    let home = g.default_home();
    let solved = PuzzleState::solved(&g, home);
    let tile = (0..g.vertex_count()).find(|&v| v != home).unwrap();

    let rotated = solved.rotate_tile(&g, tile, 1).unwrap();
    let rf = write(dir.path(), "rotated.json", &rotated.to_json(&g));
    assert_eq!(code(&twist(&["check", s(&gf), s(&rf)])), 1);

    let scrambled = scramble(&g, &solved, 60, 9).unwrap();
    let sf = write(dir.path(), "scrambled.json", &scrambled.to_json(&g));
    assert_eq!(code(&twist(&["check", s(&gf), s(&sf)])), 0);

    let bad = write(dir.path(), "bad.json", "{\"format\": \"twiststate/1\"}");
    assert_eq!(code(&twist(&["check", s(&gf), s(&bad)])), 2);
    assert_eq!(code(&twist(&["check", s(&gf), "/no/such/file"])), 2);
}

#[test]
fn usage_errors_exit_2() {
    for args in [&["frobnicate"][..], &["classify", "--nope", "x"], &[]] {
        let out = twist(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"), "{args:?}");
    }
}

#[test]
fn solve_scramble_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = twist(&["scramble", "preset:figure8", "--steps", "9", "--seed", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(out.stdout, twist(&["scramble", "preset:figure8", "--steps", "9", "--seed", "4"]).stdout);
    let sf = write(dir.path(), "s.json", &stdout(&out));
    let solved = twist(&["solve", "preset:figure8", s(&sf)]);
    assert_eq!(code(&solved), 0);
    let v: serde_json::Value = serde_json::from_slice(&solved.stdout).unwrap();
    assert_eq!(v["solvable"], true);

    let verify = twist(&["verify", "preset:k4", "--cap", "100000"]);
    assert_eq!(code(&verify), 0);
    let undecided = twist(&["enumerate", "preset:fifteen_plus_four", "--cap", "1000"]);
    assert_eq!(code(&undecided), 3);
}
