//! Acceptance suite for the command-line tool: the golden corpus covers
//! every subcommand, outputs must be byte-identical across consecutive
//! runs, and the canonical JSON fixtures must round-trip bit-exactly.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plucker"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("binary must run")
}

/// Every subcommand over the golden corpus, twice, byte for byte.
#[test]
fn c10_golden_corpus_determinism() {
    let invocations: &[&[&str]] = &[
        &["grassmann", "--vectors", "basis2.csv"],
        &["grassmann", "--vectors", "vecs_r5.csv"],
        &["grassmann", "--vectors", "vecs_r5.csv", "--format", "dense"],
        &["wedge", "mat_a.json", "mat_b.json"],
        &["antisym", "tensor3.json"],
        &["antisym", "tensor3.json", "--format", "sparse"],
        &["plucker-line", "x_r4.csv", "y_r4.csv"],
        &["plucker-equiv", "p2.json", "p1.json"],
        &["plane", "points3.csv"],
        &["intersect-planes", "planes3.csv"],
        &["epipolar", "fmat.csv", "ximg.csv", "xpimg.csv"],
        &["polytope-check", "polytope.json", "px.csv"],
        &["contract", "ppow.json", "mat_b.json"],
        &["contract", "mat_a.json", "mat_b.json", "--mode", "2"],
        &["eval-poly", "gr.json", "x5.csv"],
    ];
    for args in invocations {
        let first = run(args);
        assert!(
            first.status.success(),
            "{:?} failed: {}",
            args,
            String::from_utf8_lossy(&first.stderr)
        );
        assert!(!first.stdout.is_empty(), "{:?} produced no output", args);
        let second = run(args);
        assert_eq!(
            first.stdout, second.stdout,
            "{:?} is not byte-deterministic",
            args
        );
    }
    println!(
        "criterion 10a (golden corpus, {} invocations over every subcommand, byte-identical reruns): PASS",
        invocations.len()
    );
}

/// Canonical JSON fixtures round-trip bit-exactly; CSV fixtures are stable
/// after one canonicalization pass.
#[test]
fn c10_round_trips_are_bit_exact() {
    use plucker::io;

    let dir = fixtures();
    let read = |name: &str| std::fs::read_to_string(dir.join(name)).unwrap();

    for name in ["mat_a.json", "mat_b.json", "tensor3.json", "ppow.json"] {
        let text = read(name);
        let parsed = io::parse_dense(&text).unwrap();
        assert_eq!(io::dense_to_json(&parsed) + "\n", text, "{}", name);
    }
    {
        let text = read("gr.json");
        let parsed = io::parse_antisym(&text).unwrap();
        assert_eq!(io::antisym_to_json(&parsed) + "\n", text, "gr.json");
    }
    for name in ["p1.json", "p2.json", "p3.json"] {
        let text = read(name);
        let parsed = io::parse_plucker(&text).unwrap();
        assert_eq!(io::plucker_to_json(&parsed) + "\n", text, "{}", name);
    }
    {
        let text = read("polytope.json");
        let parsed = io::parse_polytope(&text).unwrap();
        assert_eq!(io::polytope_to_json(&parsed) + "\n", text, "polytope.json");
    }
    for name in [
        "basis2.csv",
        "vecs_r5.csv",
        "x5.csv",
        "x_r4.csv",
        "y_r4.csv",
        "points3.csv",
        "planes3.csv",
        "fmat.csv",
        "ximg.csv",
        "xpimg.csv",
        "px.csv",
    ] {
        let rows = io::parse_csv(&read(name)).unwrap();
        let canonical = io::rows_to_csv(&rows);
        let reparsed = io::parse_csv(&canonical).unwrap();
        assert_eq!(rows, reparsed, "{}", name);
        assert_eq!(io::rows_to_csv(&reparsed), canonical, "{}", name);
    }
    println!("criterion 10b (parse/serialize round trips bit-exact): PASS");
}
