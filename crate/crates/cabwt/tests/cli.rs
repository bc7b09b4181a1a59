//! End-to-end tests of the `cabwt` binary: file round trips, golden stdout
//! lines, exit codes, and byte-stable containers.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cabwt"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn cabwt")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim_end().to_string()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &TempDir, name: &str, bytes: &[u8]) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, bytes).unwrap();
    p
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Local k=1 scheme of the worked example, in the textual format.
const LOCAL_SCHEME: &str = "kind=local k=1\nalphabet=abc\ndefault=abc\nctx:=bca\nctx:a=bac\n";
/// Explicit scheme of the worked example.
const EXPLICIT_SCHEME: &str =
    "kind=explicit\nalphabet=abc\ndefault=abc\nctx:=bac\nctx:a=cab\nctx:aa=bac\nctx:aaba=acb\n";

#[test]
fn transform_examples_through_files() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.txt", b"aabaaabac");
    let out_path = dir.path().join("out.bwtv");

    // classic transform with the input's own terminator
    let out = run(&[
        "transform",
        "--input",
        p(&input),
        "--scheme",
        "bwt",
        "--no-terminator",
        "--output",
        p(&out_path),
        "--verify",
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    assert_eq!(stdout(&out), "n=9 I=2 runs=5");
    let container =
        cabwt::container::TransformContainer::from_bytes(&std::fs::read(&out_path).unwrap())
            .unwrap();
    assert_eq!(container.payload, b"bcaaabaaa");
    assert_eq!(container.primary, 2);

    // local scheme from a file
    let scheme = write(&dir, "local.scheme", LOCAL_SCHEME.as_bytes());
    let out = run(&[
        "transform",
        "--input",
        p(&input),
        "--scheme",
        p(&scheme),
        "--no-terminator",
        "--output",
        p(&out_path),
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    assert_eq!(stdout(&out), "n=9 I=6 runs=4");
    let container =
        cabwt::container::TransformContainer::from_bytes(&std::fs::read(&out_path).unwrap())
            .unwrap();
    assert_eq!(container.payload, b"aaaaacabb");
}

#[test]
fn count_and_locate_golden_lines() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.txt", b"aabaaabac");
    let explicit = write(&dir, "explicit.scheme", EXPLICIT_SCHEME.as_bytes());
    let local = write(&dir, "local.scheme", LOCAL_SCHEME.as_bytes());
    let exp_idx = dir.path().join("exp.bwtv");
    let loc_idx = dir.path().join("loc.bwtv");
    assert_eq!(
        code(&run(&[
            "transform",
            "--input",
            p(&input),
            "--scheme",
            p(&explicit),
            "--no-terminator",
            "--output",
            p(&exp_idx),
        ])),
        0
    );
    assert_eq!(
        code(&run(&[
            "transform",
            "--input",
            p(&input),
            "--scheme",
            p(&local),
            "--no-terminator",
            "--output",
            p(&loc_idx),
        ])),
        0
    );

    let out = run(&["count", "--index", p(&exp_idx), "--pattern", "aba"]);
    assert_eq!((code(&out), stdout(&out)), (0, "7 2".to_string()));
    let out = run(&["count", "--index", p(&exp_idx), "--pattern", "cc"]);
    assert_eq!((code(&out), stdout(&out)), (0, "0 0".to_string()));

    let out = run(&["locate", "--index", p(&loc_idx), "--pattern", "c"]);
    assert_eq!((code(&out), stdout(&out)), (0, "3 1 9".to_string()));
    let out = run(&["locate", "--index", p(&loc_idx), "--pattern", "aab"]);
    assert_eq!((code(&out), stdout(&out)), (0, "6 2 5".to_string()));
    // --limit walks the remaining rows of the range
    let out = run(&[
        "locate",
        "--index",
        p(&loc_idx),
        "--pattern",
        "aa",
        "--limit",
        "9",
    ]);
    assert_eq!((code(&out), stdout(&out)), (0, "6 3 4 1 5".to_string()));
    // bytes outside the alphabet never occur: reported as absent
    let out = run(&["count", "--index", p(&exp_idx), "--pattern", "zz"]);
    assert_eq!((code(&out), stdout(&out)), (0, "0 0".to_string()));
    let out = run(&["locate", "--index", p(&loc_idx), "--pattern", "zz"]);
    assert_eq!((code(&out), stdout(&out)), (0, "0 0".to_string()));
    let out = run(&["locate", "--index", p(&loc_idx), "--pattern", "cb"]);
    assert_eq!((code(&out), stdout(&out)), (0, "0 0".to_string()));

    // locate on a non-local scheme
    let out = run(&["locate", "--index", p(&exp_idx), "--pattern", "aba"]);
    assert_eq!(code(&out), 6);
}

#[test]
fn invert_round_trips_binary_input() {
    let dir = TempDir::new().unwrap();
    let bytes = [0x07u8, 0x41, 0x80, 0xfe];
    let data: Vec<u8> = (0..1200u32)
        .map(|i| bytes[(i.wrapping_mul(2654435761) >> 7) as usize % 4])
        .collect();
    let input = write(&dir, "in.bin", &data);
    let idx = dir.path().join("idx.bwtv");
    let back = dir.path().join("back.bin");
    for preset in ["bwt", "abwt", "pm-parity", "posmod:3"] {
        let out = run(&[
            "transform",
            "--input",
            p(&input),
            "--scheme",
            preset,
            "--output",
            p(&idx),
        ]);
        assert_eq!(code(&out), 0, "{preset}: {out:?}");
        let out = run(&["invert", "--input", p(&idx), "--output", p(&back)]);
        assert_eq!(code(&out), 0, "{preset}: {out:?}");
        assert_eq!(std::fs::read(&back).unwrap(), data, "{preset}");
    }
    // explicit engine choices on the pm container
    let out = run(&[
        "transform",
        "--input",
        p(&input),
        "--scheme",
        "pm-parity",
        "--output",
        p(&idx),
    ]);
    assert_eq!(code(&out), 0);
    for engine in ["general", "pm"] {
        let out = run(&[
            "invert",
            "--input",
            p(&idx),
            "--engine",
            engine,
            "--output",
            p(&back),
        ]);
        assert_eq!(code(&out), 0, "{engine}: {out:?}");
        assert_eq!(std::fs::read(&back).unwrap(), data, "{engine}");
    }
}

#[test]
fn stats_reports_runs_and_histogram() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.txt", b"aabaaabac");
    let local = write(&dir, "local.scheme", LOCAL_SCHEME.as_bytes());
    let idx = dir.path().join("idx.bwtv");
    assert_eq!(
        code(&run(&[
            "transform",
            "--input",
            p(&input),
            "--scheme",
            p(&local),
            "--no-terminator",
            "--output",
            p(&idx),
        ])),
        0
    );
    let out = run(&["stats", "--input", p(&idx)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for line in [
        "runs=4", "n=9", "sigma=3", "hist:a=6", "hist:b=2", "hist:c=1",
    ] {
        assert!(
            text.lines().any(|l| l == line),
            "missing `{line}` in:\n{text}"
        );
    }
}

#[test]
fn minruns_reports_and_emits_replayable_scheme() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.txt", b"aaab");
    let out = run(&[
        "minruns",
        "--input",
        p(&input),
        "--no-terminator",
        "--verify",
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    let text = stdout(&out);
    assert!(text.starts_with("Opt=2 runs_bwt="), "got `{text}`");
    assert!(text.lines().any(|l| l == "verify=ok"));

    let input = write(&dir, "in2.txt", b"aabaaabac");
    let scheme_path = dir.path().join("opt.scheme");
    let out = run(&[
        "minruns",
        "--input",
        p(&input),
        "--no-terminator",
        "--emit-scheme",
        p(&scheme_path),
        "--verify",
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    let report = stdout(&out);
    assert!(report.contains("runs_bwt=5"), "got `{report}`");
    let opt: usize = report
        .split_whitespace()
        .next()
        .unwrap()
        .strip_prefix("Opt=")
        .unwrap()
        .parse()
        .unwrap();

    // replay the emitted scheme through transform
    let idx = dir.path().join("idx.bwtv");
    let out = run(&[
        "transform",
        "--input",
        p(&input),
        "--scheme",
        p(&scheme_path),
        "--no-terminator",
        "--output",
        p(&idx),
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(
        stdout(&out).ends_with(&format!("runs={opt}")),
        "{}",
        stdout(&out)
    );
}

#[test]
fn exit_codes_for_error_paths() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.txt", b"");
    let out_path = dir.path().join("o.bwtv");

    // empty input
    let out = run(&[
        "transform",
        "--input",
        p(&empty),
        "--scheme",
        "bwt",
        "--output",
        p(&out_path),
    ]);
    assert_eq!(code(&out), 2);

    // non-unique terminator with --no-terminator
    let input = write(&dir, "in.txt", b"abab");
    let out = run(&[
        "transform",
        "--input",
        p(&input),
        "--scheme",
        "bwt",
        "--no-terminator",
        "--output",
        p(&out_path),
    ]);
    assert_eq!(code(&out), 4);

    // input byte outside a file scheme's alphabet
    let scheme = write(&dir, "s.scheme", LOCAL_SCHEME.as_bytes());
    let input = write(&dir, "in2.txt", b"abcz");
    let out = run(&[
        "transform",
        "--input",
        p(&input),
        "--scheme",
        p(&scheme),
        "--no-terminator",
        "--output",
        p(&out_path),
    ]);
    assert_eq!(code(&out), 3);

    // malformed container
    let junk = write(&dir, "junk.bwtv", b"not a container");
    let out = run(&["invert", "--input", p(&junk), "--output", p(&out_path)]);
    assert_eq!(code(&out), 2);

    // corrupted primary index: still in range, but the recovered text no
    // longer ends with the appended terminator
    let input = write(&dir, "in3.txt", b"aabaaaba");
    let idx = dir.path().join("idx.bwtv");
    assert_eq!(
        code(&run(&[
            "transform",
            "--input",
            p(&input),
            "--scheme",
            "bwt",
            "--output",
            p(&idx),
        ])),
        0
    );
    let mut bytes = std::fs::read(&idx).unwrap();
    let c = cabwt::container::TransformContainer::from_bytes(&bytes).unwrap();
    let scheme_len = c.scheme_text.len();
    let i_off = 10 + scheme_len;
    let old = c.primary;
    let new = if old == 1 { 2 } else { old - 1 };
    bytes[i_off..i_off + 8].copy_from_slice(&new.to_le_bytes());
    let corrupted = write(&dir, "corrupt.bwtv", &bytes);
    let back = dir.path().join("back.txt");
    let out = run(&["invert", "--input", p(&corrupted), "--output", p(&back)]);
    assert_eq!(code(&out), 5, "{out:?}");
}

#[test]
fn containers_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let data: Vec<u8> = (0..2000u32).map(|i| b'a' + (i % 3) as u8).collect();
    let input = write(&dir, "in.txt", &data);
    let o1 = dir.path().join("a.bwtv");
    let o2 = dir.path().join("b.bwtv");
    for o in [&o1, &o2] {
        assert_eq!(
            code(&run(&[
                "transform",
                "--input",
                p(&input),
                "--scheme",
                "abwt",
                "--output",
                p(o),
            ])),
            0
        );
    }
    assert_eq!(std::fs::read(&o1).unwrap(), std::fs::read(&o2).unwrap());
}
