use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const FULL2: &str = "alphabet 0 1\nvertex A\nedge A A 0\nedge A A 1\n";
const ZERO: &str = "range 0\n";
const SITE: &str = "range 0\nshape 0\nval 1 0.7\n";
const GOLDEN: &str = "# no two adjacent ones\nalphabet 0 1\nforbid 11\n";

fn shiftkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shiftkit"))
        .args(args)
        .env_remove("SHIFTKIT_ENUM_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gap_of_even_shift() {
    let o = shiftkit(&["gap", "--shift", "@even"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "q\t2\n");
    let o = shiftkit(&["gap", "--shift", "@periodic", "--variant", "exact"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pressure_of_full_shift_from_files() {
    let dir = TempDir::new().unwrap();
    let shift = write(&dir, "full2.shift", FULL2);
    let pot = write(&dir, "zero.pot", ZERO);
    let o = shiftkit(&["pressure", "--shift", &shift, "--potential", &pot, "--n-max", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n\tP_n\tenvelope");
    assert_eq!(lines.len(), 8);
    for (n, line) in lines[1..7].iter().enumerate() {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(cols[0], n.to_string());
        assert_eq!(cols[1], "0.693147180559945");
    }
    assert_eq!(lines[7], "lambda\t0.693147180559945");
}

#[test]
fn bernoulli_weak_gibbs_is_exact() {
    let dir = TempDir::new().unwrap();
    let shift = write(&dir, "full2.shift", FULL2);
    let pot = write(&dir, "site_a.pot", SITE);
    let o = shiftkit(&["weakgibbs", "--shift", &shift, "--potential", &pot, "--m", "1..8", "--delta", "1e-10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<f64> = text
        .lines()
        .skip(1)
        .take(8)
        .map(|l| l.split('\t').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|&d| d <= 1e-10));
    assert!(text.ends_with("delta\t1e-10\t1\n"));
}

#[test]
fn output_is_identical_across_thread_counts() {
    let run = |threads: &str| {
        let o = shiftkit(&["--threads", threads, "weakgibbs", "--shift", "@even", "--potential", "@pair", "--m", "1..7"]);
        assert!(o.status.success());
        o.stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("1"));
}

#[test]
fn dump_round_trips() {
    let dir = TempDir::new().unwrap();
    let sft = write(&dir, "golden.sft", GOLDEN);
    let first = shiftkit(&["--dump", "gap", "--shift", &sft]);
    assert!(first.status.success());
    let again = write(&dir, "golden.shift", &stdout(&first));
    let second = shiftkit(&["--dump", "gap", "--shift", &again]);
    assert_eq!(first.stdout, second.stdout);
    // the dumped graph describes the same shift
    let gap = shiftkit(&["gap", "--shift", &again]);
    assert_eq!(stdout(&gap), "q\t2\n");
}

#[test]
fn parse_errors_name_the_line() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.shift", "vertex A\nedge A B 0\n");
    let o = shiftkit(&["gap", "--shift", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn volume_guard_and_override() {
    let args = ["weakgibbs", "--shift", "@golden", "--m", "10"];
    let o = shiftkit(&args);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_shiftkit"))
        .args(args)
        .env("SHIFTKIT_ENUM_CAP", "4194304")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn validation_errors_exit_with_two() {
    assert_eq!(shiftkit(&["tangent", "--shift", "@full2", "--word", "1", "--n", "3", "--t-step", "0"]).status.code(), Some(2));
    assert_eq!(shiftkit(&["cylinder", "--shift", "@full2", "--word", "2"]).status.code(), Some(2));
    assert_eq!(shiftkit(&["pressure", "--shift", "@nowhere", "--n-max", "2"]).status.code(), Some(2));
    assert_eq!(shiftkit(&["weakgibbs", "--shift", "@full2", "--m", "5..1"]).status.code(), Some(2));
}

#[test]
fn lemma_reports_hold() {
    for which in ["212", "1d"] {
        let n = if which == "212" { "6" } else { "7" };
        let o = shiftkit(&["lemma", "--which", which, "--shift", "@even", "--potential", "@pair", "--n", n, "--m", "1", "--j", "0"]);
        assert!(o.status.success(), "{which}");
        let text = stdout(&o);
        let checks: Vec<&str> = text.lines().skip(1).filter(|l| !l.contains("\tconst\t")).collect();
        assert!(!checks.is_empty());
        assert!(checks.iter().all(|l| l.ends_with("\ttrue")), "{which}: {text}");
    }
    let o = shiftkit(&[
        "lemma", "--which", "211", "--shift", "@even", "--n", "4", "--m", "1", "--q", "2", "--j", "-1", "--l", "1",
        "--x", "011000110", "--y", "011110110",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().skip(1).filter(|l| l.starts_with("sandwich")).all(|l| l.ends_with("\ttrue")));
}

#[test]
fn tangent_and_cylinder() {
    let o = shiftkit(&["tangent", "--shift", "@full2", "--word", "1", "--n", "3", "--t-step", "1e-3"]);
    let text = stdout(&o);
    assert!(text.contains("formula\t0.5\n"));
    assert!(text.contains("cylinder\t0.5\n"));
    let o = shiftkit(&["cylinder", "--shift", "@full2", "--word", "11"]);
    assert_eq!(stdout(&o), "0.25\n");
}

#[test]
fn splice_and_factor() {
    let o = shiftkit(&["splice", "--shift", "@golden", "--x-minus", "01::0", "--y", "0:101@-1:0", "--x-plus", "0::01", "--m", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("check\ttrue\n"));
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("image.shift");
    let o = shiftkit(&["factor", "--shift", "@golden", "--code", "@ten", "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let image = fs::read_to_string(Path::new(&out)).unwrap();
    assert!(image.contains("# gap\t3\n# bound\t4\n"));
    let reparsed = shiftkit(&["gap", "--shift", out.to_str().unwrap()]);
    assert_eq!(stdout(&reparsed), "q\t3\n");
}
