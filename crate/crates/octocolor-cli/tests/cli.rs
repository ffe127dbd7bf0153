//! End-to-end tests of the binary: every subcommand, every exit code.

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_octocolor"))
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("octocolor-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn complete_graph_file(dir: &Path, n: u32) -> PathBuf {
    let mut text = format!("p edge {n} {}\n", n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            text.push_str(&format!("e {u} {v}\n"));
        }
    }
    let path = dir.join(format!("k{n}.edges"));
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn pipeline_colors_and_verifies() {
    let dir = workdir("pipeline");
    let edges = dir.join("g.edges");
    let coloring = dir.join("g.coloring");
    let trace = dir.join("g.trace.json");

    let out = bin().args(["gen", "--n", "400", "--seed", "11"]).arg("-o").arg(&edges).output().unwrap();
    assert!(out.status.success(), "{}", stderr_str(&out));
    let header = fs::read_to_string(&edges).unwrap();
    assert!(header.starts_with("c generator: style=triangulation seed=11 rng=chacha8\n"));

    let out = bin()
        .arg("color")
        .arg(&edges)
        .arg("-o")
        .arg(&coloring)
        .arg("--trace")
        .arg(&trace)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_str(&out));

    let out = bin().arg("verify").arg(&edges).arg(&coloring).output().unwrap();
    assert!(out.status.success(), "{}", stderr_str(&out));
    assert!(stdout_str(&out).contains("ok: proper 8-coloring"));

    let value: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(value["n"], 400);
    assert!(value["levels"].as_u64().unwrap() > 0);
    assert!(value["max_color"].as_u64().unwrap() <= 8);
}

#[test]
fn stdin_dash_reads_from_pipe() {
    let dir = workdir("stdin");
    let edges = dir.join("g.edges");
    let out = bin().args(["gen", "--n", "60", "--seed", "2", "--style", "lattice"]).arg("-o").arg(&edges).output().unwrap();
    assert!(out.status.success());

    let mut child = bin()
        .args(["color", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&fs::read(&edges).unwrap()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success(), "{}", stderr_str(&out));
    let coloring = dir.join("g.coloring");
    fs::write(&coloring, out.stdout).unwrap();

    let out = bin().arg("verify").arg(&edges).arg(&coloring).output().unwrap();
    assert!(out.status.success(), "{}", stderr_str(&out));
}

#[test]
fn verify_distinguishes_bad_colorings_from_bad_files() {
    let dir = workdir("verify");
    let edges = dir.join("p.edges");
    fs::write(&edges, "p edge 3 2\ne 0 1\ne 1 2\n").unwrap();

    let improper = dir.join("improper.coloring");
    fs::write(&improper, "0 1 1\n1 2 1\n").unwrap();
    let out = bin().arg("verify").arg(&edges).arg(&improper).output().unwrap();
    assert_eq!(out.status.code(), Some(1), "{}", stderr_str(&out));
    assert!(stderr_str(&out).contains("improper"));

    let incomplete = dir.join("incomplete.coloring");
    fs::write(&incomplete, "0 1 1\n").unwrap();
    let out = bin().arg("verify").arg(&edges).arg(&incomplete).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("covers 1 of 2"));

    let garbage = dir.join("garbage.coloring");
    fs::write(&garbage, "zebra\n").unwrap();
    let out = bin().arg("verify").arg(&edges).arg(&garbage).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin().arg("verify").arg(dir.join("absent.edges")).arg(&improper).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn color_exits_3_when_the_guarantee_breaks() {
    let dir = workdir("strict");
    // K9 is 8-regular: no reducible edge of either kind, so the driver
    // refuses rather than fall short of the 8-color promise.
    let k9 = complete_graph_file(&dir, 9);
    let out = bin().arg("color").arg(&k9).args(["-o", "/dev/null", "--strict-planar"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", stderr_str(&out));
    assert!(stderr_str(&out).contains("no reducible edge"));
    let out = bin().arg("color").arg(&k9).args(["-o", "/dev/null"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn stats_reports_the_density_bound() {
    let dir = workdir("stats");
    let edges = dir.join("g.edges");
    let out = bin().args(["gen", "--n", "300", "--seed", "5", "--style", "sparse"]).arg("-o").arg(&edges).output().unwrap();
    assert!(out.status.success());
    let out = bin().arg("stats").arg(&edges).output().unwrap();
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.contains("n 300"), "{text}");
    assert!(text.contains("meets_bound true"), "{text}");
    let ratio: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("ratio "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(ratio >= 1.0);
}

#[test]
fn oracle_decides_small_graphs_and_caps_size() {
    let dir = workdir("oracle");
    let triangle = dir.join("t.edges");
    fs::write(&triangle, "p edge 3 3\ne 0 1\ne 1 2\ne 2 0\n").unwrap();

    let out = bin().arg("oracle").arg(&triangle).args(["--max-colors", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("not colorable with 2 colors"));

    let out = bin().arg("oracle").arg(&triangle).args(["--max-colors", "3"]).output().unwrap();
    assert!(out.status.success());
    let coloring = dir.join("t.coloring");
    fs::write(&coloring, out.stdout).unwrap();
    let out = bin().arg("verify").arg(&triangle).arg(&coloring).output().unwrap();
    assert!(out.status.success(), "{}", stderr_str(&out));

    let big = dir.join("path.edges");
    let mut text = String::from("p edge 42 41\n");
    for v in 0..41 {
        text.push_str(&format!("e {v} {}\n", v + 1));
    }
    fs::write(&big, text).unwrap();
    let out = bin().arg("oracle").arg(&big).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("capped at 40"));
}

#[test]
fn bench_emits_csv() {
    let out = bin()
        .args(["bench", "--sizes", "64,128", "--seeds", "2", "--style", "lattice"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_str(&out));
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,mean_seconds,per_n_log_n");
    assert_eq!(lines.len(), 3);
    for row in &lines[1..] {
        assert_eq!(row.split(',').count(), 3, "{row}");
    }
    assert!(lines[1].starts_with("64,") && lines[2].starts_with("128,"));
}

#[test]
fn bad_arguments_are_input_errors() {
    let out = bin().args(["gen", "--n", "10", "--seed", "1", "--style", "voronoi"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["bench", "--sizes", "ten", "--seeds", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("not a number"));
}

#[test]
fn closed_output_pipe_is_a_quiet_success() {
    // 20000 vertices emit far more than a pipe buffer holds, so the child is
    // still writing when the read end drops.
    let mut child = bin()
        .args(["gen", "--n", "20000", "--seed", "1"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let out = child.stdout.take().unwrap();
        let mut line = String::new();
        BufReader::new(out).read_line(&mut line).unwrap();
        assert!(line.starts_with("c generator:"), "{line}");
    }
    let status = child.wait().unwrap();
    let mut err = String::new();
    child.stderr.take().unwrap().read_to_string(&mut err).unwrap();
    assert_eq!(status.code(), Some(0), "stderr: {err}");
    assert!(err.is_empty(), "expected silence on a closed pipe, got: {err}");
}
