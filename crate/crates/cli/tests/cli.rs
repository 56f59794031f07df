use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn folab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_folab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn folab_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_folab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn k3(dir: &Path) -> PathBuf {
    write(dir, "k3.graph", "vertices 3\nedge 0 1\nedge 1 2\nedge 0 2\n")
}

fn p3(dir: &Path) -> PathBuf {
    write(dir, "p3.graph", "vertices 3\nedge 0 1\nedge 1 2\n")
}

#[test]
fn density_of_a_triangle() {
    let dir = TempDir::new().unwrap();
    let g = k3(dir.path());
    let o = folab(&["density", "--graph", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "vertices=3 edges=3 rho=1 rhomax=1 strictly_balanced=true aut=6\n"
    );
}

#[test]
fn density_of_k4_with_a_pendant_vertex() {
    let dir = TempDir::new().unwrap();
    let g = write(
        dir.path(),
        "k4p.graph",
        "vertices 5\nedge 0 1\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\nedge 2 3\nedge 3 4\n",
    );
    let o = folab(&["density", "--graph", g.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["records"][0]["rhomax"], "3/2");
    assert_eq!(v["records"][0]["rho"], "7/5");
    assert_eq!(v["records"][0]["strictly_balanced"], false);
}

#[test]
fn parse_errors_exit_with_three() {
    let dir = TempDir::new().unwrap();
    let empty = write(dir.path(), "empty.graph", "");
    assert_eq!(
        folab(&["density", "--graph", empty.to_str().unwrap()]).status.code(),
        Some(3)
    );
    let missing = dir.path().join("missing.graph");
    assert_eq!(
        folab(&["density", "--graph", missing.to_str().unwrap()]).status.code(),
        Some(3)
    );
    let bad = write(dir.path(), "bad.fo", "E x. adj(x,");
    let o = folab(&[
        "mc",
        "--formula",
        bad.to_str().unwrap(),
        "--n",
        "5",
        "--p",
        "0.5",
        "--trials",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(folab(&[]).status.code(), Some(2));
    assert_eq!(
        folab(&["scan", "--property", "triangle", "--n", "10", "--alpha", "1/2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        folab(&[
            "mc",
            "--property",
            "triangle",
            "--n",
            "10",
            "--alpha",
            "1/2",
            "--trials",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        folab(&["witness", "--k", "5", "--m", "3", "--theorem", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        folab(&[
            "mc",
            "--property",
            "triangle",
            "--contains",
            "x",
            "--n",
            "10",
            "--p",
            "0.1",
            "--trials",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn capacity_guards_exit_with_four() {
    let dir = TempDir::new().unwrap();
    let deep = write(
        dir.path(),
        "deep.fo",
        "E a. E b. E c. E d. E e. E f. (adj(a,b) & adj(c,d) & adj(e,f))\n",
    );
    let o = folab(&[
        "mc",
        "--formula",
        deep.to_str().unwrap(),
        "--n",
        "300",
        "--p",
        "0.1",
        "--trials",
        "2",
        "--guard",
        "1000",
    ]);
    assert_eq!(o.status.code(), Some(4));
    let g = k3(dir.path());
    let o = folab(&[
        "ef",
        "solve",
        "--g",
        g.to_str().unwrap(),
        "--h",
        g.to_str().unwrap(),
        "--k",
        "9",
        "--guard",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn solve_reports_the_winner() {
    let dir = TempDir::new().unwrap();
    let (g, h) = (k3(dir.path()), p3(dir.path()));
    let same = folab(&[
        "ef",
        "solve",
        "--g",
        g.to_str().unwrap(),
        "--h",
        g.to_str().unwrap(),
        "--k",
        "3",
    ]);
    assert_eq!(stdout(&same), "k=3 winner=duplicator\n");
    let diff = folab(&[
        "ef",
        "solve",
        "--g",
        g.to_str().unwrap(),
        "--h",
        h.to_str().unwrap(),
        "--k",
        "2",
    ]);
    assert_eq!(stdout(&diff), "k=2 winner=spoiler\n");
}

#[test]
fn scan_emits_exact_exponents_and_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("scan.csv");
    let args = [
        "scan",
        "--property",
        "triangle",
        "--n",
        "40",
        "--theorem1",
        "5",
        "--m",
        "2,3,4",
        "--trials",
        "25",
        "--seed",
        "11",
        "--out",
        out.to_str().unwrap(),
    ];
    assert_eq!(folab(&args).status.code(), Some(0));
    let first = fs::read(&out).unwrap();
    assert_eq!(folab(&args).status.code(), Some(0));
    assert_eq!(first, fs::read(&out).unwrap());
    let text = String::from_utf8(first).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,alpha,p,trials,hits,p_hat,ci_low,ci_high,seed,wall_ms,schema_version")
    );
    let alphas: Vec<&str> = lines.map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(alphas, ["2/3", "5/8", "3/5"]);
}

#[test]
fn witness_writes_graph_files() {
    let dir = TempDir::new().unwrap();
    let o = folab(&[
        "witness",
        "--k",
        "5",
        "--m",
        "3",
        "--theorem",
        "1",
        "--dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("x_vertices=5 x_edges=8"));
    let x = dir.path().join("x.graph");
    let d = folab(&["density", "--graph", x.to_str().unwrap()]);
    assert!(stdout(&d).starts_with("vertices=5 edges=8 rho=8/5"));
    let pair = dir.path().join("pair.txt");
    let p = folab(&["pair", "--pair", pair.to_str().unwrap(), "--alpha", "5/8"]);
    assert!(stdout(&p).contains("rho=8/5"), "{}", stdout(&p));
}

#[test]
fn infeasible_witness_is_an_input_error() {
    let o = folab(&["witness", "--k", "9", "--m", "2", "--theorem", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn sset_check_reports_failures() {
    let dir = TempDir::new().unwrap();
    let g = k3(dir.path());
    let o = folab(&["sset-check", "--graph", g.to_str().unwrap(), "--alpha", "14/15"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("passes=false"));
    let o = folab(&[
        "sset-check",
        "--graph",
        g.to_str().unwrap(),
        "--alpha",
        "14/15",
        "--caps",
        "9,2,1,3",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn interactive_play_reprompts_on_bad_input() {
    let dir = TempDir::new().unwrap();
    let g = k3(dir.path());
    let h = p3(dir.path());
    let o = folab_stdin(
        &[
            "ef",
            "play",
            "--g",
            g.to_str().unwrap(),
            "--h",
            h.to_str().unwrap(),
            "--k",
            "2",
            "--side",
            "spoiler",
        ],
        "pick q 1\npick g 7\npick h 0\npick h 2\n",
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("invalid: unknown graph"));
    assert!(text.contains("invalid: "));
    assert!(text.contains("reply g "));
    assert!(text.trim_end().ends_with("winner spoiler"));
}

#[test]
fn scripted_engine_needs_an_exponent() {
    let dir = TempDir::new().unwrap();
    let g = k3(dir.path());
    let o = folab_stdin(
        &[
            "ef",
            "play",
            "--g",
            g.to_str().unwrap(),
            "--h",
            g.to_str().unwrap(),
            "--k",
            "2",
            "--side",
            "spoiler",
            "--engine",
            "script",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn crosscheck_with_a_battery_file() {
    let dir = TempDir::new().unwrap();
    let battery = write(
        dir.path(),
        "battery.fo",
        "# triangle\nE x. E y. E z. (adj(x,y) & adj(y,z) & adj(x,z))\nA x. E y. adj(x,y)\n",
    );
    let args = [
        "ef",
        "crosscheck",
        "--pairs",
        "30",
        "--depth",
        "3",
        "--battery",
        battery.to_str().unwrap(),
        "--seed",
        "5",
        "--format",
        "json",
    ];
    let o = folab(&args);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 30);
    assert_eq!(o.stdout, folab(&args).stdout);
    let shallow = folab(&[
        "ef",
        "crosscheck",
        "--pairs",
        "3",
        "--depth",
        "2",
        "--battery",
        battery.to_str().unwrap(),
    ]);
    assert_eq!(shallow.status.code(), Some(3));
}

#[test]
fn thread_cap_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_folab"))
            .args([
                "mc",
                "--property",
                "edge",
                "--n",
                "20",
                "--alpha",
                "3/2",
                "--trials",
                "40",
                "--seed",
                "9",
            ])
            .env("FOLAB_THREADS", threads)
            .output()
            .unwrap()
    };
    // 3/2 lies outside (0,1]: rejected as an input error.
    assert_eq!(run("2").status.code(), Some(3));
    let ok = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_folab"))
            .args([
                "mc",
                "--property",
                "edge",
                "--n",
                "20",
                "--alpha",
                "1/2",
                "--trials",
                "40",
                "--seed",
                "9",
            ])
            .env("FOLAB_THREADS", threads)
            .output()
            .unwrap()
    };
    assert_eq!(ok("1").stdout, ok("3").stdout);
    assert_eq!(ok("0").status.code(), Some(2));
}
