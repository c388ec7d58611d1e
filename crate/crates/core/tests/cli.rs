use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn superfan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superfan"))
        .args(args)
        .env_remove("SUPERFAN_BOX")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    let ok = superfan(&["validate", path(&data("p1_q1.fan"))]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("valid: rank 1"));

    let bad = superfan(&["validate", path(&data("p1_q1_m2.fan"))]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("clause (i) at cone `pos`"));
}

#[test]
fn malformed_input_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(data("p1_q1.fan"))
        .unwrap()
        .replace("[1/1]", "[1/x]");
    let p = dir.path().join("broken.fan");
    fs::write(&p, text).unwrap();
    let o = superfan(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
}

#[test]
fn report_lines() {
    let o = superfan(&[
        "report",
        path(&data("p1_q1.fan")),
        "--degree",
        "--split",
        "--orbit",
        "pos",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("split: true"));
    assert!(out.contains("degree: O(-2)"));
    assert!(out.contains("stab = T_{Z,1}"));

    let o = superfan(&["report", path(&data("x_inf.fan")), "--orbit", "e1"]);
    assert!(stdout(&o).contains("stab = T_{Z×0,1}"));

    let o = superfan(&["report", path(&data("p2.fan")), "--cspace"]);
    assert_eq!(stdout(&o).trim(), "cspace: basis {(1,1)}");
}

#[test]
fn reports_are_byte_deterministic() {
    let p2 = data("p2.fan");
    let args = [
        "report",
        path(&p2),
        "--split",
        "--smooth",
        "--cspace",
        "--degree",
        "--closure",
        "0",
    ];
    let first = superfan(&args);
    let second = superfan(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn ideal_of_twisted_cubic() {
    let o = superfan(&["ideal", path(&data("twisted_cubic.mono")), "--box", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines.contains(&"x1 x3 - x2^2"));
    assert!(lines.contains(&"x1 xi2 - x2 xi1"));
    assert_eq!(lines.last(), Some(&"xi_i xi_j"));
}

#[test]
fn ideal_box_from_environment() {
    let mono = data("twisted_cubic.mono");
    let run = |b: &str| {
        Command::new(env!("CARGO_BIN_EXE_superfan"))
            .args(["ideal", path(&mono)])
            .env("SUPERFAN_BOX", b)
            .output()
            .unwrap()
    };
    let small = run("1");
    let large = run("2");
    assert_eq!(small.status.code(), Some(0));
    assert!(stdout(&small).lines().count() < stdout(&large).lines().count());
    assert_eq!(run("0").status.code(), Some(2));
    assert_eq!(
        superfan(&["ideal", path(&mono), "--box", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn fiber_product_writes_three_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fp.fan");
    let o = superfan(&[
        "fiber-product",
        path(&data("first.morph")),
        path(&data("second.morph")),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("rank 1"));
    assert!(text.contains("c l1 [1/1]"));
    assert!(text
        .lines()
        .filter(|l| l.starts_with("decoration"))
        .all(|l| l.ends_with("[[0]]")));
    for k in 1..=2 {
        let proj = fs::read_to_string(dir.path().join(format!("fp.fan.proj{k}"))).unwrap();
        assert!(proj.starts_with("format superfan-morphism 1"));
    }
    // the written object validates on its own
    assert_eq!(
        superfan(&["validate", out.to_str().unwrap()]).status.code(),
        Some(0)
    );
}

#[test]
fn fiber_product_with_vanishing_scalars_is_unsupported() {
    let dir = tempfile::tempdir().unwrap();
    let z = data("zero_a.morph");
    let o = superfan(&[
        "fiber-product",
        path(&z),
        path(&z),
        "--out",
        dir.path().join("z.fan").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn enumerate_counts_p1() {
    let o = superfan(&["enumerate", path(&data("p1_q1.fan")), "--split"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("count: 4"));
    assert!(out.contains("pos=[[1]] neg=[[-1]] degree O(-2)"));
}
