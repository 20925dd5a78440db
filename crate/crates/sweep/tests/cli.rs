use std::process::{Command, Output};

use ecd_sweep::{parse_csv, CSV_HEADER};

fn ecd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const SHORT: [&str; 4] = ["--skip", "100", "--window", "2000"];

#[test]
fn identical_runs_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = ["a.csv", "b.csv", "c.csv"]
        .iter()
        .map(|n| dir.path().join(n))
        .collect();
    for (path, workers) in paths.iter().zip(["1", "3", "8"]) {
        let mut args = vec!["spin", "--grid", "0:3.14159:12", "--workers", workers];
        args.extend(SHORT);
        args.extend(["--csv", path.to_str().unwrap()]);
        let out = ecd(&args);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
    }
    let bytes: Vec<Vec<u8>> = paths.iter().map(|p| std::fs::read(p).unwrap()).collect();
    assert_eq!(bytes[0], bytes[1]);
    assert_eq!(bytes[0], bytes[2]);
    let text = String::from_utf8(bytes[0].clone()).unwrap();
    assert!(text.starts_with(&format!("{CSV_HEADER}\n")) && text.ends_with('\n'));
    assert_eq!(parse_csv(&text).unwrap().len(), 12);
}

#[test]
fn single_point_file_has_two_lines() {
    let out = ecd(&["spin", "--grid", "0.5:0.5:1", "--e0", "0,0,1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    let rows = parse_csv(&text).unwrap();
    assert_eq!((rows[0].param, rows[0].degree), (0.5, 0.0));
}

#[test]
fn logistic_two_point_sweep() {
    let rows = parse_csv(&stdout(&ecd(&[
        "classical",
        "--param",
        "mu",
        "--grid",
        "2:4:2",
    ])))
    .unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].degree, 0.0);
    assert!(rows[1].degree > 0.5);
    assert!(rows
        .iter()
        .all(|r| r.skip == 10_000 && r.window == 100_000 && r.bins == 100));
}

#[test]
fn svg_has_one_vertex_per_grid_point() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("theta.svg");
    let mut args = vec!["spin", "--svg", svg.to_str().unwrap()];
    args.extend(SHORT);
    let out = ecd(&args);
    assert_eq!(code(&out), 0);
    assert_eq!(parse_csv(&stdout(&out)).unwrap().len(), 64);
    let doc = std::fs::read_to_string(&svg).unwrap();
    let points = doc
        .split("points=\"")
        .nth(1)
        .unwrap()
        .split('"')
        .next()
        .unwrap();
    assert_eq!(points.split(' ').count(), 64);
    assert!(doc.starts_with("<svg") && doc.trim_end().ends_with("</svg>"));
}

#[test]
fn all_zero_sweep_lies_on_the_bottom_axis() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("flat.svg");
    let mut args = vec!["spin", "--grid", "0:0.8:10", "--svg", svg.to_str().unwrap()];
    args.extend(SHORT);
    assert_eq!(code(&ecd(&args)), 0);
    let doc = std::fs::read_to_string(&svg).unwrap();
    let axis_y = doc
        .split(" V")
        .nth(1)
        .unwrap()
        .split(' ')
        .next()
        .unwrap()
        .parse::<f64>()
        .unwrap();
    let points = doc
        .split("points=\"")
        .nth(1)
        .unwrap()
        .split('"')
        .next()
        .unwrap();
    for p in points.split(' ') {
        let y: f64 = p.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(y, axis_y, "{p}");
    }
}

#[test]
fn config_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "target = \"logistic\"\nparam = \"mu\"\nskip = 50\nwindow = 500\nbins = [10]\n\n[grid]\nstart = 3.5\nstop = 4.0\ncount = 3\n",
    )
    .unwrap();
    let path = cfg.to_str().unwrap();
    let rows = parse_csv(&stdout(&ecd(&["sweep", "--config", path]))).unwrap();
    assert_eq!(
        rows.iter().map(|r| r.param).collect::<Vec<_>>(),
        vec![3.5, 3.75, 4.0]
    );
    assert!(rows
        .iter()
        .all(|r| r.skip == 50 && r.window == 500 && r.bins == 10));

    let rows = parse_csv(&stdout(&ecd(&[
        "sweep", "--config", path, "--window", "800", "--grid", "4:4:1",
    ])))
    .unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(
        (rows[0].param, rows[0].window, rows[0].skip),
        (4.0, 800, 50)
    );
}

#[test]
fn exit_codes() {
    assert_eq!(code(&ecd(&["classical", "--grid", "1:2"])), 1);
    assert_eq!(code(&ecd(&["classical", "--bins", "0"])), 1);
    assert_eq!(code(&ecd(&["classical", "--map", "henon"])), 1);
    assert_eq!(code(&ecd(&["spin", "--e0", "0,0,2"])), 1);
    assert_eq!(code(&ecd(&["spin", "--observable", "half"])), 1);
    assert_eq!(
        code(&ecd(&["sweep", "--config", "/nonexistent/run.toml"])),
        1
    );
    assert_eq!(code(&ecd(&["frobnicate"])), 1);

    let diverged = ecd(&[
        "classical",
        "--map",
        "tinkerbell",
        "--param",
        "x0",
        "--grid",
        "-0.72:5:2",
        "--skip",
        "0",
        "--window",
        "500",
    ]);
    assert_eq!(code(&diverged), 2);
    assert!(String::from_utf8_lossy(&diverged.stderr).contains("grid point 5"));
    assert!(diverged.stdout.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let unwritable = dir.path().join("missing").join("out.csv");
    assert_eq!(
        code(&ecd(&[
            "classical",
            "--grid",
            "4:4:1",
            "--csv",
            unwritable.to_str().unwrap()
        ])),
        2
    );
}

#[test]
fn selftest_passes() {
    let out = ecd(&["selftest"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 7);
    assert!(!text.contains("FAIL"));
}
