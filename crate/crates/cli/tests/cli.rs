use std::path::Path;
use std::process::{Command, Output};

fn salpeter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_salpeter")).args(args).output().expect("binary runs")
}

fn salpeter_with_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_salpeter"))
        .args(args)
        .env("SALPETER_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let k = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[k].parse().unwrap()).collect()
}

#[test]
fn figure1_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig1.csv");
    let o = salpeter(&["figure1", "--grid-points", "1024", "--out", out.to_str().unwrap(), "--svg"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = read_csv(&out);
    assert_eq!(header, ["x", "rho_born", "rho_scalar"]);
    let x = column(&header, &rows, "x");
    assert!((x[0] + 0.5).abs() < 1e-12 && (x[x.len() - 1] - 1.5).abs() < 1e-12);
    // 17 significant digits
    assert!(rows[1][0].split('e').next().unwrap().trim_start_matches('-').len() == 18);
    let svg = std::fs::read_to_string(dir.path().join("fig1.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 2);
}

#[test]
fn figure2_unit_area_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig2.csv");
    let o =
        salpeter(&["figure2", "--grid-points", "1024", "--normalization", "unit-area", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = read_csv(&out);
    assert_eq!(header, ["x", "rho_born", "rho_scalar", "rho_half"]);
    let x = column(&header, &rows, "x");
    let dx = x[1] - x[0];
    for name in ["rho_born", "rho_scalar", "rho_half"] {
        let v = column(&header, &rows, name);
        assert!((v.iter().sum::<f64>() * dx - 1.0).abs() < 1e-6, "{name}");
        if name != "rho_born" {
            assert!(v.iter().all(|&r| r >= -1e-10));
        }
    }
}

#[test]
fn covariance_report() {
    let o = salpeter(&["covariance"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "kernel,p_i,p_j,v,eq13_residual,fourvector_residual");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let num = |s: &str| s.parse::<f64>().unwrap();
    for r in &rows {
        if r[0] != "born" {
            assert!(num(r[4]) < 1e-10 && num(r[5]) < 1e-10, "{r:?}");
        }
        if num(r[3]) == 0.0 {
            assert!(num(r[4]) < 1e-12 && num(r[5]) < 1e-12, "{r:?}");
        }
    }
    let witness = rows
        .iter()
        .find(|r| r[0] == "born" && num(r[1]) == 0.5 && num(r[2]) == -0.5 && num(r[3]) == 0.5)
        .expect("witness row present");
    assert!(num(witness[4]) > 1e-3);
}

#[test]
fn covariance_single_velocity_keeps_witness() {
    let o = salpeter(&["covariance", "--velocity", "-0.2"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<Vec<f64>> =
        text.lines().skip(1).map(|l| l.split(',').skip(1).map(|c| c.parse().unwrap()).collect()).collect();
    let is_witness = |r: &Vec<f64>| r[0] == 0.5 && r[1] == -0.5 && r[2] == 0.5;
    assert_eq!(rows.iter().filter(|r| is_witness(r)).count(), 3);
    assert!(rows.iter().all(|r| r[2] == -0.2 || is_witness(r)));
}

#[test]
fn continuity_ratios() {
    let o = salpeter(&["continuity", "--grid-points", "1024"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let ratios: Vec<f64> = text
        .lines()
        .skip(1)
        .filter_map(|l| l.split(',').nth(4)?.parse::<f64>().ok())
        .filter(|r| r.is_finite())
        .collect();
    assert_eq!(ratios.len(), 3);
    assert!(ratios.iter().all(|r| (3.5..=4.5).contains(r)), "{ratios:?}");
}

#[test]
fn dirac_and_series_checks_pass() {
    for cmd in ["dirac-check", "series-check"] {
        let o = salpeter(&[cmd, "--grid-points", "1024"]);
        assert_eq!(code(&o), 0, "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn invalid_config_exits_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.csv");
    let path = out.to_str().unwrap();
    let cases: [&[&str]; 7] = [
        &["figure1", "--pad-factor", "2", "--out", path],
        &["figure1", "--grid-points", "1000", "--out", path],
        &["covariance", "--velocity", "1.5", "--out", path],
        &["continuity", "--kernel", "vector", "--out", path],
        &["figure1", "--normalization", "area", "--out", path],
        &["figure3", "--out", path],
        &["figure1", "--box-width", "0", "--out", path],
    ];
    for args in cases {
        let o = salpeter(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = salpeter(&["figure1", "--pad-factor", "2"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--pad-factor"));
    let o = salpeter_with_threads(&["series-check", "--out", path], "zero");
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("SALPETER_THREADS"));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn io_failure_exits_3_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("f.csv");
    let o = salpeter(&["series-check", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn literal_kernel_singularity_is_reported() {
    // box states hold both ±p, where γ = 1 and the literal kernel diverges
    let o = salpeter(&["continuity", "--kernel", "literal:1", "--grid-points", "256"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("singular"));
}

#[test]
fn output_is_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (path, threads) in [(&a, "1"), (&b, "4")] {
        let o = salpeter_with_threads(&["figure2", "--grid-points", "512", "--out", path.to_str().unwrap()], threads);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let o1 = salpeter_with_threads(&["covariance"], "1");
    let o2 = salpeter_with_threads(&["covariance"], "3");
    assert_eq!(o1.stdout, o2.stdout);
}
