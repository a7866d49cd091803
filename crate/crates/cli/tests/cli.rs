use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_olg-land");

const FIG1: &str = r#"[production]
A = 1.0
alpha = 0.5
sigma = 1.5

[preferences]
beta = 1.0
gamma = 1.0

[demography]
G = 1.2

[scenario]
id = "fig1"
kind = "fundamental"
p = 3.0
e_o = 1.0
"#;

fn fig2() -> String {
    FIG1.replace("\"fig1\"", "\"fig2\"")
        .replace("fundamental", "bubbly")
        .replace("p = 3.0", "p = 0.5")
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("OLG_LAND_OUT")
        .output()
        .unwrap()
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Rows of a CSV as strings, header first.
fn read_csv(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn column(rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let k = rows[0].iter().position(|h| h == name).unwrap();
    rows[1..].iter().map(|r| r[k].parse().unwrap()).collect()
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn simulate_fig1_columns_and_limit() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "fig1.toml", FIG1);
    let out = tmp.path().join("out");
    let o = run(&["simulate", s(&cfg), "-o", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = read_csv(&out.join("simulation.csv"));
    assert_eq!(
        rows[0].join(","),
        "t,w,r,P,e_y,c_y,c_o,R,log_q,savings_per_capita"
    );
    assert_eq!(rows.len(), 402);
    let rate = column(&rows, "R");
    assert!((rate.last().unwrap() - 1.1763).abs() < 5e-4);
    // young endowment minus consumption is savings
    let (e_y, c_y, sav) = (
        column(&rows, "e_y"),
        column(&rows, "c_y"),
        column(&rows, "savings_per_capita"),
    );
    for i in 0..e_y.len() {
        assert!((e_y[i] - c_y[i] - sav[i]).abs() < 1e-10 * e_y[i].max(1.0));
    }
}

#[test]
fn simulate_fig2_savings_constant() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "fig2.toml", &fig2());
    let out = tmp.path().join("out");
    assert!(run(&["simulate", s(&cfg), "-o", s(&out)]).status.success());
    let rows = read_csv(&out.join("simulation.csv"));
    assert!(column(&rows, "savings_per_capita")
        .iter()
        .all(|&x| (x - 0.5).abs() < 1e-12));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "fig1.toml", FIG1);
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    assert!(run(&["simulate", s(&cfg), "-o", s(&a)]).status.success());
    assert!(run(&["simulate", s(&cfg), "-o", s(&b)]).status.success());
    let (x, y) = (
        fs::read(a.join("simulation.csv")).unwrap(),
        fs::read(b.join("simulation.csv")).unwrap(),
    );
    assert_eq!(x, y);
    assert!(!x.contains(&b'\r'));
}

#[test]
fn manifest_lists_outputs_and_echo_reruns_identically() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "fig1.toml",
        &FIG1.replace("e_o = 1.0", "e_o = 1.0\nt0 = 2"),
    );
    let out = tmp.path().join("out");
    assert!(run(&["simulate", s(&cfg), "-o", s(&out)]).status.success());
    let manifest: Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["scenario_id"], "fig1");
    for f in manifest["outputs"].as_array().unwrap() {
        assert!(fs::metadata(f.as_str().unwrap()).unwrap().len() > 0);
    }
    let echo = manifest["config"].as_str().unwrap();
    let cfg2 = write_config(tmp.path(), "echo.toml", echo);
    let out2 = tmp.path().join("out2");
    assert!(run(&["simulate", s(&cfg2), "-o", s(&out2)]).status.success());
    let manifest2: Value =
        serde_json::from_str(&fs::read_to_string(out2.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest2["config"].as_str().unwrap(), echo);
    assert_eq!(
        fs::read(out.join("simulation.csv")).unwrap(),
        fs::read(out2.join("simulation.csv")).unwrap()
    );
    assert_eq!(read_csv(&out.join("simulation.csv"))[1][0], "2");
}

#[test]
fn bound_violation_exits_2_and_names_the_bound() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "bad.toml", &FIG1.replace("e_o = 1.0", "e_o = 0.1"));
    let o = run(&["simulate", s(&cfg), "-o", s(&tmp.path().join("out"))]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("old-endowment bound"), "{err}");
    assert!(err.contains("0.14703"), "{err}");
}

#[test]
fn diagnose_reports() {
    let tmp = tempfile::tempdir().unwrap();
    let c1 = write_config(tmp.path(), "fig1.toml", FIG1);
    let c2 = write_config(tmp.path(), "fig2.toml", &fig2());
    let c3 = write_config(tmp.path(), "low.toml", &FIG1.replace("p = 3.0", "p = 1.0"));
    for (cfg, dir) in [(&c1, "d1"), (&c2, "d2"), (&c3, "d3")] {
        let o = run(&["diagnose", s(cfg), "-o", s(&tmp.path().join(dir))]);
        assert_eq!(o.status.code(), Some(0));
    }
    let r1 = report(&tmp.path().join("d1"));
    let sum = &r1["summary"];
    assert_eq!(sum["bubble"], "no");
    assert_eq!(sum["cass"], "fails");
    assert_eq!(sum["improvement"], "found");
    assert!(sum["improvement_t_start"].as_u64().unwrap() <= 30);
    assert!(r1["diagnostics"]["thresholds"]["p_star"].as_f64().unwrap() > 1.99);
    assert_eq!(r1["diagnostics"]["bubble"]["verdict"], "divergent");

    let r2 = report(&tmp.path().join("d2"));
    let sum = &r2["summary"];
    assert_eq!(sum["bubble"], "yes");
    assert_eq!(sum["asymptotically_bubbly"], true);
    assert_eq!(sum["cass"], "holds");
    assert_eq!(sum["improvement"], "none");

    let r3 = report(&tmp.path().join("d3"));
    assert_eq!(r3["summary"]["cass"], "holds");
    assert_eq!(r3["summary"]["efficient_side"], true);
}

#[test]
fn reproduce_fig1_panels() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("f1");
    assert!(run(&["reproduce", "fig1", "-o", s(&out)]).status.success());
    let d = read_csv(&out.join("fig1_d_rate.csv"));
    let (t, r) = (column(&d, "t"), column(&d, "R"));
    assert!((r.last().unwrap() - 1.1763).abs() < 5e-4);
    assert!(t
        .iter()
        .zip(&r)
        .filter(|(t, _)| **t >= 24.0)
        .all(|(_, r)| *r < 1.2));
    let a = read_csv(&out.join("fig1_a_young.csv"));
    let gap = column(&a, "e_y").last().unwrap() - column(&a, "c_y").last().unwrap();
    assert!(gap.abs() < 1e-9);
    for panel in ["fig1_b_old.csv", "fig1_c_land.csv", "manifest.json"] {
        assert!(out.join(panel).exists());
    }
}

#[test]
fn reproduce_fig2_land_panel() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("f2");
    assert!(run(&["reproduce", "fig2", "-o", s(&out)]).status.success());
    let c = read_csv(&out.join("fig2_c_land.csv"));
    let (t, rent, price) = (column(&c, "t"), column(&c, "r"), column(&c, "P"));
    for (t, p) in t.iter().zip(&price) {
        assert!((p / (0.5 * 1.2f64.powf(*t)) - 1.0).abs() < 1e-11);
    }
    let n = rent.len();
    assert!((rent[n - 1] / rent[n - 2] - 1.2f64.powf(2.0 / 3.0)).abs() < 1e-9);
}

#[test]
fn reproduce_rejects_unknown_figure() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["reproduce", "fig3", "-o", s(tmp.path())]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn sweep_price_and_sigma_grids() {
    let tmp = tempfile::tempdir().unwrap();
    let text = format!("{FIG1}\n[sweep]\np = [1.5, 1.99, 2.5, 3.0]\n");
    let cfg = write_config(tmp.path(), "sweep.toml", &text);
    let out = tmp.path().join("sw");
    assert!(run(&["sweep", s(&cfg), "-o", s(&out)]).status.success());
    let rows = read_csv(&out.join("summary.csv"));
    let k = rows[0].iter().position(|h| h == "cass").unwrap();
    let cass: Vec<&str> = rows[1..].iter().map(|r| r[k].as_str()).collect();
    assert_eq!(cass, ["holds", "holds", "fails", "fails"]);
    assert_eq!(column(&rows, "p"), [1.5, 1.99, 2.5, 3.0]);
    assert!(out.join("point_0003.json").exists());

    let text = format!("{FIG1}\n[sweep]\nsigma = [1.2, 1.5, 2.0]\n");
    let cfg = write_config(tmp.path(), "sigma.toml", &text);
    let out = tmp.path().join("sig");
    assert!(run(&["sweep", s(&cfg), "-o", s(&out)]).status.success());
    let rows = read_csv(&out.join("summary.csv"));
    for (sigma, gd) in column(&rows, "sigma").iter().zip(column(&rows, "rent_growth")) {
        assert!((gd - 1.2f64.powf(1.0 / sigma)).abs() < 1e-11);
    }
}

#[test]
fn sweep_records_failed_points_and_continues() {
    let tmp = tempfile::tempdir().unwrap();
    let text = format!("{FIG1}\n[sweep]\ne_o = [0.1, 1.0]\n");
    let cfg = write_config(tmp.path(), "sweep.toml", &text);
    let out = tmp.path().join("sw");
    let o = run(&["sweep", s(&cfg), "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let rows = read_csv(&out.join("summary.csv"));
    let k = rows[0].iter().position(|h| h == "status").unwrap();
    assert_eq!(rows[1][k], "failed");
    assert_eq!(rows[2][k], "ok");
    let failed: Value =
        serde_json::from_str(&fs::read_to_string(out.join("point_0000.json")).unwrap()).unwrap();
    assert_eq!(failed["exit_code"], 2);
}

#[test]
fn empty_sweep_gives_empty_summary() {
    let tmp = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("none.toml", FIG1.to_owned()),
        ("empty.toml", format!("{FIG1}\n[sweep]\np = []\n")),
    ] {
        let cfg = write_config(tmp.path(), name, &text);
        let out = tmp.path().join(name.replace(".toml", ""));
        assert_eq!(run(&["sweep", s(&cfg), "-o", s(&out)]).status.code(), Some(0));
        assert_eq!(read_csv(&out.join("summary.csv")).len(), 1);
    }
}

#[test]
fn output_dir_from_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("env_out");
    let o = Command::new(BIN)
        .args(["reproduce", "fig2"])
        .env("OLG_LAND_OUT", &out)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(out.join("fig2_d_rate.csv").exists());
}

#[test]
fn exit_codes_for_usage_and_io() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["simulate"]).status.code(), Some(4));
    assert_eq!(run(&["reproduce", "fig1"]).status.code(), Some(4));

    let tmp = tempfile::tempdir().unwrap();
    let missing = tmp.path().join("missing.toml");
    assert_eq!(
        run(&["simulate", s(&missing), "-o", s(tmp.path())]).status.code(),
        Some(3)
    );

    let cfg = write_config(tmp.path(), "fig1.toml", FIG1);
    let blocker = write_config(tmp.path(), "file", "x");
    let o = run(&["simulate", s(&cfg), "-o", s(&blocker.join("sub"))]);
    assert_eq!(o.status.code(), Some(3));

    let broken = write_config(
        tmp.path(),
        "broken.toml",
        &FIG1.replace("sigma = 1.5", "sigma = \"x\""),
    );
    assert_eq!(
        run(&["simulate", s(&broken), "-o", s(tmp.path())]).status.code(),
        Some(4)
    );
}
