use std::path::{Path, PathBuf};
use std::time::Instant;

use olg_land_core::{
    build, diagnose, improvement_search, DiagnosticsReport, EquilibriumPath, ImprovementReport, PathKind,
    SearchGrid, SearchOutcome, Verdict, WelfareVerdict,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ConfigFile, SWEEP_KEYS};
use crate::error::CliError;
use crate::output::{create_dir, num, write_csv, write_json};

pub const SIMULATION_COLUMNS: [&str; 10] = [
    "t",
    "w",
    "r",
    "P",
    "e_y",
    "c_y",
    "c_o",
    "R",
    "log_q",
    "savings_per_capita",
];

#[derive(Debug, Serialize)]
struct Versions {
    olg_land_cli: &'static str,
    olg_land_core: &'static str,
}

/// Record of one command run, written as `manifest.json`.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: &'static str,
    pub scenario_id: String,
    /// The config as TOML; parses back to the config that was run.
    pub config: String,
    versions: Versions,
    pub outputs: Vec<PathBuf>,
    pub duration_seconds: f64,
}

impl RunManifest {
    fn write(
        command: &'static str,
        cfg: &ConfigFile,
        outputs: Vec<PathBuf>,
        started: Instant,
        dir: &Path,
    ) -> Result<PathBuf, CliError> {
        let manifest = RunManifest {
            command,
            scenario_id: cfg.scenario.id.clone(),
            config: cfg.to_toml(),
            versions: Versions {
                olg_land_cli: env!("CARGO_PKG_VERSION"),
                olg_land_core: olg_land_core::VERSION,
            },
            outputs,
            duration_seconds: started.elapsed().as_secs_f64(),
        };
        write_json(&dir.join("manifest.json"), &manifest)
    }
}

fn solve(cfg: &ConfigFile) -> Result<(olg_land_core::ScenarioConfig, EquilibriumPath), CliError> {
    let scenario = cfg.scenario()?;
    let path = build(&scenario)?;
    Ok((scenario, path))
}

fn simulation_rows(path: &EquilibriumPath) -> impl Iterator<Item = Vec<String>> + '_ {
    path.periods().enumerate().map(|(i, t)| {
        vec![
            t.to_string(),
            num(path.w[i]),
            num(path.r[i]),
            num(path.price[i]),
            num(path.young_endowment_total(i)),
            num(path.y[i]),
            num(path.z[i]),
            num(path.rate[i]),
            num(path.log_q[i]),
            num(path.savings(i)),
        ]
    })
}

pub fn simulate(config: &Path, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let started = Instant::now();
    let cfg = ConfigFile::load(config)?;
    let (_, path) = solve(&cfg)?;
    create_dir(out)?;
    let csv = write_csv(
        &out.join("simulation.csv"),
        &SIMULATION_COLUMNS,
        simulation_rows(&path),
    )?;
    let manifest = RunManifest::write("simulate", &cfg, vec![csv.clone()], started, out)?;
    Ok(vec![csv, manifest])
}

#[derive(Debug, Serialize)]
struct Summary {
    bubble: &'static str,
    asymptotically_bubbly: bool,
    cass: &'static str,
    necessity_holds: bool,
    efficient_side: bool,
    efficiency_certified: bool,
    improvement: &'static str,
    improvement_t_start: Option<usize>,
    improvement_epsilon: Option<f64>,
}

#[derive(Debug, Serialize)]
struct WelfareSection<'a> {
    verdict: WelfareVerdict,
    note: &'static str,
    epsilons: &'a [f64],
    start_stride: usize,
    points_evaluated: usize,
    points_feasible: usize,
    earliest: Option<&'a ImprovementReport>,
    best: Option<&'a ImprovementReport>,
}

#[derive(Debug, Serialize)]
struct DiagnoseDocument<'a> {
    scenario_id: &'a str,
    kind: PathKind,
    t0: usize,
    horizon: usize,
    summary: Summary,
    diagnostics: &'a DiagnosticsReport,
    welfare: WelfareSection<'a>,
}

const WELFARE_NOTE: &str = "search over young-tax/old-transfer schemes only; finding none does not \
establish efficiency, for which see efficiency_certified (cass holds and mu > 0)";

fn yes_no(v: Option<bool>, yes: &'static str, no: &'static str) -> &'static str {
    match v {
        Some(true) => yes,
        Some(false) => no,
        None => "inconclusive",
    }
}

struct Diagnosis {
    path: EquilibriumPath,
    report: DiagnosticsReport,
    search: SearchOutcome,
    grid: SearchGrid,
}

fn run_diagnosis(cfg: &ConfigFile) -> Result<Diagnosis, CliError> {
    let (scenario, path) = solve(cfg)?;
    let report = diagnose(&path, &scenario)?;
    let grid = SearchGrid::default();
    let search = improvement_search(&path, &scenario.pref, &grid);
    Ok(Diagnosis {
        path,
        report,
        search,
        grid,
    })
}

fn document<'a>(cfg: &'a ConfigFile, d: &'a Diagnosis) -> DiagnoseDocument<'a> {
    let r = &d.report;
    let earliest = d.search.earliest.as_ref();
    DiagnoseDocument {
        scenario_id: &cfg.scenario.id,
        kind: d.path.kind,
        t0: d.path.t0,
        horizon: d.path.horizon(),
        summary: Summary {
            bubble: yes_no(r.has_bubble(), "yes", "no"),
            asymptotically_bubbly: r.asymptotically_bubbly.flag,
            cass: yes_no(r.cass_holds(), "holds", "fails"),
            necessity_holds: r.necessity_holds,
            efficient_side: r.thresholds.efficient_side,
            efficiency_certified: r.efficiency_certified(),
            improvement: match d.search.verdict {
                WelfareVerdict::Improvement => "found",
                WelfareVerdict::NoImprovementFound => "none",
            },
            improvement_t_start: earliest.map(|e| e.scheme.t_start),
            improvement_epsilon: earliest.map(|e| e.scheme.epsilon),
        },
        diagnostics: r,
        welfare: WelfareSection {
            verdict: d.search.verdict,
            note: WELFARE_NOTE,
            epsilons: &d.grid.epsilons,
            start_stride: d.grid.start_stride,
            points_evaluated: d.search.points.len(),
            points_feasible: d
                .search
                .points
                .iter()
                .filter(|p| p.min_affected_delta.is_some())
                .count(),
            earliest,
            best: d.search.best.as_ref(),
        },
    }
}

pub fn diagnose_cmd(config: &Path, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let started = Instant::now();
    let cfg = ConfigFile::load(config)?;
    let d = run_diagnosis(&cfg)?;
    create_dir(out)?;
    let report = write_json(&out.join("report.json"), &document(&cfg, &d))?;
    let manifest = RunManifest::write("diagnose", &cfg, vec![report.clone()], started, out)?;
    Ok(vec![report, manifest])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Figure {
    Fig1,
    Fig2,
}

impl Figure {
    fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
        }
    }

    fn kind(self) -> PathKind {
        match self {
            Figure::Fig1 => PathKind::Fundamental,
            Figure::Fig2 => PathKind::Bubbly,
        }
    }
}

/// Panel series: (a) young endowment and consumption, (b) old endowment
/// and consumption, (c) rent and land price, (d) interest rate.
pub fn reproduce(figure: Figure, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let started = Instant::now();
    let cfg = ConfigFile::preset(figure.kind());
    let (_, path) = solve(&cfg)?;
    create_dir(out)?;
    let name = figure.name();
    let periods = || path.periods().enumerate();
    let files = vec![
        write_csv(
            &out.join(format!("{name}_a_young.csv")),
            &["t", "e_y", "c_y"],
            periods().map(|(i, t)| vec![t.to_string(), num(path.young_endowment_total(i)), num(path.y[i])]),
        )?,
        write_csv(
            &out.join(format!("{name}_b_old.csv")),
            &["t", "e_o", "c_o"],
            periods().map(|(i, t)| vec![t.to_string(), num(path.e_o), num(path.z[i])]),
        )?,
        write_csv(
            &out.join(format!("{name}_c_land.csv")),
            &["t", "r", "P"],
            periods().map(|(i, t)| vec![t.to_string(), num(path.r[i]), num(path.price[i])]),
        )?,
        write_csv(
            &out.join(format!("{name}_d_rate.csv")),
            &["t", "R"],
            periods().map(|(i, t)| vec![t.to_string(), num(path.rate[i])]),
        )?,
    ];
    let manifest = RunManifest::write("reproduce", &cfg, files.clone(), started, out)?;
    let mut all = files;
    all.push(manifest);
    Ok(all)
}

const SUMMARY_RESULTS: [&str; 22] = [
    "status",
    "error",
    "t0",
    "bubble",
    "cass",
    "asymptotically_bubbly",
    "tail_infimum",
    "natural_rate",
    "rent_growth",
    "growth",
    "necessity_holds",
    "eo_bound",
    "p_bound",
    "necessity2_bound",
    "p_star",
    "efficient_side",
    "pv_endowment",
    "mu",
    "mu_degenerate",
    "efficiency_certified",
    "improvement",
    "improvement_t_start",
];

#[derive(Debug, Serialize)]
struct FailedPoint<'a> {
    scenario_id: &'a str,
    status: &'static str,
    error: String,
    exit_code: u8,
}

fn summary_row(index: usize, point: &ConfigFile, result: &Result<Diagnosis, CliError>) -> Vec<String> {
    let mut row = vec![index.to_string()];
    row.extend(SWEEP_KEYS.iter().map(|k| num(point.value(k))));
    row.push(point.scenario.kind.as_str().to_owned());
    match result {
        Err(e) => {
            row.push("failed".into());
            row.push(e.to_string());
            row.extend(std::iter::repeat_n(String::new(), SUMMARY_RESULTS.len() - 2));
        }
        Ok(d) => {
            let r = &d.report;
            let th = &r.thresholds;
            let verdict = |v: Verdict| v.as_str().to_owned();
            row.extend([
                "ok".into(),
                String::new(),
                d.path.t0.to_string(),
                yes_no(r.has_bubble(), "yes", "no").into(),
                yes_no(r.cass_holds(), "holds", "fails").into(),
                r.asymptotically_bubbly.flag.to_string(),
                num(r.asymptotically_bubbly.tail_infimum),
                num(r.natural_rate),
                num(r.rent_growth),
                num(r.growth),
                r.necessity_holds.to_string(),
                num(th.eo_bound),
                num(th.p_bound),
                num(th.necessity2_bound),
                num(th.p_star),
                th.efficient_side.to_string(),
                verdict(r.pv_endowment.verdict),
                num(r.mu.mu),
                r.mu.degenerate.to_string(),
                r.efficiency_certified().to_string(),
                match d.search.verdict {
                    WelfareVerdict::Improvement => "found".into(),
                    WelfareVerdict::NoImprovementFound => "none".into(),
                },
                d.search
                    .earliest
                    .as_ref()
                    .map_or(String::new(), |e| e.scheme.t_start.to_string()),
            ]);
        }
    }
    row
}

/// Diagnoses every grid point; failed points are recorded and skipped.
pub fn sweep(config: &Path, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let started = Instant::now();
    let cfg = ConfigFile::load(config)?;
    let points = cfg.sweep_points();
    create_dir(out)?;

    let results: Vec<(PathBuf, Vec<String>)> = points
        .par_iter()
        .enumerate()
        .map(|(k, point)| {
            let result = run_diagnosis(point);
            let file = out.join(format!("point_{k:04}.json"));
            match &result {
                Ok(d) => write_json(&file, &document(point, d)),
                Err(e) => write_json(
                    &file,
                    &FailedPoint {
                        scenario_id: &point.scenario.id,
                        status: "failed",
                        error: e.to_string(),
                        exit_code: e.exit_code(),
                    },
                ),
            }?;
            Ok((file, summary_row(k, point, &result)))
        })
        .collect::<Result<_, CliError>>()?;
    let (mut files, rows): (Vec<PathBuf>, Vec<Vec<String>>) = results.into_iter().unzip();

    let mut header = vec!["index"];
    header.extend(SWEEP_KEYS);
    header.push("kind");
    header.extend(SUMMARY_RESULTS);
    files.push(write_csv(&out.join("summary.csv"), &header, rows)?);
    let manifest = RunManifest::write("sweep", &cfg, files.clone(), started, out)?;
    files.push(manifest);
    Ok(files)
}
