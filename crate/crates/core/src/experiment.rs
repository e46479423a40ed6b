//! Experiment orchestration, result files and plot data.
//!
//! Runs fan out over `(axis value, policy, seed)` with rayon; results are
//! collected in job order, so output bytes never depend on scheduling.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{ConfigError, ExperimentConfig, SweepAxis, SweepSpec};
use crate::metrics::{bound_reports, BoundReport, SimulationResult};
use crate::network::NetworkSpec;
use crate::policy::{AgeBasedPolicy, PolicyError, PolicySpec, PolicyState, RoundRobinPolicy, StationaryPolicy, VirtualQueuePolicy};
use crate::sim::{run_simulation, Checkpoint, RunConfig, SimError, SlotTrace, TraceLevel};
use crate::stationary::{average_age_lower_bound, solve_stationary, SolveError, SolverOptions, StationarySolution};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("stationary solver failed: {0}")]
    Solver(#[from] SolveError),
    #[error("policy setup failed: {0}")]
    Policy(#[from] PolicyError),
    #[error("simulation failed: {0}")]
    Simulation(#[from] SimError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
}

impl ExperimentError {
    /// Process exit code: 1 validation, 2 solver, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            ExperimentError::Config(_) | ExperimentError::Policy(_) | ExperimentError::Simulation(_) => 1,
            ExperimentError::Solver(_) => 2,
            ExperimentError::Io { .. } | ExperimentError::Csv { .. } | ExperimentError::Json { .. } => 3,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> ExperimentError + '_ {
    move |source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Solves the stationary program, treating non-convergence as an error.
pub fn solve_network(spec: &NetworkSpec) -> Result<StationarySolution, ExperimentError> {
    Ok(solve_stationary(spec, SolverOptions::default())?)
}

/// Instantiates a policy. The stationary policy needs `solution`.
pub fn build_policy(
    spec: &NetworkSpec,
    policy: &PolicySpec,
    solution: &StationarySolution,
) -> Result<PolicyState, PolicyError> {
    policy.check()?;
    Ok(match *policy {
        PolicySpec::Stationary => {
            PolicyState::Stationary(StationaryPolicy::new(spec, solution.support.clone(), solution.probs.clone())?)
        }
        PolicySpec::VirtualQueue { v } => PolicyState::VirtualQueue(VirtualQueuePolicy::new(spec.link_count, v)?),
        PolicySpec::AgeBased { beta } => PolicyState::AgeBased(AgeBasedPolicy::new(spec.link_count, beta)?),
        PolicySpec::RoundRobin => PolicyState::RoundRobin(RoundRobinPolicy::new(spec, 0)?),
    })
}

/// One `(policy, seed)` run at one axis value.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub axis_value: Option<f64>,
    pub seed: u64,
    pub result: SimulationResult,
    pub checkpoints: Vec<Checkpoint>,
    pub trace: Vec<SlotTrace>,
    pub bounds: Vec<BoundReport>,
}

/// The solved program at one axis value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSolution {
    pub axis_value: Option<f64>,
    pub link_count: usize,
    pub solution: StationarySolution,
    /// `(peak_opt + sum w) / 2`, a lower bound on any policy's network average age.
    pub lower_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentOutput {
    pub config_hash: String,
    pub axis: Option<SweepAxis>,
    pub solutions: Vec<PointSolution>,
    /// Ordered by axis value, then policy, then seed, as configured.
    pub runs: Vec<RunRecord>,
}

struct Point {
    axis_value: Option<f64>,
    config: ExperimentConfig,
    spec: NetworkSpec,
    solution: StationarySolution,
    checkpoints: Vec<u64>,
}

impl Point {
    fn new(axis_value: Option<f64>, config: ExperimentConfig, checkpoints: Vec<u64>) -> Result<Self, ExperimentError> {
        let spec = config.network.build();
        let solution = solve_network(&spec)?;
        Ok(Point {
            axis_value,
            config,
            spec,
            solution,
            checkpoints,
        })
    }

    fn run_config(&self, seed: u64) -> RunConfig {
        RunConfig {
            horizon: self.config.horizon,
            seed,
            warmup: self.config.warmup,
            trace_level: self.config.trace_level,
            checkpoints: self.checkpoints.clone(),
        }
    }
}

fn execute(points: &[Point]) -> Result<Vec<RunRecord>, ExperimentError> {
    let jobs: Vec<(usize, &PolicySpec, u64)> = points
        .iter()
        .enumerate()
        .flat_map(|(i, p)| {
            p.config
                .policies
                .iter()
                .flat_map(move |policy| p.config.seeds.iter().map(move |&seed| (i, policy, seed)))
        })
        .collect();
    let mut runs: Vec<RunRecord> = jobs
        .par_iter()
        .map(|&(i, policy, seed)| {
            let p = &points[i];
            let state = build_policy(&p.spec, policy, &p.solution)?;
            let run = run_simulation(&p.spec, state, &p.run_config(seed))?;
            Ok(RunRecord {
                axis_value: p.axis_value,
                seed,
                result: run.result,
                checkpoints: run.checkpoints,
                trace: run.trace,
                bounds: Vec::new(),
            })
        })
        .collect::<Result<_, ExperimentError>>()?;

    // Bounds need the stationary policy's average on the same point and seed.
    let mut stationary_avg: BTreeMap<(usize, u64), f64> = BTreeMap::new();
    for (&(i, policy, seed), run) in jobs.iter().zip(&runs) {
        if *policy == PolicySpec::Stationary {
            stationary_avg.entry((i, seed)).or_insert(run.result.network_avg);
        }
    }
    for (&(i, policy, seed), run) in jobs.iter().zip(runs.iter_mut()) {
        let p = &points[i];
        let avg_c = stationary_avg.get(&(i, seed)).copied();
        run.bounds = bound_reports(&run.result, &p.solution, &p.spec, policy, avg_c);
    }
    Ok(runs)
}

fn point_solution(p: &Point) -> PointSolution {
    PointSolution {
        axis_value: p.axis_value,
        link_count: p.spec.link_count,
        solution: p.solution.clone(),
        lower_bound: average_age_lower_bound(p.solution.peak_opt, &p.spec),
    }
}

/// Runs every `(policy, seed)` pair of `config`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput, ExperimentError> {
    config.validate()?;
    let points = vec![Point::new(None, config.clone(), Vec::new())?];
    let runs = execute(&points)?;
    Ok(ExperimentOutput {
        config_hash: config.config_hash(),
        axis: None,
        solutions: points.iter().map(point_solution).collect(),
        runs,
    })
}

/// Runs the base experiment at every axis value. The time axis is a single
/// point whose values become running-estimate checkpoints.
pub fn run_sweep(sweep: &SweepSpec) -> Result<ExperimentOutput, ExperimentError> {
    sweep.validate()?;
    let points = match sweep.axis {
        SweepAxis::Time => {
            let checkpoints = sweep.values.iter().map(|&v| v as u64).collect();
            vec![Point::new(None, sweep.base.clone(), checkpoints)?]
        }
        _ => sweep
            .values
            .iter()
            .map(|&v| Point::new(Some(v), sweep.point_config(v), Vec::new()))
            .collect::<Result<_, _>>()?,
    };
    let runs = execute(&points)?;
    Ok(ExperimentOutput {
        config_hash: sweep.config_hash(),
        axis: Some(sweep.axis),
        solutions: points.iter().map(point_solution).collect(),
        runs,
    })
}

/// One line of a results file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub config_hash: String,
    pub seed: u64,
    pub axis_value: Option<f64>,
    pub policy: String,
    /// Link index, or `net` for the weighted network aggregate.
    pub link: String,
    pub peak: f64,
    pub avg: f64,
    pub successes: Option<u64>,
    pub activations: Option<u64>,
    pub conservation_residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub config_hash: String,
    pub seed: u64,
    pub axis_value: Option<f64>,
    pub policy: String,
    pub bound_name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckpointRow {
    pub config_hash: String,
    pub seed: u64,
    pub axis_value: Option<f64>,
    pub policy: String,
    pub t: u64,
    pub network_peak: f64,
    pub network_avg: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub config_hash: String,
    pub seed: u64,
    pub policy: String,
    pub t: u64,
    pub scheduled: String,
    /// One `0`/`1` character per link.
    pub successes: String,
}

/// Per-link rows followed by the network row, for every run. The network
/// row's residual is the largest-magnitude per-link residual. Time sweeps
/// emit one network row per checkpoint, with the checkpoint as axis value.
pub fn result_rows(output: &ExperimentOutput) -> Vec<ResultRow> {
    let mut rows = Vec::new();
    for run in &output.runs {
        let r = &run.result;
        let policy = r.policy.to_string();
        let row = |axis_value, link: String, peak, avg, successes, activations, residual| ResultRow {
            config_hash: output.config_hash.clone(),
            seed: run.seed,
            axis_value,
            policy: policy.clone(),
            link,
            peak,
            avg,
            successes,
            activations,
            conservation_residual: residual,
        };
        if output.axis == Some(SweepAxis::Time) {
            for c in &run.checkpoints {
                rows.push(row(Some(c.t as f64), "net".into(), c.network_peak, c.network_avg, None, None, None));
            }
            continue;
        }
        for e in 0..r.per_link_peak.len() {
            rows.push(row(
                run.axis_value,
                e.to_string(),
                r.per_link_peak[e],
                r.per_link_avg[e],
                Some(r.success_counts[e]),
                Some(r.activation_counts[e]),
                Some(r.conservation_residual[e]),
            ));
        }
        let worst = r
            .conservation_residual
            .iter()
            .copied()
            .fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
        rows.push(row(
            run.axis_value,
            "net".into(),
            r.network_peak,
            r.network_avg,
            Some(r.success_counts.iter().sum()),
            Some(r.activation_counts.iter().sum()),
            Some(worst),
        ));
    }
    rows
}

pub fn bound_rows(output: &ExperimentOutput) -> Vec<BoundRow> {
    output
        .runs
        .iter()
        .flat_map(|run| {
            run.bounds.iter().map(move |b| BoundRow {
                config_hash: output.config_hash.clone(),
                seed: run.seed,
                axis_value: run.axis_value,
                policy: run.result.policy.to_string(),
                bound_name: b.bound_name.as_str().to_string(),
                lhs: b.lhs,
                rhs: b.rhs,
                slack: b.slack,
                satisfied: b.satisfied,
            })
        })
        .collect()
}

fn checkpoint_rows(output: &ExperimentOutput) -> Vec<CheckpointRow> {
    output
        .runs
        .iter()
        .flat_map(|run| {
            run.checkpoints.iter().map(move |c| CheckpointRow {
                config_hash: output.config_hash.clone(),
                seed: run.seed,
                axis_value: run.axis_value,
                policy: run.result.policy.to_string(),
                t: c.t,
                network_peak: c.network_peak,
                network_avg: c.network_avg,
            })
        })
        .collect()
}

fn trace_rows(output: &ExperimentOutput) -> Vec<TraceRow> {
    output
        .runs
        .iter()
        .flat_map(|run| {
            run.trace.iter().map(move |s| TraceRow {
                config_hash: output.config_hash.clone(),
                seed: run.seed,
                policy: run.result.policy.to_string(),
                t: s.t,
                scheduled: s.scheduled.to_string(),
                successes: s.successes.iter().map(|&b| if b { '1' } else { '0' }).collect(),
            })
        })
        .collect()
}

/// Serializes rows as CSV with a header line.
pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    w.into_inner().map_err(|e| csv::Error::from(e.into_error()))
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), ExperimentError> {
    let bytes = to_csv(rows).map_err(|source| ExperimentError::Csv {
        path: path.to_path_buf(),
        source,
    })?;
    fs::write(path, bytes).map_err(io_err(path))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), ExperimentError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|source| ExperimentError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    text.push('\n');
    fs::write(path, text).map_err(io_err(path))
}

fn with_suffix(prefix: &str, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{prefix}.{suffix}"))
}

/// Describes a sweep's files so plot data can be rebuilt from a directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepMeta {
    pub config_hash: String,
    pub axis: SweepAxis,
    pub link_count: usize,
    /// Activation budget for k-of-n networks.
    pub k: Option<usize>,
    pub sweep: SweepSpec,
}

/// Files written for one experiment or sweep.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WrittenFiles {
    pub paths: Vec<PathBuf>,
}

fn ensure_parent(prefix: &str) -> Result<(), ExperimentError> {
    let parent = Path::new(prefix).parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(dir) = parent {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    Ok(())
}

fn write_common(
    output: &ExperimentOutput,
    prefix: &str,
    results_name: &str,
    trace_level: TraceLevel,
) -> Result<WrittenFiles, ExperimentError> {
    ensure_parent(prefix)?;
    let mut files = WrittenFiles::default();
    let results = with_suffix(prefix, results_name);
    write_csv(&results, &result_rows(output))?;
    files.paths.push(results);
    let bounds = with_suffix(prefix, "bounds.csv");
    write_csv(&bounds, &bound_rows(output))?;
    files.paths.push(bounds);
    if output.axis != Some(SweepAxis::Time) && trace_level != TraceLevel::None {
        let path = with_suffix(prefix, "checkpoints.csv");
        write_csv(&path, &checkpoint_rows(output))?;
        files.paths.push(path);
    }
    if trace_level == TraceLevel::Full {
        let path = with_suffix(prefix, "trace.csv");
        write_csv(&path, &trace_rows(output))?;
        files.paths.push(path);
    }
    Ok(files)
}

/// Writes `<prefix>.results.csv`, `<prefix>.bounds.csv` and
/// `<prefix>.solution.json`, plus checkpoint and trace files when the
/// trace level asks for them.
pub fn write_experiment(
    output: &ExperimentOutput,
    config: &ExperimentConfig,
    prefix: &str,
) -> Result<WrittenFiles, ExperimentError> {
    let mut files = write_common(output, prefix, "results.csv", config.trace_level)?;
    let path = with_suffix(prefix, "solution.json");
    write_json(&path, &output.solutions[0])?;
    files.paths.push(path);
    Ok(files)
}

/// Writes `<prefix>.sweep.csv`, `<prefix>.bounds.csv`,
/// `<prefix>.solutions.json` and `<prefix>.meta.json`.
pub fn write_sweep(output: &ExperimentOutput, sweep: &SweepSpec, prefix: &str) -> Result<WrittenFiles, ExperimentError> {
    let mut files = write_common(output, prefix, "sweep.csv", sweep.base.trace_level)?;
    let path = with_suffix(prefix, "solutions.json");
    write_json(&path, &output.solutions)?;
    files.paths.push(path);
    let meta = SweepMeta {
        config_hash: output.config_hash.clone(),
        axis: sweep.axis,
        link_count: sweep.base.network.n,
        k: sweep.base.network.k(),
        sweep: sweep.clone(),
    };
    let path = with_suffix(prefix, "meta.json");
    write_json(&path, &meta)?;
    files.paths.push(path);
    Ok(files)
}

/// One line of a plot-data file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlotRow {
    pub x: f64,
    pub series: String,
    pub y: f64,
    /// Standard error over seeds; 0 for a single seed or an analytic curve.
    pub y_stderr: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Figure {
    /// Per-link peak age against the bad-link fraction.
    PeakVsTheta,
    /// Per-link average age against the bad-link fraction, with the lower bound.
    AvgVsTheta,
    /// Running per-link peak age against time.
    PeakVsTime,
    /// Per-link average age against the age-policy offset.
    AvgVsBeta,
}

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::PeakVsTheta, Figure::AvgVsTheta, Figure::PeakVsTime, Figure::AvgVsBeta];

    pub fn file_stem(self) -> &'static str {
        match self {
            Figure::PeakVsTheta => "peak_vs_theta",
            Figure::AvgVsTheta => "avg_vs_theta",
            Figure::PeakVsTime => "peak_vs_time",
            Figure::AvgVsBeta => "avg_vs_beta",
        }
    }

    fn axis(self) -> SweepAxis {
        match self {
            Figure::PeakVsTheta | Figure::AvgVsTheta => SweepAxis::Theta,
            Figure::PeakVsTime => SweepAxis::Time,
            Figure::AvgVsBeta => SweepAxis::Beta,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FigureStatus {
    Written { path: PathBuf, rows: usize },
    Missing { reasons: Vec<String> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlotReport {
    pub figures: Vec<(Figure, FigureStatus)>,
}

impl PlotReport {
    pub fn any_written(&self) -> bool {
        self.figures.iter().any(|(_, s)| matches!(s, FigureStatus::Written { .. }))
    }
}

/// Mean and standard error of the mean.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

struct LoadedSweep {
    meta: SweepMeta,
    rows: Vec<ResultRow>,
    solutions: Vec<PointSolution>,
}

fn load_sweep(meta_path: &Path) -> Result<LoadedSweep, String> {
    let text = fs::read_to_string(meta_path).map_err(|e| format!("{}: {e}", meta_path.display()))?;
    let meta: SweepMeta = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", meta_path.display()))?;
    let name = meta_path.to_string_lossy();
    let prefix = name.strip_suffix(".meta.json").unwrap_or(&name);
    let sweep_path = with_suffix(prefix, "sweep.csv");
    let mut reader = csv::Reader::from_path(&sweep_path).map_err(|e| format!("{}: {e}", sweep_path.display()))?;
    let rows = reader
        .deserialize()
        .collect::<Result<Vec<ResultRow>, _>>()
        .map_err(|e| format!("{}: {e}", sweep_path.display()))?;
    let sol_path = with_suffix(prefix, "solutions.json");
    let solutions = match fs::read_to_string(&sol_path) {
        Ok(t) => serde_json::from_str(&t).map_err(|e| format!("{}: {e}", sol_path.display()))?,
        Err(_) => Vec::new(),
    };
    Ok(LoadedSweep { meta, rows, solutions })
}

fn series_label(policy: &str, k: Option<usize>) -> String {
    match k {
        Some(k) => format!("{policy} K={k}"),
        None => policy.to_string(),
    }
}

fn figure_rows(figure: Figure, sweeps: &[&LoadedSweep]) -> Vec<PlotRow> {
    // (series, x bits) -> per-seed y values; BTreeMap keeps output ordered.
    let mut groups: BTreeMap<(String, u64), (f64, Vec<f64>)> = BTreeMap::new();
    let mut out = Vec::new();
    for s in sweeps {
        let n = s.meta.link_count as f64;
        for r in s.rows.iter().filter(|r| r.link == "net") {
            let Some(x) = r.axis_value else { continue };
            let y = match figure {
                Figure::PeakVsTheta | Figure::PeakVsTime => r.peak,
                Figure::AvgVsTheta | Figure::AvgVsBeta => r.avg,
            } / n;
            // On the beta axis the policy parameter is the x value itself.
            let policy = match figure {
                Figure::AvgVsBeta => r.policy.split('(').next().unwrap_or(&r.policy),
                _ => &r.policy,
            };
            let key = (series_label(policy, s.meta.k), x.to_bits());
            groups.entry(key).or_insert((x, Vec::new())).1.push(y);
        }
        if figure == Figure::AvgVsTheta {
            for p in &s.solutions {
                if let Some(x) = p.axis_value {
                    out.push(PlotRow {
                        x,
                        series: series_label("lower bound", s.meta.k),
                        y: p.lower_bound / p.link_count as f64,
                        y_stderr: 0.0,
                    });
                }
            }
        }
    }
    for ((series, _), (x, ys)) in groups {
        // A peak estimate is infinite until the first success; such points are not plottable.
        if ys.iter().any(|y| !y.is_finite()) {
            continue;
        }
        let (y, y_stderr) = mean_stderr(&ys);
        out.push(PlotRow { x, series, y, y_stderr });
    }
    out.sort_by(|a, b| a.series.cmp(&b.series).then(a.x.total_cmp(&b.x)));
    out
}

/// Builds one `x, series, y, y_stderr` CSV per figure from the sweep
/// results in `results_dir`. Figures without inputs are reported, not
/// written.
pub fn emit_plot_data(results_dir: &Path, out_dir: &Path) -> Result<PlotReport, ExperimentError> {
    let mut metas: Vec<PathBuf> = match fs::read_dir(results_dir) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.to_string_lossy().ends_with(".meta.json"))
            .collect(),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Vec::new(),
        Err(e) => return Err(io_err(results_dir)(e)),
    };
    metas.sort();

    let mut loaded = Vec::new();
    let mut load_errors = Vec::new();
    for path in &metas {
        match load_sweep(path) {
            Ok(s) => loaded.push(s),
            Err(e) => load_errors.push(e),
        }
    }

    let mut report = PlotReport { figures: Vec::new() };
    for figure in Figure::ALL {
        let inputs: Vec<&LoadedSweep> = loaded.iter().filter(|s| s.meta.axis == figure.axis()).collect();
        let rows = figure_rows(figure, &inputs);
        if rows.is_empty() {
            let mut reasons = vec![format!(
                "missing inputs: no {}-axis sweep results in {}",
                figure.axis().as_str(),
                results_dir.display()
            )];
            reasons.extend(load_errors.iter().cloned());
            report.figures.push((figure, FigureStatus::Missing { reasons }));
            continue;
        }
        fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
        let path = out_dir.join(format!("{}.csv", figure.file_stem()));
        write_csv(&path, &rows)?;
        report.figures.push((
            figure,
            FigureStatus::Written {
                path,
                rows: rows.len(),
            },
        ));
    }
    Ok(report)
}
