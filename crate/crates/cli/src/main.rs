use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aoi_core::config::{ConfigError, ExperimentConfig, SweepSpec};
use aoi_core::experiment::{
    emit_plot_data, mean_stderr, run_experiment, run_sweep, solve_network, write_experiment, write_sweep,
    ExperimentError, ExperimentOutput, FigureStatus,
};
use aoi_core::stationary::average_age_lower_bound;
use clap::{Args, Parser, Subcommand};

/// Age-of-information scheduling experiments.
#[derive(Parser)]
#[command(name = "aoi", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an experiment or sweep configuration.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Solve the stationary program for the configured network.
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// Write `<prefix>.solution.json` instead of printing.
        #[arg(long)]
        out: Option<String>,
    },
    /// Run every policy and seed of one experiment configuration.
    Simulate(RunArgs),
    /// Run a sweep specification.
    Sweep(RunArgs),
    /// Build per-figure plot data from sweep results.
    Plotdata {
        /// Directory holding `*.meta.json` sweep outputs.
        #[arg(long)]
        results: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output path prefix; defaults to the config's `output`.
    #[arg(long)]
    out: Option<String>,
    /// Comma-separated seeds.
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
    #[arg(long)]
    horizon: Option<u64>,
}

impl RunArgs {
    fn apply(&self, config: &mut ExperimentConfig) {
        if let Some(seeds) = &self.seeds {
            config.seeds = seeds.clone();
        }
        if let Some(h) = self.horizon {
            config.horizon = h;
        }
        if let Some(out) = &self.out {
            config.output = out.clone();
        }
    }
}

fn read(path: &Path) -> Result<String, ExperimentError> {
    fs::read_to_string(path).map_err(|source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Both document kinds are accepted; a `base` key marks a sweep.
enum Document {
    Experiment(ExperimentConfig),
    Sweep(SweepSpec),
}

fn parse_document(text: &str) -> Result<Document, ConfigError> {
    let is_sweep = serde_json::from_str::<serde_json::Value>(text)
        .map(|v| v.get("base").is_some())
        .unwrap_or(false);
    if is_sweep {
        SweepSpec::from_json(text).map(Document::Sweep)
    } else {
        ExperimentConfig::from_json(text).map(Document::Experiment)
    }
}

fn load_experiment(path: &Path) -> Result<ExperimentConfig, ExperimentError> {
    match parse_document(&read(path)?)? {
        Document::Experiment(c) => Ok(c),
        Document::Sweep(s) => Ok(s.base),
    }
}

/// Axis value bits and policy label.
type SummaryKey = (Option<u64>, String);

/// Seed means of per-link peak and average age, per axis value and policy.
fn print_summary(output: &ExperimentOutput) {
    let n = output.solutions[0].link_count as f64;
    let mut by_policy: BTreeMap<SummaryKey, Vec<(f64, f64)>> = BTreeMap::new();
    let mut order = Vec::new();
    for run in &output.runs {
        let key = (run.axis_value.map(f64::to_bits), run.result.policy.to_string());
        if !by_policy.contains_key(&key) {
            order.push((run.axis_value, key.clone()));
        }
        by_policy
            .entry(key)
            .or_default()
            .push((run.result.network_peak / n, run.result.network_avg / n));
    }
    println!("{:>10}  {:<14} {:>20} {:>20}", "axis", "policy", "peak/link", "avg/link");
    for (axis, key) in order {
        let (peaks, avgs): (Vec<f64>, Vec<f64>) = by_policy[&key].iter().copied().unzip();
        let (p, ps) = mean_stderr(&peaks);
        let (a, as_) = mean_stderr(&avgs);
        let axis = axis.map_or("-".to_string(), |v| v.to_string());
        println!("{axis:>10}  {:<14} {p:>12.4} ± {ps:<6.4} {a:>12.4} ± {as_:<6.4}", key.1);
    }
    for s in &output.solutions {
        let axis = s.axis_value.map_or("-".to_string(), |v| v.to_string());
        println!(
            "{axis:>10}  optimum peak/link {:.4}, average lower bound/link {:.4}",
            s.solution.peak_opt / n,
            s.lower_bound / n
        );
    }
}

fn run(cli: Cli) -> Result<(), ExperimentError> {
    match cli.command {
        Command::Validate { config } => {
            match parse_document(&read(&config)?)? {
                Document::Experiment(c) => println!("valid experiment configuration (hash {})", c.config_hash()),
                Document::Sweep(s) => println!(
                    "valid {} sweep over {} values (hash {})",
                    s.axis.as_str(),
                    s.values.len(),
                    s.config_hash()
                ),
            }
            Ok(())
        }
        Command::Solve { config, out } => {
            let config = load_experiment(&config)?;
            let spec = config.network.build();
            let solution = solve_network(&spec)?;
            let report = serde_json::json!({
                "config_hash": config.config_hash(),
                "solution": solution,
                "lower_bound": average_age_lower_bound(solution.peak_opt, &spec),
            });
            let text = serde_json::to_string_pretty(&report).expect("solution serializes") + "\n";
            match out {
                Some(prefix) => {
                    let path = PathBuf::from(format!("{prefix}.solution.json"));
                    if let Some(dir) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                        fs::create_dir_all(dir).map_err(|source| ExperimentError::Io {
                            path: dir.to_path_buf(),
                            source,
                        })?;
                    }
                    fs::write(&path, text).map_err(|source| ExperimentError::Io { path: path.clone(), source })?;
                    println!("{}", path.display());
                }
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Simulate(args) => {
            let mut config = load_experiment(&args.config)?;
            args.apply(&mut config);
            config.validate()?;
            let output = run_experiment(&config)?;
            print_summary(&output);
            for p in write_experiment(&output, &config, &config.output)?.paths {
                println!("wrote {}", p.display());
            }
            Ok(())
        }
        Command::Sweep(args) => {
            let mut sweep = match parse_document(&read(&args.config)?)? {
                Document::Sweep(s) => s,
                Document::Experiment(_) => {
                    return Err(ConfigError(vec![aoi_core::config::ConfigIssue {
                        path: "<root>".into(),
                        message: "expected a sweep specification with axis, values and base".into(),
                    }])
                    .into())
                }
            };
            args.apply(&mut sweep.base);
            sweep.validate()?;
            let output = run_sweep(&sweep)?;
            print_summary(&output);
            for p in write_sweep(&output, &sweep, &sweep.base.output)?.paths {
                println!("wrote {}", p.display());
            }
            Ok(())
        }
        Command::Plotdata { results, out } => {
            let report = emit_plot_data(&results, &out)?;
            for (figure, status) in &report.figures {
                match status {
                    FigureStatus::Written { path, rows } => {
                        println!("{}: wrote {} ({rows} rows)", figure.file_stem(), path.display())
                    }
                    FigureStatus::Missing { reasons } => {
                        for r in reasons {
                            eprintln!("{}: {r}", figure.file_stem());
                        }
                    }
                }
            }
            if report.any_written() {
                Ok(())
            } else {
                Err(ExperimentError::Io {
                    path: results,
                    source: std::io::Error::new(std::io::ErrorKind::NotFound, "no plot inputs found"),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors count as validation errors; 2 is reserved for the solver.
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(ExperimentError::Config(e)) => {
            for issue in &e.0 {
                eprintln!("error: {issue}");
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
