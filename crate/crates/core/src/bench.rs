//! Repeated timed runs of several strategies over one dataset.
//!
//! Each (strategy, preserve, trial) run is sampled on a fixed grid of
//! `sample_interval` steps up to the timeout. The solved count at a grid
//! point is the number of solutions whose trace timestamp is at or before
//! it, so the grid only decides where the curve is read, never what it
//! says.

use std::fs::File;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::datasets::{DatasetError, TaskDir};
use crate::scheduler::{run, MultiTaskProblem, StrategyConfig, StrategyKind};
use crate::trace::EventKind;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid bench config: {0}")]
    Config(String),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error("writing {path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("writing {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub strategies: Vec<StrategyKind>,
    /// Each strategy runs once per flag listed here.
    pub preserve: Vec<bool>,
    pub trials: usize,
    pub timeout: Duration,
    pub sample_interval: Duration,
    pub seed: u64,
    pub dataset: PathBuf,
    pub out: PathBuf,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |m: &str| Err(BenchError::Config(m.to_owned()));
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.timeout.is_zero() {
            return bad("timeout must be positive");
        }
        if self.sample_interval.is_zero() {
            return bad("sample interval must be positive");
        }
        if self.strategies.is_empty() || self.preserve.is_empty() {
            return bad("no strategy to run");
        }
        Ok(())
    }

    /// Where the summary goes: `<out stem>_summary.csv` next to `out`.
    pub fn summary_path(&self) -> PathBuf {
        let stem = self.out.file_stem().map_or("bench".into(), |s| s.to_string_lossy().into_owned());
        self.out.with_file_name(format!("{stem}_summary.csv"))
    }
}

/// One line of the results CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleRow {
    pub strategy: StrategyKind,
    pub preserve: bool,
    pub trial: usize,
    pub elapsed: Duration,
    pub solved: usize,
    pub total: usize,
}

/// One line of the summary CSV, over the final solved counts of all trials.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub strategy: StrategyKind,
    pub preserve: bool,
    pub min: usize,
    pub max: usize,
    /// Population standard deviation of the final solved counts.
    pub stddev: f64,
    /// Standard error of the mean: sample standard deviation over
    /// `sqrt(trials)`, zero for a single trial.
    pub stderr: f64,
}

#[derive(Clone, Debug, Default)]
pub struct BenchReport {
    pub rows: Vec<SampleRow>,
    pub summary: Vec<SummaryRow>,
}

/// Seed for one trial; every strategy sees the same task order in a trial.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng.next_u64()
}

/// Grid points `interval, 2*interval, ...` up to and including `timeout`.
pub fn sample_grid(interval: Duration, timeout: Duration) -> Vec<Duration> {
    let mut grid = Vec::new();
    let mut t = interval;
    while t < timeout {
        grid.push(t);
        t += interval;
    }
    grid.push(timeout);
    grid
}

/// Standard error of the mean.
pub fn standard_error(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let n = xs.len() as f64;
    let (mean, _) = population_stats(xs);
    let sample_var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (sample_var / n).sqrt()
}

/// Population mean and standard deviation.
pub fn population_stats(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> BenchError + '_ {
    move |source| BenchError::Csv { path: path.to_owned(), source }
}

fn open_writer(path: &Path) -> Result<csv::Writer<File>, BenchError> {
    let file = File::create(path).map_err(|source| BenchError::Io { path: path.to_owned(), source })?;
    Ok(csv::Writer::from_writer(file))
}

/// Loads `cfg.dataset` and runs the benchmark, writing both CSVs.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    cfg.validate()?;
    let problem = TaskDir::load_dir(&cfg.dataset)?.to_problem()?;
    run_bench_on(&problem, cfg)
}

/// Runs the benchmark over an already loaded problem. `cfg.dataset` is
/// ignored.
pub fn run_bench_on(problem: &MultiTaskProblem, cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    cfg.validate()?;
    let total = problem.tasks().len();
    let grid = sample_grid(cfg.sample_interval, cfg.timeout);
    let mut out = open_writer(&cfg.out)?;
    let err = csv_err(&cfg.out);
    out.write_record(["strategy", "preserve", "trial", "elapsed_s", "solved", "total"]).map_err(&err)?;
    out.flush().map_err(|e| err(e.into()))?;

    let mut report = BenchReport::default();
    for &strategy in &cfg.strategies {
        for &preserve in &cfg.preserve {
            let mut finals = Vec::with_capacity(cfg.trials);
            for trial in 0..cfg.trials {
                let run_cfg = StrategyConfig::new(strategy)
                    .preserve(preserve)
                    .timeout(cfg.timeout)
                    .seed(trial_seed(cfg.seed, trial));
                let outcome = run(problem, &run_cfg);
                let solves: Vec<Duration> = outcome.trace.of_kind(EventKind::Solved).map(|e| e.elapsed).collect();
                for &at in &grid {
                    let row = SampleRow {
                        strategy,
                        preserve,
                        trial,
                        elapsed: at,
                        solved: solves.iter().filter(|&&s| s <= at).count(),
                        total,
                    };
                    out.write_record([
                        strategy.name().to_owned(),
                        preserve.to_string(),
                        trial.to_string(),
                        format!("{:.3}", at.as_secs_f64()),
                        row.solved.to_string(),
                        total.to_string(),
                    ])
                    .map_err(&err)?;
                    out.flush().map_err(|e| err(e.into()))?;
                    report.rows.push(row);
                }
                finals.push(report.rows.last().map_or(0, |r| r.solved));
            }
            let xs: Vec<f64> = finals.iter().map(|&n| n as f64).collect();
            report.summary.push(SummaryRow {
                strategy,
                preserve,
                min: finals.iter().copied().min().unwrap_or(0),
                max: finals.iter().copied().max().unwrap_or(0),
                stddev: population_stats(&xs).1,
                stderr: standard_error(&xs),
            });
        }
    }

    let path = cfg.summary_path();
    let mut sum = open_writer(&path)?;
    let err = csv_err(&path);
    sum.write_record(["strategy", "preserve", "min", "max", "stddev", "stderr"]).map_err(&err)?;
    for s in &report.summary {
        sum.write_record([
            s.strategy.name().to_owned(),
            s.preserve.to_string(),
            s.min.to_string(),
            s.max.to_string(),
            format!("{:.4}", s.stddev),
            format!("{:.4}", s.stderr),
        ])
        .map_err(&err)?;
    }
    sum.flush().map_err(|e| err(e.into()))?;
    Ok(report)
}
