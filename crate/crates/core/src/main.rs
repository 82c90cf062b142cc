use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use mtilp::bench::{run_bench, BenchConfig};
use mtilp::datasets::{gen_kinship, gen_printer, gen_priority_scenario, gen_robot, gen_strings, Pattern, TaskDir};
use mtilp::scheduler::{run, StrategyConfig, StrategyKind};

#[derive(Parser)]
#[command(name = "mtilp", version, about = "Multi-task inductive logic programming")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated dataset directory.
    Gen {
        #[command(subcommand)]
        which: GenCmd,
    },
    /// Run one strategy once and print the learned programs.
    Learn(LearnArgs),
    /// Run repeated timed trials and write the results and summary CSVs.
    Bench(BenchArgs),
}

#[derive(Subcommand)]
enum GenCmd {
    Kinship {
        #[arg(long, default_value_t = 2)]
        generations: usize,
        #[arg(long)]
        out: PathBuf,
    },
    Robot {
        #[arg(long, value_delimiter = ',', default_value = "2,4,8,16")]
        distances: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    Printer {
        #[arg(long, value_delimiter = ',', value_parser = parse_pattern, default_value = "zebra,cube")]
        patterns: Vec<Pattern>,
        #[arg(long, default_value_t = 3)]
        width: usize,
        #[arg(long, default_value_t = 3)]
        height: usize,
        #[arg(long)]
        out: PathBuf,
    },
    Strings {
        #[arg(long)]
        out: PathBuf,
    },
    /// The task-ordering scenario used to compare priority heuristics.
    Scenario {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct LearnArgs {
    #[arg(long)]
    dataset: PathBuf,
    #[arg(long, value_parser = parse_strategy, default_value = "id")]
    strategy: StrategyKind,
    #[arg(long)]
    preserve: bool,
    #[arg(long = "timeout-s")]
    timeout_s: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    dataset: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Repeat or comma-separate to run several. Defaults to all six.
    #[arg(long, value_delimiter = ',', value_parser = parse_strategy)]
    strategy: Vec<StrategyKind>,
    #[arg(long)]
    preserve: bool,
    #[arg(long = "timeout-s", default_value_t = 120.0)]
    timeout_s: f64,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "sample-interval-s", default_value_t = 1.0)]
    sample_interval_s: f64,
}

fn parse_strategy(s: &str) -> Result<StrategyKind, String> {
    s.parse().map_err(|e: mtilp::scheduler::UnknownStrategy| e.to_string())
}

fn parse_pattern(s: &str) -> Result<Pattern, String> {
    s.parse::<Pattern>().map_err(|e| e.to_string())
}

fn seconds(s: f64, flag: &str) -> Result<Duration> {
    Duration::try_from_secs_f64(s).with_context(|| format!("{flag} must be a nonnegative number of seconds"))
}

fn write(dir: Result<TaskDir, mtilp::datasets::DatasetError>, out: &Path) -> Result<()> {
    dir?.write_dir(out)?;
    println!("wrote {}", out.display());
    Ok(())
}

fn gen(which: GenCmd) -> Result<()> {
    match which {
        GenCmd::Kinship { generations, out } => write(gen_kinship(generations), &out),
        GenCmd::Robot { distances, out } => write(gen_robot(&distances), &out),
        GenCmd::Printer { patterns, width, height, out } => write(gen_printer(&patterns, width, height), &out),
        GenCmd::Strings { out } => write(gen_strings(), &out),
        GenCmd::Scenario { out } => write(gen_priority_scenario(), &out),
    }
}

fn learn(a: LearnArgs) -> Result<()> {
    let problem = TaskDir::load_dir(&a.dataset)?.to_problem()?;
    let mut cfg = StrategyConfig::new(a.strategy).preserve(a.preserve).seed(a.seed);
    if let Some(t) = a.timeout_s {
        cfg = cfg.timeout(seconds(t, "--timeout-s")?);
    }
    let out = run(&problem, &cfg);
    for task in problem.tasks() {
        match out.solutions.get(task.name()) {
            Some(s) => {
                println!("% {} (size {}, {:.3}s)", task.name(), s.literals, s.elapsed.as_secs_f64());
                println!("{}", s.program);
            }
            None => println!("% {} unsolved", task.name()),
        }
    }
    println!("% {} of {} solved, {} hypotheses tested", out.solutions.len(), problem.tasks().len(), out.tested_count());
    Ok(())
}

fn bench(a: BenchArgs) -> Result<()> {
    let strategies = if a.strategy.is_empty() { StrategyKind::ALL.to_vec() } else { a.strategy };
    let cfg = BenchConfig {
        strategies,
        preserve: vec![a.preserve],
        trials: a.trials,
        timeout: seconds(a.timeout_s, "--timeout-s")?,
        sample_interval: seconds(a.sample_interval_s, "--sample-interval-s")?,
        seed: a.seed,
        dataset: a.dataset,
        out: a.out,
    };
    let report = run_bench(&cfg)?;
    for s in &report.summary {
        println!(
            "{}\tpreserve={}\tmin={}\tmax={}\tstddev={:.4}\tstderr={:.4}",
            s.strategy, s.preserve, s.min, s.max, s.stddev, s.stderr
        );
    }
    println!("wrote {} and {}", cfg.out.display(), cfg.summary_path().display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Gen { which } => gen(which),
        Cmd::Learn(a) => learn(a),
        Cmd::Bench(a) => bench(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
