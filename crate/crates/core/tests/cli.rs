use std::path::Path;
use std::process::{Command, Output};
use std::time::Duration;

use mtilp::bench::{run_bench, BenchConfig};
use mtilp::datasets::{gen_kinship, gen_priority_scenario, gen_robot, TaskDir};
use mtilp::scheduler::StrategyKind;

fn mtilp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtilp")).args(args).output().unwrap()
}

fn bench_cfg(data: &Path, out: &Path, strategies: Vec<StrategyKind>, trials: usize, timeout: Duration) -> BenchConfig {
    BenchConfig {
        strategies,
        preserve: vec![false],
        trials,
        timeout,
        sample_interval: Duration::from_millis(500),
        seed: 3,
        dataset: data.to_owned(),
        out: out.to_owned(),
    }
}

#[test]
fn single_trial_on_kinship_solves_both_tasks() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("k");
    gen_kinship(2).unwrap().write_dir(&data).unwrap();
    let out = dir.path().join("r.csv");
    let report = run_bench(&bench_cfg(&data, &out, vec![StrategyKind::Id], 1, Duration::from_secs(2))).unwrap();
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next().unwrap(), "strategy,preserve,trial,elapsed_s,solved,total");
    assert_eq!(text.lines().last().unwrap(), "id,false,0,2.000,2,2");
    assert_eq!(report.summary[0].stddev, 0.0);
}

#[test]
fn tiny_timeout_gives_zero_solved_rows() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("s");
    gen_priority_scenario().unwrap().write_dir(&data).unwrap();
    let out = dir.path().join("r.csv");
    run_bench(&bench_cfg(&data, &out, vec![StrategyKind::ResetBfs], 2, Duration::from_millis(1))).unwrap();
    let mut rdr = csv::Reader::from_path(&out).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    for r in rows {
        assert_eq!(r.len(), 6);
        assert_eq!(&r[4], "0");
        assert_eq!(&r[5], "5");
    }
}

/// Recomputes the summary from the results CSV without the library.
#[test]
fn summary_matches_results() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("k");
    gen_kinship(3).unwrap().write_dir(&data).unwrap();
    let out = dir.path().join("r.csv");
    let strategies = vec![StrategyKind::Naive, StrategyKind::PrioCons];
    let cfg = bench_cfg(&data, &out, strategies, 3, Duration::from_secs(1));
    run_bench(&cfg).unwrap();

    let mut finals: Vec<((String, String), Vec<f64>)> = Vec::new();
    let mut last: Option<csv::StringRecord> = None;
    let flush = |r: &csv::StringRecord, finals: &mut Vec<((String, String), Vec<f64>)>| {
        let key = (r[0].to_owned(), r[1].to_owned());
        let x: f64 = r[4].parse().unwrap();
        match finals.iter_mut().find(|(k, _)| *k == key) {
            Some((_, xs)) => xs.push(x),
            None => finals.push((key, vec![x])),
        }
    };
    for r in csv::Reader::from_path(&out).unwrap().records().map(Result::unwrap) {
        if let Some(prev) = &last {
            if prev[2] != r[2] || prev[0] != r[0] {
                flush(prev, &mut finals);
            } else {
                let (a, b): (f64, f64) = (prev[3].parse().unwrap(), r[3].parse().unwrap());
                assert!(a <= b, "elapsed_s must not decrease within a trial");
            }
        }
        last = Some(r);
    }
    flush(&last.unwrap(), &mut finals);

    let summary: Vec<csv::StringRecord> =
        csv::Reader::from_path(cfg.summary_path()).unwrap().records().map(Result::unwrap).collect();
    assert_eq!(summary.len(), finals.len());
    for (row, ((s, p), xs)) in summary.iter().zip(&finals) {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let sd = (xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n).sqrt();
        let min = xs.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!((&row[0], &row[1]), (s.as_str(), p.as_str()));
        assert_eq!(row[2].parse::<f64>().unwrap(), min);
        assert_eq!(row[3].parse::<f64>().unwrap(), max);
        assert!((row[4].parse::<f64>().unwrap() - sd).abs() < 1e-4);
    }
}

#[test]
fn bad_bench_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = bench_cfg(dir.path(), &dir.path().join("r.csv"), vec![StrategyKind::Id], 0, Duration::from_secs(1));
    assert!(run_bench(&cfg).is_err());
}

#[test]
fn missing_dataset_is_a_usage_error() {
    let out = mtilp(&["learn", "--strategy", "id"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(mtilp(&["bench", "--bogus"]).status.code(), Some(2));
    assert_eq!(mtilp(&["learn", "--dataset", "x", "--strategy", "dfs"]).status.code(), Some(2));
}

#[test]
fn unreadable_dataset_is_a_runtime_failure() {
    let out = mtilp(&["learn", "--dataset", "/no/such/dir"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gen_robot_matches_the_generator() {
    let dir = tempfile::tempdir().unwrap();
    let cli_dir = dir.path().join("cli");
    let lib_dir = dir.path().join("lib");
    let out = mtilp(&["gen", "robot", "--distances", "2,4,8", "--out", cli_dir.to_str().unwrap()]);
    assert!(out.status.success());
    gen_robot(&[2, 4, 8]).unwrap().write_dir(&lib_dir).unwrap();
    let listing = |d: &Path| {
        let mut files: Vec<(String, String)> = walk(d)
            .into_iter()
            .map(|p| (p.strip_prefix(d).unwrap().display().to_string(), std::fs::read_to_string(&p).unwrap()))
            .collect();
        files.sort();
        files
    };
    assert_eq!(listing(&cli_dir), listing(&lib_dir));
    assert_eq!(TaskDir::load_dir(&cli_dir).unwrap().task_names(), vec!["f2", "f4", "f8"]);
}

fn walk(d: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for e in std::fs::read_dir(d).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out
}

#[test]
fn learn_prints_the_kinship_programs() {
    let dir = tempfile::tempdir().unwrap();
    gen_kinship(2).unwrap().write_dir(dir.path()).unwrap();
    let out = mtilp(&["learn", "--strategy", "id", "--dataset", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("isGrandfather(A,B):-isFather(A,C),isFather(C,B)."), "{text}");
    assert!(text.contains("isGrandmother(A,B):-isGrandfather(C,B),isWife(A,C)."), "{text}");
}
