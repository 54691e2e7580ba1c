use std::path::Path;
use std::process::{Command, Output};

use pushopt_cli::config::CommandDefaults;
use pushopt_cli::{Flags, RunConfig, SelectionKind};
use pushopt_core::evaluator::{episode_seed, run_episode};
use pushopt_core::{BenchmarkFunction, BenchmarkId, EvaluationConfig, EvolutionConfig, Program};

fn pushopt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pushopt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = pushopt(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

fn data_rows(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).skip(1).collect()
}

#[test]
fn default_flags_are_the_standard_settings() {
    let cfg = RunConfig::resolve(
        &Flags::default(),
        CommandDefaults {
            repeats: 10,
            functions: &[BenchmarkId::F1],
        },
    )
    .unwrap();
    assert_eq!(cfg.population, 200);
    assert_eq!(cfg.generations, 50);
    assert_eq!(cfg.tournament, 5);
    assert_eq!(cfg.size_limit, 100);
    assert_eq!(cfg.exec_budget, 100);
    assert_eq!(cfg.repeats, 10);
    assert_eq!(cfg.moves, 1000);
    assert_eq!(cfg.dimension, 10);
    assert_eq!(cfg.selection, SelectionKind::Tournament);
    let evo = cfg.evolution(vec![]);
    let standard = EvolutionConfig::new(vec![]);
    assert_eq!(evo.evaluation, standard.evaluation);
    assert_eq!(evo.rates, standard.rates);
}

const SMALL_EVOLVE: &[&str] = &[
    "evolve", "--dim", "2", "--population", "16", "--generations", "2", "--moves", "40", "--repeats", "2",
];

#[test]
fn evolve_writes_artifacts_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (name, threads) in [("a", "1"), ("b", "1"), ("c", "8")] {
        let out = dir.path().join(name);
        let mut args = SMALL_EVOLVE.to_vec();
        args.extend(["--seed", "7", "--threads", threads, "--out", out.to_str().unwrap()]);
        ok(&args);
        outputs.push(out);
    }
    let champion = read(&outputs[0].join("champion.push"));
    for other in &outputs[1..] {
        assert_eq!(read(&other.join("champion.push")), champion);
        assert_eq!(read(&other.join("stats.csv")), read(&outputs[0].join("stats.csv")));
    }
    assert!(champion.starts_with("; pushopt champion"));
    assert!(champion.contains("; seed = 7"));
    let text: String = champion.lines().filter(|l| !l.starts_with(';')).collect();
    assert!(text.parse::<Program>().is_ok());

    let stats = read(&outputs[0].join("stats.csv"));
    assert!(stats.contains("# seed = 7"));
    assert_eq!(data_rows(&stats).len(), 3);
    assert_eq!(read(&outputs[0].join("best_programs.log")).lines().count(), 3);
    let manifest = read(&outputs[0].join("manifest.toml"));
    assert!(manifest.contains("seed = 7") && !manifest.contains("threads"));
}

#[test]
fn manifest_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first");
    let again = dir.path().join("again");
    let mut args = SMALL_EVOLVE.to_vec();
    args.extend(["--seed", "3", "--out", first.to_str().unwrap()]);
    ok(&args);
    let manifest = first.join("manifest.toml");
    ok(&["evolve", "--config", manifest.to_str().unwrap(), "--out", again.to_str().unwrap()]);
    assert_eq!(read(&first.join("champion.push")), read(&again.join("champion.push")));
    assert_eq!(read(&first.join("stats.csv")), read(&again.join("stats.csv")));
}

#[test]
fn lexicase_on_four_functions_has_four_cases() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = SMALL_EVOLVE.to_vec();
    args.extend([
        "--function",
        "F1,F2,F6,F9",
        "--selection",
        "lexicase",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    ok(&args);
    let stats = read(&dir.path().join("stats.csv"));
    let header = stats.lines().find(|l| !l.starts_with('#')).unwrap();
    assert!(header.ends_with("case_F1,case_F2,case_F6,case_F9"));
    for row in data_rows(&stats) {
        assert_eq!(row.split(',').count(), 9);
    }
}

#[test]
fn eval_with_one_repeat_is_one_episode() {
    let dir = tempfile::tempdir().unwrap();
    let report = ok(&["eval", "builtin:F1", "--repeats", "1", "--seed", "11", "--out", dir.path().to_str().unwrap()]);
    let f = BenchmarkFunction::official(BenchmarkId::F1, 10).unwrap();
    let cfg = EvaluationConfig {
        repeats: 1,
        seed: 11,
        ..EvaluationConfig::default()
    };
    let (_, text) = pushopt_core::reference_programs::EVOLVED_OPTIMISERS[0];
    let episode = run_episode(&text.parse().unwrap(), &f, &cfg, episode_seed(11, 0));
    assert!(report.contains(&format!("F1 mean_best_error {:e}\n", episode.best_error)));
    assert_eq!(read(&dir.path().join("eval.txt")), report);
}

#[test]
fn eval_of_the_empty_program_reports_the_start_error() {
    let dir = tempfile::tempdir().unwrap();
    let program = dir.path().join("empty.push");
    std::fs::write(&program, "; nothing\n()\n").unwrap();
    let report = ok(&[
        "eval",
        program.to_str().unwrap(),
        "--function",
        "F9",
        "--dim",
        "3",
        "--repeats",
        "5",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    let f = BenchmarkFunction::official(BenchmarkId::F9, 3).unwrap();
    let cfg = EvaluationConfig {
        repeats: 5,
        ..EvaluationConfig::default()
    };
    let starts: f64 = (0..5)
        .map(|i| run_episode(&Program::empty(), &f, &cfg, episode_seed(0, i)).initial_error)
        .sum::<f64>()
        / 5.0;
    assert!(report.contains(&format!("F9 mean_best_error {starts:e}\n")), "{report}");
}

#[test]
fn trace_writes_one_row_per_move() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["trace", "--function", "F1", "--dim", "2", "--moves", "1000", "--out", dir.path().to_str().unwrap()]);
    let csv = read(&dir.path().join("trajectory_F1_D2.csv"));
    assert!(csv.starts_with("# function=F1 dimension=2"));
    assert!(csv.contains("# moves = 1000"));
    assert_eq!(data_rows(&csv).len(), 1001);
}

#[test]
fn generalise_and_sweep_shapes() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g");
    ok(&[
        "generalise",
        "--programs",
        "builtin:F1,builtin:F2,builtin:F6,builtin:F9",
        "--dim",
        "2",
        "--moves",
        "50",
        "--repeats",
        "2",
        "--out",
        g.to_str().unwrap(),
    ]);
    let csv = read(&g.join("generality.csv"));
    let rows = data_rows(&csv);
    // random-search reference row plus four programs
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.split(',').count() == 5));
    assert!(read(&g.join("generality.txt")).contains("trained_on"));

    let s = dir.path().join("s");
    ok(&[
        "sweep",
        "--programs",
        "builtin:F1,builtin:F6",
        "--function",
        "F1",
        "--dims",
        "2,10,15,20",
        "--moves",
        "50",
        "--repeats",
        "2",
        "--out",
        s.to_str().unwrap(),
    ]);
    let csv = read(&s.join("sweep.csv"));
    assert!(csv.contains("trained_on,2D,10D,15D,20D"));
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.split(',').count() == 5));
}

#[test]
fn bench_compares_against_random_search() {
    let dir = tempfile::tempdir().unwrap();
    let report = ok(&["bench", "--dim", "2", "--moves", "100", "--repeats", "3", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(report.lines().count(), 1 + 8);
    let csv = read(&dir.path().join("bench.csv"));
    assert_eq!(data_rows(&csv).len(), 8);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let code = |args: &[&str]| pushopt(args).status.code();
    assert_eq!(code(&["evolve", "--population", "3", "--out", out]), Some(2));
    assert_eq!(code(&["evolve", "--function", "F4", "--out", out]), Some(2));
    assert_eq!(code(&["eval", "builtin:F7", "--out", out]), Some(2));

    let bad = dir.path().join("bad.push");
    std::fs::write(&bad, "(1 2\n  foo.bar)").unwrap();
    let result = pushopt(&["eval", bad.to_str().unwrap(), "--out", out]);
    assert_eq!(result.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&result.stderr).contains("bad.push:2:3"));

    let missing = dir.path().join("no-shifts");
    let result = pushopt(&["evolve", "--shift-dir", missing.to_str().unwrap(), "--out", out]);
    assert_eq!(result.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&result.stderr).contains("F1_shift_D10.txt"));
    assert_eq!(code(&["eval", dir.path().join("absent.push").to_str().unwrap(), "--out", out]), Some(3));

    let mut fallback = SMALL_EVOLVE.to_vec();
    fallback.extend(["--shift-dir", missing.to_str().unwrap(), "--synthetic-shift", "4", "--out", out]);
    assert_eq!(code(&fallback), Some(0));
}

#[test]
fn shift_directory_files_are_used() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("F1_shift_D2.txt"), "1.5 -2.0\n").unwrap();
    let out = dir.path().join("o");
    ok(&[
        "trace",
        "--dim",
        "2",
        "--moves",
        "5",
        "--shift-dir",
        dir.path().to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(read(&out.join("trajectory_F1_D2.csv")).contains(" shift=1.5,-2 "));
}
