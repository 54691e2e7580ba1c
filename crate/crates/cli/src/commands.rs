use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};

use pushopt_core::analysis::{generality_matrix, sweep_table, DimensionalitySweep, Table};
use pushopt_core::evaluator::{fitness, random_search_baseline, trace, write_trajectory};
use pushopt_core::evolution::evolve_with;
use pushopt_core::reference_programs::EVOLVED_OPTIMISERS;
use pushopt_core::{BenchmarkId, Program};
use rayon::prelude::*;

use crate::config::{CommandDefaults, RunConfig};
use crate::{CliError, Command};

const ONE: &[BenchmarkId] = &[BenchmarkId::F1];

fn defaults(repeats: usize, functions: &'static [BenchmarkId]) -> CommandDefaults {
    CommandDefaults { repeats, functions }
}

/// Runs one subcommand, writing its report to `stdout`.
pub fn dispatch(command: Command, stdout: &mut impl Write) -> Result<(), CliError> {
    let (flags, defaults, program) = match &command {
        Command::Evolve { flags } => (flags, defaults(10, ONE), None),
        Command::Eval { flags, program } => (flags, defaults(25, ONE), program.clone()),
        Command::Trace { flags, program } => (flags, defaults(25, ONE), program.clone()),
        Command::Generalise { flags } | Command::Sweep { flags } | Command::Bench { flags } => {
            (flags, defaults(25, &BenchmarkId::ALL), None)
        }
    };
    let mut cfg = RunConfig::resolve(flags, defaults)?;
    if let Some(p) = program {
        cfg.programs = vec![p];
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Config(format!("cannot start thread pool: {e}")))?;
    let report = pool.install(|| match command {
        Command::Evolve { .. } => evolve(&cfg),
        Command::Eval { .. } => eval(&cfg),
        Command::Trace { .. } => trace_cmd(&cfg),
        Command::Generalise { .. } => generalise(&cfg),
        Command::Sweep { .. } => sweep(&cfg),
        Command::Bench { .. } => bench(&cfg),
    })?;
    stdout
        .write_all(report.as_bytes())
        .map_err(|e| CliError::Io(format!("stdout: {e}")))
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| io_err(path, e))
}

/// Creates the output directory and writes the manifest into it.
fn prepare_output(cfg: &RunConfig, command: &str) -> Result<PathBuf, CliError> {
    let dir = cfg.output_dir();
    fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
    let manifest = format!("# pushopt {command}\n{}", cfg.to_toml());
    write_file(&dir.join("manifest.toml"), &manifest)?;
    Ok(dir)
}

fn builtin_key(label: &str) -> String {
    label.replace(',', "").to_ascii_uppercase()
}

/// Training functions named by a bundled optimiser's label.
fn builtin_functions(label: &str) -> Vec<BenchmarkId> {
    BenchmarkId::ALL
        .into_iter()
        .filter(|id| match builtin_key(label).as_str() {
            "F1269" => true,
            key => key == id.to_string(),
        })
        .collect()
}

/// Blanks out `;` comment lines, keeping byte offsets intact for error
/// positions.
fn strip_comments(text: &str) -> String {
    text.split_inclusive('\n')
        .map(|line| {
            if line.trim_start().starts_with(';') {
                line.chars().map(|c| if c == '\n' { c } else { ' ' }).collect()
            } else {
                line.to_string()
            }
        })
        .collect()
}

fn line_column(text: &str, byte: usize) -> (usize, usize) {
    let before = &text[..byte.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, column)
}

pub struct LoadedProgram {
    pub label: String,
    pub program: Program,
    /// Training functions, known for bundled optimisers only.
    pub trained_on: Option<Vec<BenchmarkId>>,
}

pub fn load_program(source: &str) -> Result<LoadedProgram, CliError> {
    if let Some(label) = source.strip_prefix("builtin:") {
        let (name, text) = EVOLVED_OPTIMISERS
            .iter()
            .find(|(l, _)| builtin_key(l) == builtin_key(label))
            .ok_or_else(|| {
                let known: Vec<String> = EVOLVED_OPTIMISERS.iter().map(|(l, _)| builtin_key(l)).collect();
                CliError::Config(format!("unknown builtin `{label}` (known: {})", known.join(", ")))
            })?;
        return Ok(LoadedProgram {
            label: builtin_key(name),
            program: text.parse().expect("bundled programs parse"),
            trained_on: Some(builtin_functions(name)),
        });
    }
    let path = Path::new(source);
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let program = Program::parse(&strip_comments(&text)).map_err(|e| {
        let (line, column) = line_column(&text, e.position());
        CliError::Config(format!("{}:{line}:{column}: {e}", path.display()))
    })?;
    let label = path
        .file_stem()
        .map_or_else(|| source.to_string(), |s| s.to_string_lossy().into_owned());
    Ok(LoadedProgram {
        label,
        program,
        trained_on: None,
    })
}

fn programs(cfg: &RunConfig) -> Result<Vec<LoadedProgram>, CliError> {
    if cfg.programs.is_empty() {
        EVOLVED_OPTIMISERS
            .iter()
            .map(|(l, _)| load_program(&format!("builtin:{l}")))
            .collect()
    } else {
        cfg.programs.iter().map(|p| load_program(p)).collect()
    }
}

/// The single program of `eval` and `trace`: the one given, or the bundled
/// optimiser for the first function.
fn single_program(cfg: &RunConfig) -> Result<LoadedProgram, CliError> {
    match cfg.programs.as_slice() {
        [] => load_program(&format!("builtin:{}", cfg.functions[0])),
        [one] => load_program(one),
        _ => Err(CliError::Config("expected exactly one program".into())),
    }
}

fn evolve(cfg: &RunConfig) -> Result<String, CliError> {
    let functions = cfg.functions()?;
    let ecfg = cfg.evolution(functions);
    ecfg.validate()?;
    let dir = prepare_output(cfg, "evolve")?;

    let stats_path = dir.join("stats.csv");
    let mut stats = File::create(&stats_path).map_err(|e| io_err(&stats_path, e))?;
    let cases: Vec<String> = cfg.functions.iter().map(|f| format!("case_{f}")).collect();
    let head = format!(
        "{}generation,best_fitness,median_fitness,best_ever_fitness,mean_points,{}\n",
        cfg.header("#"),
        cases.join(",")
    );
    stats.write_all(head.as_bytes()).map_err(|e| io_err(&stats_path, e))?;
    let log_path = dir.join("best_programs.log");
    let mut log = File::create(&log_path).map_err(|e| io_err(&log_path, e))?;

    let mut failure: Option<CliError> = None;
    let outcome = evolve_with(&ecfg, |row| {
        if failure.is_some() {
            return;
        }
        let cases: Vec<String> = row.best_cases.iter().map(|c| format!("{c:e}")).collect();
        let line = format!(
            "{},{:e},{:e},{:e},{},{}\n",
            row.generation,
            row.best_fitness,
            row.median_fitness,
            row.best_ever_fitness,
            row.mean_points,
            cases.join(",")
        );
        // flushed per generation so an interrupted run leaves valid rows
        let written = stats
            .write_all(line.as_bytes())
            .and_then(|_| stats.flush())
            .map_err(|e| io_err(&stats_path, e))
            .and_then(|_| {
                writeln!(log, "{}\t{:e}\t{}", row.generation, row.best_fitness, row.best_program)
                    .map_err(|e| io_err(&log_path, e))
            });
        if let Err(e) = written {
            failure = Some(e);
        }
        eprintln!(
            "generation {:>3}  best {:.4e}  median {:.4e}",
            row.generation, row.best_fitness, row.median_fitness
        );
    })?;
    if let Some(e) = failure {
        return Err(e);
    }

    let best = &outcome.best;
    let mut champion = format!("; pushopt champion\n; fitness = {:e}\n", best.scalar_fitness);
    for (f, c) in cfg.functions.iter().zip(&best.fitness_cases) {
        writeln!(champion, "; case {f} = {c:e}").unwrap();
    }
    champion.push_str(&cfg.header(";"));
    writeln!(champion, "{}", best.program).unwrap();
    write_file(&dir.join("champion.push"), &champion)?;
    Ok(format!(
        "best fitness {:e}\n{}\nwrote {}\n",
        best.scalar_fitness,
        best.program,
        dir.display()
    ))
}

fn eval(cfg: &RunConfig) -> Result<String, CliError> {
    let loaded = single_program(cfg)?;
    let functions = cfg.functions()?;
    let dir = prepare_output(cfg, "eval")?;
    let ecfg = cfg.evaluation();
    let mut report = cfg.header("#");
    writeln!(report, "program {}", loaded.program).unwrap();
    for f in &functions {
        let result = fitness(&loaded.program, f, &ecfg);
        writeln!(report, "{} mean_best_error {:e}", f.id, result.mean_best_error).unwrap();
        for (i, e) in result.episodes.iter().enumerate() {
            writeln!(report, "{} episode {i} best_error {:e}", f.id, e.best_error).unwrap();
        }
    }
    write_file(&dir.join("eval.txt"), &report)?;
    Ok(report)
}

fn trace_cmd(cfg: &RunConfig) -> Result<String, CliError> {
    let loaded = single_program(cfg)?;
    let functions = cfg.functions()?;
    let dir = prepare_output(cfg, "trace")?;
    let ecfg = cfg.evaluation();
    let mut report = String::new();
    for f in &functions {
        let episode = trace(&loaded.program, f, &ecfg);
        let mut csv = Vec::new();
        write_trajectory(&mut csv, f, cfg.seed, &episode).expect("writing to memory");
        let csv = String::from_utf8(csv).expect("utf-8");
        let (first, rest) = csv.split_once('\n').expect("header line");
        let contents = format!("{first}\n{}{rest}", cfg.header("#"));
        let path = dir.join(format!("trajectory_{}_D{}.csv", f.id, f.dimension()));
        write_file(&path, &contents)?;
        writeln!(
            report,
            "{} rows {} best_error {:e} -> {}",
            f.id,
            cfg.moves + 1,
            episode.best_error,
            path.display()
        )
        .unwrap();
    }
    Ok(report)
}

fn write_table(cfg: &RunConfig, dir: &Path, stem: &str, table: &Table) -> Result<String, CliError> {
    write_file(&dir.join(format!("{stem}.csv")), &format!("{}{}", cfg.header("#"), table.to_csv()))?;
    let text = table.to_text();
    write_file(&dir.join(format!("{stem}.txt")), &text)?;
    Ok(text)
}

fn generalise(cfg: &RunConfig) -> Result<String, CliError> {
    let loaded = programs(cfg)?;
    let functions = cfg.functions()?;
    let dir = prepare_output(cfg, "generalise")?;
    let ecfg = cfg.evaluation();
    let labelled: Vec<(String, Program)> = loaded.into_iter().map(|p| (p.label, p.program)).collect();
    let mut table = generality_matrix(&labelled, &functions, &ecfg);
    table.row_labels.insert(0, "random_search".into());
    table
        .cells
        .insert(0, functions.par_iter().map(|f| random_search_baseline(f, &ecfg)).collect());
    write_table(cfg, &dir, "generality", &table)
}

fn sweep(cfg: &RunConfig) -> Result<String, CliError> {
    let loaded = programs(cfg)?;
    let dir = prepare_output(cfg, "sweep")?;
    let ecfg = cfg.evaluation();
    let mut sweeps = Vec::new();
    for p in &loaded {
        for &id in &cfg.functions {
            let functions = cfg
                .dims
                .iter()
                .map(|&d| cfg.function_at(id, d))
                .collect::<Result<Vec<_>, _>>()?;
            sweeps.push(DimensionalitySweep {
                label: format!("{}@{id}", p.label),
                function: id,
                dimensions: cfg.dims.clone(),
                cells: functions
                    .par_iter()
                    .map(|f| fitness(&p.program, f, &ecfg).mean_best_error)
                    .collect(),
            });
        }
    }
    write_table(cfg, &dir, "sweep", &sweep_table(&sweeps))
}

fn bench(cfg: &RunConfig) -> Result<String, CliError> {
    let loaded = programs(cfg)?;
    let dir = prepare_output(cfg, "bench")?;
    let ecfg = cfg.evaluation();
    let mut rows = Vec::new();
    for p in &loaded {
        let ids = p.trained_on.clone().unwrap_or_else(|| cfg.functions.clone());
        for id in ids {
            let f = cfg.function_at(id, cfg.dimension)?;
            let (mean, baseline) = rayon::join(
                || fitness(&p.program, &f, &ecfg).mean_best_error,
                || random_search_baseline(&f, &ecfg),
            );
            rows.push((p.label.clone(), id, mean, baseline));
        }
    }
    let mut csv = cfg.header("#");
    csv.push_str("program,function,mean_best_error,random_search,ratio,beats_random\n");
    let mut text = format!(
        "{:<8} {:<8} {:>14} {:>14} {:>10}  beats\n",
        "program", "function", "mean_error", "random", "ratio"
    );
    for (label, id, mean, baseline) in &rows {
        let ratio = mean / baseline;
        let beats = mean < baseline;
        writeln!(csv, "{label},{id},{mean:e},{baseline:e},{ratio:e},{beats}").unwrap();
        writeln!(text, "{label:<8} {id:<8} {mean:>14.4e} {baseline:>14.4e} {ratio:>10.3e}  {beats}").unwrap();
    }
    write_file(&dir.join("bench.csv"), &csv)?;
    Ok(text)
}
