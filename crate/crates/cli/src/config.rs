//! Run configuration: built-in defaults, overlaid by an optional TOML file,
//! overlaid by command-line flags.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use pushopt_core::analysis::SWEEP_DIMENSIONS;
use pushopt_core::benchmark::BenchmarkError;
use pushopt_core::evolution::Selection;
use pushopt_core::{BenchmarkFunction, BenchmarkId, EvaluationConfig, EvolutionConfig, ShiftSource};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SelectionKind {
    Tournament,
    Lexicase,
}

/// Fully resolved settings for one invocation. This is also the format of
/// `--config` files and of the `manifest.toml` each command writes, so a
/// manifest can be fed back in to repeat a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub functions: Vec<BenchmarkId>,
    pub dimension: usize,
    pub seed: u64,
    pub moves: usize,
    pub repeats: usize,
    pub exec_budget: usize,
    pub population: usize,
    pub generations: usize,
    pub tournament: usize,
    pub selection: SelectionKind,
    pub epsilon: Option<f64>,
    pub size_limit: usize,
    pub shift_dir: Option<PathBuf>,
    /// Seed for generated shifts; used when no shift directory is given,
    /// or when the directory lacks the needed file.
    pub synthetic_shift: Option<u64>,
    /// Program files, or `builtin:<label>` for the bundled examples.
    pub programs: Vec<String>,
    pub dims: Vec<usize>,
    pub out: Option<PathBuf>,
    /// Worker threads; results do not depend on it, so it is never written
    /// to artifacts.
    #[serde(skip_serializing)]
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let evolution = EvolutionConfig::new(Vec::new());
        RunConfig {
            functions: vec![BenchmarkId::F1],
            dimension: 10,
            seed: 0,
            moves: evolution.evaluation.moves,
            repeats: evolution.evaluation.repeats,
            exec_budget: evolution.evaluation.exec_budget,
            population: evolution.population_size,
            generations: evolution.generations,
            tournament: evolution.tournament_size,
            selection: SelectionKind::Tournament,
            epsilon: None,
            size_limit: evolution.size_limit,
            shift_dir: None,
            synthetic_shift: None,
            programs: Vec::new(),
            dims: SWEEP_DIMENSIONS.to_vec(),
            out: None,
            threads: None,
        }
    }
}

/// Flags shared by every subcommand. Unset flags leave the value from the
/// config file or the default untouched.
#[derive(Args, Clone, Debug, Default)]
pub struct Flags {
    /// TOML file with any of the settings below (a previous manifest.toml works).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Benchmark functions, comma separated (F1, F2, F6, F9).
    #[arg(long, value_delimiter = ',')]
    pub function: Option<Vec<BenchmarkId>>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub moves: Option<usize>,
    /// Random restarts per evaluation [default: 10 for evolve, 25 otherwise].
    #[arg(long)]
    pub repeats: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub population: Option<usize>,
    #[arg(long)]
    pub generations: Option<usize>,
    #[arg(long)]
    pub tournament: Option<usize>,
    #[arg(long, value_enum)]
    pub selection: Option<SelectionKind>,
    /// Tolerance for epsilon-lexicase.
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub size_limit: Option<usize>,
    /// Instruction executions allowed per move.
    #[arg(long)]
    pub exec_budget: Option<usize>,
    /// Directory of `<id>_shift_D<dim>.txt` files.
    #[arg(long)]
    pub shift_dir: Option<PathBuf>,
    /// Use seeded synthetic shifts when no shift file is available.
    #[arg(long, value_name = "SEED")]
    pub synthetic_shift: Option<u64>,
    /// Program files or `builtin:<label>`, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub programs: Option<Vec<String>>,
    /// Dimensions for `sweep`, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Per-subcommand defaults that differ from the evolution settings.
#[derive(Clone, Copy, Debug)]
pub struct CommandDefaults {
    pub repeats: usize,
    pub functions: &'static [BenchmarkId],
}

fn read_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

impl RunConfig {
    /// Layers `flags` (and the file they name) over the defaults.
    pub fn resolve(flags: &Flags, defaults: CommandDefaults) -> Result<RunConfig, CliError> {
        let mut cfg = match &flags.config {
            Some(path) => read_config(path)?,
            None => RunConfig {
                repeats: defaults.repeats,
                functions: defaults.functions.to_vec(),
                ..RunConfig::default()
            },
        };
        let f = flags.clone();
        macro_rules! overlay {
            ($($flag:ident => $field:ident),* $(,)?) => {
                $(if let Some(v) = f.$flag { cfg.$field = v; })*
            };
        }
        overlay!(
            function => functions,
            dim => dimension,
            moves => moves,
            repeats => repeats,
            seed => seed,
            population => population,
            generations => generations,
            tournament => tournament,
            selection => selection,
            size_limit => size_limit,
            exec_budget => exec_budget,
            programs => programs,
            dims => dims,
        );
        if f.epsilon.is_some() {
            cfg.epsilon = f.epsilon;
        }
        if f.shift_dir.is_some() {
            cfg.shift_dir = f.shift_dir;
        }
        if f.synthetic_shift.is_some() {
            cfg.synthetic_shift = f.synthetic_shift;
        }
        if f.out.is_some() {
            cfg.out = f.out;
        }
        if f.threads.is_some() {
            cfg.threads = f.threads;
        }
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::Config(m.to_string()));
        if self.functions.is_empty() {
            return bad("at least one --function is required");
        }
        if self.dimension == 0 || self.dims.contains(&0) {
            return bad("dimensions must be at least 1");
        }
        if self.moves == 0 || self.repeats == 0 {
            return bad("--moves and --repeats must be at least 1");
        }
        if self.threads == Some(0) {
            return bad("--threads must be at least 1");
        }
        if self.epsilon.is_some_and(|e| e.is_nan() || e < 0.0) {
            return bad("--epsilon must be non-negative");
        }
        Ok(())
    }

    pub fn output_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("pushopt-out"))
    }

    pub fn evaluation(&self) -> EvaluationConfig {
        EvaluationConfig {
            repeats: self.repeats,
            moves: self.moves,
            exec_budget: self.exec_budget,
            record_trajectory: false,
            seed: self.seed,
        }
    }

    pub fn evolution(&self, functions: Vec<BenchmarkFunction>) -> EvolutionConfig {
        let mut cfg = EvolutionConfig::new(functions);
        cfg.population_size = self.population;
        cfg.generations = self.generations;
        cfg.tournament_size = self.tournament;
        cfg.size_limit = self.size_limit;
        cfg.selection = match self.selection {
            SelectionKind::Tournament => Selection::Tournament,
            SelectionKind::Lexicase => Selection::Lexicase { epsilon: self.epsilon },
        };
        cfg.evaluation = self.evaluation();
        cfg.seed = self.seed;
        cfg
    }

    pub fn shift_source(&self) -> ShiftSource {
        match (&self.shift_dir, self.synthetic_shift) {
            (Some(dir), _) => ShiftSource::Directory(dir.clone()),
            (None, Some(seed)) => ShiftSource::Synthetic { seed },
            (None, None) => ShiftSource::Official,
        }
    }

    /// Builds `id` at `dimension`, falling back to synthetic shifts when a
    /// shift directory lacks the file and a fallback seed was given.
    pub fn function_at(&self, id: BenchmarkId, dimension: usize) -> Result<BenchmarkFunction, CliError> {
        match BenchmarkFunction::from_source(id, dimension, &self.shift_source()) {
            Ok(f) => Ok(f),
            Err(BenchmarkError::MissingShiftFile(path)) => match self.synthetic_shift {
                Some(seed) => Ok(BenchmarkFunction::synthetic(id, dimension, seed)?),
                None => Err(CliError::Io(format!(
                    "missing shift data file {} (pass --synthetic-shift SEED to use generated shifts)",
                    path.display()
                ))),
            },
            Err(e) => Err(e.into()),
        }
    }

    pub fn functions(&self) -> Result<Vec<BenchmarkFunction>, CliError> {
        self.functions
            .iter()
            .map(|&id| self.function_at(id, self.dimension))
            .collect()
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// The config as comment lines for embedding in an artifact. The output
    /// directory is left out so runs into different directories match.
    pub fn header(&self, marker: &str) -> String {
        let embedded = RunConfig {
            out: None,
            ..self.clone()
        };
        embedded
            .to_toml()
            .lines()
            .map(|l| format!("{marker} {l}\n"))
            .collect()
    }
}
