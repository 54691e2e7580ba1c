//! Generational GP over Push programs.
//!
//! Each generation every individual is scored on every training function
//! with fresh random starts; one score per function is a fitness case and
//! the scalar fitness is their mean. The next generation holds one elite
//! copy of the generation's best plus children from crossover, mutation
//! and reproduction of selected parents.

mod selection;
mod variation;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::benchmark::BenchmarkFunction;
use crate::evaluator::{fitness, EvaluationConfig};
use crate::push::{random_program, InstructionSet, Program, RandomCodeConfig};
use crate::rng::{derive_seed, stream_rng, Stream};

pub use selection::{lexicase_select, tournament_select};
pub use variation::{crossover, mutate, MutationConfig};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Selection {
    Tournament,
    /// `epsilon: None` is plain lexicase.
    Lexicase { epsilon: Option<f64> },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorRates {
    pub crossover: f64,
    pub mutation: f64,
    pub reproduction: f64,
}

impl Default for OperatorRates {
    fn default() -> Self {
        OperatorRates {
            crossover: 0.7,
            mutation: 0.2,
            reproduction: 0.1,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("operator rates must be non-negative and sum to 1 (got {0})")]
    Rates(f64),
    #[error("population size {population} is smaller than tournament size {tournament}")]
    Tournament { population: usize, tournament: usize },
    #[error("population size and tournament size must be at least 1")]
    EmptyPopulation,
    #[error("at least one training function is required")]
    NoFunctions,
    #[error("repeats and moves must be at least 1")]
    EmptyEvaluation,
    #[error("program size limit must be at least 2 points")]
    SizeLimit,
}

#[derive(Clone, Debug)]
pub struct EvolutionConfig {
    pub population_size: usize,
    /// Generations after the initial one.
    pub generations: usize,
    pub tournament_size: usize,
    /// Maximum program size in points.
    pub size_limit: usize,
    pub selection: Selection,
    pub rates: OperatorRates,
    /// Training functions; each yields one fitness case.
    pub functions: Vec<BenchmarkFunction>,
    /// Per-function evaluation settings. Its seed is ignored: evaluation
    /// seeds derive from `seed`, the generation and the individual.
    pub evaluation: EvaluationConfig,
    pub seed: u64,
    pub instructions: InstructionSet,
    pub random_code: RandomCodeConfig,
    pub mutation: MutationConfig,
}

impl EvolutionConfig {
    /// Standard run parameters (population 200, 50 generations, tournaments
    /// of 5, 100-point programs) on the given functions.
    pub fn new(functions: Vec<BenchmarkFunction>) -> Self {
        EvolutionConfig {
            population_size: 200,
            generations: 50,
            tournament_size: 5,
            size_limit: 100,
            selection: Selection::Tournament,
            rates: OperatorRates::default(),
            functions,
            evaluation: EvaluationConfig::default(),
            seed: 0,
            instructions: InstructionSet::standard(),
            random_code: RandomCodeConfig::default(),
            mutation: MutationConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let r = self.rates;
        let sum = r.crossover + r.mutation + r.reproduction;
        if r.crossover < 0.0 || r.mutation < 0.0 || r.reproduction < 0.0 || (sum - 1.0).abs() > 1e-9 {
            return Err(ConfigError::Rates(sum));
        }
        if self.population_size == 0 || self.tournament_size == 0 {
            return Err(ConfigError::EmptyPopulation);
        }
        if self.population_size < self.tournament_size {
            return Err(ConfigError::Tournament {
                population: self.population_size,
                tournament: self.tournament_size,
            });
        }
        if self.functions.is_empty() {
            return Err(ConfigError::NoFunctions);
        }
        if self.evaluation.repeats == 0 || self.evaluation.moves == 0 {
            return Err(ConfigError::EmptyEvaluation);
        }
        if self.size_limit < 2 {
            return Err(ConfigError::SizeLimit);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Individual {
    pub program: Program,
    /// Mean best error on each training function.
    pub fitness_cases: Vec<f64>,
    /// Mean of the fitness cases; +∞ until evaluated.
    pub scalar_fitness: f64,
}

impl Individual {
    pub fn new(program: Program) -> Self {
        Individual {
            program,
            fitness_cases: Vec::new(),
            scalar_fitness: f64::INFINITY,
        }
    }

    pub fn evaluated(program: Program, fitness_cases: Vec<f64>) -> Self {
        let scalar_fitness = fitness_cases.iter().sum::<f64>() / fitness_cases.len() as f64;
        Individual {
            program,
            fitness_cases,
            scalar_fitness,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenerationStats {
    pub generation: usize,
    pub best_fitness: f64,
    pub median_fitness: f64,
    /// Lowest scalar fitness seen in this or any earlier generation.
    pub best_ever_fitness: f64,
    pub mean_points: f64,
    /// Fitness cases of this generation's best individual.
    pub best_cases: Vec<f64>,
    pub best_program: String,
}

#[derive(Clone, Debug)]
pub struct EvolutionOutcome {
    /// Lowest-fitness individual over the whole run.
    pub best: Individual,
    pub stats: Vec<GenerationStats>,
}

/// `population_size` random programs within the size limit.
pub fn initialize(cfg: &EvolutionConfig) -> Vec<Individual> {
    let mut rng = stream_rng(cfg.seed, Stream::Initialization, &[]);
    (0..cfg.population_size)
        .map(|_| {
            Individual::new(random_program(
                cfg.size_limit,
                &cfg.instructions,
                &cfg.random_code,
                &mut rng,
            ))
        })
        .collect()
}

/// Scores one program on every training function. The evaluation seed of
/// function `k` is derived from `(seed, generation, index, k)`.
pub fn evaluate_individual(
    program: &Program,
    cfg: &EvolutionConfig,
    generation: usize,
    index: usize,
) -> Individual {
    let cases = cfg
        .functions
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let eval = EvaluationConfig {
                seed: derive_seed(
                    cfg.seed,
                    Stream::Evaluation,
                    &[generation as u64, index as u64, k as u64],
                ),
                record_trajectory: false,
                ..cfg.evaluation.clone()
            };
            fitness(program, f, &eval).mean_best_error
        })
        .collect();
    Individual::evaluated(program.clone(), cases)
}

fn select<'a, R: Rng + ?Sized>(
    population: &'a [Individual],
    cfg: &EvolutionConfig,
    rng: &mut R,
) -> &'a Individual {
    match cfg.selection {
        Selection::Tournament => tournament_select(population, cfg.tournament_size, rng),
        Selection::Lexicase { epsilon } => lexicase_select(population, epsilon, rng),
    }
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        let (a, b) = (sorted[n / 2 - 1], sorted[n / 2]);
        if a == b {
            a
        } else {
            0.5 * (a + b)
        }
    }
}

fn summarize(generation: usize, population: &[Individual], best_ever: f64) -> GenerationStats {
    let mut scores: Vec<f64> = population.iter().map(|i| i.scalar_fitness).collect();
    scores.sort_by(f64::total_cmp);
    let best = best_index(population);
    GenerationStats {
        generation,
        best_fitness: population[best].scalar_fitness,
        median_fitness: median(&scores),
        best_ever_fitness: best_ever,
        mean_points: population.iter().map(|i| i.program.points() as f64).sum::<f64>()
            / population.len() as f64,
        best_cases: population[best].fitness_cases.clone(),
        best_program: population[best].program.to_string(),
    }
}

/// First individual with the lowest scalar fitness.
fn best_index(population: &[Individual]) -> usize {
    population
        .iter()
        .enumerate()
        .fold(0, |best, (i, ind)| {
            if ind.scalar_fitness < population[best].scalar_fitness {
                i
            } else {
                best
            }
        })
}

fn breed<R: Rng + ?Sized>(population: &[Individual], cfg: &EvolutionConfig, rng: &mut R) -> Vec<Individual> {
    let mut next = Vec::with_capacity(cfg.population_size);
    next.push(Individual::new(population[best_index(population)].program.clone()));
    while next.len() < cfg.population_size {
        let roll: f64 = rng.random();
        let child = if roll < cfg.rates.crossover {
            let a = select(population, cfg, rng).program.clone();
            let b = select(population, cfg, rng);
            crossover(&a, &b.program, cfg.size_limit, rng)
        } else if roll < cfg.rates.crossover + cfg.rates.mutation {
            let a = select(population, cfg, rng);
            mutate(
                &a.program,
                cfg.size_limit,
                &cfg.instructions,
                &cfg.random_code,
                &cfg.mutation,
                rng,
            )
        } else {
            select(population, cfg, rng).program.clone()
        };
        next.push(Individual::new(child));
    }
    next
}

/// Runs the configured number of generations.
pub fn evolve(cfg: &EvolutionConfig) -> Result<EvolutionOutcome, ConfigError> {
    evolve_with(cfg, |_| {})
}

/// As [`evolve`], reporting each generation's statistics as soon as they
/// are known.
pub fn evolve_with(
    cfg: &EvolutionConfig,
    mut on_generation: impl FnMut(&GenerationStats),
) -> Result<EvolutionOutcome, ConfigError> {
    cfg.validate()?;
    let mut population = initialize(cfg);
    let mut best: Option<Individual> = None;
    let mut stats = Vec::with_capacity(cfg.generations + 1);
    for generation in 0..=cfg.generations {
        population = population
            .par_iter()
            .enumerate()
            .map(|(i, ind)| evaluate_individual(&ind.program, cfg, generation, i))
            .collect();
        let top = &population[best_index(&population)];
        if best.as_ref().is_none_or(|b| top.scalar_fitness < b.scalar_fitness) {
            best = Some(top.clone());
        }
        let row = summarize(
            generation,
            &population,
            best.as_ref().expect("set above").scalar_fitness,
        );
        on_generation(&row);
        stats.push(row);
        if generation < cfg.generations {
            let mut rng = stream_rng(cfg.seed, Stream::Variation, &[generation as u64]);
            population = breed(&population, cfg, &mut rng);
        }
    }
    Ok(EvolutionOutcome {
        best: best.expect("at least one generation"),
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmark::BenchmarkId;

    fn tiny(seed: u64) -> EvolutionConfig {
        let f = BenchmarkFunction::official(BenchmarkId::F1, 2).unwrap();
        let mut cfg = EvolutionConfig::new(vec![f]);
        cfg.population_size = 12;
        cfg.generations = 2;
        cfg.tournament_size = 3;
        cfg.evaluation.moves = 20;
        cfg.evaluation.repeats = 2;
        cfg.seed = seed;
        cfg
    }

    #[test]
    fn defaults_match_standard_settings() {
        let cfg = EvolutionConfig::new(vec![]);
        assert_eq!(cfg.population_size, 200);
        assert_eq!(cfg.generations, 50);
        assert_eq!(cfg.tournament_size, 5);
        assert_eq!(cfg.size_limit, 100);
        assert_eq!(cfg.evaluation.exec_budget, 100);
        assert_eq!(cfg.evaluation.repeats, 10);
        assert_eq!(cfg.evaluation.moves, 1000);
        assert_eq!(cfg.rates, OperatorRates::default());
    }

    #[test]
    fn validation() {
        let mut cfg = tiny(0);
        assert_eq!(cfg.validate(), Ok(()));
        cfg.rates.mutation = 0.5;
        assert!(matches!(cfg.validate(), Err(ConfigError::Rates(_))));
        let mut cfg = tiny(0);
        cfg.tournament_size = 13;
        assert!(matches!(cfg.validate(), Err(ConfigError::Tournament { .. })));
        let mut cfg = tiny(0);
        cfg.functions.clear();
        assert_eq!(cfg.validate(), Err(ConfigError::NoFunctions));
    }

    #[test]
    fn initial_population() {
        let cfg = tiny(4);
        let a = initialize(&cfg);
        assert_eq!(a.len(), 12);
        assert!(a.iter().all(|i| i.program.points() <= 100));
        let b = initialize(&cfg);
        assert_eq!(a, b);
    }

    #[test]
    fn zero_generations_gives_one_row() {
        let mut cfg = tiny(1);
        cfg.generations = 0;
        let out = evolve(&cfg).unwrap();
        assert_eq!(out.stats.len(), 1);
        assert_eq!(out.best.scalar_fitness, out.stats[0].best_fitness);
    }

    #[test]
    fn run_is_deterministic_and_monotone() {
        let a = evolve(&tiny(9)).unwrap();
        let b = evolve(&tiny(9)).unwrap();
        assert_eq!(a.best.program, b.best.program);
        assert_eq!(a.stats, b.stats);
        for w in a.stats.windows(2) {
            assert!(w[1].best_ever_fitness <= w[0].best_ever_fitness);
        }
        for s in &a.stats {
            assert!(s.best_fitness <= s.median_fitness);
        }
    }
}
