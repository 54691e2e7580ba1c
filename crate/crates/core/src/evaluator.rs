//! Scoring a Push program as a local optimiser.
//!
//! An episode starts from a uniform random point and calls the program once
//! per move. Between calls the harness manages the stacks: it reads the
//! proposed point off the top of the vector stack, evaluates it, and reloads
//! the input, boolean, float and vector stacks so the program can see the
//! new value, whether it improved, and the best point so far. Fitness is the
//! mean over several episodes of the best error reached.
//!
//! The proposal is read without popping it, and the best point is pushed
//! after out-of-bounds moves as well as in-bounds ones. The published
//! example optimisers only behave as described under these two rules.

use std::io::{self, Write};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::benchmark::BenchmarkFunction;
use crate::push::{execute, Environment, Program, PushState, SearchVector, Value};
use crate::rng::{derive_seed, rng_from_seed, stream_rng, Stream};

/// Whether the post-move value is pushed a second time (alongside the
/// point) after an in-bounds move, as the printed protocol does.
const PUSH_VALUE_TWICE: bool = true;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct EvaluationConfig {
    /// Episodes per fitness evaluation, each from a fresh random start.
    pub repeats: usize,
    /// Program calls per episode.
    pub moves: usize,
    /// Exec-stack pops allowed per program call.
    pub exec_budget: usize,
    pub record_trajectory: bool,
    pub seed: u64,
}

impl Default for EvaluationConfig {
    fn default() -> Self {
        EvaluationConfig {
            repeats: 10,
            moves: 1000,
            exec_budget: 100,
            record_trajectory: false,
            seed: 0,
        }
    }
}

/// One row of a recorded trajectory. Row 0 is the starting point.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryStep {
    pub move_index: usize,
    pub point: SearchVector,
    pub value: f64,
    pub in_bounds: bool,
    /// Best error over moves `1..=move_index` (+∞ before the first move).
    pub best_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EpisodeResult {
    /// Lowest error over all evaluated moves; +∞ if every move scored +∞.
    pub best_error: f64,
    pub best_point: Option<SearchVector>,
    pub initial_point: SearchVector,
    pub initial_error: f64,
    /// Objective evaluations made, the starting point included.
    pub evaluations: usize,
    pub trajectory: Option<Vec<TrajectoryStep>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitnessResult {
    pub mean_best_error: f64,
    pub episodes: Vec<EpisodeResult>,
}

/// Hooks into an episode, for instrumentation and tests.
pub trait MoveObserver {
    /// Called with the stacks exactly as the program will see them.
    fn before_execute(&mut self, _move_index: usize, _state: &PushState) {}
    /// Called once the harness has reloaded the stacks after a move.
    fn after_move(&mut self, _move_index: usize, _state: &PushState) {}
}

impl MoveObserver for () {}

/// Seed of episode `index` under an evaluation seed.
pub fn episode_seed(seed: u64, index: usize) -> u64 {
    derive_seed(seed, Stream::Episode, &[index as u64])
}

fn uniform_point<R: Rng + ?Sized>(f: &BenchmarkFunction, rng: &mut R) -> SearchVector {
    f.lower
        .iter()
        .zip(f.upper.iter())
        .map(|(&lo, &hi)| rng.random_range(lo..=hi))
        .collect()
}

fn push_bounds(state: &mut PushState, f: &BenchmarkFunction) {
    state.push_input(Value::Vector(f.lower.clone()));
    state.push_input(Value::Vector(f.upper.clone()));
}

/// Stack protocol applied after every move.
fn reload_after_move(
    state: &mut PushState,
    f: &BenchmarkFunction,
    point: &SearchVector,
    value: f64,
    previous: f64,
    best_point: &SearchVector,
) {
    state.clear_input();
    push_bounds(state, f);
    state.float.push(value);
    state.push_input(Value::Float(value));
    if f.in_bounds(point) {
        state.boolean.push(value < previous);
        state.push_input(Value::Vector(point.clone()));
        if PUSH_VALUE_TWICE {
            state.float.push(value);
            state.push_input(Value::Float(value));
        }
        state.vector.push(best_point.clone());
    } else {
        state.boolean.push(false);
        state.float.push(f64::INFINITY);
        state.vector.push(best_point.clone());
    }
}

/// Runs one episode seeded by `seed`.
pub fn run_episode(
    program: &Program,
    f: &BenchmarkFunction,
    cfg: &EvaluationConfig,
    seed: u64,
) -> EpisodeResult {
    run_episode_observed(program, f, cfg, seed, &mut ())
}

pub fn run_episode_observed(
    program: &Program,
    f: &BenchmarkFunction,
    cfg: &EvaluationConfig,
    seed: u64,
    observer: &mut impl MoveObserver,
) -> EpisodeResult {
    let mut rng = rng_from_seed(seed);
    let mut point = uniform_point(f, &mut rng);
    let mut value = f.value(&point);
    let initial_point = point.clone();
    let initial_error = f.error(value);
    let mut best = f64::INFINITY;
    let mut best_point: Option<SearchVector> = None;

    let mut trajectory = cfg.record_trajectory.then(|| {
        let mut rows = Vec::with_capacity(cfg.moves + 1);
        rows.push(TrajectoryStep {
            move_index: 0,
            point: point.clone(),
            value,
            in_bounds: f.in_bounds(&point),
            best_error: f64::INFINITY,
        });
        rows
    });

    let env = Environment::new(f.lower.clone(), f.upper.clone(), rng);
    let mut state = PushState::new(env);
    state.clear_stacks();
    push_bounds(&mut state, f);
    state.vector.push(point.clone());
    state.push_input(Value::Vector(point.clone()));
    state.float.push(value);
    state.push_input(Value::Float(value));
    state.boolean.push(true);

    for m in 1..=cfg.moves {
        state.integer.push(m as i64);
        observer.before_execute(m, &state);
        execute(program, &mut state, cfg.exec_budget);
        // An empty vector stack leaves the point where it was.
        if let Some(p) = state.vector.last() {
            point = p.clone();
        }
        let previous = value;
        value = f.value(&point);
        if value < best {
            best = value;
            best_point = Some(point.clone());
        }
        let best_or_current = best_point.as_ref().unwrap_or(&point).clone();
        reload_after_move(&mut state, f, &point, value, previous, &best_or_current);
        if let Some(rows) = trajectory.as_mut() {
            rows.push(TrajectoryStep {
                move_index: m,
                point: point.clone(),
                value,
                in_bounds: f.in_bounds(&point),
                best_error: f.error(best),
            });
        }
        observer.after_move(m, &state);
    }

    EpisodeResult {
        best_error: f.error(best),
        best_point,
        initial_point,
        initial_error,
        evaluations: cfg.moves + 1,
        trajectory,
    }
}

/// Mean best error over `cfg.repeats` independent episodes. Episodes run in
/// parallel on the current rayon pool; the result does not depend on the
/// pool size.
pub fn fitness(program: &Program, f: &BenchmarkFunction, cfg: &EvaluationConfig) -> FitnessResult {
    let episodes: Vec<EpisodeResult> = (0..cfg.repeats)
        .into_par_iter()
        .map(|i| run_episode(program, f, cfg, episode_seed(cfg.seed, i)))
        .collect();
    let mean_best_error = mean(episodes.iter().map(|e| e.best_error));
    FitnessResult {
        mean_best_error,
        episodes,
    }
}

pub(crate) fn mean(values: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = values.len();
    values.sum::<f64>() / n as f64
}

/// Best error among `evaluations` uniform random points.
pub fn random_search(f: &BenchmarkFunction, evaluations: usize, seed: u64) -> f64 {
    let mut rng = rng_from_seed(seed);
    (0..evaluations)
        .map(|_| f.error(f.value(&uniform_point(f, &mut rng))))
        .fold(f64::INFINITY, f64::min)
}

/// Random search with the same per-episode evaluation budget as
/// [`fitness`] (`moves + 1` points per repeat), averaged over repeats.
pub fn random_search_baseline(f: &BenchmarkFunction, cfg: &EvaluationConfig) -> f64 {
    let bests: Vec<f64> = (0..cfg.repeats)
        .into_par_iter()
        .map(|i| {
            let seed = derive_seed(cfg.seed, Stream::Baseline, &[i as u64]);
            random_search(f, cfg.moves + 1, seed)
        })
        .collect();
    mean(bests.into_iter())
}

/// Runs the first episode of `cfg` with recording on.
pub fn trace(program: &Program, f: &BenchmarkFunction, cfg: &EvaluationConfig) -> EpisodeResult {
    let cfg = EvaluationConfig {
        record_trajectory: true,
        ..cfg.clone()
    };
    run_episode(program, f, &cfg, episode_seed(cfg.seed, 0))
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Writes a recorded trajectory as CSV: one `#` header line with the
/// function, its bounds and shift, and the seed, then a column header and
/// one row per step.
///
/// # Panics
/// If `episode` was run without trajectory recording.
pub fn write_trajectory<W: Write>(
    mut out: W,
    f: &BenchmarkFunction,
    seed: u64,
    episode: &EpisodeResult,
) -> io::Result<()> {
    let rows = episode
        .trajectory
        .as_ref()
        .expect("episode has no recorded trajectory");
    writeln!(
        out,
        "# function={} dimension={} lower={} upper={} shift={} bias={} seed={}",
        f.id,
        f.dimension(),
        join(&f.lower),
        join(&f.upper),
        join(&f.shift),
        f.bias,
        seed
    )?;
    let coords: Vec<String> = (0..f.dimension()).map(|i| format!("x{i}")).collect();
    writeln!(out, "move,{},value,in_bounds,best_error", coords.join(","))?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            row.move_index,
            join(&row.point),
            row.value,
            row.in_bounds,
            row.best_error
        )?;
    }
    Ok(())
}

/// Uniform random point in the bounds of `f` drawn from the `Baseline`
/// stream; used by analysis code that needs reference samples.
pub fn sample_uniform(f: &BenchmarkFunction, seed: u64, index: u64) -> SearchVector {
    uniform_point(f, &mut stream_rng(seed, Stream::Baseline, &[index]))
}
