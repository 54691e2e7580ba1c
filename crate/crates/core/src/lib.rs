//! Evolving local optimisers as Push programs.
//!
//! The crate is organised bottom-up:
//!
//! * [`push`]: the interpreter, including the vector stack whose items are
//!   search points;
//! * [`benchmark`]: shifted Sphere, Schwefel 1.2, Rosenbrock and Rastrigin;
//! * [`evaluator`]: runs a program as an optimiser (one program call per
//!   move) and scores it by the mean best error over random restarts;
//! * [`evolution`]: generational GP with tournament or lexicase selection;
//! * [`analysis`]: cross-function and cross-dimension re-evaluation and
//!   summary statistics.

pub mod analysis;
pub mod benchmark;
pub mod evaluator;
pub mod evolution;
pub mod push;
pub mod reference_programs;
pub mod rng;

pub use benchmark::{BenchmarkFunction, BenchmarkId, ShiftSource};
pub use evaluator::{EpisodeResult, EvaluationConfig, FitnessResult};
pub use evolution::{EvolutionConfig, GenerationStats, Individual, Selection};
pub use push::{Atom, InstructionSet, Program, PushState, SearchVector};
