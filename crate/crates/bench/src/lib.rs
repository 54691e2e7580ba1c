//! Fixtures shared by the criterion benches.

use pushopt_core::push::{random_program, RandomCodeConfig};
use pushopt_core::rng::rng_from_seed;
use pushopt_core::{InstructionSet, Program};

/// Random programs from the standard instruction set, reproducible from
/// `seed`.
pub fn random_programs(count: usize, max_points: usize, seed: u64) -> Vec<Program> {
    let set = InstructionSet::standard();
    let cfg = RandomCodeConfig::default();
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|_| random_program(max_points, &set, &cfg, &mut rng))
        .collect()
}
