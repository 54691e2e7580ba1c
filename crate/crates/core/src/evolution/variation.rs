use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::push::{
    random_code, Atom, InstructionSet, Program, RandomCodeConfig, FLOAT_ERC_RANGE,
    INTEGER_ERC_RANGE,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MutationConfig {
    /// Largest replacement sub-tree, before the size limit is applied.
    pub max_subtree_points: usize,
    /// Per-literal chance of a Gaussian nudge after the sub-tree swap.
    pub jitter_probability: f64,
    /// Nudge standard deviation as a fraction of the ERC range width.
    pub jitter_fraction: f64,
}

impl Default for MutationConfig {
    fn default() -> Self {
        MutationConfig {
            max_subtree_points: 20,
            jitter_probability: 0.1,
            jitter_fraction: 0.1,
        }
    }
}

/// Replaces a random point of `a` (the outer list excluded) with a random
/// sub-tree of `b`. Falls back to a copy of `a` if the child would exceed
/// `size_limit`. An empty `a` receives the sub-tree as its only item.
pub fn crossover<R: Rng + ?Sized>(a: &Program, b: &Program, size_limit: usize, rng: &mut R) -> Program {
    if b.points() < 2 {
        return a.clone();
    }
    let donor = b
        .point(rng.random_range(1..b.points()))
        .expect("index in range")
        .clone();
    let child = if a.points() < 2 {
        Program::new(vec![donor])
    } else {
        a.replace_point(rng.random_range(1..a.points()), donor)
    };
    if child.points() > size_limit {
        a.clone()
    } else {
        child
    }
}

/// Replaces a random point of `a` with fresh random code sized to keep the
/// child within `size_limit`, then nudges numeric literals.
pub fn mutate<R: Rng + ?Sized>(
    a: &Program,
    size_limit: usize,
    set: &InstructionSet,
    code: &RandomCodeConfig,
    cfg: &MutationConfig,
    rng: &mut R,
) -> Program {
    let mutant = if a.points() < 2 {
        let room = size_limit.saturating_sub(1).clamp(1, cfg.max_subtree_points.max(1));
        Program::new(vec![random_code(rng.random_range(1..=room), set, code, rng)])
    } else {
        let index = rng.random_range(1..a.points());
        let old = a.point(index).expect("index in range").points();
        let room = (size_limit + old)
            .saturating_sub(a.points())
            .clamp(1, cfg.max_subtree_points.max(1));
        a.replace_point(index, random_code(rng.random_range(1..=room), set, code, rng))
    };
    if cfg.jitter_probability > 0.0 {
        let mut root = mutant.into_root();
        jitter(&mut root, cfg, rng);
        Program::new(root)
    } else {
        mutant
    }
}

fn jitter<R: Rng + ?Sized>(items: &mut [Atom], cfg: &MutationConfig, rng: &mut R) {
    let float_sd = cfg.jitter_fraction * (FLOAT_ERC_RANGE.1 - FLOAT_ERC_RANGE.0);
    let int_sd = cfg.jitter_fraction * (INTEGER_ERC_RANGE.1 - INTEGER_ERC_RANGE.0) as f64;
    for item in items {
        match item {
            Atom::List(inner) => jitter(inner, cfg, rng),
            Atom::Float(x) if rng.random_bool(cfg.jitter_probability) => {
                *x += Normal::new(0.0, float_sd).expect("finite sd").sample(rng);
            }
            Atom::Integer(n) if rng.random_bool(cfg.jitter_probability) => {
                let step = Normal::new(0.0, int_sd).expect("finite sd").sample(rng).round();
                *n = n.saturating_add(step as i64);
            }
            _ => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    #[test]
    fn crossover_of_single_atom_program_with_itself() {
        let p = Program::parse("(float.tan)").unwrap();
        let mut rng = rng_from_seed(0);
        for _ in 0..100 {
            assert_eq!(crossover(&p, &p, 100, &mut rng), p);
        }
    }

    #[test]
    fn crossover_into_empty_program() {
        let a = Program::empty();
        let b = Program::parse("(1 2)").unwrap();
        let child = crossover(&a, &b, 100, &mut rng_from_seed(1));
        assert_eq!(child.points(), 2);
        assert_eq!(crossover(&b, &a, 100, &mut rng_from_seed(1)), b);
    }

    #[test]
    fn oversized_child_falls_back_to_parent() {
        let a = Program::parse("(1 2 3)").unwrap();
        let b = Program::parse("((1 2 3 4 5 6 7 8))").unwrap();
        let mut rng = rng_from_seed(3);
        for _ in 0..200 {
            let c = crossover(&a, &b, 5, &mut rng);
            assert!(c.points() <= 5);
        }
    }

    #[test]
    fn mutation_of_empty_program_adds_code() {
        let set = InstructionSet::standard();
        let m = mutate(
            &Program::empty(),
            100,
            &set,
            &RandomCodeConfig::default(),
            &MutationConfig::default(),
            &mut rng_from_seed(5),
        );
        assert!(m.points() >= 2 && m.points() <= 21);
    }
}
