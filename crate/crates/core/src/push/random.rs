use rand::seq::IndexedRandom;
use rand::Rng;

use super::atom::Atom;
use super::instruction::{InstructionSet, RegistryEntry};
use super::ops::generic::{FLOAT_ERC_RANGE, INTEGER_ERC_RANGE};
use super::program::Program;

/// Shape parameters for random code.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomCodeConfig {
    /// Chance that each generated element opens a sublist instead of being
    /// a single atom.
    pub nesting: f64,
}

impl Default for RandomCodeConfig {
    fn default() -> Self {
        RandomCodeConfig { nesting: 0.1 }
    }
}

/// Draws one atom from the instruction set, turning ERC entries into
/// literals.
pub fn random_atom<R: Rng + ?Sized>(set: &InstructionSet, rng: &mut R) -> Atom {
    let entry = set
        .entries()
        .choose(rng)
        .expect("instruction set must not be empty");
    match *entry {
        RegistryEntry::Literal(b) => Atom::Boolean(b),
        RegistryEntry::Instruction(i) if i.is_float_erc() => {
            Atom::Float(rng.random_range(FLOAT_ERC_RANGE.0..=FLOAT_ERC_RANGE.1))
        }
        RegistryEntry::Instruction(i) if i.is_integer_erc() => {
            Atom::Integer(rng.random_range(INTEGER_ERC_RANGE.0..=INTEGER_ERC_RANGE.1))
        }
        RegistryEntry::Instruction(i) => Atom::Instruction(i),
    }
}

/// `count` points worth of list contents.
fn random_items<R: Rng + ?Sized>(
    mut count: usize,
    set: &InstructionSet,
    cfg: &RandomCodeConfig,
    rng: &mut R,
) -> Vec<Atom> {
    let mut items = Vec::new();
    while count > 0 {
        if rng.random_bool(cfg.nesting) {
            let size = rng.random_range(1..=count);
            items.push(Atom::List(random_items(size - 1, set, cfg, rng)));
            count -= size;
        } else {
            items.push(random_atom(set, rng));
            count -= 1;
        }
    }
    items
}

/// A random sub-tree of exactly `points` points (an atom when `points` is 1).
pub fn random_code<R: Rng + ?Sized>(
    points: usize,
    set: &InstructionSet,
    cfg: &RandomCodeConfig,
    rng: &mut R,
) -> Atom {
    assert!(points >= 1);
    if points == 1 {
        random_atom(set, rng)
    } else {
        Atom::List(random_items(points - 1, set, cfg, rng))
    }
}

/// A program whose size is drawn uniformly from `2..=max_points`. A limit
/// below 2 still yields one atom, the smallest non-empty program.
pub fn random_program<R: Rng + ?Sized>(
    max_points: usize,
    set: &InstructionSet,
    cfg: &RandomCodeConfig,
    rng: &mut R,
) -> Program {
    let total = rng.random_range(2..=max_points.max(2));
    Program::new(random_items(total - 1, set, cfg, rng))
}
