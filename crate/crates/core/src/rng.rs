//! Deterministic seed derivation.
//!
//! Every random decision in a run flows from one 64-bit master seed. Work
//! items (episodes, individuals, generations) get their own generator whose
//! seed is a hash of the master seed, a named stream, and the item's indices,
//! so results never depend on the order in which items are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used throughout the crate.
pub type Rng = ChaCha8Rng;

/// Named sub-streams of the master seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stream {
    Initialization,
    Evaluation,
    Variation,
    Episode,
    Baseline,
    Shift,
}

impl Stream {
    fn tag(self) -> u64 {
        match self {
            Stream::Initialization => 0x696e_6974,
            Stream::Evaluation => 0x6576_616c,
            Stream::Variation => 0x7661_7279,
            Stream::Episode => 0x6570_6973,
            Stream::Baseline => 0x6261_7365,
            Stream::Shift => 0x7368_6966,
        }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for the work item `indices` of `stream` under `master`.
pub fn derive_seed(master: u64, stream: Stream, indices: &[u64]) -> u64 {
    let mut h = splitmix(master ^ splitmix(stream.tag()));
    for &i in indices {
        h = splitmix(h ^ splitmix(i.wrapping_add(0x5851_F42D_4C95_7F2D)));
    }
    h
}

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shorthand for `rng_from_seed(derive_seed(..))`.
pub fn stream_rng(master: u64, stream: Stream, indices: &[u64]) -> Rng {
    rng_from_seed(derive_seed(master, stream, indices))
}
