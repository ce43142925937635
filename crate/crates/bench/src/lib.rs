//! Inputs shared by the benchmarks.

use kinklab::density::sample_trial;
use kinklab::{CyclicConfig, Word};

pub const SEED: u64 = 7;

/// A uniformly random word, reproducible from `len` and `SEED`.
pub fn random_word(len: usize) -> Word {
    sample_trial(len.max(3), SEED, len as u64).expect("width at least 3").to_word().subword(0..len)
}

pub fn random_ring(width: usize) -> CyclicConfig {
    sample_trial(width, SEED, 0).expect("width at least 3")
}

/// A preimage target that stays satisfiable: the image of a random word.
pub fn reachable_target(len: usize) -> Word {
    kinklab::step_word(&random_word(len + 2), kinklab::Rule::R18).expect("long enough")
}
