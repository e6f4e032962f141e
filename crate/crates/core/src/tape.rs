//! Keyed pseudorandom streams.
//!
//! Every random choice is drawn from a ChaCha8 stream keyed by
//! `(seed, vertex, tag)`, so a choice depends only on where it is made and
//! never on the order in which the construction visits vertices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// What a stream is used for; distinct tags give independent streams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[repr(u64)]
pub enum Tag {
    /// Membership of a codeword in `G'`.
    GPrime = 1,
    /// The square-swap directions `(p_u, q_u)`.
    Pq = 2,
    /// The ordered cube-swap directions `r_v^(1..)`.
    R6 = 3,
    /// Random perfect-matching extraction.
    Greedy = 4,
    /// Random factor subsets.
    Subset = 5,
    /// Per-run seeds in experiment sweeps.
    Experiment = 6,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RandomTape {
    pub seed: u64,
}

impl RandomTape {
    pub fn new(seed: u64) -> Self {
        RandomTape { seed }
    }

    /// The stream for `(vertex, tag)`.
    pub fn stream(&self, vertex: u64, tag: Tag) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[0..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&vertex.to_le_bytes());
        key[16..24].copy_from_slice(&(tag as u64).to_le_bytes());
        ChaCha8Rng::from_seed(key)
    }

    /// A coin with success probability `p`.
    pub fn coin(&self, vertex: u64, tag: Tag, p: f64) -> bool {
        if p <= 0.0 {
            return false;
        }
        if p >= 1.0 {
            return true;
        }
        self.stream(vertex, tag).gen::<f64>() < p
    }

    /// `count` distinct values of `0..n`, uniformly ordered.
    pub fn distinct(&self, vertex: u64, tag: Tag, n: usize, count: usize) -> Vec<usize> {
        sample_distinct(&mut self.stream(vertex, tag), n, count)
    }

    /// A derived 64-bit value, used to spawn sub-seeds.
    pub fn word(&self, index: u64, tag: Tag) -> u64 {
        self.stream(index, tag).gen()
    }
}

/// Partial Fisher-Yates: the first `count` entries of a uniform permutation of `0..n`.
pub fn sample_distinct<R: Rng>(rng: &mut R, n: usize, count: usize) -> Vec<usize> {
    assert!(count <= n, "cannot draw {count} distinct values from {n}");
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..count {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(count);
    pool
}
