//! Seeded, splittable random streams.
//!
//! Every protocol run owns one ChaCha key built from the user seed and a
//! 64-bit point key (the harness uses the bit pattern of `s`). Each
//! participant draws from its own ChaCha stream within that key, selected by
//! [`Role`], so a run's output does not depend on the order (or thread) in
//! which points are evaluated.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator type used throughout the crate.
pub type SimRng = ChaCha8Rng;

/// Participant owning a sub-stream. The discriminants fix the stream order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Role {
    Alice = 0,
    Eve = 1,
    Bob = 2,
    Sampling = 3,
}

/// Factory for the independent sub-streams of one seeded experiment.
#[derive(Debug, Clone, Copy)]
pub struct StreamSet {
    seed: u64,
}

impl StreamSet {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Stream for `role` within the run identified by `point`.
    pub fn stream(&self, point: u64, role: Role) -> SimRng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&point.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(role as u64);
        rng
    }
}
