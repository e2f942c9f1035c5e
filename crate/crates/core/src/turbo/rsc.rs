//! Four-state recursive systematic convolutional code.
//!
//! The register holds the last two feedback bits `(w[k-1], w[k-2])`, packed
//! as `state = w[k-1] << 1 | w[k-2]`. At each step
//!
//! ```text
//! w[k] = u[k] ^ fb1 & w[k-1] ^ fb2 & w[k-2]
//! p[k] = w[k] ^ fw1 & w[k-1] ^ fw2 & w[k-2]
//! ```
//!
//! The feedback bit always enters the parity. With the default (5,3) taps
//! this gives the parity transfer function `(1 + D + D^2) / (1 + D^2)`.

use super::config::{Taps, TurboConfig};
use crate::error::{Error, Result};
use crate::Bit;

pub const NUM_STATES: usize = 4;

/// One trellis branch leaving a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Branch {
    pub next_state: usize,
    pub parity: Bit,
}

/// Precomputed transition table, indexed `[state][input]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trellis {
    branches: [[Branch; 2]; NUM_STATES],
}

impl Trellis {
    pub fn new(feedback: Taps, forward: Taps) -> Self {
        let mut branches = [[Branch {
            next_state: 0,
            parity: 0,
        }; 2]; NUM_STATES];
        for (state, row) in branches.iter_mut().enumerate() {
            let w1 = (state >> 1) as Bit & 1;
            let w2 = state as Bit & 1;
            for (input, branch) in row.iter_mut().enumerate() {
                let w = input as Bit ^ (feedback[1] & w1) ^ (feedback[2] & w2);
                let parity = w ^ (forward[1] & w1) ^ (forward[2] & w2);
                *branch = Branch {
                    next_state: ((w as usize) << 1) | w1 as usize,
                    parity,
                };
            }
        }
        Self { branches }
    }

    pub fn from_config(config: &TurboConfig) -> Self {
        Self::new(config.feedback_poly, config.forward_poly)
    }

    #[inline]
    pub fn branch(&self, state: usize, input: Bit) -> Branch {
        self.branches[state][input as usize]
    }

    /// Encodes from state 0, returning the parity stream and final state.
    pub fn encode(&self, input: &[Bit]) -> (Vec<Bit>, usize) {
        let mut state = 0;
        let parity = input
            .iter()
            .map(|&u| {
                let b = self.branch(state, u);
                state = b.next_state;
                b.parity
            })
            .collect();
        (parity, state)
    }
}

/// Parity stream of the unterminated RSC code started in state 0.
pub fn rsc_encode(input: &[Bit], config: &TurboConfig) -> Result<Vec<Bit>> {
    Error::check_len("RSC input", config.block_length, input.len())?;
    Ok(Trellis::from_config(config).encode(input).0)
}
