//! BB84 key distribution under an intercept-resend eavesdropper, with
//! information reconciliation of the sifted keys by a rate-1/3 turbo code.
//!
//! The crate is organised bottom-up:
//!
//! - [`bb84`]: photon preparation, the intercept-resend attack, measurement,
//!   sifting and sample-based QBER estimation.
//! - [`turbo`]: RSC constituent encoder, row-column interleaver, parallel
//!   concatenated encoder and the iterative MAX-Log-MAP decoder.
//! - [`reconciliation`]: Alice discloses both parity streams, Bob decodes his
//!   noisy key against them.
//! - [`metrics`]: closed-form mutual informations, secure information and the
//!   analytic error probability.
//! - [`harness`]: sweeps over the eavesdropping probability and CSV output.

pub mod bb84;
mod error;
pub mod harness;
pub mod metrics;
pub mod reconciliation;
pub mod rng;
pub mod turbo;

pub use bb84::{Basis, ChannelParams, PhotonState, SiftedKeyPair, TransmissionRecord};
pub use error::{Error, Result};
pub use harness::{ExperimentConfig, SweepRecord};
pub use metrics::SecurityPoint;
pub use reconciliation::ReconciliationResult;
pub use turbo::{Codeword, LlrBlock, TurboConfig};

/// A single binary digit, always `0` or `1`.
pub type Bit = u8;
