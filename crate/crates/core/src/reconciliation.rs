//! Turbo-code reconciliation of sifted keys.
//!
//! Alice turbo-encodes each `N`-bit block of her key and publishes both
//! parity streams. Bob treats his own block as the systematic stream seen
//! through a binary symmetric channel with the estimated QBER, treats the
//! published parity as noiseless, and runs the turbo decoder. Every
//! published parity bit counts as leaked to Eve.

use rayon::prelude::*;

use crate::bb84::SiftedKeyPair;
use crate::error::{Error, Result};
use crate::metrics::binary_entropy;
use crate::turbo::{bsc_llr, turbo_encode, LlrBlock, TurboConfig, TurboDecoder};
use crate::Bit;

/// Crossover used for Bob's LLRs when the estimated QBER is below it.
pub const CROSSOVER_FLOOR: f64 = 1e-3;

/// Outcome of reconciling a whole key.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconciliationResult {
    /// Bob's key after decoding, `blocks_processed * N` bits.
    pub corrected_key: Vec<Bit>,
    /// Positions where the corrected key still differs from Alice's.
    pub residual_errors: usize,
    /// Parity bits published, `2 * N * blocks_processed`.
    pub disclosed_bits: usize,
    pub blocks_processed: usize,
    /// Crossover actually used to build Bob's systematic LLRs.
    pub qber_used: f64,
}

impl ReconciliationResult {
    pub fn residual_ber(&self) -> f64 {
        if self.corrected_key.is_empty() {
            0.0
        } else {
            self.residual_errors as f64 / self.corrected_key.len() as f64
        }
    }
}

/// Block reconciler with a reusable decoder.
#[derive(Debug)]
pub struct Reconciler {
    decoder: TurboDecoder,
    parity_confidence: f64,
}

impl Reconciler {
    /// Parity LLRs at full clamp magnitude (noiseless public channel).
    pub fn new(config: &TurboConfig) -> Result<Self> {
        Self::with_parity_confidence(config, config.llr_clamp)
    }

    /// Uses `confidence` as the magnitude of the disclosed parity LLRs.
    pub fn with_parity_confidence(config: &TurboConfig, confidence: f64) -> Result<Self> {
        if !(confidence > 0.0 && confidence <= config.llr_clamp) {
            return Err(Error::param(
                "parity_confidence",
                format!("{confidence} must lie in (0, {}]", config.llr_clamp),
            ));
        }
        Ok(Self {
            decoder: TurboDecoder::new(config)?,
            parity_confidence: confidence,
        })
    }

    pub fn config(&self) -> &TurboConfig {
        self.decoder.config()
    }

    /// Reconciles one block; returns Bob's corrected block and the number of
    /// disclosed bits.
    pub fn reconcile_block(
        &mut self,
        alice_block: &[Bit],
        bob_block: &[Bit],
        qber: f64,
    ) -> Result<(Vec<Bit>, usize)> {
        let config = self.decoder.config().clone();
        let n = config.block_length;
        Error::check_len("alice block", n, alice_block.len())?;
        Error::check_len("bob block", n, bob_block.len())?;
        let crossover = effective_crossover(qber)?;

        // Alice's side: only the parity streams leave her lab
        let codeword = turbo_encode(alice_block, &config)?;
        let disclosed = codeword.parity1.len() + codeword.parity2.len();

        let confidence = self.parity_confidence;
        let parity_llr = |bits: &[Bit]| -> Vec<f64> {
            bits.iter()
                .map(|&b| if b == 0 { confidence } else { -confidence })
                .collect()
        };
        let llrs = LlrBlock {
            systematic_llr: bob_block
                .iter()
                .map(|&b| bsc_llr(b, crossover, config.llr_clamp))
                .collect::<Result<_>>()?,
            parity1_llr: parity_llr(&codeword.parity1),
            parity2_llr: parity_llr(&codeword.parity2),
        };
        let (corrected, _) = self.decoder.decode(&llrs)?;
        Ok((corrected, disclosed))
    }
}

fn effective_crossover(qber: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&qber) {
        return Err(Error::param("qber", format!("{qber} is outside [0, 0.5)")));
    }
    Ok(qber.max(CROSSOVER_FLOOR))
}

/// Reconciles a single `N`-bit block. See [`Reconciler::reconcile_block`].
pub fn reconcile_block(
    alice_block: &[Bit],
    bob_block: &[Bit],
    qber: f64,
    config: &TurboConfig,
) -> Result<(Vec<Bit>, usize)> {
    Reconciler::new(config)?.reconcile_block(alice_block, bob_block, qber)
}

/// Reconciles `floor(len / N)` whole blocks of the key; a trailing partial
/// block is dropped. Blocks are decoded in parallel.
pub fn reconcile_key(
    pair: &SiftedKeyPair,
    qber: f64,
    config: &TurboConfig,
) -> Result<ReconciliationResult> {
    config.validate()?;
    let n = config.block_length;
    if pair.len() < n {
        return Err(Error::param(
            "sifted key",
            format!("length {} is shorter than one block of {n}", pair.len()),
        ));
    }
    let qber_used = effective_crossover(qber)?;
    let blocks = pair.len() / n;
    let used = blocks * n;
    let alice = &pair.alice_key()[..used];
    let bob = &pair.bob_key()[..used];

    let decoded: Vec<(Vec<Bit>, usize)> = alice
        .par_chunks_exact(n)
        .zip(bob.par_chunks_exact(n))
        .map_init(
            || Reconciler::new(config),
            |reconciler, (a, b)| match reconciler {
                Ok(r) => r.reconcile_block(a, b, qber),
                Err(e) => Err(Error::InvalidConfig(e.to_string())),
            },
        )
        .collect::<Result<_>>()?;

    let mut corrected_key = Vec::with_capacity(used);
    let mut disclosed_bits = 0;
    for (block, disclosed) in decoded {
        corrected_key.extend(block);
        disclosed_bits += disclosed;
    }
    let residual_errors = corrected_key
        .iter()
        .zip(alice)
        .filter(|(x, y)| x != y)
        .count();
    Ok(ReconciliationResult {
        corrected_key,
        residual_errors,
        disclosed_bits,
        blocks_processed: blocks,
        qber_used,
    })
}

/// Leakage relative to the Shannon minimum `key_bits * h(qber)`; 1.0 is
/// optimal, larger is worse.
pub fn reconciliation_efficiency(disclosed_bits: usize, key_bits: usize, qber: f64) -> Result<f64> {
    if key_bits == 0 {
        return Err(Error::param("key_bits", "must be positive"));
    }
    if !(qber > 0.0 && qber < 0.5) {
        return Err(Error::param("qber", format!("{qber} is outside (0, 0.5)")));
    }
    Ok(disclosed_bits as f64 / (key_bits as f64 * binary_entropy(qber)?))
}
