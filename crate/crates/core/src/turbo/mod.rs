//! Rate-1/3 parallel concatenated turbo code.
//!
//! Two identical RSC encoders, the second fed through a row-column
//! interleaver. No tail bits and no puncturing: a block of `N` information
//! bits becomes `N` systematic bits plus two `N`-bit parity streams.
//!
//! Decoding alternates two MAX-Log-MAP component decoders that exchange
//! extrinsic LLRs for a fixed number of iterations.

mod config;
mod interleaver;
mod llr;
mod max_log_map;
mod rsc;

pub use config::{taps_from_octal, Taps, TurboConfig};
pub use interleaver::{deinterleave, interleave, RowColumnInterleaver};
pub use llr::{bsc_llr, hard_decision};
pub use max_log_map::max_log_map_component;
pub use rsc::{rsc_encode, Branch, Trellis, NUM_STATES};

use crate::error::{Error, Result};
use crate::Bit;
use max_log_map::{decode_into, Workspace};

/// Encoder output; all three streams have length `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub systematic: Vec<Bit>,
    pub parity1: Vec<Bit>,
    pub parity2: Vec<Bit>,
}

/// Soft decoder input. Positive values favour 0.
#[derive(Debug, Clone, PartialEq)]
pub struct LlrBlock {
    pub systematic_llr: Vec<f64>,
    pub parity1_llr: Vec<f64>,
    pub parity2_llr: Vec<f64>,
}

impl LlrBlock {
    /// LLRs of `±magnitude` matching each bit of `codeword`.
    pub fn noiseless(codeword: &Codeword, magnitude: f64) -> Self {
        let map = |bits: &[Bit]| {
            bits.iter()
                .map(|&b| if b == 0 { magnitude } else { -magnitude })
                .collect()
        };
        Self {
            systematic_llr: map(&codeword.systematic),
            parity1_llr: map(&codeword.parity1),
            parity2_llr: map(&codeword.parity2),
        }
    }

    /// LLRs for `received` bits that all crossed a BSC with `crossover`.
    pub fn from_bsc(received: &Codeword, crossover: f64, clamp: f64) -> Result<Self> {
        let map = |bits: &[Bit]| -> Result<Vec<f64>> {
            bits.iter().map(|&b| bsc_llr(b, crossover, clamp)).collect()
        };
        Ok(Self {
            systematic_llr: map(&received.systematic)?,
            parity1_llr: map(&received.parity1)?,
            parity2_llr: map(&received.parity2)?,
        })
    }

    fn validate(&self, config: &TurboConfig) -> Result<()> {
        let n = config.block_length;
        Error::check_len("systematic LLRs", n, self.systematic_llr.len())?;
        Error::check_len("parity1 LLRs", n, self.parity1_llr.len())?;
        Error::check_len("parity2 LLRs", n, self.parity2_llr.len())?;
        let clamp = config.llr_clamp;
        let within = |v: &[f64]| v.iter().all(|x| x.abs() <= clamp);
        if !(within(&self.systematic_llr) && within(&self.parity1_llr) && within(&self.parity2_llr))
        {
            return Err(Error::param(
                "llrs",
                format!("entries must be finite and within ±{clamp}"),
            ));
        }
        Ok(())
    }
}

/// Encodes one block of `N` bits.
pub fn turbo_encode(input: &[Bit], config: &TurboConfig) -> Result<Codeword> {
    config.validate()?;
    Error::check_len("turbo input", config.block_length, input.len())?;
    let trellis = Trellis::from_config(config);
    let permuted = interleave(input, config.interleaver_rows, config.interleaver_cols)?;
    Ok(Codeword {
        systematic: input.to_vec(),
        parity1: trellis.encode(input).0,
        parity2: trellis.encode(&permuted).0,
    })
}

/// Iterative decoder holding the trellis, interleaver and scratch buffers
/// for one configuration. Reuse it across blocks to avoid reallocating.
#[derive(Debug)]
pub struct TurboDecoder {
    config: TurboConfig,
    trellis: Trellis,
    interleaver: RowColumnInterleaver,
    workspace: Workspace,
}

impl TurboDecoder {
    pub fn new(config: &TurboConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            config: config.clone(),
            trellis: Trellis::from_config(config),
            interleaver: RowColumnInterleaver::new(
                config.interleaver_rows,
                config.interleaver_cols,
            )?,
            workspace: Workspace::new(),
        })
    }

    pub fn config(&self) -> &TurboConfig {
        &self.config
    }

    pub fn decode(&mut self, llrs: &LlrBlock) -> Result<(Vec<Bit>, usize)> {
        self.decode_observed(llrs, |_, _, _| {})
    }

    /// Like [`decode`](Self::decode), calling `observe(iteration, ext1, ext2)`
    /// after each full iteration. `ext2` is in interleaved order.
    pub fn decode_observed<F>(
        &mut self,
        llrs: &LlrBlock,
        mut observe: F,
    ) -> Result<(Vec<Bit>, usize)>
    where
        F: FnMut(usize, &[f64], &[f64]),
    {
        llrs.validate(&self.config)?;
        let n = self.config.block_length;
        let clamp = self.config.llr_clamp;

        let mut sys_interleaved = vec![0.0; n];
        self.interleaver
            .interleave_into(&llrs.systematic_llr, &mut sys_interleaved);
        let mut apriori1 = vec![0.0; n];
        let mut apriori2 = vec![0.0; n];
        let mut ext1 = vec![0.0; n];
        let mut ext2 = vec![0.0; n];

        for iteration in 0..self.config.iterations {
            decode_into(
                &self.trellis,
                &llrs.systematic_llr,
                &llrs.parity1_llr,
                &apriori1,
                clamp,
                &mut self.workspace,
                &mut ext1,
            );
            self.interleaver.interleave_into(&ext1, &mut apriori2);
            decode_into(
                &self.trellis,
                &sys_interleaved,
                &llrs.parity2_llr,
                &apriori2,
                clamp,
                &mut self.workspace,
                &mut ext2,
            );
            self.interleaver.deinterleave_into(&ext2, &mut apriori1);
            observe(iteration, &ext1, &ext2);
        }

        // apriori1 now holds the deinterleaved extrinsic of decoder 2
        let decoded = (0..n)
            .map(|k| hard_decision(llrs.systematic_llr[k] + ext1[k] + apriori1[k]))
            .collect();
        Ok((decoded, self.config.iterations))
    }
}

/// Decodes one block; returns the hard decisions and the iterations run.
pub fn turbo_decode(llrs: &LlrBlock, config: &TurboConfig) -> Result<(Vec<Bit>, usize)> {
    TurboDecoder::new(config)?.decode(llrs)
}
