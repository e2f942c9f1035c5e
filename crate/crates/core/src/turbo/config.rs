use crate::error::{Error, Result};

/// Generator taps over `(current, D, D^2)`, most significant first, so
/// octal 5 is `[1, 0, 1]`.
pub type Taps = [u8; 3];

/// Converts a 3-bit octal generator (e.g. `0o5`) to taps.
pub fn taps_from_octal(octal: u8) -> Result<Taps> {
    if octal > 0o7 {
        return Err(Error::InvalidConfig(format!(
            "generator {octal:o} does not fit a memory-2 code"
        )));
    }
    Ok([(octal >> 2) & 1, (octal >> 1) & 1, octal & 1])
}

/// Codec parameters shared by encoder and decoder.
#[derive(Debug, Clone, PartialEq)]
pub struct TurboConfig {
    /// Feedback polynomial; its current-input tap must be set.
    pub feedback_poly: Taps,
    /// Forward polynomial over the register. The feedback bit itself always
    /// contributes to the parity (see [`Trellis`](super::Trellis)).
    pub forward_poly: Taps,
    pub block_length: usize,
    pub interleaver_rows: usize,
    pub interleaver_cols: usize,
    pub iterations: usize,
    pub llr_clamp: f64,
}

impl Default for TurboConfig {
    /// Octal (5,3) generators, N = 1000 as 25 x 40, 20 iterations, clamp 25.
    fn default() -> Self {
        Self {
            feedback_poly: [1, 0, 1],
            forward_poly: [0, 1, 1],
            block_length: 1000,
            interleaver_rows: 25,
            interleaver_cols: 40,
            iterations: 20,
            llr_clamp: 25.0,
        }
    }
}

impl TurboConfig {
    /// Default codec with a different block geometry.
    pub fn with_geometry(rows: usize, cols: usize) -> Self {
        Self {
            block_length: rows * cols,
            interleaver_rows: rows,
            interleaver_cols: cols,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let taps_ok = |t: &Taps| t.iter().all(|&b| b <= 1);
        if !taps_ok(&self.feedback_poly) || !taps_ok(&self.forward_poly) {
            return Err(Error::InvalidConfig("generator taps must be 0 or 1".into()));
        }
        if self.feedback_poly[0] != 1 {
            return Err(Error::InvalidConfig(
                "feedback polynomial must tap the current input".into(),
            ));
        }
        if self.block_length == 0 {
            return Err(Error::InvalidConfig("block length must be positive".into()));
        }
        if self.interleaver_rows * self.interleaver_cols != self.block_length {
            return Err(Error::InvalidConfig(format!(
                "interleaver {}x{} does not cover block length {}",
                self.interleaver_rows, self.interleaver_cols, self.block_length
            )));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidConfig(
                "at least one iteration is required".into(),
            ));
        }
        if !(self.llr_clamp > 0.0 && self.llr_clamp.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "LLR clamp {} must be positive and finite",
                self.llr_clamp
            )));
        }
        Ok(())
    }
}
