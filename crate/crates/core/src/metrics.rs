//! Closed-form information quantities for the intercept-resend attack, as a
//! function of the per-photon interception probability `s`.
//!
//! All logarithms are base 2. `secure_info` is reported as computed, which
//! is negative for large `s`; [`SecurityPoint::clamped`] exists for plotting.

use crate::error::{Error, Result};

fn check_unit(name: &'static str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::param(name, format!("{p} is outside [0, 1]")))
    }
}

/// Binary entropy `h(p)`, with `h(0) = h(1) = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    check_unit("p", p)?;
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    Ok(-p * p.log2() - (1.0 - p) * (1.0 - p).log2())
}

/// Alice-Bob mutual information `log2(2 - s/2) - (s/4) log2(4/s - 1)`.
///
/// The `s = 0` value is the limit, 1.
pub fn mutual_info_ab(s: f64) -> Result<f64> {
    check_unit("s", s)?;
    if s == 0.0 {
        return Ok(1.0);
    }
    Ok((2.0 - s / 2.0).log2() - (s / 4.0) * (4.0 / s - 1.0).log2())
}

/// Alice-Eve mutual information
/// `½ log2(2 - s²/4) + (s/4) log2((2 + s) / (2 - s))`.
pub fn mutual_info_ae(s: f64) -> Result<f64> {
    check_unit("s", s)?;
    Ok(0.5 * (2.0 - s * s / 4.0).log2() + (s / 4.0) * ((2.0 + s) / (2.0 - s)).log2())
}

/// `I_AB - I_AE`, unclamped.
pub fn secure_info(s: f64) -> Result<f64> {
    Ok(mutual_info_ab(s)? - mutual_info_ae(s)?)
}

/// Error probability on the sifted key: Eve picks the wrong basis half the
/// time, and Bob's result is then wrong half the time.
pub fn theoretical_qber(s: f64) -> Result<f64> {
    check_unit("s", s)?;
    Ok(s / 4.0)
}

/// All analytic quantities at one value of `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecurityPoint {
    pub s: f64,
    pub i_ab: f64,
    pub i_ae: f64,
    pub i_s: f64,
    pub pe: f64,
}

impl SecurityPoint {
    pub fn at(s: f64) -> Result<Self> {
        let i_ab = mutual_info_ab(s)?;
        let i_ae = mutual_info_ae(s)?;
        Ok(Self {
            s,
            i_ab,
            i_ae,
            i_s: i_ab - i_ae,
            pe: theoretical_qber(s)?,
        })
    }

    /// Copy with `i_s` floored at zero, for figure output only.
    pub fn clamped(self) -> Self {
        Self {
            i_s: self.i_s.max(0.0),
            ..self
        }
    }
}
