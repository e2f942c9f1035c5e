use crate::error::{Error, Result};
use crate::Bit;

/// Channel LLR of a bit received over a binary symmetric channel.
///
/// Positive values favour 0. The magnitude `ln((1 - p) / p)` is capped at
/// `clamp`.
pub fn bsc_llr(bit: Bit, crossover: f64, clamp: f64) -> Result<f64> {
    if !(crossover > 0.0 && crossover < 0.5) {
        return Err(Error::param(
            "crossover",
            format!("{crossover} is outside (0, 0.5)"),
        ));
    }
    if clamp.is_nan() || clamp <= 0.0 {
        return Err(Error::param("clamp", format!("{clamp} must be positive")));
    }
    let magnitude = ((1.0 - crossover) / crossover).ln().min(clamp);
    Ok(if bit == 0 { magnitude } else { -magnitude })
}

/// Hard decision: non-negative LLR → 0.
pub fn hard_decision(llr: f64) -> Bit {
    (llr < 0.0) as Bit
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_llr_crossover() {
        let p = 1.0 / (1.0 + std::f64::consts::E);
        assert!((bsc_llr(0, p, 25.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((bsc_llr(0, 0.2689, 25.0).unwrap() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn sign_symmetry() {
        for p in [0.01, 0.1, 0.3, 0.49] {
            assert_eq!(bsc_llr(1, p, 25.0).unwrap(), -bsc_llr(0, p, 25.0).unwrap());
        }
    }

    #[test]
    fn clamp_is_exact() {
        assert_eq!(bsc_llr(0, 1e-300, 25.0).unwrap(), 25.0);
        assert_eq!(bsc_llr(1, 1e-20, 25.0).unwrap(), -25.0);
    }

    #[test]
    fn rejects_bad_crossover() {
        for p in [0.0, 0.5, 0.7, -0.1, f64::NAN] {
            assert!(bsc_llr(0, p, 25.0).is_err(), "{p}");
        }
        assert!(bsc_llr(0, 0.1, 0.0).is_err());
    }
}
