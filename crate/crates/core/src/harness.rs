//! Sweeps over the interception probability `s`: each point runs the full
//! protocol (prepare, attack, measure, sift, estimate, reconcile) and is
//! summarised as one CSV row.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::bb84::{estimate_qber, sift, transmit, ChannelParams, SiftedKeyPair};
use crate::error::{Error, Result};
use crate::metrics::SecurityPoint;
use crate::reconciliation::{reconcile_key, reconciliation_efficiency};
use crate::rng::{Role, StreamSet};
use crate::turbo::TurboConfig;

/// CSV header, in [`SweepRecord`] field order.
pub const CSV_HEADER: &str =
    "s,qber_empirical,qber_theoretical,i_ab,i_ae,i_s,sifted_length,residual_ber,disclosed_bits,efficiency";

/// Everything a sweep depends on.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub s_min: f64,
    pub s_max: f64,
    pub s_steps: usize,
    pub photon_count: usize,
    pub disclose_fraction: f64,
    /// Upper bound on the key bits handed to reconciliation; `None` uses
    /// every whole block of the remaining sifted key.
    pub key_bits: Option<usize>,
    pub turbo: TurboConfig,
    pub seed: u64,
    pub output_path: PathBuf,
    /// Floor `i_s` at zero in the output.
    pub clamp_plots: bool,
    /// Evaluate sweep points on the rayon pool. Output is identical either way.
    pub parallel: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            s_min: 0.0,
            s_max: 1.0,
            s_steps: 11,
            photon_count: 40_000,
            disclose_fraction: 0.1,
            key_bits: Some(10_000),
            turbo: TurboConfig::default(),
            seed: 1,
            output_path: PathBuf::from("sweep.csv"),
            clamp_plots: false,
            parallel: true,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let unit = |name: &'static str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::param(name, format!("{v} is outside [0, 1]")))
            }
        };
        unit("s_min", self.s_min)?;
        unit("s_max", self.s_max)?;
        if self.s_min > self.s_max {
            return Err(Error::param(
                "s_min",
                format!("{} exceeds s_max {}", self.s_min, self.s_max),
            ));
        }
        if self.s_steps == 0 {
            return Err(Error::param("s_steps", "must be at least 1"));
        }
        if self.photon_count == 0 {
            return Err(Error::param("photon_count", "must be at least 1"));
        }
        if !(self.disclose_fraction > 0.0 && self.disclose_fraction < 1.0) {
            return Err(Error::param(
                "disclose_fraction",
                format!("{} is outside (0, 1)", self.disclose_fraction),
            ));
        }
        if self.key_bits == Some(0) {
            return Err(Error::param("key_bits", "must be positive"));
        }
        self.turbo.validate()
    }

    /// The `s_steps` evenly spaced values from `s_min` to `s_max` inclusive.
    pub fn s_values(&self) -> Vec<f64> {
        if self.s_steps == 1 {
            return vec![self.s_min];
        }
        let span = self.s_max - self.s_min;
        let last = (self.s_steps - 1) as f64;
        (0..self.s_steps)
            .map(|i| {
                if i + 1 == self.s_steps {
                    self.s_max
                } else {
                    self.s_min + span * i as f64 / last
                }
            })
            .collect()
    }
}

/// One sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub s: f64,
    /// Disagreement rate over the whole sifted key.
    pub qber_empirical: f64,
    pub qber_theoretical: f64,
    pub i_ab: f64,
    pub i_ae: f64,
    pub i_s: f64,
    pub sifted_length: usize,
    /// `None` when fewer than one block of key survived estimation.
    pub residual_ber: Option<f64>,
    pub disclosed_bits: usize,
    /// `None` when undefined: no reconciliation, or an error-free key.
    pub efficiency: Option<f64>,
}

impl SweepRecord {
    fn write_csv_row(&self, out: &mut String) {
        let opt = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_default();
        // writing to a String cannot fail
        let _ = writeln!(
            out,
            "{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{},{},{},{}",
            self.s,
            self.qber_empirical,
            self.qber_theoretical,
            self.i_ab,
            self.i_ae,
            self.i_s,
            self.sifted_length,
            opt(self.residual_ber),
            self.disclosed_bits,
            opt(self.efficiency),
        );
    }
}

/// Runs the whole protocol at interception probability `s`.
pub fn run_point(s: f64, config: &ExperimentConfig) -> Result<SweepRecord> {
    config.validate()?;
    let params = ChannelParams::new(s, config.photon_count, config.seed)?;
    let point = s.to_bits();
    let record = transmit(&params, point)?;
    let sifted = sift(&record)?;
    let qber_empirical = sifted.error_rate();

    let mut sampling_rng = StreamSet::new(config.seed).stream(point, Role::Sampling);
    let (qber_estimate, remaining) =
        estimate_qber(&sifted, config.disclose_fraction, &mut sampling_rng)?;

    let usable = config
        .key_bits
        .map_or(remaining.len(), |cap| cap.min(remaining.len()));
    let (residual_ber, disclosed_bits, efficiency) = if usable < config.turbo.block_length {
        (None, 0, None)
    } else {
        let (alice, bob) = remaining.into_parts();
        let key = SiftedKeyPair::new(alice[..usable].to_vec(), bob[..usable].to_vec())?;
        let result = reconcile_key(&key, qber_estimate, &config.turbo)?;
        let efficiency = if qber_empirical > 0.0 && qber_empirical < 0.5 {
            Some(reconciliation_efficiency(
                result.disclosed_bits,
                result.corrected_key.len(),
                qber_empirical,
            )?)
        } else {
            None
        };
        (
            Some(result.residual_ber()),
            result.disclosed_bits,
            efficiency,
        )
    };

    let mut metrics = SecurityPoint::at(s)?;
    if config.clamp_plots {
        metrics = metrics.clamped();
    }
    Ok(SweepRecord {
        s,
        qber_empirical,
        qber_theoretical: metrics.pe,
        i_ab: metrics.i_ab,
        i_ae: metrics.i_ae,
        i_s: metrics.i_s,
        sifted_length: sifted.len(),
        residual_ber,
        disclosed_bits,
        efficiency,
    })
}

/// Runs every point of the sweep, ordered by `s`.
pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    let s_values = config.s_values();
    if config.parallel {
        s_values.par_iter().map(|&s| run_point(s, config)).collect()
    } else {
        s_values.iter().map(|&s| run_point(s, config)).collect()
    }
}

/// Renders the records as CSV text, header first.
pub fn to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        r.write_csv_row(&mut out);
    }
    out
}

/// Writes [`to_csv`] output to `path`.
pub fn emit_csv(records: &[SweepRecord], path: &Path) -> Result<()> {
    std::fs::write(path, to_csv(records)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
