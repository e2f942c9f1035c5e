//! Merging of command-line flags, the optional config file and defaults.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use qkd_turbo::{ExperimentConfig, TurboConfig};
use serde::Deserialize;

/// Experiment settings. Every field is optional; unset fields come from the
/// config file, then from the built-in defaults.
#[derive(Debug, Clone, Default, PartialEq, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Settings {
    /// Smallest interception probability in the sweep
    #[arg(long)]
    pub s_min: Option<f64>,
    /// Largest interception probability in the sweep
    #[arg(long)]
    pub s_max: Option<f64>,
    /// Number of evenly spaced sweep points (inclusive of both ends)
    #[arg(long)]
    pub s_steps: Option<usize>,
    /// Photons sent by Alice per sweep point
    #[arg(long)]
    pub photons: Option<usize>,
    /// Fraction of the sifted key disclosed for QBER estimation
    #[arg(long)]
    pub disclose_fraction: Option<f64>,
    /// Maximum key bits passed to reconciliation
    #[arg(long)]
    pub key_bits: Option<usize>,
    /// Turbo block length N
    #[arg(long)]
    pub block_size: Option<usize>,
    /// Decoder iterations
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Interleaver rows
    #[arg(long)]
    pub rows: Option<usize>,
    /// Interleaver columns
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output CSV path
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Floor secure information at zero in the output
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub clamp_plots: Option<bool>,
    /// Evaluate sweep points on a single thread
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub serial: Option<bool>,
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config file {}", path.display()))
    }

    /// Values set in `self` win over those in `base`.
    pub fn or(self, base: Settings) -> Settings {
        Settings {
            s_min: self.s_min.or(base.s_min),
            s_max: self.s_max.or(base.s_max),
            s_steps: self.s_steps.or(base.s_steps),
            photons: self.photons.or(base.photons),
            disclose_fraction: self.disclose_fraction.or(base.disclose_fraction),
            key_bits: self.key_bits.or(base.key_bits),
            block_size: self.block_size.or(base.block_size),
            iterations: self.iterations.or(base.iterations),
            rows: self.rows.or(base.rows),
            cols: self.cols.or(base.cols),
            seed: self.seed.or(base.seed),
            output: self.output.or(base.output),
            clamp_plots: self.clamp_plots.or(base.clamp_plots),
            serial: self.serial.or(base.serial),
        }
    }

    pub fn into_config(self) -> Result<ExperimentConfig> {
        let defaults = ExperimentConfig::default();
        let (block_length, rows, cols) = resolve_geometry(self.block_size, self.rows, self.cols)?;
        let config = ExperimentConfig {
            s_min: self.s_min.unwrap_or(defaults.s_min),
            s_max: self.s_max.unwrap_or(defaults.s_max),
            s_steps: self.s_steps.unwrap_or(defaults.s_steps),
            photon_count: self.photons.unwrap_or(defaults.photon_count),
            disclose_fraction: self.disclose_fraction.unwrap_or(defaults.disclose_fraction),
            key_bits: self.key_bits.or(defaults.key_bits),
            turbo: TurboConfig {
                block_length,
                interleaver_rows: rows,
                interleaver_cols: cols,
                iterations: self.iterations.unwrap_or(defaults.turbo.iterations),
                ..defaults.turbo
            },
            seed: self.seed.unwrap_or(defaults.seed),
            output_path: self.output.unwrap_or(defaults.output_path),
            clamp_plots: self.clamp_plots.unwrap_or(defaults.clamp_plots),
            parallel: !self.serial.unwrap_or(!defaults.parallel),
        };
        config.validate()?;
        Ok(config)
    }
}

/// Fills in whichever of block length, rows and columns are missing.
/// Without rows or columns, the most square factorisation with
/// `rows <= cols` is used (1000 → 25 x 40).
fn resolve_geometry(
    block: Option<usize>,
    rows: Option<usize>,
    cols: Option<usize>,
) -> Result<(usize, usize, usize)> {
    let default_block = TurboConfig::default().block_length;
    let divide = |n: usize, d: usize, what: &str| -> Result<usize> {
        if d == 0 || !n.is_multiple_of(d) {
            bail!("block size {n} is not divisible by {what} {d}");
        }
        Ok(n / d)
    };
    let geometry = match (block, rows, cols) {
        (_, Some(r), Some(c)) => {
            let n = r * c;
            if let Some(b) = block {
                if b != n {
                    bail!("interleaver {r}x{c} does not match block size {b}");
                }
            }
            (n, r, c)
        }
        (b, Some(r), None) => {
            let n = b.unwrap_or(default_block);
            (n, r, divide(n, r, "rows")?)
        }
        (b, None, Some(c)) => {
            let n = b.unwrap_or(default_block);
            (n, divide(n, c, "cols")?, c)
        }
        (b, None, None) => {
            let n = b.unwrap_or(default_block);
            if n == 0 {
                bail!("block size must be positive");
            }
            let r = (1..=n)
                .take_while(|r| r * r <= n)
                .filter(|r| n % r == 0)
                .last()
                .unwrap_or(1);
            (n, r, n / r)
        }
    };
    Ok(geometry)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_settings_give_defaults() {
        let cfg = Settings::default().into_config().unwrap();
        assert_eq!(cfg, ExperimentConfig::default());
    }

    #[test]
    fn geometry_resolution() {
        assert_eq!(resolve_geometry(None, None, None).unwrap(), (1000, 25, 40));
        assert_eq!(
            resolve_geometry(Some(200), None, None).unwrap(),
            (200, 10, 20)
        );
        assert_eq!(resolve_geometry(Some(7), None, None).unwrap(), (7, 1, 7));
        assert_eq!(
            resolve_geometry(None, Some(8), Some(5)).unwrap(),
            (40, 8, 5)
        );
        assert_eq!(
            resolve_geometry(Some(1000), Some(50), None).unwrap(),
            (1000, 50, 20)
        );
        assert_eq!(
            resolve_geometry(None, None, Some(100)).unwrap(),
            (1000, 10, 100)
        );
        assert!(resolve_geometry(Some(1000), Some(30), None).is_err());
        assert!(resolve_geometry(Some(100), Some(10), Some(20)).is_err());
        assert!(resolve_geometry(Some(0), None, None).is_err());
    }

    #[test]
    fn flags_override_file() {
        let file: Settings =
            toml::from_str("s-steps = 5\nseed = 9\nphotons = 1234\nclamp-plots = true").unwrap();
        let flags = Settings {
            seed: Some(3),
            ..Settings::default()
        };
        let cfg = flags.or(file).into_config().unwrap();
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.s_steps, 5);
        assert_eq!(cfg.photon_count, 1234);
        assert!(cfg.clamp_plots);
    }

    #[test]
    fn file_rejects_unknown_keys() {
        assert!(toml::from_str::<Settings>("s_min = 0.1").is_err());
        assert!(toml::from_str::<Settings>("bogus = 1").is_err());
    }

    #[test]
    fn invalid_values_are_reported() {
        let s = Settings {
            s_min: Some(0.8),
            s_max: Some(0.2),
            ..Settings::default()
        };
        assert!(s.into_config().is_err());
    }
}
