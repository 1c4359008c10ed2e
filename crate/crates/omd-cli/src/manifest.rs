//! Run manifest: one JSON document per analysis run recording the command,
//! the effective configuration, grid constants, and the output files with
//! their per-mode metadata.  Frequencies are Hz throughout.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{CliError, Result};

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct ConfigEcho {
    pub oversample: usize,
    pub sign_tol: f64,
    pub expansion_order: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_expansions: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trend_cutoff_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub band_hz: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed_hz: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModeRecord {
    pub file: String,
    pub axis: String,
    pub band_hz: [f64; 2],
    pub band_bins: [usize; 2],
    pub freq_sign: String,
    pub energy_fraction: f64,
    pub expansions: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrendRecord {
    pub file: String,
    pub cutoff_hz: f64,
    pub resample_period_s: f64,
    pub half_order: usize,
    pub condition_even: f64,
    pub condition_odd: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub rate_hz: f64,
    pub samples: usize,
    pub half_len: usize,
    /// Frequency resolution ε in Hz: one band bin.
    pub resolution_hz: f64,
    /// Admissible band edge: half the sample rate.
    pub nyquist_hz: f64,
    pub config: ConfigEcho,
    pub modes: Vec<ModeRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trend: Option<TrendRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_energy_fraction: Option<f64>,
}

impl Manifest {
    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::format(path.display().to_string(), e.to_string()))?;
        fs::write(path, text + "\n").map_err(|e| CliError::io(path.display().to_string(), e))
    }

    pub fn read(path: &Path) -> Result<Manifest> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::io(path.display().to_string(), e))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::format(path.display().to_string(), e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    #[test]
    fn json_round_trip() {
        let m = Manifest {
            command: "decompose".into(),
            input: Some("ex6.csv".into()),
            rate_hz: 100.0,
            samples: 201,
            half_len: 100,
            resolution_hz: 0.5,
            nyquist_hz: 50.0,
            config: ConfigEcho {
                oversample: 8,
                sign_tol: 0.0,
                expansion_order: "lower-first".into(),
                ..Default::default()
            },
            modes: vec![ModeRecord {
                file: "mode_01.csv".into(),
                axis: "imaginary".into(),
                band_hz: [26.0, 36.0],
                band_bins: [52, 72],
                freq_sign: "positive".into(),
                energy_fraction: 0.25,
                expansions: 8,
            }],
            trend: None,
            residual: Some("residual.csv".into()),
            residual_energy_fraction: Some(0.01),
        };
        let dir = tempdir().unwrap();
        let p = dir.path().join("manifest.json");
        m.write(&p).unwrap();
        let back = Manifest::read(&p).unwrap();
        assert_eq!(back.modes.len(), 1);
        assert_eq!(back.modes[0].band_bins, [52, 72]);
        assert_eq!(back.command, "decompose");
        assert!(back.trend.is_none());
    }
}
