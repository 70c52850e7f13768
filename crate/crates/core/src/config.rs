//! TOML configuration covering every tunable default.
//!
//! ```toml
//! [synth]
//! seed = 1
//! grid_size = 360
//! fading = "rayleigh"
//! realizations = 10000
//! hpbw_deg = 10.0
//! vehicle_position1 = { mu = 1.13, sigma = 6.91 }
//! vehicle_position2 = { mu = 1.37, sigma = 6.77 }
//!
//! [synth.model]
//! psi = 0.1
//! rx_height_m = 1.5
//! calibration_db = -37.0
//! exact = false
//!
//! [angular]
//! bin_width_db = 1.0
//!
//! [vehicle]
//! bin_width_db = 1.0
//!
//! [fit]
//! pinned_slope = -4.0
//! distance = "euclidean"
//!
//! [link_budget]
//! tx_power_dbm_per_pol = 28.0
//! # ...
//!
//! [coverage_model]
//! n = -4.09
//! r0 = -23.4
//! ```
//!
//! Every key is optional; missing keys take the defaults above. Unknown
//! keys are rejected.

use crate::angular::DEFAULT_BIN_WIDTH_DB;
use crate::dataset::DistanceMetric;
use crate::error::{Error, Result};
use crate::linkbudget::LinkBudgetConfig;
use crate::pathloss::LogLinFit;
use crate::synth::SynthConfig;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HistogramOptions {
    pub bin_width_db: f64,
}

impl Default for HistogramOptions {
    fn default() -> Self {
        Self {
            bin_width_db: DEFAULT_BIN_WIDTH_DB,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FitOptions {
    /// Slope used by the pinned fit (signed).
    pub pinned_slope: f64,
    pub distance: DistanceMetric,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            pinned_slope: -4.0,
            distance: DistanceMetric::Euclidean,
        }
    }
}

/// Gain model used for the coverage estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CoverageModel {
    pub n: f64,
    pub r0: f64,
}

impl Default for CoverageModel {
    fn default() -> Self {
        Self { n: -4.09, r0: -23.4 }
    }
}

impl CoverageModel {
    pub fn fit(&self) -> LogLinFit {
        LogLinFit::line(self.n, self.r0)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub synth: SynthConfig,
    pub angular: HistogramOptions,
    pub vehicle: HistogramOptions,
    pub fit: FitOptions,
    pub link_budget: LinkBudgetConfig,
    pub coverage_model: CoverageModel,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration always serializes")
    }

    pub fn validate(&self) -> Result<()> {
        self.synth.validate()?;
        for (name, h) in [("angular", self.angular), ("vehicle", self.vehicle)] {
            if !(h.bin_width_db > 0.0 && h.bin_width_db.is_finite()) {
                return Err(Error::Config(format!(
                    "{name}.bin_width_db must be positive, got {}",
                    h.bin_width_db
                )));
            }
        }
        self.link_budget
            .validate()
            .map_err(|e| Error::Config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::FadingModel;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(Config::from_toml("").unwrap(), Config::default());
    }

    #[test]
    fn defaults_round_trip() {
        let cfg = Config::default();
        assert_eq!(Config::from_toml(&cfg.to_toml()).unwrap(), cfg);
    }

    #[test]
    fn partial_override() {
        let cfg = Config::from_toml(
            "[synth]\nseed = 7\nfading = \"none\"\n[synth.model]\npsi = 0.2\n[fit]\ndistance = \"edge\"\n",
        )
        .unwrap();
        assert_eq!(cfg.synth.seed, 7);
        assert_eq!(cfg.synth.fading, FadingModel::None);
        assert_eq!(cfg.synth.model.psi, 0.2);
        assert_eq!(cfg.synth.model.rx_height_m, 1.5);
        assert_eq!(cfg.fit.distance, DistanceMetric::Edge);
        assert_eq!(cfg.link_budget, LinkBudgetConfig::default());
    }

    #[test]
    fn rejects_unknown_and_invalid() {
        assert!(matches!(Config::from_toml("[synth]\nsed = 3\n"), Err(Error::Config(_))));
        assert!(matches!(Config::from_toml("[synth]\ngrid_size = 7\n"), Err(Error::Config(_))));
        assert!(matches!(Config::from_toml("[angular]\nbin_width_db = 0\n"), Err(Error::Config(_))));
        assert!(matches!(Config::from_toml("[link_budget]\nbandwidth_hz = -1\n"), Err(Error::Config(_))));
    }
}
