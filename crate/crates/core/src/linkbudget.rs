//! Coverage estimate from a link budget and a fitted gain model.
//!
//! Channel gain and path loss have opposite signs: a channel gain of
//! −110.8 dB is a path loss of 110.8 dB. The conversion happens only in
//! [`coverage_range_m`].

use crate::error::{Error, Result};
use crate::pathloss::LogLinFit;
use serde::{Deserialize, Serialize};

pub const BOLTZMANN: f64 = 1.380649e-23;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LinkBudgetConfig {
    pub tx_power_dbm_per_pol: f64,
    pub tx_antenna_gain_dbi: f64,
    pub shadow_margin_db: f64,
    pub bandwidth_hz: f64,
    pub temperature_k: f64,
    pub noise_figure_db: f64,
    pub required_snr_db: f64,
    /// Spectral efficiency per polarization at the required SNR (bit/s/Hz).
    /// Informational only.
    pub spectral_efficiency: f64,
    pub polarizations: u32,
}

impl Default for LinkBudgetConfig {
    fn default() -> Self {
        Self {
            tx_power_dbm_per_pol: 28.0,
            tx_antenna_gain_dbi: 23.0,
            shadow_margin_db: 10.0,
            bandwidth_hz: 400e6,
            temperature_k: 300.0,
            noise_figure_db: 10.0,
            required_snr_db: 8.0,
            spectral_efficiency: 2.0,
            polarizations: 2,
        }
    }
}

impl LinkBudgetConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.bandwidth_hz > 0.0 && self.bandwidth_hz.is_finite()) {
            return Err(Error::Domain(format!("bandwidth must be positive, got {}", self.bandwidth_hz)));
        }
        if !(self.temperature_k > 0.0 && self.temperature_k.is_finite()) {
            return Err(Error::Domain(format!(
                "temperature must be positive, got {}",
                self.temperature_k
            )));
        }
        Ok(())
    }

    pub fn eirp_dbm(&self) -> f64 {
        self.tx_power_dbm_per_pol + self.tx_antenna_gain_dbi
    }

    /// Peak throughput implied by the spectral efficiency over all
    /// polarizations (bit/s). Not part of the path-loss arithmetic.
    pub fn throughput_bps(&self) -> f64 {
        self.spectral_efficiency * self.polarizations as f64 * self.bandwidth_hz
    }
}

/// kTB referred to 1 mW, plus the receiver noise figure.
pub fn noise_floor_dbm(cfg: &LinkBudgetConfig) -> Result<f64> {
    cfg.validate()?;
    let ktb_mw = BOLTZMANN * cfg.temperature_k * cfg.bandwidth_hz / 1e-3;
    Ok(10.0 * ktb_mw.log10() + cfg.noise_figure_db)
}

/// EIRP − noise floor − required SNR − shadow margin.
pub fn max_allowable_pathloss_db(cfg: &LinkBudgetConfig) -> Result<f64> {
    Ok(cfg.eirp_dbm() - noise_floor_dbm(cfg)? - cfg.required_snr_db - cfg.shadow_margin_db)
}

/// Distance at which the fitted channel gain drops to −`mapl_db`.
pub fn coverage_range_m(fit: &LogLinFit, mapl_db: f64) -> Result<f64> {
    if !(fit.n < 0.0) {
        return Err(Error::NoSolution(format!(
            "gain model slope {} does not decrease with distance",
            fit.n
        )));
    }
    Ok(10f64.powf((-mapl_db - fit.r0) / (10.0 * fit.n)))
}
