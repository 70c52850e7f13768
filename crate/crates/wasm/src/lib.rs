//! Browser bindings: the canyon power model versus distance, a link-budget
//! coverage estimate, and one synthetic fully spread angular scan.

use canyon::angular;
use canyon::geometry::{self, CanyonGeometry};
use canyon::linkbudget::{self, LinkBudgetConfig};
use canyon::pathloss::LogLinFit;
use canyon::synth::{self, SynthConfig};
use wasm_bindgen::prelude::*;

fn js(err: canyon::Error) -> JsError {
    JsError::new(&err.to_string())
}

/// Received power (dB, relative) against distance to the canyon edge.
#[wasm_bindgen]
pub struct PowerCurve {
    distances: Vec<f64>,
    exact_db: Vec<f64>,
    approx_db: Vec<f64>,
}

#[wasm_bindgen]
impl PowerCurve {
    #[wasm_bindgen(getter)]
    pub fn distances(&self) -> Vec<f64> {
        self.distances.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn exact_db(&self) -> Vec<f64> {
        self.exact_db.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn approx_db(&self) -> Vec<f64> {
        self.approx_db.clone()
    }
}

fn power_curve_impl(
    tx_height: f64,
    width: f64,
    rx_depth: f64,
    psi: f64,
    d_min: f64,
    d_max: f64,
    points: usize,
) -> canyon::Result<PowerCurve> {
    if !(d_min > 0.0 && d_max > d_min) || points < 2 {
        return Err(canyon::Error::Domain(format!(
            "need 0 < d_min < d_max and at least 2 points, got [{d_min}, {d_max}] with {points}"
        )));
    }
    let ratio = (d_max / d_min).ln() / (points - 1) as f64;
    let mut curve = PowerCurve {
        distances: Vec::with_capacity(points),
        exact_db: Vec::with_capacity(points),
        approx_db: Vec::with_capacity(points),
    };
    for k in 0..points {
        let d = d_min * (ratio * k as f64).exp();
        let g = CanyonGeometry::new(tx_height, width, d, psi, rx_depth)?;
        curve.distances.push(d);
        curve.exact_db.push(10.0 * geometry::received_power_exact(&g).log10());
        curve.approx_db.push(10.0 * geometry::received_power_approx(&g).log10());
    }
    Ok(curve)
}

/// Log-spaced sweep of the exact and far-field canyon power.
#[wasm_bindgen]
pub fn power_curve(
    tx_height: f64,
    width: f64,
    rx_depth: f64,
    psi: f64,
    d_min: f64,
    d_max: f64,
    points: usize,
) -> Result<PowerCurve, JsError> {
    power_curve_impl(tx_height, width, rx_depth, psi, d_min, d_max, points).map_err(js)
}

#[wasm_bindgen]
pub struct Coverage {
    pub noise_floor_dbm: f64,
    pub eirp_dbm: f64,
    pub mapl_db: f64,
    pub range_m: f64,
    pub throughput_bps: f64,
}

#[allow(clippy::too_many_arguments)]
fn coverage_impl(
    tx_power_dbm: f64,
    antenna_gain_dbi: f64,
    margin_db: f64,
    bandwidth_mhz: f64,
    noise_figure_db: f64,
    snr_db: f64,
    slope: f64,
    intercept_db: f64,
) -> canyon::Result<Coverage> {
    let cfg = LinkBudgetConfig {
        tx_power_dbm_per_pol: tx_power_dbm,
        tx_antenna_gain_dbi: antenna_gain_dbi,
        shadow_margin_db: margin_db,
        bandwidth_hz: bandwidth_mhz * 1e6,
        noise_figure_db,
        required_snr_db: snr_db,
        ..LinkBudgetConfig::default()
    };
    let mapl = linkbudget::max_allowable_pathloss_db(&cfg)?;
    Ok(Coverage {
        noise_floor_dbm: linkbudget::noise_floor_dbm(&cfg)?,
        eirp_dbm: cfg.eirp_dbm(),
        mapl_db: mapl,
        range_m: linkbudget::coverage_range_m(&LogLinFit::line(slope, intercept_db), mapl)?,
        throughput_bps: cfg.throughput_bps(),
    })
}

/// Coverage range of a log-distance gain model under a link budget.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn coverage(
    tx_power_dbm: f64,
    antenna_gain_dbi: f64,
    margin_db: f64,
    bandwidth_mhz: f64,
    noise_figure_db: f64,
    snr_db: f64,
    slope: f64,
    intercept_db: f64,
) -> Result<Coverage, JsError> {
    coverage_impl(
        tx_power_dbm,
        antenna_gain_dbi,
        margin_db,
        bandwidth_mhz,
        noise_figure_db,
        snr_db,
        slope,
        intercept_db,
    )
    .map_err(js)
}

#[wasm_bindgen]
pub struct SpreadScan {
    normalized_db: Vec<f64>,
    pub azimuth_gain_db: f64,
}

#[wasm_bindgen]
impl SpreadScan {
    /// Normalized gain per azimuth (dB), starting at 0° in equal steps.
    #[wasm_bindgen(getter)]
    pub fn normalized_db(&self) -> Vec<f64> {
        self.normalized_db.clone()
    }
}

fn spread_scan_impl(seed: u64, grid_size: usize, hpbw_deg: f64) -> canyon::Result<SpreadScan> {
    let cfg = SynthConfig {
        seed,
        grid_size,
        hpbw_deg,
        ..SynthConfig::default()
    };
    let scan = synth::fullspread_scan(&cfg, 0)?;
    Ok(SpreadScan {
        normalized_db: angular::normalized_spectrum(&scan),
        azimuth_gain_db: angular::azimuth_gain(&scan),
    })
}

/// One Rayleigh-faded scan seen through a Gaussian horn.
#[wasm_bindgen]
pub fn spread_scan(seed: u64, grid_size: usize, hpbw_deg: f64) -> Result<SpreadScan, JsError> {
    spread_scan_impl(seed, grid_size, hpbw_deg).map_err(js)
}
