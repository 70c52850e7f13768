//! Angular-spectrum statistics.
//!
//! Integrals over azimuth are taken as arithmetic means over the uniform
//! grid (rectangle rule on a periodic domain). Averages of gains are formed
//! in the linear domain and reported in dB.

use crate::error::{Error, Result};
use crate::scan::{AngularScan, TxId};
use crate::stats::{self, EmpiricalCdf};
use std::collections::BTreeMap;
use std::f64::consts::TAU;

pub use crate::scan::{uniform_grid, Stacking, VehicleState};

/// Default histogram bin width (dB).
pub const DEFAULT_BIN_WIDTH_DB: f64 = 1.0;

pub fn to_db(gain: f64) -> Result<f64> {
    if gain > 0.0 && gain.is_finite() {
        Ok(10.0 * gain.log10())
    } else {
        Err(Error::Domain(format!("gain must be positive, got {gain}")))
    }
}

fn linear_mean(scan: &AngularScan) -> f64 {
    scan.linear_gains().sum::<f64>() / scan.len() as f64
}

/// Angle-averaged channel gain in dB.
pub fn circular_mean_gain(scan: &AngularScan) -> f64 {
    10.0 * linear_mean(scan).log10()
}

/// Per-angle gain relative to the angle-averaged gain (dB).
pub fn normalized_spectrum(scan: &AngularScan) -> Vec<f64> {
    let reference = circular_mean_gain(scan);
    scan.gain_db().iter().map(|g| g - reference).collect()
}

/// Maximum of the normalized spectrum: the gain of pointing at the best
/// azimuth rather than using the angle average.
pub fn azimuth_gain(scan: &AngularScan) -> f64 {
    normalized_spectrum(scan)
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Direction of the transmitter seen from the receiver,
/// atan2(y − y_tx, x_tx − x), wrapped to [0, 2π).
pub fn tx_bearing(tx_pos: (f64, f64), rx_pos: (f64, f64)) -> Result<f64> {
    let (x_tx, y_tx) = tx_pos;
    let (x, y) = rx_pos;
    if x_tx == x && y_tx == y {
        return Err(Error::Domain("transmitter and receiver coincide".into()));
    }
    Ok((y - y_tx).atan2(x_tx - x).rem_euclid(TAU))
}

/// Per-angle ensemble statistics over a set of scans sharing one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularSpectrumStats {
    pub angles: Vec<f64>,
    /// Linear-domain mean per angle, in dB.
    pub mean_db: Vec<f64>,
    /// Histogram bin edges (dB), `counts[a].len() + 1` entries.
    pub bin_edges_db: Vec<f64>,
    /// `counts[angle][bin]`.
    pub counts: Vec<Vec<u32>>,
    pub scan_count: usize,
}

impl AngularSpectrumStats {
    pub fn bin_count(&self) -> usize {
        self.bin_edges_db.len() - 1
    }
}

pub fn ensemble_stats(scans: &[&AngularScan], bin_width_db: f64) -> Result<AngularSpectrumStats> {
    let first = *scans
        .first()
        .ok_or(Error::InsufficientData { needed: 1, got: 0 })?;
    if !(bin_width_db > 0.0 && bin_width_db.is_finite()) {
        return Err(Error::Domain(format!("bin width must be positive, got {bin_width_db}")));
    }
    if let Some(bad) = scans.iter().find(|s| !s.same_grid(first)) {
        return Err(Error::Shape(format!(
            "scan {} does not share the grid of {}",
            bad.point_key(),
            first.point_key()
        )));
    }
    let n = first.len();

    let mut sums = vec![0.0; n];
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for scan in scans {
        for (acc, lin) in sums.iter_mut().zip(scan.linear_gains()) {
            *acc += lin;
        }
        for &g in scan.gain_db() {
            lo = lo.min(g);
            hi = hi.max(g);
        }
    }
    let mean_db = sums
        .iter()
        .map(|s| 10.0 * (s / scans.len() as f64).log10())
        .collect();

    let first_edge = (lo / bin_width_db).floor() * bin_width_db;
    let bins = (((hi - first_edge) / bin_width_db).ceil() as usize).max(1);
    let bin_edges_db: Vec<f64> = (0..=bins)
        .map(|k| first_edge + k as f64 * bin_width_db)
        .collect();
    let mut counts = vec![vec![0u32; bins]; n];
    for scan in scans {
        for (row, &g) in counts.iter_mut().zip(scan.gain_db()) {
            let bin = ((g - first_edge) / bin_width_db).floor() as usize;
            row[bin.min(bins - 1)] += 1;
        }
    }

    Ok(AngularSpectrumStats {
        angles: first.angles().to_vec(),
        mean_db,
        bin_edges_db,
        counts,
        scan_count: scans.len(),
    })
}

/// Normalized-gain distributions over all azimuths and towards the
/// transmitter.
#[derive(Debug, Clone, PartialEq)]
pub struct GainCdfs {
    /// Normalized gain pooled over every azimuth of every scan.
    pub all_directions: EmpiricalCdf,
    /// Normalized gain at the grid azimuth nearest the transmitter bearing,
    /// one sample per scan.
    pub tx_direction: EmpiricalCdf,
}

impl GainCdfs {
    /// Largest horizontal (dB) distance between the two curves.
    pub fn max_horizontal_gap(&self) -> f64 {
        stats::max_horizontal_gap(&self.all_directions, &self.tx_direction)
    }
}

pub fn gain_cdfs(
    scans: &[&AngularScan],
    tx_positions: &BTreeMap<TxId, (f64, f64)>,
) -> Result<GainCdfs> {
    if scans.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    let mut pooled = Vec::with_capacity(scans.iter().map(|s| s.len()).sum());
    let mut toward_tx = Vec::with_capacity(scans.len());
    for scan in scans {
        let tx_pos = tx_positions
            .get(&scan.tx)
            .ok_or_else(|| Error::Lookup(format!("no position for transmitter {}", scan.tx)))?;
        let spectrum = normalized_spectrum(scan);
        let bearing = tx_bearing(*tx_pos, (scan.x, scan.y))?;
        toward_tx.push(spectrum[scan.nearest_index(bearing)]);
        pooled.extend(spectrum);
    }
    Ok(GainCdfs {
        all_directions: EmpiricalCdf::new(pooled)?,
        tx_direction: EmpiricalCdf::new(toward_tx)?,
    })
}
