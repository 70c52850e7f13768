//! Synthetic measurement campaign.
//!
//! Replaces measured data with scans whose angle-averaged power follows the
//! canyon model and whose azimuth structure is fully spread: independent
//! Rayleigh (exponential power) draws per 1° sub-bin, seen through a
//! Gaussian horn pattern. Every scan draws from its own ChaCha stream keyed
//! by the scan identity, so output does not depend on generation order.

use crate::angular;
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::geometry::{self, CanyonGeometry, DEFAULT_PSI};
use crate::scan::{uniform_grid, AngularScan, PointKey, Stacking, TxId, VehicleState};
use crate::stats::EmpiricalCdf;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Normal};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::f64::consts::{LN_2, PI, TAU};

pub const CANYON_LENGTH_M: f64 = 36.0;
pub const CANYON_WIDTH_M: f64 = 8.0;
/// Y of the inner face of the wall on the reference side: one container
/// width (2.44 m) from the reference corner.
pub const WALL_OFFSET_Y_M: f64 = 2.44;
pub const SECTION_LENGTH_M: f64 = 6.0;
pub const DEFAULT_RX_HEIGHT_M: f64 = 1.5;
pub const DEFAULT_HPBW_DEG: f64 = 10.0;
/// Gain offset (dB) added to 10·log10 of the proportional model power.
pub const DEFAULT_CALIBRATION_DB: f64 = -37.0;

/// Fading sub-bins per revolution (1° each).
const FADING_BINS: usize = 360;

/// Stack heights per six-metre section, reference-side row first.
const UNIFORM_HEIGHTS: [[f64; 6]; 2] = [[7.5, 7.5, 7.5, 7.5, 7.5, 5.0], [7.5, 7.5, 7.5, 7.5, 7.5, 5.0]];
const NONUNIFORM_HEIGHTS: [[f64; 6]; 2] = [[10.0, 7.5, 5.0, 5.0, 7.5, 5.0], [5.0, 5.0, 5.0, 7.5, 7.5, 7.5]];

/// Receiver lines (dm from the reference corner in Y).
const LINE_Y_DM: [u32; 4] = [35, 55, 75, 95];

/// Transmitter location (m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TxSite {
    pub id: TxId,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl TxSite {
    pub fn of(id: TxId) -> Self {
        match id {
            TxId::Tx1 { crane_y } => Self {
                id,
                x: 18.8,
                y: f64::from(crane_y),
                z: 23.0,
            },
            TxId::Tx2 => Self {
                id,
                x: 18.85,
                y: 60.5,
                z: 22.0,
            },
        }
    }

    pub fn horizontal(&self) -> (f64, f64) {
        (self.x, self.y)
    }

    /// 3-D distance to a receiver at `rx` and height `rx_height`.
    pub fn distance_to(&self, rx: (f64, f64), rx_height: f64) -> f64 {
        let (dx, dy, dz) = (self.x - rx.0, self.y - rx.1, self.z - rx_height);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// Canyon dimensions, stacking, transmitters and receiver grids.
#[derive(Debug, Clone, PartialEq)]
pub struct CampaignLayout {
    pub stacking: Stacking,
    pub length_m: f64,
    pub width_m: f64,
    pub wall_offset_y_m: f64,
    /// `row_heights[0]` faces the reference corner, `[1]` faces the
    /// transmitters.
    pub row_heights: [[f64; 6]; 2],
    pub coarse_txs: Vec<TxId>,
    pub dense_txs: Vec<TxId>,
    pub coarse_points: Vec<(f64, f64)>,
    /// 0.2 m dense grid, measured with and without the vehicle.
    pub dense_points: Vec<(f64, f64)>,
    /// 0.1 m refinement used for spatial correlation.
    pub fine_points: Vec<(f64, f64)>,
}

fn grid_points(x_dm: impl Iterator<Item = u32> + Clone) -> Vec<(f64, f64)> {
    LINE_Y_DM
        .iter()
        .flat_map(|&y| x_dm.clone().map(move |x| (f64::from(x) / 10.0, f64::from(y) / 10.0)))
        .collect()
}

pub fn build_layout(stacking: Stacking) -> CampaignLayout {
    let (row_heights, coarse_step_dm, coarse_txs, dense_txs) = match stacking {
        Stacking::Uniform => (
            UNIFORM_HEIGHTS,
            40,
            (63..=113)
                .step_by(10)
                .map(|crane_y| TxId::Tx1 { crane_y })
                .chain([TxId::Tx2])
                .collect(),
            vec![TxId::Tx1 { crane_y: 63 }],
        ),
        Stacking::Nonuniform => (
            NONUNIFORM_HEIGHTS,
            20,
            [63, 83, 103]
                .into_iter()
                .map(|crane_y| TxId::Tx1 { crane_y })
                .chain([TxId::Tx2])
                .collect(),
            vec![TxId::Tx2],
        ),
    };
    CampaignLayout {
        stacking,
        length_m: CANYON_LENGTH_M,
        width_m: CANYON_WIDTH_M,
        wall_offset_y_m: WALL_OFFSET_Y_M,
        row_heights,
        coarse_txs,
        dense_txs,
        coarse_points: grid_points((10..=360).step_by(coarse_step_dm)),
        dense_points: grid_points((125..=153).step_by(2)),
        fine_points: grid_points(135..=149),
    }
}

impl CampaignLayout {
    /// Y of the canyon edge facing the transmitters.
    pub fn edge_y(&self) -> f64 {
        self.wall_offset_y_m + self.width_m
    }

    /// Stack height of the transmitter-side row at `x`.
    pub fn stack_height(&self, x: f64) -> f64 {
        let section = (x / SECTION_LENGTH_M).floor().clamp(0.0, 5.0) as usize;
        self.row_heights[1][section]
    }

    /// Dense and fine grids merged, without repeats, ordered by line then X.
    pub fn dense_union(&self) -> Vec<(f64, f64)> {
        let mut seen = BTreeSet::new();
        let mut out: Vec<(f64, f64)> = self
            .dense_points
            .iter()
            .chain(&self.fine_points)
            .filter(|(x, y)| seen.insert((x.to_bits(), y.to_bits())))
            .copied()
            .collect();
        out.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.total_cmp(&b.0)));
        out
    }

    /// Model geometry for a transmitter and receiver placement.
    pub fn geometry_for(&self, tx: TxId, rx: (f64, f64), params: &ModelParams) -> Result<CanyonGeometry> {
        let site = TxSite::of(tx);
        let stack = self.stack_height(rx.0);
        CanyonGeometry::new(
            site.z - stack,
            self.width_m,
            site.y - self.edge_y(),
            params.psi,
            stack - params.rx_height_m,
        )
    }
}

/// Parameters mapping the canyon model to absolute mean gains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelParams {
    pub psi: f64,
    pub rx_height_m: f64,
    pub calibration_db: f64,
    /// Use the exact geometric chain instead of ψhd/D⁴.
    pub exact: bool,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            psi: DEFAULT_PSI,
            rx_height_m: DEFAULT_RX_HEIGHT_M,
            calibration_db: DEFAULT_CALIBRATION_DB,
            exact: false,
        }
    }
}

/// Mean channel gain (dB) predicted by the canyon model.
pub fn mean_gain_at(layout: &CampaignLayout, tx: TxId, rx: (f64, f64), params: &ModelParams) -> Result<f64> {
    let geom = layout.geometry_for(tx, rx, params)?;
    let power = if params.exact {
        geometry::received_power_exact(&geom)
    } else {
        geometry::received_power_approx(&geom)
    };
    Ok(params.calibration_db + 10.0 * power.log10())
}

/// Normalized azimuth power pattern of the receive horn: a Gaussian main
/// lobe with no sidelobes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HornPattern {
    pub hpbw_deg: f64,
}

impl HornPattern {
    pub fn new(hpbw_deg: f64) -> Result<Self> {
        if !(hpbw_deg > 0.0 && hpbw_deg <= 360.0) {
            return Err(Error::Domain(format!("HPBW must lie in (0, 360] deg, got {hpbw_deg}")));
        }
        Ok(Self { hpbw_deg })
    }

    /// Power gain relative to boresight at azimuth offset `offset_rad`.
    pub fn gain(&self, offset_rad: f64) -> f64 {
        let wrapped = (offset_rad + PI).rem_euclid(TAU) - PI;
        let ratio = wrapped / self.hpbw_deg.to_radians();
        (-4.0 * LN_2 * ratio * ratio).exp()
    }

    /// Unit-sum smoothing kernel on an `n`-point circle as
    /// `(offset, weight)` pairs, truncated below 1e-12 of the peak.
    pub fn kernel(&self, n: usize) -> Vec<(isize, f64)> {
        let step = TAU / n as f64;
        let half = n as isize / 2;
        let mut taps: Vec<(isize, f64)> = (-half..n as isize - half)
            .map(|j| (j, self.gain(j as f64 * step)))
            .filter(|&(_, w)| w >= 1e-12)
            .collect();
        let total: f64 = taps.iter().map(|t| t.1).sum();
        taps.iter_mut().for_each(|t| t.1 /= total);
        taps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FadingModel {
    /// Independent exponential power per 1° sub-bin.
    Rayleigh,
    /// Constant spectrum at the mean gain.
    None,
}

/// Gaussian dB perturbation standing in for the vehicle: Δ ~ N(mu, sigma).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VehicleEffect {
    pub mu: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    pub seed: u64,
    /// Azimuth samples per scan; must divide or be a multiple of 360.
    pub grid_size: usize,
    pub fading: FadingModel,
    /// Scans drawn by [`fullspread_gain_distribution`].
    pub realizations: usize,
    pub hpbw_deg: f64,
    pub model: ModelParams,
    pub vehicle_position1: VehicleEffect,
    pub vehicle_position2: VehicleEffect,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            grid_size: 360,
            fading: FadingModel::Rayleigh,
            realizations: 10_000,
            hpbw_deg: DEFAULT_HPBW_DEG,
            model: ModelParams::default(),
            vehicle_position1: VehicleEffect { mu: 1.13, sigma: 6.91 },
            vehicle_position2: VehicleEffect { mu: 1.37, sigma: 6.77 },
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let n = self.grid_size;
        if n < crate::scan::MIN_SAMPLES || !(FADING_BINS % n == 0 || n % FADING_BINS == 0) {
            return Err(Error::Config(format!(
                "grid_size {n} must be at least {} and divide or be a multiple of {FADING_BINS}",
                crate::scan::MIN_SAMPLES
            )));
        }
        HornPattern::new(self.hpbw_deg)?;
        for v in [self.vehicle_position1, self.vehicle_position2] {
            if !(v.sigma >= 0.0 && v.mu.is_finite()) {
                return Err(Error::Config(format!("invalid vehicle effect {v:?}")));
            }
        }
        Ok(())
    }

    fn vehicle_effect(&self, state: VehicleState) -> Option<VehicleEffect> {
        match state {
            VehicleState::Absent => None,
            VehicleState::Position1 => Some(self.vehicle_position1),
            VehicleState::Position2 => Some(self.vehicle_position2),
        }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream identifier for a scan, stable across runs and platforms.
fn stream_id(key: &PointKey, purpose: u64) -> u64 {
    let tx = match key.tx {
        TxId::Tx1 { crane_y } => u64::from(crane_y),
        TxId::Tx2 => 1 << 20,
    };
    [tx, key.stacking as u64, key.x().to_bits(), key.y().to_bits(), purpose]
        .into_iter()
        .fold(0u64, |acc, v| splitmix(acc ^ v))
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Unit-mean linear azimuth spectrum at `n` samples: exponential draws per
/// 1° sub-bin, circularly smoothed by the horn pattern.
pub fn fading_spectrum(rng: &mut ChaCha8Rng, n: usize, horn: &HornPattern, fading: FadingModel) -> Vec<f64> {
    if fading == FadingModel::None {
        return vec![1.0; n];
    }
    let draws: Vec<f64> = (0..FADING_BINS).map(|_| Exp1.sample(rng)).collect();
    let resolution = n.max(FADING_BINS);
    let hold = resolution / FADING_BINS;
    let fine: Vec<f64> = (0..resolution).map(|i| draws[i / hold]).collect();
    smooth_at(&fine, &horn.kernel(resolution), resolution / n)
}

/// Circular convolution of `power` with `kernel`, evaluated every `stride`
/// samples.
pub fn smooth_at(power: &[f64], kernel: &[(isize, f64)], stride: usize) -> Vec<f64> {
    let r = power.len() as isize;
    (0..power.len())
        .step_by(stride)
        .map(|i| {
            kernel
                .iter()
                .map(|&(j, w)| w * power[(i as isize + j).rem_euclid(r) as usize])
                .sum()
        })
        .collect()
}

/// One synthetic scan without vehicle.
pub fn generate_scan(layout: &CampaignLayout, tx: TxId, rx: (f64, f64), cfg: &SynthConfig) -> Result<AngularScan> {
    cfg.validate()?;
    let horn = HornPattern::new(cfg.hpbw_deg)?;
    base_scan(layout, tx, rx, cfg, &horn)
}

fn base_scan(
    layout: &CampaignLayout,
    tx: TxId,
    rx: (f64, f64),
    cfg: &SynthConfig,
    horn: &HornPattern,
) -> Result<AngularScan> {
    let mean_db = mean_gain_at(layout, tx, rx, &cfg.model)?;
    let key = PointKey::new(tx, layout.stacking, rx.0, rx.1);
    let mut rng = stream_rng(cfg.seed, stream_id(&key, 0));
    let spectrum = fading_spectrum(&mut rng, cfg.grid_size, horn, cfg.fading);
    let gain_db = spectrum.iter().map(|p| mean_db + 10.0 * p.log10()).collect();
    AngularScan::new(
        tx,
        rx.0,
        rx.1,
        uniform_grid(cfg.grid_size, 0.0),
        gain_db,
        VehicleState::Absent,
        layout.stacking,
    )
}

/// The same placement with a vehicle: per-azimuth gain lowered by an
/// independent Gaussian draw Δ ~ N(μ, σ).
pub fn vehicle_scan(base: &AngularScan, state: VehicleState, cfg: &SynthConfig) -> Result<AngularScan> {
    let effect = cfg
        .vehicle_effect(state)
        .ok_or_else(|| Error::Domain("vehicle scan requested without a vehicle".into()))?;
    let mut rng = stream_rng(cfg.seed, stream_id(&base.point_key(), 1 + state as u64));
    let normal = Normal::new(effect.mu, effect.sigma)
        .map_err(|e| Error::Config(format!("vehicle effect: {e}")))?;
    let gain_db = base
        .gain_db()
        .iter()
        .map(|g| g - normal.sample(&mut rng))
        .collect();
    AngularScan::new(
        base.tx,
        base.x,
        base.y,
        base.angles().to_vec(),
        gain_db,
        state,
        base.stacking,
    )
}

/// Realization `index` of a fully spread scan with unit mean gain.
pub fn fullspread_scan(cfg: &SynthConfig, index: u64) -> Result<AngularScan> {
    cfg.validate()?;
    let horn = HornPattern::new(cfg.hpbw_deg)?;
    fullspread_with(cfg, &horn, index)
}

fn fullspread_with(cfg: &SynthConfig, horn: &HornPattern, index: u64) -> Result<AngularScan> {
    let mut rng = stream_rng(cfg.seed, splitmix(index ^ 0xF011_5EAD));
    let spectrum = fading_spectrum(&mut rng, cfg.grid_size, horn, cfg.fading);
    AngularScan::from_linear(
        TxId::Tx2,
        0.0,
        0.0,
        uniform_grid(cfg.grid_size, 0.0),
        &spectrum,
        VehicleState::Absent,
        Stacking::Uniform,
    )
}

/// Monte Carlo distribution of the azimuth gain of fully spread scans.
pub fn fullspread_gain_distribution(cfg: &SynthConfig) -> Result<EmpiricalCdf> {
    cfg.validate()?;
    let horn = HornPattern::new(cfg.hpbw_deg)?;
    let one = |i: usize| -> Result<f64> { Ok(angular::azimuth_gain(&fullspread_with(cfg, &horn, i as u64)?)) };
    #[cfg(feature = "parallel")]
    let gains: Result<Vec<f64>> = {
        use rayon::prelude::*;
        (0..cfg.realizations).into_par_iter().map(one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let gains: Result<Vec<f64>> = (0..cfg.realizations).map(one).collect();
    EmpiricalCdf::new(gains?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VehicleMode {
    /// Vehicle-free scans only.
    Absent,
    /// Also generate both vehicle positions on the 0.2 m dense grid.
    Included,
}

/// Full dataset for a layout: coarse grid for every coarse transmitter,
/// dense grids for the dense transmitters, optionally with vehicle scans.
pub fn generate_campaign(layout: &CampaignLayout, cfg: &SynthConfig, vehicle_mode: VehicleMode) -> Result<Dataset> {
    cfg.validate()?;
    let horn = HornPattern::new(cfg.hpbw_deg)?;

    let mut placements: Vec<(TxId, (f64, f64))> = Vec::new();
    for &tx in &layout.coarse_txs {
        placements.extend(layout.coarse_points.iter().map(|&p| (tx, p)));
    }
    let dense = layout.dense_union();
    for &tx in &layout.dense_txs {
        placements.extend(dense.iter().map(|&p| (tx, p)));
    }
    let mut seen = BTreeSet::new();
    placements.retain(|(tx, p)| seen.insert((*tx, p.0.to_bits(), p.1.to_bits())));

    let make = |&(tx, p): &(TxId, (f64, f64))| base_scan(layout, tx, p, cfg, &horn);
    #[cfg(feature = "parallel")]
    let bases: Result<Vec<AngularScan>> = {
        use rayon::prelude::*;
        placements.par_iter().map(make).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let bases: Result<Vec<AngularScan>> = placements.iter().map(make).collect();
    let mut scans = bases?;

    if vehicle_mode == VehicleMode::Included {
        let on_dense: BTreeSet<(u64, u64)> = layout
            .dense_points
            .iter()
            .map(|p| (p.0.to_bits(), p.1.to_bits()))
            .collect();
        let mut extra = Vec::new();
        for state in [VehicleState::Position1, VehicleState::Position2] {
            for base in scans.iter().filter(|s| {
                layout.dense_txs.contains(&s.tx) && on_dense.contains(&(s.x.to_bits(), s.y.to_bits()))
            }) {
                extra.push(vehicle_scan(base, state, cfg)?);
            }
        }
        scans.extend(extra);
    }
    Ok(Dataset { scans })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn layout_counts() {
        let u = build_layout(Stacking::Uniform);
        assert_eq!(u.coarse_points.len(), 36);
        assert_eq!(u.coarse_points.iter().filter(|p| p.1 == 3.5).count(), 9);
        let n = build_layout(Stacking::Nonuniform);
        assert_eq!(n.coarse_points.len(), 72);
        assert_eq!(n.coarse_points.iter().filter(|p| p.1 == 9.5).count(), 18);
        let fine: Vec<f64> = u.fine_points.iter().filter(|p| p.1 == 3.5).map(|p| p.0).collect();
        assert_eq!(fine.len(), 15);
        assert_eq!((fine[0], fine[1], fine[14]), (13.5, 13.6, 14.9));
        assert_eq!(u.dense_points.len(), 60);
        // 15 + 15 − 8 shared positions per line
        assert_eq!(u.dense_union().len(), 88);
        assert_eq!(u.coarse_txs.len(), 7);
        assert_eq!(n.coarse_txs.len(), 4);
    }

    #[test]
    fn stack_heights_follow_sections() {
        let u = build_layout(Stacking::Uniform);
        assert_eq!(u.stack_height(1.0), 7.5);
        assert_eq!(u.stack_height(29.9), 7.5);
        assert_eq!(u.stack_height(33.0), 5.0);
        let n = build_layout(Stacking::Nonuniform);
        assert_eq!(n.stack_height(19.0), 7.5);
        assert_eq!(n.stack_height(5.0), 5.0);
        assert_eq!(n.stack_height(36.0), 7.5);
    }

    #[test]
    fn mean_gain_examples() {
        let layout = build_layout(Stacking::Uniform);
        let params = ModelParams::default();
        let near = mean_gain_at(&layout, TxId::Tx1 { crane_y: 63 }, (1.0, 3.5), &params).unwrap();
        let d0 = 63.0 - layout.edge_y();
        let crane_far = (layout.edge_y() + 2.0 * d0).round() as u16;
        let far_site_d = f64::from(crane_far) - layout.edge_y();
        let far = mean_gain_at(&layout, TxId::Tx1 { crane_y: crane_far }, (1.0, 3.5), &params).unwrap();
        assert_relative_eq!(near - far, 40.0 * (far_site_d / d0).log10(), epsilon = 1e-9);
        // ≈ 12.04 dB per doubling
        assert!((near - far - 12.04).abs() < 0.2);

        // transmitter above or inside the canyon is outside the model
        assert!(mean_gain_at(&layout, TxId::Tx1 { crane_y: 10 }, (1.0, 3.5), &params).is_err());
    }

    #[test]
    fn mean_gain_matches_geometry_module() {
        let layout = build_layout(Stacking::Uniform);
        // crane at edge + 100 m, stack 7.5 m: h = 15.5, D = 100
        let params = ModelParams {
            calibration_db: 0.0,
            ..ModelParams::default()
        };
        let tx = TxId::Tx1 { crane_y: 110 };
        let g = layout.geometry_for(tx, (13.0, 5.5), &params).unwrap();
        assert_relative_eq!(g.tx_height, 15.5);
        assert_relative_eq!(g.rx_depth, 6.0);
        let got = mean_gain_at(&layout, tx, (13.0, 5.5), &params).unwrap();
        assert_relative_eq!(got, 10.0 * geometry::received_power_approx(&g).log10(), epsilon = 1e-12);

        let hand = CanyonGeometry::new(17.4, 8.0, 100.0, 0.1, 5.0).unwrap();
        assert_relative_eq!(10.0 * geometry::received_power_approx(&hand).log10(), 10.0 * 1.392e-7f64.log10(), epsilon = 1e-9);
    }

    #[test]
    fn horn_pattern_shape() {
        let horn = HornPattern::new(10.0).unwrap();
        assert_eq!(horn.gain(0.0), 1.0);
        assert_relative_eq!(horn.gain(5f64.to_radians()), 0.5, epsilon = 1e-12);
        assert_relative_eq!(horn.gain(-5f64.to_radians()), 0.5, epsilon = 1e-12);
        assert_relative_eq!(horn.gain(TAU + 5f64.to_radians()), 0.5, epsilon = 1e-12);
        let k = horn.kernel(360);
        assert_relative_eq!(k.iter().map(|t| t.1).sum::<f64>(), 1.0, epsilon = 1e-15);
        assert!(HornPattern::new(0.0).is_err());
    }

    #[test]
    fn smoothing_conserves_power() {
        let horn = HornPattern::new(10.0).unwrap();
        let mut rng = stream_rng(9, 9);
        let power: Vec<f64> = (0..360).map(|_| Exp1.sample(&mut rng)).collect();
        let out = smooth_at(&power, &horn.kernel(360), 1);
        let (a, b) = (power.iter().sum::<f64>(), out.iter().sum::<f64>());
        assert!(((a - b) / a).abs() < 1e-9);
    }

    #[test]
    fn fading_disabled_gives_constant_scan() {
        let layout = build_layout(Stacking::Uniform);
        let cfg = SynthConfig {
            fading: FadingModel::None,
            ..SynthConfig::default()
        };
        let tx = TxId::Tx1 { crane_y: 73 };
        let scan = generate_scan(&layout, tx, (5.0, 5.5), &cfg).unwrap();
        let mean = mean_gain_at(&layout, tx, (5.0, 5.5), &cfg.model).unwrap();
        assert!(scan.gain_db().iter().all(|g| (g - mean).abs() < 1e-12));
    }

    #[test]
    fn same_seed_same_scan() {
        let layout = build_layout(Stacking::Nonuniform);
        let cfg = SynthConfig::default();
        let a = generate_scan(&layout, TxId::Tx2, (3.0, 7.5), &cfg).unwrap();
        let b = generate_scan(&layout, TxId::Tx2, (3.0, 7.5), &cfg).unwrap();
        assert_eq!(a, b);
        let c = generate_scan(&layout, TxId::Tx2, (5.0, 7.5), &cfg).unwrap();
        assert_ne!(normalize(&a), normalize(&c));
        let other = SynthConfig { seed: 2, ..cfg };
        assert_ne!(a, generate_scan(&layout, TxId::Tx2, (3.0, 7.5), &other).unwrap());
    }

    fn normalize(s: &AngularScan) -> Vec<f64> {
        angular::normalized_spectrum(s)
    }

    #[test]
    fn coarse_grids_decimate() {
        let layout = build_layout(Stacking::Uniform);
        for n in [8, 36, 720] {
            let cfg = SynthConfig {
                grid_size: n,
                ..SynthConfig::default()
            };
            assert_eq!(generate_scan(&layout, TxId::Tx2, (1.0, 3.5), &cfg).unwrap().len(), n);
        }
        let bad = SynthConfig {
            grid_size: 100,
            ..SynthConfig::default()
        };
        assert!(matches!(generate_scan(&layout, TxId::Tx2, (1.0, 3.5), &bad), Err(Error::Config(_))));
    }

    #[test]
    fn campaign_row_count() {
        let layout = build_layout(Stacking::Uniform);
        let cfg = SynthConfig {
            grid_size: 36,
            ..SynthConfig::default()
        };
        let ds = generate_campaign(&layout, &cfg, VehicleMode::Included).unwrap();
        let coarse = 36 * 7;
        let dense = 88;
        let vehicle = 2 * 60;
        assert_eq!(ds.scans.len(), coarse + dense + vehicle);
        assert_eq!(ds.row_count(), (coarse + dense + vehicle) * 36);
        let absent = generate_campaign(&layout, &cfg, VehicleMode::Absent).unwrap();
        assert_eq!(absent.scans.len(), coarse + dense);
        assert_eq!(&ds.scans[..coarse + dense], &absent.scans[..]);
    }

    #[test]
    fn vehicle_scan_requires_vehicle() {
        let layout = build_layout(Stacking::Uniform);
        let cfg = SynthConfig::default();
        let base = generate_scan(&layout, TxId::Tx2, (1.0, 3.5), &cfg).unwrap();
        assert!(vehicle_scan(&base, VehicleState::Absent, &cfg).is_err());
        let v = vehicle_scan(&base, VehicleState::Position2, &cfg).unwrap();
        assert_eq!(v.vehicle_state, VehicleState::Position2);
        assert_eq!(v.point_key(), base.point_key());
    }
}
