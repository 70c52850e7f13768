//! Statistics of the gain change caused by a vehicle in the canyon.

use crate::error::{Error, Result};
use crate::scan::{AngularScan, PointKey, VehicleState};
use crate::stats::{mean_and_population_std, EmpiricalCdf};
use statrs::distribution::{ContinuousCDF, Normal};
use std::collections::BTreeMap;

/// Gaussian approximation of a set of dB samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianFitResult {
    pub mu: f64,
    /// Population (maximum-likelihood) standard deviation.
    pub sigma: f64,
    pub sample_count: usize,
}

impl GaussianFitResult {
    pub fn cdf(&self, x: f64) -> f64 {
        if self.sigma == 0.0 {
            return if x >= self.mu { 1.0 } else { 0.0 };
        }
        Normal::new(self.mu, self.sigma)
            .map(|n| n.cdf(x))
            .unwrap_or(f64::NAN)
    }

    /// Limit of the CDF from the left; differs from [`Self::cdf`] only for
    /// a degenerate fit.
    fn cdf_below(&self, x: f64) -> f64 {
        if self.sigma == 0.0 {
            return if x > self.mu { 1.0 } else { 0.0 };
        }
        self.cdf(x)
    }
}

/// Per-angle dB difference `a − b` for two scans of the same placement.
pub fn gain_difference(a: &AngularScan, b: &AngularScan) -> Result<Vec<f64>> {
    if a.point_key() != b.point_key() {
        return Err(Error::Pairing(format!(
            "scans {} and {} are at different placements",
            a.point_key(),
            b.point_key()
        )));
    }
    if !a.same_grid(b) {
        return Err(Error::Pairing(format!("scans at {} use different grids", a.point_key())));
    }
    Ok(a.gain_db().iter().zip(b.gain_db()).map(|(x, y)| x - y).collect())
}

/// Δ = R_dB(without vehicle) − R_dB(with vehicle), per azimuth.
pub fn vehicle_delta(base: &AngularScan, with_vehicle: &AngularScan) -> Result<Vec<f64>> {
    if base.vehicle_state != VehicleState::Absent {
        return Err(Error::Pairing(format!(
            "base scan at {} has vehicle state {}",
            base.point_key(),
            base.vehicle_state.token()
        )));
    }
    if with_vehicle.vehicle_state == VehicleState::Absent {
        return Err(Error::Pairing(format!(
            "scan at {} has no vehicle",
            with_vehicle.point_key()
        )));
    }
    gain_difference(base, with_vehicle)
}

/// Pairs every vehicle scan with the vehicle-free scan at the same
/// placement. Vehicle scans without a base are skipped.
pub fn pair_scans<'a>(
    scans: &[&'a AngularScan],
    state: VehicleState,
) -> Vec<(&'a AngularScan, &'a AngularScan)> {
    let bases: BTreeMap<PointKey, &AngularScan> = scans
        .iter()
        .filter(|s| s.vehicle_state == VehicleState::Absent)
        .map(|s| (s.point_key(), *s))
        .collect();
    scans
        .iter()
        .filter(|s| s.vehicle_state == state)
        .filter_map(|s| bases.get(&s.point_key()).map(|b| (*b, *s)))
        .collect()
}

pub fn fit_gaussian(samples: &[f64]) -> Result<GaussianFitResult> {
    if samples.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: samples.len(),
        });
    }
    let (mut mu, mut sigma) = mean_and_population_std(samples);
    if samples.iter().all(|&v| v == samples[0]) {
        (mu, sigma) = (samples[0], 0.0);
    }
    Ok(GaussianFitResult {
        mu,
        sigma,
        sample_count: samples.len(),
    })
}

/// Empirical distribution of pooled deltas against its Gaussian fit.
#[derive(Debug, Clone)]
pub struct DeltaCdfReport {
    pub fit: GaussianFitResult,
    pub empirical: EmpiricalCdf,
    /// Shared evaluation grid (dB) for plotting.
    pub grid: Vec<f64>,
    pub empirical_on_grid: Vec<f64>,
    pub gaussian_on_grid: Vec<f64>,
    /// Supremum of |F_emp − F_fit|, evaluated on both sides of every jump.
    pub max_gap: f64,
}

pub const REPORT_GRID_POINTS: usize = 201;

pub fn delta_cdf_report(deltas: &[f64]) -> Result<DeltaCdfReport> {
    let fit = fit_gaussian(deltas)?;
    let empirical = EmpiricalCdf::new(deltas.to_vec())?;
    let values = empirical.values();
    let n = values.len() as f64;

    let mut max_gap: f64 = 0.0;
    let mut i = 0;
    while i < values.len() {
        // step over ties so both sides of the jump are compared
        let mut j = i;
        while j + 1 < values.len() && values[j + 1] == values[i] {
            j += 1;
        }
        let below = i as f64 / n;
        let above = (j + 1) as f64 / n;
        max_gap = max_gap
            .max((fit.cdf_below(values[i]) - below).abs())
            .max((fit.cdf(values[i]) - above).abs());
        i = j + 1;
    }

    let (lo, hi) = (values[0], values[values.len() - 1]);
    let grid: Vec<f64> = if hi > lo {
        (0..REPORT_GRID_POINTS)
            .map(|k| lo + (hi - lo) * k as f64 / (REPORT_GRID_POINTS - 1) as f64)
            .collect()
    } else {
        vec![lo]
    };
    let empirical_on_grid = grid.iter().map(|&x| empirical.probability_at(x)).collect();
    let gaussian_on_grid = grid.iter().map(|&x| fit.cdf(x)).collect();

    Ok(DeltaCdfReport {
        fit,
        empirical,
        grid,
        empirical_on_grid,
        gaussian_on_grid,
        max_gap: max_gap.min(1.0),
    })
}

/// Per-angle mean and histogram of deltas across placements.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaAngleStats {
    pub angles: Vec<f64>,
    pub mean_db: Vec<f64>,
    pub bin_edges_db: Vec<f64>,
    pub counts: Vec<Vec<u32>>,
}

pub fn delta_angle_stats(
    angles: &[f64],
    deltas: &[Vec<f64>],
    bin_width_db: f64,
) -> Result<DeltaAngleStats> {
    if deltas.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    if !(bin_width_db > 0.0) {
        return Err(Error::Domain(format!("bin width must be positive, got {bin_width_db}")));
    }
    if let Some(bad) = deltas.iter().find(|d| d.len() != angles.len()) {
        return Err(Error::Shape(format!(
            "delta vector of length {} on a {}-point grid",
            bad.len(),
            angles.len()
        )));
    }
    let n = angles.len();
    let (lo, hi) = deltas
        .iter()
        .flatten()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    let first_edge = (lo / bin_width_db).floor() * bin_width_db;
    let bins = (((hi - first_edge) / bin_width_db).ceil() as usize).max(1);
    let mut counts = vec![vec![0u32; bins]; n];
    let mut sums = vec![0.0; n];
    for d in deltas {
        for (a, &v) in d.iter().enumerate() {
            sums[a] += v;
            let bin = ((v - first_edge) / bin_width_db).floor() as usize;
            counts[a][bin.min(bins - 1)] += 1;
        }
    }
    Ok(DeltaAngleStats {
        angles: angles.to_vec(),
        mean_db: sums.iter().map(|s| s / deltas.len() as f64).collect(),
        bin_edges_db: (0..=bins).map(|k| first_edge + k as f64 * bin_width_db).collect(),
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scan::{uniform_grid, Stacking, TxId};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn scan(db: Vec<f64>, state: VehicleState) -> AngularScan {
        AngularScan::new(
            TxId::Tx1 { crane_y: 63 },
            13.1,
            5.5,
            uniform_grid(db.len(), 0.0),
            db,
            state,
            Stacking::Uniform,
        )
        .unwrap()
    }

    fn hand_pair() -> (AngularScan, AngularScan) {
        let base = vec![-60.0, -62.5, -71.0, -58.25, -66.0, -64.0, -69.5, -61.0];
        let veh = vec![-61.0, -60.0, -75.5, -58.25, -70.0, -63.0, -69.0, -67.0];
        (scan(base, VehicleState::Absent), scan(veh, VehicleState::Position1))
    }

    #[test]
    fn delta_examples() {
        let (base, veh) = hand_pair();
        let same = scan(base.gain_db().to_vec(), VehicleState::Position2);
        assert!(vehicle_delta(&base, &same).unwrap().iter().all(|d| *d == 0.0));

        let shifted = scan(base.gain_db().iter().map(|g| g - 3.0).collect(), VehicleState::Position1);
        for d in vehicle_delta(&base, &shifted).unwrap() {
            assert_relative_eq!(d, 3.0, epsilon = 1e-12);
        }

        let d = vehicle_delta(&base, &veh).unwrap();
        assert_eq!(d, vec![1.0, -2.5, 4.5, 0.0, 4.0, -1.0, -0.5, 6.0]);
    }

    #[test]
    fn pairing_errors() {
        let (base, veh) = hand_pair();
        assert!(matches!(vehicle_delta(&veh, &base), Err(Error::Pairing(_))));
        assert!(matches!(vehicle_delta(&base, &base), Err(Error::Pairing(_))));
        let mut moved = veh.clone();
        moved.x = 13.3;
        assert!(matches!(vehicle_delta(&base, &moved), Err(Error::Pairing(_))));
    }

    #[test]
    fn pair_scans_by_exact_key() {
        let (base, veh) = hand_pair();
        let mut stray = veh.clone();
        stray.y = 7.5;
        let all = [&base, &veh, &stray];
        let pairs = pair_scans(&all, VehicleState::Position1);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].1.y, 5.5);
        assert!(pair_scans(&all, VehicleState::Position2).is_empty());
    }

    #[test]
    fn gaussian_examples() {
        let fit = fit_gaussian(&[2.5; 10]).unwrap();
        assert_eq!((fit.mu, fit.sigma, fit.sample_count), (2.5, 0.0, 10));
        let fit = fit_gaussian(&[-1.0, 1.0]).unwrap();
        assert_eq!((fit.mu, fit.sigma), (0.0, 1.0));
        assert!(matches!(fit_gaussian(&[1.0]), Err(Error::InsufficientData { .. })));
    }

    #[test]
    fn two_point_gap_matches_brute_force() {
        let report = delta_cdf_report(&[-1.0, 1.0, -1.0, 1.0]).unwrap();
        // brute force: scan x finely, compare F_emp against Φ from the fit
        let fit = report.fit;
        let mut brute: f64 = 0.0;
        for i in 0..=400_000 {
            let x = -4.0 + 8.0 * i as f64 / 400_000.0;
            for x in [x, x - 1e-12] {
                let emp = report.empirical.probability_at(x);
                brute = brute.max((emp - fit.cdf(x)).abs());
            }
        }
        assert_relative_eq!(report.max_gap, brute, epsilon = 1e-6);
        // Φ(1) − 1/2
        assert_relative_eq!(report.max_gap, 0.3413447460685429, epsilon = 1e-9);
    }

    #[test]
    fn constant_pool_has_zero_gap() {
        let report = delta_cdf_report(&[0.7; 50]).unwrap();
        assert_eq!(report.max_gap, 0.0);
        assert_eq!(report.grid.len(), 1);
    }

    #[test]
    fn angle_stats_shape() {
        let angles = uniform_grid(8, 0.0);
        let deltas = vec![vec![1.0; 8], vec![3.0; 8]];
        let st = delta_angle_stats(&angles, &deltas, 1.0).unwrap();
        assert!(st.mean_db.iter().all(|m| *m == 2.0));
        assert!(st.counts.iter().all(|row| row.iter().sum::<u32>() == 2));
        assert!(delta_angle_stats(&angles, &[vec![1.0; 7]], 1.0).is_err());
    }

    proptest! {
        #[test]
        fn antisymmetric(a in prop::collection::vec(-100.0f64..-30.0, 8), b in prop::collection::vec(-100.0f64..-30.0, 8)) {
            let sa = scan(a, VehicleState::Absent);
            let sb = scan(b, VehicleState::Position1);
            let ab = gain_difference(&sa, &sb).unwrap();
            let ba = gain_difference(&sb, &sa).unwrap();
            for (x, y) in ab.iter().zip(&ba) {
                prop_assert_eq!(*x, -*y);
            }
        }

        #[test]
        fn fit_order_and_shift(mut v in prop::collection::vec(-20.0f64..20.0, 2..200), k in -50.0f64..50.0) {
            let f1 = fit_gaussian(&v).unwrap();
            v.reverse();
            let f2 = fit_gaussian(&v).unwrap();
            prop_assert!((f1.mu - f2.mu).abs() < 1e-9 && (f1.sigma - f2.sigma).abs() < 1e-9);
            let shifted: Vec<f64> = v.iter().map(|x| x + k).collect();
            let f3 = fit_gaussian(&shifted).unwrap();
            prop_assert!((f3.mu - f1.mu - k).abs() < 1e-9);
            prop_assert!((f3.sigma - f1.sigma).abs() < 1e-9);
            let r = delta_cdf_report(&v).unwrap();
            prop_assert!((0.0..=1.0).contains(&r.max_gap));
        }
    }
}
