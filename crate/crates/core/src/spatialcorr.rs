//! Spatial autocorrelation of fixed-beam gain along a dense X line.
//!
//! For a fixed azimuth the dB gains along the line are made zero-mean and
//! the lagged products r_k = Σ_j R₀(x_j)·R₀(x_{j+k}) are normalized by r₀,
//! so every lag lies in [−1, 1] and lag 0 is 1.

use crate::error::{Error, Result};
use crate::scan::{AngularScan, Stacking, TxId};

const SPACING_TOLERANCE_M: f64 = 1e-6;

/// Scans at uniformly spaced X positions sharing transmitter, Y and grid.
#[derive(Debug, Clone)]
pub struct DenseLine<'a> {
    pub tx: TxId,
    pub stacking: Stacking,
    pub y: f64,
    scans: Vec<&'a AngularScan>,
}

impl<'a> DenseLine<'a> {
    pub fn new(mut scans: Vec<&'a AngularScan>) -> Result<Self> {
        if scans.len() < 2 {
            return Err(Error::InsufficientData {
                needed: 2,
                got: scans.len(),
            });
        }
        scans.sort_by(|a, b| a.x.total_cmp(&b.x));
        let first = scans[0];
        for s in &scans[1..] {
            if s.tx != first.tx || s.y != first.y || s.stacking != first.stacking {
                return Err(Error::Shape(format!(
                    "scan {} does not belong to the line of {}",
                    s.point_key(),
                    first.point_key()
                )));
            }
            if !s.same_grid(first) {
                return Err(Error::Shape(format!("scan {} has a different grid", s.point_key())));
            }
        }
        let spacing = scans[1].x - scans[0].x;
        if spacing <= 0.0 {
            return Err(Error::Shape(format!("repeated position x={}", scans[0].x)));
        }
        for (k, s) in scans.iter().enumerate() {
            let expected = first.x + spacing * k as f64;
            if (s.x - expected).abs() > SPACING_TOLERANCE_M {
                return Err(Error::Shape(format!(
                    "position {} breaks the {spacing} m spacing of the line",
                    s.x
                )));
            }
        }
        Ok(Self {
            tx: first.tx,
            stacking: first.stacking,
            y: first.y,
            scans,
        })
    }

    pub fn len(&self) -> usize {
        self.scans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scans.is_empty()
    }

    pub fn positions(&self) -> Vec<f64> {
        self.scans.iter().map(|s| s.x).collect()
    }

    /// Mean step between positions, rounded to the nanometre.
    pub fn spacing(&self) -> f64 {
        let n = self.scans.len();
        let step = (self.scans[n - 1].x - self.scans[0].x) / (n - 1) as f64;
        (step * 1e9).round() / 1e9
    }

    pub fn angles(&self) -> &[f64] {
        self.scans[0].angles()
    }

    fn angle_index(&self, phi: f64) -> Result<usize> {
        self.scans[0]
            .index_of(phi)
            .ok_or_else(|| Error::Lookup(format!("azimuth {phi} rad is not on the scan grid")))
    }

    fn column(&self, index: usize) -> impl Iterator<Item = f64> + '_ {
        self.scans.iter().map(move |s| s.gain_db()[index])
    }
}

/// Normalized autocorrelation for lags 0..len.
#[derive(Debug, Clone, PartialEq)]
pub struct Autocorrelation {
    pub values: Vec<f64>,
    /// Set when the line has no variance; lag 0 is then 1 and the rest 0.
    pub degenerate: bool,
}

/// Mean dB gain along the line at azimuth `phi`.
pub fn line_mean(line: &DenseLine, phi: f64) -> Result<f64> {
    let i = line.angle_index(phi)?;
    Ok(line.column(i).sum::<f64>() / line.len() as f64)
}

/// dB gains along the line minus their mean.
pub fn zero_mean(line: &DenseLine, phi: f64) -> Result<Vec<f64>> {
    let i = line.angle_index(phi)?;
    Ok(zero_mean_at(line, i))
}

fn zero_mean_at(line: &DenseLine, index: usize) -> Vec<f64> {
    let m = line.column(index).sum::<f64>() / line.len() as f64;
    line.column(index).map(|g| g - m).collect()
}

pub fn autocorrelation(line: &DenseLine, phi: f64) -> Result<Autocorrelation> {
    let i = line.angle_index(phi)?;
    Ok(column_autocorrelation(line, i))
}

fn column_autocorrelation(line: &DenseLine, index: usize) -> Autocorrelation {
    let m = line.column(index).sum::<f64>() / line.len() as f64;
    let z: Vec<f64> = line.column(index).map(|g| g - m).collect();
    let tol = 1e-12 * m.abs().max(1.0);
    if z.iter().all(|v| v.abs() <= tol) {
        return Autocorrelation::degenerate(z.len());
    }
    normalized_autocorrelation(&z)
}

impl Autocorrelation {
    fn degenerate(n: usize) -> Self {
        let mut values = vec![0.0; n];
        values[0] = 1.0;
        Self {
            values,
            degenerate: true,
        }
    }
}

/// Lagged products of a zero-mean sequence, normalized by lag 0.
pub fn normalized_autocorrelation(seq: &[f64]) -> Autocorrelation {
    let n = seq.len();
    let lagged = |k: usize| -> f64 { seq[..n - k].iter().zip(&seq[k..]).map(|(a, b)| a * b).sum() };
    let r0 = lagged(0);
    if r0 == 0.0 {
        return Autocorrelation::degenerate(n);
    }
    Autocorrelation {
        values: (0..n).map(|k| lagged(k) / r0).collect(),
        degenerate: false,
    }
}

/// Correlation versus displacement, averaged over azimuth and lines.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationCurve {
    pub lag_m: Vec<f64>,
    pub r: Vec<f64>,
}

/// Mean normalized autocorrelation of one line over its azimuth grid.
pub fn line_correlation(line: &DenseLine) -> Vec<f64> {
    let n_angles = line.angles().len();
    let mut acc = vec![0.0; line.len()];
    for i in 0..n_angles {
        let ac = column_autocorrelation(line, i);
        for (a, v) in acc.iter_mut().zip(ac.values) {
            *a += v;
        }
    }
    acc.iter().map(|a| a / n_angles as f64).collect()
}

pub fn averaged_correlation(lines: &[DenseLine]) -> Result<CorrelationCurve> {
    let first = lines
        .first()
        .ok_or(Error::InsufficientData { needed: 1, got: 0 })?;
    for line in &lines[1..] {
        if line.len() != first.len()
            || (line.spacing() - first.spacing()).abs() > SPACING_TOLERANCE_M
        {
            return Err(Error::Shape(format!(
                "line at y={} has {} points at {} m, expected {} at {} m",
                line.y,
                line.len(),
                line.spacing(),
                first.len(),
                first.spacing()
            )));
        }
    }

    #[cfg(feature = "parallel")]
    let per_line: Vec<Vec<f64>> = {
        use rayon::prelude::*;
        lines.par_iter().map(line_correlation).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let per_line: Vec<Vec<f64>> = lines.iter().map(line_correlation).collect();

    let mut r = vec![0.0; first.len()];
    for curve in &per_line {
        for (a, v) in r.iter_mut().zip(curve) {
            *a += v;
        }
    }
    r.iter_mut().for_each(|v| *v /= lines.len() as f64);
    let spacing = first.spacing();
    Ok(CorrelationCurve {
        lag_m: (0..first.len()).map(|k| (k as f64 * spacing * 1e9).round() / 1e9).collect(),
        r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scan::{uniform_grid, VehicleState};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// Builds a line whose gain at azimuth index `a`, position `k` is `f(a, k)`.
    fn scans_for(n_pos: usize, n_angles: usize, y: f64, f: impl Fn(usize, usize) -> f64) -> Vec<AngularScan> {
        (0..n_pos)
            .map(|k| {
                AngularScan::new(
                    TxId::Tx1 { crane_y: 63 },
                    (135 + k) as f64 / 10.0,
                    y,
                    uniform_grid(n_angles, 0.0),
                    (0..n_angles).map(|a| f(a, k)).collect(),
                    VehicleState::Absent,
                    Stacking::Uniform,
                )
                .unwrap()
            })
            .collect()
    }

    /// Direct evaluation of the lagged-product definition.
    fn oracle(seq: &[f64]) -> Vec<f64> {
        let n = seq.len();
        let m: f64 = seq.iter().sum::<f64>() / n as f64;
        let z: Vec<f64> = seq.iter().map(|v| v - m).collect();
        let mut out = Vec::new();
        for k in 0..n {
            let mut s = 0.0;
            for j in 0..n - k {
                s += z[j] * z[j + k];
            }
            out.push(s);
        }
        let r0 = out[0];
        out.iter().map(|v| v / r0).collect()
    }

    #[test]
    fn mean_and_zero_mean() {
        let scans = scans_for(15, 8, 3.5, |_, _| -60.0);
        let line = DenseLine::new(scans.iter().collect()).unwrap();
        assert_eq!(line_mean(&line, 0.0).unwrap(), -60.0);
        assert!(zero_mean(&line, 0.0).unwrap().iter().all(|v| *v == 0.0));

        let hand = [-60.0, -70.0, -65.0, -61.0, -58.0, -72.0, -66.0, -63.0, -59.0, -64.0, -68.0, -62.0, -67.0, -69.0, -71.0];
        let scans = scans_for(15, 8, 3.5, |_, k| hand[k]);
        let line = DenseLine::new(scans.iter().collect()).unwrap();
        assert_relative_eq!(line_mean(&line, 0.0).unwrap(), -975.0 / 15.0, epsilon = 1e-12);

        let scans = scans_for(14, 8, 3.5, |_, k| if k % 2 == 0 { -58.0 } else { -62.0 });
        let line = DenseLine::new(scans.iter().collect()).unwrap();
        let z = zero_mean(&line, 0.0).unwrap();
        for (k, v) in z.iter().enumerate() {
            assert_relative_eq!(*v, if k % 2 == 0 { 2.0 } else { -2.0 }, epsilon = 1e-12);
        }
        assert!(z.iter().sum::<f64>().abs() < 1e-9);
    }

    #[test]
    fn off_grid_azimuth_is_rejected() {
        let scans = scans_for(15, 8, 3.5, |_, _| -60.0);
        let line = DenseLine::new(scans.iter().collect()).unwrap();
        assert!(matches!(line_mean(&line, 0.1), Err(Error::Lookup(_))));
    }

    #[test]
    fn alternating_sequence() {
        let scans = scans_for(15, 8, 3.5, |_, k| if k % 2 == 0 { 1.0 } else { -1.0 });
        let line = DenseLine::new(scans.iter().collect()).unwrap();
        let ac = autocorrelation(&line, 0.0).unwrap();
        let want = oracle(&scans.iter().map(|s| s.gain_db()[0]).collect::<Vec<_>>());
        assert!(!ac.degenerate);
        for (a, b) in ac.values.iter().zip(&want) {
            assert_relative_eq!(a, b, epsilon = 1e-12);
        }
        // 8 samples at 14/15, 7 at −16/15: r₁ = −3136/3360
        assert_relative_eq!(ac.values[1], -3136.0 / 3360.0, epsilon = 1e-12);
        assert_eq!(ac.values[0], 1.0);
    }

    #[test]
    fn single_spike_sequence() {
        let scans = scans_for(15, 8, 3.5, |_, k| if k == 7 { 1.0 } else { 0.0 });
        let line = DenseLine::new(scans.iter().collect()).unwrap();
        let ac = autocorrelation(&line, 0.0).unwrap();
        // z = e₇ − c with c = 1/15: r₀ = 14/15 and, for k ≥ 1,
        // r_k = (15−k)c² − 2c while the spike is inside both windows (k ≤ 7).
        for k in 1..15 {
            let overlap = if k <= 7 { 30.0 } else { 0.0 };
            let want = ((15 - k) as f64 - overlap) / 225.0 / (14.0 / 15.0);
            assert_relative_eq!(ac.values[k], want, epsilon = 1e-12);
        }
    }

    #[test]
    fn constant_line_is_degenerate() {
        let scans = scans_for(15, 8, 3.5, |_, _| -61.3);
        let line = DenseLine::new(scans.iter().collect()).unwrap();
        let ac = autocorrelation(&line, 0.0).unwrap();
        assert!(ac.degenerate);
        assert_eq!(ac.values[0], 1.0);
        assert!(ac.values[1..].iter().all(|v| *v == 0.0));
    }

    #[test]
    fn line_validation() {
        let scans = scans_for(15, 8, 3.5, |_, _| 0.0);
        let mut refs: Vec<_> = scans.iter().collect();
        refs.remove(4);
        assert!(DenseLine::new(refs).is_err());
        let other = scans_for(1, 8, 5.5, |_, _| 0.0);
        let mut refs: Vec<_> = scans.iter().collect();
        refs[3] = &other[0];
        assert!(DenseLine::new(refs).is_err());
        assert!(DenseLine::new(vec![&scans[0]]).is_err());
    }

    #[test]
    fn averaged_passthrough_and_order() {
        // Same sequence at every azimuth: the average is that sequence's curve.
        let seq = [0.3, -1.2, 2.0, 0.1, -0.4, 1.1, -2.2, 0.9, 0.0, -0.7, 1.5, -0.2, 0.6, -1.0, 0.8];
        let scans = scans_for(15, 8, 3.5, |_, k| seq[k]);
        let line = DenseLine::new(scans.iter().collect()).unwrap();
        let curve = averaged_correlation(std::slice::from_ref(&line)).unwrap();
        for (a, b) in curve.r.iter().zip(oracle(&seq)) {
            assert_relative_eq!(*a, b, epsilon = 1e-12);
        }
        assert_relative_eq!(curve.lag_m[3], 0.3, epsilon = 1e-12);

        // lines-then-angles equals angles-then-lines
        let a = scans_for(15, 8, 3.5, |a, k| ((a * 7 + k * 3) % 11) as f64);
        let b = scans_for(15, 8, 5.5, |a, k| ((a * 5 + k * k) % 13) as f64);
        let la = DenseLine::new(a.iter().collect()).unwrap();
        let lb = DenseLine::new(b.iter().collect()).unwrap();
        let both = averaged_correlation(&[la.clone(), lb.clone()]).unwrap();
        let mut by_angle = vec![0.0; 15];
        for i in 0..8 {
            for line in [&la, &lb] {
                let ac = column_autocorrelation(line, i);
                for (acc, v) in by_angle.iter_mut().zip(ac.values) {
                    *acc += v / 16.0;
                }
            }
        }
        for (x, y) in both.r.iter().zip(by_angle) {
            assert_relative_eq!(*x, y, epsilon = 1e-12);
        }
    }

    proptest! {
        #[test]
        fn bounded_and_offset_invariant(seq in prop::collection::vec(-90.0f64..-40.0, 15), k in -20.0f64..20.0) {
            let a = normalized_autocorrelation(&seq.iter().map(|v| v - seq.iter().sum::<f64>() / 15.0).collect::<Vec<_>>());
            for v in &a.values {
                prop_assert!(v.abs() <= 1.0 + 1e-12);
            }
            let s1 = scans_for(15, 8, 3.5, |_, j| seq[j]);
            let s2 = scans_for(15, 8, 3.5, |_, j| seq[j] + k);
            let l1 = DenseLine::new(s1.iter().collect()).unwrap();
            let l2 = DenseLine::new(s2.iter().collect()).unwrap();
            let c1 = autocorrelation(&l1, 0.0).unwrap();
            let c2 = autocorrelation(&l2, 0.0).unwrap();
            for (x, y) in c1.values.iter().zip(&c2.values) {
                prop_assert!((x - y).abs() < 1e-9);
            }
        }
    }
}
