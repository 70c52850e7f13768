//! Distance-dependent gain: free-space reference and log-distance fits.
//!
//! Gains follow `R(D) = 10·n·log10(D) + R0`. The slope `n` is stored signed:
//! gains fall with distance, so physical fits have `n < 0`.

use crate::error::{Error, Result};
use statrs::distribution::{ContinuousCDF, StudentsT};
use std::collections::BTreeSet;
use std::f64::consts::PI;

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Carrier of the campaign (Hz).
pub const CARRIER_HZ: f64 = 28e9;

/// Confidence level of the reported intervals.
pub const CONFIDENCE: f64 = 0.95;

/// One angle-averaged gain at a TX–RX Euclidean distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainSample {
    pub distance_m: f64,
    pub gain_db: f64,
}

impl GainSample {
    pub fn new(distance_m: f64, gain_db: f64) -> Result<Self> {
        if !(distance_m > 0.0 && distance_m.is_finite()) {
            return Err(Error::Domain(format!("distance must be positive, got {distance_m}")));
        }
        if !gain_db.is_finite() {
            return Err(Error::Domain(format!("gain must be finite, got {gain_db}")));
        }
        Ok(Self { distance_m, gain_db })
    }

    fn regressor(&self) -> f64 {
        10.0 * self.distance_m.log10()
    }
}

/// Parameters of a log-distance fit with 95 % half-widths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLinFit {
    pub n: f64,
    pub r0: f64,
    pub ci_n: f64,
    pub ci_r0: f64,
    /// Root mean square residual, normalized by N.
    pub rmse: f64,
    pub sample_count: usize,
}

impl LogLinFit {
    /// A fit with the given line and no uncertainty.
    pub fn line(n: f64, r0: f64) -> Self {
        Self {
            n,
            r0,
            ci_n: 0.0,
            ci_r0: 0.0,
            rmse: 0.0,
            sample_count: 0,
        }
    }
}

/// Friis free-space path loss 20·log10(4πDf/c), in dB.
pub fn fspl_db(distance_m: f64, frequency_hz: f64) -> Result<f64> {
    if !(distance_m > 0.0 && frequency_hz > 0.0) {
        return Err(Error::Domain(format!(
            "distance and frequency must be positive, got {distance_m} m, {frequency_hz} Hz"
        )));
    }
    Ok(20.0 * (4.0 * PI * distance_m * frequency_hz / SPEED_OF_LIGHT).log10())
}

/// Two-sided Student-t critical value at [`CONFIDENCE`].
fn t_critical(dof: usize) -> f64 {
    StudentsT::new(0.0, 1.0, dof as f64)
        .map(|t| t.inverse_cdf(0.5 + CONFIDENCE / 2.0))
        .unwrap_or(f64::NAN)
}

/// Ordinary least squares of gain on 10·log10(D).
pub fn fit_loglinear(samples: &[GainSample]) -> Result<LogLinFit> {
    let count = samples.len();
    if count < 3 {
        return Err(Error::InsufficientData { needed: 3, got: count });
    }
    let distinct: BTreeSet<u64> = samples.iter().map(|s| s.distance_m.to_bits()).collect();
    if distinct.len() < 2 {
        return Err(Error::DegenerateFit("all samples share one distance".into()));
    }
    let n = count as f64;
    let x_mean = samples.iter().map(GainSample::regressor).sum::<f64>() / n;
    let y_mean = samples.iter().map(|s| s.gain_db).sum::<f64>() / n;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for s in samples {
        let dx = s.regressor() - x_mean;
        sxx += dx * dx;
        sxy += dx * (s.gain_db - y_mean);
    }
    if sxx <= 0.0 {
        return Err(Error::DegenerateFit("no spread in log-distance".into()));
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let ssr: f64 = samples
        .iter()
        .map(|s| {
            let r = s.gain_db - (slope * s.regressor() + intercept);
            r * r
        })
        .sum();
    let s2 = ssr / (n - 2.0);
    let t = t_critical(count - 2);
    Ok(LogLinFit {
        n: slope,
        r0: intercept,
        ci_n: t * (s2 / sxx).sqrt(),
        ci_r0: t * (s2 * (1.0 / n + x_mean * x_mean / sxx)).sqrt(),
        rmse: (ssr / n).sqrt(),
        sample_count: count,
    })
}

/// Least-squares intercept with the slope held at `n_fixed`.
pub fn fit_fixed_slope(samples: &[GainSample], n_fixed: f64) -> Result<LogLinFit> {
    let count = samples.len();
    if count < 2 {
        return Err(Error::InsufficientData { needed: 2, got: count });
    }
    let n = count as f64;
    let intercept = samples
        .iter()
        .map(|s| s.gain_db - n_fixed * s.regressor())
        .sum::<f64>()
        / n;
    let ssr: f64 = samples
        .iter()
        .map(|s| {
            let r = s.gain_db - (n_fixed * s.regressor() + intercept);
            r * r
        })
        .sum();
    let s2 = ssr / (n - 1.0);
    Ok(LogLinFit {
        n: n_fixed,
        r0: intercept,
        ci_n: 0.0,
        ci_r0: t_critical(count - 1) * (s2 / n).sqrt(),
        rmse: (ssr / n).sqrt(),
        sample_count: count,
    })
}

pub fn predict(fit: &LogLinFit, distance_m: f64) -> Result<f64> {
    if !(distance_m > 0.0) {
        return Err(Error::Domain(format!("distance must be positive, got {distance_m}")));
    }
    Ok(10.0 * fit.n * distance_m.log10() + fit.r0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn line(n: f64, r0: f64, distances: impl IntoIterator<Item = f64>) -> Vec<GainSample> {
        distances
            .into_iter()
            .map(|d| GainSample::new(d, 10.0 * n * d.log10() + r0).unwrap())
            .collect()
    }

    #[test]
    fn fspl_examples() {
        assert!(fspl_db(SPEED_OF_LIGHT / (4.0 * PI * CARRIER_HZ), CARRIER_HZ).unwrap().abs() < 1e-12);
        assert_relative_eq!(fspl_db(100.0, CARRIER_HZ).unwrap(), 101.39094384872776, epsilon = 1e-10);
        let step = fspl_db(200.0, CARRIER_HZ).unwrap() - fspl_db(100.0, CARRIER_HZ).unwrap();
        assert_relative_eq!(step, 20.0 * 2f64.log10(), epsilon = 1e-12);
        assert!(fspl_db(0.0, CARRIER_HZ).is_err());
    }

    #[test]
    fn t_critical_values() {
        // tabulated two-sided 95 % points
        assert_relative_eq!(t_critical(1), 12.706204736, epsilon = 1e-6);
        assert_relative_eq!(t_critical(10), 2.228138852, epsilon = 1e-6);
        assert_relative_eq!(t_critical(1000), 1.962339081, epsilon = 1e-6);
    }

    #[test]
    fn noiseless_recovery() {
        let fit = fit_loglinear(&line(-2.0, -60.0, (1..=12).map(|k| 5.0 * k as f64))).unwrap();
        assert_relative_eq!(fit.n, -2.0, epsilon = 1e-12);
        assert_relative_eq!(fit.r0, -60.0, epsilon = 1e-10);
        assert!(fit.rmse < 1e-10 && fit.ci_n < 1e-9 && fit.ci_r0 < 1e-9);

        let fit = fit_loglinear(&line(-2.18, -57.4, (0..20).map(|k| 55.0 + 3.0 * k as f64))).unwrap();
        assert_relative_eq!(fit.n, -2.18, epsilon = 1e-10);
        assert_relative_eq!(fit.r0, -57.4, epsilon = 1e-9);
    }

    #[test]
    fn hand_computed_fit() {
        // x = 10·log10(D) ∈ {10, 20, 30}, y = {−1, −4, −4}:
        // slope −0.15, intercept 0, residuals {−1/2, 1, −1/2}, SSR 3/2.
        let s = [
            GainSample::new(10.0, -1.0).unwrap(),
            GainSample::new(100.0, -4.0).unwrap(),
            GainSample::new(1000.0, -4.0).unwrap(),
        ];
        let fit = fit_loglinear(&s).unwrap();
        assert_relative_eq!(fit.n, -0.15, epsilon = 1e-12);
        assert_relative_eq!(fit.r0, 0.0, epsilon = 1e-12);
        assert_relative_eq!(fit.rmse, 0.5f64.sqrt(), epsilon = 1e-12);
        // se(n) = sqrt(1.5 / 200), t(1) = 12.7062
        assert_relative_eq!(fit.ci_n, 12.706204736174704 * (1.5f64 / 200.0).sqrt(), epsilon = 1e-8);
    }

    #[test]
    fn fit_errors() {
        assert!(matches!(
            fit_loglinear(&line(-2.0, 0.0, [10.0, 20.0])),
            Err(Error::InsufficientData { .. })
        ));
        assert!(matches!(
            fit_loglinear(&line(-2.0, 0.0, [10.0, 10.0, 10.0])),
            Err(Error::DegenerateFit(_))
        ));
        assert!(fit_fixed_slope(&line(-2.0, 0.0, [10.0]), -4.0).is_err());
        assert!(GainSample::new(-1.0, 0.0).is_err());
    }

    #[test]
    fn fixed_slope_examples() {
        let data = line(-4.0, -25.0, (0..30).map(|k| 60.0 + 4.0 * k as f64));
        let fit = fit_fixed_slope(&data, -4.0).unwrap();
        assert!(fit.rmse < 1e-10);
        assert_relative_eq!(fit.r0, -25.0, epsilon = 1e-10);
        assert_eq!(fit.ci_n, 0.0);

        let up: Vec<_> = data
            .iter()
            .map(|s| GainSample::new(s.distance_m, s.gain_db + 3.25).unwrap())
            .collect();
        let fit_up = fit_fixed_slope(&up, -4.0).unwrap();
        assert_relative_eq!(fit_up.r0 - fit.r0, 3.25, epsilon = 1e-10);
    }

    #[test]
    fn predict_examples() {
        assert_relative_eq!(
            predict(&LogLinFit::line(-4.09, -23.4), 137.0).unwrap(),
            -110.79187119669704,
            epsilon = 1e-9
        );
        assert_eq!(predict(&LogLinFit::line(-3.0, -42.0), 1.0).unwrap(), -42.0);
        assert_relative_eq!(predict(&LogLinFit::line(-2.0, 0.0), 10.0).unwrap(), -20.0);
        assert!(predict(&LogLinFit::line(-2.0, 0.0), 0.0).is_err());
    }

    proptest! {
        #[test]
        fn residuals_sum_to_zero(gains in prop::collection::vec(-120.0f64..-60.0, 3..40)) {
            let samples: Vec<_> = gains.iter().enumerate()
                .map(|(i, g)| GainSample::new(20.0 + 3.0 * i as f64, *g).unwrap())
                .collect();
            let fit = fit_loglinear(&samples).unwrap();
            let sum: f64 = samples.iter().map(|s| s.gain_db - predict(&fit, s.distance_m).unwrap()).sum();
            prop_assert!(sum.abs() < 1e-9);
            prop_assert!(fit.rmse >= 0.0 && fit.ci_n >= 0.0 && fit.ci_r0 >= 0.0);
            let pinned = fit_fixed_slope(&samples, fit.n).unwrap();
            prop_assert!((pinned.r0 - fit.r0).abs() < 1e-8);
        }

        #[test]
        fn noiseless_round_trip(n in -6.0f64..-1.0, r0 in -80.0f64..0.0, d in 1.0f64..2000.0) {
            let fit = fit_loglinear(&line(n, r0, [10.0, 40.0, 90.0, 250.0])).unwrap();
            let want = 10.0 * n * d.log10() + r0;
            prop_assert!((predict(&fit, d).unwrap() - want).abs() < 1e-9);
        }
    }
}
