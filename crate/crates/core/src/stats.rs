//! Empirical distributions and moments shared by the statistics modules.

use crate::error::{Error, Result};

/// Empirical cumulative distribution of a finite sample.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InsufficientData { needed: 1, got: 0 });
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("non-finite sample {bad}")));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { sorted: values })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Sorted sample values.
    pub fn values(&self) -> &[f64] {
        &self.sorted
    }

    /// F(x) = #{samples ≤ x} / n.
    pub fn probability_at(&self, x: f64) -> f64 {
        let count = self.sorted.partition_point(|&v| v <= x);
        count as f64 / self.sorted.len() as f64
    }

    /// Smallest sample value v with F(v) ≥ p.
    pub fn quantile(&self, p: f64) -> f64 {
        let n = self.sorted.len();
        let rank = (p.clamp(0.0, 1.0) * n as f64).ceil() as usize;
        self.sorted[rank.clamp(1, n) - 1]
    }

    pub fn median(&self) -> f64 {
        self.quantile(0.5)
    }

    /// Step points `(value, probability)`, one per sample.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.sorted.len() as f64;
        self.sorted
            .iter()
            .enumerate()
            .map(move |(i, &v)| (v, (i + 1) as f64 / n))
    }
}

/// Probability levels at which horizontal CDF distances are measured:
/// 0.01, 0.02, …, 0.99. The extreme tails are excluded because their
/// quantiles are set by a handful of samples.
pub fn gap_levels() -> impl Iterator<Item = f64> {
    (1..100).map(|k| k as f64 / 100.0)
}

/// Largest quantile difference |Qa(p) − Qb(p)| over [`gap_levels`].
pub fn max_horizontal_gap(a: &EmpiricalCdf, b: &EmpiricalCdf) -> f64 {
    gap_levels()
        .map(|p| (a.quantile(p) - b.quantile(p)).abs())
        .fold(0.0, f64::max)
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Mean and population (1/N) standard deviation.
pub fn mean_and_population_std(values: &[f64]) -> (f64, f64) {
    let mu = mean(values);
    let var = values.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / values.len() as f64;
    (mu, var.sqrt())
}
