//! Empirical distributions: quantiles, CDF queries, Kolmogorov–Smirnov
//! distance.

use crate::error::{Error, Result};

/// A sorted Monte Carlo sample.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    sorted: Vec<f64>,
}

impl EmpiricalDistribution {
    /// Takes ownership of raw draws and sorts them ascending.
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_unstable_by(|a, b| a.total_cmp(b));
        EmpiricalDistribution { sorted: values }
    }

    pub fn count(&self) -> usize {
        self.sorted.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.sorted
    }

    /// Type-7 quantile: linear interpolation between order statistics at
    /// position `1 + p (count - 1)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!(
                "quantile probability must lie in (0, 1), got {p}"
            )));
        }
        if self.count() < 2 {
            return Err(Error::Domain(
                "quantile needs at least two samples".into(),
            ));
        }
        let h = p * (self.count() - 1) as f64;
        let lo = h.floor() as usize;
        let frac = h - lo as f64;
        if lo + 1 >= self.count() {
            return Ok(self.sorted[self.count() - 1]);
        }
        Ok(self.sorted[lo] + frac * (self.sorted[lo + 1] - self.sorted[lo]))
    }

    /// Fraction of samples `<= x`.
    pub fn cdf_at(&self, x: f64) -> f64 {
        let idx = self.sorted.partition_point(|&v| v <= x);
        idx as f64 / self.count() as f64
    }

    /// Two-sided Kolmogorov–Smirnov distance to a reference CDF:
    /// `sup_i max(F(x_i) - i/n, (i+1)/n - F(x_i))`.
    pub fn ks_distance<F: Fn(f64) -> f64>(&self, cdf: F) -> f64 {
        let n = self.count() as f64;
        let mut sup = 0.0f64;
        for (i, &x) in self.sorted.iter().enumerate() {
            let f = cdf(x);
            sup = sup.max(f - i as f64 / n).max((i as f64 + 1.0) / n - f);
        }
        sup
    }
}
