//! Eigenvalue laws of singular Wishart matrices: the exact largest-eigenvalue
//! CDF/PDF, the exact two-population largest-eigenvalue ratio density, the
//! Laplace-approximated joint density, and chi-square/F approximations under
//! spiked covariance.

mod exact;
mod laplace;
mod ratio;
mod spike;

pub use exact::{largest_eig_cdf_exact, largest_eig_pdf_exact, LargestEigSeries, SeriesValue};
pub use laplace::{laplace_joint_density, laplace_joint_log_density};
pub use ratio::{ratio_density_exact, RatioDensity, RatioVariant};
pub use spike::{
    chisq_approx_cdf, chisq_approx_quantile, equality_test, sample_dispersion_rk,
    spike_dispersion_rho, EqualityTestResult,
};

use crate::error::{Error, Result};

/// Relative gap below which two population eigenvalues are treated as
/// coincident by densities that require distinct values.
pub const DEGENERACY_GAP: f64 = 1e-10;

/// Descending positive population eigenvalues `λ_1 ≥ … ≥ λ_m` of `Σ`.
///
/// Strict descent is only demanded by operations whose formulas degenerate
/// under ties (the Laplace joint density); everything else accepts weak
/// descent.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceSpec {
    lambdas: Vec<f64>,
}

impl CovarianceSpec {
    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::Domain("covariance needs at least one eigenvalue".into()));
        }
        if lambdas.iter().any(|&l| !(l > 0.0) || !l.is_finite()) {
            return Err(Error::Domain(format!(
                "population eigenvalues must be positive and finite, got {lambdas:?}"
            )));
        }
        if lambdas.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "population eigenvalues must be sorted descending, got {lambdas:?}"
            )));
        }
        Ok(CovarianceSpec { lambdas })
    }

    /// Spiked spectrum `λ_i = a^{b/i}`.
    pub fn spiked(a: f64, b: f64, m: usize) -> Result<Self> {
        SpikedCovParams::new(a, b, m)?.covariance()
    }

    pub fn m(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn lambda(&self, i: usize) -> Result<f64> {
        if i == 0 || i > self.m() {
            return Err(Error::Index(format!(
                "eigenvalue index {i} out of range 1..={}",
                self.m()
            )));
        }
        Ok(self.lambdas[i - 1])
    }

    /// `Σ ln λ_i = ln |Σ|`.
    pub fn log_det(&self) -> f64 {
        self.lambdas.iter().map(|l| l.ln()).sum()
    }

    /// `tr Σ⁻¹`.
    pub fn inv_trace(&self) -> f64 {
        self.lambdas.iter().map(|l| 1.0 / l).sum()
    }

    /// Eigenvalues of `Σ⁻¹ / 2`, the natural series argument of the exact
    /// largest-eigenvalue law.
    pub fn half_inverse_eigs(&self) -> Vec<f64> {
        self.lambdas.iter().map(|l| 0.5 / l).collect()
    }

    /// Errors unless eigenvalues `1..=upto` (1-based) are pairwise separated
    /// from each other and from everything after them by the relative
    /// degeneracy gap.
    pub fn require_strict(&self, upto: usize) -> Result<()> {
        for i in 0..upto.min(self.m()) {
            for j in (i + 1)..self.m() {
                let gap = (self.lambdas[i] - self.lambdas[j]) / self.lambdas[i];
                if gap < DEGENERACY_GAP {
                    return Err(Error::Degenerate(format!(
                        "population eigenvalues {} and {} coincide (relative gap {gap:.2e})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The spiked family `Σ = diag(a^b, a^{b/2}, …, a^{b/m})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpikedCovParams {
    pub a: f64,
    pub b: f64,
    pub m: usize,
}

impl SpikedCovParams {
    pub fn new(a: f64, b: f64, m: usize) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::Domain(format!(
                "spiked covariance needs a > 0 and b > 0, got a = {a}, b = {b}"
            )));
        }
        if m == 0 {
            return Err(Error::Domain("spiked covariance needs m >= 1".into()));
        }
        Ok(SpikedCovParams { a, b, m })
    }

    pub fn lambdas(&self) -> Vec<f64> {
        (1..=self.m)
            .map(|i| self.a.powf(self.b / i as f64))
            .collect()
    }

    pub fn covariance(&self) -> Result<CovarianceSpec> {
        CovarianceSpec::new(self.lambdas())
    }
}

/// One draw of sorted sample eigenvalues `ℓ_1 > … > ℓ_n` of `W`, together
/// with the ambient dimension `m > n`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSample {
    ells: Vec<f64>,
    m: usize,
}

impl EigenSample {
    pub fn new(ells: Vec<f64>, m: usize) -> Result<Self> {
        if ells.is_empty() {
            return Err(Error::Domain("eigenvalue sample is empty".into()));
        }
        if ells.len() >= m {
            return Err(Error::Domain(format!(
                "sample rank {} must be smaller than the dimension {m}",
                ells.len()
            )));
        }
        if ells.iter().any(|&l| !(l > 0.0) || !l.is_finite()) {
            return Err(Error::Domain(format!(
                "sample eigenvalues must be positive and finite, got {ells:?}"
            )));
        }
        if ells.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Domain(format!(
                "sample eigenvalues must be strictly descending, got {ells:?}"
            )));
        }
        Ok(EigenSample { ells, m })
    }

    /// Constructor for the sampler, which produces valid output by
    /// construction (ties have probability zero).
    pub(crate) fn new_unchecked(ells: Vec<f64>, m: usize) -> Self {
        debug_assert!(ells.len() < m);
        EigenSample { ells, m }
    }

    pub fn n(&self) -> usize {
        self.ells.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ells(&self) -> &[f64] {
        &self.ells
    }

    /// 1-based access: `ell(1)` is the largest eigenvalue.
    pub fn ell(&self, i: usize) -> Result<f64> {
        if i == 0 || i > self.n() {
            return Err(Error::Index(format!(
                "eigenvalue index {i} out of range 1..={}",
                self.n()
            )));
        }
        Ok(self.ells[i - 1])
    }
}
