//! Spiked-covariance dispersion measures, the per-eigenvalue chi-square
//! approximation, and the two-population equality test.
//!
//! When the leading population eigenvalues are strongly dispersed
//! (`ρ_k → 0`), `ℓ_i / λ_i` is approximately `χ²_{n-i+1}`; the ratio of two
//! independent such statistics is approximately F, which gives a test of
//! `λ_k^{(1)} = λ_k^{(2)}` in which the unknown population eigenvalues
//! cancel under the null.

use super::{CovarianceSpec, EigenSample};
use crate::error::{Error, Result};
use crate::scalardist::{ChiSquare, FDist};

/// Population dispersion `ρ_k = max(λ_2/λ_1, …, λ_{k+1}/λ_k)`.
pub fn spike_dispersion_rho(cov: &CovarianceSpec, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::Index("dispersion order k must be >= 1".into()));
    }
    if k + 1 > cov.m() {
        return Err(Error::Index(format!(
            "dispersion order {k} needs at least {} eigenvalues, have {}",
            k + 1,
            cov.m()
        )));
    }
    let l = cov.lambdas();
    let mut rho = 0.0f64;
    for i in 0..k {
        rho = rho.max(l[i + 1] / l[i]);
    }
    Ok(rho)
}

/// Sample counterpart `r_k = max(ℓ_2/ℓ_1, …, ℓ_{k+1}/ℓ_k)`.
pub fn sample_dispersion_rk(sample: &EigenSample, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::Index("dispersion order k must be >= 1".into()));
    }
    if k + 1 > sample.n() {
        return Err(Error::Index(format!(
            "dispersion order {k} needs at least {} sample eigenvalues, have {}",
            k + 1,
            sample.n()
        )));
    }
    let l = sample.ells();
    let mut rk = 0.0f64;
    for i in 0..k {
        rk = rk.max(l[i + 1] / l[i]);
    }
    Ok(rk)
}

fn check_index(i: usize, n: usize) -> Result<f64> {
    if i == 0 || i > n {
        return Err(Error::Index(format!(
            "eigenvalue index {i} out of range 1..={n}"
        )));
    }
    Ok((n - i + 1) as f64)
}

/// `Pr(ℓ_i <= x)` under the chi-square approximation `ℓ_i/λ_i ≈ χ²_{n-i+1}`.
pub fn chisq_approx_cdf(x: f64, i: usize, n: usize, lambda_i: f64) -> Result<f64> {
    let dof = check_index(i, n)?;
    if !(lambda_i > 0.0) {
        return Err(Error::Domain(format!(
            "population eigenvalue must be positive, got {lambda_i}"
        )));
    }
    ChiSquare::new(dof)?.cdf(x / lambda_i)
}

/// Quantile of the same approximation: `λ_i · (χ²_{n-i+1})⁻¹(p)`.
pub fn chisq_approx_quantile(p: f64, i: usize, n: usize, lambda_i: f64) -> Result<f64> {
    let dof = check_index(i, n)?;
    if !(lambda_i > 0.0) {
        return Err(Error::Domain(format!(
            "population eigenvalue must be positive, got {lambda_i}"
        )));
    }
    Ok(lambda_i * ChiSquare::new(dof)?.quantile(p)?)
}

/// Outcome of the two-population equality test for the k-th eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct EqualityTestResult {
    /// `[ℓ_k⁽¹⁾/(n₁-k+1)] / [ℓ_k⁽²⁾/(n₂-k+1)]`.
    pub statistic: f64,
    pub dof1: usize,
    pub dof2: usize,
    /// Two-sided: `2 min(F(stat), 1 - F(stat))`.
    pub p_value: f64,
    /// Significance level the caller asked to test at, if any.
    pub reject_at: Option<f64>,
}

impl EqualityTestResult {
    pub fn rejected(&self) -> Option<bool> {
        self.reject_at.map(|alpha| self.p_value < alpha)
    }
}

/// Tests `H₀: λ_k⁽¹⁾ = λ_k⁽²⁾` from the k-th sample eigenvalues of two
/// independent populations with `n₁`, `n₂` columns each.
pub fn equality_test(
    ellk1: f64,
    ellk2: f64,
    k: usize,
    n1: usize,
    n2: usize,
    reject_at: Option<f64>,
) -> Result<EqualityTestResult> {
    if k == 0 || k > n1.min(n2) {
        return Err(Error::Index(format!(
            "test order {k} out of range 1..={}",
            n1.min(n2)
        )));
    }
    if !(ellk1 > 0.0 && ellk2 > 0.0) {
        return Err(Error::Domain(format!(
            "sample eigenvalues must be positive, got {ellk1} and {ellk2}"
        )));
    }
    if let Some(alpha) = reject_at {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Domain(format!(
                "significance level must lie in (0, 1), got {alpha}"
            )));
        }
    }
    let dof1 = n1 - k + 1;
    let dof2 = n2 - k + 1;
    let statistic = (ellk1 / dof1 as f64) / (ellk2 / dof2 as f64);
    let f = FDist::new(dof1 as f64, dof2 as f64)?;
    let cdf = f.cdf(statistic)?;
    let p_value = (2.0 * cdf.min(1.0 - cdf)).min(1.0);
    Ok(EqualityTestResult {
        statistic,
        dof1,
        dof2,
        p_value,
        reject_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rho_examples() {
        let cov = CovarianceSpec::new(vec![100.0, 1.0, 1.0]).unwrap();
        assert_relative_eq!(spike_dispersion_rho(&cov, 1).unwrap(), 0.01);
        let spiked = CovarianceSpec::spiked(200.0, 3.0, 50).unwrap();
        assert_relative_eq!(
            spike_dispersion_rho(&spiked, 1).unwrap(),
            200.0f64.powf(-1.5),
            max_relative = 1e-13
        );
        let flat = CovarianceSpec::new(vec![2.0, 2.0, 1.0]).unwrap();
        assert_relative_eq!(spike_dispersion_rho(&flat, 1).unwrap(), 1.0);
        assert!(spike_dispersion_rho(&flat, 3).is_err());
    }

    #[test]
    fn rk_examples() {
        let s = EigenSample::new(vec![10.0, 1.0, 0.1], 5).unwrap();
        assert_relative_eq!(sample_dispersion_rk(&s, 2).unwrap(), 0.1, epsilon = 1e-14);
        let s = EigenSample::new(vec![8.0, 4.0], 5).unwrap();
        assert_relative_eq!(sample_dispersion_rk(&s, 1).unwrap(), 0.5);
        assert!(sample_dispersion_rk(&s, 2).is_err());
    }

    #[test]
    fn chisq_approx_matches_scaled_chi_square() {
        // i = n gives a single degree of freedom
        let q = chisq_approx_quantile(0.5, 3, 3, 2.0).unwrap();
        let chi1 = ChiSquare::new(1.0).unwrap();
        assert_relative_eq!(q, 2.0 * chi1.quantile(0.5).unwrap(), max_relative = 1e-12);
        // cdf/quantile round trip through the scaling
        let c = chisq_approx_cdf(q, 3, 3, 2.0).unwrap();
        assert_relative_eq!(c, 0.5, epsilon = 1e-10);
        assert!(chisq_approx_cdf(1.0, 4, 3, 1.0).is_err());
        assert!(chisq_approx_quantile(0.5, 1, 3, -1.0).is_err());
    }

    #[test]
    fn equality_test_null_center() {
        // ℓ's proportional to their normalizers give statistic 1, p-value 1
        let r = equality_test(10.0, 5.0, 1, 10, 5, Some(0.05)).unwrap();
        assert_relative_eq!(r.statistic, 1.0);
        assert_relative_eq!(r.p_value, 1.0, epsilon = 1e-12);
        assert_eq!(r.rejected(), Some(false));
        assert_eq!((r.dof1, r.dof2), (10, 5));
    }

    #[test]
    fn equality_test_swap_inverts_statistic() {
        let a = equality_test(7.0, 3.0, 2, 9, 11, None).unwrap();
        let b = equality_test(3.0, 7.0, 2, 11, 9, None).unwrap();
        assert_relative_eq!(a.statistic, 1.0 / b.statistic, max_relative = 1e-14);
        assert_relative_eq!(a.p_value, b.p_value, max_relative = 1e-9);
    }

    #[test]
    fn equality_test_scale_invariance() {
        let a = equality_test(7.0, 3.0, 1, 6, 6, None).unwrap();
        let b = equality_test(7000.0, 3000.0, 1, 6, 6, None).unwrap();
        assert_relative_eq!(a.statistic, b.statistic, max_relative = 1e-14);
        assert_relative_eq!(a.p_value, b.p_value, max_relative = 1e-14);
    }

    #[test]
    fn equality_test_domain_errors() {
        assert!(equality_test(1.0, 1.0, 3, 2, 5, None).is_err());
        assert!(equality_test(-1.0, 1.0, 1, 2, 5, None).is_err());
        assert!(equality_test(1.0, 1.0, 1, 2, 5, Some(1.5)).is_err());
    }
}
