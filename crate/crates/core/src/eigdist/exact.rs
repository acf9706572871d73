//! Exact distribution of the largest sample eigenvalue.
//!
//! The CDF is a confluent hypergeometric series in the matrix argument
//! `(x/2) Σ⁻¹`:
//!
//! ```text
//! Pr(ℓ₁ < x) = [Γ_n((n+1)/2) (x/2)^{mn/2} / (Γ_n((n+m+1)/2) |Σ|^{n/2})]
//!              · etr(-(x/2) Σ⁻¹) · ₁F₁((m+1)/2; (n+m+1)/2; (x/2) Σ⁻¹)
//! ```
//!
//! Because `C_κ((x/2)Σ⁻¹) = x^k C_κ(Σ⁻¹/2)`, the per-degree coefficients
//!
//! ```text
//! a_k = Σ_{κ ⊢ k} ((m+1)/2)_κ C_κ(Σ⁻¹/2) / (((n+m+1)/2)_κ k!)
//! ```
//!
//! depend only on `(n, Σ)`. One coefficient sweep therefore serves the CDF,
//! its term-by-term derivative (the PDF), and every evaluation point.

use super::CovarianceSpec;
use crate::combinatorics::log_multivariate_gamma;
use crate::error::{Error, Result};
use crate::hypergeom::{degree_term_single, HypergeomParams, SeriesWarning, TruncationPolicy};
use crate::numeric::LogVal;

/// Tail-to-value ratio above which a truncation warning is attached.
const TRUNCATION_WARN_REL: f64 = 1e-6;

/// A series value with its truncation diagnostics.
#[derive(Debug, Clone)]
pub struct SeriesValue {
    pub value: f64,
    /// Highest total series degree consumed.
    pub degree_used: u32,
    /// Estimated contribution of the final degree, in units of the value.
    pub tail_estimate: f64,
    /// Amount removed by clamping into the valid range (CDFs into [0,1],
    /// densities into [0, ∞)).
    pub clamped: f64,
    pub warnings: Vec<SeriesWarning>,
}

/// Degree coefficients of the exact largest-eigenvalue law for fixed
/// `(n, Σ)`.
pub struct LargestEigSeries {
    n: usize,
    m: usize,
    coeffs: Vec<LogVal>,
    log_norm: f64,
    inv_trace: f64,
    tail_tol: f64,
}

impl LargestEigSeries {
    pub fn new(n: usize, cov: &CovarianceSpec, trunc: &TruncationPolicy) -> Result<Self> {
        let m = cov.m();
        if n == 0 || m <= n {
            return Err(Error::Domain(format!(
                "exact law needs m > n >= 1, got m = {m}, n = {n}"
            )));
        }
        let nf = n as f64;
        let mf = m as f64;
        let params = HypergeomParams::confluent((mf + 1.0) / 2.0, (nf + mf + 1.0) / 2.0);
        let arg = cov.half_inverse_eigs();
        let scale = arg.iter().fold(0.0f64, |a, &x| a.max(x));
        let z: Vec<f64> = arg.iter().map(|&x| x / scale).collect();
        let log_scale = scale.ln();

        let mut coeffs = Vec::with_capacity(trunc.max_degree as usize + 1);
        for k in 0..=trunc.max_degree {
            let term = degree_term_single(&params, k, &z)?
                .scale_log(f64::from(k) * log_scale);
            coeffs.push(term);
        }

        let log_norm = log_multivariate_gamma(n, (nf + 1.0) / 2.0)?
            - log_multivariate_gamma(n, (nf + mf + 1.0) / 2.0)?
            - nf * mf / 2.0 * std::f64::consts::LN_2
            - nf / 2.0 * cov.log_det();

        Ok(LargestEigSeries {
            n,
            m,
            coeffs,
            log_norm,
            inv_trace: cov.inv_trace(),
            tail_tol: trunc.tail_tol,
        })
    }

    pub fn max_degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    /// Sums per-degree contributions with the shared stopping rule: two
    /// consecutive degrees below `tail_tol` relative to the running sum.
    fn sum_series<F: Fn(u32, LogVal) -> LogVal>(&self, term_at: F) -> (LogVal, u32, f64, bool) {
        let mut sum = LogVal::ZERO;
        let mut last_log = f64::NEG_INFINITY;
        let mut prev_log = f64::NEG_INFINITY;
        let mut grow_streak = 0u32;
        let mut diverging = false;
        let mut below = 0u32;
        let mut degree_used = 0u32;
        for (k, &a) in self.coeffs.iter().enumerate() {
            let k = k as u32;
            let term = term_at(k, a);
            sum = sum.add(term);
            degree_used = k;
            let log_c = if term.is_zero() { f64::NEG_INFINITY } else { term.log_abs };
            last_log = log_c;
            if k > 0 {
                if log_c > prev_log {
                    grow_streak += 1;
                    if grow_streak >= 5 {
                        diverging = true;
                    }
                } else {
                    grow_streak = 0;
                }
            }
            prev_log = log_c;
            if k > 0 && (term.is_zero() || log_c < self.tail_tol.ln() + sum.log_abs) {
                below += 1;
                if below >= 2 {
                    break;
                }
            } else {
                below = 0;
            }
        }
        let tail_rel = if sum.is_zero() {
            0.0
        } else {
            (last_log - sum.log_abs).exp()
        };
        (sum, degree_used, tail_rel, diverging)
    }

    /// `Pr(ℓ₁ < x)`, clamped into `[0, 1]`.
    pub fn cdf_at(&self, x: f64) -> Result<SeriesValue> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("exact CDF needs x > 0, got {x}")));
        }
        let log_x = x.ln();
        let (series, degree_used, tail_rel, diverging) =
            self.sum_series(|k, a| a.scale_log(f64::from(k) * log_x));
        let mn_half = (self.m * self.n) as f64 / 2.0;
        let log_value = self.log_norm + mn_half * log_x - x / 2.0 * self.inv_trace;
        let raw = series.scale_log(log_value).to_f64();
        let value = raw.clamp(0.0, 1.0);
        Ok(self.finish(value, raw, degree_used, tail_rel, diverging))
    }

    /// Density of `ℓ₁` at `x`: the term-by-term derivative of the CDF
    /// series, clamped below at 0.
    pub fn pdf_at(&self, x: f64) -> Result<SeriesValue> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("exact PDF needs x > 0, got {x}")));
        }
        let log_x = x.ln();
        let mn_half = (self.m * self.n) as f64 / 2.0;
        let half_trace = self.inv_trace / 2.0;
        // d/dx [x^{mn/2 + k} e^{-x tr/2}] / (x^{mn/2} e^{-x tr/2})
        //   = x^{k-1} [(mn/2 + k) - x tr/2]
        let (series, degree_used, tail_rel, diverging) = self.sum_series(|k, a| {
            let bracket = LogVal::from_f64(mn_half + f64::from(k) - x * half_trace);
            a.scale_log((f64::from(k) - 1.0) * log_x).mul(bracket)
        });
        let log_value = self.log_norm + mn_half * log_x - x / 2.0 * self.inv_trace;
        let raw = series.scale_log(log_value).to_f64();
        let value = raw.max(0.0);
        Ok(self.finish(value, raw, degree_used, tail_rel, diverging))
    }

    fn finish(
        &self,
        value: f64,
        raw: f64,
        degree_used: u32,
        tail_rel: f64,
        diverging: bool,
    ) -> SeriesValue {
        let mut warnings = Vec::new();
        if diverging {
            warnings.push(SeriesWarning::Divergence {
                at_degree: degree_used,
            });
        }
        if tail_rel > TRUNCATION_WARN_REL {
            warnings.push(SeriesWarning::Truncation { tail_rel });
        }
        SeriesValue {
            value,
            degree_used,
            tail_estimate: tail_rel * value.abs(),
            clamped: raw - value,
            warnings,
        }
    }
}

/// One-shot exact CDF evaluation; build a [`LargestEigSeries`] to amortize
/// the coefficient sweep over many points.
pub fn largest_eig_cdf_exact(
    x: f64,
    n: usize,
    cov: &CovarianceSpec,
    trunc: &TruncationPolicy,
) -> Result<SeriesValue> {
    LargestEigSeries::new(n, cov, trunc)?.cdf_at(x)
}

/// One-shot exact PDF evaluation.
pub fn largest_eig_pdf_exact(
    x: f64,
    n: usize,
    cov: &CovarianceSpec,
    trunc: &TruncationPolicy,
) -> Result<SeriesValue> {
    LargestEigSeries::new(n, cov, trunc)?.pdf_at(x)
}
