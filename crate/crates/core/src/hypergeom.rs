//! Truncated hypergeometric functions of one and two matrix arguments.
//!
//! Series are evaluated degree-major: every partition of weight `k` is
//! consumed before weight `k + 1`, which makes the per-degree contribution
//! the natural unit for both the early-stopping heuristic and the reported
//! tail estimate. Terms are assembled in sign-tracked log space; the
//! eigenvalue argument is normalized to unit sup-norm and the scale restored
//! as `s^k` per degree, so zonal values never overflow along the way.
//!
//! The reported tail is the magnitude of the last evaluated degree — a
//! diagnostic, not a rigorous bound.

use crate::combinatorics::{global_cache, log_pochhammer_partition, Partition};
use crate::error::{Error, Result};
use crate::numeric::LogVal;
use crate::special::ln_gamma;

/// Truncation controls shared by every matrix-argument series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Inclusive bound on the total series degree.
    pub max_degree: u32,
    /// Stop once two consecutive degrees contribute less than
    /// `tail_tol × |running sum|`.
    pub tail_tol: f64,
    /// Retain per-degree contributions in the evaluation result.
    pub report_tail: bool,
}

impl TruncationPolicy {
    pub fn new(max_degree: u32, tail_tol: f64) -> Result<Self> {
        if tail_tol < 0.0 || !tail_tol.is_finite() {
            return Err(Error::Domain(format!(
                "tail tolerance must be finite and >= 0, got {tail_tol}"
            )));
        }
        Ok(TruncationPolicy {
            max_degree,
            tail_tol,
            report_tail: false,
        })
    }

    pub fn with_report_tail(mut self, report: bool) -> Self {
        self.report_tail = report;
        self
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            max_degree: 60,
            tail_tol: 1e-12,
            report_tail: false,
        }
    }
}

/// Numerator/denominator parameters `(α_1..α_p; β_1..β_q)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HypergeomParams {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
}

impl HypergeomParams {
    pub fn new(upper: Vec<f64>, lower: Vec<f64>) -> Self {
        HypergeomParams { upper, lower }
    }

    /// `₀F₀` — no parameters.
    pub fn zero_f_zero() -> Self {
        HypergeomParams::default()
    }

    /// `₁F₁(a; b; ·)`.
    pub fn confluent(a: f64, b: f64) -> Self {
        HypergeomParams {
            upper: vec![a],
            lower: vec![b],
        }
    }
}

/// Soft diagnostics attached to a series evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum SeriesWarning {
    /// Degree contributions grew for this many consecutive degrees.
    Divergence { at_degree: u32 },
    /// The final-degree contribution was large relative to the value.
    Truncation { tail_rel: f64 },
}

/// Result of a truncated series evaluation.
#[derive(Debug, Clone)]
pub struct HypEval {
    /// `sign * exp(log)` of the sum; may overflow to infinity for extreme
    /// arguments — `log_value` never does.
    pub value: f64,
    pub log_value: LogVal,
    /// Magnitude of the last evaluated degree's contribution.
    pub tail_estimate: f64,
    /// Same, in log space.
    pub log_tail: f64,
    /// Highest degree evaluated.
    pub degree_used: u32,
    /// Per-degree signed contributions (populated when `report_tail` is set).
    pub degrees: Option<Vec<f64>>,
    pub warnings: Vec<SeriesWarning>,
}

/// Sum over all partitions of weight `k` (at most `z.len()` parts) of
/// `∏(α)_κ / ∏(β)_κ · C_κ(z) / k!`.
///
/// This is the degree-`k` slice of the single-argument series; the caller is
/// responsible for any argument scaling.
pub(crate) fn degree_term_single(
    params: &HypergeomParams,
    k: u32,
    z: &[f64],
) -> Result<LogVal> {
    if k == 0 {
        return Ok(LogVal::ONE);
    }
    let m = z.len();
    let table = global_cache().table(k, m.min(k as usize))?;
    let monomials = table.monomial_values(z);
    let log_kfact = ln_gamma(f64::from(k) + 1.0);
    let mut total = LogVal::ZERO;
    for (idx, kappa) in table.partitions().iter().enumerate() {
        let w = pochhammer_weight(params, kappa)?;
        if w.is_zero() {
            continue;
        }
        let c = table.eval_row_with(idx, &monomials);
        if c == 0.0 {
            continue;
        }
        let term = w.mul(LogVal::from_f64(c)).scale_log(-log_kfact);
        total = total.add(term);
    }
    Ok(total)
}

fn pochhammer_weight(params: &HypergeomParams, kappa: &Partition) -> Result<LogVal> {
    let mut w = LogVal::ONE;
    for &a in &params.upper {
        w = w.mul(log_pochhammer_partition(a, kappa));
        if w.is_zero() {
            return Ok(LogVal::ZERO);
        }
    }
    for &b in &params.lower {
        let denom = log_pochhammer_partition(b, kappa);
        if denom.is_zero() {
            return Err(Error::Parameter(format!(
                "lower parameter {b} annihilates the Pochhammer symbol at partition {kappa}"
            )));
        }
        w = w.div(denom);
    }
    Ok(w)
}

struct SeriesAccumulator {
    trunc: TruncationPolicy,
    sum: LogVal,
    prev_log: f64,
    grow_streak: u32,
    below_tol_streak: u32,
    last_log: f64,
    degree_used: u32,
    degrees: Option<Vec<f64>>,
    warnings: Vec<SeriesWarning>,
}

impl SeriesAccumulator {
    fn new(trunc: TruncationPolicy) -> Self {
        SeriesAccumulator {
            trunc,
            sum: LogVal::ZERO,
            prev_log: f64::NEG_INFINITY,
            grow_streak: 0,
            below_tol_streak: 0,
            last_log: f64::NEG_INFINITY,
            degree_used: 0,
            degrees: if trunc.report_tail { Some(Vec::new()) } else { None },
            warnings: Vec::new(),
        }
    }

    /// Returns `true` when the series should stop after this degree.
    fn push(&mut self, k: u32, contribution: LogVal) -> bool {
        self.sum = self.sum.add(contribution);
        self.degree_used = k;
        let log_c = if contribution.is_zero() {
            f64::NEG_INFINITY
        } else {
            contribution.log_abs
        };
        self.last_log = log_c;
        if let Some(d) = &mut self.degrees {
            d.push(contribution.to_f64());
        }
        if k > 0 {
            if log_c > self.prev_log {
                self.grow_streak += 1;
                if self.grow_streak == 5 {
                    self.warnings.push(SeriesWarning::Divergence { at_degree: k });
                }
            } else {
                self.grow_streak = 0;
            }
        }
        self.prev_log = log_c;

        let threshold = self.trunc.tail_tol.ln() + self.sum.log_abs;
        if k > 0 && (contribution.is_zero() || log_c < threshold) {
            self.below_tol_streak += 1;
        } else {
            self.below_tol_streak = 0;
        }
        self.below_tol_streak >= 2
    }

    fn finish(self) -> HypEval {
        HypEval {
            value: self.sum.to_f64(),
            log_value: self.sum,
            tail_estimate: self.last_log.exp(),
            log_tail: self.last_log,
            degree_used: self.degree_used,
            degrees: self.degrees,
            warnings: self.warnings,
        }
    }
}

fn check_finite(eigs: &[f64], what: &str) -> Result<()> {
    if eigs.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain(format!("{what} must be finite, got {eigs:?}")));
    }
    Ok(())
}

/// `ₚF_q(α; β; A)` truncated per `trunc`, with `A` given by its eigenvalues.
pub fn hyp_single(
    params: &HypergeomParams,
    eigs: &[f64],
    trunc: &TruncationPolicy,
) -> Result<HypEval> {
    check_finite(eigs, "eigenvalues")?;
    let scale = eigs.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let mut acc = SeriesAccumulator::new(*trunc);
    if scale == 0.0 || eigs.is_empty() {
        acc.push(0, LogVal::ONE);
        return Ok(acc.finish());
    }
    let z: Vec<f64> = eigs.iter().map(|&x| x / scale).collect();
    let log_scale = scale.ln();
    for k in 0..=trunc.max_degree {
        let term = degree_term_single(params, k, &z)?
            .scale_log(f64::from(k) * log_scale);
        if acc.push(k, term) {
            break;
        }
    }
    Ok(acc.finish())
}

/// `ₚF_q(α; β; A, B)` of two matrix arguments: the single-argument series
/// with each term carrying `C_κ(A) C_κ(B) / C_κ(I_m)`.
pub fn hyp_double(
    params: &HypergeomParams,
    eigs_a: &[f64],
    eigs_b: &[f64],
    trunc: &TruncationPolicy,
) -> Result<HypEval> {
    if eigs_a.len() != eigs_b.len() {
        return Err(Error::Domain(format!(
            "matrix arguments must share a dimension, got {} and {}",
            eigs_a.len(),
            eigs_b.len()
        )));
    }
    check_finite(eigs_a, "eigenvalues")?;
    check_finite(eigs_b, "eigenvalues")?;
    let m = eigs_a.len();
    let scale_a = eigs_a.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let scale_b = eigs_b.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let mut acc = SeriesAccumulator::new(*trunc);
    if scale_a == 0.0 || scale_b == 0.0 || m == 0 {
        acc.push(0, LogVal::ONE);
        return Ok(acc.finish());
    }
    let za: Vec<f64> = eigs_a.iter().map(|&x| x / scale_a).collect();
    let zb: Vec<f64> = eigs_b.iter().map(|&x| x / scale_b).collect();
    let ones = vec![1.0; m];
    let log_scales = scale_a.ln() + scale_b.ln();

    for k in 0..=trunc.max_degree {
        let term = if k == 0 {
            LogVal::ONE
        } else {
            let table = global_cache().table(k, m.min(k as usize))?;
            let mono_a = table.monomial_values(&za);
            let mono_b = table.monomial_values(&zb);
            let mono_unit = table.monomial_values(&ones);
            let log_kfact = ln_gamma(f64::from(k) + 1.0);
            let mut total = LogVal::ZERO;
            for (idx, kappa) in table.partitions().iter().enumerate() {
                let w = pochhammer_weight(params, kappa)?;
                if w.is_zero() {
                    continue;
                }
                let ca = table.eval_row_with(idx, &mono_a);
                let cb = table.eval_row_with(idx, &mono_b);
                if ca == 0.0 || cb == 0.0 {
                    continue;
                }
                // same-route denominator so that B = I collapses exactly
                let cu = table.eval_row_with(idx, &mono_unit);
                let term = w
                    .mul(LogVal::from_f64(ca))
                    .mul(LogVal::from_f64(cb))
                    .div(LogVal::from_f64(cu))
                    .scale_log(-log_kfact);
                total = total.add(term);
            }
            // the unit-scale factor for B's normalization cancels against
            // C_κ(I); only the raw scales of A and B remain
            total.scale_log(f64::from(k) * log_scales)
        };
        if acc.push(k, term) {
            break;
        }
    }
    Ok(acc.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn policy(k: u32) -> TruncationPolicy {
        TruncationPolicy::new(k, 0.0).unwrap()
    }

    #[test]
    fn zero_f_zero_at_zero_matrix() {
        let params = HypergeomParams::zero_f_zero();
        let eval = hyp_single(&params, &[0.0, 0.0, 0.0], &TruncationPolicy::default()).unwrap();
        assert_eq!(eval.value, 1.0);
        assert_eq!(eval.degree_used, 0);
    }

    #[test]
    fn zero_f_zero_is_exp_of_trace() {
        let params = HypergeomParams::zero_f_zero();
        let eval = hyp_single(&params, &[0.1, 0.2], &policy(30)).unwrap();
        assert_relative_eq!(eval.value, 0.3f64.exp(), max_relative = 1e-10);
        // negative and mixed arguments
        let eval = hyp_single(&params, &[-0.4, 0.25, 0.9], &policy(40)).unwrap();
        assert_relative_eq!(eval.value, 0.75f64.exp(), max_relative = 1e-9);
    }

    #[test]
    fn confluent_with_equal_parameters_collapses_to_exp() {
        let params = HypergeomParams::confluent(2.5, 2.5);
        let eval = hyp_single(&params, &[0.4, 0.1], &policy(30)).unwrap();
        assert_relative_eq!(eval.value, 0.5f64.exp(), max_relative = 1e-10);
        // term-by-term identical to 0F0
        let zf = hyp_single(
            &HypergeomParams::zero_f_zero(),
            &[0.4, 0.1],
            &policy(30).with_report_tail(true),
        )
        .unwrap();
        let cf = hyp_single(&params, &[0.4, 0.1], &policy(30).with_report_tail(true)).unwrap();
        assert_eq!(zf.degrees.unwrap(), cf.degrees.unwrap());
    }

    #[test]
    fn double_argument_specializations() {
        let params = HypergeomParams::zero_f_zero();
        // B = 0 leaves only the empty partition
        let eval = hyp_double(&params, &[0.7, 0.2], &[0.0, 0.0], &policy(25)).unwrap();
        assert_eq!(eval.value, 1.0);
        // B = I collapses to the single-argument series, term by term
        let a = [0.9, 0.35];
        let double = hyp_double(&params, &a, &[1.0, 1.0], &policy(25).with_report_tail(true))
            .unwrap();
        let single = hyp_single(&params, &a, &policy(25).with_report_tail(true)).unwrap();
        assert_eq!(double.degrees.unwrap(), single.degrees.unwrap());
        assert_eq!(double.value, single.value);
    }

    #[test]
    fn mismatched_dimensions_rejected() {
        let params = HypergeomParams::zero_f_zero();
        assert!(hyp_double(&params, &[1.0], &[1.0, 2.0], &policy(5)).is_err());
    }

    #[test]
    fn vanishing_lower_parameter_is_a_parameter_error() {
        // (1/2)_κ vanishes for κ = (1,1): (1/2)(1/2 - 1/2) = 0
        let params = HypergeomParams::confluent(2.0, 0.5);
        let err = hyp_single(&params, &[0.5, 0.5], &policy(10));
        assert!(matches!(err, Err(Error::Parameter(_))));
    }

    #[test]
    fn partial_sums_monotone_for_nonnegative_arguments() {
        let params = HypergeomParams::confluent(3.0, 4.5);
        let eigs = [0.8, 0.3, 0.1];
        let mut prev = 0.0;
        for k in 0..=20 {
            let v = hyp_single(&params, &eigs, &policy(k)).unwrap().value;
            assert!(
                v >= prev - 1e-12,
                "partial sum decreased at K={k}: {v} < {prev}"
            );
            prev = v;
        }
    }

    #[test]
    fn tail_tolerance_stops_early() {
        let params = HypergeomParams::zero_f_zero();
        let trunc = TruncationPolicy::new(60, 1e-10).unwrap();
        let eval = hyp_single(&params, &[0.2, 0.1], &trunc).unwrap();
        assert!(eval.degree_used < 60);
        assert_relative_eq!(eval.value, 0.3f64.exp(), max_relative = 1e-9);
    }

    #[test]
    fn divergence_warning_on_growing_terms() {
        // 2F0 diverges for any nonzero argument
        let params = HypergeomParams::new(vec![3.0, 4.0], vec![]);
        let eval = hyp_single(&params, &[2.5, 1.0], &policy(30)).unwrap();
        assert!(eval
            .warnings
            .iter()
            .any(|w| matches!(w, SeriesWarning::Divergence { .. })));
    }

    #[test]
    fn huge_arguments_stay_in_log_space() {
        let params = HypergeomParams::zero_f_zero();
        let eval = hyp_single(&params, &[400.0, 380.0], &policy(60)).unwrap();
        // value overflows f64 but the log does not; the series is truncated,
        // so only check that the log is finite and positive
        assert!(eval.log_value.log_abs > 0.0);
        assert!(eval.log_value.log_abs.is_finite());
    }
}
