//! Partitions, partition-indexed Pochhammer symbols, the multivariate gamma
//! function, and zonal polynomials.

mod partition;
mod zonal;

pub use partition::{enumerate_partitions, Partition};
pub use zonal::{
    global_cache, monomial_eval, zonal_eval, zonal_expansion, zonal_unit, ZonalCache,
    ZonalExpansion, ZonalTable, DEFAULT_MAX_WEIGHT,
};

use crate::error::{Error, Result};
use crate::numeric::LogVal;
use crate::special::ln_gamma;

/// Generalized Pochhammer symbol for a partition,
/// `(α)_κ = ∏_i {α - (i-1)/2}_{κ_i}` with `(α)_k = α(α+1)⋯(α+k-1)`.
///
/// The empty partition gives 1; negative and zero bases are allowed and may
/// produce a zero result.
pub fn pochhammer_partition(alpha: f64, kappa: &Partition) -> f64 {
    let mut prod = 1.0;
    for (i, &p) in kappa.parts().iter().enumerate() {
        let base = alpha - i as f64 / 2.0;
        for j in 0..p {
            prod *= base + f64::from(j);
        }
    }
    prod
}

/// Log-space, sign-tracked version of [`pochhammer_partition`] for series
/// assembly where magnitudes can exceed the float range.
pub fn log_pochhammer_partition(alpha: f64, kappa: &Partition) -> LogVal {
    let mut sign: i8 = 1;
    let mut log_abs = 0.0;
    for (i, &p) in kappa.parts().iter().enumerate() {
        let base = alpha - i as f64 / 2.0;
        if base > 0.0 && base + f64::from(p) > 0.0 {
            // all factors positive: a gamma ratio is cheaper and exact enough
            log_abs += ln_gamma(base + f64::from(p)) - ln_gamma(base);
            continue;
        }
        for j in 0..p {
            let factor = base + f64::from(j);
            if factor == 0.0 {
                return LogVal::ZERO;
            }
            if factor < 0.0 {
                sign = -sign;
            }
            log_abs += factor.abs().ln();
        }
    }
    LogVal::new(sign, log_abs)
}

/// `log Γ_m(a)` with `Γ_m(a) = π^{m(m-1)/4} ∏_{i=1}^m Γ(a - (i-1)/2)`.
///
/// Errors when any scalar gamma argument is non-positive.
pub fn log_multivariate_gamma(m: usize, a: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::Domain("multivariate gamma needs m >= 1".into()));
    }
    let mut log = (m * (m - 1)) as f64 / 4.0 * std::f64::consts::PI.ln();
    for i in 0..m {
        let arg = a - i as f64 / 2.0;
        if arg <= 0.0 {
            return Err(Error::Domain(format!(
                "multivariate gamma undefined: a - (i-1)/2 = {arg} for i = {}",
                i + 1
            )));
        }
        log += ln_gamma(arg);
    }
    Ok(log)
}
