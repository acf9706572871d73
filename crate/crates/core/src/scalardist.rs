//! Chi-square and F distributions: densities, CDFs and quantiles.
//!
//! CDFs go through the regularized incomplete gamma/beta functions; quantiles
//! invert the CDF with a bracketed Newton iteration (bisection fallback)
//! seeded by the Wilson–Hilferty transform, converging to `|cdf(q) - p| <=
//! 1e-12`.

use crate::error::{Error, Result};
use crate::special::{beta_inc, gamma_p, inv_std_normal, ln_gamma};

const QUANTILE_TOL: f64 = 1e-12;
const MAX_NEWTON: usize = 200;

/// Chi-square distribution with (possibly fractional) positive degrees of
/// freedom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    dof: f64,
}

impl ChiSquare {
    pub fn new(dof: f64) -> Result<Self> {
        if !(dof > 0.0) || !dof.is_finite() {
            return Err(Error::Domain(format!(
                "chi-square degrees of freedom must be positive, got {dof}"
            )));
        }
        Ok(ChiSquare { dof })
    }

    pub fn dof(&self) -> f64 {
        self.dof
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return Err(Error::Domain(format!("chi-square pdf needs x >= 0, got {x}")));
        }
        let h = self.dof / 2.0;
        if x == 0.0 {
            return Ok(match self.dof {
                d if d < 2.0 => f64::INFINITY,
                d if d == 2.0 => 0.5,
                _ => 0.0,
            });
        }
        Ok(((h - 1.0) * x.ln() - x / 2.0 - h * std::f64::consts::LN_2 - ln_gamma(h)).exp())
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return Err(Error::Domain(format!("chi-square cdf needs x >= 0, got {x}")));
        }
        gamma_p(self.dof / 2.0, x / 2.0)
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        check_prob(p)?;
        // Wilson–Hilferty start
        let d = self.dof;
        let z = inv_std_normal(p);
        let c = 2.0 / (9.0 * d);
        let mut guess = d * (1.0 - c + z * c.sqrt()).powi(3);
        if !guess.is_finite() || guess <= 0.0 {
            guess = d;
        }
        invert_cdf(p, guess, &|x| self.cdf(x), &|x| self.pdf(x))
    }
}

/// F distribution with positive numerator/denominator degrees of freedom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FDist {
    dof1: f64,
    dof2: f64,
}

impl FDist {
    pub fn new(dof1: f64, dof2: f64) -> Result<Self> {
        if !(dof1 > 0.0 && dof2 > 0.0) || !dof1.is_finite() || !dof2.is_finite() {
            return Err(Error::Domain(format!(
                "F degrees of freedom must be positive, got ({dof1}, {dof2})"
            )));
        }
        Ok(FDist { dof1, dof2 })
    }

    pub fn dof(&self) -> (f64, f64) {
        (self.dof1, self.dof2)
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return Err(Error::Domain(format!("F pdf needs x >= 0, got {x}")));
        }
        let (a, b) = (self.dof1 / 2.0, self.dof2 / 2.0);
        if x == 0.0 {
            return Ok(match self.dof1 {
                d if d < 2.0 => f64::INFINITY,
                d if d == 2.0 => 1.0,
                _ => 0.0,
            });
        }
        let ln_beta = ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
        let log = a * (self.dof1 / self.dof2).ln() + (a - 1.0) * x.ln()
            - (a + b) * (1.0 + self.dof1 * x / self.dof2).ln()
            - ln_beta;
        Ok(log.exp())
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return Err(Error::Domain(format!("F cdf needs x >= 0, got {x}")));
        }
        let t = self.dof1 * x / (self.dof1 * x + self.dof2);
        beta_inc(self.dof1 / 2.0, self.dof2 / 2.0, t)
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        check_prob(p)?;
        // seed from the chi-square quantile ratio
        let q1 = ChiSquare::new(self.dof1)?.quantile(p.max(0.05).min(0.95))?;
        let q2 = ChiSquare::new(self.dof2)?.quantile((1.0 - p).max(0.05).min(0.95))?;
        let mut guess = (q1 / self.dof1) / (q2 / self.dof2);
        if !guess.is_finite() || guess <= 0.0 {
            guess = 1.0;
        }
        invert_cdf(p, guess, &|x| self.cdf(x), &|x| self.pdf(x))
    }
}

fn check_prob(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "probability must lie strictly in (0, 1), got {p}"
        )));
    }
    Ok(())
}

/// Bracketed Newton with bisection fallback on a monotone CDF over (0, ∞).
fn invert_cdf(
    p: f64,
    guess: f64,
    cdf: &dyn Fn(f64) -> Result<f64>,
    pdf: &dyn Fn(f64) -> Result<f64>,
) -> Result<f64> {
    let mut lo = 0.0f64;
    let mut hi = guess.max(1e-8);
    // expand upper bracket until it encloses p
    for _ in 0..200 {
        if cdf(hi)? >= p {
            break;
        }
        lo = hi;
        hi *= 2.0;
    }
    let mut x = guess.clamp(lo + 0.25 * (hi - lo), hi);
    for _ in 0..MAX_NEWTON {
        let f = cdf(x)? - p;
        if f.abs() <= QUANTILE_TOL {
            return Ok(x);
        }
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let d = pdf(x)?;
        let newton = if d > 0.0 && d.is_finite() {
            x - f / d
        } else {
            f64::NAN
        };
        x = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn chisq_quantiles_for_ten_and_nine_dof() {
        let c10 = ChiSquare::new(10.0).unwrap();
        let c9 = ChiSquare::new(9.0).unwrap();
        assert_relative_eq!(c10.quantile(0.99).unwrap(), 23.2093, epsilon = 5e-4);
        assert_relative_eq!(c9.quantile(0.99).unwrap(), 21.666, epsilon = 5e-4);
        assert_relative_eq!(c9.quantile(0.05).unwrap(), 3.32511, epsilon = 5e-4);
    }

    #[test]
    fn chisq_two_dof_is_exponential() {
        let c2 = ChiSquare::new(2.0).unwrap();
        assert_relative_eq!(
            c2.quantile(0.5).unwrap(),
            2.0 * std::f64::consts::LN_2,
            epsilon = 1e-11
        );
        assert_relative_eq!(c2.cdf(3.0).unwrap(), 1.0 - (-1.5f64).exp(), epsilon = 1e-13);
    }

    #[test]
    fn chisq_round_trip() {
        for d in 1..=30u32 {
            let c = ChiSquare::new(f64::from(d)).unwrap();
            for &p in &[0.05, 0.5, 0.9, 0.95, 0.99] {
                let q = c.quantile(p).unwrap();
                assert_relative_eq!(c.cdf(q).unwrap(), p, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn chisq_pdf_integrates_to_one() {
        for &d in &[1.0, 2.0, 5.0, 10.0] {
            let c = ChiSquare::new(d).unwrap();
            let hi = c.quantile(1.0 - 1e-12).unwrap();
            // avoid the integrable singularity at 0 for d = 1
            let lo = if d < 2.0 { 1e-12 } else { 0.0 };
            let mass = crate::numeric::integrate(&|x| c.pdf(x).unwrap(), lo, hi, 1e-10);
            assert_relative_eq!(mass, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn f_symmetry_identities() {
        for &d in &[1.0, 4.0, 7.0, 16.0] {
            let f = FDist::new(d, d).unwrap();
            assert_relative_eq!(f.cdf(1.0).unwrap(), 0.5, epsilon = 1e-12);
        }
        let f77 = FDist::new(7.0, 7.0).unwrap();
        assert_relative_eq!(f77.quantile(0.5).unwrap(), 1.0, epsilon = 1e-9);
        // reciprocal identity at x = 2, dof (10, 9)
        let f_ab = FDist::new(10.0, 9.0).unwrap();
        let f_ba = FDist::new(9.0, 10.0).unwrap();
        assert_relative_eq!(
            f_ab.cdf(2.0).unwrap(),
            1.0 - f_ba.cdf(0.5).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn f_round_trip() {
        for &(d1, d2) in &[(1.0, 1.0), (3.0, 8.0), (10.0, 10.0), (24.0, 2.0)] {
            let f = FDist::new(d1, d2).unwrap();
            for &p in &[0.05, 0.5, 0.9, 0.95, 0.99] {
                let q = f.quantile(p).unwrap();
                assert_relative_eq!(f.cdf(q).unwrap(), p, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(ChiSquare::new(0.0).is_err());
        assert!(ChiSquare::new(3.0).unwrap().cdf(-1.0).is_err());
        assert!(ChiSquare::new(3.0).unwrap().quantile(0.0).is_err());
        assert!(FDist::new(1.0, 0.0).is_err());
        assert!(FDist::new(2.0, 2.0).unwrap().quantile(1.0).is_err());
    }
}
