//! Log-space arithmetic with sign tracking, plus a small adaptive quadrature.
//!
//! Series terms in this crate routinely overflow `f64` (powers like
//! `(x/2)^{mn/2}` do so already for moderate `x`), so sums are accumulated as
//! signed magnitudes in log space and only exponentiated at the very end.

/// A real number stored as `sign * exp(log_abs)`.
///
/// `sign == 0` encodes exact zero and `log_abs` is then ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogVal {
    pub sign: i8,
    pub log_abs: f64,
}

impl LogVal {
    pub const ZERO: LogVal = LogVal {
        sign: 0,
        log_abs: f64::NEG_INFINITY,
    };

    pub const ONE: LogVal = LogVal {
        sign: 1,
        log_abs: 0.0,
    };

    pub fn new(sign: i8, log_abs: f64) -> Self {
        if sign == 0 || log_abs == f64::NEG_INFINITY {
            LogVal::ZERO
        } else {
            LogVal { sign, log_abs }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            LogVal::ZERO
        } else {
            LogVal {
                sign: if x > 0.0 { 1 } else { -1 },
                log_abs: x.abs().ln(),
            }
        }
    }

    /// `exp(log_abs) * sign`; may overflow to infinity for huge magnitudes.
    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.log_abs.exp(),
        }
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn abs(self) -> LogVal {
        LogVal::new(self.sign.abs(), self.log_abs)
    }

    pub fn neg(self) -> LogVal {
        LogVal::new(-self.sign, self.log_abs)
    }

    pub fn mul(self, other: LogVal) -> LogVal {
        LogVal::new(self.sign * other.sign, self.log_abs + other.log_abs)
    }

    pub fn div(self, other: LogVal) -> LogVal {
        debug_assert!(other.sign != 0, "division by log-space zero");
        LogVal::new(self.sign * other.sign, self.log_abs - other.log_abs)
    }

    /// Multiply by `exp(log_factor)` (a positive factor given in log space).
    pub fn scale_log(self, log_factor: f64) -> LogVal {
        LogVal::new(self.sign, self.log_abs + log_factor)
    }

    /// Signed addition via log-sum-exp.
    pub fn add(self, other: LogVal) -> LogVal {
        if self.sign == 0 {
            return other;
        }
        if other.sign == 0 {
            return self;
        }
        let (big, small) = if self.log_abs >= other.log_abs {
            (self, other)
        } else {
            (other, self)
        };
        let d = small.log_abs - big.log_abs; // <= 0
        if self.sign == other.sign {
            LogVal::new(big.sign, big.log_abs + d.exp().ln_1p())
        } else {
            let r = 1.0 - d.exp();
            if r <= 0.0 {
                // exact cancellation (equal magnitudes, opposite signs)
                LogVal::ZERO
            } else {
                LogVal::new(big.sign, big.log_abs + r.ln())
            }
        }
    }

    pub fn sub(self, other: LogVal) -> LogVal {
        self.add(other.neg())
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` with absolute tolerance
/// `tol`. Used by density-normalization checks and the quantile of nothing in
/// particular; accuracy is driven by interval bisection, not by smoothness
/// assumptions beyond continuity.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }

    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn logval_roundtrip_and_arithmetic() {
        let a = LogVal::from_f64(3.5);
        let b = LogVal::from_f64(-1.25);
        assert_relative_eq!(a.add(b).to_f64(), 2.25, max_relative = 1e-14);
        assert_relative_eq!(a.mul(b).to_f64(), -4.375, max_relative = 1e-14);
        assert_relative_eq!(a.sub(b).to_f64(), 4.75, max_relative = 1e-14);
        assert_eq!(LogVal::from_f64(0.0).add(LogVal::ZERO), LogVal::ZERO);
        assert_eq!(a.add(a.neg()), LogVal::ZERO);
    }

    #[test]
    fn logval_handles_huge_magnitudes() {
        // exp(1000) overflows f64; the log-space sum must not.
        let big = LogVal::new(1, 1000.0);
        let sum = big.add(big);
        assert_relative_eq!(sum.log_abs, 1000.0 + std::f64::consts::LN_2);
        assert_eq!(sum.sign, 1);
    }

    #[test]
    fn simpson_integrates_smooth_functions() {
        let v = integrate(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-10);
        assert_relative_eq!(v, 2.0, epsilon = 1e-9);
        let g = integrate(&|x: f64| (-x * x / 2.0).exp(), -8.0, 8.0, 1e-10);
        assert_relative_eq!(g, (2.0 * std::f64::consts::PI).sqrt(), epsilon = 1e-8);
    }
}
