//! Nonnegative reals stored by their natural logarithm.
//!
//! Bound formulas involve powers like `(sin θ)^(12m)` that leave the `f64`
//! range long before the final quantities become meaningless, so the whole
//! chain is evaluated in log space.

use core::cmp::Ordering;
use core::f64::consts::{LN_10, LN_2};
use core::fmt;
use core::ops::{Add, Div, Mul};

/// A nonnegative real `exp(ln)`; zero is `ln = -inf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogReal {
    ln: f64,
}

impl LogReal {
    pub const ZERO: LogReal = LogReal { ln: f64::NEG_INFINITY };
    pub const ONE: LogReal = LogReal { ln: 0.0 };

    /// `None` for negative or NaN input.
    pub fn new(value: f64) -> Option<Self> {
        (value >= 0.0).then(|| LogReal { ln: libm::log(value) })
    }

    pub fn from_ln(ln: f64) -> Self {
        LogReal { ln }
    }

    pub fn from_count(count: u64) -> Self {
        LogReal { ln: libm::log(count as f64) }
    }

    pub fn ln(self) -> f64 {
        self.ln
    }

    pub fn log10(self) -> f64 {
        self.ln / LN_10
    }

    pub fn is_zero(self) -> bool {
        self.ln == f64::NEG_INFINITY
    }

    /// The value as an `f64`, or `None` if it over- or underflows a normal float.
    pub fn to_f64(self) -> Option<f64> {
        if self.is_zero() {
            return Some(0.0);
        }
        let v = libm::exp(self.ln);
        (v.is_finite() && v >= f64::MIN_POSITIVE).then_some(v)
    }

    /// `(mantissa, exponent)` with `value = mantissa * 10^exponent` and `1 <= mantissa < 10`.
    pub fn mantissa_exp10(self) -> (f64, i64) {
        if self.is_zero() {
            return (0.0, 0);
        }
        let l = self.log10();
        let mut exponent = libm::floor(l);
        let mut mantissa = libm::pow(10.0, l - exponent);
        if mantissa >= 10.0 {
            mantissa /= 10.0;
            exponent += 1.0;
        }
        (mantissa, exponent as i64)
    }

    pub fn powf(self, exponent: f64) -> Self {
        if exponent == 0.0 {
            return LogReal::ONE;
        }
        LogReal { ln: self.ln * exponent }
    }

    pub fn sqrt(self) -> Self {
        self.powf(0.5)
    }

    /// `self - other` for `self >= other`; `None` otherwise.
    pub fn checked_sub(self, other: Self) -> Option<Self> {
        if other.is_zero() {
            return Some(self);
        }
        let gap = other.ln - self.ln;
        if gap > 0.0 {
            return None;
        }
        Some(LogReal { ln: self.ln + libm::log1p(-libm::exp(gap)) })
    }
}

impl Mul for LogReal {
    type Output = LogReal;
    fn mul(self, rhs: LogReal) -> LogReal {
        if self.is_zero() || rhs.is_zero() {
            return LogReal::ZERO;
        }
        LogReal { ln: self.ln + rhs.ln }
    }
}

impl Div for LogReal {
    type Output = LogReal;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: LogReal) -> LogReal {
        if self.is_zero() {
            return LogReal::ZERO;
        }
        LogReal { ln: self.ln - rhs.ln }
    }
}

impl Add for LogReal {
    type Output = LogReal;
    fn add(self, rhs: LogReal) -> LogReal {
        let (hi, lo) = if self.ln >= rhs.ln { (self, rhs) } else { (rhs, self) };
        if lo.is_zero() {
            return hi;
        }
        LogReal { ln: hi.ln + libm::log1p(libm::exp(lo.ln - hi.ln)) }
    }
}

impl PartialOrd for LogReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.ln.partial_cmp(&other.ln)
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (mantissa, exponent) = self.mantissa_exp10();
        write!(f, "{mantissa:.6}e{exponent}")
    }
}

/// Below this the leading terms of the Taylor series are exact to double precision.
const SERIES_CUTOFF: f64 = 1e-3;

/// `asinh(x)`.
pub fn asinh(x: LogReal) -> LogReal {
    if x.is_zero() {
        return x;
    }
    if x.ln < libm::log(SERIES_CUTOFF) {
        let x2 = libm::exp(2.0 * x.ln);
        return LogReal::from_ln(x.ln + libm::log1p(x2 * (-1.0 / 6.0 + x2 * 3.0 / 40.0)));
    }
    if x.ln > 300.0 {
        // asinh(x) = ln(2x) + O(1/x^2)
        return LogReal::from_ln(libm::log(x.ln + LN_2));
    }
    LogReal::from_ln(libm::log(libm::asinh(libm::exp(x.ln))))
}

/// `sinh(x)`.
pub fn sinh(x: LogReal) -> LogReal {
    if x.is_zero() {
        return x;
    }
    if x.ln < libm::log(SERIES_CUTOFF) {
        let x2 = libm::exp(2.0 * x.ln);
        return LogReal::from_ln(x.ln + libm::log1p(x2 * (1.0 / 6.0 + x2 / 120.0)));
    }
    let t = libm::exp(x.ln);
    if t > 40.0 {
        return LogReal::from_ln(t - LN_2 + libm::log1p(-libm::exp(-2.0 * t)));
    }
    LogReal::from_ln(libm::log(libm::sinh(t)))
}

/// `sinh(x) - x`.
pub fn sinh_minus_identity(x: LogReal) -> LogReal {
    if x.is_zero() {
        return x;
    }
    if x.ln < libm::log(SERIES_CUTOFF) {
        let x2 = libm::exp(2.0 * x.ln);
        return LogReal::from_ln(3.0 * x.ln - libm::log(6.0) + libm::log1p(x2 * (1.0 / 20.0 + x2 / 840.0)));
    }
    let t = libm::exp(x.ln);
    if t > 40.0 {
        return LogReal::from_ln(t - LN_2 + libm::log1p(-2.0 * t * libm::exp(-t) - libm::exp(-2.0 * t)));
    }
    LogReal::from_ln(libm::log(crate::volume::sinh_minus_identity(t)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: LogReal, b: f64, rel: f64) -> bool {
        (a.to_f64().unwrap() - b).abs() <= rel * b.abs()
    }

    #[test]
    fn arithmetic() {
        let two = LogReal::new(2.0).unwrap();
        let three = LogReal::new(3.0).unwrap();
        assert!(close(two + three, 5.0, 1e-15));
        assert!(close(two * three, 6.0, 1e-15));
        assert!(close(three / two, 1.5, 1e-15));
        assert!(close(three.checked_sub(two).unwrap(), 1.0, 1e-15));
        assert!(two.checked_sub(three).is_none());
        assert!(close(two.powf(10.0), 1024.0, 1e-14));
        assert_eq!(LogReal::ZERO + two, two);
        assert_eq!(LogReal::ZERO * two, LogReal::ZERO);
        assert!(LogReal::new(-1.0).is_none());
    }

    #[test]
    fn extreme_values() {
        let tiny = LogReal::from_ln(-2000.0);
        assert_eq!(tiny.to_f64(), None);
        let (mantissa, exponent) = tiny.mantissa_exp10();
        assert_eq!(exponent, -869);
        assert!((mantissa - libm::pow(10.0, -2000.0 / LN_10 + 869.0)).abs() < 1e-9);
        let (m, e) = LogReal::new(4.0e19).unwrap().mantissa_exp10();
        assert_eq!(e, 19);
        assert!((m - 4.0).abs() < 1e-12);
    }

    #[test]
    fn hyperbolic_functions_match_direct_evaluation() {
        for x in [1e-6, 1e-3, 0.01, 0.5, 1.0, 3.0, 30.0, 45.0] {
            let lx = LogReal::new(x).unwrap();
            assert!(close(sinh(lx), libm::sinh(x), 1e-13), "sinh {x}");
            assert!(close(asinh(lx), libm::asinh(x), 1e-13), "asinh {x}");
            let direct = crate::volume::sinh_minus_identity(x);
            assert!(close(sinh_minus_identity(lx), direct, 1e-12), "sinh - id {x}");
        }
        let tiny = LogReal::from_ln(-1000.0);
        assert!((asinh(tiny).ln() + 1000.0).abs() < 1e-15);
        assert!((sinh_minus_identity(tiny).ln() - (-3000.0 - libm::log(6.0))).abs() < 1e-12);
        let huge = LogReal::from_ln(1000.0);
        assert!((asinh(huge).ln() - libm::log(1000.0 + LN_2)).abs() < 1e-12);
    }
}
