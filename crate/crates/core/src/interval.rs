//! Closed intervals over binary64 endpoints with outward rounding.
//!
//! Every arithmetic operation first computes the round-to-nearest result and
//! then decides, from an error-free residual (TwoSum or an FMA remainder),
//! whether the exact value lies above or below it. Only the endpoint on the
//! wrong side of the exact value is moved by one ulp, so operations whose
//! result is representable stay exact. No floating-point environment state is
//! ever touched.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("interval endpoints out of order: [{lo}, {hi}]")]
    Inverted { lo: f64, hi: f64 },
    #[error("interval endpoint is NaN")]
    NaN,
    #[error("infinite endpoint is not accepted as input")]
    Infinite,
    #[error("division by an interval containing zero: {0}")]
    DivisionByZero(Interval),
    #[error("square root of an interval with negative lower endpoint: {0}")]
    NegativeSqrt(Interval),
    #[error("malformed decimal literal {0:?}")]
    Parse(String),
    #[error("decimal literal {0:?} is outside the binary64 range")]
    OutOfRange(String),
}

/// Below this magnitude the FMA residuals may themselves be rounded, so the
/// result is widened on both sides instead.
const TINY: f64 = 1.0e-270;

mod round {
    use super::TINY;

    fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
        let bb = s - a;
        (a - (s - bb)) + (b - bb)
    }

    pub fn add_down(a: f64, b: f64) -> f64 {
        let s = a + b;
        if s.is_nan() {
            return f64::NEG_INFINITY;
        }
        if s.is_infinite() {
            return if s > 0.0 && a.is_finite() && b.is_finite() { f64::MAX } else { s };
        }
        if two_sum_err(a, b, s) < 0.0 {
            s.next_down()
        } else {
            s
        }
    }

    pub fn add_up(a: f64, b: f64) -> f64 {
        -add_down(-a, -b)
    }

    /// Returns the sign of `exact - p` for the product `a * b`.
    fn mul_residual(a: f64, b: f64, p: f64) -> Option<f64> {
        if a == 0.0 || b == 0.0 {
            return Some(0.0);
        }
        if !p.is_finite() || p.abs() < TINY {
            return None;
        }
        Some(a.mul_add(b, -p))
    }

    pub fn mul_down(a: f64, b: f64) -> f64 {
        // 0 · ∞ = 0 in interval arithmetic.
        if a == 0.0 || b == 0.0 {
            return 0.0;
        }
        let p = a * b;
        if p.is_infinite() {
            return if p > 0.0 && a.is_finite() && b.is_finite() { f64::MAX } else { p };
        }
        match mul_residual(a, b, p) {
            Some(e) if e >= 0.0 => p,
            _ => p.next_down(),
        }
    }

    pub fn mul_up(a: f64, b: f64) -> f64 {
        -mul_down(-a, b)
    }

    fn div_residual(a: f64, b: f64, q: f64) -> Option<f64> {
        if a == 0.0 {
            return Some(0.0);
        }
        if !q.is_finite() || q.abs() < TINY || a.abs() < TINY {
            return None;
        }
        // a - q*b is exact here, and exact/b - q has the sign of r/b.
        let r = (-q).mul_add(b, a);
        Some(if b > 0.0 { r } else { -r })
    }

    pub fn div_down(a: f64, b: f64) -> f64 {
        let q = a / b;
        if q.is_nan() {
            return f64::NEG_INFINITY;
        }
        if q.is_infinite() {
            return if q > 0.0 && a.is_finite() { f64::MAX } else { q };
        }
        match div_residual(a, b, q) {
            Some(e) if e >= 0.0 => q,
            _ => q.next_down(),
        }
    }

    pub fn div_up(a: f64, b: f64) -> f64 {
        -div_down(-a, b)
    }

    pub fn sqrt_down(x: f64) -> f64 {
        let r = x.sqrt();
        if x == 0.0 || x.is_infinite() {
            return r;
        }
        if x < TINY {
            return r.next_down().max(0.0);
        }
        if (-r).mul_add(r, x) >= 0.0 {
            r
        } else {
            r.next_down()
        }
    }

    pub fn sqrt_up(x: f64) -> f64 {
        let r = x.sqrt();
        if x == 0.0 || x.is_infinite() {
            return r;
        }
        if x < TINY {
            return r.next_up();
        }
        if (-r).mul_add(r, x) <= 0.0 {
            r
        } else {
            r.next_up()
        }
    }
}

/// A nonempty closed interval `[lo, hi]`.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    /// The interval `[-1, 1]`.
    pub const UNIT: Interval = Interval { lo: -1.0, hi: 1.0 };

    /// Checked constructor for user-supplied endpoints.
    pub fn new(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if lo.is_nan() || hi.is_nan() {
            return Err(IntervalError::NaN);
        }
        if lo.is_infinite() || hi.is_infinite() {
            return Err(IntervalError::Infinite);
        }
        if lo > hi {
            return Err(IntervalError::Inverted { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// Builds an interval from endpoints produced internally.
    ///
    /// Panics if the endpoints are NaN or out of order.
    pub(crate) fn from_bounds(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "invalid interval bounds [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        assert!(!x.is_nan(), "NaN point interval");
        Interval { lo: x, hi: x }
    }

    /// Exact enclosure of an integer (exact for |n| <= 2^53).
    pub fn int(n: i64) -> Self {
        let x = n as f64;
        if x.abs() <= 9_007_199_254_740_992.0 {
            Interval::point(x)
        } else {
            Interval { lo: x.next_down(), hi: x.next_up() }
        }
    }

    /// `[-r, r]` for `r >= 0`.
    pub fn symmetric(r: f64) -> Self {
        let r = r.abs();
        Interval { lo: -r, hi: r }
    }

    /// Smallest interval containing the exact value of a decimal literal.
    pub fn from_decimal(text: &str) -> Result<Self, IntervalError> {
        let parsed = Decimal::parse(text)?;
        let x: f64 = text.trim().parse().map_err(|_| IntervalError::Parse(text.to_string()))?;
        if x.is_infinite() {
            return Err(IntervalError::OutOfRange(text.to_string()));
        }
        Ok(match parsed.cmp_f64(x) {
            Ordering::Equal => Interval::point(x),
            Ordering::Greater => Interval::from_bounds(x, x.next_up()),
            Ordering::Less => Interval::from_bounds(x.next_down(), x),
        })
    }

    /// Enclosure of 2π with width of one ulp.
    pub fn two_pi() -> Self {
        Interval::from_decimal("6.28318530717958647692528676655900576839433879875021").expect("valid literal")
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Largest absolute value in the interval (exact).
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value in the interval (exact).
    pub fn mig(&self) -> f64 {
        if self.contains_zero() {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> f64 {
        round::add_up(self.hi, -self.lo)
    }

    pub fn mid(&self) -> f64 {
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Upper bound on half the width.
    pub fn rad(&self) -> f64 {
        let m = self.mid();
        round::add_up(m, -self.lo).max(round::add_up(self.hi, -m))
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_subset(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// True iff every element of `self` is strictly below every element of
    /// `other`. This is the only comparison used to certify strict inequalities.
    pub fn strictly_less(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Enclosure of `{max(x, y)}`.
    pub fn max(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.max(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn abs(&self) -> Interval {
        Interval { lo: self.mig(), hi: self.mag() }
    }

    /// `{x^2}`; tighter than `self * self` when the interval spans zero.
    pub fn square(&self) -> Interval {
        let (a, b) = (self.mig(), self.mag());
        Interval { lo: round::mul_down(a, a), hi: round::mul_up(b, b) }
    }

    pub fn pow_int(&self, p: u32) -> Interval {
        if p == 0 {
            return Interval::ONE;
        }
        let base = self.abs();
        let mut acc = Interval::ONE;
        let mut sq = base;
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.square();
            }
        }
        // `acc` encloses |x|^p over `base`.
        if p.is_multiple_of(2) || self.lo >= 0.0 {
            acc
        } else if self.hi <= 0.0 {
            -acc
        } else {
            // Odd power of a sign-spanning interval: monotone increasing.
            let lo = -(Interval::point(-self.lo).pow_int(p).hi);
            let hi = Interval::point(self.hi).pow_int(p).hi;
            Interval { lo, hi }
        }
    }

    pub fn sqrt(&self) -> Result<Interval, IntervalError> {
        if self.lo < 0.0 {
            return Err(IntervalError::NegativeSqrt(*self));
        }
        Ok(Interval { lo: round::sqrt_down(self.lo), hi: round::sqrt_up(self.hi) })
    }

    pub fn recip(&self) -> Result<Interval, IntervalError> {
        Interval::ONE.checked_div(self)
    }

    pub fn checked_div(&self, other: &Interval) -> Result<Interval, IntervalError> {
        if other.contains_zero() {
            return Err(IntervalError::DivisionByZero(*other));
        }
        let candidates = [(self.lo, other.lo), (self.lo, other.hi), (self.hi, other.lo), (self.hi, other.hi)];
        let lo = candidates.iter().map(|&(a, b)| round::div_down(a, b)).fold(f64::INFINITY, f64::min);
        let hi = candidates.iter().map(|&(a, b)| round::div_up(a, b)).fold(f64::NEG_INFINITY, f64::max);
        Ok(Interval { lo, hi })
    }

    /// Division by a nonzero integer.
    pub fn div_int(&self, n: i64) -> Interval {
        self.checked_div(&Interval::int(n)).expect("nonzero divisor")
    }

    /// Scales the radius about the midpoint by `factor >= 1`, rounding outward.
    pub fn inflate(&self, factor: f64) -> Interval {
        let m = Interval::point(self.mid());
        let r = Interval::point(self.rad()) * Interval::point(factor);
        let lo = (m - r).lo.min(self.lo);
        let hi = (m + r).hi.max(self.hi);
        Interval { lo, hi }
    }
}

impl Default for Interval {
    fn default() -> Self {
        Interval::ZERO
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval { lo: round::add_down(self.lo, rhs.lo), hi: round::add_up(self.hi, rhs.hi) }
    }
}

impl AddAssign for Interval {
    fn add_assign(&mut self, rhs: Interval) {
        *self = *self + rhs;
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        self + (-rhs)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let candidates = [(self.lo, rhs.lo), (self.lo, rhs.hi), (self.hi, rhs.lo), (self.hi, rhs.hi)];
        let lo = candidates.iter().map(|&(a, b)| round::mul_down(a, b)).fold(f64::INFINITY, f64::min);
        let hi = candidates.iter().map(|&(a, b)| round::mul_up(a, b)).fold(f64::NEG_INFINITY, f64::max);
        Interval { lo, hi }
    }
}

/// Panics if the divisor contains zero; use [`Interval::checked_div`] for a checked
/// quotient.
impl Div for Interval {
    type Output = Interval;
    fn div(self, rhs: Interval) -> Interval {
        Interval::checked_div(&self, &rhs).expect("divisor must not contain zero")
    }
}

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::ZERO, |acc, x| acc + x)
    }
}

/// Exact decimal value `sign * digits * 10^exp10`.
struct Decimal {
    negative: bool,
    digits: BigUint,
    exp10: i64,
}

impl Decimal {
    const MAX_EXPONENT: i64 = 10_000;

    fn parse(text: &str) -> Result<Self, IntervalError> {
        let err = || IntervalError::Parse(text.to_string());
        let s = text.trim();
        let (negative, rest) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (mantissa, exponent) = match rest.find(['e', 'E']) {
            Some(pos) => (&rest[..pos], Some(&rest[pos + 1..])),
            None => (rest, None),
        };
        let (int_part, frac_part) = match mantissa.find('.') {
            Some(pos) => (&mantissa[..pos], &mantissa[pos + 1..]),
            None => (mantissa, ""),
        };
        let all_digits = |p: &str| p.bytes().all(|c| c.is_ascii_digit());
        if int_part.len() + frac_part.len() == 0 || !all_digits(int_part) || !all_digits(frac_part) {
            return Err(err());
        }
        let exp: i64 = match exponent {
            Some(e) => {
                let body = e.strip_prefix(['+', '-']).unwrap_or(e);
                if body.is_empty() || !all_digits(body) || body.len() > 6 {
                    return Err(err());
                }
                e.parse().map_err(|_| err())?
            }
            None => 0,
        };
        if exp.abs() > Self::MAX_EXPONENT {
            return Err(err());
        }
        let joined = format!("{int_part}{frac_part}");
        let digits = BigUint::parse_bytes(joined.as_bytes(), 10).ok_or_else(err)?;
        Ok(Decimal { negative, digits, exp10: exp - frac_part.len() as i64 })
    }

    /// Compares the exact decimal with a finite binary64 value.
    fn cmp_f64(&self, x: f64) -> Ordering {
        let self_zero = self.digits.is_zero();
        let self_sign = if self_zero {
            0
        } else if self.negative {
            -1
        } else {
            1
        };
        let x_sign = if x == 0.0 {
            0
        } else if x < 0.0 {
            -1
        } else {
            1
        };
        if self_sign != x_sign {
            return self_sign.cmp(&x_sign);
        }
        if self_sign == 0 {
            return Ordering::Equal;
        }
        let (mant, exp2) = decompose(x.abs());
        let ten = BigUint::from(10u32);
        let mut lhs = self.digits.clone();
        let mut rhs = BigUint::from(mant);
        if self.exp10 >= 0 {
            lhs *= ten.pow(self.exp10 as u32);
        } else {
            rhs *= ten.pow((-self.exp10) as u32);
        }
        if exp2 >= 0 {
            rhs <<= exp2 as usize;
        } else {
            lhs <<= (-exp2) as usize;
        }
        let magnitude = lhs.cmp(&rhs);
        if self_sign > 0 {
            magnitude
        } else {
            magnitude.reverse()
        }
    }
}

/// `x = mant * 2^exp` for finite positive `x`.
fn decompose(x: f64) -> (u64, i64) {
    let bits = x.to_bits();
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    }
}
