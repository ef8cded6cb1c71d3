//! Scalar abstraction for the numeric layer.
//!
//! Everything numeric in this crate is written against [`Real`], which is
//! implemented for `f64` (fast, 53 bits, handy in tests) and for
//! [`rug::Float`] (MPFR, arbitrary precision). Constructors take the target
//! precision in bits; `f64` ignores it.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rug::float::{Constant, Round};
use rug::integer::Order;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

pub trait Real:
    Clone
    + Debug
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    /// Precision carried by this value, in bits.
    fn prec(&self) -> u32;

    fn from_f64(v: f64, prec: u32) -> Self;
    fn from_i64(v: i64, prec: u32) -> Self;
    fn from_bigint(v: &BigInt, prec: u32) -> Self;
    fn from_rational(v: &BigRational, prec: u32) -> Self;
    fn parse_decimal(s: &str, prec: u32) -> Option<Self>;
    fn pi(prec: u32) -> Self;

    fn sqrt(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan(&self) -> Self;
    fn exp(&self) -> Self;
    fn exp_m1(&self) -> Self;
    fn ln(&self) -> Self;
    fn abs(&self) -> Self;
    fn powu(&self, n: u32) -> Self;
    /// Exact scaling by `2^k`.
    fn mul_pow2(self, k: i32) -> Self;

    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    /// Copy rounded (or widened) to `prec` bits.
    fn with_prec(&self, prec: u32) -> Self;
    /// Decimal rendering with `digits` significant digits, truncated toward
    /// zero so that a shorter rendering is always a prefix of a longer one.
    fn to_decimal(&self, digits: usize) -> String;

    fn zero(prec: u32) -> Self {
        Self::from_i64(0, prec)
    }
    fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }
    /// `2^k` at the given precision.
    fn pow2(k: i32, prec: u32) -> Self {
        Self::one(prec).mul_pow2(k)
    }
    fn square(&self) -> Self {
        self.clone() * self
    }
}

impl Real for f64 {
    fn prec(&self) -> u32 {
        53
    }
    fn from_f64(v: f64, _: u32) -> Self {
        v
    }
    fn from_i64(v: i64, _: u32) -> Self {
        v as f64
    }
    fn from_bigint(v: &BigInt, _: u32) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }
    fn from_rational(v: &BigRational, _: u32) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }
    fn parse_decimal(s: &str, _: u32) -> Option<Self> {
        s.trim().parse().ok()
    }
    fn pi(_: u32) -> Self {
        std::f64::consts::PI
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn atan(&self) -> Self {
        f64::atan(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn exp_m1(&self) -> Self {
        f64::exp_m1(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn powu(&self, n: u32) -> Self {
        self.powi(n as i32)
    }
    fn mul_pow2(self, k: i32) -> Self {
        self * 2f64.powi(k)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn with_prec(&self, _: u32) -> Self {
        *self
    }
    fn to_decimal(&self, digits: usize) -> String {
        format!("{:.*e}", digits.saturating_sub(1), self)
    }
}

/// Conversion from `num-bigint` to GMP integers.
pub fn to_rug_integer(v: &BigInt) -> rug::Integer {
    let (sign, digits) = v.to_u64_digits();
    let mag = rug::Integer::from_digits(&digits, Order::Lsf);
    if sign == Sign::Minus {
        -mag
    } else {
        mag
    }
}

pub fn to_rug_rational(v: &BigRational) -> rug::Rational {
    rug::Rational::from((to_rug_integer(v.numer()), to_rug_integer(v.denom())))
}

impl Real for Float {
    fn prec(&self) -> u32 {
        Float::prec(self)
    }
    fn from_f64(v: f64, prec: u32) -> Self {
        Float::with_val(prec, v)
    }
    fn from_i64(v: i64, prec: u32) -> Self {
        Float::with_val(prec, v)
    }
    fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Float::with_val(prec, to_rug_integer(v))
    }
    fn from_rational(v: &BigRational, prec: u32) -> Self {
        Float::with_val(prec, to_rug_rational(v))
    }
    fn parse_decimal(s: &str, prec: u32) -> Option<Self> {
        Float::parse(s.trim()).ok().map(|p| Float::with_val(prec, p))
    }
    fn pi(prec: u32) -> Self {
        Float::with_val(prec, Constant::Pi)
    }
    fn sqrt(&self) -> Self {
        self.clone().sqrt()
    }
    fn sin(&self) -> Self {
        self.clone().sin()
    }
    fn cos(&self) -> Self {
        self.clone().cos()
    }
    fn atan(&self) -> Self {
        self.clone().atan()
    }
    fn exp(&self) -> Self {
        self.clone().exp()
    }
    fn exp_m1(&self) -> Self {
        self.clone().exp_m1()
    }
    fn ln(&self) -> Self {
        self.clone().ln()
    }
    fn abs(&self) -> Self {
        self.clone().abs()
    }
    fn powu(&self, n: u32) -> Self {
        self.clone().pow(n)
    }
    fn mul_pow2(self, k: i32) -> Self {
        self << k
    }
    fn to_f64(&self) -> f64 {
        Float::to_f64(self)
    }
    fn is_zero(&self) -> bool {
        Float::is_zero(self)
    }
    fn with_prec(&self, prec: u32) -> Self {
        Float::with_val(prec, self)
    }
    fn to_decimal(&self, digits: usize) -> String {
        if self.is_nan() {
            return "NaN".into();
        }
        if self.is_infinite() {
            return if self.is_sign_negative() { "-inf" } else { "inf" }.into();
        }
        if Float::is_zero(self) {
            return "0".into();
        }
        let (neg, mantissa, exp) =
            self.to_sign_string_exp_round(10, Some(digits.max(1)), Round::Zero);
        format_decimal(neg, &mantissa, exp.unwrap_or(0))
    }
}

/// Lays out `0.mantissa × 10^exp` in fixed notation for moderate exponents
/// and scientific notation otherwise.
fn format_decimal(neg: bool, mantissa: &str, exp: i32) -> String {
    let sign = if neg { "-" } else { "" };
    let n = mantissa.len() as i32;
    if (-4..=21).contains(&exp) {
        if exp <= 0 {
            format!("{sign}0.{}{mantissa}", "0".repeat((-exp) as usize))
        } else if exp >= n {
            format!("{sign}{mantissa}{}", "0".repeat((exp - n) as usize))
        } else {
            let (int, frac) = mantissa.split_at(exp as usize);
            format!("{sign}{int}.{frac}")
        }
    } else {
        let (lead, rest) = mantissa.split_at(1);
        if rest.is_empty() {
            format!("{sign}{lead}e{}", exp - 1)
        } else {
            format!("{sign}{lead}.{rest}e{}", exp - 1)
        }
    }
}

/// Working-precision contract: results are delivered at `precision` bits,
/// intermediate work runs at `precision + guard` or more.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PrecisionContext {
    precision: u32,
    guard: u32,
}

impl PrecisionContext {
    pub const MIN_PRECISION: u32 = 53;
    pub const MIN_GUARD: u32 = 32;

    pub fn new(precision: u32, guard: u32) -> Result<Self> {
        if precision < Self::MIN_PRECISION {
            return Err(Error::Precision(format!(
                "precision must be at least {} bits, got {precision}",
                Self::MIN_PRECISION
            )));
        }
        if guard < Self::MIN_GUARD {
            return Err(Error::Precision(format!(
                "guard must be at least {} bits, got {guard}",
                Self::MIN_GUARD
            )));
        }
        Ok(Self { precision, guard })
    }

    /// Context with the default guard width.
    pub fn bits(precision: u32) -> Result<Self> {
        Self::new(precision, Self::MIN_GUARD)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    pub fn working(&self) -> u32 {
        self.precision + self.guard
    }

    pub fn with_guard(&self, guard: u32) -> Self {
        Self {
            precision: self.precision,
            guard: guard.max(Self::MIN_GUARD),
        }
    }

    /// `2^-(precision - slack)`, the customary residual budget.
    pub fn tolerance<R: Real>(&self, slack: u32) -> R {
        R::pow2(-(self.precision as i32 - slack as i32), self.working())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_prefix_property() {
        let x = Float::with_val(256, Constant::Pi) / 7u32;
        let short = x.to_decimal(20);
        let long = x.to_decimal(30);
        assert!(long.starts_with(&short), "{short} vs {long}");
        assert_eq!(short, "0.44879895051282760549");
    }

    #[test]
    fn decimal_layout() {
        assert_eq!(format_decimal(false, "15", 2), "15");
        assert_eq!(format_decimal(true, "125", 1), "-1.25");
        assert_eq!(format_decimal(false, "2", -6), "2e-7");
        assert_eq!(format_decimal(false, "123", 30), "1.23e29");
        assert_eq!(Float::with_val(64, 0).to_decimal(5), "0");
    }

    #[test]
    fn bigint_roundtrip_into_mpfr() {
        let big: BigInt = BigInt::from(3u8).pow(200u32) * -1;
        let f = Float::from_bigint(&big, 400);
        let back = f.to_integer().unwrap();
        assert_eq!(back.to_string(), big.to_string());
    }

    #[test]
    fn context_validation() {
        assert!(PrecisionContext::new(52, 32).is_err());
        assert!(PrecisionContext::new(64, 16).is_err());
        let ctx = PrecisionContext::bits(128).unwrap();
        assert_eq!(ctx.working(), 160);
    }
}
