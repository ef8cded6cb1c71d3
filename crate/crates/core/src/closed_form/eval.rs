use super::ClosedForm;
use crate::chebyshev::{arcsin, cofactor};
use crate::error::{Error, Result};
use crate::scalar::{PrecisionContext, Real};

/// Value and the sum of absolute monomial values at one precision.
fn eval_at<R: Real>(cf: &ClosedForm, x: &R, prec: u32) -> Result<(R, R)> {
    let x = x.with_prec(prec);
    let a = arcsin(&x, prec)?;
    let s = cofactor(&x, prec);
    let max_i = cf.terms().map(|(e, _)| e.0).max().unwrap_or(0);
    let max_k = cf.max_a_degree();
    let powers = |base: &R, n: u32| {
        let mut v = Vec::with_capacity(n as usize + 1);
        v.push(R::one(prec));
        for i in 1..=n as usize {
            v.push(v[i - 1].clone() * base);
        }
        v
    };
    let xp = powers(&x, max_i);
    let ap = powers(&a, max_k);
    let mut sum = R::zero(prec);
    let mut mag = R::zero(prec);
    for ((i, j, k), c) in cf.terms() {
        let mut t = R::from_rational(c, prec) * &xp[*i as usize] * &ap[*k as usize];
        if *j == 1 {
            t = t * &s;
        }
        mag = mag + t.abs();
        sum = sum + t;
    }
    Ok((sum, mag))
}

/// Evaluates a closed form at `x` in `[-1, 1]`.
///
/// The form is evaluated at `P + g` and `P + 2g` bits; the result is
/// accepted once the two agree to `P` bits relative to the value (or to
/// `2P` bits relative to the monomial magnitudes when the value cancels to
/// nothing), doubling `g` otherwise up to `8P`.
pub fn eval_closed_form<R: Real>(cf: &ClosedForm, x: &R, ctx: &PrecisionContext) -> Result<R> {
    let p = ctx.precision();
    if x.abs() > R::one(x.prec()) {
        return Err(Error::Domain(format!("x = {} outside [-1, 1]", x.to_f64())));
    }
    if x.is_zero() {
        return Ok(R::from_rational(&cf.value_at_zero(), ctx.working()));
    }
    let mut g = ctx.guard();
    loop {
        let (v1, _) = eval_at(cf, x, p + g)?;
        let (v2, mag) = eval_at(cf, x, p + 2 * g)?;
        let diff = (v1 - &v2).abs();
        let rel = v2.abs().mul_pow2(-(p as i32));
        let floor = mag.mul_pow2(-2 * p as i32);
        if diff <= rel || diff <= floor || g >= 8 * p {
            return Ok(v2.with_prec(ctx.working()));
        }
        g *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::arcsine_power_integral;
    use rug::Float;

    #[test]
    fn first_moment_values() {
        let ctx = PrecisionContext::bits(128).unwrap();
        let f = arcsine_power_integral(0, 1).unwrap();
        let p = ctx.working();
        let v = eval_closed_form(&f, &Float::with_val(p, 1), &ctx).unwrap();
        let expect = Float::with_val(p, rug::float::Constant::Pi) / 2u32 - 1u32;
        assert!(Float::with_val(p, &v - &expect).abs() < Float::with_val(p, 1) >> 120);
        let half = Float::with_val(p, 0.5);
        let v = eval_closed_form(&f, &half, &ctx).unwrap();
        assert!((v.to_f64() - 0.127_824_791_6).abs() < 1e-10);
        assert_eq!(eval_closed_form(&f, &Float::with_val(p, 0), &ctx).unwrap(), 0);
        assert!(eval_closed_form(&f, &Float::with_val(p, 1.01), &ctx).is_err());
    }

    #[test]
    fn f64_path() {
        let ctx = PrecisionContext::bits(53).unwrap();
        let f = arcsine_power_integral(0, 1).unwrap();
        let v = eval_closed_form(&f, &0.5f64, &ctx).unwrap();
        assert!((v - 0.127_824_791_6).abs() < 1e-10);
    }
}
