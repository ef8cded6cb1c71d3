//! Chebyshev polynomials with exact integer coefficients.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{PrecisionContext, Real};
use crate::IntPoly;

fn three_term(n: u64, p0: IntPoly, p1: IntPoly) -> IntPoly {
    let two_x = IntPoly::monomial(BigInt::from(2), 1);
    let (mut prev, mut cur) = (p0, p1);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// First kind: `T_n(cos t) = cos(n t)`.
pub fn chebyshev_t(n: u64) -> IntPoly {
    three_term(n, IntPoly::one(), IntPoly::x())
}

/// Second kind: `U_n(cos t) = sin((n+1) t) / sin t`.
pub fn chebyshev_u(n: u64) -> IntPoly {
    three_term(n, IntPoly::one(), IntPoly::monomial(BigInt::from(2), 1))
}

/// `U_n` with `U_{-1} = 0`.
pub fn chebyshev_u_ext(n: i64) -> IntPoly {
    if n < 0 {
        IntPoly::zero()
    } else {
        chebyshev_u(n as u64)
    }
}

/// Horner evaluation. Extra bits equal to the size of `sum |c_i|` are added
/// on top of the working precision to absorb cancellation between the
/// large alternating coefficients.
pub fn eval_poly<R: Real>(p: &IntPoly, x: &R, ctx: &PrecisionContext) -> R {
    let l1 = p.coeffs().iter().fold(BigInt::zero(), |acc, c| acc + c.abs());
    let prec = ctx.working() + l1.bits() as u32;
    let xw = x.with_prec(prec);
    let v = p
        .coeffs()
        .iter()
        .rev()
        .fold(R::zero(prec), |acc, c| acc * &xw + R::from_bigint(c, prec));
    v.with_prec(ctx.working())
}

/// `arcsin x = atan(x / sqrt(1 - x^2))`, with the endpoints pinned to
/// `±pi/2`.
pub fn arcsin<R: Real>(x: &R, prec: u32) -> Result<R> {
    let one = R::one(prec);
    let xa = x.abs();
    if xa > one {
        return Err(Error::Domain(format!("arcsin argument {} outside [-1, 1]", x.to_f64())));
    }
    if xa == one {
        let h = R::pi(prec).mul_pow2(-1);
        return Ok(if *x < R::zero(prec) { -h } else { h });
    }
    let x = x.with_prec(prec);
    let c = ((one.clone() - &x) * (one + &x)).sqrt();
    Ok((x / c).atan())
}

/// `sqrt(1 - x^2)` computed as `sqrt((1-x)(1+x))`.
pub fn cofactor<R: Real>(x: &R, prec: u32) -> R {
    let one = R::one(prec);
    let x = x.with_prec(prec);
    ((one.clone() - &x) * (one + x)).sqrt()
}

/// Residuals of the four arcsine-composed identities
/// `cos(2k a) = (-1)^k T_2k`, `sin((2k+1) a) = (-1)^k T_2k+1`,
/// `sin(2k a) = (-1)^(k+1) U_2k-1 s`, `cos((2k+1) a) = (-1)^k U_2k s`
/// with `a = arcsin x`, `s = sqrt(1-x^2)`.
pub fn lemma33_residuals<R: Real>(k: u64, x: &R, ctx: &PrecisionContext) -> Result<[R; 4]> {
    let prec = ctx.working();
    let a = arcsin(x, prec)?;
    let s = cofactor(x, prec);
    let sg = |e: u64| if e.is_multiple_of(2) { R::one(prec) } else { -R::one(prec) };
    let ka = |m: u64| a.clone() * R::from_i64(m as i64, prec);
    let t_even = eval_poly(&chebyshev_t(2 * k), x, ctx);
    let t_odd = eval_poly(&chebyshev_t(2 * k + 1), x, ctx);
    let u_odd = eval_poly(&chebyshev_u_ext(2 * k as i64 - 1), x, ctx);
    let u_even = eval_poly(&chebyshev_u(2 * k), x, ctx);
    Ok([
        (ka(2 * k).cos() - sg(k) * t_even).abs(),
        (ka(2 * k + 1).sin() - sg(k) * t_odd).abs(),
        (ka(2 * k).sin() - sg(k + 1) * u_odd * &s).abs(),
        (ka(2 * k + 1).cos() - sg(k) * u_even * &s).abs(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    fn ints(v: &[i64]) -> IntPoly {
        IntPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn small_polynomials() {
        assert_eq!(chebyshev_t(0), ints(&[1]));
        assert_eq!(chebyshev_t(2), ints(&[-1, 0, 2]));
        assert_eq!(chebyshev_t(3), ints(&[0, -3, 0, 4]));
        assert_eq!(chebyshev_u(0), ints(&[1]));
        assert_eq!(chebyshev_u(2), ints(&[-1, 0, 4]));
        assert_eq!(chebyshev_u(3), ints(&[0, -4, 0, 8]));
        assert!(chebyshev_u_ext(-1).is_zero());
    }

    #[test]
    fn evaluation() {
        let ctx = PrecisionContext::bits(64).unwrap();
        let one = Float::with_val(96, 1);
        assert_eq!(eval_poly(&chebyshev_t(2), &one, &ctx), 1);
        assert_eq!(eval_poly(&chebyshev_u(1), &0.5f64, &ctx), 1.0);
        let v = eval_poly(&chebyshev_t(3), &Float::with_val(96, Float::parse("0.3").unwrap()), &ctx);
        let expect = Float::with_val(96, Float::parse("-0.792").unwrap());
        assert!(Float::with_val(96, &v - &expect).abs() < 1e-25);
    }

    #[test]
    fn arcsin_endpoints_and_domain() {
        let p = 128;
        let h = arcsin(&Float::with_val(p, -1), p).unwrap();
        assert_eq!(h, -(Float::with_val(p, rug::float::Constant::Pi) / 2u32));
        assert!(arcsin(&1.5f64, 53).is_err());
        assert!((arcsin(&0.5f64, 53).unwrap() - std::f64::consts::FRAC_PI_6).abs() < 1e-15);
    }

    #[test]
    fn residual_examples() {
        for &p in &[64u32, 128] {
            let ctx = PrecisionContext::bits(p).unwrap();
            let tol = Float::with_val(p, 1) >> (p as i32 - 8);
            for (k, x) in [(0u64, "0.7"), (3, "1.0"), (2, "0.0")] {
                let x = Float::with_val(ctx.working(), Float::parse(x).unwrap());
                for r in lemma33_residuals(k, &x, &ctx).unwrap() {
                    assert!(r <= tol, "k={k} x={x}: {r}");
                }
            }
        }
    }
}
