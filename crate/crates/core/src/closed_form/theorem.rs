//! `I_q^(n)(x) = int_0^x t^n arcsin(t)^q dt` as an exact closed form.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::trig::{partial, TrigKind};
use super::ClosedForm;
use crate::chebyshev::{chebyshev_t, chebyshev_u_ext};
use crate::error::{invalid, Result};
use crate::exact::{binomial, factorial, int, pow2, sign};

fn rat_int(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// `f(m a)` for a truncated Maclaurin series `f`, as a form in `a`.
fn trig_at(kind: TrigKind, p: i64, m: u64) -> ClosedForm {
    ClosedForm::from_a_poly(&partial(kind, p).scaled(&int(m as i64)))
}

fn t_of(n: u64) -> ClosedForm {
    ClosedForm::from_x_poly(&chebyshev_t(n))
}

fn u_s(n: i64) -> ClosedForm {
    &ClosedForm::from_x_poly(&chebyshev_u_ext(n)) * &ClosedForm::s()
}

/// Closed form of `I_q^(n)`, built from Chebyshev polynomials in `x` and
/// truncated sine/cosine series evaluated at integer multiples of `a`.
/// Four shapes arise from the parities of `n` and `q`.
pub fn arcsine_power_integral(n: u32, q: u32) -> Result<ClosedForm> {
    if q == 0 {
        return invalid("q must be at least 1 (I_0 is x^(n+1)/(n+1))");
    }
    let q_odd = q % 2 == 1;
    let p = (q / 2) as i64;
    let qf = rat_int(factorial(q as u64));
    let a_q = ClosedForm::monomial(int(1), 0, 0, q);

    let form = if n.is_multiple_of(2) {
        let l = (n / 2) as i64;
        let lead = ClosedForm::monomial(int(1), 2 * l as u32 + 1, 0, q).scale(&BigRational::new(
            BigInt::from(1),
            BigInt::from(2 * l + 1),
        ));
        let pref = &qf * pow2(-2 * l) * BigRational::new(BigInt::from(sign(p)), BigInt::from(2 * l + 1));
        let mut sum = ClosedForm::zero();
        for k in 0..=l {
            let m = (2 * k + 1) as u64;
            let w = BigRational::new(binomial(2 * l as u64 + 1, l - k), BigInt::from(m).pow(q));
            let bracket = if q_odd {
                // s_{p-1}(ma) T_m + c_p(ma) U_{m-1} s - (-1)^k
                &(&(&trig_at(TrigKind::Sin, p - 1, m) * &t_of(m))
                    + &(&trig_at(TrigKind::Cos, p, m) * &u_s(m as i64 - 1)))
                    - &ClosedForm::constant(int(sign(k)))
            } else {
                // c_{p-1}(ma) T_m - s_{p-1}(ma) U_{m-1} s
                &(&trig_at(TrigKind::Cos, p - 1, m) * &t_of(m))
                    - &(&trig_at(TrigKind::Sin, p - 1, m) * &u_s(m as i64 - 1))
            };
            sum = &sum + &bracket.scale(&w);
        }
        &lead + &sum.scale(&pref)
    } else {
        let l = n.div_ceil(2) as i64;
        let b = BigRational::new(binomial(2 * l as u64, l), BigInt::from(1) << (2 * l) as usize);
        let x2l = ClosedForm::monomial(int(1), 2 * l as u32, 0, 0);
        let lead = (&(&x2l - &ClosedForm::constant(b)) * &a_q).scale(&BigRational::new(
            BigInt::from(1),
            BigInt::from(2 * l),
        ));
        let pref = &qf * pow2(1 - 2 * l) * BigRational::new(BigInt::from(sign(p)), BigInt::from(2 * l));
        let mut sum = ClosedForm::zero();
        for k in 1..=l {
            let m = (2 * k) as u64;
            let w = BigRational::new(binomial(2 * l as u64, l - k), BigInt::from(m).pow(q));
            let bracket = if q_odd {
                // s_{p-1}(ma) T_m + c_p(ma) U_{m-1} s
                &(&trig_at(TrigKind::Sin, p - 1, m) * &t_of(m))
                    + &(&trig_at(TrigKind::Cos, p, m) * &u_s(m as i64 - 1))
            } else {
                // c_{p-1}(ma) T_m - s_{p-1}(ma) U_{m-1} s - (-1)^k
                &(&(&trig_at(TrigKind::Cos, p - 1, m) * &t_of(m))
                    - &(&trig_at(TrigKind::Sin, p - 1, m) * &u_s(m as i64 - 1)))
                    - &ClosedForm::constant(int(sign(k)))
            };
            sum = &sum + &bracket.scale(&w);
        }
        &lead + &sum.scale(&pref)
    };
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn smallest_cases() {
        let f = arcsine_power_integral(0, 1).unwrap();
        assert_eq!(f.to_string(), "x*a + s - 1");
        // x a^2 - 2x + 2 a s
        let g = arcsine_power_integral(0, 2).unwrap();
        assert_eq!(g.to_string(), "x*a^2 + 2*s*a - 2*x");
        assert!(arcsine_power_integral(2, 0).is_err());
    }

    #[test]
    fn odd_n_even_q_example() {
        // (x^2 - 1/2) a^2/2 + a x s/2 - x^2/4
        let f = arcsine_power_integral(1, 2).unwrap();
        let expect = ClosedForm::from_terms([
            ((2, 0, 2), rat(1, 2)),
            ((0, 0, 2), rat(-1, 4)),
            ((1, 1, 1), rat(1, 2)),
            ((2, 0, 0), rat(-1, 4)),
        ]);
        assert_eq!(f, expect);
    }

    #[test]
    fn vanishes_at_zero_and_respects_degree() {
        for n in 0..=8 {
            for q in 1..=8 {
                let f = arcsine_power_integral(n, q).unwrap();
                assert_eq!(f.value_at_zero(), int(0), "n={n} q={q}");
                assert!(f.max_a_degree() <= q);
                assert!(f.terms().all(|((_, j, _), _)| *j <= 1));
            }
        }
    }
}
