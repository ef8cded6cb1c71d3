//! The exponential generating function
//! `J^(n)(x, w) = int_0^(arcsin x) sin^(n+1)(theta) e^(w theta) dtheta`
//! in closed form and as a power series in `w`.
//!
//! With `a = arcsin x`, `s = sqrt(1-x^2)` and `V_m = w T_m(x) - m U_(m-1)(x) s`:
//!
//! ```text
//! n = 2l-1:  J = b_l (e^(wa) - 1)/w
//!              + 2^(1-2l) sum_{k=1..l} C(2l,l-k) (e^(wa) V_2k - (-1)^k w)/(w^2 + 4k^2)
//! n = 2l:    J = 4^(-l) sum_{k=0..l} C(2l+1,l-k) (e^(wa) V_(2k+1) + (-1)^k (2k+1))/(w^2 + (2k+1)^2)
//! ```

use num_bigint::BigInt;

use crate::chebyshev::{arcsin, chebyshev_t, chebyshev_u_ext, cofactor, eval_poly};
use crate::closed_form::{trig_partial, TrigKind};
use crate::error::{invalid, Error, Result};
use crate::exact::{binomial, factorial, sign};
use crate::scalar::{PrecisionContext, Real};

use super::quadrature::quadrature_i;

/// Taylor coefficients of a function of `w` at `w = 0`; entry `j` is the
/// coefficient of `w^j`, for `j < order`.
#[derive(Clone, Debug)]
pub struct WSeries<R> {
    pub coefficients: Vec<R>,
}

impl<R: Real> WSeries<R> {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coeff(&self, j: usize) -> Option<&R> {
        self.coefficients.get(j)
    }
}

fn check_x<R: Real>(x: &R) -> Result<()> {
    if *x < R::zero(x.prec()) || *x > R::one(x.prec()) {
        return Err(Error::Domain(format!("x = {} outside [0, 1]", x.to_f64())));
    }
    Ok(())
}

/// Per-frequency data: `T_m(x)`, `m U_(m-1)(x) s` and the binomial weight.
struct Freq<R> {
    m: i64,
    t: R,
    us: R,
    weight: BigInt,
    sign: i64,
}

struct Setup<R> {
    a: R,
    /// `C(2l,l)/4^l` for odd `n`, zero for even `n`.
    b: R,
    /// `2^(1-2l)` (odd `n`) or `4^(-l)` (even `n`).
    scale: R,
    freqs: Vec<Freq<R>>,
}

fn setup<R: Real>(n: u32, x: &R, ctx: &PrecisionContext) -> Result<Setup<R>> {
    check_x(x)?;
    let prec = ctx.working();
    let x = x.with_prec(prec);
    let a = arcsin(&x, prec)?;
    let s = cofactor(&x, prec);
    let freq = |m: i64, weight: BigInt, k: i64| Freq {
        m,
        t: eval_poly(&chebyshev_t(m as u64), &x, ctx),
        us: eval_poly(&chebyshev_u_ext(m - 1), &x, ctx) * &s * R::from_i64(m, prec),
        weight,
        sign: sign(k),
    };
    if n % 2 == 1 {
        let l = (n as i64 + 1) / 2;
        let b = R::from_bigint(&binomial(2 * l as u64, l), prec).mul_pow2(-2 * l as i32);
        let freqs = (1..=l).map(|k| freq(2 * k, binomial(2 * l as u64, l - k), k)).collect();
        Ok(Setup {
            a,
            b,
            scale: R::pow2(1 - 2 * l as i32, prec),
            freqs,
        })
    } else {
        let l = n as i64 / 2;
        let freqs = (0..=l)
            .map(|k| freq(2 * k + 1, binomial(2 * l as u64 + 1, l - k), k))
            .collect();
        Ok(Setup {
            a,
            b: R::zero(prec),
            scale: R::pow2(-2 * l as i32, prec),
            freqs,
        })
    }
}

/// `J^(n)(x, w)` from its closed form. For `|w| < 2^-(P/2)` the
/// `(e^(wa) - 1)/w` factor is replaced by its limit `a`.
pub fn j_closed_form<R: Real>(n: u32, x: &R, w: &R, ctx: &PrecisionContext) -> Result<R> {
    let prec = ctx.working();
    let st = setup(n, x, ctx)?;
    let w = w.with_prec(prec);
    let wa = w.clone() * &st.a;
    let e = wa.exp();
    let odd = n % 2 == 1;
    let mut acc = R::zero(prec);
    for f in &st.freqs {
        let m = R::from_i64(f.m, prec);
        let v = w.clone() * &f.t - &f.us;
        let rest = if odd {
            -(w.clone() * R::from_i64(f.sign, prec))
        } else {
            R::from_i64(f.sign, prec) * &m
        };
        let num = e.clone() * &v + &rest;
        acc = acc + R::from_bigint(&f.weight, prec) * num / (w.square() + m.square());
    }
    let mut out = acc * &st.scale;
    if odd {
        let small = w.abs() < R::pow2(-(ctx.precision() as i32) / 2, prec);
        let growth = if small { st.a.clone() } else { wa.exp_m1() / &w };
        out = out + st.b.clone() * growth;
    }
    Ok(out)
}

/// Coefficients of `w^0 .. w^(order-1)` of `J^(n)(x, w)`, built from the
/// expansions of `(e^(wa) - 1)/w`, `e^(wa) V_m/(w^2 + m^2)`,
/// `w/(w^2 + m^2)` and `m/(w^2 + m^2)`.
pub fn w_expand_j<R: Real>(n: u32, x: &R, order: usize, ctx: &PrecisionContext) -> Result<WSeries<R>> {
    if order == 0 {
        return invalid("expansion order must be at least 1");
    }
    // c_p(m a) and s_p(m a) cancel heavily for large m a
    let ctx = ctx.with_guard(ctx.guard() + 16 + 4 * order as u32);
    let prec = ctx.working();
    let st = setup(n, x, &ctx)?;
    let odd = n % 2 == 1;
    let mut coeffs = Vec::with_capacity(order);
    for j in 0..order {
        let p = (j / 2) as i64;
        let mut acc = R::zero(prec);
        for f in &st.freqs {
            let m = R::from_i64(f.m, prec);
            let ma = m.clone() * &st.a;
            let cp = trig_partial(TrigKind::Cos, p).expect("p >= 0").eval(&ma, prec);
            let sp = trig_partial(TrigKind::Sin, p).expect("p >= 0").eval(&ma, prec);
            let sp1 = trig_partial(TrigKind::Sin, p - 1).expect("p >= -1").eval(&ma, prec);
            let sg = R::from_i64(sign(p), prec);
            let fs = R::from_i64(f.sign, prec);
            let term = if j % 2 == 1 {
                // e^(wa) V_m/(w^2+m^2): (-1)^p (c_p T - s_p U s)/m^(2p+2)
                let main = sg.clone() * (cp * &f.t - sp * &f.us / &m) / m.powu(2 * p as u32 + 2);
                // w/(w^2+m^2) carries (-1)^p/m^(2p+2); the even case has no odd part
                let rest = if odd {
                    -(fs * &sg / m.powu(2 * p as u32 + 2))
                } else {
                    R::zero(prec)
                };
                main + rest
            } else {
                // -(-1)^p (s_{p-1} T + c_p U s)/m^(2p+1)
                let main = -(sg.clone() * (sp1 * &f.t + cp * &f.us / &m) / m.powu(2 * p as u32 + 1));
                // m/(w^2+m^2) carries (-1)^p/m^(2p+1)
                let rest = if odd {
                    R::zero(prec)
                } else {
                    fs * &sg / m.powu(2 * p as u32 + 1)
                };
                main + rest
            };
            acc = acc + R::from_bigint(&f.weight, prec) * term;
        }
        let mut c = acc * &st.scale;
        if odd {
            // (e^(wa) - 1)/w = sum_j a^(j+1) w^j/(j+1)!
            let g = st.a.powu(j as u32 + 1) / R::from_bigint(&factorial(j as u64 + 1), prec);
            c = c + st.b.clone() * g;
        }
        coeffs.push(c);
    }
    Ok(WSeries { coefficients: coeffs })
}

/// `|I_q^(n)(x) - x^(n+1) a^q/(n+1) + q!/(n+1) [w^(q-1)] J^(n)(x, w)|` with
/// the moment from quadrature and the coefficient from [`w_expand_j`].
pub fn check_lemma32<R: Real + 'static>(n: u32, q: u32, x: &R, ctx: &PrecisionContext) -> Result<R> {
    if q == 0 {
        return invalid("q must be at least 1");
    }
    let prec = ctx.working();
    let quad = quadrature_i(n, q, x, ctx)?.value;
    let coeff = w_expand_j(n, x, q as usize, ctx)?.coefficients[q as usize - 1].with_prec(prec);
    let x = x.with_prec(prec);
    let a = arcsin(&x, prec)?;
    let n1 = R::from_i64(n as i64 + 1, prec);
    let lead = x.powu(n + 1) * a.powu(q) / &n1;
    let qf = R::from_bigint(&factorial(q as u64), prec);
    Ok((quad - lead + qf * coeff / n1).abs())
}
