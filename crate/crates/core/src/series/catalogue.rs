//! Named series identities: left-hand series and independently assembled
//! right-hand sides.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{SeriesSpec, Side, TermModel, Weight};
use crate::closed_form::{
    arcsine_power_integral, eval_closed_form, specialize_pi, ClosedForm, PiPoly, QSqrt2, SpecialPoint,
};
use crate::closed_form::{trig_partial, TrigKind};
use crate::error::{invalid, Error, Result};
use crate::exact::{binomial, factorial, int, inverse_power_sum, pow2, rat, sign};
use crate::scalar::{PrecisionContext, Real};

/// Exact or numeric right-hand side.
#[derive(Clone, Debug)]
pub enum RhsValue<R> {
    Exact(PiPoly),
    Numeric(R),
}

impl<R: Real> RhsValue<R> {
    pub fn value(&self, prec: u32) -> R {
        match self {
            RhsValue::Exact(p) => p.eval(prec),
            RhsValue::Numeric(v) => v.with_prec(prec),
        }
    }

    pub fn exact(&self) -> Option<&PiPoly> {
        match self {
            RhsValue::Exact(p) => Some(p),
            RhsValue::Numeric(_) => None,
        }
    }
}

/// An `x` argument: one of the algebraic points with exact specializations,
/// or a decimal literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XArg {
    Special(SpecialPoint),
    Decimal(String),
}

impl XArg {
    pub fn parse(s: &str) -> Result<Self> {
        if let Ok(p) = s.parse::<SpecialPoint>() {
            return Ok(XArg::Special(p));
        }
        if s.trim().parse::<f64>().is_err() {
            return Err(Error::InvalidParameter(format!("cannot parse x = `{s}`")));
        }
        Ok(XArg::Decimal(s.trim().to_string()))
    }

    pub fn special(&self) -> Option<SpecialPoint> {
        match self {
            XArg::Special(p) => Some(*p),
            XArg::Decimal(_) => None,
        }
    }

    pub fn to_real<R: Real>(&self, prec: u32) -> Result<R> {
        let v = match self {
            XArg::Special(p) => p.value(prec),
            XArg::Decimal(s) => R::parse_decimal(s, prec)
                .ok_or_else(|| Error::InvalidParameter(format!("cannot parse x = `{s}`")))?,
        };
        if v.abs() > R::one(prec) {
            return Err(Error::Domain(format!("x = {} outside [-1, 1]", v.to_f64())));
        }
        Ok(v)
    }
}

/// Parameters shared by all catalogue entries; each identity reads the
/// ones it needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityParams {
    pub p: u32,
    pub ell: u32,
    pub n: u32,
    pub m: u32,
    pub x: XArg,
}

impl Default for IdentityParams {
    fn default() -> Self {
        Self {
            p: 0,
            ell: 0,
            n: 0,
            m: 1,
            x: XArg::Special(SpecialPoint::One),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityInfo {
    pub id: &'static str,
    pub params: &'static str,
    pub description: &'static str,
}

const CATALOGUE: &[IdentityInfo] = &[
    IdentityInfo {
        id: "1.2",
        params: "n (even), x",
        description: "sum b_k x^(2k+1)/(2k+n+1) in terms of arcsin x",
    },
    IdentityInfo {
        id: "1.3",
        params: "n (even)",
        description: "sum b_k/(2k+n+1) = C(n,n/2) pi/2^(n+1)",
    },
    IdentityInfo {
        id: "2.9",
        params: "p, ell",
        description: "sum b_k G_p(k)/(2k+2ell+2) as a polynomial in pi",
    },
    IdentityInfo {
        id: "2.10",
        params: "p, ell",
        description: "sum b_k G_p(k)/(2k+2ell+1) as a polynomial in pi",
    },
    IdentityInfo {
        id: "2.11",
        params: "p >= 1, ell",
        description: "sum H_p(k)/(2k b_k (2k+2ell+1)) as a polynomial in pi",
    },
    IdentityInfo {
        id: "2.12",
        params: "p >= 1, ell",
        description: "sum H_p(k)/(2k b_k (2k+2ell)) as a polynomial in pi",
    },
    IdentityInfo {
        id: "2.13",
        params: "p, x",
        description: "sum b_k G_p(k) x^(2k+2)/(2k+2) via truncated sine/cosine of arcsin x",
    },
    IdentityInfo {
        id: "2.14",
        params: "p, x",
        description: "sum b_k G_p(k) x^(2k+3)/(2k+3) via truncated sine/cosine of 2 arcsin x",
    },
    IdentityInfo {
        id: "2.15",
        params: "p >= 1, x",
        description: "sum H_p(k) x^(2k+1)/(2k b_k (2k+1)) via truncated sine/cosine of arcsin x",
    },
    IdentityInfo {
        id: "2.16",
        params: "p >= 1, x",
        description: "sum H_p(k) x^(2k+2)/(2k b_k (2k+2)) via truncated sine/cosine of 2 arcsin x",
    },
    IdentityInfo {
        id: "2.17",
        params: "p",
        description: "sum C(2k,k) G_p(k)/(8^k (2k+2)), value in Q(sqrt2)[pi]",
    },
    IdentityInfo {
        id: "2.18",
        params: "p >= 1",
        description: "sum 2^k H_p(k)/(C(2k,k) 2k (2k+1)), value in Q[pi]",
    },
    IdentityInfo {
        id: "2.19",
        params: "p",
        description: "sum C(2k,k) G_p(k)/(8^k (2k+3)), value in Q(sqrt2)[pi]",
    },
    IdentityInfo {
        id: "2.20",
        params: "p >= 1",
        description: "sum 2^k H_p(k)/(C(2k,k) 2k (2k+2)), value in Q[pi]",
    },
    IdentityInfo {
        id: "2.23",
        params: "p",
        description: "sum C(2k,k) G_p(k) (2-sqrt2)^k/(16^k (2k+3)), numeric",
    },
    IdentityInfo {
        id: "2.24",
        params: "p >= 1",
        description: "sum H_p(k) (2-sqrt2)^k/(C(2k,k) 2k (2k+2)), numeric",
    },
    IdentityInfo {
        id: "5.2",
        params: "p, n != m, x",
        description: "sum b_k G_p(k) x^(2k+2)/((2k+2+n)(2k+2+m)) from two arcsine moments",
    },
    IdentityInfo {
        id: "5.8",
        params: "",
        description: "sum 4^j/(C(2j,j) j^2) = pi^2/2",
    },
    IdentityInfo {
        id: "lupu-odd",
        params: "p",
        description: "sum C(2k,k) G_p(k)/8^k = sqrt2 (pi/4)^(2p)/(2p)!",
    },
    IdentityInfo {
        id: "lupu-even",
        params: "p >= 1",
        description: "sum 2^k H_p(k)/(C(2k,k) k) = 2 (pi/4)^(2p-1)/(2p-1)!",
    },
];

/// All supported identity ids with their parameters.
pub fn catalogue() -> &'static [IdentityInfo] {
    CATALOGUE
}

fn lookup(id: &str) -> Result<&'static IdentityInfo> {
    CATALOGUE
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

fn need_p1(id: &str, p: u32) -> Result<()> {
    if p == 0 {
        return invalid(format!("identity {id} needs p >= 1"));
    }
    Ok(())
}

/// Series on the left of identity `id`.
pub fn identity_lhs<R: Real>(id: &str, params: &IdentityParams, prec: u32) -> Result<SeriesSpec<R>> {
    lookup(id)?;
    let IdentityParams { p, ell, n, m, .. } = params.clone();
    let x = || params.x.to_real::<R>(prec);
    let one = || R::one(prec);
    let half = || R::one(prec).mul_pow2(-1);
    let nested = || (R::from_i64(2, prec) - R::from_i64(2, prec).sqrt()).mul_pow2(-2);
    let model = |weight, y: R, c: u64| {
        SeriesSpec::Model(TermModel {
            weight,
            prefactor: R::one(prec),
            y,
            denominators: vec![c],
        })
    };
    let ell = ell as i64;
    Ok(match id {
        "1.2" => {
            even_n(n)?;
            SeriesSpec::Shifted { n, x: x()? }
        }
        "1.3" => {
            even_n(n)?;
            SeriesSpec::Shifted { n, x: one() }
        }
        "2.9" => SeriesSpec::G { p, n: 2 * ell, x: one() },
        "2.10" => SeriesSpec::G { p, n: 2 * ell - 1, x: one() },
        "2.11" => {
            need_p1(id, p)?;
            SeriesSpec::H { p, n: 2 * ell, x: one() }
        }
        "2.12" => {
            need_p1(id, p)?;
            SeriesSpec::H { p, n: 2 * ell - 1, x: one() }
        }
        "2.13" => SeriesSpec::G { p, n: 0, x: x()? },
        "2.14" => SeriesSpec::G { p, n: 1, x: x()? },
        "2.15" => {
            need_p1(id, p)?;
            SeriesSpec::H { p, n: 0, x: x()? }
        }
        "2.16" => {
            need_p1(id, p)?;
            SeriesSpec::H { p, n: 1, x: x()? }
        }
        "2.17" => model(Weight::Odd { p }, half(), 2),
        "2.18" => {
            need_p1(id, p)?;
            model(Weight::Even { p }, half(), 1)
        }
        "2.19" => model(Weight::Odd { p }, half(), 3),
        "2.20" => {
            need_p1(id, p)?;
            model(Weight::Even { p }, half(), 2)
        }
        "2.23" => model(Weight::Odd { p }, nested(), 3),
        "2.24" => {
            need_p1(id, p)?;
            model(Weight::Even { p }, nested(), 2)
        }
        "5.2" => {
            if n == m {
                return invalid("identity 5.2 needs n != m");
            }
            SeriesSpec::PartialFraction { p, n, m, x: x()? }
        }
        "5.8" => SeriesSpec::PiSquaredHalf { side: Side::Right },
        "lupu-odd" => SeriesSpec::Model(TermModel {
            weight: Weight::Odd { p },
            prefactor: one(),
            y: half(),
            denominators: vec![],
        }),
        "lupu-even" => need_p1(id, p).map(|_| {
            SeriesSpec::Model(TermModel {
                weight: Weight::Even { p },
                prefactor: R::from_i64(2, prec),
                y: half(),
                denominators: vec![],
            })
        })?,
        _ => unreachable!("catalogue lookup succeeded"),
    })
}

fn even_n(n: u32) -> Result<()> {
    if n % 2 == 1 {
        return invalid("this identity needs even n");
    }
    Ok(())
}

/// `sum_{k=0..l} s_k C(2l+1, l-k)/(2k+1)^e` with `s_k = 1` or `(-1)^k`.
fn odd_sum(l: i64, e: u32, alternating: bool) -> BigRational {
    inverse_power_sum(
        (0..=l).map(|k| {
            let c = binomial(2 * l as u64 + 1, l - k);
            (if alternating { c * sign(k) } else { c }, 2 * k as u64 + 1)
        }),
        e,
    )
}

/// `sum_{k=1..l} s_k C(2l, l-k)/k^e`.
fn even_sum(l: i64, e: u32, alternating: bool) -> BigRational {
    inverse_power_sum(
        (1..=l).map(|k| {
            let c = binomial(2 * l as u64, l - k);
            (if alternating { c * sign(k) } else { c }, k as u64)
        }),
        e,
    )
}

/// `c (pi/d)^j / j!` as a single `pi`-monomial.
fn pi_over(c: BigRational, d: i64, j: usize) -> PiPoly {
    let scale = BigRational::new(BigInt::one(), BigInt::from(d).pow(j as u32) * factorial(j as u64));
    PiPoly::rat_term(c * scale, j)
}

fn rhs_2_9(p: u32, l: i64) -> PiPoly {
    let p = p as i64;
    let pre = int(sign(p - 1)) * pow2(-2 * l);
    let mut out = PiPoly::zero();
    for j in 0..p {
        let c = &pre * odd_sum(l, (2 * p - 2 * j) as u32, false) * int(sign(j));
        out = out + pi_over(c, 2, (2 * j + 1) as usize);
    }
    let tail = int(sign(p)) * pow2(-2 * l) * odd_sum(l, (2 * p + 1) as u32, true);
    out + PiPoly::rational(tail)
}

fn rhs_2_10(p: u32, l: i64) -> PiPoly {
    let p = p as i64;
    let pre = int(sign(p - 1)) * pow2(-2 * (l + p));
    let mut out = PiPoly::zero();
    for j in 0..p {
        let c = &pre * even_sum(l, (2 * p - 2 * j) as u32, false) * int(sign(j));
        out = out + pi_over(c, 1, (2 * j + 1) as usize);
    }
    let lead = BigRational::from_integer(binomial(2 * l as u64, l)) * pow2(-(2 * l + 2 * p + 1));
    out + pi_over(lead, 1, (2 * p + 1) as usize)
}

fn rhs_2_11(p: u32, l: i64) -> PiPoly {
    let p = p as i64;
    let pre = int(sign(p - 1)) * pow2(-2 * l);
    let mut out = PiPoly::zero();
    for j in 0..p {
        let c = &pre * odd_sum(l, (2 * p - 2 * j) as u32, false) * int(sign(j));
        out = out + pi_over(c, 2, (2 * j) as usize);
    }
    out
}

fn rhs_2_12(p: u32, l: i64) -> PiPoly {
    let p = p as i64;
    let pre = int(sign(p - 1)) * pow2(-(2 * l + 2 * p - 1));
    let mut out = PiPoly::zero();
    for j in 0..p {
        let c = &pre * even_sum(l, (2 * p - 2 * j) as u32, false) * int(sign(j));
        out = out + pi_over(c, 1, (2 * j) as usize);
    }
    let lead = BigRational::from_integer(binomial(2 * l as u64, l)) * pow2(-2 * (l + p));
    let tail = int(sign(p)) * pow2(-(2 * l + 2 * p - 1)) * even_sum(l, (2 * p) as u32, true);
    out + pi_over(lead, 1, (2 * p) as usize) + PiPoly::rational(tail)
}

/// The four series at `x = 1` whose values are polynomials in `pi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Cor23 {
    /// `sum b_k G_p(k)/(2k+2l+2)`
    OddEven,
    /// `sum b_k G_p(k)/(2k+2l+1)`
    OddOdd,
    /// `sum H_p(k)/(2k b_k (2k+2l+1))`, `p >= 1`
    EvenOdd,
    /// `sum H_p(k)/(2k b_k (2k+2l))`, `p >= 1`
    EvenEven,
}

impl Cor23 {
    pub const ALL: [Cor23; 4] = [Cor23::OddEven, Cor23::OddOdd, Cor23::EvenOdd, Cor23::EvenEven];

    pub fn id(self) -> &'static str {
        match self {
            Cor23::OddEven => "2.9",
            Cor23::OddOdd => "2.10",
            Cor23::EvenOdd => "2.11",
            Cor23::EvenEven => "2.12",
        }
    }

    /// Offset `n` of the matching moment identity, `2k + n + 2` (odd) or
    /// `2k + n + 1` (even).
    pub fn moment_n(self, ell: u32) -> i64 {
        let l = ell as i64;
        match self {
            Cor23::OddEven | Cor23::EvenOdd => 2 * l,
            Cor23::OddOdd | Cor23::EvenEven => 2 * l - 1,
        }
    }

    pub fn is_odd_power(self) -> bool {
        matches!(self, Cor23::OddEven | Cor23::OddOdd)
    }
}

/// Exact right-hand side of one of the four `x = 1` families, assembled
/// from binomial-weighted power sums.
pub fn cor23_rhs(which: Cor23, p: u32, ell: u32) -> Result<PiPoly> {
    let l = ell as i64;
    Ok(match which {
        Cor23::OddEven => rhs_2_9(p, l),
        Cor23::OddOdd => rhs_2_10(p, l),
        Cor23::EvenOdd => need_p1("2.11", p).map(|_| rhs_2_11(p, l))?,
        Cor23::EvenEven => need_p1("2.12", p).map(|_| rhs_2_12(p, l))?,
    })
}

fn sqrt2() -> QSqrt2 {
    QSqrt2::sqrt2()
}

/// `f(m a)` for a truncated sine/cosine, as a form in `a`.
fn trig_form(kind: TrigKind, p: i64, m: i64) -> ClosedForm {
    let t = trig_partial(kind, p).expect("partial sum index in range");
    ClosedForm::from_a_poly(&t.scaled(&int(m)))
}

/// `sum_j c_j (pi/4)^j / j!` with integer signs `c_j`.
fn quarter_pi_series(len: i64, sgn: impl Fn(i64) -> i64) -> PiPoly {
    (0..len).fold(PiPoly::zero(), |acc, j| acc + pi_over(int(sgn(j)), 4, j as usize))
}

/// Truncated cosine/sine at a rational multiple of `pi`, exactly.
fn trig_at_pi(kind: TrigKind, p: i64, num: i64, den: i64) -> PiPoly {
    let t = trig_partial(kind, p).expect("partial sum index in range");
    t.coeffs().terms().fold(PiPoly::zero(), |acc, (j, c)| {
        let scale = BigRational::new(BigInt::from(num).pow(j as u32), BigInt::from(den).pow(j as u32));
        acc + PiPoly::rat_term(c.clone() * scale, j)
    })
}

/// The general-`x` right-hand sides as closed forms in `(x, s, a)`.
fn general_x_form(id: &str, p: i64) -> ClosedForm {
    let x = ClosedForm::x();
    let s = ClosedForm::s();
    let one = ClosedForm::constant(int(1));
    let two_x2_minus_1 = ClosedForm::monomial(int(2), 2, 0, 0) - one.clone();
    let two_xs = ClosedForm::monomial(int(2), 1, 1, 0);
    match id {
        "2.13" => {
            let inner = &(&trig_form(TrigKind::Sin, p - 1, 1) * &x) + &(&trig_form(TrigKind::Cos, p, 1) * &s);
            (&inner - &one).scale(&int(sign(p - 1)))
        }
        "2.14" => {
            let lead = ClosedForm::monomial(
                BigRational::new(BigInt::one(), factorial(2 * p as u64 + 1) * 2),
                0,
                0,
                2 * p as u32 + 1,
            );
            let inner = &(&trig_form(TrigKind::Sin, p - 1, 2) * &two_x2_minus_1)
                + &(&trig_form(TrigKind::Cos, p, 2) * &two_xs);
            &lead - &inner.scale(&(int(sign(p)) * pow2(-(2 * p + 2))))
        }
        "2.15" => {
            let inner = &(&trig_form(TrigKind::Cos, p - 1, 1) * &x) - &(&trig_form(TrigKind::Sin, p - 1, 1) * &s);
            inner.scale(&int(sign(p - 1)))
        }
        "2.16" => {
            let lead = ClosedForm::monomial(
                BigRational::new(BigInt::one(), factorial(2 * p as u64) * 2),
                0,
                0,
                2 * p as u32,
            );
            let inner = &(&(&trig_form(TrigKind::Cos, p - 1, 2) * &two_x2_minus_1)
                - &(&trig_form(TrigKind::Sin, p - 1, 2) * &two_xs))
                + &one;
            &lead - &inner.scale(&(int(sign(p)) * pow2(-(2 * p + 1))))
        }
        _ => unreachable!(),
    }
}

/// `(sqrt2)^n` in `Q(sqrt 2)`.
fn sqrt2_pow(n: u32) -> QSqrt2 {
    let r = pow2((n / 2) as i64);
    if n.is_multiple_of(2) {
        QSqrt2::rational(r)
    } else {
        QSqrt2::new(BigRational::zero(), r)
    }
}

/// Right-hand side of the partial-fraction identity at an algebraic point:
/// `((n+1) x^(-n) I^(n) - (m+1) x^(-m) I^(m)) / ((n-m) (2p+1)!)`.
pub fn partial_fraction_rhs(p: u32, n: u32, m: u32, point: SpecialPoint) -> Result<PiPoly> {
    if n == m {
        return invalid("partial-fraction identity needs n != m");
    }
    let q = 2 * p + 1;
    let part = |k: u32| -> Result<PiPoly> {
        let v = specialize_pi(&arcsine_power_integral(k, q)?, point);
        let inv = match point {
            SpecialPoint::One => QSqrt2::one(),
            SpecialPoint::Sqrt2Over2 => sqrt2_pow(k),
        };
        Ok(v.scale_q(&inv).scale(&int(k as i64 + 1)))
    };
    let den = BigRational::from_integer(factorial(q as u64) * (n as i64 - m as i64));
    Ok((part(n)? - part(m)?).scale(&den.recip()))
}

fn partial_fraction_numeric<R: Real>(p: u32, n: u32, m: u32, x: &R, ctx: &PrecisionContext) -> Result<R> {
    let prec = ctx.working();
    if x.is_zero() {
        return Ok(R::zero(prec));
    }
    let q = 2 * p + 1;
    let part = |k: u32| -> Result<R> {
        let v = eval_closed_form(&arcsine_power_integral(k, q)?, x, ctx)?;
        Ok(v * R::from_i64(k as i64 + 1, prec) / x.with_prec(prec).powu(k))
    };
    let den = R::from_bigint(&(factorial(q as u64) * (n as i64 - m as i64)), prec);
    Ok((part(n)? - part(m)?) / den)
}

/// Exact value of `sum b_k x^(2k+1)/(2k+n+1)` at the algebraic points.
fn shifted_exact(n: u32, point: SpecialPoint) -> PiPoly {
    let c = BigRational::from_integer(binomial(n as u64, (n / 2) as i64));
    match point {
        SpecialPoint::One => PiPoly::rat_term(c * pow2(-(n as i64 + 1)), 1),
        SpecialPoint::Sqrt2Over2 => {
            // (2x)^(2j+1) s/2 = 2^(j-1) at x = s = sqrt2/2
            let h = (n as i64 - 2) / 2;
            let sum = (0..=h).fold(BigRational::zero(), |acc, j| {
                let d = BigInt::from(2 * j + 1) * binomial(2 * j as u64, j);
                acc + pow2(j - 1) / BigRational::from_integer(d)
            });
            let scale = c * pow2(-(n as i64 / 2));
            (PiPoly::rat_term(rat(1, 4), 1) - PiPoly::rational(sum)).scale(&scale)
        }
    }
}

/// `sum_k b_k x^(2k+1)/(2k+n+1)` for even `n`, evaluated from its
/// arcsine form.
pub fn shifted_rhs<R: Real>(n: u32, x: &R, ctx: &PrecisionContext) -> Result<R> {
    even_n(n)?;
    let prec = ctx.working();
    if x.is_zero() {
        return Ok(R::zero(prec));
    }
    let x = x.with_prec(prec);
    let a = crate::chebyshev::arcsin(&x, prec)?;
    let s = crate::chebyshev::cofactor(&x, prec);
    let two_x = x.clone().mul_pow2(1);
    let h = n as i64 / 2;
    let mut sum = R::zero(prec);
    for j in 0..h {
        let d = BigInt::from(2 * j + 1) * binomial(2 * j as u64, j);
        sum = sum + two_x.powu(2 * j as u32 + 1) / R::from_bigint(&d, prec);
    }
    let c = R::from_bigint(&binomial(n as u64, h), prec);
    Ok(c / two_x.powu(n) * (a - s.mul_pow2(-1) * sum))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LupuFamily {
    Odd,
    Even,
}

/// `sum C(2k,k) G_p(k)/8^k = sqrt2 (pi/4)^(2p)/(2p)!` (odd) and
/// `sum 2^k H_p(k)/(C(2k,k) k) = 2 (pi/4)^(2p-1)/(2p-1)!` (even).
pub fn lupu_rhs(family: LupuFamily, p: u32) -> Result<PiPoly> {
    match family {
        LupuFamily::Odd => Ok(pi_over(int(1), 4, 2 * p as usize).scale_q(&sqrt2())),
        LupuFamily::Even => {
            need_p1("lupu-even", p)?;
            Ok(pi_over(int(2), 4, 2 * p as usize - 1))
        }
    }
}

/// Right-hand side of catalogue identity `id`.
///
/// Identities at `x = 1` and `x = sqrt2/2` come back exact; the general-`x`
/// ones are exact at those two points and numeric elsewhere; the nested
/// radical point `x = sqrt(2 - sqrt2)/2` is numeric only.
pub fn corollary_rhs<R: Real>(id: &str, params: &IdentityParams, ctx: &PrecisionContext) -> Result<RhsValue<R>> {
    lookup(id)?;
    let prec = ctx.working();
    let p = params.p;
    let pi = p as i64;
    let l = params.ell as i64;
    let exact = |v: PiPoly| Ok(RhsValue::Exact(v));
    match id {
        "1.2" => {
            even_n(params.n)?;
            match params.x.special() {
                Some(pt) => exact(shifted_exact(params.n, pt)),
                None => Ok(RhsValue::Numeric(shifted_rhs(params.n, &params.x.to_real::<R>(prec)?, ctx)?)),
            }
        }
        "1.3" => {
            even_n(params.n)?;
            exact(shifted_exact(params.n, SpecialPoint::One))
        }
        "2.9" => exact(rhs_2_9(p, l)),
        "2.10" => exact(rhs_2_10(p, l)),
        "2.11" => need_p1(id, p).and_then(|_| exact(rhs_2_11(p, l))),
        "2.12" => need_p1(id, p).and_then(|_| exact(rhs_2_12(p, l))),
        "2.13" | "2.14" | "2.15" | "2.16" => {
            if (id == "2.15" || id == "2.16") && p == 0 {
                return invalid(format!("identity {id} needs p >= 1"));
            }
            let form = general_x_form(id, pi);
            match params.x.special() {
                Some(pt) => exact(specialize_pi(&form, pt)),
                None => {
                    let x = params.x.to_real::<R>(prec)?;
                    Ok(RhsValue::Numeric(eval_closed_form(&form, &x, ctx)?))
                }
            }
        }
        "2.17" => {
            let s = quarter_pi_series(2 * pi + 1, |j| sign(j / 2)).scale_q(&sqrt2());
            exact((PiPoly::rational(int(2)) - s).scale(&int(sign(pi))))
        }
        "2.18" => {
            need_p1(id, p)?;
            exact(quarter_pi_series(2 * pi, |j| sign((j + 1) / 2)).scale(&int(sign(pi - 1))))
        }
        "2.19" => {
            let lead = pi_over(int(1), 4, 2 * p as usize + 1).scale_q(&sqrt2());
            let c = trig_at_pi(TrigKind::Cos, pi, 1, 2).scale_q(&sqrt2());
            exact(lead - c.scale(&(int(sign(pi)) * pow2(-(2 * pi + 1)))))
        }
        "2.20" => {
            need_p1(id, p)?;
            let lead = pi_over(int(1), 4, 2 * p as usize);
            let s = trig_at_pi(TrigKind::Sin, pi - 1, 1, 2) - PiPoly::rational(int(1));
            exact(lead + s.scale(&(int(sign(pi)) * pow2(-2 * pi))))
        }
        "2.23" | "2.24" => {
            if id == "2.24" {
                need_p1(id, p)?;
            }
            Ok(RhsValue::Numeric(nested_radical_rhs::<R>(id == "2.23", pi, prec)))
        }
        "5.2" => {
            let (n, m) = (params.n, params.m);
            match params.x.special() {
                Some(pt) => exact(partial_fraction_rhs(p, n, m, pt)?),
                None => {
                    if n == m {
                        return invalid("identity 5.2 needs n != m");
                    }
                    let x = params.x.to_real::<R>(prec)?;
                    Ok(RhsValue::Numeric(partial_fraction_numeric(p, n, m, &x, ctx)?))
                }
            }
        }
        "5.8" => exact(PiPoly::rat_term(rat(1, 2), 2)),
        "lupu-odd" => exact(lupu_rhs(LupuFamily::Odd, p)?),
        "lupu-even" => exact(lupu_rhs(LupuFamily::Even, p)?),
        _ => unreachable!("catalogue lookup succeeded"),
    }
}

/// Right-hand sides at `x = sqrt(2 - sqrt2)/2`, where `arcsin x = pi/8`,
/// `2x^2 - 1 = -sqrt2/2` and `2x sqrt(1-x^2) = sqrt2/2`.
fn nested_radical_rhs<R: Real>(odd: bool, p: i64, prec: u32) -> R {
    let w = prec + 32;
    let pi = R::pi(w);
    let r2 = R::from_i64(2, w).sqrt();
    let q4 = pi.clone().mul_pow2(-2);
    let q8 = pi.mul_pow2(-3);
    let c = |k| trig_partial(TrigKind::Cos, k).unwrap().eval(&q4, w);
    let s = |k| trig_partial(TrigKind::Sin, k).unwrap().eval(&q4, w);
    let sg = R::from_i64(sign(p), w);
    let v = if odd {
        // 4/(2-sqrt2)^(3/2) ((pi/8)^(2p+1)/(2p+1)! - (-1)^p sqrt2/4^(p+1) (c_p - s_{p-1}))
        let base = R::from_i64(2, w) - &r2;
        let scale = R::from_i64(4, w) / (base.clone() * base.sqrt());
        let lead = q8.powu(2 * p as u32 + 1) / R::from_bigint(&factorial(2 * p as u64 + 1), w);
        let trig = (c(p) - s(p - 1)) * &r2 * sg.mul_pow2(-2 * (p as i32 + 1));
        scale * (lead - trig)
    } else {
        // (2+sqrt2)(pi/8)^(2p)/(2p)! + (-1)^p ((1+sqrt2)(c_{p-1}+s_{p-1}) - (2+sqrt2))/4^p
        let two_plus = R::from_i64(2, w) + &r2;
        let lead = two_plus.clone() * q8.powu(2 * p as u32) / R::from_bigint(&factorial(2 * p as u64), w);
        let trig = (R::one(w) + &r2) * (c(p - 1) + s(p - 1)) - two_plus;
        lead + trig * sg.mul_pow2(-2 * p as i32)
    };
    v.with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u32) -> IdentityParams {
        IdentityParams {
            p,
            ..Default::default()
        }
    }

    fn ctx() -> PrecisionContext {
        PrecisionContext::bits(128).unwrap()
    }

    fn exact_of(id: &str, p: u32) -> PiPoly {
        corollary_rhs::<f64>(id, &params(p), &ctx()).unwrap().exact().unwrap().clone()
    }

    #[test]
    fn small_constants() {
        assert_eq!(exact_of("2.17", 0).to_string(), "(2 - sqrt(2))");
        assert_eq!(exact_of("2.18", 1).to_string(), "-pi/4 + 1");
        assert_eq!(exact_of("2.19", 0).to_string(), "sqrt(2)*pi/4 - sqrt(2)/2");
        assert_eq!(exact_of("2.20", 1).to_string(), "pi^2/32 - pi/8 + 1/4");
        assert_eq!(exact_of("5.8", 0).to_string(), "pi^2/2");
    }

    #[test]
    fn lupu_values() {
        assert_eq!(lupu_rhs(LupuFamily::Odd, 0).unwrap().to_string(), "sqrt(2)");
        assert_eq!(lupu_rhs(LupuFamily::Even, 1).unwrap().to_string(), "pi/2");
        assert!(lupu_rhs(LupuFamily::Even, 0).is_err());
    }

    #[test]
    fn shifted_exact_matches_numeric() {
        let c = ctx();
        for n in [0, 2, 4, 8] {
            for pt in [SpecialPoint::One, SpecialPoint::Sqrt2Over2] {
                let e: f64 = shifted_exact(n, pt).eval(53);
                let v = shifted_rhs(n, &pt.value::<f64>(53), &c).unwrap();
                assert!((e - v).abs() < 1e-14, "n={n} {pt:?}: {e} vs {v}");
            }
        }
    }

    #[test]
    fn unknown_and_invalid() {
        let c = ctx();
        assert!(matches!(corollary_rhs::<f64>("9.99", &params(0), &c), Err(Error::UnknownIdentity(_))));
        assert!(corollary_rhs::<f64>("2.18", &params(0), &c).is_err());
        assert!(identity_lhs::<f64>("2.11", &params(0), 53).is_err());
        let pf = IdentityParams {
            n: 2,
            m: 2,
            ..Default::default()
        };
        assert!(corollary_rhs::<f64>("5.2", &pf, &c).is_err());
    }

    #[test]
    fn xarg_parsing() {
        assert_eq!(XArg::parse("sqrt2/2").unwrap(), XArg::Special(SpecialPoint::Sqrt2Over2));
        assert_eq!(XArg::parse("0.25").unwrap(), XArg::Decimal("0.25".into()));
        assert!(XArg::parse("half").is_err());
        assert!(XArg::parse("1.5").unwrap().to_real::<f64>(53).is_err());
    }
}
