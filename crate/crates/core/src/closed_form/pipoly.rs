//! Exact polynomials in `pi` with coefficients in `Q(sqrt 2)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{plain_scaled, ClosedForm};
use crate::error::Error;
use crate::exact::{int, pow2};
use crate::scalar::Real;

/// `u + v sqrt(2)` with rational `u`, `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    pub u: BigRational,
    pub v: BigRational,
}

impl QSqrt2 {
    pub fn new(u: BigRational, v: BigRational) -> Self {
        Self { u, v }
    }

    pub fn rational(u: BigRational) -> Self {
        Self::new(u, BigRational::zero())
    }

    pub fn sqrt2() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.u * r, &self.v * r)
    }

    pub fn to_real<R: Real>(&self, prec: u32) -> R {
        let u = R::from_rational(&self.u, prec);
        if self.v.is_zero() {
            return u;
        }
        u + R::from_rational(&self.v, prec) * R::from_i64(2, prec).sqrt()
    }
}

impl Add for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, r: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.u + &r.u, &self.v + &r.v)
    }
}

impl Sub for &QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, r: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.u - &r.u, &self.v - &r.v)
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.u.clone(), -self.v.clone())
    }
}

impl Mul for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, r: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(
            &self.u * &r.u + int(2) * &self.v * &r.v,
            &self.u * &r.v + &self.v * &r.u,
        )
    }
}

/// `sum_j c_j pi^j` with `c_j` in `Q(sqrt 2)`. Trailing zero coefficients
/// are trimmed so equality is coefficient-wise.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PiPoly {
    coeffs: Vec<QSqrt2>,
}

impl PiPoly {
    pub fn new(mut coeffs: Vec<QSqrt2>) -> Self {
        while coeffs.last().is_some_and(QSqrt2::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: QSqrt2) -> Self {
        Self::new(vec![c])
    }

    pub fn rational(r: BigRational) -> Self {
        Self::constant(QSqrt2::rational(r))
    }

    /// `c pi^j`.
    pub fn term(c: QSqrt2, j: usize) -> Self {
        let mut v = vec![QSqrt2::zero(); j + 1];
        v[j] = c;
        Self::new(v)
    }

    /// `r pi^j` with rational `r`.
    pub fn rat_term(r: BigRational, j: usize) -> Self {
        Self::term(QSqrt2::rational(r), j)
    }

    pub fn coeffs(&self) -> &[QSqrt2] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> QSqrt2 {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(r)).collect())
    }

    pub fn scale_q(&self, c: &QSqrt2) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `pi^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut v = vec![QSqrt2::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// Numeric value with `pi` and `sqrt 2` taken at `prec` bits.
    pub fn eval<R: Real>(&self, prec: u32) -> R {
        let pi = R::pi(prec);
        let sqrt2 = R::from_i64(2, prec).sqrt();
        self.coeffs.iter().rev().fold(R::zero(prec), |acc, c| {
            let mut v = R::from_rational(&c.u, prec);
            if !c.v.is_zero() {
                v = v + R::from_rational(&c.v, prec) * &sqrt2;
            }
            acc * &pi + v
        })
    }

    fn nonzero_desc(&self) -> impl Iterator<Item = (usize, &QSqrt2)> {
        self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero())
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (j, c)) in self.nonzero_desc().enumerate() {
            let pi = match j {
                0 => String::new(),
                1 => "\\pi".into(),
                _ => format!("\\pi^{{{j}}}"),
            };
            let (neg, body) = if c.v.is_zero() || c.u.is_zero() {
                let (r, root) = if c.v.is_zero() { (&c.u, "") } else { (&c.v, "\\sqrt{2}") };
                let mag = r.abs();
                let top = format!("{root}{pi}");
                let num = if mag.numer().is_one() && !top.is_empty() {
                    top
                } else {
                    format!("{}{top}", mag.numer())
                };
                let body = if mag.denom().is_one() {
                    num
                } else {
                    format!("\\frac{{{num}}}{{{}}}", mag.denom())
                };
                (r.is_negative(), body)
            } else {
                (false, format!("\\left({}\\right){pi}", latex_q(c)))
            };
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

fn latex_rat(r: &BigRational) -> String {
    let mag = r.abs();
    if mag.denom().is_one() {
        mag.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
    }
}

fn latex_q(c: &QSqrt2) -> String {
    let sign_u = if c.u.is_negative() { "-" } else { "" };
    let op = if c.v.is_negative() { "-" } else { "+" };
    let v = c.v.abs();
    let vs = if v.is_one() {
        "\\sqrt{2}".to_string()
    } else {
        format!("{}\\sqrt{{2}}", latex_rat(&v))
    };
    format!("{sign_u}{} {op} {vs}", latex_rat(&c.u))
}

fn plain_q(c: &QSqrt2) -> String {
    let u = &c.u;
    let op = if c.v.is_negative() { "-" } else { "+" };
    format!("({u} {op} {})", plain_scaled(&c.v.abs(), "sqrt(2)"))
}

impl fmt::Display for PiPoly {
    /// Plain text in descending powers of `pi`, e.g. `pi/2 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (j, c)) in self.nonzero_desc().enumerate() {
            let pi = match j {
                0 => String::new(),
                1 => "pi".into(),
                _ => format!("pi^{j}"),
            };
            let (neg, body) = if c.v.is_zero() {
                (c.u.is_negative(), plain_scaled(&c.u.abs(), &pi))
            } else if c.u.is_zero() {
                let mono = if pi.is_empty() {
                    "sqrt(2)".to_string()
                } else {
                    format!("sqrt(2)*{pi}")
                };
                (c.v.is_negative(), plain_scaled(&c.v.abs(), &mono))
            } else if pi.is_empty() {
                (false, plain_q(c))
            } else {
                (false, format!("{}*{pi}", plain_q(c)))
            };
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

impl Serialize for PiPoly {
    /// `{"coefficients":[{"pi_power":j,"rational":"u","sqrt2":"v"}, ...]}`
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct Coef {
            pi_power: usize,
            rational: String,
            sqrt2: String,
        }
        let coefficients: Vec<Coef> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| Coef {
                pi_power: j,
                rational: c.u.to_string(),
                sqrt2: c.v.to_string(),
            })
            .collect();
        let mut st = serializer.serialize_struct("PiPoly", 1)?;
        st.serialize_field("coefficients", &coefficients)?;
        st.end()
    }
}

impl Add for &PiPoly {
    type Output = PiPoly;
    fn add(self, r: &PiPoly) -> PiPoly {
        let n = self.coeffs.len().max(r.coeffs.len());
        PiPoly::new((0..n).map(|j| &self.coeff(j) + &r.coeff(j)).collect())
    }
}

impl Sub for &PiPoly {
    type Output = PiPoly;
    fn sub(self, r: &PiPoly) -> PiPoly {
        let n = self.coeffs.len().max(r.coeffs.len());
        PiPoly::new((0..n).map(|j| &self.coeff(j) - &r.coeff(j)).collect())
    }
}

impl Neg for &PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        PiPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &PiPoly {
    type Output = PiPoly;
    fn mul(self, r: &PiPoly) -> PiPoly {
        if self.is_zero() || r.is_zero() {
            return PiPoly::zero();
        }
        let mut out = vec![QSqrt2::zero(); self.coeffs.len() + r.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in r.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        PiPoly::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PiPoly {
            type Output = PiPoly;
            fn $m(self, rhs: PiPoly) -> PiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Algebraic points where `arcsin` is a rational multiple of `pi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpecialPoint {
    /// `x = 1`: `s = 0`, `a = pi/2`.
    One,
    /// `x = sqrt(2)/2`: `s = sqrt(2)/2`, `a = pi/4`.
    Sqrt2Over2,
}

impl SpecialPoint {
    pub fn value<R: Real>(self, prec: u32) -> R {
        match self {
            SpecialPoint::One => R::one(prec),
            SpecialPoint::Sqrt2Over2 => R::from_i64(2, prec).sqrt().mul_pow2(-1),
        }
    }
}

impl FromStr for SpecialPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().replace(' ', "").as_str() {
            "1" | "1.0" | "one" => Ok(SpecialPoint::One),
            "sqrt2/2" | "sqrt(2)/2" | "1/sqrt2" | "1/sqrt(2)" => Ok(SpecialPoint::Sqrt2Over2),
            other => Err(Error::Domain(format!(
                "exact specialization supports x = 1 and x = sqrt2/2, got `{other}`"
            ))),
        }
    }
}

/// `(sqrt(2)/2)^e` in `Q(sqrt 2)`.
fn half_sqrt2_pow(e: u32) -> QSqrt2 {
    if e.is_multiple_of(2) {
        QSqrt2::rational(pow2(-(e as i64) / 2))
    } else {
        QSqrt2::new(BigRational::zero(), pow2(-(e as i64 + 1) / 2))
    }
}

/// Substitutes an algebraic point into a closed form, collecting the result
/// exactly in `Q(sqrt 2)[pi]`.
pub fn specialize_pi(cf: &ClosedForm, point: SpecialPoint) -> PiPoly {
    let mut out = PiPoly::zero();
    for ((i, j, k), c) in cf.terms() {
        let term = match point {
            SpecialPoint::One => {
                if *j == 1 {
                    continue;
                }
                PiPoly::rat_term(c * pow2(-(*k as i64)), *k as usize)
            }
            SpecialPoint::Sqrt2Over2 => {
                PiPoly::term(half_sqrt2_pow(i + j).scale(&(c * pow2(-2 * *k as i64))), *k as usize)
            }
        };
        out = &out + &term;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::arcsine_power_integral;
    use crate::exact::rat;

    #[test]
    fn specialize_first_moment() {
        let f = arcsine_power_integral(0, 1).unwrap();
        let one = specialize_pi(&f, SpecialPoint::One);
        assert_eq!(one, PiPoly::new(vec![QSqrt2::rational(int(-1)), QSqrt2::rational(rat(1, 2))]));
        assert_eq!(one.to_string(), "pi/2 - 1");
        let h = specialize_pi(&f, SpecialPoint::Sqrt2Over2);
        assert_eq!(h.coeff(1), QSqrt2::new(int(0), rat(1, 8)));
        assert_eq!(h.coeff(0), QSqrt2::new(int(-1), rat(1, 2)));
        assert_eq!(h.to_string(), "sqrt(2)*pi/8 + (-1 + sqrt(2)/2)");
    }

    #[test]
    fn rendering() {
        let p = PiPoly::new(vec![
            QSqrt2::new(int(2), int(-1)),
            QSqrt2::rational(rat(-47, 144)),
            QSqrt2::zero(),
            QSqrt2::rational(rat(1, 96)),
        ]);
        assert_eq!(p.to_string(), "pi^3/96 - 47*pi/144 + (2 - sqrt(2))");
        assert_eq!(p.to_latex(), "\\frac{\\pi^{3}}{96} - \\frac{47\\pi}{144} + \\left(2 - \\sqrt{2}\\right)");
        assert_eq!(PiPoly::zero().to_string(), "0");
        assert_eq!(
            serde_json::to_string(&PiPoly::rat_term(rat(1, 2), 1)).unwrap(),
            r#"{"coefficients":[{"pi_power":1,"rational":"1/2","sqrt2":"0"}]}"#
        );
    }

    #[test]
    fn arithmetic_and_eval() {
        let s = PiPoly::constant(QSqrt2::sqrt2());
        assert_eq!(&s * &s, PiPoly::rational(int(2)));
        let v: f64 = PiPoly::rat_term(rat(1, 2), 1).eval(53);
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!("sqrt2/2".parse::<SpecialPoint>().unwrap(), SpecialPoint::Sqrt2Over2);
        assert!("0.5".parse::<SpecialPoint>().is_err());
    }
}
