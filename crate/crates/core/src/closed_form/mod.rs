//! Exact closed forms in `x`, `s = sqrt(1-x^2)` and `a = arcsin x`.

mod eval;
mod pipoly;
mod theorem;
mod trig;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::exact::binomial;
use crate::{IntPoly, RatPoly};

pub use eval::eval_closed_form;
pub use pipoly::{specialize_pi, PiPoly, QSqrt2, SpecialPoint};
pub use theorem::arcsine_power_integral;
pub use trig::{trig_partial, TrigKind, TrigPartialPoly};

/// Exponents of `x`, `s` and `a` in one monomial.
pub type Exponents = (u32, u32, u32);

/// Sparse polynomial in `(x, s, a)`. Every stored monomial has `s`-degree 0
/// or 1 (`s^2` is rewritten as `1 - x^2` on insertion) and a nonzero
/// coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosedForm {
    terms: BTreeMap<Exponents, BigRational>,
}

impl ClosedForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0, 0)
    }

    pub fn monomial(c: BigRational, i: u32, j: u32, k: u32) -> Self {
        let mut f = Self::zero();
        f.add_term(i, j, k, c);
        f
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1, 0, 0)
    }

    pub fn s() -> Self {
        Self::monomial(BigRational::one(), 0, 1, 0)
    }

    pub fn a() -> Self {
        Self::monomial(BigRational::one(), 0, 0, 1)
    }

    /// Builds a form from arbitrary monomials, reducing `s`-powers.
    pub fn from_terms<I: IntoIterator<Item = (Exponents, BigRational)>>(terms: I) -> Self {
        let mut f = Self::zero();
        for ((i, j, k), c) in terms {
            f.add_term(i, j, k, c);
        }
        f
    }

    /// Polynomial in `x` with integer coefficients.
    pub fn from_x_poly(p: &IntPoly) -> Self {
        Self::from_terms(
            p.terms()
                .map(|(i, c)| ((i as u32, 0, 0), BigRational::from_integer(c.clone()))),
        )
    }

    /// Polynomial in `a` with rational coefficients.
    pub fn from_a_poly(p: &RatPoly) -> Self {
        Self::from_terms(p.terms().map(|(k, c)| ((0, 0, k as u32), c.clone())))
    }

    /// Adds `c x^i s^j a^k`, expanding `s^j = s^(j mod 2) (1-x^2)^(j div 2)`.
    pub fn add_term(&mut self, i: u32, j: u32, k: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let half = j / 2;
        for t in 0..=half {
            let b = binomial(half as u64, t as i64);
            let mut coeff = &c * BigRational::from_integer(b);
            if t % 2 == 1 {
                coeff = -coeff;
            }
            self.accumulate((i + 2 * t, j % 2, k), coeff);
        }
    }

    fn accumulate(&mut self, key: Exponents, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32, k: u32) -> BigRational {
        self.terms.get(&(i, j, k)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Re-inserts every monomial; the identity on reduced forms.
    pub fn reduced(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.clone())))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    pub fn max_a_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.2).max().unwrap_or(0)
    }

    /// Value at `x = 0`, where `a = 0` and `s = 1`.
    pub fn value_at_zero(&self) -> BigRational {
        self.terms
            .iter()
            .filter(|((i, _, k), _)| *i == 0 && *k == 0)
            .fold(BigRational::zero(), |acc, (_, c)| acc + c)
    }

    /// Display order: `a`-degree, then `x`-degree, then `s`-degree, all
    /// descending.
    fn display_order(&self) -> Vec<(&Exponents, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(l, _), (r, _)| (r.2, r.0, r.1).cmp(&(l.2, l.0, l.1)));
        v
    }

    pub fn to_latex(&self) -> String {
        if self.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, ((i, j, k), c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut mono = String::new();
            match i {
                0 => {}
                1 => mono.push('x'),
                _ => mono.push_str(&format!("x^{{{i}}}")),
            }
            if *j == 1 {
                mono.push_str("\\sqrt{1-x^2}");
            }
            match k {
                0 => {}
                1 => mono.push_str("\\arcsin x"),
                _ => mono.push_str(&format!("\\arcsin^{{{k}}} x")),
            }
            let mag = c.abs();
            let (num, den) = (mag.numer().clone(), mag.denom().clone());
            let body = match (mono.is_empty(), num.is_one(), den.is_one()) {
                (true, _, true) => num.to_string(),
                (true, _, false) => format!("\\frac{{{num}}}{{{den}}}"),
                (false, true, true) => mono,
                (false, false, true) => format!("{num}{mono}"),
                (false, _, false) => format!("\\frac{{{num}}}{{{den}}}{mono}"),
            };
            out.push_str(&body);
        }
        out
    }
}

fn plain_monomial(i: u32, j: u32, k: u32) -> String {
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push("x".to_string()),
        _ => parts.push(format!("x^{i}")),
    }
    if j == 1 {
        parts.push("s".into());
    }
    match k {
        0 => {}
        1 => parts.push("a".to_string()),
        _ => parts.push(format!("a^{k}")),
    }
    parts.join("*")
}

/// Writes `|c| * mono` as `n*mono/d`, dropping unit factors.
pub(crate) fn plain_scaled(mag: &BigRational, mono: &str) -> String {
    let (num, den) = (mag.numer(), mag.denom());
    let mut s = match (mono.is_empty(), num.is_one()) {
        (true, _) => num.to_string(),
        (false, true) => mono.to_string(),
        (false, false) => format!("{num}*{mono}"),
    };
    if !den.is_one() {
        s.push_str(&format!("/{den}"));
    }
    s
}

impl fmt::Display for ClosedForm {
    /// Plain text with `s = sqrt(1-x^2)` and `a = arcsin(x)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (n, ((i, j, k), c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            write!(f, "{}", plain_scaled(&c.abs(), &plain_monomial(*i, *j, *k)))?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermRecord {
    x: u32,
    s: u32,
    a: u32,
    num: String,
    den: String,
}

impl Serialize for ClosedForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|((i, j, k), c)| TermRecord {
                x: *i,
                s: *j,
                a: *k,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        let mut st = serializer.serialize_struct("ClosedForm", 1)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl Add for &ClosedForm {
    type Output = ClosedForm;
    fn add(self, rhs: &ClosedForm) -> ClosedForm {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.accumulate(*e, c.clone());
        }
        out
    }
}

impl Sub for &ClosedForm {
    type Output = ClosedForm;
    fn sub(self, rhs: &ClosedForm) -> ClosedForm {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.accumulate(*e, -c.clone());
        }
        out
    }
}

impl Neg for &ClosedForm {
    type Output = ClosedForm;
    fn neg(self) -> ClosedForm {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &ClosedForm {
    type Output = ClosedForm;
    fn mul(self, rhs: &ClosedForm) -> ClosedForm {
        let mut out = ClosedForm::zero();
        for ((i1, j1, k1), c1) in &self.terms {
            for ((i2, j2, k2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, k1 + k2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ClosedForm {
            type Output = ClosedForm;
            fn $m(self, rhs: ClosedForm) -> ClosedForm {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<BigInt> for ClosedForm {
    fn from(n: BigInt) -> Self {
        Self::constant(BigRational::from_integer(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn s_squared_is_reduced() {
        let s2 = &ClosedForm::s() * &ClosedForm::s();
        let expect = &ClosedForm::constant(int(1)) - &(&ClosedForm::x() * &ClosedForm::x());
        assert_eq!(s2, expect);
        let s5 = ClosedForm::monomial(int(3), 1, 5, 2);
        assert!(s5.terms().all(|((_, j, _), _)| *j <= 1));
        assert_eq!(s5.reduced(), s5);
        assert_eq!(s5.reduced().reduced(), s5.reduced());
    }

    #[test]
    fn plain_and_json() {
        let f = ClosedForm::from_terms([
            ((1, 0, 1), int(1)),
            ((0, 1, 0), int(1)),
            ((0, 0, 0), int(-1)),
        ]);
        assert_eq!(f.to_string(), "x*a + s - 1");
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"terms":[{"x":0,"s":0,"a":0,"num":"-1","den":"1"},{"x":0,"s":1,"a":0,"num":"1","den":"1"},{"x":1,"s":0,"a":1,"num":"1","den":"1"}]}"#
        );
        assert_eq!(f.to_latex(), "x\\arcsin x + \\sqrt{1-x^2} - 1");
        let g = ClosedForm::monomial(rat(-3, 4), 2, 1, 2);
        assert_eq!(g.to_string(), "-3*x^2*s*a^2/4");
        assert_eq!(g.to_latex(), "-\\frac{3}{4}x^{2}\\sqrt{1-x^2}\\arcsin^{2} x");
        assert_eq!(ClosedForm::zero().to_string(), "0");
    }

    #[test]
    fn cancellation_removes_terms() {
        let f = &ClosedForm::x() - &ClosedForm::x();
        assert!(f.is_empty());
    }
}
