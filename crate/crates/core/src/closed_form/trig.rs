use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::exact::{factorial, sign};
use crate::scalar::Real;
use crate::RatPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrigKind {
    Cos,
    Sin,
}

/// Truncated Maclaurin series `c_p(z) = sum_{j<=p} (-1)^j z^(2j)/(2j)!` or
/// `s_p(z) = sum_{j<=p} (-1)^j z^(2j+1)/(2j+1)!`; `s_{-1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigPartialPoly {
    kind: TrigKind,
    p: i64,
    coeffs: RatPoly,
}

pub fn trig_partial(kind: TrigKind, p: i64) -> Result<TrigPartialPoly> {
    let min = match kind {
        TrigKind::Cos => 0,
        TrigKind::Sin => -1,
    };
    if p < min {
        return invalid(format!("{kind:?} partial sum needs p >= {min}, got {p}"));
    }
    let offset = match kind {
        TrigKind::Cos => 0,
        TrigKind::Sin => 1,
    };
    let len = if p < 0 { 0 } else { (2 * p + offset + 1) as usize };
    let mut c = vec![BigRational::from_integer(BigInt::from(0)); len];
    for j in 0..=p {
        let d = (2 * j + offset) as u64;
        c[d as usize] = BigRational::new(BigInt::from(sign(j)), factorial(d));
    }
    Ok(TrigPartialPoly {
        kind,
        p,
        coeffs: RatPoly::new(c),
    })
}

/// Infallible variant for internal use where `p` is known to be in range.
pub(crate) fn partial(kind: TrigKind, p: i64) -> TrigPartialPoly {
    trig_partial(kind, p).expect("partial sum index in range")
}

impl TrigPartialPoly {
    pub fn kind(&self) -> TrigKind {
        self.kind
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn coeffs(&self) -> &RatPoly {
        &self.coeffs
    }

    /// The polynomial `z -> f(m z)`, i.e. coefficient `j` scaled by `m^j`.
    pub fn scaled(&self, m: &BigRational) -> RatPoly {
        let mut pow = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.coeffs().len());
        for c in self.coeffs.coeffs() {
            out.push(c * &pow);
            pow *= m;
        }
        RatPoly::new(out)
    }

    pub fn eval<R: Real>(&self, z: &R, prec: u32) -> R {
        let z = z.with_prec(prec);
        self.coeffs
            .coeffs()
            .iter()
            .rev()
            .fold(R::zero(prec), |acc, c| acc * &z + R::from_rational(c, prec))
    }
}

impl fmt::Display for TrigPartialPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.coeffs.to_string();
        write!(f, "{}", s.replace('x', "z"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn small_partials() {
        assert_eq!(trig_partial(TrigKind::Cos, 0).unwrap().coeffs().coeffs(), &[int(1)]);
        assert!(trig_partial(TrigKind::Sin, -1).unwrap().coeffs().is_zero());
        let s1 = trig_partial(TrigKind::Sin, 1).unwrap();
        assert_eq!(s1.coeffs().coeffs(), &[int(0), int(1), int(0), rat(-1, 6)]);
        assert_eq!(s1.to_string(), "-1/6*z^3 + z");
        assert!(trig_partial(TrigKind::Cos, -1).is_err());
        assert!(trig_partial(TrigKind::Sin, -2).is_err());
    }

    #[test]
    fn scaling_and_eval() {
        let c1 = trig_partial(TrigKind::Cos, 1).unwrap();
        assert_eq!(c1.scaled(&int(3)).coeffs(), &[int(1), int(0), rat(-9, 2)]);
        let v: f64 = c1.eval(&0.5, 53);
        assert!((v - 0.875).abs() < 1e-15);
    }

    #[test]
    fn partial_sums_converge_to_trig() {
        let z = 0.9f64;
        let c = trig_partial(TrigKind::Cos, 12).unwrap().eval(&z, 53);
        let s = trig_partial(TrigKind::Sin, 12).unwrap().eval(&z, 53);
        assert!((c - z.cos()).abs() < 1e-15 && (s - z.sin()).abs() < 1e-15);
    }
}
