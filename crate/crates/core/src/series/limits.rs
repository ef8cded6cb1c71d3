//! Finite binomial sums converging to zeta/beta values, and the sequences
//! converging to powers of `pi`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::catalogue::{cor23_rhs, Cor23};
use crate::closed_form::PiPoly;
use crate::error::{invalid, Result};
use crate::exact::{bernoulli, binomial, euler_number, factorial, inverse_power_sum, pow2, sign};
use crate::scalar::Real;

/// The four normalized binomial sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiniteSum {
    /// `sum_{k=1..l} C(2l,l-k)/k^s / C(2l,l)`, tends to `zeta(s)`.
    Zeta,
    /// With signs `(-1)^(k-1)`, tends to `(1 - 2^(1-s)) zeta(s)`.
    AltZeta,
    /// `sum_{k=0..l} C(2l+1,l-k)/(2k+1)^s / C(2l+1,l+1)`, tends to
    /// `(1 - 2^(-s)) zeta(s)`.
    OddZeta,
    /// With signs `(-1)^k`, tends to `beta(s)`.
    Beta,
}

impl FiniteSum {
    pub const ALL: [FiniteSum; 4] = [FiniteSum::Zeta, FiniteSum::AltZeta, FiniteSum::OddZeta, FiniteSum::Beta];

    pub fn label(self) -> &'static str {
        match self {
            FiniteSum::Zeta => "4.9",
            FiniteSum::AltZeta => "4.10",
            FiniteSum::OddZeta => "4.11",
            FiniteSum::Beta => "4.12",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.label() == s)
    }
}

/// Exact value of one normalized binomial sum.
pub fn zeta_beta_finite(kind: FiniteSum, s: u32, ell: u64) -> Result<BigRational> {
    if s < 2 {
        return invalid("finite zeta/beta sums need s >= 2");
    }
    if ell == 0 {
        return invalid("finite zeta/beta sums need ell >= 1");
    }
    let l = ell as i64;
    let v = match kind {
        FiniteSum::Zeta | FiniteSum::AltZeta => {
            let alt = kind == FiniteSum::AltZeta;
            let sum = inverse_power_sum(
                (1..=l).map(|k| {
                    let c = binomial(2 * ell, l - k);
                    (if alt { c * sign(k - 1) } else { c }, k as u64)
                }),
                s,
            );
            sum / BigRational::from_integer(binomial(2 * ell, l))
        }
        FiniteSum::OddZeta | FiniteSum::Beta => {
            let alt = kind == FiniteSum::Beta;
            let sum = inverse_power_sum(
                (0..=l).map(|k| {
                    let c = binomial(2 * ell + 1, l - k);
                    (if alt { c * sign(k) } else { c }, 2 * k as u64 + 1)
                }),
                s,
            );
            sum / BigRational::from_integer(binomial(2 * ell + 1, l + 1))
        }
    };
    Ok(v)
}

/// `sum_{k>=0} (-1)^k a_k` for a totally monotone sequence, by the
/// Cohen-Rodriguez Villegas-Zagier weights (error about `5.8^(-n)`).
pub fn alternating_sum<R: Real>(a: impl Fn(u64) -> R, prec: u32) -> R {
    let n = (prec as f64 * std::f64::consts::LN_2 / 5.828f64.ln()).ceil() as i64 + 8;
    let w = prec + 16;
    let base = R::from_i64(3, w) + R::from_i64(8, w).sqrt();
    let d = base.powu(n as u32);
    let d = (d.clone() + R::one(w) / d).mul_pow2(-1);
    let mut b = -R::one(w);
    let mut c = -d.clone();
    let mut s = R::zero(w);
    for k in 0..n {
        c = b.clone() - c;
        s = s + c.clone() * a(k as u64).with_prec(w);
        // (k+n)(k-n) / ((k+1/2)(k+1)) = 2(k+n)(k-n) / ((2k+1)(k+1))
        let num = R::from_i64(2 * (k + n) * (k - n), w);
        let den = R::from_i64((2 * k + 1) * (k + 1), w);
        b = b * num / den;
    }
    (s / d).with_prec(prec)
}

/// `zeta(s)` for integer `s >= 2`: the Bernoulli formula at even `s`, the
/// alternating series `eta(s)/(1 - 2^(1-s))` otherwise.
pub fn riemann_zeta<R: Real>(s: u32, prec: u32) -> R {
    assert!(s >= 2, "zeta needs s >= 2");
    let w = prec + 16;
    let v = if s.is_multiple_of(2) {
        let n = (s / 2) as i64;
        let b = bernoulli(s as usize) * BigRational::from_integer(BigInt::from(sign(n - 1)));
        let two_pi = R::pi(w).mul_pow2(1);
        let c = b / BigRational::from_integer(factorial(s as u64) * 2);
        two_pi.powu(s) * R::from_rational(&c, w)
    } else {
        let eta = alternating_sum(|k| R::one(w) / R::from_i64(k as i64 + 1, w).powu(s), w);
        eta / (R::one(w) - R::pow2(1 - s as i32, w))
    };
    v.with_prec(prec)
}

/// `beta(s)` for integer `s >= 1`: the Euler-number formula at odd `s`,
/// the alternating series otherwise.
pub fn dirichlet_beta<R: Real>(s: u32, prec: u32) -> R {
    assert!(s >= 1, "beta needs s >= 1");
    let w = prec + 16;
    let v = if s % 2 == 1 {
        let n = ((s - 1) / 2) as i64;
        let e = BigRational::from_integer(euler_number(2 * n as usize) * sign(n));
        let c = e / BigRational::from_integer(factorial(2 * n as u64)) * pow2(-(2 * n + 2));
        R::pi(w).powu(s) * R::from_rational(&c, w)
    } else {
        alternating_sum(|k| R::one(w) / R::from_i64(2 * k as i64 + 1, w).powu(s), w)
    };
    v.with_prec(prec)
}

/// Limit of [`zeta_beta_finite`] as `ell` grows.
pub fn lemma42_target<R: Real>(kind: FiniteSum, s: u32, prec: u32) -> R {
    let w = prec + 8;
    let v = match kind {
        FiniteSum::Zeta => riemann_zeta::<R>(s, w),
        FiniteSum::AltZeta => riemann_zeta::<R>(s, w) * (R::one(w) - R::pow2(1 - s as i32, w)),
        FiniteSum::OddZeta => riemann_zeta::<R>(s, w) * (R::one(w) - R::pow2(-(s as i32), w)),
        FiniteSum::Beta => dirichlet_beta::<R>(s, w),
    };
    v.with_prec(prec)
}

/// The two sequences tending to odd and even powers of `pi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PiFamily {
    /// `2^(2p+n+1) (2p)!/C(n,n/2) sum_k b_k G_p(k)/(2k+n+1)`, tends to `pi^(2p+1)`.
    Odd,
    /// `2^(2p+n-1) (2p-1)!/C(n,n/2) sum_k 4^k H_p(k)/(C(2k,k) k (2k+n))`,
    /// `p >= 1`, tends to `pi^(2p)`.
    Even,
}

impl PiFamily {
    pub fn target_power(self, p: u32) -> u32 {
        match self {
            PiFamily::Odd => 2 * p + 1,
            PiFamily::Even => 2 * p,
        }
    }
}

fn check_pi_args(family: PiFamily, p: u32, n: u64) -> Result<()> {
    if n == 0 {
        return invalid("pi-limit sequences start at n = 1");
    }
    if family == PiFamily::Even && p == 0 {
        return invalid("the even pi-limit family needs p >= 1");
    }
    Ok(())
}

/// `(rational part, power of pi)` of the prefactor; for odd `n` the
/// half-integer central binomial contributes `pi` to the numerator.
fn prefactor_parts(family: PiFamily, p: u32, n: u64) -> (BigRational, usize) {
    let (e, f) = match family {
        PiFamily::Odd => (2 * p as i64 + n as i64 + 1, factorial(2 * p as u64)),
        PiFamily::Even => (2 * p as i64 + n as i64 - 1, factorial(2 * p as u64 - 1)),
    };
    let top = pow2(e) * BigRational::from_integer(f);
    if n.is_multiple_of(2) {
        let c = binomial(n, (n / 2) as i64);
        (top / BigRational::from_integer(c), 0)
    } else {
        // 1/C(2l+1, l+1/2) = C(2l,l) (2l+1) pi / 4^(2l+1)
        let l = (n - 1) / 2;
        let inv = BigRational::from_integer(binomial(2 * l, l as i64) * (2 * l + 1)) * pow2(-(4 * l as i64 + 2));
        (top * inv, 1)
    }
}

/// Numeric prefactor of the `n`-th sequence element.
pub fn pi_limit_prefactor<R: Real>(family: PiFamily, p: u32, n: u64, prec: u32) -> Result<R> {
    check_pi_args(family, p, n)?;
    let (r, k) = prefactor_parts(family, p, n);
    Ok(R::from_rational(&r, prec) * R::pi(prec).powu(k as u32))
}

/// The `n`-th sequence element as an exact polynomial in `pi`: the inner
/// series is one of the four `x = 1` families.
pub fn pi_limit_exact(family: PiFamily, p: u32, n: u64) -> Result<PiPoly> {
    check_pi_args(family, p, n)?;
    let ell = |m: u64| u32::try_from(m).map_err(|_| crate::Error::InvalidParameter("n too large".into()));
    let inner = match (family, n % 2) {
        // 2k + n + 1 with n = 2l: odd denominators
        (PiFamily::Odd, 0) => cor23_rhs(Cor23::OddOdd, p, ell(n / 2)?)?,
        (PiFamily::Odd, _) => cor23_rhs(Cor23::OddEven, p, ell((n - 1) / 2)?)?,
        // 2 sum W_k H_p(k)/(2k + n)
        (PiFamily::Even, 0) => cor23_rhs(Cor23::EvenEven, p, ell(n / 2)?)?.scale(&BigRational::from_integer(2.into())),
        (PiFamily::Even, _) => {
            cor23_rhs(Cor23::EvenOdd, p, ell((n - 1) / 2)?)?.scale(&BigRational::from_integer(2.into()))
        }
    };
    let (r, k) = prefactor_parts(family, p, n);
    Ok(inner.scale(&r).shift(k))
}

/// The `n`-th element of a pi-limit sequence at `prec` bits.
///
/// The inner series converges only like `K^(-1/2)` in the number of terms,
/// so the element is evaluated from its exact value instead; the
/// numerically summed variant is available through
/// [`super::SeriesSpec::PiLimit`].
pub fn pi_limit_value<R: Real>(family: PiFamily, p: u32, n: u64, prec: u32) -> Result<R> {
    let exact = pi_limit_exact(family, p, n)?;
    // cancellation in the pi-polynomial grows with n and p
    let extra = 64 + 2 * (64 - n.leading_zeros()) + 8 * p;
    Ok(exact.eval::<R>(prec + extra).with_prec(prec))
}

/// `pi^(2p+1)` (odd family) or `pi^(2p)` (even family).
pub fn pi_limit_target<R: Real>(family: PiFamily, p: u32, prec: u32) -> R {
    R::pi(prec).powu(family.target_power(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use rug::Float;

    #[test]
    fn small_finite_sums() {
        // C(2,0)/C(2,1) = 1/2
        assert_eq!(zeta_beta_finite(FiniteSum::Zeta, 2, 1).unwrap(), rat(1, 2));
        // (C(3,1) - C(3,0)/3^3)/C(3,2) = (3 - 1/27)/3
        assert_eq!(zeta_beta_finite(FiniteSum::Beta, 3, 1).unwrap(), rat(80, 81));
        assert!(zeta_beta_finite(FiniteSum::Zeta, 1, 3).is_err());
        assert!(zeta_beta_finite(FiniteSum::Zeta, 2, 0).is_err());
    }

    #[test]
    fn special_values() {
        let p = 200;
        let z3 = riemann_zeta::<Float>(3, p);
        let expect = Float::with_val(p, 3).zeta();
        assert!(Float::with_val(p, &z3 - &expect).abs() < Float::with_val(p, 1) >> 190);
        let z4 = riemann_zeta::<Float>(4, p);
        assert!(Float::with_val(p, &z4 - Float::with_val(p, 4).zeta()).abs() < Float::with_val(p, 1) >> 190);
        let b2 = dirichlet_beta::<Float>(2, p);
        let catalan = Float::with_val(p, rug::float::Constant::Catalan);
        assert!(Float::with_val(p, &b2 - &catalan).abs() < Float::with_val(p, 1) >> 190);
        let b3: f64 = dirichlet_beta(3, 53);
        assert!((b3 - std::f64::consts::PI.powi(3) / 32.0).abs() < 1e-15);
    }

    #[test]
    fn pi_limit_small_elements() {
        // n = 2: 2^3/2 * sum b_k/(2k+3) = 4 (pi/4) = pi
        let v = pi_limit_exact(PiFamily::Odd, 0, 2).unwrap();
        assert_eq!(v.to_string(), "pi");
        assert!(pi_limit_exact(PiFamily::Even, 0, 4).is_err());
        assert!(pi_limit_exact(PiFamily::Odd, 1, 0).is_err());
    }
}
