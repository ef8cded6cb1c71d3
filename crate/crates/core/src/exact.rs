//! Exact integer and rational primitives.

use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{invalid, Result};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `2^e` as an exact rational, for any sign of `e`.
pub fn pow2(e: i64) -> BigRational {
    let m = BigInt::one() << e.unsigned_abs() as usize;
    if e >= 0 {
        BigRational::from_integer(m)
    } else {
        BigRational::new(BigInt::one(), m)
    }
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `C(n, k)`, zero outside `0..=n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Central binomial weight `C(2k,k)/4^k`.
pub fn central_weight(k: u64) -> BigRational {
    BigRational::new(binomial(2 * k, k as i64), BigInt::one() << (2 * k) as usize)
}

/// `sum_i c_i / b_i^e`, put over the common denominator `lcm(b_i)^e` so the
/// sum costs one big division instead of one gcd per term.
pub fn inverse_power_sum<I>(terms: I, e: u32) -> BigRational
where
    I: IntoIterator<Item = (BigInt, u64)>,
{
    let terms: Vec<(BigInt, u64)> = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
    if terms.is_empty() {
        return BigRational::zero();
    }
    let l = terms
        .iter()
        .fold(BigUint::one(), |acc, (_, b)| acc.lcm(&BigUint::from(*b)));
    let num = terms.iter().fold(BigInt::zero(), |acc, (c, b)| {
        let f = BigInt::from(&l / BigUint::from(*b));
        acc + c * num_traits::pow(f, e as usize)
    });
    BigRational::new(num, BigInt::from(num_traits::pow(l, e as usize)))
}

/// Prefix of the Bernoulli (`B_1 = -1/2`) and Euler number sequences.
#[derive(Clone, Debug, Default)]
pub struct NumberTheoryTable {
    bernoulli: Vec<BigRational>,
    euler: Vec<BigInt>,
}

impl NumberTheoryTable {
    pub fn len(&self) -> usize {
        self.bernoulli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bernoulli.is_empty()
    }

    pub fn bernoulli(&self, n: usize) -> &BigRational {
        &self.bernoulli[n]
    }

    pub fn euler(&self, n: usize) -> &BigInt {
        &self.euler[n]
    }

    fn extend_to(&mut self, len: usize) {
        for n in self.bernoulli.len()..len {
            // sum_{j<=n} C(n+1, j) B_j = 0 for n >= 1
            let b = if n == 0 {
                BigRational::one()
            } else {
                let s = (0..n).fold(BigRational::zero(), |acc, j| {
                    acc + &self.bernoulli[j] * BigRational::from_integer(binomial(n as u64 + 1, j as i64))
                });
                -s / int(n as i64 + 1)
            };
            self.bernoulli.push(b);

            // (sum E_n t^n/n!) * cosh t = 1
            let e = if n == 0 {
                BigInt::one()
            } else {
                let s = (2..=n).step_by(2).fold(BigInt::zero(), |acc, j| {
                    acc + binomial(n as u64, j as i64) * &self.euler[n - j]
                });
                -s
            };
            self.euler.push(e);
        }
    }
}

fn shared_table() -> &'static RwLock<Arc<NumberTheoryTable>> {
    static TABLE: OnceLock<RwLock<Arc<NumberTheoryTable>>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// Snapshot holding at least indices `0..=n`. Snapshots are never mutated;
/// growth publishes a new, longer table.
pub fn number_theory_table(n: usize) -> Arc<NumberTheoryTable> {
    {
        let t = shared_table().read().unwrap_or_else(|e| e.into_inner());
        if t.len() > n {
            return Arc::clone(&t);
        }
    }
    let mut guard = shared_table().write().unwrap_or_else(|e| e.into_inner());
    if guard.len() <= n {
        let mut next = (**guard).clone();
        next.extend_to((n + 1).max(2 * guard.len()));
        *guard = Arc::new(next);
    }
    Arc::clone(&guard)
}

pub fn bernoulli(n: usize) -> BigRational {
    number_theory_table(n).bernoulli(n).clone()
}

pub fn euler_number(n: usize) -> BigInt {
    number_theory_table(n).euler(n).clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyKind {
    Bernoulli,
    Euler,
}

/// `B_n(1/2)` or `E_n(1/2)`, evaluated from the Bernoulli-number expansions
/// of the two polynomial families.
pub fn poly_value_half(kind: PolyKind, n: usize) -> BigRational {
    let half = rat(1, 2);
    match kind {
        PolyKind::Bernoulli => {
            let t = number_theory_table(n);
            (0..=n).fold(BigRational::zero(), |acc, j| {
                acc + BigRational::from_integer(binomial(n as u64, j as i64))
                    * t.bernoulli(j)
                    * num_traits::pow(half.clone(), n - j)
            })
        }
        PolyKind::Euler => {
            // E_n(x) = 2/(n+1) sum_{j=0}^{n+1} C(n+1,j) (1-2^j) B_j x^{n+1-j}
            let m = n + 1;
            let t = number_theory_table(m);
            let s = (0..=m).fold(BigRational::zero(), |acc, j| {
                acc + BigRational::from_integer(binomial(m as u64, j as i64))
                    * (int(1) - pow2(j as i64))
                    * t.bernoulli(j)
                    * num_traits::pow(half.clone(), m - j)
            });
            s * rat(2, m as i64)
        }
    }
}

/// Term-by-term value of one of the four binomial-weighted Bernoulli sums
/// `S_1 .. S_4` (with closed values `2p`, `(2p+1)(1-E_2p)`,
/// `2p-1+(2-4^p)B_2p` and `2p`).
pub fn lemma43_sum(which: u8, p: u32) -> Result<BigRational> {
    if p == 0 {
        return invalid("lemma43_sum needs p >= 1");
    }
    let p = p as i64;
    let t = number_theory_table(2 * p as usize);
    let mut acc = BigRational::zero();
    for j in 0..p {
        let m = 2 * p - 2 * j;
        let b = t.bernoulli(m as usize);
        let c = match which {
            1 | 2 => binomial(2 * p as u64 + 1, 2 * j + 1),
            3 | 4 => binomial(2 * p as u64, 2 * j),
            _ => return invalid(format!("lemma43_sum selector must be 1..=4, got {which}")),
        };
        let mut term = BigRational::from_integer(c) * pow2(m) * b;
        if which == 2 || which == 4 {
            term *= pow2(m) - int(1);
        }
        acc += term;
    }
    Ok(acc)
}

/// A value `coefficient / pi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalOverPi {
    pub coefficient: BigRational,
}

impl RationalOverPi {
    pub fn to_real<R: crate::Real>(&self, prec: u32) -> R {
        R::from_rational(&self.coefficient, prec) / R::pi(prec)
    }
}

impl std::fmt::Display for RationalOverPi {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coefficient.denom().is_one() {
            write!(f, "{}/pi", self.coefficient.numer())
        } else {
            write!(f, "{}/({}*pi)", self.coefficient.numer(), self.coefficient.denom())
        }
    }
}

/// `C(2l+1, l+1/2) = Gamma(2l+2)/Gamma(l+3/2)^2 = 4^(2l+1) / (C(2l,l) (2l+1) pi)`.
pub fn half_integer_central_binomial(ell: u64) -> RationalOverPi {
    let num = BigInt::one() << (4 * ell + 2) as usize;
    let den = binomial(2 * ell, ell as i64) * (2 * ell + 1);
    RationalOverPi {
        coefficient: BigRational::new(num, den),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(7, 9), BigInt::zero());
        assert_eq!(binomial(7, -1), BigInt::zero());
        assert_eq!(binomial(40, 20), BigInt::from(137_846_528_820u64));
    }

    #[test]
    fn bernoulli_and_euler_small() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), int(0));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(euler_number(0), BigInt::from(1));
        assert_eq!(euler_number(1), BigInt::from(0));
        assert_eq!(euler_number(2), BigInt::from(-1));
        assert_eq!(euler_number(4), BigInt::from(5));
        assert_eq!(euler_number(10), BigInt::from(-50521));
    }

    #[test]
    fn polynomial_values_at_half() {
        assert_eq!(poly_value_half(PolyKind::Bernoulli, 1), int(0));
        assert_eq!(poly_value_half(PolyKind::Bernoulli, 2), rat(-1, 12));
        assert_eq!(poly_value_half(PolyKind::Euler, 0), int(1));
        assert_eq!(poly_value_half(PolyKind::Euler, 1), int(0));
        assert_eq!(poly_value_half(PolyKind::Euler, 2), rat(-1, 4));
    }

    #[test]
    fn bernoulli_sums() {
        assert_eq!(lemma43_sum(1, 1).unwrap(), int(2));
        assert_eq!(lemma43_sum(4, 3).unwrap(), int(6));
        assert_eq!(lemma43_sum(3, 1).unwrap(), rat(2, 3));
        assert!(lemma43_sum(5, 1).is_err());
        assert!(lemma43_sum(1, 0).is_err());
    }

    #[test]
    fn half_integer_binomial() {
        assert_eq!(half_integer_central_binomial(0).coefficient, int(4));
        assert_eq!(half_integer_central_binomial(1).coefficient, rat(32, 3));
        assert_eq!(half_integer_central_binomial(2).coefficient, rat(512, 15));
        assert_eq!(half_integer_central_binomial(1).to_string(), "32/(3*pi)");
    }

    #[test]
    fn inverse_powers() {
        let s = inverse_power_sum([(BigInt::from(1), 1), (BigInt::from(1), 2), (BigInt::from(-2), 3)], 2);
        assert_eq!(s, int(1) + rat(1, 4) - rat(2, 9));
        assert_eq!(inverse_power_sum(Vec::new(), 3), int(0));
    }

    #[test]
    fn table_snapshots_are_prefix_consistent() {
        let small = number_theory_table(5);
        let big = number_theory_table(40);
        for n in 0..small.len() {
            assert_eq!(small.bernoulli(n), big.bernoulli(n));
            assert_eq!(small.euler(n), big.euler(n));
        }
    }
}
