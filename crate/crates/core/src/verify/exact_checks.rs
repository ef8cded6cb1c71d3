//! Exact rational identities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::exact::{bernoulli, binomial, central_weight, euler_number, int, inverse_power_sum, lemma43_sum, pow2};

/// Two binomial identities relating odd-square power sums to central
/// binomial sums:
///
/// ```text
/// 4 sum_{k<=(l-1)/2} C(2l, l-2k-1)/(2k+1)^2 = C(2l,l) sum_{j=1..l} 4^j/(C(2j,j) j^2)
/// sum_{k=0..l} C(2l+1, l-k)/(2k+1)^2 = 4^(2l)/(C(2l,l)(2l+1)) sum_{j=0..l} b_j/(2j+1)
/// ```
pub fn check_cor54(ell: u64) -> (bool, bool) {
    let (a, b, c, d) = cor54_sides(ell);
    (a == b, c == d)
}

/// Both sides of each identity in [`check_cor54`].
pub fn cor54_sides(ell: u64) -> (BigRational, BigRational, BigRational, BigRational) {
    let l = ell as i64;
    let lhs1 = inverse_power_sum(
        (0..=l / 2).map(|k| (binomial(2 * ell, l - 2 * k - 1) * 4, 2 * k as u64 + 1)),
        2,
    );
    let central = BigRational::from_integer(binomial(2 * ell, l));
    let rhs1 = (1..=l).fold(BigRational::zero(), |acc, j| {
        let den = binomial(2 * j as u64, j) * BigInt::from(j * j);
        acc + BigRational::new(BigInt::one() << (2 * j) as usize, den)
    }) * &central;
    let lhs2 = inverse_power_sum((0..=l).map(|k| (binomial(2 * ell + 1, l - k), 2 * k as u64 + 1)), 2);
    let sum = (0..=l).fold(BigRational::zero(), |acc, j| {
        acc + central_weight(j as u64) / int(2 * j + 1)
    });
    let rhs2 = pow2(4 * l) / (central * int(2 * l + 1)) * sum;
    (lhs1, rhs1, lhs2, rhs2)
}

/// Closed value of the `which`-th Bernoulli/Euler sum: `2p`,
/// `(2p+1)(1 - E_2p)`, `2p - 1 + (2 - 4^p) B_2p`, `2p`.
pub fn lemma43_closed(which: u8, p: u32) -> BigRational {
    let p = p as i64;
    match which {
        1 | 4 => int(2 * p),
        2 => int(2 * p + 1) * (int(1) - BigRational::from_integer(euler_number(2 * p as usize))),
        _ => int(2 * p - 1) + (int(2) - pow2(2 * p)) * bernoulli(2 * p as usize),
    }
}

/// `true` when the term-by-term sum equals its closed value.
pub fn check_lemma43(which: u8, p: u32) -> Result<bool> {
    Ok(lemma43_sum(which, p)? == lemma43_closed(which, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn first_case_values() {
        let (a, b, c, d) = cor54_sides(1);
        assert_eq!((a, b), (int(4), int(4)));
        assert_eq!((c, d), (rat(28, 9), rat(28, 9)));
    }

    #[test]
    fn bernoulli_euler_sums_small() {
        for which in 1..=4 {
            for p in 1..=6 {
                assert!(check_lemma43(which, p).unwrap(), "S_{which}({p})");
            }
        }
    }
}
