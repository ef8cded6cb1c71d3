//! Nested reciprocal-square sums over odd (`G_p`) and even (`H_p`) integers.
//!
//! `G_p(k)` sums `prod 1/(2n_i+1)^2` over `k > n_1 > ... > n_p >= 0`, with
//! `G_0 = 1`. `H_{p+1}(k)` sums `prod 1/(2n_i)^2` over
//! `k > n_1 > ... > n_p >= 1`, with `H_1 = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HarmonicKind {
    G,
    H,
}

impl HarmonicKind {
    /// Smallest meaningful `p` and `k`.
    pub fn origin(self) -> (usize, usize) {
        match self {
            HarmonicKind::G => (0, 0),
            HarmonicKind::H => (1, 1),
        }
    }
}

/// Exact table over `0..=p_max` × `0..=k_max`. Rows and columns below the
/// kind's origin (`H_0`, `H_p(0)`) are stored as zero so indexing is total.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicTable {
    kind: HarmonicKind,
    p_max: usize,
    k_max: usize,
    values: Vec<Vec<BigRational>>,
}

impl HarmonicTable {
    pub fn kind(&self) -> HarmonicKind {
        self.kind
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// Panics outside the tabulated range.
    pub fn get(&self, p: usize, k: usize) -> &BigRational {
        &self.values[p][k]
    }

    pub fn row(&self, p: usize) -> &[BigRational] {
        &self.values[p]
    }

    /// Entries rounded to `prec` bits, same shape as the exact table.
    pub fn mirror<R: Real>(&self, prec: u32) -> Vec<Vec<R>> {
        self.values
            .iter()
            .map(|row| row.iter().map(|v| R::from_rational(v, prec)).collect())
            .collect()
    }

    /// `p,k,numerator,denominator` rows from the kind's origin.
    pub fn to_csv(&self) -> String {
        let (p0, k0) = self.kind.origin();
        let mut out = String::from("p,k,numerator,denominator\n");
        for p in p0..=self.p_max {
            for k in k0..=self.k_max {
                let v = &self.values[p][k];
                out.push_str(&format!("{p},{k},{},{}\n", v.numer(), v.denom()));
            }
        }
        out
    }
}

fn inv_square(m: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(m) * BigInt::from(m))
}

/// `G_p(k)` via `G_p(k) = G_p(k-1) + G_{p-1}(k-1)/(2k-1)^2`.
pub fn g_table(p_max: usize, k_max: usize) -> HarmonicTable {
    let mut values = vec![vec![BigRational::zero(); k_max + 1]; p_max + 1];
    values[0].iter_mut().for_each(|v| *v = BigRational::one());
    for k in 1..=k_max {
        let w = inv_square(2 * k as u64 - 1);
        for p in 1..=p_max {
            values[p][k] = &values[p][k - 1] + &values[p - 1][k - 1] * &w;
        }
    }
    HarmonicTable {
        kind: HarmonicKind::G,
        p_max,
        k_max,
        values,
    }
}

/// `H_p(k)` via `H_{p+1}(k) = H_{p+1}(k-1) + H_p(k-1)/(2(k-1))^2`.
pub fn h_table(p_max: usize, k_max: usize) -> Result<HarmonicTable> {
    if p_max < 1 || k_max < 1 {
        return invalid("h_table needs p_max >= 1 and k_max >= 1");
    }
    let mut values = vec![vec![BigRational::zero(); k_max + 1]; p_max + 1];
    values[1][1..].iter_mut().for_each(|v| *v = BigRational::one());
    for k in 2..=k_max {
        let w = inv_square(2 * (k as u64 - 1));
        for p in 2..=p_max {
            values[p][k] = &values[p][k - 1] + &values[p - 1][k - 1] * &w;
        }
    }
    Ok(HarmonicTable {
        kind: HarmonicKind::H,
        p_max,
        k_max,
        values,
    })
}

/// Streaming evaluation of `M_0(k) .. M_p(k)` at working precision, for
/// summations too long to tabulate. `G` starts at `k = 0`, `H` at `k = 1`.
#[derive(Clone, Debug)]
pub struct HarmonicStream<R> {
    kind: HarmonicKind,
    k: u64,
    prec: u32,
    cur: Vec<R>,
}

impl<R: Real> HarmonicStream<R> {
    pub fn new(kind: HarmonicKind, p: usize, prec: u32) -> Self {
        let mut cur = vec![R::zero(prec); p + 1];
        let k = match kind {
            HarmonicKind::G => {
                cur[0] = R::one(prec);
                0
            }
            HarmonicKind::H => {
                if p >= 1 {
                    cur[1] = R::one(prec);
                }
                1
            }
        };
        Self { kind, k, prec, cur }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Current `M_p(k)` for the top index `p`.
    pub fn top(&self) -> &R {
        self.cur.last().expect("non-empty")
    }

    pub fn advance(&mut self) {
        let d = match self.kind {
            HarmonicKind::G => 2 * self.k + 1,
            HarmonicKind::H => 2 * self.k,
        };
        let w = R::one(self.prec) / R::from_i64((d * d) as i64, self.prec);
        for j in (1..self.cur.len()).rev() {
            let inc = self.cur[j - 1].clone() * &w;
            self.cur[j] = self.cur[j].clone() + inc;
        }
        self.k += 1;
    }
}

/// `lim_k G_p(k) = (pi/2)^(2p)/(2p)!` and `lim_k H_p(k) = (pi/2)^(2p-2)/(2p-1)!`.
pub fn harmonic_limit<R: Real>(kind: HarmonicKind, p: u32, prec: u32) -> R {
    let half_pi = R::pi(prec).mul_pow2(-1);
    let (e, f) = match kind {
        HarmonicKind::G => (2 * p, 2 * p as u64),
        HarmonicKind::H => (2 * p.saturating_sub(1), (2 * p as u64).saturating_sub(1)),
    };
    half_pi.powu(e) / R::from_bigint(&crate::exact::factorial(f), prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn small_values() {
        let g = g_table(3, 6);
        assert_eq!(*g.get(0, 5), int(1));
        assert_eq!(*g.get(1, 2), rat(10, 9));
        assert_eq!(*g.get(2, 1), int(0));
        let h = h_table(3, 8).unwrap();
        assert_eq!(*h.get(1, 7), int(1));
        assert_eq!(*h.get(2, 3), rat(5, 16));
        assert_eq!(*h.get(2, 1), int(0));
        assert!(h_table(0, 3).is_err());
    }

    #[test]
    fn stream_matches_table() {
        let g = g_table(3, 20);
        let mut s = HarmonicStream::<f64>::new(HarmonicKind::G, 3, 53);
        for k in 0..=20 {
            assert_eq!(s.k(), k as u64);
            let exact: f64 = num_traits::ToPrimitive::to_f64(g.get(3, k)).unwrap();
            assert!((s.top() - exact).abs() <= 1e-15 * exact.max(1.0));
            s.advance();
        }
        let h = h_table(3, 20).unwrap();
        let mut s = HarmonicStream::<f64>::new(HarmonicKind::H, 3, 53);
        for k in 1..=20 {
            let exact: f64 = num_traits::ToPrimitive::to_f64(h.get(3, k)).unwrap();
            assert!((s.top() - exact).abs() <= 1e-15);
            s.advance();
        }
    }

    #[test]
    fn limits_bound_the_table() {
        let g = g_table(4, 200);
        let h = h_table(4, 200).unwrap();
        for p in 1..=4u32 {
            let gl: f64 = harmonic_limit(HarmonicKind::G, p, 53);
            let hl: f64 = harmonic_limit(HarmonicKind::H, p, 53);
            assert!(num_traits::ToPrimitive::to_f64(g.get(p as usize, 200)).unwrap() <= gl);
            assert!(num_traits::ToPrimitive::to_f64(h.get(p as usize, 200)).unwrap() <= hl);
        }
        assert!((harmonic_limit::<f64>(HarmonicKind::G, 1, 53) - std::f64::consts::PI.powi(2) / 8.0).abs() < 1e-15);
    }

    #[test]
    fn csv_shape() {
        let csv = h_table(2, 2).unwrap().to_csv();
        assert_eq!(csv, "p,k,numerator,denominator\n1,1,1,1\n1,2,1,1\n2,1,0,1\n2,2,1,4\n");
    }
}
