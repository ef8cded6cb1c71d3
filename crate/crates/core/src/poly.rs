//! Dense univariate polynomials over any commutative ring from `num-traits`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Coefficients are stored by ascending degree with no trailing zeros, so
/// the zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + Zero> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Nonzero `(degree, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &T)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn map<U: Clone + Zero>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Clone + Zero + One> Poly<T> {
    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }
}

impl<T> Poly<T>
where
    T: Clone + Zero + for<'a> Mul<&'a T, Output = T> + for<'a> Add<&'a T, Output = T>,
{
    /// Horner evaluation in the coefficient ring.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k).collect())
    }
}

impl<T: Clone + Zero + Add<Output = T>> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Clone + Zero + Sub<Output = T>> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Clone + Zero + Neg<Output = T>> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().cloned().map(Neg::neg).collect())
    }
}

impl<T: Clone + Zero + Mul<Output = T>> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $($bound:tt)+) => {
        impl<T: Clone + Zero + $($bound)+> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add, Add<Output = T>);
forward_owned!(Sub, sub, Sub<Output = T>);
forward_owned!(Mul, mul, Mul<Output = T>);

impl<T: fmt::Display + Clone + Zero> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.as_str()) {
                (0, m) => write!(f, "{m}")?,
                (1, "1") => write!(f, "x")?,
                (1, m) => write!(f, "{m}*x")?,
                (_, "1") => write!(f, "x^{i}")?,
                (_, m) => write!(f, "{m}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(v: &[i64]) -> Poly<BigInt> {
        Poly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn trims_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(Poly::<BigInt>::zero().degree(), None);
    }

    #[test]
    fn ring_ops() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!(a.eval(&BigInt::from(3)), BigInt::from(4));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 2]).to_string(), "2*x^2 - 1");
        assert_eq!(p(&[0, -3, 0, 4]).to_string(), "4*x^3 - 3*x");
        assert_eq!(p(&[1]).to_string(), "1");
    }
}
