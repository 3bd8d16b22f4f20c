use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Rational;
use crate::{Error, Result};

/// Power series `c_0 + c_1 t + ... + c_N t^N` with everything past `t^N`
/// discarded. The order `N` is fixed at construction and preserved by every
/// operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Rational::one())
    }

    pub fn constant(order: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    /// The series of `e^t`.
    pub fn exp_t(order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = Rational::one();
        for k in 0..=order {
            coeffs.push(c.clone());
            c /= Rational::from_integer(BigInt::from(k + 1));
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "series orders differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other);
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_order(other);
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.order()), |acc, _| acc.mul(self))
    }

    /// `exp(self)`; the constant term must vanish.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain(
                "exponential of a series with nonzero constant term".into(),
            ));
        }
        // f' = g' f, solved term by term: n f_n = Σ_{k=1}^{n} k g_k f_{n-k}
        let n = self.order();
        let mut f = Self::zero(n);
        f.coeffs[0] = Rational::one();
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &f.coeffs[m - k] * Rational::from_integer(k.into());
                }
            }
            f.coeffs[m] = acc / Rational::from_integer(m.into());
        }
        Ok(f)
    }

    /// Term-by-term derivative. The top coefficient, which would need the
    /// discarded `t^(N+1)` term, is set to zero.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for k in 0..n {
            out.coeffs[k] = &self.coeffs[k + 1] * Rational::from_integer((k + 1).into());
        }
        out
    }

    /// Multiplication by `t`, dropping the term pushed past order `N`.
    pub fn shift_up(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for k in 1..=n {
            out.coeffs[k] = self.coeffs[k - 1].clone();
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order(),
            "coefficients": self
                .coeffs
                .iter()
                .map(|c| format!("{}/{}", c.numer(), c.denom()))
                .collect::<Vec<_>>()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn exp_of_t_matches_taylor() {
        let t = TruncatedSeries::from_coeffs(6, vec![r(0, 1), r(1, 1)]);
        assert_eq!(t.exp().unwrap(), TruncatedSeries::exp_t(6));
    }

    #[test]
    fn exp_rejects_constant_term() {
        assert!(TruncatedSeries::one(3).exp().is_err());
    }

    #[test]
    fn exp_of_zero_is_one() {
        assert_eq!(TruncatedSeries::zero(5).exp().unwrap(), TruncatedSeries::one(5));
    }

    #[test]
    fn product_truncates() {
        let e = TruncatedSeries::exp_t(4);
        let sq = e.mul(&e);
        // e^{2t}
        let expected: Vec<Rational> = [1, 2, 2, 4, 2].iter().zip([1, 1, 1, 3, 3]).map(|(&n, d)| r(n, d)).collect();
        assert_eq!(sq.coeffs(), expected.as_slice());
    }

    #[test]
    fn derivative_and_shift() {
        let e = TruncatedSeries::exp_t(5);
        let d = e.derivative();
        assert_eq!(&d.coeffs()[..5], &e.coeffs()[..5]);
        assert!(d.coeff(5).is_zero());
        let s = e.shift_up();
        assert!(s.coeff(0).is_zero());
        assert_eq!(s.coeff(3), e.coeff(2));
    }
}
