use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{NormalForm, Rational};
use crate::{Error, Result};

/// Formal series `Σ_{m=0}^{N} λ^m C_m` whose coefficients are normally
/// ordered operators. Two series are equal when every coefficient is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSeries {
    coeffs: Vec<NormalForm>,
}

impl LambdaSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![NormalForm::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = NormalForm::one();
        s
    }

    /// `λ^power · nf`, or zero if `power > order`.
    pub fn monomial(order: usize, power: usize, nf: NormalForm) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = nf;
        }
        s
    }

    /// Scalar series `Σ c_m λ^m`.
    pub fn scalar(order: usize, coeffs: &[Rational]) -> Self {
        let mut s = Self::zero(order);
        for (m, c) in coeffs.iter().enumerate().take(order + 1) {
            s.coeffs[m] = NormalForm::scalar(c.clone());
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> &NormalForm {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[NormalForm] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, m: usize, nf: NormalForm) {
        self.coeffs[m] = nf;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "series orders differ");
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    fn mul_with(&self, other: &Self, mul: impl Fn(&NormalForm, &NormalForm) -> NormalForm) -> Self {
        assert_eq!(self.order(), other.order(), "series orders differ");
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j].add_assign(&mul(a, b));
                }
            }
        }
        out
    }

    /// Product where coefficients multiply as operators and are normal-ordered.
    pub fn operator_mul(&self, other: &Self) -> Self {
        self.mul_with(other, NormalForm::operator_mul)
    }

    /// Product with `a`, `a†` treated as commuting symbols, as inside double dots.
    pub fn symbol_mul(&self, other: &Self) -> Self {
        self.mul_with(other, NormalForm::symbol_mul)
    }

    fn exp_with(&self, mul: impl Fn(&Self, &Self) -> Self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain(
                "series exponential needs a vanishing λ^0 coefficient".into(),
            ));
        }
        let n = self.order();
        let mut sum = Self::one(n);
        let mut power = Self::one(n);
        for m in 1..=n {
            power = mul(&power, self);
            sum = sum.add(&power.scale(&Rational::new(BigInt::one(), factorial(m))));
        }
        Ok(sum)
    }

    /// `exp(self) = Σ self^m / m!` with operator products.
    pub fn exp(&self) -> Result<Self> {
        self.exp_with(Self::operator_mul)
    }

    /// `:exp(self):`, the exponential with commuting-symbol products.
    pub fn exp_symbol(&self) -> Result<Self> {
        self.exp_with(Self::symbol_mul)
    }
}

fn factorial(m: usize) -> BigInt {
    (1..=m).map(BigInt::from).product()
}

/// Truncated exponential of `arg` with operator products.
pub fn series_exp(arg: &LambdaSeries) -> Result<LambdaSeries> {
    arg.exp()
}
