//! Exponential normal-ordering identities checked as truncated λ-series.
//!
//! Each identity has the form `exp(λ W) = :G(λ; a†, a):`. The left side is
//! expanded with operator products and normal-ordered; the right side is
//! expanded with `a†`, `a` treated as commuting symbols and each monomial
//! `(a†)^j a^k` read back as a normal-form key. The two are then compared
//! coefficient by coefficient in exact arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::LambdaSeries;
use crate::algebra::{NormalForm, Rational};
use crate::combinatorics::{factorial, poisson_moment, Polynomial};
use crate::{Error, Result};

/// Highest λ-order accepted by [`verify_identity`].
pub const MAX_VERIFY_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `e^{λ a†a} = :exp(a†a (e^λ - 1)):`
    NumberExp,
    /// `e^{λ(a + a†)} = e^{λ²/2} :e^{λ(a + a†)}:`
    BchLinear,
    /// `e^{λ (a†)² a} = :exp(λ (a†)² a / (1 - λ a†)):`
    Excited21,
    /// `e^{λ (a†)² a²} = :e^{-a†a} Σ_n e^{λ n(n-1)} (a†a)^n / n!:`
    Kerr,
}

impl Identity {
    pub const ALL: [Identity; 4] = [
        Identity::NumberExp,
        Identity::BchLinear,
        Identity::Excited21,
        Identity::Kerr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::NumberExp => "number-exp",
            Identity::BchLinear => "bch-linear",
            Identity::Excited21 => "excited-21",
            Identity::Kerr => "kerr",
        }
    }

    /// The operator `W` in the left-hand side `exp(λ W)`.
    pub fn generator(self) -> NormalForm {
        let one = Rational::one();
        match self {
            Identity::NumberExp => NormalForm::monomial(1, 1, one),
            Identity::BchLinear => {
                NormalForm::monomial(1, 0, one.clone()).add(&NormalForm::monomial(0, 1, one))
            }
            Identity::Excited21 => NormalForm::monomial(2, 1, one),
            Identity::Kerr => NormalForm::monomial(2, 2, one),
        }
    }

    pub fn lhs(self, order: usize) -> LambdaSeries {
        LambdaSeries::monomial(order, 1, self.generator())
            .exp()
            .expect("λ·W has no constant term")
    }

    pub fn rhs(self, order: usize) -> LambdaSeries {
        match self {
            Identity::NumberExp => number_exp_rhs(order),
            Identity::BchLinear => bch_linear_rhs(order),
            Identity::Excited21 => excited_rhs(order),
            Identity::Kerr => kerr_rhs(order),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

fn inv_factorial(m: usize) -> Rational {
    Rational::new(BigInt::one(), factorial(m))
}

/// `:exp(a†a (e^λ - 1)):`
fn number_exp_rhs(order: usize) -> LambdaSeries {
    let mut arg = LambdaSeries::zero(order);
    for r in 1..=order {
        arg.set_coeff(r, NormalForm::monomial(1, 1, inv_factorial(r)));
    }
    arg.exp_symbol().expect("no constant term")
}

/// `e^{λ²/2} · :exp(λ (a + a†)):`
fn bch_linear_rhs(order: usize) -> LambdaSeries {
    let gaussian: Vec<Rational> = (0..=order)
        .map(|m| {
            if m % 2 == 0 {
                Rational::new(BigInt::one(), factorial(m / 2) * (BigInt::one() << (m / 2)))
            } else {
                Rational::from_integer(0.into())
            }
        })
        .collect();
    let linear = LambdaSeries::monomial(order, 1, Identity::BchLinear.generator());
    LambdaSeries::scalar(order, &gaussian).symbol_mul(&linear.exp_symbol().expect("no constant term"))
}

/// `:exp(λ (a†)² a / (1 - λ a†)):`, with the argument expanded as
/// `Σ_{r>=1} λ^r (a†)^{r+1} a`.
fn excited_rhs(order: usize) -> LambdaSeries {
    let mut arg = LambdaSeries::zero(order);
    for r in 1..=order {
        arg.set_coeff(r, NormalForm::monomial(r as u32 + 1, 1, Rational::one()));
    }
    arg.exp_symbol().expect("no constant term")
}

/// `:e^{-y} Σ_n e^{λ n(n-1)} y^n / n!:` with `y = a†a`. The `λ^m`
/// coefficient is the Poisson moment of `(n(n-1))^m` divided by `m!`, and
/// `y^k` becomes `(a†)^k a^k`.
fn kerr_rhs(order: usize) -> LambdaSeries {
    let pair_count = Polynomial::new(vec![
        Rational::from_integer(0.into()),
        Rational::from_integer((-1).into()),
        Rational::one(),
    ]);
    let mut out = LambdaSeries::zero(order);
    for m in 0..=order {
        let moment = poisson_moment(&pair_count.pow(m as u32)).scale(&inv_factorial(m));
        let mut nf = NormalForm::zero();
        for (k, c) in moment.coeffs().iter().enumerate() {
            nf.add_term(k as u32, k as u32, c.clone());
        }
        out.set_coeff(m, nf);
    }
    out
}

/// Outcome of comparing both sides of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub identity: Identity,
    pub order: usize,
    pub equal: bool,
    /// Lowest λ-order where the sides differ, with `lhs - rhs` there.
    pub first_mismatch: Option<(usize, NormalForm)>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    identity: &'static str,
    order: usize,
    equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    mismatch_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diff_terms: Option<&'a NormalForm>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&JsonReport {
            identity: self.identity.name(),
            order: self.order,
            equal: self.equal,
            mismatch_order: self.first_mismatch.as_ref().map(|(m, _)| *m),
            diff_terms: self.first_mismatch.as_ref().map(|(_, d)| d),
        })
        .expect("report serializes")
    }
}

/// Compares two series coefficientwise.
pub fn compare_series(identity: Identity, lhs: &LambdaSeries, rhs: &LambdaSeries) -> VerifyReport {
    let first_mismatch = lhs
        .coeffs()
        .iter()
        .zip(rhs.coeffs())
        .enumerate()
        .find(|(_, (l, r))| l != r)
        .map(|(m, (l, r))| (m, l.sub(r)));
    VerifyReport {
        identity,
        order: lhs.order(),
        equal: first_mismatch.is_none(),
        first_mismatch,
    }
}

/// Expands both sides of the named identity to λ-order `order` and compares.
pub fn verify_identity(name: &str, order: usize) -> Result<VerifyReport> {
    let identity: Identity = name.parse()?;
    if order > MAX_VERIFY_ORDER {
        return Err(Error::ResourceLimit(format!(
            "verification order {order} exceeds {MAX_VERIFY_ORDER}"
        )));
    }
    Ok(compare_series(identity, &identity.lhs(order), &identity.rhs(order)))
}
