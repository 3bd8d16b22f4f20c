//! Exact boson operator expressions and their normal ordering.
//!
//! Expressions live in the free algebra over `{a, a†}` ([`BosonPolynomial`]).
//! [`normal_order`] rewrites with `[a, a†] = 1` into a [`NormalForm`];
//! [`double_dot`] reorders letters as if they commuted.

mod normal_form;
mod parse;
mod rewrite;
mod word;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

pub use normal_form::NormalForm;
pub use parse::{parse_expr, parse_rational, ParseError};
pub use rewrite::{normal_order, normal_order_with};
pub use word::{BosonPolynomial, BosonWord, Letter};

/// Exact coefficient type. Always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Free-algebra product: words concatenate, coefficients multiply.
pub fn multiply(p: &BosonPolynomial, q: &BosonPolynomial) -> BosonPolynomial {
    let mut out = BosonPolynomial::zero();
    for (w1, c1) in p.terms() {
        for (w2, c2) in q.terms() {
            out.add_term(w1.concat(w2), c1 * c2);
        }
    }
    out
}

/// Moves every `a†` left of every `a` ignoring the commutator.
///
/// A word with `j` creations and `k` annihilations maps to `(a†)^j a^k`
/// with its coefficient unchanged. This is generally a different operator.
pub fn double_dot(p: &BosonPolynomial) -> NormalForm {
    let mut out = NormalForm::zero();
    for (w, c) in p.terms() {
        let (j, k) = w.counts();
        out.add_term(j, k, c.clone());
    }
    out
}

/// Embeds each `(j, k)` monomial as the word `(a†)^j a^k`.
pub fn nf_to_polynomial(nf: &NormalForm) -> BosonPolynomial {
    nf.terms()
        .map(|(&(j, k), c)| (BosonWord::normal_monomial(j, k), c.clone()))
        .collect()
}

pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (BosonWord, &'a Rational)>,
{
    let mut first = true;
    for (w, c) in terms {
        let magnitude = c.abs();
        match (first, c.is_negative()) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        if w.is_identity() {
            write!(f, "{magnitude}")?;
        } else if magnitude.is_one() {
            write!(f, "{w}")?;
        } else {
            write!(f, "{magnitude} {w}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
