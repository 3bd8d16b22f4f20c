use std::collections::btree_map::{BTreeMap, Entry};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{BosonWord, Rational};
use crate::Error;

/// A normally ordered polynomial Σ c_jk (a†)^j a^k.
///
/// Keys are `(j, k)` = (creation exponent, annihilation exponent), kept in
/// lexicographic order. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalForm {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl NormalForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(j: u32, k: u32, c: Rational) -> Self {
        let mut nf = Self::zero();
        nf.add_term(j, k, c);
        nf
    }

    pub fn add_term(&mut self, j: u32, k: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((j, k)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, j: u32, k: u32) -> Rational {
        self.terms.get(&(j, k)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending `(j, k)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&jk, v)| (jk, v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (&(j, k), c) in &other.terms {
            self.add_term(j, k, c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Product treating a† and a as commuting symbols: exponents add.
    ///
    /// This is the multiplication that holds inside double dots, not the
    /// operator product (see [`NormalForm::operator_mul`]).
    pub fn symbol_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(j1, k1), c1) in &self.terms {
            for (&(j2, k2), c2) in &other.terms {
                out.add_term(j1 + j2, k1 + k2, c1 * c2);
            }
        }
        out
    }

    /// Operator product, brought back to normal order by rewriting.
    pub fn operator_mul(&self, other: &Self) -> Self {
        super::normal_order(&super::multiply(
            &super::nf_to_polynomial(self),
            &super::nf_to_polynomial(other),
        ))
    }

    /// Highest total degree j + k, or `None` for the zero form.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(j, k)| j + k).max()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("normal form serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, Error> {
        serde_json::from_value(value.clone()).map_err(|e| Error::Format(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    j: u32,
    k: u32,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct JsonNormalForm {
    terms: Vec<JsonTerm>,
}

impl Serialize for NormalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        JsonNormalForm {
            terms: self
                .terms
                .iter()
                .map(|(&(j, k), c)| JsonTerm {
                    j,
                    k,
                    c: format!("{}/{}", c.numer(), c.denom()),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NormalForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = JsonNormalForm::deserialize(d)?;
        let mut nf = NormalForm::zero();
        for t in raw.terms {
            let c = super::parse_rational(&t.c).map_err(serde::de::Error::custom)?;
            nf.add_term(t.j, t.k, c);
        }
        Ok(nf)
    }
}

impl fmt::Display for NormalForm {
    /// Terms in descending `(j, k)` order, e.g. `ad^2 a^4 + 4 ad a^3 + 2 a^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::write_terms(
            f,
            self.terms
                .iter()
                .rev()
                .map(|(&(j, k), c)| (BosonWord::normal_monomial(j, k), c)),
        )
    }
}
