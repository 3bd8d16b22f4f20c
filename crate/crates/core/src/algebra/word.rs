use std::fmt;

use num_traits::{One, Zero};
use std::collections::btree_map::{BTreeMap, Entry};

use super::Rational;

/// A single ladder operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// Creation operator a†.
    Adag,
    /// Annihilation operator a.
    A,
}

impl Letter {
    pub fn symbol(self) -> &'static str {
        match self {
            Letter::Adag => "ad",
            Letter::A => "a",
        }
    }
}

/// A product of ladder operators, stored as runs of equal letters.
///
/// Adjacent runs always carry distinct letters and every exponent is at
/// least one, so two words are equal exactly when they denote the same
/// letter sequence. The empty word is the identity operator.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BosonWord {
    runs: Vec<(Letter, u32)>,
}

impl BosonWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn letter(letter: Letter) -> Self {
        Self::power(letter, 1)
    }

    pub fn power(letter: Letter, exponent: u32) -> Self {
        let mut w = Self::identity();
        w.push_run(letter, exponent);
        w
    }

    /// The word (a†)^j a^k.
    pub fn normal_monomial(j: u32, k: u32) -> Self {
        let mut w = Self::identity();
        w.push_run(Letter::Adag, j);
        w.push_run(Letter::A, k);
        w
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Self::identity();
        for l in letters {
            w.push_run(l, 1);
        }
        w
    }

    fn push_run(&mut self, letter: Letter, exponent: u32) {
        if exponent == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((last, e)) if *last == letter => *e += exponent,
            _ => self.runs.push((letter, exponent)),
        }
    }

    pub fn runs(&self) -> &[(Letter, u32)] {
        &self.runs
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.runs
            .iter()
            .flat_map(|&(l, e)| std::iter::repeat_n(l, e as usize))
    }

    pub fn to_letters(&self) -> Vec<Letter> {
        self.letters().collect()
    }

    pub fn len(&self) -> usize {
        self.runs.iter().map(|&(_, e)| e as usize).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.runs.is_empty()
    }

    /// Number of creation and annihilation letters, in that order.
    pub fn counts(&self) -> (u32, u32) {
        self.runs.iter().fold((0, 0), |(j, k), &(l, e)| match l {
            Letter::Adag => (j + e, k),
            Letter::A => (j, k + e),
        })
    }

    /// True when no annihilation letter stands left of a creation letter.
    pub fn is_normally_ordered(&self) -> bool {
        match self.runs.as_slice() {
            [] | [_] => true,
            [(Letter::Adag, _), (Letter::A, _)] => true,
            _ => false,
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut w = self.clone();
        for &(l, e) in &other.runs {
            w.push_run(l, e);
        }
        w
    }
}

impl fmt::Display for BosonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("1");
        }
        for (i, &(l, e)) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(l.symbol())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A finite linear combination of words in the free algebra over {a, a†}.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BosonPolynomial {
    terms: BTreeMap<BosonWord, Rational>,
}

impl BosonPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(BosonWord::identity())
    }

    pub fn from_word(word: BosonWord) -> Self {
        Self::term(word, Rational::one())
    }

    pub fn term(word: BosonWord, coeff: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn add_term(&mut self, word: BosonWord, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BosonWord, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &BosonWord) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
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
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v * c))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn pow(&self, exponent: u32) -> Self {
        (0..exponent).fold(Self::one(), |acc, _| super::multiply(&acc, self))
    }
}

impl FromIterator<(BosonWord, Rational)> for BosonPolynomial {
    fn from_iter<I: IntoIterator<Item = (BosonWord, Rational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }
}

impl fmt::Display for BosonPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::write_terms(f, self.terms.iter().map(|(w, c)| (w.clone(), c)))
    }
}
