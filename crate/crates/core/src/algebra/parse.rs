//! Recursive-descent parser for boson operator expressions.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := coeff ('*'? factor)* | factor ('*'? factor)*
//! factor := base ('^' uint)? | '(' expr ')' ('^' uint)?
//! base   := 'a' | 'ad' | 'a†' | 'a^+'
//! coeff  := int | int '/' uint
//! ```
//!
//! A leading sign and a bare coefficient term are accepted so that printed
//! normal forms such as `-2 ad a + 1` parse back.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{multiply, BosonPolynomial, BosonWord, Letter, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Letter(Letter),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((start, Tok::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            c if c.is_alphabetic() => {
                while i < chars.len() && chars[i].is_alphanumeric() {
                    i += 1;
                }
                let ident: String = chars[start..i].iter().collect();
                let letter = match ident.as_str() {
                    "ad" => Letter::Adag,
                    "a" => {
                        if chars.get(i) == Some(&'†') {
                            i += 1;
                            Letter::Adag
                        } else if chars.get(i) == Some(&'^') && chars.get(i + 1) == Some(&'+') {
                            i += 2;
                            Letter::Adag
                        } else {
                            Letter::A
                        }
                    }
                    other => return Err(syntax(start, format!("unknown symbol '{other}'"))),
                };
                out.push((start, Tok::Letter(letter)));
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(syntax(start, format!("unexpected character '{other}'"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<BosonPolynomial, ParseError> {
        let mut sign = Rational::one();
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                sign = -sign;
            }
            Some(Tok::Plus) => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?.scale(&sign);
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => Rational::one(),
                Some(Tok::Minus) => -Rational::one(),
                _ => return Ok(acc),
            };
            self.bump();
            acc = acc.add(&self.term()?.scale(&sign));
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Letter(_)) | Some(Tok::LParen))
    }

    fn term(&mut self) -> Result<BosonPolynomial, ParseError> {
        let mut acc = BosonPolynomial::one();
        let mut have_coeff = false;
        if let Some(Tok::Int(_)) = self.peek() {
            acc = acc.scale(&self.coeff()?);
            have_coeff = true;
        }
        let mut factors = 0;
        loop {
            if matches!(self.peek(), Some(Tok::Star)) && (have_coeff || factors > 0) {
                self.bump();
                if !self.starts_factor() {
                    return Err(syntax(self.here(), "expected factor after '*'"));
                }
            }
            if !self.starts_factor() {
                break;
            }
            acc = multiply(&acc, &self.factor()?);
            factors += 1;
        }
        if !have_coeff && factors == 0 {
            return Err(syntax(self.here(), "expected term"));
        }
        Ok(acc)
    }

    fn coeff(&mut self) -> Result<Rational, ParseError> {
        let Some(Tok::Int(num)) = self.bump() else {
            unreachable!("caller checked for an integer");
        };
        if matches!(self.peek(), Some(Tok::Slash)) {
            self.bump();
            let at = self.here();
            match self.bump() {
                Some(Tok::Int(den)) if !den.is_zero() => Ok(Rational::new(num, den)),
                Some(Tok::Int(_)) => Err(syntax(at, "zero denominator")),
                _ => Err(syntax(at, "expected denominator")),
            }
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn exponent(&mut self) -> Result<Option<u32>, ParseError> {
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(None);
        }
        self.bump();
        let at = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => u32::try_from(n)
                .map(Some)
                .map_err(|_| syntax(at, "exponent too large")),
            Some(Tok::Minus) => Err(ParseError::NegativeExponent { pos: at }),
            _ => Err(syntax(at, "expected exponent")),
        }
    }

    fn factor(&mut self) -> Result<BosonPolynomial, ParseError> {
        match self.bump() {
            Some(Tok::Letter(l)) => {
                let e = self.exponent()?.unwrap_or(1);
                Ok(BosonPolynomial::from_word(BosonWord::power(l, e)))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let at = self.here();
                if self.bump() != Some(Tok::RParen) {
                    return Err(syntax(at, "expected ')'"));
                }
                let e = self.exponent()?.unwrap_or(1);
                Ok(inner.pow(e))
            }
            _ => unreachable!("caller checked starts_factor"),
        }
    }
}

/// Parses an operator expression into the free algebra, combining like words.
pub fn parse_expr(text: &str) -> Result<BosonPolynomial, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
    };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.here(), "unexpected trailing input"));
    }
    Ok(out)
}

/// Parses `num`, `num/den` or `-num/den`.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad rational '{text}'"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad rational '{text}'"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in '{text}'"));
    }
    Ok(Rational::new(num, den))
}
