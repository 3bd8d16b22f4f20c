//! Exact normal ordering of single-mode boson operators.
//!
//! The crate is organised around one question: given an expression in `a`
//! and `a†` with `[a, a†] = 1`, what is its normally ordered form? The
//! [`algebra`] module answers it by rewriting, [`wick`] answers it again by
//! summing contractions, and [`combinatorics`] supplies the Stirling and Bell
//! structures that appear for powers of the number operator. [`coherent`]
//! and [`phasespace`] turn normal forms into numbers and check them against
//! a truncated Fock-space representation.

pub mod algebra;
pub mod cli;
pub mod coherent;
pub mod combinatorics;
pub mod phasespace;
pub mod wick;

use thiserror::Error;

pub use algebra::{
    double_dot, multiply, nf_to_polynomial, normal_order, parse_expr, BosonPolynomial, BosonWord,
    Letter, NormalForm, ParseError, Rational,
};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid contraction: {0}")]
    InvalidContraction(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown identity '{0}'")]
    UnknownIdentity(String),
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
