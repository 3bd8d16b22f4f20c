//! Truncated number-basis representation, used as a numerical oracle.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{BosonPolynomial, Letter, Rational};

/// Dense `D x D` matrix in the basis `|0>, ..., |D-1>`.
///
/// `trusted` counts the leading columns that are unaffected by truncation:
/// for `n < trusted`, column `n` equals the exact infinite-dimensional
/// matrix element `<m|p|n>` for every `m < D`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockMatrix {
    dim: usize,
    data: Vec<Complex64>,
    trusted: usize,
}

impl FockMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::zero(); dim * dim],
            trusted: dim,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::one();
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trusted(&self) -> usize {
        self.trusted
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Complex64) {
        self.data[row * self.dim + col] = v;
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            data: self.data.iter().map(|&v| v * c).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
            trusted: self.trusted.min(other.trusted),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Matrix product. The trusted region is not tracked through products.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == Complex64::zero() {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out.trusted = self.trusted.min(other.trusted);
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `<v|M|v>` without normalizing `v`.
    pub fn expectation(&self, v: &[Complex64]) -> Complex64 {
        self.apply(v).iter().zip(v).map(|(mv, x)| x.conj() * mv).sum()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim)
            .map(|i| self.data[i * self.dim..(i + 1) * self.dim].iter().map(|v| v.norm()).sum())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise distance over the leading `size x size` block.
    pub fn max_abs_diff(&self, other: &Self, size: usize) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..size {
            for j in 0..size {
                worst = worst.max((self.get(i, j) - other.get(i, j)).norm());
            }
        }
        worst
    }

    /// `e^M` by scaling and squaring around a Taylor series; terms are summed
    /// until their norm drops below `1e-16`.
    pub fn exp(&self) -> Self {
        let norm = self.norm_inf();
        let mut squarings = 0u32;
        while norm / f64::from(1u32 << squarings.min(31)) > 0.5 && squarings < 60 {
            squarings += 1;
        }
        let scaled = self.scale(Complex64::new(0.5f64.powi(squarings as i32), 0.0));
        let mut sum = Self::identity(self.dim);
        let mut term = Self::identity(self.dim);
        for k in 1..200 {
            term = term.mul(&scaled).scale(Complex64::new(1.0 / k as f64, 0.0));
            sum = sum.add(&term);
            if term.norm_inf() < 1e-16 {
                break;
            }
        }
        for _ in 0..squarings {
            sum = sum.mul(&sum);
        }
        sum.trusted = self.trusted;
        sum
    }
}

/// `sqrt(hi! / lo!)` for `lo <= hi`, rounded once.
fn ladder_norm(lo: usize, hi: usize) -> f64 {
    let prod: BigInt = (lo + 1..=hi).map(BigInt::from).product();
    prod.to_f64().unwrap_or(f64::INFINITY).sqrt()
}

/// Matrix of `p` on the first `dim` number states, i.e. the product of
/// truncated ladder matrices `a|n> = √n |n-1>`, `a†|n> = √(n+1) |n+1>` per
/// word (a† from the top state is dropped).
///
/// Every path from `|n>` to `|m>` has amplitude `√(max!/min!) · s` with `s`
/// an integer: each level edge crossed an even number of times contributes
/// a perfect square. The integer parts are summed exactly with the rational
/// coefficients, so each entry is rounded only once.
pub fn fock_matrix(p: &BosonPolynomial, dim: usize) -> FockMatrix {
    assert!(dim >= 1, "Fock dimension must be positive");
    let mut sums: HashMap<(usize, usize), Rational> = HashMap::new();
    let mut max_height = 0usize;
    let mut crossings = vec![0u32; dim];

    for (word, coeff) in p.terms() {
        let letters = word.to_letters();
        // highest level reached above the start, reading right to left
        let mut h: i64 = 0;
        let mut peak: i64 = 0;
        for l in letters.iter().rev() {
            h += if *l == Letter::Adag { 1 } else { -1 };
            peak = peak.max(h);
        }
        max_height = max_height.max(peak as usize);

        'columns: for n in 0..dim {
            crossings.iter_mut().for_each(|c| *c = 0);
            let mut level = n;
            let mut s = BigInt::one();
            for l in letters.iter().rev() {
                let edge = match l {
                    Letter::Adag => {
                        if level + 1 >= dim {
                            continue 'columns;
                        }
                        level += 1;
                        level - 1
                    }
                    Letter::A => {
                        if level == 0 {
                            continue 'columns;
                        }
                        level -= 1;
                        level
                    }
                };
                crossings[edge] += 1;
                if crossings[edge].is_multiple_of(2) {
                    s *= BigInt::from(edge + 1);
                }
            }
            *sums.entry((level, n)).or_insert_with(Rational::zero) +=
                coeff * Rational::from_integer(s);
        }
    }

    let mut m = FockMatrix::zeros(dim);
    for ((row, col), v) in sums {
        let exact = v.to_f64().unwrap_or(f64::NAN);
        let norm = ladder_norm(row.min(col), row.max(col));
        m.set(row, col, Complex64::new(exact * norm, 0.0));
    }
    m.trusted = dim.saturating_sub(max_height);
    m
}
