//! Stirling numbers of the second kind, Bell numbers and polynomials, and
//! the generating functions and identities built from them.
//!
//! Conventions at the boundary: `S(0,0) = 1`, `B(0) = 1`, `B(0,x) = 1`.
//! Integer results are exact big integers; polynomial and series results
//! carry exact rational coefficients. The only floating point here is the
//! final rounding in [`dobinski`].

mod polynomial;
mod series;
mod stirling;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::Rational;
use crate::{Error, Result};

pub use polynomial::{falling_factorial, from_falling_factorials, Polynomial};
pub use series::TruncatedSeries;
pub use stirling::{
    bell_number, binomial, factorial, falling_factorial_expand, stirling_explicit, stirling_rec,
    StirlingTable, CACHED_ROWS,
};

fn rat(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `B(n, x) = Σ_k S(n, k) x^k`.
pub fn bell_polynomial(n: usize) -> Polynomial {
    Polynomial::from_integers(falling_factorial_expand(n))
}

/// Exact value of `e^{-x} Σ_k p(k) x^k / k!` as a polynomial in `x`.
///
/// Each monomial `k^i` is rewritten as `Σ_j S(i, j) k^(j)` and the falling
/// factorials are summed with `e^{-x} Σ_k k^(j) x^k / k! = x^j`.
pub fn poisson_moment(p: &Polynomial) -> Polynomial {
    let Some(deg) = p.degree() else {
        return Polynomial::zero();
    };
    let mut out = vec![Rational::zero(); deg + 1];
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, s) in falling_factorial_expand(i).into_iter().enumerate() {
            out[j] += c * Rational::from_integer(s);
        }
    }
    Polynomial::new(out)
}

/// `e^x` to relative precision better than `2^-120`, exact rational arithmetic.
fn exp_rational(x: &Rational) -> Rational {
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    let mut k = 0usize;
    let threshold = Rational::new(BigInt::one(), BigInt::one() << 120u32);
    loop {
        sum += &term;
        k += 1;
        term = term * x / rat(k);
        // past k > 2x successive ratios are below 1/2, so the tail is < 2 * term
        if rat(k) > x * rat(2) && &term * rat(2) < &sum * &threshold {
            return sum;
        }
    }
}

/// Bell polynomial `B(n, x)` through the Dobiński series
/// `e^{-x} Σ_{k>=0} k^n x^k / k!`.
///
/// Partial sums are exact; `e^x` is evaluated to ~36 digits and the quotient
/// is rounded once to `f64`. Summation stops at the first `k >= 2 max(n, ⌈x⌉)`
/// where the geometric tail bound `t_k r / (1 - r)`, with
/// `r = (1 + 1/k)^n x / (k + 1)` the ratio bound for all later terms, is
/// below `eps / 2` after the `e^{-x}` factor.
pub fn dobinski(n: u32, x: &Rational, eps: f64) -> Result<f64> {
    if x.is_negative() {
        return Err(Error::Domain(format!("Dobinski series needs x >= 0, got {x}")));
    }
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {eps}")));
    }
    if x.is_zero() {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let xf = x.to_f64().unwrap_or(f64::INFINITY);
    let ceil_x = x.ceil().to_integer().to_u64().unwrap_or(u64::MAX);
    let k_min = 2 * u64::max(u64::from(n), ceil_x);
    let e_neg_x = (-xf).exp();

    let mut partial = Rational::zero();
    // x^k / k!
    let mut base = Rational::one();
    let mut k: u64 = 0;
    loop {
        let term = if k == 0 {
            if n == 0 { base.clone() } else { Rational::zero() }
        } else {
            &base * Rational::from_integer(num_traits::pow(BigInt::from(k), n as usize))
        };
        partial += &term;
        if k >= k_min && k >= 1 {
            let kf = k as f64;
            let ratio = (1.0 + 1.0 / kf).powi(n as i32) * xf / (kf + 1.0);
            let tail = term.to_f64().unwrap_or(f64::INFINITY) * ratio / (1.0 - ratio);
            if ratio < 1.0 && tail * e_neg_x < eps / 2.0 {
                break;
            }
        }
        k += 1;
        base = base * x / rat(k);
    }
    let value = partial / exp_rational(x);
    Ok(value.to_f64().unwrap_or(f64::INFINITY))
}

/// Convenience wrapper taking `x` as a float; every finite `f64` is an exact
/// rational, so no precision is lost on input.
pub fn dobinski_f64(n: u32, x: f64, eps: f64) -> Result<f64> {
    let x = Rational::from_float(x)
        .ok_or_else(|| Error::Domain(format!("x must be finite, got {x}")))?;
    dobinski(n, &x, eps)
}

/// Truncated `e^{x(e^λ - 1)}` in `λ`; the `λ^n` coefficient is `B(n,x)/n!`.
pub fn egf_bell(x: &Rational, order: usize) -> TruncatedSeries {
    let inner = TruncatedSeries::exp_t(order)
        .sub(&TruncatedSeries::one(order))
        .scale(x);
    inner.exp().expect("constant term vanishes")
}

/// Truncated `(e^λ - 1)^k / k!`; the `λ^n` coefficient is `S(n,k)/n!`.
pub fn egf_stirling(k: usize, order: usize) -> TruncatedSeries {
    let base = TruncatedSeries::exp_t(order).sub(&TruncatedSeries::one(order));
    base.pow(k as u32)
        .scale(&Rational::new(BigInt::one(), factorial(k)))
}

/// Checks `B(n+1, x) = x Σ_k C(n,k) B(k,x)` as polynomial identities for
/// every `n < n_max`, starting from `B(0,x) = 1`.
pub fn bell_poly_recurrence_check(n_max: usize) -> bool {
    let mut computed = vec![Polynomial::one()];
    for n in 0..n_max {
        let mut sum = Polynomial::zero();
        for (k, b) in computed.iter().enumerate() {
            sum = sum.add(&b.scale(&Rational::from_integer(binomial(n, k))));
        }
        computed.push(sum.mul(&Polynomial::x()));
    }
    computed
        .iter()
        .enumerate()
        .all(|(n, p)| *p == bell_polynomial(n))
}

/// Checks `B(n, x+y) = Σ_k C(n,k) B(k,y) B(n-k,x)` exactly.
pub fn sheffer_identity_check(n: usize, x: &Rational, y: &Rational) -> bool {
    let lhs = bell_polynomial(n).eval(&(x + y));
    let rhs = (0..=n).fold(Rational::zero(), |acc, k| {
        acc + Rational::from_integer(binomial(n, k))
            * bell_polynomial(k).eval(y)
            * bell_polynomial(n - k).eval(x)
    });
    lhs == rhs
}

/// Applies `(X D)^n` to the truncated series of `e^x` by literal repeated
/// differentiation and multiplication by `x`. The coefficient of `x^k` in
/// the result is `k^n / k!`.
pub fn xd_power_apply(n: usize, order: usize) -> TruncatedSeries {
    (0..n).fold(TruncatedSeries::exp_t(order), |s, _| s.derivative().shift_up())
}
