//! Coherent-state expectation values, λ-series identities and the truncated
//! Fock-space oracle.

mod fock;
mod identities;
mod series;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::NormalForm;
use crate::{Error, Result};

pub use fock::{fock_matrix, FockMatrix};
pub use identities::{
    compare_series, verify_identity, Identity, VerifyReport, MAX_VERIFY_ORDER,
};
pub use series::{series_exp, LambdaSeries};

/// Coherent-state label `z`; both components finite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexAmplitude {
    re: f64,
    im: f64,
}

impl ComplexAmplitude {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::Domain(format!("amplitude must be finite, got ({re}, {im})")));
        }
        Ok(Self { re, im })
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }
}

impl FromStr for ComplexAmplitude {
    type Err = Error;

    /// Parses `"re,im"` or a bare real number.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("expected \"re,im\", got '{s}'"));
        let (re, im) = match s.split_once(',') {
            Some((r, i)) => (r.trim(), i.trim()),
            None => (s.trim(), "0"),
        };
        Self::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?)
    }
}

impl fmt::Display for ComplexAmplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.re, self.im)
    }
}

/// `<z| F |z>` for `F` in normal form: substitute `a -> z`, `a† -> z*`.
pub fn expectation(nf: &NormalForm, z: ComplexAmplitude) -> Complex64 {
    let z = z.to_complex();
    let zc = z.conj();
    nf.terms()
        .map(|(&(j, k), c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            zc.powu(j) * z.powu(k) * c
        })
        .fold(Complex64::zero(), |acc, t| acc + t)
}

/// Dropped probability below which a truncated coherent state is accepted.
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// Basis size used for `|z>`: `max(40, ⌈|z|² + 10|z| + 10⌉)`.
pub fn recommended_dimension(z: ComplexAmplitude) -> usize {
    let r2 = z.norm_sqr();
    let need = (r2 + 10.0 * r2.sqrt() + 10.0).ceil() as usize;
    need.max(40)
}

/// A coherent state cut off after `D` number states.
#[derive(Clone, Debug, PartialEq)]
pub struct CoherentVector {
    pub amplitudes: Vec<Complex64>,
    /// Poisson probability of the states `n >= D` that were dropped.
    pub tail_mass: f64,
}

/// `|z> = e^{-|z|²/2} Σ_{n<D} z^n / √(n!) |n>`.
///
/// Logs a warning when the dropped probability exceeds [`TAIL_TOLERANCE`].
pub fn coherent_vector(z: ComplexAmplitude, dim: usize) -> CoherentVector {
    let zc = z.to_complex();
    let r2 = z.norm_sqr();
    let mut amplitudes = Vec::with_capacity(dim);
    let mut c = Complex64::new((-r2 / 2.0).exp(), 0.0);
    for n in 0..dim {
        amplitudes.push(c);
        c = c * zc / ((n + 1) as f64).sqrt();
    }
    // Poisson tail Σ_{n>=D} e^{-r2} r2^n / n!; c now holds the n = D amplitude
    let mut p = c.norm_sqr();
    let mut tail = 0.0;
    let mut n = dim;
    while p > 0.0 && (p > tail * 1e-17 || (n as f64) < r2) {
        tail += p;
        n += 1;
        p *= r2 / n as f64;
        if n > dim + 100_000 {
            break;
        }
    }
    if tail >= TAIL_TOLERANCE {
        log::warn!(
            "coherent state |{z}> truncated at D={dim} drops probability {tail:.3e}"
        );
    }
    CoherentVector {
        amplitudes,
        tail_mass: tail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{normal_order, parse_expr, Rational};
    use crate::combinatorics::bell_polynomial;

    fn z(re: f64, im: f64) -> ComplexAmplitude {
        ComplexAmplitude::new(re, im).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn six_letter_expectation() {
        let nf = normal_order(&parse_expr("a ad a a ad a").unwrap());
        for zz in [z(0.3, -0.7), z(1.1, 0.4)] {
            let c = zz.to_complex();
            let want = c.conj().powu(2) * c.powu(4) + c.conj() * c.powu(3) * 4.0 + c.powu(2) * 2.0;
            assert!(close(expectation(&nf, zz), want, 1e-12));
        }
        assert_eq!(expectation(&NormalForm::one(), z(1.5, 2.0)), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn number_powers_give_bell_polynomials() {
        for n in 0..=8u32 {
            let nf = normal_order(&parse_expr(&format!("(ad a)^{n}")).unwrap());
            for r2 in [1i64, 2] {
                let zz = z((r2 as f64).sqrt(), 0.0);
                let want = bell_polynomial(n as usize).eval(&Rational::from_integer(r2.into()));
                let want = want.to_f64().unwrap();
                assert!((expectation(&nf, zz).re - want).abs() < 1e-9 * want.max(1.0));
            }
        }
    }

    #[test]
    fn vacuum_vector() {
        let v = coherent_vector(z(0.0, 0.0), 40);
        assert_eq!(v.amplitudes[0], Complex64::new(1.0, 0.0));
        assert!(v.amplitudes[1..].iter().all(|c| c.norm() == 0.0));
        assert_eq!(v.tail_mass, 0.0);
    }

    #[test]
    fn coherent_vector_is_normalized() {
        for zz in [z(2.0, 0.0), z(-1.0, 1.5), z(2.1, -2.0)] {
            let d = recommended_dimension(zz);
            let v = coherent_vector(zz, d);
            let norm: f64 = v.amplitudes.iter().map(|c| c.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-6);
            assert!(v.tail_mass < TAIL_TOLERANCE);
        }
        assert!(coherent_vector(z(4.0, 0.0), 10).tail_mass > 0.1);
    }

    #[test]
    fn eigenvalue_of_annihilator() {
        let a = fock_matrix(&parse_expr("a").unwrap(), 40);
        for zz in [z(1.0, 0.5), z(-2.0, 0.0), z(0.0, 1.9)] {
            let v = coherent_vector(zz, 40);
            assert!(close(a.expectation(&v.amplitudes), zz.to_complex(), 1e-8));
        }
    }

    #[test]
    fn number_exponential_against_closed_form() {
        let n = fock_matrix(&parse_expr("ad a").unwrap(), 40);
        let lambda = 0.3;
        let e = n.scale(Complex64::new(lambda, 0.0)).exp();
        let zz = z(1.0, 0.0);
        let v = coherent_vector(zz, 40);
        let want = (zz.norm_sqr() * (lambda.exp() - 1.0)).exp();
        assert!(close(e.expectation(&v.amplitudes), Complex64::new(want, 0.0), 1e-8));
    }

    #[test]
    fn amplitude_parsing() {
        assert_eq!("1.5,-2".parse::<ComplexAmplitude>().unwrap(), z(1.5, -2.0));
        assert_eq!("0.25".parse::<ComplexAmplitude>().unwrap(), z(0.25, 0.0));
        assert!("x,1".parse::<ComplexAmplitude>().is_err());
        assert!(ComplexAmplitude::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn dimension_rule() {
        assert_eq!(recommended_dimension(z(0.0, 0.0)), 40);
        assert_eq!(recommended_dimension(z(3.0, 4.0)), 85);
    }

    #[test]
    fn series_exp_number_operator() {
        let w = NormalForm::monomial(1, 1, Rational::from_integer(1.into()));
        let s = series_exp(&LambdaSeries::monomial(4, 1, w)).unwrap();
        let sq = normal_order(&parse_expr("(ad a)^2").unwrap());
        assert_eq!(*s.coeff(2), sq.scale(&Rational::new(1.into(), 2.into())));
        assert_eq!(series_exp(&LambdaSeries::zero(5)).unwrap(), LambdaSeries::one(5));
        assert!(series_exp(&LambdaSeries::one(3)).is_err());
    }

    #[test]
    fn identity_names() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
        assert!(matches!(verify_identity("nope", 2), Err(Error::UnknownIdentity(_))));
        assert!(matches!(verify_identity("kerr", 9), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn identities_hold_at_low_order() {
        for id in Identity::ALL {
            let r = verify_identity(id.name(), 3).unwrap();
            assert!(r.equal, "{id}: {:?}", r.first_mismatch);
        }
    }

    #[test]
    fn mismatch_is_reported() {
        // drop the e^{λ²/2} factor: the sides first differ at λ²
        let id = Identity::BchLinear;
        let wrong = LambdaSeries::monomial(4, 1, id.generator()).exp_symbol().unwrap();
        let r = compare_series(id, &id.lhs(4), &wrong);
        assert!(!r.equal);
        let (m, diff) = r.first_mismatch.clone().unwrap();
        assert_eq!(m, 2);
        assert_eq!(diff, NormalForm::scalar(Rational::new(1.into(), 2.into())));
        assert_eq!(
            r.to_json(),
            r#"{"identity":"bch-linear","order":4,"equal":false,"mismatch_order":2,"diff_terms":{"terms":[{"j":0,"k":0,"c":"1/2"}]}}"#
        );
        let ok = verify_identity("kerr", 2).unwrap();
        assert_eq!(ok.to_json(), r#"{"identity":"kerr","order":2,"equal":true}"#);
    }
}
