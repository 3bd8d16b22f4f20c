//! The algebra checked against matrices on a truncated Fock space.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use normal_ordering::algebra::{
    multiply, nf_to_polynomial, normal_order, parse_expr, BosonPolynomial, BosonWord, Letter,
    NormalForm, Rational,
};
use normal_ordering::coherent::{
    coherent_vector, expectation, fock_matrix, series_exp, ComplexAmplitude, FockMatrix,
    LambdaSeries,
};
use normal_ordering::combinatorics::bell_number;
use normal_ordering::phasespace::{
    husimi_from_state, husimi_thermal, number_exponential_normal_form, thermal_state, PhaseGrid,
    ThermalParams,
};
use normal_ordering::wick::{enumerate_contractions, enumerate_partitions, number_operator_power};

fn all_words(max_len: usize) -> impl Iterator<Item = BosonWord> {
    (0..=max_len).flat_map(|len| {
        (0..1u32 << len).map(move |bits| {
            BosonWord::from_letters(
                (0..len).map(|i| if bits >> i & 1 == 1 { Letter::Adag } else { Letter::A }),
            )
        })
    })
}

fn nf_matrix(nf: &NormalForm, dim: usize) -> FockMatrix {
    fock_matrix(&nf_to_polynomial(nf), dim)
}

#[test]
fn every_short_word_matches_its_normal_form() {
    let dim = 16;
    for w in all_words(10) {
        let direct = fock_matrix(&BosonPolynomial::from_word(w.clone()), dim);
        let nf = normal_order(&BosonPolynomial::from_word(w.clone()));
        let size = direct.trusted();
        assert!(size > 0);
        let diff = direct.max_abs_diff(&nf_matrix(&nf, dim), size);
        let scale = direct.norm_inf().max(1.0);
        assert!(diff <= 1e-12 * scale, "{w}: {diff}");
    }
}

#[test]
fn multiplication_is_matrix_multiplication() {
    let dim = 24;
    let p = parse_expr("ad a^2 - 2 ad^2").unwrap();
    let q = parse_expr("a ad + 1/3 a^3").unwrap();
    let product = fock_matrix(&multiply(&p, &q), dim);
    let matrices = fock_matrix(&p, dim).mul(&fock_matrix(&q, dim));
    assert!(product.max_abs_diff(&matrices, 18) < 1e-9);
}

#[test]
fn mixed_word_at_dimension_twenty() {
    let p = parse_expr("ad^2 a ad^3 a^2").unwrap();
    let direct = fock_matrix(&p, 20);
    let nf = normal_order(&p);
    assert_eq!(nf.to_string(), "ad^5 a^3 + 3 ad^4 a^2");
    assert!(direct.max_abs_diff(&nf_matrix(&nf, 20), direct.trusted()) < 1e-9);
}

#[test]
fn coherent_expectation_matches_fock() {
    let dim = 60;
    let nf = normal_order(&parse_expr("a ad a a ad a + 2 ad^2 - 1/2 (a + ad)^3").unwrap());
    let m = nf_matrix(&nf, dim);
    for (re, im) in [(0.4, -0.3), (1.0, 1.0), (-1.5, 0.5), (0.0, 2.0)] {
        let z = ComplexAmplitude::new(re, im).unwrap();
        let v = coherent_vector(z, dim);
        let err = (m.expectation(&v.amplitudes) - expectation(&nf, z)).norm();
        assert!(err < 1e-7, "z={z}: {err}");
    }
}

#[test]
fn displacement_series_matches_matrix_exponential() {
    let (dim, order, lambda) = (60, 16, 0.2f64);
    let x = normal_order(&parse_expr("a + ad").unwrap());
    let s = series_exp(&LambdaSeries::monomial(order, 1, x.clone())).unwrap();
    let mut summed = FockMatrix::zeros(dim);
    for (m, c) in s.coeffs().iter().enumerate() {
        summed = summed.add(&nf_matrix(c, dim).scale(Complex64::new(lambda.powi(m as i32), 0.0)));
    }
    let expm = nf_matrix(&x, dim).scale(Complex64::new(lambda, 0.0)).exp();
    assert!(summed.max_abs_diff(&expm, 12) < 1e-12);
}

#[test]
fn strongly_damped_number_exponential_is_near_projector() {
    // e^{λ a†a} = :exp((e^λ - 1) a†a):
    let dim = 20;
    let lambda = -40.0f64;
    let c = Rational::from_float(lambda.exp_m1()).unwrap();
    let m = nf_matrix(&number_exponential_normal_form(&c, 30), dim);
    let mut diag = vec![Complex64::new(0.0, 0.0); dim];
    for (n, d) in diag.iter_mut().enumerate() {
        *d = Complex64::new((lambda * n as f64).exp(), 0.0);
    }
    assert!(m.max_abs_diff(&FockMatrix::from_diagonal(&diag), dim) < 1e-12);
    let mut projector = vec![Complex64::new(0.0, 0.0); dim];
    projector[0] = Complex64::new(1.0, 0.0);
    assert!(m.max_abs_diff(&FockMatrix::from_diagonal(&projector), dim) < 1e-12);
}

#[test]
fn husimi_of_thermal_state_matches_closed_form() {
    let params = ThermalParams::new(0.7).unwrap();
    let (rho, z) = thermal_state(params, 80);
    let grid: PhaseGrid = "-3:3:13,-3:3:13".parse().unwrap();
    for (q, p) in grid.points() {
        let got = husimi_from_state(&rho, z, q, p).unwrap();
        let want = husimi_thermal(q, p, params);
        assert!((got - want).abs() < 1e-9, "({q},{p}): {got} vs {want}");
    }
}

#[test]
fn bell_numbers_count_everything() {
    for n in 1..=10usize {
        let b = bell_number(n);
        assert_eq!(BigInt::from(enumerate_partitions(n).unwrap().len()), b);
        assert_eq!(BigInt::from(enumerate_contractions(&number_operator_power(n)).len()), b);
        let nf = normal_order(&BosonPolynomial::from_word(number_operator_power(n)));
        let total: Rational = nf.terms().map(|(_, c)| c.clone()).sum();
        assert_eq!(total, Rational::from_integer(b.clone()));
        // <z|(a†a)^n|z> at |z| = 1 is B(n)
        let e = expectation(&nf, ComplexAmplitude::new(0.6, 0.8).unwrap()).re;
        assert!((e - b.to_f64().unwrap()).abs() < 1e-9 * e);
    }
}
