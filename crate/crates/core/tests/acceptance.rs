//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line.
//!
//! Run with `cargo test -p normal-ordering --test acceptance -- --nocapture`
//! to see the report.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rand::{rngs::StdRng, Rng, SeedableRng};

use normal_ordering::algebra::{normal_order, BosonPolynomial, BosonWord, Letter, NormalForm, Rational};
use normal_ordering::coherent::{coherent_vector, fock_matrix, verify_identity, ComplexAmplitude};
use normal_ordering::combinatorics::{
    bell_number, bell_poly_recurrence_check, bell_polynomial, dobinski, egf_stirling, factorial,
    falling_factorial_expand, from_falling_factorials, sheffer_identity_check, stirling_explicit,
    stirling_rec, Polynomial,
};
use normal_ordering::phasespace::{
    marginal_variances, normalizations, sup_distance, PhaseGrid, ThermalParams,
};
use normal_ordering::wick::{
    contraction_to_partition, enumerate_contractions, enumerate_partitions, number_operator_power,
    partition_to_contraction, wick_normal_order,
};
use normal_ordering::algebra::nf_to_polynomial;

fn report(id: u32, title: &str, start: Instant, budget: Option<Duration>, outcome: Result<String, String>) {
    let elapsed = start.elapsed();
    let outcome = match (outcome, budget) {
        (Ok(_), Some(b)) if elapsed >= b => Err(format!("took {elapsed:?}, budget {b:?}")),
        (o, _) => o,
    };
    match &outcome {
        Ok(detail) => println!("criterion {id:>2} PASS  {title} ({detail}; {elapsed:.2?})"),
        Err(why) => println!("criterion {id:>2} FAIL  {title}: {why}"),
    }
    if let Err(why) = outcome {
        panic!("criterion {id} failed: {why}");
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

/// Rows of the published triangle, S(n, 1..=n) followed by B(n).
const PUBLISHED_TABLE: [&[u64]; 8] = [
    &[1, 1],
    &[1, 1, 2],
    &[1, 3, 1, 5],
    &[1, 7, 6, 1, 15],
    &[1, 15, 25, 10, 1, 52],
    &[1, 31, 90, 65, 15, 1, 203],
    &[1, 63, 301, 350, 140, 21, 1, 877],
    &[1, 127, 966, 1701, 1050, 266, 28, 1, 4140],
];

#[test]
fn criterion_01_table_reproduction() {
    let start = Instant::now();
    let outcome = (|| {
        for (i, row) in PUBLISHED_TABLE.iter().enumerate() {
            let n = i + 1;
            for k in 1..=n {
                check(stirling_rec(n, k) == BigInt::from(row[k - 1]), || {
                    format!("S({n},{k}) = {} != {}", stirling_rec(n, k), row[k - 1])
                })?;
            }
            check(bell_number(n) == BigInt::from(row[n]), || format!("B({n}) mismatch"))?;
        }
        Ok("36 Stirling numbers and B(1..8) exact".to_string())
    })();
    report(1, "published S(n,k) and B(n) table", start, Some(Duration::from_secs(1)), outcome);
}

#[test]
fn criterion_02_triple_method_agreement() {
    let start = Instant::now();
    let outcome = (|| {
        for n in 1..=12usize {
            let word = number_operator_power(n);
            let nf = normal_order(&BosonPolynomial::from_word(word));
            check(nf.len() == n, || format!("(a†a)^{n} has {} terms", nf.len()))?;
            for k in 1..=n {
                let rec = stirling_rec(n, k);
                let explicit = stirling_explicit(n, k).map_err(|e| e.to_string())?;
                let op = nf.coefficient(k as u32, k as u32);
                check(rec == explicit && Rational::from_integer(rec.clone()) == op, || {
                    format!("n={n} k={k}: rec={rec} explicit={explicit} operator={op}")
                })?;
            }
        }
        Ok("n <= 12 exact".to_string())
    })();
    report(2, "recurrence = explicit sum = normal-ordering coefficients", start, Some(Duration::from_secs(10)), outcome);
}

#[test]
fn criterion_03_wick_rewrite_equivalence() {
    let start = Instant::now();
    let outcome = (|| {
        let mut words = 0;
        for len in 0..=10usize {
            for bits in 0..(1u32 << len) {
                let w = BosonWord::from_letters(
                    (0..len).map(|i| if bits >> i & 1 == 1 { Letter::Adag } else { Letter::A }),
                );
                let wick = wick_normal_order(&w);
                let rewrite = normal_order(&BosonPolynomial::from_word(w.clone()));
                check(wick == rewrite, || format!("{w}: wick {wick} != rewrite {rewrite}"))?;
                words += 1;
            }
        }
        Ok(format!("{words} words of length <= 10"))
    })();
    report(3, "Wick sum = rewriting, all words up to length 10", start, Some(Duration::from_secs(60)), outcome);
}

#[test]
fn criterion_04_bijection() {
    let start = Instant::now();
    let outcome = (|| {
        for n in 1..=7usize {
            let word = number_operator_power(n);
            let contractions = enumerate_contractions(&word);
            check(BigInt::from(contractions.len()) == bell_number(n), || {
                format!("n={n}: {} contractions vs B(n)={}", contractions.len(), bell_number(n))
            })?;
            for c in &contractions {
                let p = contraction_to_partition(c, n).map_err(|e| e.to_string())?;
                check(&partition_to_contraction(&p) == c, || format!("n={n}: {c} does not round-trip"))?;
            }
            let partitions = enumerate_partitions(n).map_err(|e| e.to_string())?;
            check(partitions.len() == contractions.len(), || format!("n={n}: partition count"))?;
            for p in &partitions {
                let c = partition_to_contraction(p);
                let back = contraction_to_partition(&c, n).map_err(|e| e.to_string())?;
                check(&back == p, || format!("n={n}: {p} does not round-trip"))?;
            }
        }
        Ok("n <= 7, both directions".to_string())
    })();
    report(4, "contraction <-> partition bijection", start, None, outcome);
}

#[test]
fn criterion_05_dobinski() {
    let start = Instant::now();
    let tol = Rational::new(BigInt::one(), BigInt::from(10u64.pow(10)));
    let outcome = (|| {
        let mut worst = Rational::zero();
        for n in 0..=15u32 {
            for x in [Rational::new(1.into(), 2.into()), int(1), int(2)] {
                let got = dobinski(n, &x, 1e-10).map_err(|e| e.to_string())?;
                let exact = bell_polynomial(n as usize).eval(&x);
                let err = (Rational::from_float(got).unwrap() - &exact).abs();
                check(err < tol, || format!("n={n} x={x}: got {got}, exact {exact}"))?;
                if err > worst {
                    worst = err;
                }
            }
        }
        Ok(format!("max |error| = {:e}", num_traits::ToPrimitive::to_f64(&worst).unwrap()))
    })();
    report(5, "Dobinski series within 1e-10 of B(n,x)", start, None, outcome);
}

#[test]
fn criterion_06_identity_verification() {
    let start = Instant::now();
    let outcome = (|| {
        let mut done = Vec::new();
        for (name, order) in [("number-exp", 6), ("bch-linear", 6), ("excited-21", 5), ("kerr", 4)] {
            let r = verify_identity(name, order).map_err(|e| e.to_string())?;
            check(r.equal, || format!("{name} differs: {:?}", r.first_mismatch))?;
            done.push(format!("{name}@{order}"));
        }
        Ok(done.join(", "))
    })();
    report(6, "exponential normal-ordering identities", start, Some(Duration::from_secs(120)), outcome);
}

#[test]
fn criterion_07_vacuum_projector() {
    let start = Instant::now();
    let outcome = (|| {
        let mut nf = NormalForm::zero();
        for k in 0..=20u32 {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            nf.add_term(k, k, Rational::new(sign.into(), factorial(k as usize)));
        }
        let m = fock_matrix(&nf_to_polynomial(&nf), 20);
        let mut worst = 0.0f64;
        for i in 0..20 {
            for j in 0..20 {
                let want = if i == 0 && j == 0 { 1.0 } else { 0.0 };
                worst = worst.max((m.get(i, j) - Complex64::new(want, 0.0)).norm());
            }
        }
        check(worst < 1e-12, || format!("max deviation {worst:e}"))?;
        Ok(format!("max deviation {worst:e}"))
    })();
    report(7, "truncated :e^{-a†a}: equals |0><0|", start, None, outcome);
}

#[test]
fn criterion_08_coherent_oracle() {
    let start = Instant::now();
    let outcome = (|| {
        let dim = 60;
        let number = fock_matrix(&BosonPolynomial::from_word(BosonWord::normal_monomial(1, 1)), dim);
        let zs = [(0.0, 0.0), (0.5, 0.0), (1.0, 1.0), (2.0, 0.0), (-1.2, 1.6), (0.0, -2.0), (1.3, -0.7)];
        let mut worst = 0.0f64;
        for lambda in [-0.5f64, 0.3] {
            let e = number.scale(Complex64::new(lambda, 0.0)).exp();
            for &(re, im) in &zs {
                let z = ComplexAmplitude::new(re, im).unwrap();
                let v = coherent_vector(z, dim);
                let got = e.expectation(&v.amplitudes);
                let want = (z.norm_sqr() * lambda.exp_m1()).exp();
                let err = (got - Complex64::new(want, 0.0)).norm();
                check(err < 1e-8, || format!("λ={lambda} z={z}: {got} vs {want}"))?;
                worst = worst.max(err);
            }
        }
        Ok(format!("max |error| = {worst:e}"))
    })();
    report(8, "<z|e^{λa†a}|z> from Fock exponential", start, None, outcome);
}

#[test]
fn criterion_09_husimi() {
    let start = Instant::now();
    let outcome = (|| {
        for beta in [0.1, 1.0, 10.0] {
            let params = ThermalParams::new(beta).unwrap();
            let (q, c) = normalizations(params);
            check((q - 1.0).abs() < 1e-6 && (c - 1.0).abs() < 1e-6, || {
                format!("β={beta}: ∬Q={q}, ∬Pcl={c}")
            })?;
            let (vq, vc) = marginal_variances(params);
            check(params.quantum_variance() > params.classical_variance() && vq > vc, || {
                format!("β={beta}: quantum variance not wider")
            })?;
        }
        let grid: PhaseGrid = "-5:5:101,-5:5:101".parse().unwrap();
        let distances: Vec<f64> = [1.0, 0.5, 0.1, 0.01]
            .iter()
            .map(|&b| sup_distance(&grid, ThermalParams::new(b).unwrap()))
            .collect();
        check(distances.windows(2).all(|w| w[1] < w[0]), || {
            format!("sup distances not decreasing: {distances:?}")
        })?;
        let shown: Vec<String> = distances.iter().map(|d| format!("{d:.3e}")).collect();
        Ok(format!("sup|Q-Pcl| = [{}]", shown.join(", ")))
    })();
    report(9, "Husimi normalization, width ordering, classical limit", start, None, outcome);
}

fn random_rational(rng: &mut StdRng) -> Rational {
    let num: i64 = rng.gen_range(-50..=50);
    let den: i64 = rng.gen_range(1..=20);
    Rational::new(num.into(), den.into())
}

#[test]
fn criterion_10_appendix_identities() {
    let start = Instant::now();
    let outcome = (|| {
        // Stirling recurrence with its boundary values, against the explicit sum
        for n in 0..=30usize {
            let expected_zero = if n == 0 { BigInt::one() } else { BigInt::zero() };
            check(stirling_rec(n, 0) == expected_zero, || format!("S({n},0)"))?;
            for k in 1..=n + 1 {
                let lhs = stirling_rec(n + 1, k);
                let rhs = BigInt::from(k) * stirling_rec(n, k) + stirling_rec(n, k - 1);
                check(lhs == rhs, || format!("recurrence at n={n}, k={k}"))?;
                if k <= n {
                    check(stirling_explicit(n, k).unwrap() == stirling_rec(n, k), || {
                        format!("explicit sum at n={n}, k={k}")
                    })?;
                }
            }
        }
        check(bell_poly_recurrence_check(30), || "Bell polynomial recurrence".into())?;
        for k in 0..=30usize {
            let s = egf_stirling(k, 30);
            for n in 0..=30usize {
                check(*s.coeff(n) == Rational::new(stirling_rec(n, k), factorial(n)), || {
                    format!("EGF coefficient n={n}, k={k}")
                })?;
            }
        }
        for n in 0..=30usize {
            check(
                from_falling_factorials(&falling_factorial_expand(n)) == Polynomial::monomial(n, int(1)),
                || format!("falling-factorial expansion n={n}"),
            )?;
        }
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for n in 0..=30usize {
            for _ in 0..3 {
                let (x, y) = (random_rational(&mut rng), random_rational(&mut rng));
                check(sheffer_identity_check(n, &x, &y), || format!("Sheffer n={n} x={x} y={y}"))?;
            }
        }
        Ok("n <= 30, exact".to_string())
    })();
    report(10, "recurrence, Bell recurrence, EGF, falling factorials, Sheffer", start, None, outcome);
}
