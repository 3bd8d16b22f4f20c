//! Husimi and classical thermal distributions of the harmonic oscillator.
//!
//! Units have ħ = 1 and quadratures `q = (a† + a)/√2`, `p = i(a† - a)/√2`,
//! so a phase-space point corresponds to the coherent label
//! `z = (q + i p)/√2`.

use std::f64::consts::{LN_10, PI, SQRT_2};
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{NormalForm, Rational};
use crate::coherent::{expectation, ComplexAmplitude};
use crate::{Error, Result};

/// Inverse temperature `β = 1/k_B T`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalParams {
    beta: f64,
}

impl ThermalParams {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::Domain(format!("beta must be finite and positive, got {beta}")));
        }
        Ok(Self { beta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Variance of each Husimi marginal, `1/(1 - e^{-β})`.
    pub fn quantum_variance(&self) -> f64 {
        1.0 / -(-self.beta).exp_m1()
    }

    /// Variance of each classical marginal, `1/β`.
    pub fn classical_variance(&self) -> f64 {
        1.0 / self.beta
    }

    /// Radius holding all but `1e-10` of the Husimi mass (and therefore of the
    /// narrower classical density as well).
    pub fn quadrature_radius(&self) -> f64 {
        (2.0 * 10.0 * LN_10 * self.quantum_variance()).sqrt()
    }
}

/// Rectangular grid, `nq x np` points including both bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseGrid {
    pub q_min: f64,
    pub q_max: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub nq: usize,
    pub np: usize,
}

impl PhaseGrid {
    pub fn new(q: (f64, f64, usize), p: (f64, f64, usize)) -> Result<Self> {
        let g = Self {
            q_min: q.0,
            q_max: q.1,
            nq: q.2,
            p_min: p.0,
            p_max: p.1,
            np: p.2,
        };
        let finite = [g.q_min, g.q_max, g.p_min, g.p_max].iter().all(|v| v.is_finite());
        if !finite || g.q_min >= g.q_max || g.p_min >= g.p_max {
            return Err(Error::Domain("grid bounds must be finite and increasing".into()));
        }
        if g.nq < 2 || g.np < 2 {
            return Err(Error::Domain("grid needs at least 2 points per axis".into()));
        }
        Ok(g)
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let dq = (self.q_max - self.q_min) / (self.nq - 1) as f64;
        let dp = (self.p_max - self.p_min) / (self.np - 1) as f64;
        (0..self.nq).flat_map(move |i| {
            (0..self.np).map(move |j| (self.q_min + i as f64 * dq, self.p_min + j as f64 * dp))
        })
    }
}

impl FromStr for PhaseGrid {
    type Err = Error;

    /// `"qmin:qmax:nq,pmin:pmax:np"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("expected \"qmin:qmax:nq,pmin:pmax:np\", got '{s}'"));
        let axis = |part: &str| -> Result<(f64, f64, usize)> {
            let f: Vec<&str> = part.split(':').map(str::trim).collect();
            match f.as_slice() {
                [lo, hi, n] => Ok((
                    lo.parse().map_err(|_| bad())?,
                    hi.parse().map_err(|_| bad())?,
                    n.parse().map_err(|_| bad())?,
                )),
                _ => Err(bad()),
            }
        };
        let (q, p) = s.split_once(',').ok_or_else(bad)?;
        Self::new(axis(q)?, axis(p)?)
    }
}

/// `Q(q,p) = (1/2π)(1 - e^{-β}) exp((e^{-β} - 1)(q² + p²)/2)`.
pub fn husimi_thermal(q: f64, p: f64, params: ThermalParams) -> f64 {
    let c = (-params.beta).exp_m1();
    -c / (2.0 * PI) * (c * (q * q + p * p) / 2.0).exp()
}

/// `P_cl(q,p) = (β/2π) exp(-β(q² + p²)/2)`.
pub fn classical_thermal(q: f64, p: f64, params: ThermalParams) -> f64 {
    params.beta / (2.0 * PI) * (-params.beta * (q * q + p * p) / 2.0).exp()
}

/// `:exp(c a†a): = Σ_{k<=terms} c^k/k! (a†)^k a^k`.
pub fn number_exponential_normal_form(c: &Rational, terms: usize) -> NormalForm {
    let mut nf = NormalForm::zero();
    let mut coeff = Rational::one();
    for k in 0..=terms {
        nf.add_term(k as u32, k as u32, coeff.clone());
        coeff = coeff * c / Rational::from_integer(BigInt::from(k + 1));
    }
    nf
}

/// Normal form of the unnormalized thermal state `e^{-β a†a}`, truncated at
/// `terms`, together with its partition function `Z = 1/(1 - e^{-β})`.
pub fn thermal_state(params: ThermalParams, terms: usize) -> (NormalForm, f64) {
    let c = Rational::from_float((-params.beta).exp_m1()).expect("finite");
    (number_exponential_normal_form(&c, terms), params.quantum_variance())
}

/// `Q(q,p) = (1/2π) <z|ρ|z> / Z` with `z = (q + ip)/√2`, where `rho_nf` is
/// the normal form of `ρ Z`.
pub fn husimi_from_state(rho_nf: &NormalForm, normalizer: f64, q: f64, p: f64) -> Result<f64> {
    if !(normalizer > 0.0) {
        return Err(Error::Domain(format!("normalizer must be positive, got {normalizer}")));
    }
    let z = ComplexAmplitude::new(q / SQRT_2, p / SQRT_2)?;
    Ok(expectation(rho_nf, z).re / (2.0 * PI * normalizer))
}

/// Midpoint rule on `[-r, r]²` with `n x n` cells.
pub fn integrate_square(f: impl Fn(f64, f64) -> f64, r: f64, n: usize) -> f64 {
    let h = 2.0 * r / n as f64;
    let mut total = 0.0;
    for i in 0..n {
        let q = -r + (i as f64 + 0.5) * h;
        let mut row = 0.0;
        for j in 0..n {
            row += f(q, -r + (j as f64 + 0.5) * h);
        }
        total += row;
    }
    total * h * h
}

/// Default cell count per axis for [`integrate_square`]. With the radius from
/// [`ThermalParams::quadrature_radius`] the cell width stays below a tenth of
/// the narrowest standard deviation for β <= 10, where the midpoint rule on a
/// Gaussian is accurate far beyond 1e-10.
pub const QUADRATURE_CELLS: usize = 600;

/// `∬ Q` and `∬ P_cl` over the quadrature square.
pub fn normalizations(params: ThermalParams) -> (f64, f64) {
    let r = params.quadrature_radius();
    (
        integrate_square(|q, p| husimi_thermal(q, p, params), r, QUADRATURE_CELLS),
        integrate_square(|q, p| classical_thermal(q, p, params), r, QUADRATURE_CELLS),
    )
}

/// Numerical `∬ q² Q` and `∬ q² P_cl`.
pub fn marginal_variances(params: ThermalParams) -> (f64, f64) {
    let r = params.quadrature_radius();
    (
        integrate_square(|q, p| q * q * husimi_thermal(q, p, params), r, QUADRATURE_CELLS),
        integrate_square(|q, p| q * q * classical_thermal(q, p, params), r, QUADRATURE_CELLS),
    )
}

/// `max |Q - P_cl|` over the grid points.
pub fn sup_distance(grid: &PhaseGrid, params: ThermalParams) -> f64 {
    grid.points()
        .map(|(q, p)| (husimi_thermal(q, p, params) - classical_thermal(q, p, params)).abs())
        .fold(0.0, f64::max)
}

/// Row-major CSV with header `q,p,Q,Pcl`.
pub fn grid_csv(grid: &PhaseGrid, params: ThermalParams) -> String {
    let mut out = String::from("q,p,Q,Pcl\n");
    for (q, p) in grid.points() {
        writeln!(
            out,
            "{q},{p},{:e},{:e}",
            husimi_thermal(q, p, params),
            classical_thermal(q, p, params)
        )
        .unwrap();
    }
    out
}
