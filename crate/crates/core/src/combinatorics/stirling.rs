use std::fmt::Write as _;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Largest row kept in the shared, lazily built triangle.
pub const CACHED_ROWS: usize = 200;

/// Stirling numbers of the second kind `S(n, k)` for `0 <= k <= n <= n_max`.
///
/// Built row by row from `S(n+1, k) = k S(n, k) + S(n, k-1)` with
/// `S(0, 0) = 1` and `S(n, 0) = 0` for `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigInt::one()]);
        for n in 0..n_max {
            let prev = &rows[n];
            let mut next = vec![BigInt::zero(); n + 2];
            for k in 1..=n + 1 {
                let mut v = prev.get(k - 1).cloned().unwrap_or_default();
                if let Some(s) = prev.get(k) {
                    v += s * BigInt::from(k);
                }
                next[k] = v;
            }
            rows.push(next);
        }
        Self { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `S(n, k)`; zero outside the triangle. Panics if `n > n_max`.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        assert!(n <= self.n_max(), "row {n} beyond table size {}", self.n_max());
        self.rows[n].get(k).cloned().unwrap_or_default()
    }

    /// Row `n`: `S(n, 0), ..., S(n, n)`.
    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    pub fn bell(&self, n: usize) -> BigInt {
        self.rows[n].iter().sum()
    }

    /// Tab-separated triangle for rows `1..=n_max`.
    ///
    /// Header `n`, `k=1` .. `k=n_max`, `B(n)`; each row holds `n`, the
    /// values `S(n, 1..=n)`, empty cells for `k > n`, then `B(n)`. Every
    /// line ends with `\n`.
    pub fn to_tsv(&self) -> String {
        let n_max = self.n_max();
        let mut out = String::from("n");
        for k in 1..=n_max {
            write!(out, "\tk={k}").unwrap();
        }
        out.push_str("\tB(n)\n");
        for n in 1..=n_max {
            write!(out, "{n}").unwrap();
            for k in 1..=n_max {
                out.push('\t');
                if k <= n {
                    write!(out, "{}", self.get(n, k)).unwrap();
                }
            }
            writeln!(out, "\t{}", self.bell(n)).unwrap();
        }
        out
    }
}

pub(crate) fn shared_table() -> &'static StirlingTable {
    static TABLE: OnceLock<StirlingTable> = OnceLock::new();
    TABLE.get_or_init(|| StirlingTable::new(CACHED_ROWS))
}

/// `S(n, k)` by the triangle recurrence. Rows up to [`CACHED_ROWS`] come from
/// a process-wide table that is built once and only read afterwards.
pub fn stirling_rec(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    if n <= CACHED_ROWS {
        shared_table().get(n, k)
    } else {
        StirlingTable::new(n).get(n, k)
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `S(n, k) = (1/k!) Σ_{j=1}^{k} C(k, j) (-1)^{k-j} j^n`, for `1 <= k <= n`.
///
/// Fails if the alternating sum is not divisible by `k!`.
pub fn stirling_explicit(n: usize, k: usize) -> Result<BigInt> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!(
            "explicit formula needs 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let mut sum = BigInt::zero();
    for j in 1..=k {
        let term = binomial(k, j) * num_traits::pow(BigInt::from(j), n);
        if (k - j).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (q, r) = sum.div_rem(&factorial(k));
    if !r.is_zero() {
        return Err(Error::Domain(format!(
            "alternating sum for S({n},{k}) not divisible by {k}!"
        )));
    }
    Ok(q)
}

/// `B(n) = Σ_k S(n, k)`, with `B(0) = 1`.
pub fn bell_number(n: usize) -> BigInt {
    if n <= CACHED_ROWS {
        shared_table().bell(n)
    } else {
        StirlingTable::new(n).bell(n)
    }
}

/// Coefficients of `x^n` in the falling-factorial basis: `x^n = Σ_k S(n,k) x^(k)`.
pub fn falling_factorial_expand(n: usize) -> Vec<BigInt> {
    (0..=n).map(|k| stirling_rec(n, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn table_values() {
        assert_eq!(stirling_rec(5, 3), big(25));
        assert_eq!(stirling_rec(8, 4), big(1701));
        assert_eq!(stirling_rec(4, 4), big(1));
        assert_eq!(stirling_rec(0, 0), big(1));
        assert_eq!(stirling_rec(3, 0), big(0));
        assert_eq!(stirling_rec(3, 5), big(0));
    }

    #[test]
    fn explicit_formula() {
        assert_eq!(stirling_explicit(4, 2).unwrap(), big(7));
        for n in 1..=8 {
            assert_eq!(stirling_explicit(n, 1).unwrap(), big(1));
        }
        assert_eq!(stirling_explicit(12, 5).unwrap(), stirling_rec(12, 5));
        assert!(stirling_explicit(3, 0).is_err());
        assert!(stirling_explicit(3, 4).is_err());
    }

    #[test]
    fn bell_numbers() {
        assert_eq!(bell_number(0), big(1));
        assert_eq!(bell_number(5), big(52));
        assert_eq!(bell_number(8), big(4140));
    }

    #[test]
    fn rows_past_the_cache() {
        let t = StirlingTable::new(205);
        assert_eq!(stirling_rec(205, 7), t.get(205, 7));
        assert_eq!(bell_number(201), t.bell(201));
    }

    #[test]
    fn table_invariants() {
        let t = StirlingTable::new(40);
        for n in 1..=40 {
            assert!(t.get(n, 0).is_zero());
            assert_eq!(t.get(n, n), big(1));
            assert!(t.get(n, n + 1).is_zero());
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(5, 6), big(0));
        assert_eq!(binomial(30, 15), big(155117520));
    }

    #[test]
    fn tsv_layout() {
        let tsv = StirlingTable::new(3).to_tsv();
        assert_eq!(
            tsv,
            "n\tk=1\tk=2\tk=3\tB(n)\n1\t1\t\t\t1\n2\t1\t1\t\t2\n3\t1\t3\t1\t5\n"
        );
    }
}
