//! Wick contractions and their correspondence with set partitions.
//!
//! A contraction of a word picks disjoint pairs `(i, j)` with an `a` at
//! position `i`, an `a†` at position `j` and `i < j`. Summing the
//! double-dotted remainders over all contractions (the empty one included)
//! gives the normal form. For the word `(a† a)^n`, contractions are in
//! bijection with partitions of `{1, ..., n}`.

use std::fmt;

use serde::Serialize;

use crate::algebra::{double_dot, BosonPolynomial, BosonWord, Letter, NormalForm};
use crate::{Error, Result};

/// Largest `n` accepted by [`enumerate_partitions`].
pub const MAX_PARTITION_SIZE: usize = 12;

/// A set of disjoint `(a position, a† position)` pairs, 0-based, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Contraction {
    pairs: Vec<(usize, usize)>,
}

impl Contraction {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Validates `pairs` against `word`: each pair must join an `a` to a
    /// later `a†`, and no position may be used twice.
    pub fn new(word: &BosonWord, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let letters = word.to_letters();
        let mut used = vec![false; letters.len()];
        for &(i, j) in &pairs {
            if i >= j || j >= letters.len() {
                return Err(Error::InvalidContraction(format!(
                    "pair ({i}, {j}) out of order or range"
                )));
            }
            if letters[i] != Letter::A || letters[j] != Letter::Adag {
                return Err(Error::InvalidContraction(format!(
                    "pair ({i}, {j}) does not join a to a later a†"
                )));
            }
            for p in [i, j] {
                if std::mem::replace(&mut used[p], true) {
                    return Err(Error::InvalidContraction(format!("position {p} used twice")));
                }
            }
        }
        Ok(Self::from_sorted(pairs))
    }

    fn from_sorted(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The word with every contracted position deleted.
    pub fn remainder(&self, word: &BosonWord) -> BosonWord {
        let mut removed = vec![false; word.len()];
        for &(i, j) in &self.pairs {
            removed[i] = true;
            removed[j] = true;
        }
        BosonWord::from_letters(
            word.letters()
                .zip(removed)
                .filter(|(_, r)| !r)
                .map(|(l, _)| l),
        )
    }
}

impl fmt::Display for Contraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, (i, j)) in self.pairs.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({i},{j})")?;
        }
        f.write_str("}")
    }
}

/// All contractions of `word`, empty one included, sorted by pair list.
pub fn enumerate_contractions(word: &BosonWord) -> Vec<Contraction> {
    fn go(
        letters: &[Letter],
        pos: usize,
        open: &mut Vec<usize>,
        pairs: &mut Vec<(usize, usize)>,
        out: &mut Vec<Contraction>,
    ) {
        if pos == letters.len() {
            out.push(Contraction::from_sorted(pairs.clone()));
            return;
        }
        match letters[pos] {
            Letter::A => {
                open.push(pos);
                go(letters, pos + 1, open, pairs, out);
                open.pop();
            }
            Letter::Adag => {
                go(letters, pos + 1, open, pairs, out);
                for idx in 0..open.len() {
                    let i = open.remove(idx);
                    pairs.push((i, pos));
                    go(letters, pos + 1, open, pairs, out);
                    pairs.pop();
                    open.insert(idx, i);
                }
            }
        }
    }

    let letters = word.to_letters();
    let mut out = Vec::new();
    go(&letters, 0, &mut Vec::new(), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Normal form of `word` as the sum over contractions of the double-dotted
/// remainder.
pub fn wick_normal_order(word: &BosonWord) -> NormalForm {
    let mut out = NormalForm::zero();
    for c in enumerate_contractions(word) {
        out.add_assign(&double_dot(&BosonPolynomial::from_word(c.remainder(word))));
    }
    out
}

/// The word `(a† a)^n`; block `b` (1-based) has `a†` at `2(b-1)` and `a` at `2b-1`.
pub fn number_operator_power(n: usize) -> BosonWord {
    BosonWord::from_letters((0..n).flat_map(|_| [Letter::Adag, Letter::A]))
}

/// A partition of `{1, ..., n}` in canonical form: elements ascending within
/// each block, blocks ordered by their least element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates that `blocks` are non-empty, disjoint and cover `1..=n` for
    /// some `n`, then canonicalizes.
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::Domain("empty block in partition".into()));
            }
            for &e in b.iter() {
                if e == 0 || e > n || std::mem::replace(&mut seen[e], true) {
                    return Err(Error::Domain(format!(
                        "blocks are not a partition of 1..={n} (element {e})"
                    )));
                }
            }
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Size of the ground set.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    fn from_growth_string(rgs: &[usize]) -> Self {
        let k = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        Self { blocks }
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let elems: Vec<String> = b.iter().map(usize::to_string).collect();
            write!(f, "{{{}}}", elems.join(","))?;
        }
        f.write_str("}")
    }
}

/// Every partition of `{1, ..., n}`, in lexicographic order of restricted
/// growth strings.
pub fn enumerate_partitions(n: usize) -> Result<Vec<SetPartition>> {
    if n == 0 {
        return Err(Error::Domain("partitions need n >= 1".into()));
    }
    if n > MAX_PARTITION_SIZE {
        return Err(Error::ResourceLimit(format!(
            "enumerating partitions of {n} elements exceeds the limit of {MAX_PARTITION_SIZE}"
        )));
    }
    let mut out = Vec::new();
    // rgs[i] <= 1 + max(rgs[..i]), rgs[0] = 0
    let mut rgs = vec![0usize; n];
    let mut maxes = vec![0usize; n];
    loop {
        out.push(SetPartition::from_growth_string(&rgs));
        let mut i = n - 1;
        loop {
            if i == 0 {
                return Ok(out);
            }
            if rgs[i] <= maxes[i - 1] {
                rgs[i] += 1;
                maxes[i] = maxes[i - 1].max(rgs[i]);
                for j in i + 1..n {
                    rgs[j] = 0;
                    maxes[j] = maxes[i];
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Partitions of `{1, ..., n}` with exactly `k` blocks.
pub fn enumerate_partitions_with_blocks(n: usize, k: usize) -> Result<Vec<SetPartition>> {
    Ok(enumerate_partitions(n)?
        .into_iter()
        .filter(|p| p.num_blocks() == k)
        .collect())
}

/// Reads a contraction of `(a† a)^n` as a partition: blocks `b < b'` share a
/// class when a pair joins the `a` of `b` to the `a†` of `b'`, closed
/// transitively.
pub fn contraction_to_partition(c: &Contraction, n: usize) -> Result<SetPartition> {
    let mut next = vec![None; n + 1];
    let mut has_prev = vec![false; n + 1];
    for &(i, j) in c.pairs() {
        if i % 2 != 1 || j % 2 != 0 || j >= 2 * n || i >= j {
            return Err(Error::InvalidContraction(format!(
                "pair ({i}, {j}) is not a contraction of (a† a)^{n}"
            )));
        }
        let (from, to) = (i.div_ceil(2), j / 2 + 1);
        if next[from].replace(to).is_some() || std::mem::replace(&mut has_prev[to], true) {
            return Err(Error::InvalidContraction(format!(
                "block reused in pair ({i}, {j})"
            )));
        }
    }
    let mut blocks = Vec::new();
    for start in 1..=n {
        if has_prev[start] {
            continue;
        }
        let mut block = vec![start];
        let mut cur = start;
        while let Some(to) = next[cur] {
            block.push(to);
            cur = to;
        }
        blocks.push(block);
    }
    SetPartition::new(blocks)
}

/// Inverse of [`contraction_to_partition`]: within each block, the `a` of
/// every element is paired with the `a†` of the next larger element.
pub fn partition_to_contraction(p: &SetPartition) -> Contraction {
    let pairs = p
        .blocks()
        .iter()
        .flat_map(|b| b.windows(2).map(|w| (2 * w[0] - 1, 2 * (w[1] - 1))))
        .collect();
    Contraction::from_sorted(pairs)
}
