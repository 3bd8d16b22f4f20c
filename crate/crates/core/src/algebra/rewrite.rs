//! Normal ordering by exhaustive application of `a a† -> a† a + 1`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{BosonPolynomial, Letter, NormalForm, Rational};

/// Work-queue key. Rewriting either swaps an adjacent `a a†` pair (one
/// fewer inversion, same length) or deletes it (shorter word), so popping
/// the largest `(len, inversions)` first means every word is fully merged
/// before it is expanded.
type Key = (usize, usize, Vec<Letter>);

fn inversions(letters: &[Letter]) -> usize {
    let mut seen_a = 0;
    let mut count = 0;
    for &l in letters {
        match l {
            Letter::A => seen_a += 1,
            Letter::Adag => count += seen_a,
        }
    }
    count
}

fn key(letters: Vec<Letter>) -> Key {
    (letters.len(), inversions(&letters), letters)
}

fn counts(letters: &[Letter]) -> (u32, u32) {
    letters.iter().fold((0, 0), |(j, k), l| match l {
        Letter::Adag => (j + 1, k),
        Letter::A => (j, k + 1),
    })
}

/// Normal-orders `p`, rewriting at the position chosen by `pick`.
///
/// `pick` receives the positions `i` where letter `i` is `a` and letter
/// `i + 1` is `a†` (never empty) and returns an index into that slice.
pub fn normal_order_with<F>(p: &BosonPolynomial, mut pick: F) -> NormalForm
where
    F: FnMut(&[usize]) -> usize,
{
    let mut pending: BTreeMap<Key, Rational> = BTreeMap::new();
    for (w, c) in p.terms() {
        *pending
            .entry(key(w.to_letters()))
            .or_insert_with(Rational::zero) += c;
    }

    let mut out = NormalForm::zero();
    let mut sites = Vec::new();
    while let Some(((_, inv, letters), c)) = pending.pop_last() {
        if c.is_zero() {
            continue;
        }
        if inv == 0 {
            let (j, k) = counts(&letters);
            out.add_term(j, k, c);
            continue;
        }
        sites.clear();
        sites.extend(
            letters
                .windows(2)
                .enumerate()
                .filter(|(_, w)| w[0] == Letter::A && w[1] == Letter::Adag)
                .map(|(i, _)| i),
        );
        let i = sites[pick(&sites)];

        let mut swapped = letters.clone();
        swapped.swap(i, i + 1);
        let mut contracted = letters;
        contracted.drain(i..i + 2);

        *pending
            .entry((swapped.len(), inv - 1, swapped))
            .or_insert_with(Rational::zero) += &c;
        *pending
            .entry(key(contracted))
            .or_insert_with(Rational::zero) += c;
    }
    out
}

/// Normal-orders `p` by always rewriting the leftmost `a a†` pair.
pub fn normal_order(p: &BosonPolynomial) -> NormalForm {
    normal_order_with(p, |_| 0)
}
