use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::cyclic::{canonical_word, totient, divisors, CyclicSet};
use crate::deck::{deck3_set, deck3_word, decks_equal, fingerprint_u8, DeckDigest};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_N: usize = 18;
pub const HARD_MAX_N: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Largest modulus accepted; clamped to [`HARD_MAX_N`].
    pub max_n: usize,
    /// Number of exception pairs kept in the report.
    pub max_exceptions: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { max_n: DEFAULT_MAX_N, max_exceptions: 100 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub n: usize,
    pub num_subsets: u128,
    pub num_translation_classes: u64,
    pub num_deck_classes: u64,
    pub determined: bool,
    /// Canonical representatives sharing a 3-deck, at most `max_exceptions`.
    pub exceptions: Vec<(CyclicSet, CyclicSet)>,
    /// Unordered non-translate pairs of translation classes sharing a 3-deck.
    pub exception_pair_count: u64,
    /// Subsets lying in a deck class that holds more than one translation class.
    pub exception_subset_count: u64,
    pub elapsed: Duration,
}

/// `(1/n) sum_{d | n} phi(d) 2^(n/d)`.
pub fn necklace_count(n: usize) -> u128 {
    let total: u128 =
        divisors(n as u64).into_iter().map(|d| u128::from(totient(d)) << (n as u64 / d)).sum();
    total / n as u128
}

/// Canonical representatives of the translation classes of subsets of Z_n,
/// in increasing mask order.
pub fn enumerate_translation_classes(n: usize) -> Result<impl Iterator<Item = CyclicSet>> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    if n > 64 {
        return Err(Error::ModulusTooLarge { n, cap: 64 });
    }
    let top = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok((0..=top)
        .filter(move |&m| canonical_word(m, n) == m)
        .map(move |m| CyclicSet::from_mask(n, m).expect("mask fits")))
}

pub fn classify(n: usize) -> Result<ClassificationReport> {
    classify_with(n, &ClassifyOptions::default())
}

/// Groups every translation class of Z_n by its 3-deck.
pub fn classify_with(n: usize, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let cap = opts.max_n.min(HARD_MAX_N);
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    if n > cap {
        return Err(Error::ModulusTooLarge { n, cap });
    }
    let start = Instant::now();
    let total = 1u64 << n;
    let chunk = (total / 256).max(1 << 10);
    let chunks: Vec<(u64, u64)> =
        (0..total).step_by(chunk as usize).map(|lo| (lo, (lo + chunk).min(total))).collect();

    let mut keyed: Vec<(DeckDigest, u64)> = chunks
        .into_par_iter()
        .flat_map_iter(|(lo, hi)| {
            (lo..hi)
                .filter(move |&m| canonical_word(m, n) == m)
                .map(move |m| (fingerprint_u8(n, 3, &deck3_word(m, n)), m))
        })
        .collect();
    keyed.par_sort_unstable();
    let num_translation_classes = keyed.len() as u64;

    let mut num_deck_classes = 0u64;
    let mut colliding: Vec<Vec<u64>> = Vec::new();
    for group in keyed.chunk_by(|a, b| a.0 == b.0) {
        // a digest match is only a hint: split by the exact tables
        let mut exact: BTreeMap<Vec<u8>, Vec<u64>> = BTreeMap::new();
        for &(_, m) in group {
            exact.entry(deck3_word(m, n)).or_default().push(m);
        }
        num_deck_classes += exact.len() as u64;
        colliding.extend(exact.into_values().filter(|c| c.len() > 1));
    }

    let mut exceptions = Vec::new();
    let mut exception_pair_count = 0u64;
    let mut exception_subset_count = 0u64;
    for class in &colliding {
        let members: Vec<CyclicSet> =
            class.iter().map(|&m| CyclicSet::from_mask(n, m).unwrap()).collect();
        // a translation orbit has as many members as the smallest period
        exception_subset_count += members.iter().map(|s| s.period() as u64).sum::<u64>();
        let k = members.len() as u64;
        exception_pair_count += k * (k - 1) / 2;
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if exceptions.len() < opts.max_exceptions {
                    exceptions.push((members[i].clone(), members[j].clone()));
                }
            }
        }
    }
    for (e, f) in &exceptions {
        assert!(decks_equal(&deck3_set(e), &deck3_set(f))?, "exception pair {e} / {f}");
        assert!(e.translation_equivalent(f)?.is_none(), "exception pair {e} / {f}");
    }

    Ok(ClassificationReport {
        n,
        num_subsets: 1u128 << n,
        num_translation_classes,
        num_deck_classes,
        determined: colliding.is_empty(),
        exceptions,
        exception_pair_count,
        exception_subset_count,
        elapsed: start.elapsed(),
    })
}

/// Fraction of subsets of Z_n in a colliding deck class.
pub fn exception_fraction(n: usize) -> Result<BigRational> {
    let r = classify(n)?;
    Ok(BigRational::new(BigInt::from(r.exception_subset_count), BigInt::from(1u64) << n))
}
