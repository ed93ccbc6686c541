//! Exhaustive 3-deck classification, the closed-form characterization of
//! good moduli, determinacy certificates and random-set experiments.

mod classify;
mod mc;

use std::collections::HashMap;

use serde::Serialize;

use crate::cyclic::{arith_profile, factorize, CyclicSet};
use crate::error::{Error, Result};
use crate::extendable::is_extendable;
use crate::spectrum::set_zero_set;

pub use classify::{
    classify, classify_with, enumerate_translation_classes, exception_fraction, necklace_count,
    ClassificationReport, ClassifyOptions, DEFAULT_MAX_N, HARD_MAX_N,
};
pub use mc::{zero_probability_mc, Estimate, McReport, GENERATOR_NAME};

/// Closed-form prediction of 3-deck determinacy on Z_n: odd prime powers,
/// odd products of at most three primes, and 1, 2, 4, 6, 8, 10.
pub fn good_n_predicate(n: u64) -> bool {
    assert!(n >= 1, "Z_0 is not a cyclic group");
    if matches!(n, 1 | 2 | 4 | 6 | 8 | 10) {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let f = factorize(n);
    let omega: u32 = f.iter().map(|&(_, e)| e).sum();
    f.len() == 1 || omega <= 3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Certificate {
    /// The transform never vanishes.
    Nonvanishing,
    /// The frequencies `1..=d(n)` all lie in the support.
    Prefix,
    /// The support is an extendable domain.
    Extendable,
    Unknown,
}

impl Certificate {
    pub fn as_str(self) -> &'static str {
        match self {
            Certificate::Nonvanishing => "NONVANISHING",
            Certificate::Prefix => "PREFIX",
            Certificate::Extendable => "EXTENDABLE",
            Certificate::Unknown => "UNKNOWN",
        }
    }

    /// Whether the certificate guarantees determinacy up to translation.
    pub fn is_certified(self) -> bool {
        self != Certificate::Unknown
    }
}

/// Certificates with extendability verdicts memoized by support.
#[derive(Debug, Default)]
pub struct CertificateCache {
    extendable: HashMap<CyclicSet, bool>,
}

impl CertificateCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn certify(&mut self, e: &CyclicSet) -> Result<Certificate> {
        if e.is_empty() {
            return Err(Error::EmptyDomain);
        }
        let n = e.n();
        let report = set_zero_set(e);
        if !report.has_zeros() {
            return Ok(Certificate::Nonvanishing);
        }
        let dn = arith_profile(n as u64).num_divisors as usize;
        if (1..=dn).all(|s| report.full_support.contains(s % n)) {
            return Ok(Certificate::Prefix);
        }
        let support = report.full_support;
        let ok = match self.extendable.get(&support) {
            Some(&v) => v,
            None => {
                let v = is_extendable(&support)?.extendable;
                self.extendable.insert(support, v);
                v
            }
        };
        Ok(if ok { Certificate::Extendable } else { Certificate::Unknown })
    }

    /// Number of distinct supports checked for extendability so far.
    pub fn len(&self) -> usize {
        self.extendable.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extendable.is_empty()
    }
}

/// Strongest available certificate that `E` is determined by its 3-deck.
pub fn determinacy_certificate(e: &CyclicSet) -> Result<Certificate> {
    CertificateCache::new().certify(e)
}
