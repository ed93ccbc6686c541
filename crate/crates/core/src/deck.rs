//! k-decks: `N_{f,k}(x_1, ..., x_{k-1}) = sum_x f(x) f(x + x_1) ... f(x + x_{k-1})`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::cyclic::CyclicSet;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default cap on the number of deck entries, `2^31`.
pub const DEFAULT_BUDGET: u128 = 1 << 31;

/// An exact rational-valued function on Z_n: integer numerators over one
/// positive common denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFunction {
    values: Vec<BigInt>,
    denom: BigInt,
}

impl IntFunction {
    pub fn new(values: Vec<BigInt>, denom: BigInt) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::ZeroModulus);
        }
        if !denom.is_positive() {
            return Err(Error::InvalidParameter(format!("denominator {denom} must be positive")));
        }
        Ok(IntFunction { values, denom })
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(values: I) -> Result<Self> {
        Self::new(values.into_iter().map(BigInt::from).collect(), BigInt::one())
    }

    /// The indicator function of `E`.
    pub fn indicator(set: &CyclicSet) -> Self {
        let values = (0..set.n()).map(|j| BigInt::from(u8::from(set.contains(j)))).collect();
        IntFunction { values, denom: BigInt::one() }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.values
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_indicator(&self) -> bool {
        self.denom.is_one() && self.values.iter().all(|v| v.is_zero() || v.is_one())
    }

    pub fn value(&self, j: usize) -> BigRational {
        BigRational::new(self.values[j].clone(), self.denom.clone())
    }

    /// `x -> f(x - t)`.
    pub fn translate(&self, t: i64) -> Self {
        let n = self.n();
        let shift = t.rem_euclid(n as i64) as usize;
        let values = (0..n).map(|x| self.values[(x + n - shift) % n].clone()).collect();
        IntFunction { values, denom: self.denom.clone() }
    }

    /// The exact k-deck, as rationals.
    pub fn deck(&self, k: usize) -> Result<RationalDeck> {
        self.deck_with_budget(k, DEFAULT_BUDGET)
    }

    pub fn deck_with_budget(&self, k: usize, budget: u128) -> Result<RationalDeck> {
        let raw = correlation(&self.values, k, budget)?;
        let scale = num_traits::pow(self.denom.clone(), k);
        let values = raw
            .values
            .into_iter()
            .map(|v| BigRational::new(v, scale.clone()))
            .collect();
        Ok(Deck { n: raw.n, k, values })
    }
}

/// A k-deck: `n^(k-1)` values indexed by `(x_1, ..., x_{k-1})` in row-major
/// order (`x_1` most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct Deck<T> {
    pub n: usize,
    pub k: usize,
    pub values: Vec<T>,
}

pub type IntDeck = Deck<i64>;
pub type RationalDeck = Deck<BigRational>;
pub type FloatDeck = Deck<f64>;

impl<T: Scalar> Deck<T> {
    /// Row-major index of `(x_1, ..., x_{k-1})`, each reduced mod n.
    pub fn index(&self, xs: &[i64]) -> usize {
        assert_eq!(xs.len(), self.k - 1, "expected {} coordinates", self.k - 1);
        let n = self.n as i64;
        xs.iter().fold(0usize, |acc, &x| acc * self.n + x.rem_euclid(n) as usize)
    }

    pub fn get(&self, xs: &[i64]) -> &T {
        &self.values[self.index(xs)]
    }

    pub fn sum(&self) -> T {
        self.values.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    fn check_shape<U>(&self, other: &Deck<U>) -> Result<()> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::ShapeMismatch { n1: self.n, k1: self.k, n2: other.n, k2: other.k });
        }
        Ok(())
    }
}

impl FloatDeck {
    pub fn max_abs_diff(&self, other: &FloatDeck) -> Result<f64> {
        self.check_shape(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

/// Number of entries of a k-deck on Z_n.
pub fn deck_size(n: usize, k: usize) -> u128 {
    (n as u128).saturating_pow((k - 1) as u32)
}

/// Computes the k-deck of an arbitrary scalar function given by its values.
pub fn correlation<T: Scalar>(f: &[T], k: usize, budget: u128) -> Result<Deck<T>> {
    let n = f.len();
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    if k < 2 {
        return Err(Error::DeckOrder(k));
    }
    let size = deck_size(n, k);
    if size > budget {
        return Err(Error::BudgetExceeded { required: size, budget });
    }
    let support: Vec<usize> = (0..n).filter(|&x| !f[x].is_zero()).collect();
    let entry = |idx: usize| {
        let mut xs = vec![0usize; k - 1];
        let mut rest = idx;
        for slot in xs.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        let mut total = T::zero();
        for &x in &support {
            let mut term = f[x].clone();
            for &shift in &xs {
                let v = &f[(x + shift) % n];
                if v.is_zero() {
                    term = T::zero();
                    break;
                }
                term = term * v.clone();
            }
            total = total + term;
        }
        total
    };
    let size = size as usize;
    let values: Vec<T> = if size >= 4096 {
        (0..size).into_par_iter().map(entry).collect()
    } else {
        (0..size).map(entry).collect()
    };
    Ok(Deck { n, k, values })
}

/// The k-deck of an indicator function as machine integers.
pub fn set_deck(set: &CyclicSet, k: usize) -> Result<IntDeck> {
    let f: Vec<i64> = (0..set.n()).map(|j| i64::from(set.contains(j))).collect();
    correlation(&f, k, DEFAULT_BUDGET)
}

/// The 3-deck of a set via `N(x1, x2) = |E & (E - x1) & (E - x2)|`.
pub fn deck3_set(set: &CyclicSet) -> IntDeck {
    let n = set.n();
    if let Some(mask) = set.mask() {
        return Deck { n, k: 3, values: deck3_word(mask, n).into_iter().map(i64::from).collect() };
    }
    let shifted: Vec<CyclicSet> = (0..n).map(|x| set.rotate(-(x as i64))).collect();
    let mut values = Vec::with_capacity(n * n);
    for x1 in 0..n {
        let a: Vec<u64> =
            set.words().iter().zip(shifted[x1].words()).map(|(p, q)| p & q).collect();
        for s in &shifted {
            let c: u32 = a.iter().zip(s.words()).map(|(p, q)| (p & q).count_ones()).sum();
            values.push(i64::from(c));
        }
    }
    Deck { n, k: 3, values }
}

/// Single-word 3-deck kernel used by the classifier; entries fit in `u8` for n <= 64.
pub fn deck3_word(mask: u64, n: usize) -> Vec<u8> {
    let shifted: Vec<u64> =
        (0..n).map(|x| crate::cyclic::rotate_word(mask, (n - x) % n, n)).collect();
    let mut values = Vec::with_capacity(n * n);
    for &s1 in &shifted {
        let a = mask & s1;
        for &s2 in &shifted {
            values.push((a & s2).count_ones() as u8);
        }
    }
    values
}

/// Componentwise exact equality.
pub fn decks_equal<T: Scalar>(a: &Deck<T>, b: &Deck<T>) -> Result<bool> {
    a.check_shape(b)?;
    Ok(a.values == b.values)
}

/// SHA-256 of the canonical serialization `n;k;v0,v1,...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeckDigest(pub [u8; 32]);

impl DeckDigest {
    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }
}

impl fmt::Display for DeckDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for DeckDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DeckDigest({})", self.to_hex())
    }
}

pub fn deck_fingerprint<T: Scalar + fmt::Display>(deck: &Deck<T>) -> DeckDigest {
    let mut h = Sha256::new();
    h.update(format!("{};{};", deck.n, deck.k).as_bytes());
    for (i, v) in deck.values.iter().enumerate() {
        if i > 0 {
            h.update(b",");
        }
        h.update(v.to_string().as_bytes());
    }
    DeckDigest(h.finalize().into())
}

/// Fingerprint of a raw `u8` 3-deck table; agrees with [`deck_fingerprint`]
/// on the same values.
pub fn fingerprint_u8(n: usize, k: usize, values: &[u8]) -> DeckDigest {
    let mut h = Sha256::new();
    h.update(format!("{n};{k};").as_bytes());
    let mut buf = [0u8; 3];
    for (i, &v) in values.iter().enumerate() {
        if i > 0 {
            h.update(b",");
        }
        h.update(fmt_u8(v, &mut buf));
    }
    DeckDigest(h.finalize().into())
}

fn fmt_u8(v: u8, buf: &mut [u8; 3]) -> &[u8] {
    if v >= 100 {
        buf[0] = b'0' + v / 100;
        buf[1] = b'0' + v / 10 % 10;
        buf[2] = b'0' + v % 10;
        &buf[..3]
    } else if v >= 10 {
        buf[0] = b'0' + v / 10;
        buf[1] = b'0' + v % 10;
        &buf[..2]
    } else {
        buf[0] = b'0' + v;
        &buf[..1]
    }
}
