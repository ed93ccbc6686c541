//! Arithmetic on Z_n: divisors, gcd classes, and subsets stored as bitmasks.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization by trial division, sorted by prime.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithProfile {
    pub totient: u64,
    pub num_divisors: u64,
    pub factorization: Vec<(u64, u32)>,
}

/// Euler totient, divisor count, and factorization of `n`.
pub fn arith_profile(n: u64) -> ArithProfile {
    assert!(n >= 1);
    let factorization = factorize(n);
    let mut totient = n;
    let mut num_divisors = 1;
    for &(p, e) in &factorization {
        totient = totient / p * (p - 1);
        num_divisors *= u64::from(e) + 1;
    }
    ArithProfile { totient, num_divisors, factorization }
}

pub fn totient(n: u64) -> u64 {
    arith_profile(n).totient
}

fn check_divisor(n: u64, a: u64) -> Result<()> {
    if a == 0 || !n.is_multiple_of(a) {
        Err(Error::NotADivisor { a, n })
    } else {
        Ok(())
    }
}

/// The gcd class `<a> = {k in Z_n : gcd(k, n) = a}`.
pub fn gcd_class(n: u64, a: u64) -> Result<CyclicSet> {
    check_divisor(n, a)?;
    let mut set = CyclicSet::empty(n as usize);
    for k in 0..n {
        if k.gcd(&n) == a {
            set.insert(k as usize);
        }
    }
    Ok(set)
}

/// The subgroup `aZ_n = {0, a, 2a, ...}`.
pub fn subgroup(n: u64, a: u64) -> Result<CyclicSet> {
    check_divisor(n, a)?;
    let mut set = CyclicSet::empty(n as usize);
    for k in (0..n).step_by(a as usize) {
        set.insert(k as usize);
    }
    Ok(set)
}

/// Gcd classes and subgroups for every divisor of `n`.
#[derive(Debug, Clone)]
pub struct GcdClassTable {
    pub n: u64,
    pub divisors: Vec<u64>,
    pub classes: Vec<CyclicSet>,
    pub subgroups: Vec<CyclicSet>,
}

impl GcdClassTable {
    pub fn new(n: u64) -> Self {
        let divisors = divisors(n);
        let mut classes: Vec<CyclicSet> =
            divisors.iter().map(|_| CyclicSet::empty(n as usize)).collect();
        for k in 0..n {
            let g = k.gcd(&n);
            let idx = divisors.binary_search(&g).expect("gcd divides n");
            classes[idx].insert(k as usize);
        }
        let subgroups = divisors.iter().map(|&a| subgroup(n, a).unwrap()).collect();
        GcdClassTable { n, divisors, classes, subgroups }
    }

    pub fn class(&self, a: u64) -> Option<&CyclicSet> {
        self.divisors.binary_search(&a).ok().map(|i| &self.classes[i])
    }

    pub fn subgroup(&self, a: u64) -> Option<&CyclicSet> {
        self.divisors.binary_search(&a).ok().map(|i| &self.subgroups[i])
    }
}

/// Splits `k = a + b` with `gcd(a, n) = gcd(b, n) = 1` for odd `n`.
///
/// Per prime `p | n` the residues are `(2, -1)` when `k = 1 (mod p)` and
/// `(1, k - 1)` otherwise, glued by CRT; `b` is then `k - a`.
pub fn coprime_decomposition(n: u64, k: i64) -> Result<(i64, i64)> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    if n.is_multiple_of(2) {
        return Err(Error::EvenModulus(n));
    }
    let mut a: i128 = 0;
    let mut modulus: i128 = 1;
    for (p, _) in factorize(n) {
        let p = p as i128;
        let target = if (k as i128).rem_euclid(p) == 1 { 2 } else { 1 };
        // lift a (mod modulus) to a' (mod modulus * p) with a' = target (mod p)
        let inv = mod_inverse(modulus.rem_euclid(p), p);
        let t = ((target - a).rem_euclid(p) * inv).rem_euclid(p);
        a += modulus * t;
        modulus *= p;
    }
    let a = a as i64;
    Ok((a, k - a))
}

fn mod_inverse(x: i128, p: i128) -> i128 {
    let e = x.extended_gcd(&p);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(p)
}

/// A subset of Z_n held as a little-endian bitmask (bit j set iff j in E).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicSet {
    n: usize,
    words: Vec<u64>,
}

impl CyclicSet {
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "Z_0 is not a cyclic group");
        CyclicSet { n, words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for j in 0..n {
            s.insert(j);
        }
        s
    }

    /// Builds a set from arbitrary integers, reduced mod `n`.
    pub fn from_elements<I>(n: usize, elements: I) -> Self
    where
        I: IntoIterator<Item = i64>,
    {
        let mut s = Self::empty(n);
        for e in elements {
            s.insert(e.rem_euclid(n as i64) as usize);
        }
        s
    }

    /// Builds a set from a single-word mask; bits at positions `>= n` are rejected.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n < 64 && mask >> n != 0 {
            return Err(Error::Parse(format!("mask {mask:#x} has bits beyond n = {n}")));
        }
        let mut s = Self::empty(n);
        s.words[0] = mask;
        Ok(s)
    }

    /// Parses a hex mask of any width, with or without a `0x` prefix.
    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        let digits = hex.trim().trim_start_matches("0x").trim_start_matches("0X");
        if digits.is_empty() {
            return Err(Error::Parse("empty hex mask".into()));
        }
        let mut s = Self::empty(n);
        for (pos, c) in digits.chars().rev().enumerate() {
            let v = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("bad hex digit {c:?}")))?;
            for b in 0..4 {
                if v >> b & 1 == 1 {
                    let j = pos * 4 + b;
                    if j >= n {
                        return Err(Error::Parse(format!(
                            "mask {hex} has bits beyond n = {n}"
                        )));
                    }
                    s.insert(j);
                }
            }
        }
        Ok(s)
    }

    /// Parses a comma-separated residue list such as `0,3,4,5,7,8`.
    pub fn parse_list(n: usize, text: &str) -> Result<Self> {
        let mut s = Self::empty(n);
        let text = text.trim();
        if text.is_empty() {
            return Ok(s);
        }
        for part in text.split(',') {
            let v: i64 = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad residue {part:?}")))?;
            s.insert(v.rem_euclid(n as i64) as usize);
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The mask as one machine word, when `n <= 64`.
    pub fn mask(&self) -> Option<u64> {
        (self.n <= 64).then(|| self.words[0])
    }

    pub fn to_hex(&self) -> String {
        let mut out = String::new();
        for w in self.words.iter().rev() {
            if out.is_empty() {
                if *w != 0 {
                    out = format!("{w:x}");
                }
            } else {
                out.push_str(&format!("{w:016x}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        format!("0x{out}")
    }

    #[inline]
    pub fn contains(&self, j: usize) -> bool {
        j < self.n && self.words[j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, j: usize) {
        assert!(j < self.n, "{j} is not a residue mod {}", self.n);
        self.words[j / 64] |= 1 << (j % 64);
    }

    pub fn remove(&mut self, j: usize) {
        if j < self.n {
            self.words[j / 64] &= !(1 << (j % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.contains(j))
    }

    pub fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        CyclicSet { n: self.n, words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        CyclicSet { n: self.n, words }
    }

    pub fn complement(&self) -> Self {
        let mut out = Self::empty(self.n);
        for j in 0..self.n {
            if !self.contains(j) {
                out.insert(j);
            }
        }
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.n == other.n && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// `E + t`.
    pub fn rotate(&self, t: i64) -> Self {
        let n = self.n as i64;
        let shift = t.rem_euclid(n) as usize;
        if shift == 0 {
            return self.clone();
        }
        if let Some(m) = self.mask() {
            return CyclicSet { n: self.n, words: vec![rotate_word(m, shift, self.n)] };
        }
        let mut out = Self::empty(self.n);
        for j in self.iter() {
            out.insert((j + shift) % self.n);
        }
        out
    }

    /// `-E`.
    pub fn reflect(&self) -> Self {
        let mut out = Self::empty(self.n);
        for j in self.iter() {
            out.insert((self.n - j) % self.n);
        }
        out
    }

    /// Compares masks read as unsigned integers with bit j weighted 2^j.
    fn cmp_mask(&self, other: &Self) -> Ordering {
        self.words.iter().rev().cmp(other.words.iter().rev())
    }

    /// The rotation of `E` with the smallest mask.
    pub fn canonical_rotation(&self) -> Self {
        if let Some(m) = self.mask() {
            let c = canonical_word(m, self.n);
            return CyclicSet { n: self.n, words: vec![c] };
        }
        let mut best = self.clone();
        for t in 1..self.n {
            let r = self.rotate(t as i64);
            if r.cmp_mask(&best) == Ordering::Less {
                best = r;
            }
        }
        best
    }

    /// Some `t` with `other = self + t`, if one exists.
    pub fn translation_equivalent(&self, other: &Self) -> Result<Option<usize>> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch(self.n, other.n));
        }
        if self.len() != other.len() {
            return Ok(None);
        }
        Ok((0..self.n).find(|&t| self.rotate(t as i64) == *other))
    }

    /// Smallest `t >= 1` with `E + t = E`.
    pub fn period(&self) -> usize {
        divisors(self.n as u64)
            .into_iter()
            .map(|d| d as usize)
            .find(|&d| self.rotate(d as i64) == *self)
            .unwrap_or(self.n)
    }
}

/// Cyclic left rotation of the low `n` bits of `m` by `shift`.
#[inline]
pub fn rotate_word(m: u64, shift: usize, n: usize) -> u64 {
    if shift == 0 || n == 0 {
        return m;
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    ((m << shift) | (m >> (n - shift))) & full
}

/// Minimum over all rotations of the `n`-bit word `m`.
#[inline]
pub fn canonical_word(m: u64, n: usize) -> u64 {
    let mut best = m;
    let mut r = m;
    for _ in 1..n {
        r = rotate_word(r, 1, n);
        best = best.min(r);
    }
    best
}

impl PartialOrd for CyclicSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclicSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.cmp_mask(other))
    }
}

impl fmt::Display for CyclicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, j) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "}} in Z_{}", self.n)
    }
}

impl fmt::Debug for CyclicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
