//! Explicit pairs of non-translate sets sharing a deck, and real-valued
//! functions sharing a 3-deck with a different function.

use num_complex::Complex;
use num_integer::Integer;
use serde::Serialize;

use crate::cyclic::CyclicSet;
use crate::deck::{correlation, deck3_set, decks_equal, set_deck, Deck, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::scalar::{unit, Real};
use crate::spectrum::{float_dft, float_idft};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairKind {
    #[serde(rename = "even-2k")]
    Even2k,
    #[serde(rename = "pqrd")]
    Pqrd,
    #[serde(rename = "two-deck")]
    TwoDeck,
}

impl PairKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PairKind::Even2k => "even-2k",
            PairKind::Pqrd => "pqrd",
            PairKind::TwoDeck => "two-deck",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub decks_equal_at_2: bool,
    pub decks_equal_at_3: bool,
    pub translates: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexamplePair {
    pub n: usize,
    pub e: CyclicSet,
    pub f: CyclicSet,
    pub kind: PairKind,
    pub verified: Verification,
}

impl CounterexamplePair {
    fn new(e: CyclicSet, f: CyclicSet, kind: PairKind) -> Self {
        let verified = verify(&e, &f);
        CounterexamplePair { n: e.n(), e, f, kind, verified }
    }

    /// Whether the pair exhibits what its construction promises: a shared
    /// 3-deck (2-deck for the two-deck kind) without being translates.
    pub fn holds(&self) -> bool {
        let shared = match self.kind {
            PairKind::TwoDeck => self.verified.decks_equal_at_2,
            _ => self.verified.decks_equal_at_3,
        };
        shared && !self.verified.translates && self.e.len() == self.f.len()
    }
}

/// Exact deck comparison at orders 2 and 3 plus a translation search.
pub fn verify(e: &CyclicSet, f: &CyclicSet) -> Verification {
    let two = decks_equal(&set_deck(e, 2).unwrap(), &set_deck(f, 2).unwrap()).unwrap();
    let three = decks_equal(&deck3_set(e), &deck3_set(f)).unwrap();
    let translates = e.translation_equivalent(f).unwrap().is_some();
    Verification { decks_equal_at_2: two, decks_equal_at_3: three, translates }
}

/// The pair on Z_{2k}: `E = {0} + {3..k-1} + {k+1, k+2}` and
/// `F = {0, 1} + {3..k-1} + {k+2}`.
pub fn even_pair(k: usize) -> Result<CounterexamplePair> {
    if k < 6 {
        return Err(Error::InvalidParameter(format!("k must be at least 6, got {k}")));
    }
    let n = 2 * k;
    let middle = (3..k).map(|x| x as i64);
    let e = CyclicSet::from_elements(n, middle.clone().chain([0, k as i64 + 1, k as i64 + 2]));
    let f = CyclicSet::from_elements(n, middle.chain([0, 1, k as i64 + 2]));
    Ok(CounterexamplePair::new(e, f, PairKind::Even2k))
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|q| q * q <= p).all(|q| !p.is_multiple_of(q))
}

/// The pair on Z_{pqrd}: `E = A + (B + 1)`, `F = A + (B + d + 1)` with
/// `A = {l n/q + jd}`, `B = {l n/p + jd}`, `j < r`.
pub fn pqrd_pair(p: usize, q: usize, r: usize, d: usize) -> Result<CounterexamplePair> {
    if !is_prime(p) || !is_prime(q) || p == q {
        return Err(Error::InvalidParameter(format!("p={p} and q={q} must be distinct primes")));
    }
    if r < 2 || d < 2 {
        return Err(Error::InvalidParameter(format!("r={r} and d={d} must both exceed 1")));
    }
    let n = p * q * r * d;
    let block = |m: usize, step: usize| -> Vec<usize> {
        (0..m).flat_map(|l| (0..r).map(move |j| l * step + j * d)).collect()
    };
    let a_list = block(q, n / q);
    let b_list = block(p, n / p);
    let a = CyclicSet::from_elements(n, a_list.iter().map(|&x| x as i64));
    let b1 = CyclicSet::from_elements(n, b_list.iter().map(|&x| x as i64 + 1));
    let bd1 = CyclicSet::from_elements(n, b_list.iter().map(|&x| (x + d + 1) as i64));
    if a.len() != q * r || b1.len() != p * r || bd1.len() != p * r {
        return Err(Error::Degenerate("translate blocks collide".into()));
    }
    if !a.intersection(&b1).is_empty() || !a.intersection(&bd1).is_empty() {
        return Err(Error::Degenerate("A meets a shifted copy of B".into()));
    }
    Ok(CounterexamplePair::new(a.union(&b1), a.union(&bd1), PairKind::Pqrd))
}

/// `E = A + B` and `F = A - B`, which share their 2-deck whenever both are
/// sets of full size.
pub fn two_deck_pair(a: &CyclicSet, b: &CyclicSet) -> Result<CounterexamplePair> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::ModulusMismatch(n, b.n()));
    }
    let sums = CyclicSet::from_elements(
        n,
        a.iter().flat_map(|x| b.iter().map(move |y| (x + y) as i64)),
    );
    let diffs = CyclicSet::from_elements(
        n,
        a.iter().flat_map(|x| b.iter().map(move |y| x as i64 - y as i64)),
    );
    let full = a.len() * b.len();
    if sums.len() != full || diffs.len() != full {
        return Err(Error::Degenerate("A + B or A - B has repeated elements".into()));
    }
    if b.translation_equivalent(&b.reflect())?.is_some() {
        return Err(Error::Degenerate("-B is a translate of B".into()));
    }
    Ok(CounterexamplePair::new(sums, diffs, PairKind::TwoDeck))
}

/// `f = 0` and `g(k) = cos(2 pi k / n)`.
pub fn cosine_pair<T: Real>(n: usize) -> Result<(Vec<T>, Vec<T>)> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("n must be at least 4, got {n}")));
    }
    let nf = T::from(n).unwrap();
    let g = (0..n).map(|k| (T::TAU() * T::from(k).unwrap() / nf).cos()).collect();
    Ok((vec![T::zero(); n], g))
}

/// Inverse DFT of `exp(2 pi i h(l)) chi_E^(l)` for `E = {1..n/2}`, where `h`
/// is `alpha` at 1, `-alpha` at `n - 1` and 0 elsewhere.
pub fn g_alpha<T: Real>(n: usize, alpha: T) -> Result<Vec<T>> {
    if n.is_odd() || n <= 2 {
        return Err(Error::InvalidParameter(format!("n must be even and above 2, got {n}")));
    }
    let chi: Vec<T> = (0..n).map(|j| if (1..=n / 2).contains(&j) { T::one() } else { T::zero() }).collect();
    let mut coeffs = float_dft(&chi);
    let tau = T::TAU();
    coeffs[1] = coeffs[1] * unit(tau * alpha);
    coeffs[n - 1] = coeffs[n - 1] * unit(-tau * alpha);
    let g: Vec<Complex<T>> = float_idft(&coeffs);
    let tol = T::from(1e-9).unwrap();
    if let Some(bad) = g.iter().find(|z| z.im.abs() > tol) {
        return Err(Error::Degenerate(format!(
            "inverse transform is not real (imaginary part {:?})",
            bad.im
        )));
    }
    Ok(g.into_iter().map(|z| z.re).collect())
}

/// Floating-point k-deck of a real vector.
pub fn float_deck<T: Real>(f: &[T], k: usize) -> Result<Deck<T>> {
    correlation(f, k, DEFAULT_BUDGET)
}

/// Largest entrywise difference between two float decks of equal shape.
pub fn float_deck_distance<T: Real>(a: &Deck<T>, b: &Deck<T>) -> Result<T> {
    if a.n != b.n || a.k != b.k {
        return Err(Error::ShapeMismatch { n1: a.n, k1: a.k, n2: b.n, k2: b.k });
    }
    Ok(a.values.iter().zip(&b.values).map(|(x, y)| (*x - *y).abs()).fold(T::zero(), T::max))
}
