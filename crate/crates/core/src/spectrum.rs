//! Exact zero sets of Fourier transforms on Z_n.
//!
//! With the convention `f^(s) = sum_j f(j) zeta_n^(-js)`, the value at a
//! frequency `s` with `g = gcd(s, n)` and `d = n / g` is an integer
//! combination of d-th roots of unity. Folding `f` into a polynomial `C(x)`
//! of degree `< d`, `f^(s) = C(zeta_d)`, and this vanishes exactly when the
//! minimal polynomial `Phi_d` divides `C`. Floating point never decides a
//! zero; [`float_dft`] exists for cross-checks and the real-valued demos.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclic::{divisors, CyclicSet};
use crate::deck::IntFunction;
use crate::error::{Error, Result};
use crate::poly::{Cyclotomics, Polynomial};
use crate::scalar::{unit, ExactInt, Real};

/// Per-frequency verdicts for one function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    pub n: usize,
    /// Frequencies where the transform vanishes exactly.
    pub zero_mask: CyclicSet,
    /// Complement of `zero_mask`.
    pub full_support: CyclicSet,
    /// Divisors `a` with `<a>` inside the support.
    pub support_divisors: Vec<u64>,
}

impl SpectrumReport {
    pub fn support(&self) -> Vec<usize> {
        self.full_support.elements()
    }

    pub fn zero_frequencies(&self) -> Vec<usize> {
        self.zero_mask.elements()
    }

    pub fn has_zeros(&self) -> bool {
        !self.zero_mask.is_empty()
    }

    pub fn to_json_view(&self) -> SpectrumJson {
        SpectrumJson {
            n: self.n,
            support: self.support(),
            zero_frequencies: self.zero_frequencies(),
            support_divisors: self.support_divisors.clone(),
        }
    }
}

/// Wire form of a [`SpectrumReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumJson {
    pub n: usize,
    pub support: Vec<usize>,
    pub zero_frequencies: Vec<usize>,
    pub support_divisors: Vec<u64>,
}

/// Cached cyclotomic factors for repeated zero tests on one modulus.
#[derive(Debug, Clone)]
pub struct SpectrumContext {
    n: usize,
    divisors: Vec<u64>,
    cyclotomics: Cyclotomics,
}

impl SpectrumContext {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let divisors = divisors(n as u64);
        let mut cyclotomics = Cyclotomics::new();
        for &a in &divisors {
            let d = n / a as usize;
            cyclotomics.get(d);
            cyclotomics.get_i64(d);
        }
        SpectrumContext { n, divisors, cyclotomics }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Exact test of `f^(s) = 0` for integer values `f`.
    pub fn is_zero_i64(&mut self, f: &[i64], s: usize) -> bool {
        assert_eq!(f.len(), self.n);
        let (d, c) = fold(f, s, self.n);
        if let Some(phi) = self.cyclotomics.get_i64(d) {
            if let Some((_, r)) = Polynomial::new(c.clone()).div_rem_monic(phi) {
                return r.is_zero();
            }
        }
        let big: Vec<BigInt> = c.into_iter().map(BigInt::from).collect();
        let phi = self.cyclotomics.get(d);
        let (_, r) = Polynomial::new(big).div_rem_monic(phi).expect("big integers do not overflow");
        r.is_zero()
    }

    /// Exact test of `f^(s) = 0` for arbitrary-precision numerators (the
    /// common denominator does not affect vanishing).
    pub fn is_zero_big(&mut self, f: &[BigInt], s: usize) -> bool {
        assert_eq!(f.len(), self.n);
        if let Some(small) = f.iter().map(|v| v.to_i64()).collect::<Option<Vec<i64>>>() {
            // partial sums of |f| must fit for the machine fold to be exact
            let fits = small.iter().try_fold(0i64, |acc, v| acc.checked_add(v.checked_abs()?));
            if fits.is_some() {
                return self.is_zero_i64(&small, s);
            }
        }
        let (d, c) = fold(f, s, self.n);
        let phi = self.cyclotomics.get(d);
        let (_, r) = Polynomial::new(c).div_rem_monic(phi).expect("big integers do not overflow");
        r.is_zero()
    }

    /// Zero verdicts for every frequency; one exact test per gcd class.
    pub fn zero_set_i64(&mut self, f: &[i64]) -> SpectrumReport {
        let n = self.n;
        let divisors = self.divisors.clone();
        let verdicts: Vec<bool> = divisors
            .iter()
            .map(|&a| {
                let z = self.is_zero_i64(f, a as usize);
                let other = n - a as usize;
                if other != a as usize && other != 0 {
                    assert_eq!(z, self.is_zero_i64(f, other), "gcd class {a} is not constant");
                }
                z
            })
            .collect();
        build_report(n, &divisors, &verdicts)
    }

    pub fn zero_set_big(&mut self, f: &[BigInt]) -> SpectrumReport {
        let n = self.n;
        let divisors = self.divisors.clone();
        let verdicts: Vec<bool> = divisors
            .iter()
            .map(|&a| {
                let z = self.is_zero_big(f, a as usize);
                let other = n - a as usize;
                if other != a as usize && other != 0 {
                    assert_eq!(z, self.is_zero_big(f, other), "gcd class {a} is not constant");
                }
                z
            })
            .collect();
        build_report(n, &divisors, &verdicts)
    }

    /// Zero verdicts for an indicator function.
    pub fn zero_set_set(&mut self, set: &CyclicSet) -> SpectrumReport {
        self.zero_set_i64(&indicator_values(set))
    }
}

fn build_report(n: usize, divisors: &[u64], zero: &[bool]) -> SpectrumReport {
    let mut zero_mask = CyclicSet::empty(n);
    let mut support_divisors = Vec::new();
    for s in 0..n {
        let g = (s as u64).gcd(&(n as u64));
        let idx = divisors.binary_search(&g).expect("gcd divides n");
        if zero[idx] {
            zero_mask.insert(s);
        }
    }
    for (&a, &z) in divisors.iter().zip(zero) {
        if !z {
            support_divisors.push(a);
        }
    }
    let full_support = zero_mask.complement();
    SpectrumReport { n, zero_mask, full_support, support_divisors }
}

/// `C(x) = sum_j f(j) x^(((n - js mod n) / g) mod d)`, with `g = gcd(s, n)`.
fn fold<T: ExactInt>(f: &[T], s: usize, n: usize) -> (usize, Vec<T>) {
    let g = s.gcd(&n);
    let d = n / g;
    let mut c = vec![T::zero(); d];
    for (j, v) in f.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let js = (j * s) % n;
        let e = ((n - js) / g) % d;
        c[e] = c[e].clone() + v.clone();
    }
    (d, c)
}

pub fn indicator_values(set: &CyclicSet) -> Vec<i64> {
    (0..set.n()).map(|j| i64::from(set.contains(j))).collect()
}

/// Whether `f^(s)` vanishes as an algebraic number.
pub fn ft_is_zero(f: &IntFunction, s: usize) -> bool {
    let n = f.n();
    SpectrumContext::new(n).is_zero_big(f.numerators(), s % n)
}

/// Exact spectrum report of `f`.
pub fn zero_set(f: &IntFunction) -> SpectrumReport {
    SpectrumContext::new(f.n()).zero_set_big(f.numerators())
}

/// Exact spectrum report of the indicator of `E`.
pub fn set_zero_set(set: &CyclicSet) -> SpectrumReport {
    SpectrumContext::new(set.n()).zero_set_set(set)
}

/// `f(x + a) = f(x)` for all x.
pub fn is_periodic(f: &IntFunction, a: u64) -> Result<bool> {
    let n = f.n();
    if a == 0 || !(n as u64).is_multiple_of(a) {
        return Err(Error::NotADivisor { a, n: n as u64 });
    }
    let v = f.numerators();
    Ok((0..n).all(|x| v[(x + a as usize) % n] == v[x]))
}

/// Longest cyclic run of consecutive residues avoiding `A`; `n` when `A` is empty.
pub fn gap(set: &CyclicSet) -> usize {
    let n = set.n();
    let Some(start) = set.iter().next() else {
        return n;
    };
    let mut best = 0;
    let mut run = 0;
    // walk once around the circle starting just after a member
    for step in 1..=n {
        let j = (start + step) % n;
        if set.contains(j) {
            run = 0;
        } else {
            run += 1;
            best = best.max(run);
        }
    }
    best
}

/// `A_x = {k in Z_n : gcd(k, n) <= x}`.
pub fn a_x(n: usize, x: u64) -> CyclicSet {
    let mut set = CyclicSet::empty(n);
    for k in 0..n {
        if (k as u64).gcd(&(n as u64)) <= x {
            set.insert(k);
        }
    }
    set
}

/// Complex DFT `F(k) = sum_j f(j) exp(-2 pi i jk / n)`.
pub fn float_dft<T: Real>(f: &[T]) -> Vec<Complex<T>> {
    let n = f.len();
    let tau = T::TAU();
    let nf = T::from(n).expect("n fits the float type");
    (0..n)
        .map(|k| {
            f.iter().enumerate().fold(Complex::zero(), |acc, (j, &v)| {
                let r = T::from((j * k) % n).unwrap();
                acc + unit(-tau * r / nf) * v
            })
        })
        .collect()
}

/// Inverse DFT `g(j) = (1/n) sum_l G(l) exp(2 pi i jl / n)`.
pub fn float_idft<T: Real>(g: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = g.len();
    let tau = T::TAU();
    let nf = T::from(n).expect("n fits the float type");
    (0..n)
        .map(|j| {
            let s = g.iter().enumerate().fold(Complex::zero(), |acc, (l, &v)| {
                let r = T::from((j * l) % n).unwrap();
                acc + v * unit(tau * r / nf)
            });
            s / nf
        })
        .collect()
}
