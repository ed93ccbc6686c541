//! Extendable domains: subsets `A` of Z_n on which every additive function
//! into R/Z agrees with `k -> Lk mod 1` for a single real `L`.
//!
//! The additive functions form `S = {h : Mh = 0 mod 1}` for the integer
//! constraint matrix `M`, and the linear ones form the closed subgroup
//! `Lambda = {(t k mod 1)_k}` spanned by `v = (k)_{k in A}` with `k` taken in
//! `[0, n)`. `S` lies inside `Lambda` exactly when the annihilator of
//! `Lambda`, the integer kernel of `v`, lies in the row lattice of `M`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclic::CyclicSet;
use crate::error::{Error, Result};
use crate::lattice::{in_row_lattice, integer_kernel, row_basis, smith_normal_form, IntMatrix, Matrix};

/// Rows `e_x + e_y - e_s` for `x <= y` in `A` with `s = x + y mod n` in `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveConstraintSystem {
    pub n: usize,
    /// Elements of `A` in increasing order; column `i` belongs to `support[i]`.
    pub support: Vec<usize>,
    pub rows: Vec<Vec<i64>>,
}

impl AdditiveConstraintSystem {
    /// Column of element `x`, if `x` lies in `A`.
    pub fn column(&self, x: usize) -> Option<usize> {
        self.support.binary_search(&x).ok()
    }

    /// Whether `h` (indexed like `support`) satisfies every row modulo 1.
    pub fn is_additive(&self, h: &[BigRational]) -> bool {
        assert_eq!(h.len(), self.support.len());
        self.rows.iter().all(|row| {
            let s: BigRational = row
                .iter()
                .zip(h)
                .filter(|(c, _)| **c != 0)
                .map(|(c, x)| x * BigInt::from(*c))
                .sum();
            s.is_integer()
        })
    }
}

pub fn build_constraints(a: &CyclicSet) -> AdditiveConstraintSystem {
    let n = a.n();
    let support = a.elements();
    let col: BTreeMap<usize, usize> = support.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut rows = Vec::new();
    for (i, &x) in support.iter().enumerate() {
        for (j, &y) in support.iter().enumerate().skip(i) {
            let Some(&k) = col.get(&((x + y) % n)) else {
                continue;
            };
            let mut row = vec![0i64; support.len()];
            row[i] += 1;
            row[j] += 1;
            row[k] -= 1;
            rows.push(row);
        }
    }
    AdditiveConstraintSystem { n, support, rows }
}

/// An additive function on `A` that is not linear, as `values / denominator`
/// with every numerator in `[0, denominator)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub support: Vec<usize>,
    pub denominator: BigInt,
    pub values: Vec<BigInt>,
}

impl Witness {
    fn from_rationals(support: Vec<usize>, h: &[BigRational]) -> Self {
        let denominator = h.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let values = h
            .iter()
            .map(|x| (x.numer() * (&denominator / x.denom())).mod_floor(&denominator))
            .collect();
        Witness { support, denominator, values }
    }

    pub fn as_rationals(&self) -> Vec<BigRational> {
        self.values
            .iter()
            .map(|v| BigRational::new(v.clone(), self.denominator.clone()))
            .collect()
    }

    /// Value at the group element `x`, if `x` lies in the support.
    pub fn value_at(&self, x: usize) -> Option<BigRational> {
        let i = self.support.binary_search(&x).ok()?;
        Some(BigRational::new(self.values[i].clone(), self.denominator.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendabilityVerdict {
    pub extendable: bool,
    /// Present iff not extendable.
    pub witness: Option<Witness>,
    /// Present iff extendable: one slope in `[0, 1)` per torsion generator
    /// of the additive functions, each with `h(k) = Lk mod 1`.
    pub slope_certificate: Option<Vec<BigRational>>,
}

/// Decides whether `A` is an extendable domain.
pub fn is_extendable(a: &CyclicSet) -> Result<ExtendabilityVerdict> {
    if a.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let sys = build_constraints(a);
    let m = sys.support.len();
    let basis = row_basis(&sys.rows, m);
    let lattice: IntMatrix =
        if basis.is_empty() { Matrix::zeros(1, m) } else { Matrix::from_rows(&basis, m) };
    let snf = smith_normal_form(&lattice);
    let v: Vec<BigInt> = sys.support.iter().map(|&k| BigInt::from(k)).collect();
    let kernel = integer_kernel(&v);

    // generators of S: columns of Q scaled by 1/d_i (torsion), and t times
    // the remaining columns (torus directions)
    let torsion: Vec<Vec<BigRational>> = (0..snf.rank)
        .filter(|&i| !snf.d[(i, i)].is_one())
        .map(|i| {
            let d = &snf.d[(i, i)];
            snf.q.column(i).into_iter().map(|x| BigRational::new(x, d.clone())).collect()
        })
        .collect();

    if kernel.iter().all(|w| in_row_lattice(&snf, w)) {
        let slopes = torsion
            .iter()
            .map(|h| fit_slope(&v, h).expect("extendable domain has linear torsion generators"))
            .collect();
        return Ok(ExtendabilityVerdict { extendable: true, witness: None, slope_certificate: Some(slopes) });
    }

    let outside = |h: &[BigRational]| {
        kernel.iter().any(|w| {
            let s: BigRational = w.iter().zip(h).map(|(a, b)| b * a).sum();
            !s.is_integer()
        })
    };
    let mut found = torsion.into_iter().find(|h| outside(h));
    if found.is_none() {
        for i in snf.rank..m {
            let dir = snf.q.column(i);
            let Some(c) = kernel
                .iter()
                .map(|w| w.iter().zip(&dir).map(|(a, b)| a * b).sum::<BigInt>())
                .find(|c| !c.is_zero())
            else {
                continue;
            };
            let p = smallest_prime_not_dividing(&c);
            found = Some(dir.into_iter().map(|x| BigRational::new(x, p.clone())).collect());
            break;
        }
    }
    let h = found.expect("a generator of S lies outside Lambda when S is not contained in it");
    debug_assert!(sys.is_additive(&h));
    Ok(ExtendabilityVerdict {
        extendable: false,
        witness: Some(Witness::from_rationals(sys.support, &h)),
        slope_certificate: None,
    })
}

fn smallest_prime_not_dividing(c: &BigInt) -> BigInt {
    let mut p = 2u64;
    loop {
        if (2..p).take_while(|q| q * q <= p).all(|q| !p.is_multiple_of(q)) && !c.is_multiple_of(&BigInt::from(p)) {
            return BigInt::from(p);
        }
        p += 1;
    }
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Slope `t` in `[0, 1)` with `t v_k = h_k mod 1` for all k, via a Bezout
/// combination of the entries of `v`.
fn fit_slope(v: &[BigInt], h: &[BigRational]) -> Option<BigRational> {
    // c . v = g with g = gcd(v)
    let mut g = BigInt::zero();
    let mut c: Vec<BigInt> = vec![BigInt::zero(); v.len()];
    for (i, x) in v.iter().enumerate() {
        let e = g.extended_gcd(x);
        for ci in c.iter_mut().take(i) {
            *ci *= &e.x;
        }
        c[i] = e.y;
        g = e.gcd;
    }
    let fits = |t: &BigRational| {
        v.iter().zip(h).all(|(k, hk)| (t * k - hk).is_integer())
    };
    if g.is_zero() {
        let zero = BigRational::zero();
        return fits(&zero).then_some(zero);
    }
    let s: BigRational = c.iter().zip(h).map(|(ci, hi)| hi * ci).sum();
    let g_abs = g.abs();
    let mut z = BigInt::zero();
    while z < g_abs {
        let t = frac(&((&s + BigRational::from(z.clone())) / BigRational::from(g.clone())));
        if fits(&t) {
            return Some(t);
        }
        z += 1;
    }
    None
}

/// Brute-force linearity test: with `k0` the smallest nonzero element of `A`,
/// tries `t = (h(k0) + z) / k0` for `z = 0..k0`. `h` is indexed by the
/// elements of `A` in increasing order.
pub fn linearity_check(a: &CyclicSet, h: &[BigRational]) -> Result<Option<BigRational>> {
    let support = a.elements();
    if h.len() != support.len() {
        return Err(Error::InvalidParameter(format!(
            "{} values for a domain of {} elements",
            h.len(),
            support.len()
        )));
    }
    let Some(i0) = support.iter().position(|&k| k != 0) else {
        return Err(Error::NoNonzeroElement);
    };
    let k0 = support[i0];
    let base = frac(&h[i0]);
    for z in 0..k0 {
        let t = (&base + BigRational::from(BigInt::from(z))) / BigRational::from(BigInt::from(k0));
        let fits = support
            .iter()
            .zip(h)
            .all(|(&k, hk)| (&t * BigRational::from(BigInt::from(k)) - hk).is_integer());
        if fits {
            return Ok(Some(t));
        }
    }
    Ok(None)
}
