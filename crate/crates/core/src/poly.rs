//! Dense integer polynomials and cyclotomic polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::cyclic::divisors;
use crate::scalar::ExactInt;

/// Coefficient vector, index = exponent. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: ExactInt> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    /// `x^d - 1`.
    pub fn x_pow_minus_one(d: usize) -> Self {
        let mut coeffs = vec![T::zero(); d + 1];
        coeffs[0] = -T::one();
        coeffs[d] = T::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder by a monic divisor, or `None` on machine
    /// overflow.
    pub fn div_rem_monic(&self, divisor: &Self) -> Option<(Self, Self)> {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let lead = rem[top].clone();
            if lead.is_zero() {
                continue;
            }
            quot[top - dd] = lead.clone();
            let neg = -lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let slot = top - dd + i;
                rem[slot] = rem[slot].checked_mul_add(&neg, c)?;
            }
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient by a monic divisor; `None` if the division leaves a
    /// remainder or overflows.
    pub fn exact_div_monic(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_monic(divisor)?;
        r.is_zero().then_some(q)
    }

    pub fn to_big(&self) -> Polynomial<BigInt> {
        Polynomial { coeffs: self.coeffs.iter().map(ExactInt::to_big).collect() }
    }
}

impl Polynomial<BigInt> {
    /// Converts to machine integers when every coefficient fits.
    pub fn to_i64(&self) -> Option<Polynomial<i64>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| i64::try_from(c).ok())
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial { coeffs })
    }
}

impl<T: ExactInt + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{e}")?,
                (_, false) => write!(f, "{mag}x^{e}")?,
            }
        }
        Ok(())
    }
}

impl<T: ExactInt + fmt::Display> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Memoized cyclotomic polynomials.
#[derive(Debug, Clone, Default)]
pub struct Cyclotomics {
    big: BTreeMap<usize, Polynomial<BigInt>>,
    small: BTreeMap<usize, Option<Polynomial<i64>>>,
}

impl Cyclotomics {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Phi_d`, obtained by dividing `x^d - 1` by `Phi_e` for every proper
    /// divisor `e` of `d`.
    pub fn get(&mut self, d: usize) -> &Polynomial<BigInt> {
        assert!(d >= 1, "Phi_0 is undefined");
        if !self.big.contains_key(&d) {
            let mut p = Polynomial::<BigInt>::x_pow_minus_one(d);
            for e in divisors(d as u64) {
                let e = e as usize;
                if e == d {
                    break;
                }
                let phi_e = self.get(e).clone();
                p = p.exact_div_monic(&phi_e).expect("Phi_e divides x^d - 1");
            }
            self.big.insert(d, p);
        }
        &self.big[&d]
    }

    /// `Phi_d` with machine coefficients, when they fit.
    pub fn get_i64(&mut self, d: usize) -> Option<&Polynomial<i64>> {
        if !self.small.contains_key(&d) {
            let p = self.get(d).to_i64();
            self.small.insert(d, p);
        }
        self.small[&d].as_ref()
    }
}

/// The d-th cyclotomic polynomial.
pub fn cyclotomic(d: usize) -> Polynomial<BigInt> {
    Cyclotomics::new().get(d).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::totient;

    fn p(c: &[i64]) -> Polynomial<BigInt> {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        // x^6 - 1 = Phi1 Phi2 Phi3 Phi6 with Phi3 = x^2 + x + 1
        let oracle = p(&[-1, 0, 0, 0, 0, 0, 1])
            .exact_div_monic(&p(&[-1, 1]))
            .and_then(|q| q.exact_div_monic(&p(&[1, 1])))
            .and_then(|q| q.exact_div_monic(&p(&[1, 1, 1])))
            .unwrap();
        assert_eq!(oracle, p(&[1, -1, 1]));
        assert_eq!(cyclotomic(6), oracle);
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(12).to_string(), "x^4 - x^2 + 1");
        // first coefficient of magnitude 2
        assert!(cyclotomic(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn product_over_divisors_is_x_n_minus_one() {
        let mut table = Cyclotomics::new();
        for n in 1..=300usize {
            let mut prod = p(&[1]);
            for d in divisors(n as u64) {
                let phi = table.get(d as usize).clone();
                assert_eq!(phi.degree(), Some(totient(d) as usize));
                prod = prod.mul(&phi);
            }
            assert_eq!(prod, Polynomial::x_pow_minus_one(n), "n = {n}");
        }
    }

    #[test]
    fn division_with_remainder() {
        let a = Polynomial::<i64>::from_i64s(&[1, 2, 3, 4]);
        let b = Polynomial::<i64>::from_i64s(&[1, 1]);
        let (q, r) = a.div_rem_monic(&b).unwrap();
        assert_eq!(q, Polynomial::from_i64s(&[3, -1, 4]));
        assert_eq!(r, Polynomial::from_i64s(&[-2]));
        assert_eq!(q.mul(&b).coeffs().len(), 4);
    }

    #[test]
    fn overflow_is_reported() {
        let a = Polynomial::<i64>::from_i64s(&[0, 0, i64::MAX, i64::MAX]);
        let b = Polynomial::<i64>::from_i64s(&[i64::MAX, 1]);
        assert!(a.div_rem_monic(&b).is_none());
        assert!(a.to_big().div_rem_monic(&b.to_big()).is_some());
    }
}
