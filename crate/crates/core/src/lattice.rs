//! Integer lattices: Smith normal form, echelon bases of row lattices, and
//! kernels of integer vectors.
//!
//! The routines are generic over the integer type. Machine-width variants
//! report overflow by returning `None`; the public `BigInt` entry points try
//! `i128` first and fall back to arbitrary precision.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::ExactInt;

/// Integer types usable by the lattice routines.
pub trait LatticeInt: ExactInt + Integer {}

impl<T: ExactInt + Integer> LatticeInt for T {}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;

impl<T: LatticeInt> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r.iter().cloned());
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let converted: Vec<Vec<T>> =
            rows.iter().map(|r| r.iter().map(|&x| T::from_i64(x)).collect()).collect();
        Self::from_rows(&converted, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, w: &[T]) -> Vec<T> {
        assert_eq!(w.len(), self.rows);
        let mut out = vec![T::zero(); self.cols];
        for (i, wi) in w.iter().enumerate() {
            if wi.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = slot.clone() + wi.clone() * self[(i, j)].clone();
            }
        }
        out
    }

    pub fn to_big(&self) -> IntMatrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(ExactInt::to_big).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += k * row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, k: &T) -> Option<()> {
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j].clone();
            if s.is_zero() {
                continue;
            }
            let d = &mut self.data[dst * self.cols + j];
            *d = d.checked_mul_add(k, &s)?;
        }
        Some(())
    }

    /// `col[dst] += k * col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, k: &T) -> Option<()> {
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src].clone();
            if s.is_zero() {
                continue;
            }
            let d = &mut self.data[i * self.cols + dst];
            *d = d.checked_mul_add(k, &s)?;
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -v.clone();
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = &mut self.data[i * self.cols + j];
            *v = -v.clone();
        }
    }
}

impl IntMatrix {
    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `M = U * D * V` and `P * M * Q = D`, with `U = P^-1`, `V = Q^-1`
/// unimodular and `D` diagonal with `d_1 | d_2 | ...`, all `d_i >= 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct Smith<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    pub p: Matrix<T>,
    pub q: Matrix<T>,
    /// Number of nonzero invariant factors.
    pub rank: usize,
}

impl<T: LatticeInt> Smith<T> {
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct SmithState<T> {
    a: Matrix<T>,
    p: Matrix<T>,
    u: Matrix<T>,
    q: Matrix<T>,
    v: Matrix<T>,
}

impl<T: LatticeInt> SmithState<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.p.swap_rows(i, j);
        self.u.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.q.swap_cols(i, j);
        self.v.swap_rows(i, j);
    }

    /// `row[dst] += k * row[src]` on `A` and `P`; `U` absorbs the inverse.
    fn add_row(&mut self, dst: usize, src: usize, k: &T) -> Option<()> {
        self.a.add_row(dst, src, k)?;
        self.p.add_row(dst, src, k)?;
        self.u.add_col(src, dst, &-k.clone())
    }

    /// `col[dst] += k * col[src]` on `A` and `Q`; `V` absorbs the inverse.
    fn add_col(&mut self, dst: usize, src: usize, k: &T) -> Option<()> {
        self.a.add_col(dst, src, k)?;
        self.q.add_col(dst, src, k)?;
        self.v.add_row(src, dst, &-k.clone())
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.p.negate_row(i);
        self.u.negate_col(i);
    }

    fn min_nonzero(&self, t: usize, whole: bool) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        let mut consider = |i: usize, j: usize| {
            let x = &self.a[(i, j)];
            if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.2) {
                best = Some((i, j, x.abs()));
            }
        };
        if whole {
            for i in t..self.a.rows {
                for j in t..self.a.cols {
                    consider(i, j);
                }
            }
        } else {
            consider(t, t);
            for i in t + 1..self.a.rows {
                consider(i, t);
            }
            for j in t + 1..self.a.cols {
                consider(t, j);
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Smith normal form in the integer type `T`; `None` on overflow.
pub fn try_smith<T: LatticeInt>(m: &Matrix<T>) -> Option<Smith<T>> {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = SmithState {
        a: m.clone(),
        p: Matrix::identity(rows),
        u: Matrix::identity(rows),
        q: Matrix::identity(cols),
        v: Matrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = s.min_nonzero(t, true) else {
            break;
        };
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);
        loop {
            let pivot = s.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !s.a[(i, t)].is_zero() {
                    let k = s.a[(i, t)].div_floor(&pivot);
                    s.add_row(i, t, &-k)?;
                    clean &= s.a[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !s.a[(t, j)].is_zero() {
                    let k = s.a[(t, j)].div_floor(&pivot);
                    s.add_col(j, t, &-k)?;
                    clean &= s.a[(t, j)].is_zero();
                }
            }
            if !clean {
                let (pi, pj) = s.min_nonzero(t, false).expect("pivot is nonzero");
                s.swap_rows(t, pi);
                s.swap_cols(t, pj);
                continue;
            }
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !s.a[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => s.add_row(t, i, &T::one())?,
                None => break,
            }
        }
        if s.a[(t, t)].is_negative() {
            s.negate_row(t);
        }
        t += 1;
    }
    Some(Smith { u: s.u, d: s.a, v: s.v, p: s.p, q: s.q, rank: t })
}

/// Smith normal form over the integers.
pub fn smith_normal_form(m: &IntMatrix) -> Smith<BigInt> {
    let small = m
        .data
        .iter()
        .map(|x| i128::try_from(x).ok())
        .collect::<Option<Vec<i128>>>()
        .map(|data| Matrix { rows: m.rows, cols: m.cols, data });
    if let Some(fast) = small.as_ref().and_then(try_smith) {
        return Smith {
            u: fast.u.to_big(),
            d: fast.d.to_big(),
            v: fast.v.to_big(),
            p: fast.p.to_big(),
            q: fast.q.to_big(),
            rank: fast.rank,
        };
    }
    try_smith(m).expect("big integers do not overflow")
}

/// Echelon basis of the row lattice spanned by `rows`; every basis vector
/// has a positive leading entry and the leading columns strictly increase.
pub fn try_row_basis<T: LatticeInt>(rows: &[Vec<T>], cols: usize) -> Option<Vec<Vec<T>>> {
    // basis[c] is the row whose leading entry sits in column c
    let mut basis: Vec<Option<Vec<T>>> = vec![None; cols];
    for row in rows {
        let mut v = row.clone();
        while let Some(c) = v.iter().position(|x| !x.is_zero()) {
            let Some(b) = basis[c].as_mut() else {
                if v[c].is_negative() {
                    v.iter_mut().for_each(|x| *x = -x.clone());
                }
                basis[c] = Some(v);
                break;
            };
            let (bp, vp) = (b[c].clone(), v[c].clone());
            if vp.is_multiple_of(&bp) {
                let k = -(vp / bp);
                for j in c..cols {
                    v[j] = v[j].checked_mul_add(&k, &b[j])?;
                }
                continue;
            }
            // unimodular 2x2 step: (b, v) -> (x b + y v, (bp/g) v - (vp/g) b)
            let e = bp.extended_gcd(&vp);
            let (bq, vq) = (bp / e.gcd.clone(), vp / e.gcd.clone());
            let neg_vq = -vq;
            for j in c..cols {
                let nb = T::zero().checked_mul_add(&e.x, &b[j])?.checked_mul_add(&e.y, &v[j])?;
                let nv = T::zero().checked_mul_add(&bq, &v[j])?.checked_mul_add(&neg_vq, &b[j])?;
                b[j] = nb;
                v[j] = nv;
            }
            if b[c].is_negative() {
                b.iter_mut().for_each(|x| *x = -x.clone());
            }
        }
    }
    // reduce entries above each pivot to keep numbers small
    let mut out: Vec<Vec<T>> = basis.into_iter().flatten().collect();
    for i in (0..out.len()).rev() {
        let c = out[i].iter().position(|x| !x.is_zero()).unwrap();
        let piv = out[i][c].clone();
        for r in 0..i {
            let k = -out[r][c].div_floor(&piv);
            if k.is_zero() {
                continue;
            }
            let (head, tail) = out.split_at_mut(i);
            for j in c..cols {
                head[r][j] = head[r][j].checked_mul_add(&k, &tail[0][j])?;
            }
        }
    }
    Some(out)
}

/// Echelon basis of the row lattice of small integer rows.
pub fn row_basis(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<BigInt>> {
    let wide: Vec<Vec<i128>> =
        rows.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    if let Some(b) = try_row_basis(&wide, cols) {
        return b.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    }
    let big: Vec<Vec<BigInt>> =
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    try_row_basis(&big, cols).expect("big integers do not overflow")
}

/// Basis of `{w in Z^m : w . v = 0}`, each vector with a positive first
/// nonzero entry.
pub fn integer_kernel(v: &[BigInt]) -> Vec<Vec<BigInt>> {
    let m = v.len();
    let snf = smith_normal_form(&Matrix::from_rows(&[v.to_vec()], m));
    (snf.rank..m)
        .map(|j| {
            let mut w = snf.q.column(j);
            if w.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                w.iter_mut().for_each(|x| *x = -x.clone());
            }
            w
        })
        .collect()
}

/// Membership of `w` in the row lattice of `M`, given the Smith form of `M`.
pub fn in_row_lattice(snf: &Smith<BigInt>, w: &[BigInt]) -> bool {
    // w = c M = c U D V  <=>  w Q = (c U) D
    let y = snf.q.left_apply(w);
    y.iter().enumerate().all(|(i, yi)| {
        if i < snf.rank {
            yi.is_multiple_of(&snf.d[(i, i)])
        } else {
            yi.is_zero()
        }
    })
}
