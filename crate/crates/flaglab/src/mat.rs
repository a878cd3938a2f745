//! Square matrices of size at most 4 over a [`Gf`], stored inline.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Gf;

pub const MAX_N: usize = 4;

/// Row-major `n×n` matrix; entries beyond `n×n` are zero. All arithmetic
/// takes the field explicitly.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat {
    n: u8,
    e: [u8; 16],
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u8>> = (0..self.n()).map(|i| self.row(i).to_vec()).collect();
        write!(f, "{rows:?}")
    }
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n), "matrix size {n} out of range");
        Mat { n: n as u8, e: [0; 16] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>], f: &Gf) -> Result<Self> {
        let n = rows.len();
        if !(1..=MAX_N).contains(&n) || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Domain(format!("expected a square matrix of size ≤ {MAX_N}")));
        }
        let mut m = Self::zero(n);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if v as usize >= f.order() {
                    return Err(Error::Domain(format!("entry {v} outside GF({})", f.order())));
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// Permutation matrix with `m[perm[j]][j] = 1`, so `e_j ↦ e_{perm(j)}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let mut m = Self::zero(perm.len());
        for (j, &i) in perm.iter().enumerate() {
            m.set(i, j, 1);
        }
        m
    }

    pub fn diagonal(d: &[u8]) -> Self {
        let mut m = Self::zero(d.len());
        for (i, &v) in d.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// `1 + c·E_{ab}`.
    pub fn elementary(n: usize, a: usize, b: usize, c: u8) -> Self {
        let mut m = Self::identity(n);
        m.set(a, b, c);
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.e[i * MAX_N + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.e[i * MAX_N + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.e[i * MAX_N..i * MAX_N + self.n()]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.n()).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.n()).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &Mat, f: &Gf) -> Mat {
        let n = self.n();
        let mut out = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u8;
                for k in 0..n {
                    acc = f.add(acc, f.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// `self · other · self^{-1}` given `self^{-1}`.
    pub fn conjugate(&self, other: &Mat, self_inv: &Mat, f: &Gf) -> Mat {
        self.mul(other, f).mul(self_inv, f)
    }

    pub fn sub(&self, other: &Mat, f: &Gf) -> Mat {
        let mut out = *self;
        for i in 0..self.n() {
            for j in 0..self.n() {
                out.set(i, j, f.sub(self.get(i, j), other.get(i, j)));
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = *self;
        for i in 0..self.n() {
            for j in 0..self.n() {
                out.set(i, j, self.get(j, i));
            }
        }
        out
    }

    /// Entrywise `x ↦ x^{p^e}`.
    pub fn frobenius(&self, f: &Gf, e: usize) -> Mat {
        let mut out = *self;
        for i in 0..self.n() {
            for j in 0..self.n() {
                out.set(i, j, f.frobenius_pow(self.get(i, j), e));
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.n())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n()).all(|i| (0..self.n()).all(|j| i == j || self.get(i, j) == 0))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n()).all(|i| (0..i).all(|j| self.get(i, j) == 0))
    }

    /// Row echelon reduction in place; returns the rank and the pivot columns.
    pub(crate) fn echelon(rows: &mut [[u8; MAX_N]], ncols: usize, f: &Gf) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, p);
            let s = f.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, s);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let t = rows[i][c];
                    for j in 0..ncols {
                        rows[i][j] = f.sub(rows[i][j], f.mul(t, rows[r][j]));
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self, f: &Gf) -> usize {
        let mut rows: Vec<[u8; MAX_N]> = (0..self.n()).map(|i| self.row_array(i)).collect();
        Self::echelon(&mut rows, self.n(), f).len()
    }

    fn row_array(&self, i: usize) -> [u8; MAX_N] {
        let mut r = [0u8; MAX_N];
        r.copy_from_slice(&self.e[i * MAX_N..(i + 1) * MAX_N]);
        r
    }

    pub fn is_invertible(&self, f: &Gf) -> bool {
        self.rank(f) == self.n()
    }

    pub fn det(&self, f: &Gf) -> u8 {
        let n = self.n();
        let mut a: Vec<[u8; MAX_N]> = (0..n).map(|i| self.row_array(i)).collect();
        let mut det = 1u8;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| a[i][c] != 0) else {
                return 0;
            };
            if p != c {
                a.swap(p, c);
                det = f.neg(det);
            }
            det = f.mul(det, a[c][c]);
            let s = f.inv(a[c][c]);
            for i in c + 1..n {
                if a[i][c] != 0 {
                    let t = f.mul(a[i][c], s);
                    for j in c..n {
                        a[i][j] = f.sub(a[i][j], f.mul(t, a[c][j]));
                    }
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self, f: &Gf) -> Option<Mat> {
        let n = self.n();
        let mut a: Vec<[u8; 2 * MAX_N]> = (0..n)
            .map(|i| {
                let mut r = [0u8; 2 * MAX_N];
                r[..n].copy_from_slice(self.row(i));
                r[n + i] = 1;
                r
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&i| a[i][c] != 0)?;
            a.swap(p, c);
            let s = f.inv(a[c][c]);
            for x in a[c].iter_mut() {
                *x = f.mul(*x, s);
            }
            for i in 0..n {
                if i != c && a[i][c] != 0 {
                    let t = a[i][c];
                    for j in 0..2 * n {
                        a[i][j] = f.sub(a[i][j], f.mul(t, a[c][j]));
                    }
                }
            }
        }
        let mut out = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, a[i][n + j]);
            }
        }
        Some(out)
    }

    pub fn pow(&self, mut e: u64, f: &Gf) -> Mat {
        let mut base = *self;
        let mut acc = Mat::identity(self.n());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of an invertible matrix.
    pub fn order(&self, f: &Gf) -> u64 {
        let mut x = *self;
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(self, f);
            k += 1;
        }
        k
    }

    /// Reduced row echelon basis of the span of the first `d` columns.
    pub fn column_span_rref(&self, d: usize, f: &Gf) -> Vec<[u8; MAX_N]> {
        let mut rows: Vec<[u8; MAX_N]> = (0..d)
            .map(|j| {
                let mut r = [0u8; MAX_N];
                for i in 0..self.n() {
                    r[i] = self.get(i, j);
                }
                r
            })
            .collect();
        let rank = Self::echelon(&mut rows, self.n(), f).len();
        rows.truncate(rank);
        rows
    }

    /// Whether `u - 1` is nilpotent.
    pub fn is_unipotent(&self, f: &Gf) -> bool {
        let n = self.n();
        let nil = self.sub(&Mat::identity(n), f);
        nil.pow(n as u64, f) == Mat::zero(n)
    }

    /// Jordan block sizes of a unipotent matrix, largest first, from the
    /// ranks of `(u - 1)^i`.
    pub fn jordan_type(&self, f: &Gf) -> Option<Vec<usize>> {
        if !self.is_unipotent(f) {
            return None;
        }
        let n = self.n();
        let nil = self.sub(&Mat::identity(n), f);
        let mut ranks = vec![n];
        let mut p = Mat::identity(n);
        for _ in 0..n {
            p = p.mul(&nil, f);
            ranks.push(p.rank(f));
        }
        // ranks[i-1] - ranks[i] blocks have size ≥ i.
        let at_least: Vec<usize> = (1..=n).map(|i| ranks[i - 1] - ranks[i]).collect();
        let mut parts = Vec::new();
        for i in (1..=n).rev() {
            let exact = at_least[i - 1] - at_least.get(i).copied().unwrap_or(0);
            parts.extend(std::iter::repeat(i).take(exact));
        }
        Some(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det_over_f3() {
        let f = Gf::new(3, 1).unwrap();
        let m = Mat::from_rows(&[vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]], &f).unwrap();
        let inv = m.inverse(&f).unwrap();
        assert!(m.mul(&inv, &f).is_identity());
        assert_ne!(m.det(&f), 0);
        let sing = Mat::from_rows(&[vec![1, 2], vec![2, 1]], &f).unwrap();
        assert_eq!(sing.det(&f), 0);
        assert!(sing.inverse(&f).is_none());
    }

    #[test]
    fn permutation_matrices_compose_like_permutations() {
        let f = Gf::new(2, 1).unwrap();
        let a = Mat::permutation(&[1, 2, 0]);
        let b = Mat::permutation(&[0, 2, 1]);
        // (a∘b)(j) = a(b(j))
        assert_eq!(a.mul(&b, &f), Mat::permutation(&[1, 0, 2]));
    }

    #[test]
    fn jordan_types() {
        let f = Gf::new(2, 1).unwrap();
        assert_eq!(Mat::identity(3).jordan_type(&f), Some(vec![1, 1, 1]));
        let j = Mat::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]], &f).unwrap();
        assert_eq!(j.jordan_type(&f), Some(vec![3]));
        let t = Mat::elementary(4, 0, 3, 1).mul(&Mat::elementary(4, 1, 2, 1), &f);
        assert_eq!(t.jordan_type(&f), Some(vec![2, 2]));
        assert_eq!(Mat::permutation(&[1, 0]).jordan_type(&f), Some(vec![2]));
        let f3 = Gf::new(3, 1).unwrap();
        assert_eq!(Mat::diagonal(&[2, 1]).jordan_type(&f3), None);
    }
}
