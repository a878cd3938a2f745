//! Parabolic subgroups of `GL_n` and partial flag varieties `𝒫_I`.
//!
//! `P_I` is block upper triangular, with diagonal blocks the runs of indices
//! joined by the simple reflections in `I`. Its points are flags of
//! subspaces spanned by the first `d` columns of a coset representative,
//! for `d = i + 1` with `s_i ∉ I` (0-based `i`).

use std::sync::Arc;

use rustc_hash::FxHashMap;
use weylbraid_core::weyl::{all_elements, min_double_coset_rep};
use weylbraid_core::{RootSystem, WeylElement};

use crate::bruhat::{bruhat_position, dot, type_a, weyl_to_perm};
use crate::error::{Error, Result};
use crate::gf::Gf;
use crate::mat::{Mat, MAX_N};

/// Largest partial flag variety enumerated point by point.
pub const MAX_FLAGS: u128 = 1_000;

/// Block number of each row/column index.
pub fn blocks(n: usize, mask: u32) -> Vec<usize> {
    let mut out = vec![0; n];
    for i in 1..n {
        out[i] = out[i - 1] + usize::from(mask & (1 << (i - 1)) == 0);
    }
    out
}

/// Dimensions of the subspaces in a flag of type `mask`.
pub fn flag_dims(n: usize, mask: u32) -> Vec<usize> {
    (0..n - 1).filter(|i| mask & (1 << i) == 0).map(|i| i + 1).collect()
}

pub fn in_parabolic(m: &Mat, blk: &[usize]) -> bool {
    let n = m.n();
    (0..n).all(|i| (0..n).all(|j| blk[i] <= blk[j] || m.get(i, j) == 0))
}

/// Block-diagonal part; for `p ∈ P_I` this is the Levi factor `l` of `p = l·u`.
pub fn levi_part(m: &Mat, blk: &[usize]) -> Mat {
    let mut out = *m;
    for i in 0..m.n() {
        for j in 0..m.n() {
            if blk[i] != blk[j] {
                out.set(i, j, 0);
            }
        }
    }
    out
}

pub fn in_unipotent_radical(m: &Mat, blk: &[usize]) -> bool {
    in_parabolic(m, blk) && levi_part(m, blk).is_identity()
}

/// All matrices `1 + Σ c_{ab} E_{ab}` over the given positions. For a closed
/// set of roots this is the corresponding unipotent group.
pub fn pattern_group(n: usize, positions: &[(usize, usize)], f: &Gf) -> Vec<Mat> {
    let q = f.order();
    let total = q.pow(positions.len() as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut m = Mat::identity(n);
        let mut c = code;
        for &(a, b) in positions.iter().rev() {
            m.set(a, b, (c % q) as u8);
            c /= q;
        }
        out.push(m);
    }
    out
}

fn rank_of(vectors: &[[u8; MAX_N]], n: usize, f: &Gf) -> usize {
    let mut rows = vectors.to_vec();
    Mat::echelon(&mut rows, n, f).len()
}

/// A point of `𝒫_I`: the chain of subspaces, each in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagPoint {
    n: u8,
    mask: u32,
    spaces: Vec<Vec<[u8; MAX_N]>>,
}

impl FlagPoint {
    /// The flag `x·P_I`.
    pub fn from_matrix(x: &Mat, mask: u32, f: &Gf) -> Self {
        let n = x.n();
        let spaces = flag_dims(n, mask)
            .into_iter()
            .map(|d| x.column_span_rref(d, f))
            .collect();
        FlagPoint {
            n: n as u8,
            mask,
            spaces,
        }
    }

    pub fn standard(n: usize, mask: u32, f: &Gf) -> Self {
        Self::from_matrix(&Mat::identity(n), mask, f)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn spaces(&self) -> &[Vec<[u8; MAX_N]>] {
        &self.spaces
    }

    /// Some `x` with `self = x·P_I`: a basis adapted to the chain.
    pub fn to_matrix(&self, f: &Gf) -> Mat {
        let n = self.n();
        let mut basis: Vec<[u8; MAX_N]> = Vec::with_capacity(n);
        let standard = (0..n).map(|j| {
            let mut e = [0u8; MAX_N];
            e[j] = 1;
            e
        });
        let candidates = self.spaces.iter().flatten().copied().chain(standard);
        for v in candidates {
            basis.push(v);
            if rank_of(&basis, n, f) < basis.len() {
                basis.pop();
            }
        }
        let mut m = Mat::zero(n);
        for (j, v) in basis.iter().enumerate() {
            for (i, &c) in v.iter().take(n).enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// `g·P`.
    pub fn translate(&self, g: &Mat, f: &Gf) -> Self {
        Self::from_matrix(&g.mul(&self.to_matrix(f), f), self.mask, f)
    }

    /// Entrywise `x ↦ x^{p^e}`.
    pub fn frobenius(&self, f: &Gf, e: usize) -> Self {
        let spaces = self
            .spaces
            .iter()
            .map(|s| {
                s.iter()
                    .map(|r| {
                        let mut out = *r;
                        for x in out.iter_mut() {
                            *x = f.frobenius_pow(*x, e);
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        FlagPoint {
            n: self.n,
            mask: self.mask,
            spaces,
        }
    }
}

/// The `G`-orbit label of `(P, Q)`: the minimal representative of
/// `W_I · bruhat(x^{-1}y) · W_J` for `P = x·P_I`, `Q = y·P_J`.
pub fn relative_position(p: &FlagPoint, q: &FlagPoint, f: &Gf) -> Result<WeylElement> {
    if p.n != q.n {
        return Err(Error::Domain(format!("flags in dimensions {} and {}", p.n, q.n)));
    }
    let rs = type_a(p.n())?;
    let x = p.to_matrix(f);
    let y = q.to_matrix(f);
    let z = x.inverse(f).expect("adapted bases are invertible").mul(&y, f);
    let w = bruhat_position(&rs, &z, f)?;
    Ok(min_double_coset_rep(p.mask, &w, q.mask))
}

/// Minimal length representatives of `W / W_I`.
pub fn min_left_coset_reps(rs: &Arc<RootSystem>, mask: u32) -> Vec<WeylElement> {
    all_elements(rs)
        .into_iter()
        .filter(|v| v.right_descents() & mask == 0)
        .collect()
}

/// Positions `(a, b)`, `a < b`, of the roots in `{α > 0 : w^{-1}α < 0}`.
pub fn inversion_positions(w: &WeylElement) -> Result<Vec<(usize, usize)>> {
    let perm = weyl_to_perm(w)?;
    let n = perm.len();
    let mut inv = vec![0; n];
    for (j, &v) in perm.iter().enumerate() {
        inv[v] = j;
    }
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if inv[a] > inv[b] {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

/// All points of `𝒫_I` over a field, listed cell by cell: the cell of
/// `v ∈ W^I` consists of the flags `u·v̇·P_I` with `u` running over the
/// root subgroups inverted by `v^{-1}`.
pub struct FlagVariety {
    n: usize,
    mask: u32,
    points: Vec<FlagPoint>,
    reps: Vec<Mat>,
    index: FxHashMap<FlagPoint, u32>,
}

impl FlagVariety {
    pub fn new(n: usize, mask: u32, f: &Gf) -> Result<Self> {
        let rs = type_a(n)?;
        if mask & !rs.full_mask() != 0 {
            return Err(Error::Config(format!(
                "mask {mask:#b} outside the simple reflections of GL_{n}"
            )));
        }
        let cells = min_left_coset_reps(&rs, mask);
        let size: u128 = cells.iter().map(|v| (f.order() as u128).pow(v.length() as u32)).sum();
        if size > MAX_FLAGS {
            return Err(Error::Resource(format!(
                "|𝒫_I(F_{})| = {size} exceeds {MAX_FLAGS}",
                f.order()
            )));
        }
        let mut points = Vec::with_capacity(size as usize);
        let mut reps = Vec::with_capacity(size as usize);
        for v in &cells {
            let vd = dot(v)?;
            for u in pattern_group(n, &inversion_positions(v)?, f) {
                let x = u.mul(&vd, f);
                points.push(FlagPoint::from_matrix(&x, mask, f));
                reps.push(x);
            }
        }
        let index: FxHashMap<FlagPoint, u32> = points.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        if index.len() != points.len() {
            return Err(Error::Domain("Bruhat cells overlap".into()));
        }
        Ok(FlagVariety {
            n,
            mask,
            points,
            reps,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[FlagPoint] {
        &self.points
    }

    pub fn point(&self, i: u32) -> &FlagPoint {
        &self.points[i as usize]
    }

    /// The coset representative used for point `i`.
    pub fn rep(&self, i: u32) -> &Mat {
        &self.reps[i as usize]
    }

    pub fn index_of(&self, p: &FlagPoint) -> Option<u32> {
        self.index.get(p).copied()
    }

    /// Index of `x·P_I`.
    pub fn index_of_matrix(&self, x: &Mat, f: &Gf) -> u32 {
        self.index[&FlagPoint::from_matrix(x, self.mask, f)]
    }
}
