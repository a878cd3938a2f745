//! Exhaustive enumeration of `GL_n(F_q)` with an optional on-disk cache.

use std::fs;
use std::path::Path;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Gf;
use crate::mat::{Mat, MAX_N};

/// Largest group enumerated point by point.
pub const MAX_GROUP_ORDER: u128 = 25_000;

/// Bumped whenever the cache layout or the element order changes.
pub const CACHE_FORMAT_VERSION: u32 = 1;

/// `|GL_n(F_q)| = ∏ (q^n − q^i)`.
pub fn gl_order(n: usize, q: usize) -> u128 {
    let qn = (q as u128).pow(n as u32);
    (0..n).map(|i| qn - (q as u128).pow(i as u32)).product()
}

pub struct GlGroup {
    n: usize,
    field: Gf,
    elems: Vec<Mat>,
    index: FxHashMap<Mat, u32>,
    inverse: Vec<u32>,
    generators: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format_version: u32,
    n: usize,
    p: usize,
    k: usize,
    modulus: Vec<usize>,
    elements: Vec<Vec<u8>>,
}

impl GlGroup {
    /// Enumerates `GL_n` over `field`, in increasing row-major order.
    pub fn new(n: usize, field: &Gf) -> Result<Self> {
        check_bounds(n, field)?;
        let q = field.order();
        let total = q.pow((n * n) as u32);
        let mut elems = Vec::with_capacity(gl_order(n, q) as usize);
        let mut m = Mat::zero(n);
        for code in 0..total {
            let mut c = code;
            for slot in (0..n * n).rev() {
                m.set(slot / n, slot % n, (c % q) as u8);
                c /= q;
            }
            if m.det(field) != 0 {
                elems.push(m);
            }
        }
        Self::from_sorted(n, field, elems)
    }

    /// Loads the element list from `dir` when a compatible cache file exists,
    /// otherwise enumerates and writes it.
    pub fn cached(n: usize, field: &Gf, dir: &Path) -> Result<Self> {
        check_bounds(n, field)?;
        let path = dir.join(format!("gl_n{}_p{}_k{}.json", n, field.p(), field.degree()));
        if let Ok(bytes) = fs::read(&path) {
            if let Ok(file) = serde_json::from_slice::<CacheFile>(&bytes) {
                if file.format_version == CACHE_FORMAT_VERSION
                    && file.n == n
                    && file.modulus == field.modulus()
                    && file.elements.len() as u128 == gl_order(n, field.order())
                {
                    let elems = file
                        .elements
                        .iter()
                        .map(|e| {
                            let rows: Vec<Vec<u8>> = e.chunks(n).map(<[u8]>::to_vec).collect();
                            Mat::from_rows(&rows, field)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    if elems.windows(2).all(|p| p[0] < p[1]) && elems.iter().all(|m| m.det(field) != 0) {
                        return Self::from_sorted(n, field, elems);
                    }
                }
            }
        }
        let group = Self::new(n, field)?;
        let file = CacheFile {
            format_version: CACHE_FORMAT_VERSION,
            n,
            p: field.p(),
            k: field.degree(),
            modulus: field.modulus(),
            elements: group.elems.iter().map(|m| m.rows().concat()).collect(),
        };
        fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        let json = serde_json::to_vec(&file).map_err(|e| Error::Cache(e.to_string()))?;
        fs::write(&path, json).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        Ok(group)
    }

    fn from_sorted(n: usize, field: &Gf, elems: Vec<Mat>) -> Result<Self> {
        let index: FxHashMap<Mat, u32> = elems.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        let inverse = elems
            .iter()
            .map(|m| {
                let inv = m.inverse(field).expect("group elements are invertible");
                index[&inv]
            })
            .collect();
        let mut gens = vec![
            Mat::diagonal(
                &[field.primitive()]
                    .iter()
                    .copied()
                    .chain(std::iter::repeat(1).take(n - 1))
                    .collect::<Vec<_>>(),
            ),
            Mat::elementary(n, 0, 1, 1),
            Mat::permutation(&(0..n).map(|j| if j < 2 { 1 - j } else { j }).collect::<Vec<_>>()),
            Mat::permutation(&(0..n).map(|j| (j + 1) % n).collect::<Vec<_>>()),
        ];
        gens.sort();
        gens.dedup();
        gens.retain(|g| !g.is_identity());
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(GlGroup {
            n,
            field: field.clone(),
            elems,
            index,
            inverse,
            generators,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elems
    }

    #[inline]
    pub fn elem(&self, i: u32) -> &Mat {
        &self.elems[i as usize]
    }

    #[inline]
    pub fn index_of(&self, m: &Mat) -> Option<u32> {
        self.index.get(m).copied()
    }

    #[inline]
    pub fn inv(&self, i: u32) -> u32 {
        self.inverse[i as usize]
    }

    pub fn identity_index(&self) -> u32 {
        self.index[&Mat::identity(self.n)]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.index[&self.elem(a).mul(self.elem(b), &self.field)]
    }

    /// A small generating set: a primitive diagonal entry, one transvection,
    /// a transposition and an `n`-cycle.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// `x ↦ g·x` on indices.
    pub fn left_table(&self, g: u32) -> Vec<u32> {
        (0..self.len() as u32).map(|x| self.mul(g, x)).collect()
    }

    /// `x ↦ g·x·g^{-1}` on indices.
    pub fn conj_table(&self, g: u32) -> Vec<u32> {
        let gi = self.inv(g);
        (0..self.len() as u32).map(|x| self.mul(self.mul(g, x), gi)).collect()
    }
}

fn check_bounds(n: usize, field: &Gf) -> Result<()> {
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::Config(format!("n = {n} outside 2..={MAX_N}")));
    }
    let order = gl_order(n, field.order());
    if order > MAX_GROUP_ORDER {
        return Err(Error::Resource(format!(
            "|GL_{n}(F_{})| = {order} exceeds {MAX_GROUP_ORDER}",
            field.order()
        )));
    }
    Ok(())
}

/// Partition of the group into left cosets `gH`, numbered in order of
/// their smallest element.
pub struct CosetPartition {
    pub coset_of: Vec<u32>,
    pub reps: Vec<u32>,
}

impl CosetPartition {
    pub fn new(group: &GlGroup, subgroup: &[Mat]) -> Self {
        let f = group.field();
        let mut coset_of = vec![u32::MAX; group.len()];
        let mut reps = Vec::new();
        for g in 0..group.len() as u32 {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for h in subgroup {
                let gh = group.index[&group.elem(g).mul(h, f)];
                coset_of[gh as usize] = id;
            }
        }
        CosetPartition { coset_of, reps }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}
