//! Finite crystallographic root systems in the simple-root basis.
//!
//! Roots are integer coordinate vectors with respect to the simple roots.
//! The positive roots are ordered by height and then by descending
//! coordinate vector, so the simple root `α_{i+1}` always sits at index `i`.
//! The full root list is the positive roots followed by their negatives in
//! the same order; index `i` and index `i + npos` are a `±` pair.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Cartan-Killing family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "G" => Ok(Family::G),
            other => Err(Error::Config(format!("unknown root system family {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self, Error> {
        let ok = match family {
            Family::A => (1..=6).contains(&rank),
            Family::B | Family::C => (2..=4).contains(&rank),
            Family::D => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::Config(format!("unsupported root system {family}{rank}")))
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A closed finite root system together with its simple reflections.
#[derive(Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    /// `cartan[i][j] = <α_j, α_i^∨>`.
    cartan: Vec<Vec<i32>>,
    roots: Vec<Vec<i32>>,
    npos: usize,
    index: FxHashMap<Vec<i32>, usize>,
    /// `reflections[i][β]` is the index of `s_i(β)`.
    reflections: Vec<Vec<u8>>,
}

/// Symmetric integer Gram matrix of the simple roots.
fn gram_matrix(ct: CartanType) -> Vec<Vec<i32>> {
    let r = ct.rank;
    let mut g = vec![vec![0i32; r]; r];
    for i in 0..r {
        g[i][i] = 2;
        if i + 1 < r {
            g[i][i + 1] = -1;
            g[i + 1][i] = -1;
        }
    }
    match ct.family {
        Family::A => {}
        Family::B => {
            // α_n = e_n is short.
            g[r - 1][r - 1] = 1;
        }
        Family::C => {
            // α_n = 2e_n is long.
            g[r - 1][r - 1] = 4;
            g[r - 2][r - 1] = -2;
            g[r - 1][r - 2] = -2;
        }
        Family::D => {
            // α_n = e_{n-1} + e_n hangs off α_{n-2}.
            g[r - 2][r - 1] = 0;
            g[r - 1][r - 2] = 0;
            g[r - 3][r - 1] = -1;
            g[r - 1][r - 3] = -1;
        }
        Family::G => {
            g[1][1] = 6;
            g[0][1] = -3;
            g[1][0] = -3;
        }
    }
    g
}

impl RootSystem {
    /// Builds the root system of the given type by saturating the simple
    /// roots under all simple reflections.
    pub fn new(family: Family, rank: usize) -> Result<Arc<Self>, Error> {
        let ct = CartanType::new(family, rank)?;
        Ok(Arc::new(Self::build(ct)))
    }

    pub fn from_type(ct: CartanType) -> Result<Arc<Self>, Error> {
        Self::new(ct.family, ct.rank)
    }

    fn build(ct: CartanType) -> Self {
        let r = ct.rank;
        let gram = gram_matrix(ct);
        let cartan: Vec<Vec<i32>> = (0..r)
            .map(|i| (0..r).map(|j| 2 * gram[i][j] / gram[i][i]).collect())
            .collect();

        let simple = |i: usize| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        };
        let mut seen: FxHashMap<Vec<i32>, ()> = FxHashMap::default();
        let mut queue: VecDeque<Vec<i32>> = (0..r).map(simple).collect();
        for v in &queue {
            seen.insert(v.clone(), ());
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..r {
                let img = reflect_coords(&cartan, i, &beta);
                if !seen.contains_key(&img) {
                    seen.insert(img.clone(), ());
                    queue.push_back(img);
                }
            }
        }

        let mut positive: Vec<Vec<i32>> = seen.into_keys().filter(|v| v.iter().all(|&c| c >= 0)).collect();
        positive.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let npos = positive.len();
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|v| v.iter().map(|c| -c).collect::<Vec<_>>()));

        let index: FxHashMap<Vec<i32>, usize> = roots.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
        let reflections = (0..r)
            .map(|i| {
                roots
                    .iter()
                    .map(|beta| index[&reflect_coords(&cartan, i, beta)] as u8)
                    .collect()
            })
            .collect();

        RootSystem {
            cartan_type: ct,
            cartan,
            roots,
            npos,
            index,
            reflections,
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Number of positive roots.
    pub fn npos(&self) -> usize {
        self.npos
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn all_roots(&self) -> &[Vec<i32>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Vec<i32>] {
        &self.roots[..self.npos]
    }

    pub fn simple_roots(&self) -> &[Vec<i32>] {
        &self.roots[..self.rank()]
    }

    pub fn root(&self, idx: usize) -> &[i32] {
        &self.roots[idx]
    }

    pub fn root_index(&self, beta: &[i32]) -> Option<usize> {
        self.index.get(beta).copied()
    }

    pub fn is_positive(&self, idx: usize) -> bool {
        idx < self.npos
    }

    /// Index of `-β`.
    pub fn negate(&self, idx: usize) -> usize {
        if idx < self.npos {
            idx + self.npos
        } else {
            idx - self.npos
        }
    }

    pub fn height(&self, idx: usize) -> i32 {
        self.roots[idx].iter().sum()
    }

    /// `s_i(β) = β - <β, α_i^∨> α_i`.
    pub fn reflect(&self, s: usize, beta: &[i32]) -> Result<Vec<i32>, Error> {
        if s >= self.rank() {
            return Err(Error::Domain(format!("simple index {s} out of range")));
        }
        if self.root_index(beta).is_none() {
            return Err(Error::Domain(format!("{beta:?} is not a root of {}", self.cartan_type)));
        }
        Ok(reflect_coords(&self.cartan, s, beta))
    }

    /// Reflection table lookup on root indices.
    #[inline]
    pub fn reflect_index(&self, s: usize, idx: usize) -> usize {
        self.reflections[s][idx] as usize
    }

    pub(crate) fn reflection_table(&self, s: usize) -> &[u8] {
        &self.reflections[s]
    }

    /// Simple-root support of a root, as a bitmask over simple indices.
    pub fn support(&self, idx: usize) -> u32 {
        self.roots[idx]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    /// Bitmask of all simple indices.
    pub fn full_mask(&self) -> u32 {
        (1u32 << self.rank()) - 1
    }

    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            r#type: self.cartan_type.family.to_string(),
            rank: self.rank(),
            simple_roots: self.simple_roots().to_vec(),
            positive_roots: self.positive_roots().to_vec(),
        }
    }
}

fn reflect_coords(cartan: &[Vec<i32>], s: usize, beta: &[i32]) -> Vec<i32> {
    let pairing: i32 = beta.iter().zip(&cartan[s]).map(|(b, c)| b * c).sum();
    let mut out = beta.to_vec();
    out[s] -= pairing;
    out
}

/// Serialized form of a root system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemJson {
    pub r#type: String,
    pub rank: usize,
    pub simple_roots: Vec<Vec<i32>>,
    pub positive_roots: Vec<Vec<i32>>,
}
