//! Weyl group elements, twists and (twisted) conjugacy classes.
//!
//! An element is stored as the permutation it induces on the root indices of
//! its [`RootSystem`]. Everything else (length, descents, canonical word) is
//! derived from that permutation.

use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask_iter;
use crate::rootsys::{CartanType, Family, RootSystem};

#[derive(Clone)]
pub struct WeylElement {
    rs: Arc<RootSystem>,
    perm: Box<[u8]>,
    length: usize,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm && self.rs.cartan_type() == other.rs.cartan_type()
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.perm.hash(state);
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.word();
        if w.is_empty() {
            return f.write_str("e");
        }
        let letters: Vec<String> = w.iter().map(|i| format!("s{}", i + 1)).collect();
        f.write_str(&letters.join(""))
    }
}

fn count_length(npos: usize, perm: &[u8]) -> usize {
    perm[..npos].iter().filter(|&&b| b as usize >= npos).count()
}

impl WeylElement {
    fn from_perm(rs: Arc<RootSystem>, perm: Box<[u8]>) -> Self {
        let length = count_length(rs.npos(), &perm);
        WeylElement { rs, perm, length }
    }

    pub fn identity(rs: &Arc<RootSystem>) -> Self {
        let perm: Box<[u8]> = (0..rs.num_roots() as u8).collect();
        WeylElement {
            rs: rs.clone(),
            perm,
            length: 0,
        }
    }

    pub fn simple(rs: &Arc<RootSystem>, i: usize) -> Result<Self> {
        if i >= rs.rank() {
            return Err(Error::Domain(format!("simple index {i} out of range")));
        }
        Ok(Self::identity(rs).mul_simple_left(i))
    }

    /// Product of simple reflections, letters 0-based; need not be reduced.
    pub fn from_word(rs: &Arc<RootSystem>, word: &[usize]) -> Result<Self> {
        if let Some(&bad) = word.iter().find(|&&i| i >= rs.rank()) {
            return Err(Error::Domain(format!(
                "letter {bad} out of range for {}",
                rs.cartan_type()
            )));
        }
        let mut w = Self::identity(rs);
        for &i in word.iter().rev() {
            w = w.mul_simple_left(i);
        }
        Ok(w)
    }

    /// Type A only: builds the element from one-line notation `[w(1), ..., w(n)]`
    /// with 1-based values, where `s_i` is the transposition `(i, i+1)`.
    pub fn from_one_line(rs: &Arc<RootSystem>, one_line: &[usize]) -> Result<Self> {
        let n = rs.rank() + 1;
        if rs.cartan_type().family != Family::A || one_line.len() != n {
            return Err(Error::Domain(format!(
                "one-line notation of length {} does not fit {}",
                one_line.len(),
                rs.cartan_type()
            )));
        }
        let mut p: Vec<usize> = one_line.iter().map(|&v| v.wrapping_sub(1)).collect();
        let mut sorted = p.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::Domain(format!("{one_line:?} is not a permutation")));
        }
        // Strip right descents: w = w' s_i whenever w(i) > w(i+1).
        let mut letters = Vec::new();
        while let Some(i) = (0..n - 1).find(|&i| p[i] > p[i + 1]) {
            p.swap(i, i + 1);
            letters.push(i);
        }
        letters.reverse();
        Self::from_word(rs, &letters)
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn cartan_type(&self) -> CartanType {
        self.rs.cartan_type()
    }

    /// Image of every root index.
    pub fn root_perm(&self) -> &[u8] {
        &self.perm
    }

    #[inline]
    pub fn apply(&self, root: usize) -> usize {
        self.perm[root] as usize
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn same_system(&self, other: &WeylElement) -> bool {
        self.rs.cartan_type() == other.rs.cartan_type()
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &WeylElement) -> Result<WeylElement> {
        if !self.same_system(other) {
            return Err(Error::Domain(format!(
                "cannot compose elements of {} and {}",
                self.cartan_type(),
                other.cartan_type()
            )));
        }
        let perm: Box<[u8]> = other.perm.iter().map(|&b| self.perm[b as usize]).collect();
        Ok(Self::from_perm(self.rs.clone(), perm))
    }

    /// `self · s_i`.
    pub fn mul_simple_right(&self, i: usize) -> WeylElement {
        let refl = self.rs.reflection_table(i);
        let perm: Box<[u8]> = refl.iter().map(|&b| self.perm[b as usize]).collect();
        let length = if self.perm[i] as usize >= self.rs.npos() {
            self.length - 1
        } else {
            self.length + 1
        };
        WeylElement {
            rs: self.rs.clone(),
            perm,
            length,
        }
    }

    /// `s_i · self`.
    pub fn mul_simple_left(&self, i: usize) -> WeylElement {
        let refl = self.rs.reflection_table(i);
        let perm: Box<[u8]> = self.perm.iter().map(|&b| refl[b as usize]).collect();
        Self::from_perm(self.rs.clone(), perm)
    }

    pub fn inverse(&self) -> WeylElement {
        let mut inv = vec![0u8; self.perm.len()].into_boxed_slice();
        for (b, &img) in self.perm.iter().enumerate() {
            inv[img as usize] = b as u8;
        }
        WeylElement {
            rs: self.rs.clone(),
            perm: inv,
            length: self.length,
        }
    }

    /// `{s : l(w s) < l(w)}` as a bitmask.
    pub fn right_descents(&self) -> u32 {
        let npos = self.rs.npos();
        (0..self.rs.rank())
            .filter(|&i| self.perm[i] as usize >= npos)
            .fold(0, |m, i| m | (1 << i))
    }

    /// `{s : l(s w) < l(w)}` as a bitmask.
    pub fn left_descents(&self) -> u32 {
        let npos = self.rs.npos();
        let rank = self.rs.rank();
        let mut mask = 0;
        for &img in &self.perm[npos..] {
            if (img as usize) < rank {
                mask |= 1 << img;
            }
        }
        mask
    }

    /// Shortlex-minimal reduced word (0-based letters), found by repeatedly
    /// stripping the smallest left descent.
    pub fn word(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length);
        let mut cur = self.clone();
        loop {
            let d = cur.left_descents();
            if d == 0 {
                return out;
            }
            let i = d.trailing_zeros() as usize;
            out.push(i);
            cur = cur.mul_simple_left(i);
        }
    }

    /// Sort key for the (length, shortlex word) order.
    pub fn shortlex_key(&self) -> (usize, Vec<usize>) {
        (self.length, self.word())
    }

    /// `Inv(w) = {α ∈ R^+ : w^{-1}(α) ∈ R^-}` as sorted positive-root indices.
    pub fn inversion_set(&self) -> Vec<usize> {
        let npos = self.rs.npos();
        let mut out: Vec<usize> = self.perm[npos..]
            .iter()
            .map(|&b| b as usize)
            .filter(|&b| b < npos)
            .collect();
        out.sort_unstable();
        out
    }

    /// Set of simple reflections occurring in any reduced word.
    pub fn support(&self) -> u32 {
        self.word().iter().fold(0, |m, &i| m | (1 << i))
    }

    pub fn in_parabolic(&self, mask: u32) -> bool {
        self.support() & !mask == 0
    }

    /// Prefix order: `self ≤ other` iff `l(self^{-1} other) = l(other) - l(self)`.
    pub fn is_prefix_of(&self, other: &WeylElement) -> bool {
        if self.length > other.length || !self.same_system(other) {
            return false;
        }
        let q = &self.inverse() * other;
        q.length == other.length - self.length
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        perm_order(&self.perm)
    }

    /// Type A only: one-line notation with 1-based values.
    pub fn one_line(&self) -> Result<Vec<usize>> {
        if self.cartan_type().family != Family::A {
            return Err(Error::Domain("one-line notation needs type A".into()));
        }
        let n = self.rs.rank() + 1;
        let mut out: Vec<usize> = (0..n).collect();
        for i in self.word().into_iter().rev() {
            for v in out.iter_mut() {
                if *v == i {
                    *v = i + 1;
                } else if *v == i + 1 {
                    *v = i;
                }
            }
        }
        Ok(out.into_iter().map(|v| v + 1).collect())
    }
}

impl Mul for &WeylElement {
    type Output = WeylElement;

    /// Panics on mismatched root systems; use [`WeylElement::compose`] for a checked product.
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        self.compose(rhs).expect("mismatched root systems")
    }
}

pub(crate) fn perm_order(perm: &[u8]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut order = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        order = lcm(order, len);
    }
    order
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Longest element of the standard parabolic subgroup `W_I`.
pub fn longest_element(rs: &Arc<RootSystem>, mask: u32) -> WeylElement {
    let mut w = WeylElement::identity(rs);
    let mask = mask & rs.full_mask();
    loop {
        let missing = mask & !w.right_descents();
        if missing == 0 {
            return w;
        }
        w = w.mul_simple_right(missing.trailing_zeros() as usize);
    }
}

/// Unique minimal-length element of `W_I w W_J`.
pub fn min_double_coset_rep(left: u32, w: &WeylElement, right: u32) -> WeylElement {
    let mut cur = w.clone();
    loop {
        let l = cur.left_descents() & left;
        if l != 0 {
            cur = cur.mul_simple_left(l.trailing_zeros() as usize);
            continue;
        }
        let r = cur.right_descents() & right;
        if r != 0 {
            cur = cur.mul_simple_right(r.trailing_zeros() as usize);
            continue;
        }
        return cur;
    }
}

/// `l(sw) > l(w)` for all `s ∈ I` and `l(ws) > l(w)` for all `s ∈ J`.
pub fn is_min_rep(left: u32, w: &WeylElement, right: u32) -> bool {
    w.left_descents() & left == 0 && w.right_descents() & right == 0
}

/// All elements of `W`, sorted by (length, shortlex word).
pub fn all_elements(rs: &Arc<RootSystem>) -> Vec<WeylElement> {
    let table = ElementTable::new(rs);
    let mut elems = table.elems;
    elems.sort_by_cached_key(|w| w.shortlex_key());
    elems
}

/// Breadth-first enumeration of `W` with a lookup from root permutation to index.
pub(crate) struct ElementTable {
    pub elems: Vec<WeylElement>,
    pub index: FxHashMap<Box<[u8]>, usize>,
}

impl ElementTable {
    pub fn new(rs: &Arc<RootSystem>) -> Self {
        let e = WeylElement::identity(rs);
        let mut index = FxHashMap::default();
        index.insert(e.perm.clone(), 0);
        let mut elems = vec![e];
        let mut head = 0;
        while head < elems.len() {
            let cur = elems[head].clone();
            head += 1;
            for i in 0..rs.rank() {
                let next = cur.mul_simple_right(i);
                if !index.contains_key(&next.perm) {
                    index.insert(next.perm.clone(), elems.len());
                    elems.push(next);
                }
            }
        }
        ElementTable { elems, index }
    }

    pub fn lookup(&self, w: &WeylElement) -> usize {
        self.index[&w.perm]
    }
}

/// A diagram automorphism `δ`, acting on simple roots by a permutation that
/// preserves the Cartan matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Twist {
    cartan_type: CartanType,
    simple_perm: Vec<usize>,
    root_perm: Box<[u8]>,
    order: usize,
    label: String,
}

impl fmt::Debug for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Twist({}: {:?})", self.label, self.simple_perm)
    }
}

impl Twist {
    /// `simple_perm[i]` is the image of the 0-based simple index `i`.
    pub fn new(rs: &RootSystem, simple_perm: Vec<usize>) -> Result<Self> {
        let r = rs.rank();
        let mut sorted = simple_perm.clone();
        sorted.sort_unstable();
        if sorted != (0..r).collect::<Vec<_>>() {
            return Err(Error::Config(format!(
                "{simple_perm:?} is not a permutation of {r} simple roots"
            )));
        }
        let c = rs.cartan_matrix();
        for i in 0..r {
            for j in 0..r {
                if c[simple_perm[i]][simple_perm[j]] != c[i][j] {
                    return Err(Error::Config(format!(
                        "{simple_perm:?} does not preserve the Cartan matrix of {}",
                        rs.cartan_type()
                    )));
                }
            }
        }
        let root_perm: Box<[u8]> = rs
            .all_roots()
            .iter()
            .map(|beta| {
                let mut img = vec![0; r];
                for (i, &c) in beta.iter().enumerate() {
                    img[simple_perm[i]] = c;
                }
                rs.root_index(&img).expect("twist preserves roots") as u8
            })
            .collect();
        let order = perm_order(&simple_perm.iter().map(|&v| v as u8).collect::<Vec<_>>());
        let label = if order == 1 {
            "id".to_string()
        } else {
            simple_perm
                .iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        Ok(Twist {
            cartan_type: rs.cartan_type(),
            simple_perm,
            root_perm,
            order,
            label,
        })
    }

    pub fn identity(rs: &RootSystem) -> Self {
        Self::new(rs, (0..rs.rank()).collect()).expect("identity is a twist")
    }

    /// Named twists: `id`; `flip` (the order-2 diagram flip of `A_n`, or the
    /// swap of the two spin nodes of `D4`); `rot3` (order-3 rotation of `D4`);
    /// or an explicit 1-based image list such as `3,2,1`.
    pub fn named(rs: &RootSystem, name: &str) -> Result<Self> {
        let r = rs.rank();
        let fam = rs.cartan_type().family;
        let mut t = match name.trim() {
            "id" | "identity" => return Ok(Self::identity(rs)),
            "flip" => match fam {
                Family::A => Self::new(rs, (0..r).rev().collect())?,
                Family::D => Self::new(rs, vec![0, 1, 3, 2])?,
                _ => return Err(Error::Config(format!("{} has no diagram flip", rs.cartan_type()))),
            },
            "rot3" => match fam {
                // α1 -> α3 -> α4 -> α1 around the central node α2.
                Family::D => Self::new(rs, vec![2, 1, 3, 0])?,
                _ => return Err(Error::Config(format!("{} has no order-3 rotation", rs.cartan_type()))),
            },
            other => {
                let parsed: std::result::Result<Vec<usize>, _> =
                    other.split(',').map(|s| s.trim().parse::<usize>()).collect();
                match parsed {
                    Ok(v) if v.iter().all(|&x| x >= 1) => Self::new(rs, v.into_iter().map(|x| x - 1).collect())?,
                    _ => return Err(Error::Config(format!("unknown twist {other:?}"))),
                }
            }
        };
        if t.order > 1 && matches!(name.trim(), "flip" | "rot3") {
            t.label = name.trim().to_string();
        }
        Ok(t)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn simple_perm(&self) -> &[usize] {
        &self.simple_perm
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    #[inline]
    pub fn apply_root(&self, root: usize) -> usize {
        self.root_perm[root] as usize
    }

    pub fn apply_simple(&self, i: usize) -> usize {
        self.simple_perm[i]
    }

    pub fn apply_mask(&self, mask: u32) -> u32 {
        mask_iter(mask).fold(0, |m, i| m | (1 << self.simple_perm[i]))
    }

    /// `δ(w) = δ ∘ w ∘ δ^{-1}`; maps each letter `s_i` to `s_{δ(i)}`.
    pub fn apply(&self, w: &WeylElement) -> WeylElement {
        assert_eq!(w.cartan_type(), self.cartan_type, "twist applied to foreign element");
        if self.is_identity() {
            return w.clone();
        }
        let mut perm = vec![0u8; w.perm.len()].into_boxed_slice();
        for (b, &img) in w.perm.iter().enumerate() {
            perm[self.root_perm[b] as usize] = self.root_perm[img as usize];
        }
        WeylElement {
            rs: w.rs.clone(),
            perm,
            length: w.length,
        }
    }

    pub fn inverse(&self, rs: &RootSystem) -> Twist {
        let mut inv = vec![0; self.simple_perm.len()];
        for (i, &j) in self.simple_perm.iter().enumerate() {
            inv[j] = i;
        }
        let mut t = Twist::new(rs, inv).expect("inverse of a twist is a twist");
        if self.order == 2 {
            t.label = self.label.clone();
        }
        t
    }

    pub fn pow(&self, rs: &RootSystem, k: usize) -> Twist {
        let r = self.simple_perm.len();
        let mut p: Vec<usize> = (0..r).collect();
        for _ in 0..k % self.order {
            p = p.iter().map(|&i| self.simple_perm[i]).collect();
        }
        Twist::new(rs, p).expect("power of a twist is a twist")
    }

    /// Order of `δw` in the twisted group `⟨δ⟩ ⋉ W`, read off from its
    /// faithful action on roots.
    pub fn twisted_order(&self, w: &WeylElement) -> usize {
        let perm: Vec<u8> = w.perm.iter().map(|&b| self.root_perm[b as usize]).collect();
        perm_order(&perm)
    }
}

/// A `δ`-conjugacy class of `W`.
#[derive(Clone, Debug)]
pub struct TwistedClass {
    pub twist: Twist,
    pub class_id: usize,
    /// Sorted by (length, shortlex word); the first member is the class representative.
    pub members: Vec<WeylElement>,
    pub is_elliptic: bool,
    pub min_length: usize,
}

impl TwistedClass {
    pub fn representative(&self) -> &WeylElement {
        &self.members[0]
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, w: &WeylElement) -> bool {
        self.members.contains(w)
    }

    pub fn summary(&self) -> ClassSummary {
        ClassSummary {
            twist: self.twist.label().to_string(),
            class_id: self.class_id,
            size: self.size(),
            is_elliptic: self.is_elliptic,
            min_length: self.min_length,
            representative_word: self.representative().word().iter().map(|i| i + 1).collect(),
        }
    }
}

/// Serialized class row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub twist: String,
    pub class_id: usize,
    pub size: usize,
    pub is_elliptic: bool,
    pub min_length: usize,
    /// 1-based letters.
    pub representative_word: Vec<usize>,
}

/// All `δ`-stable subsets `I ⊊ S`, as masks.
pub fn twist_stable_proper_subsets(rs: &RootSystem, twist: &Twist) -> Vec<u32> {
    let full = rs.full_mask();
    (0..full).filter(|&m| twist.apply_mask(m) == m).collect()
}

/// Partition of `W` into `δ`-conjugacy classes `{δ(x) w x^{-1}}`, ordered by
/// (min length, size, shortlex representative).
pub fn twisted_conjugacy_classes(rs: &Arc<RootSystem>, twist: &Twist) -> Result<Vec<TwistedClass>> {
    if twist.cartan_type() != rs.cartan_type() {
        return Err(Error::Config(format!(
            "twist for {} used with {}",
            twist.cartan_type(),
            rs.cartan_type()
        )));
    }
    let table = ElementTable::new(rs);
    let n = table.elems.len();
    let mut class_of = vec![usize::MAX; n];
    let mut raw: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let cid = raw.len();
        let mut members = vec![start];
        class_of[start] = cid;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let w = &table.elems[x];
            for i in 0..rs.rank() {
                // δ(s) w s
                let y = w.mul_simple_right(i).mul_simple_left(twist.apply_simple(i));
                let yi = table.lookup(&y);
                if class_of[yi] == usize::MAX {
                    class_of[yi] = cid;
                    members.push(yi);
                    queue.push_back(yi);
                }
            }
        }
        raw.push(members);
    }

    let stable = twist_stable_proper_subsets(rs, twist);
    let mut classes: Vec<TwistedClass> = raw
        .into_iter()
        .map(|idxs| {
            let mut keyed: Vec<((usize, Vec<usize>), WeylElement)> = idxs
                .into_iter()
                .map(|i| (table.elems[i].shortlex_key(), table.elems[i].clone()))
                .collect();
            keyed.sort_by(|a, b| a.0.cmp(&b.0));
            let supports: Vec<u32> = keyed
                .iter()
                .map(|(k, _)| k.1.iter().fold(0, |m, &i| m | (1 << i)))
                .collect();
            let is_elliptic = stable.iter().all(|&m| supports.iter().all(|&sup| sup & !m != 0));
            let min_length = keyed[0].0 .0;
            TwistedClass {
                twist: twist.clone(),
                class_id: 0,
                members: keyed.into_iter().map(|(_, w)| w).collect(),
                is_elliptic,
                min_length,
            }
        })
        .collect();
    classes.sort_by_cached_key(|c| (c.min_length, c.size(), c.representative().word()));
    for (i, c) in classes.iter_mut().enumerate() {
        c.class_id = i;
    }
    Ok(classes)
}
