//! Positive braid monoid `B⁺(W)` in left-greedy (Garside) normal form.
//!
//! Simple braids are identified with elements of `W`. A sequence of simples
//! `x1 · x2 ⋯ xk` is in normal form when every adjacent pair `(u, v)` is
//! left-weighted, `L(v) ⊆ R(u)`, and no factor is the identity.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::weyl::{longest_element, Twist, WeylElement};

#[derive(Clone)]
pub struct BraidElement {
    rs: Arc<RootSystem>,
    factors: Vec<WeylElement>,
}

impl PartialEq for BraidElement {
    fn eq(&self, other: &Self) -> bool {
        self.rs.cartan_type() == other.rs.cartan_type() && self.factors == other.factors
    }
}

impl Eq for BraidElement {}

impl Hash for BraidElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.factors.hash(state);
    }
}

impl fmt::Debug for BraidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for BraidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| format!("({x})")).collect();
        f.write_str(&parts.join("·"))
    }
}

/// Makes `(u, v)` left-weighted by moving letters from the front of `v` to
/// the back of `u`. Returns whether anything moved.
fn fix_pair(u: &mut WeylElement, v: &mut WeylElement) -> bool {
    let mut moved = false;
    loop {
        let m = v.left_descents() & !u.right_descents();
        if m == 0 {
            return moved;
        }
        let s = m.trailing_zeros() as usize;
        *u = u.mul_simple_right(s);
        *v = v.mul_simple_left(s);
        moved = true;
    }
}

pub fn is_left_weighted(u: &WeylElement, v: &WeylElement) -> bool {
    v.left_descents() & !u.right_descents() == 0
}

/// Normal form of an arbitrary sequence of simples via the bubble pass:
/// sweep pairs right to left, fixing each, until nothing moves.
pub fn normalize(mut factors: Vec<WeylElement>) -> Vec<WeylElement> {
    factors.retain(|x| !x.is_identity());
    loop {
        let mut changed = false;
        for k in (1..factors.len()).rev() {
            let (head, tail) = factors.split_at_mut(k);
            changed |= fix_pair(&mut head[k - 1], &mut tail[0]);
        }
        if !changed {
            break;
        }
    }
    factors.retain(|x| !x.is_identity());
    factors
}

impl BraidElement {
    pub fn identity(rs: &Arc<RootSystem>) -> Self {
        BraidElement {
            rs: rs.clone(),
            factors: Vec::new(),
        }
    }

    /// The positive lift `w̲` of `w`.
    pub fn embed_simple(w: &WeylElement) -> Self {
        let factors = if w.is_identity() { Vec::new() } else { vec![w.clone()] };
        BraidElement {
            rs: w.root_system().clone(),
            factors,
        }
    }

    /// The Garside element `Δ = w̲₀`.
    pub fn delta(rs: &Arc<RootSystem>) -> Self {
        Self::embed_simple(&longest_element(rs, rs.full_mask()))
    }

    /// Product of the lifts of the simple reflections in `word` (0-based).
    pub fn from_word(rs: &Arc<RootSystem>, word: &[usize]) -> Result<Self> {
        let mut b = Self::identity(rs);
        for &i in word {
            b.push_simple(&WeylElement::simple(rs, i)?);
        }
        Ok(b)
    }

    /// Normal form of the product of an arbitrary list of simples.
    pub fn from_factors(rs: &Arc<RootSystem>, factors: Vec<WeylElement>) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|x| x.cartan_type() != rs.cartan_type()) {
            return Err(Error::Domain(format!(
                "factor of type {} in a braid of type {}",
                bad.cartan_type(),
                rs.cartan_type()
            )));
        }
        Ok(BraidElement {
            rs: rs.clone(),
            factors: normalize(factors),
        })
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn factors(&self) -> &[WeylElement] {
        &self.factors
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    /// Total number of Artin generators.
    pub fn letter_length(&self) -> usize {
        self.factors.iter().map(|x| x.length()).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_normal(&self) -> bool {
        self.factors.iter().all(|x| !x.is_identity()) && self.factors.windows(2).all(|p| is_left_weighted(&p[0], &p[1]))
    }

    /// Right-multiplies by a simple braid. By the domino rule one right-to-left
    /// pass restores normal form, and it can stop at the first untouched pair.
    pub fn push_simple(&mut self, x: &WeylElement) {
        if x.is_identity() {
            return;
        }
        self.factors.push(x.clone());
        let mut k = self.factors.len() - 1;
        while k > 0 {
            let (head, tail) = self.factors.split_at_mut(k);
            if !fix_pair(&mut head[k - 1], &mut tail[0]) {
                break;
            }
            k -= 1;
        }
        self.factors.retain(|x| !x.is_identity());
        debug_assert!(self.is_normal());
    }

    pub fn multiply(&self, other: &BraidElement) -> Result<BraidElement> {
        if self.rs.cartan_type() != other.rs.cartan_type() {
            return Err(Error::Domain(format!(
                "cannot multiply braids of {} and {}",
                self.rs.cartan_type(),
                other.rs.cartan_type()
            )));
        }
        let mut out = self.clone();
        for x in &other.factors {
            out.push_simple(x);
        }
        Ok(out)
    }

    /// First normal-form factor: the largest simple left divisor.
    pub fn alpha(&self) -> WeylElement {
        self.factors
            .first()
            .cloned()
            .unwrap_or_else(|| WeylElement::identity(&self.rs))
    }

    /// Image in `W`.
    pub fn project(&self) -> WeylElement {
        self.factors
            .iter()
            .fold(WeylElement::identity(&self.rs), |acc, x| &acc * x)
    }

    /// Applies a twist factor by factor; left-weightedness is preserved.
    pub fn twist(&self, twist: &Twist) -> BraidElement {
        BraidElement {
            rs: self.rs.clone(),
            factors: self.factors.iter().map(|x| twist.apply(x)).collect(),
        }
    }

    /// Factor words with 1-based letters.
    pub fn to_words(&self) -> Vec<Vec<usize>> {
        self.factors
            .iter()
            .map(|x| x.word().into_iter().map(|i| i + 1).collect())
            .collect()
    }
}

/// `u ≤ alpha(p)` in the prefix order, i.e. `u̲` left-divides `p`.
pub fn simple_left_divides(u: &WeylElement, p: &BraidElement) -> bool {
    u.is_prefix_of(&p.alpha())
}

/// `b · δ(b) · δ²(b) ⋯ δ^{d-1}(b)`.
pub fn twisted_power(b: &BraidElement, twist: &Twist, d: usize) -> Result<BraidElement> {
    if d == 0 {
        return Err(Error::Domain("twisted power needs d ≥ 1".into()));
    }
    Ok(TwistedPowers::new(b, twist).nth(d - 1).expect("infinite iterator"))
}

/// Yields the twisted powers for `d = 1, 2, 3, ...`, reusing each product.
pub struct TwistedPowers {
    twist: Twist,
    acc: BraidElement,
    next_piece: BraidElement,
}

impl TwistedPowers {
    pub fn new(b: &BraidElement, twist: &Twist) -> Self {
        TwistedPowers {
            twist: twist.clone(),
            acc: BraidElement::identity(b.root_system()),
            next_piece: b.clone(),
        }
    }
}

impl Iterator for TwistedPowers {
    type Item = BraidElement;

    fn next(&mut self) -> Option<BraidElement> {
        for x in &self.next_piece.factors {
            self.acc.push_simple(x);
        }
        self.next_piece = self.next_piece.twist(&self.twist);
        Some(self.acc.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn a2() -> Arc<RootSystem> {
        RootSystem::new(Family::A, 2).unwrap()
    }

    fn el(rs: &Arc<RootSystem>, word: &[usize]) -> WeylElement {
        WeylElement::from_word(rs, word).unwrap()
    }

    #[test]
    fn embed_examples() {
        let rs = a2();
        assert!(BraidElement::embed_simple(&WeylElement::identity(&rs)).is_identity());
        let d = BraidElement::delta(&rs);
        assert_eq!(d.canonical_length(), 1);
        assert_eq!(d.to_words(), vec![vec![1, 2, 1]]);
    }

    #[test]
    fn multiply_examples() {
        let rs = a2();
        let s1 = BraidElement::embed_simple(&el(&rs, &[0]));
        let s2 = BraidElement::embed_simple(&el(&rs, &[1]));
        assert_eq!(s1.multiply(&s2).unwrap().to_words(), vec![vec![1, 2]]);
        assert_eq!(s1.multiply(&s1).unwrap().to_words(), vec![vec![1], vec![1]]);
        let c = BraidElement::embed_simple(&el(&rs, &[0, 1]));
        let c3 = c.multiply(&c).unwrap().multiply(&c).unwrap();
        let w0 = longest_element(&rs, 0b11);
        assert_eq!(c3.factors(), &[w0.clone(), w0.clone()]);
        assert_eq!(c3.alpha(), w0);
    }

    #[test]
    fn alpha_and_divisibility_examples() {
        let rs = a2();
        assert!(BraidElement::identity(&rs).alpha().is_identity());
        let s1 = el(&rs, &[0]);
        let mut p = BraidElement::identity(&rs);
        for _ in 0..5 {
            p.push_simple(&s1);
        }
        assert_eq!(p.alpha(), s1);
        let w0 = longest_element(&rs, 0b11);
        assert!(!simple_left_divides(&w0, &p));
        assert!(simple_left_divides(&WeylElement::identity(&rs), &p));
        let c3 = twisted_power(&BraidElement::embed_simple(&el(&rs, &[0, 1])), &Twist::identity(&rs), 3).unwrap();
        assert!(simple_left_divides(&w0, &c3));
        assert_eq!(c3.canonical_length(), 2);
    }

    #[test]
    fn twisted_power_examples() {
        let rs = a2();
        let b = BraidElement::embed_simple(&el(&rs, &[0, 1]));
        assert_eq!(twisted_power(&b, &Twist::identity(&rs), 1).unwrap(), b);
        let flip = Twist::named(&rs, "flip").unwrap();
        let p = twisted_power(&b, &flip, 2).unwrap();
        assert_eq!(p.alpha(), el(&rs, &[0, 1]));
        assert_eq!(p.to_words(), vec![vec![1, 2], vec![2, 1]]);
        assert!(twisted_power(&b, &flip, 0).is_err());
    }

    #[test]
    fn push_agrees_with_bubble_normalization() {
        let rs = RootSystem::new(Family::B, 3).unwrap();
        let elems = crate::weyl::all_elements(&rs);
        let mut seq = Vec::new();
        let mut b = BraidElement::identity(&rs);
        for k in 0..40 {
            let x = elems[(k * 17 + 5) % elems.len()].clone();
            seq.push(x.clone());
            b.push_simple(&x);
            assert_eq!(b.factors(), normalize(seq.clone()).as_slice());
        }
    }

    #[test]
    fn projection_of_reduced_product() {
        let rs = a2();
        let u = el(&rs, &[0]);
        let v = el(&rs, &[1, 0]);
        let p = BraidElement::embed_simple(&u)
            .multiply(&BraidElement::embed_simple(&v))
            .unwrap();
        assert_eq!(p, BraidElement::embed_simple(&(&u * &v)));
        assert_eq!(p.project(), &u * &v);
    }
}
