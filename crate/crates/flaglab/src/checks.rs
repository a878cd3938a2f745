//! Set-level checks on the subgroup sets of a certificate: the map `η_w`,
//! the slice `S_Br(b)`, and stabilizer orders on full-flag Lusztig varieties.

use rustc_hash::FxHashSet;

use crate::bruhat::{bruhat_perm, weyl_to_perm};
use crate::error::Result;
use crate::flags::FlagVariety;
use crate::gf::Gf;
use crate::group::GlGroup;
use crate::mat::Mat;
use crate::subgroups::SubgroupSets;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EtaSummary {
    pub left_factor: u64,
    pub u_b: u64,
    pub domain: u64,
    pub codomain: u64,
    pub image: u64,
    pub collisions: u64,
    pub missed: u64,
    pub outside: u64,
}

impl EtaSummary {
    pub fn is_bijection(&self) -> bool {
        self.collisions == 0 && self.missed == 0 && self.outside == 0
    }
}

/// `η_w(u, g) = u·g·ẇ·u^{-1}·ẇ^{-1}` on `^{w^{-1}}U_I × U^b`, compared with
/// `U·T^w·U_{(R^w)⁻}` element by element.
pub fn eta_check(sets: &SubgroupSets, f: &Gf) -> Result<EtaSummary> {
    let u_b = sets.u_b(f)?;
    let target: FxHashSet<Mat> = sets.eta_target(f).into_iter().collect();
    let mut image: FxHashSet<Mat> = FxHashSet::default();
    let mut collisions = 0;
    for u in &sets.winv_u_i {
        let right = sets
            .w_dot
            .mul(&u.inverse(f).expect("invertible"), f)
            .mul(&sets.w_dot_inv, f);
        for g in &u_b {
            if !image.insert(u.mul(g, f).mul(&right, f)) {
                collisions += 1;
            }
        }
    }
    Ok(EtaSummary {
        left_factor: sets.winv_u_i.len() as u64,
        u_b: u_b.len() as u64,
        domain: (sets.winv_u_i.len() * u_b.len()) as u64,
        codomain: target.len() as u64,
        image: image.len() as u64,
        collisions,
        missed: target.difference(&image).count() as u64,
        outside: image.difference(&target).count() as u64,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SliceSummary {
    pub slice: u64,
    pub unipotent: u64,
    pub intersection: u64,
}

/// Size of `S_Br(b)(F_q) ∩ O_λ(F_q)`, with membership by Jordan type.
pub fn slice_check(sets: &SubgroupSets, f: &Gf, lambda: &[usize]) -> Result<SliceSummary> {
    let slice = sets.slice(f)?;
    let mut s = SliceSummary {
        slice: slice.len() as u64,
        ..Default::default()
    };
    for g in &slice {
        if let Some(j) = g.jordan_type(f) {
            s.unipotent += 1;
            if j == lambda {
                s.intersection += 1;
            }
        }
    }
    Ok(s)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FullFlagSummary {
    pub points: u64,
    /// `|T^w(F_q)|·q^{|R^{w,+}|}`.
    pub bound: u64,
    pub max_stabilizer: u64,
    /// Largest `|Stab| / gcd(|Stab|, bound)` over all points.
    pub max_factor: u64,
    pub unipotent_part_outside: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Unipotent part of `b` in its Jordan decomposition, as a power of `b`.
fn unipotent_part(b: &Mat, f: &Gf) -> Mat {
    let m = b.order(f);
    let p = f.p() as u64;
    let mut pa = 1;
    while m % (pa * p) == 0 {
        pa *= p;
    }
    if pa == 1 {
        return Mat::identity(b.n());
    }
    let r = m / pa;
    // b_u = b^{r·r'} with r·r' ≡ 1 mod p^a.
    let r_inv = (1..pa).find(|x| (r * x) % pa == 1).expect("r is prime to p");
    b.pow(r * r_inv, f)
}

/// Stabilizers of all points `(g, B)` of the full-flag variety `Y_w(F_q)`
/// (relative position exactly `w`).
pub fn full_flag_check(group: &GlGroup, sets: &SubgroupSets) -> Result<FullFlagSummary> {
    let f = group.field();
    let n = group.n();
    let flags = FlagVariety::new(n, 0, f)?;
    let borel: Vec<Mat> = group
        .elements()
        .iter()
        .filter(|b| b.is_upper_triangular())
        .copied()
        .collect();
    let target = weyl_to_perm(&sets.roots.w)?;
    let cell: Vec<&Mat> = group
        .elements()
        .iter()
        .filter(|g| bruhat_perm(g, f).expect("invertible") == target)
        .collect();
    let q = f.order() as u64;
    let bound = sets.t_w.len() as u64 * q.pow(sets.roots.fixed_pos.len() as u32);
    let mut s = FullFlagSummary {
        bound,
        max_factor: 1,
        ..Default::default()
    };
    for c in 0..flags.len() as u32 {
        let x = flags.rep(c);
        let xinv = x.inverse(f).expect("invertible");
        let flag_borel: Vec<Mat> = borel.iter().map(|b| x.mul(b, f).mul(&xinv, f)).collect();
        for h in &cell {
            s.points += 1;
            let g = x.mul(h, f).mul(&xinv, f);
            let stab: Vec<&Mat> = flag_borel.iter().filter(|y| y.mul(&g, f) == g.mul(y, f)).collect();
            let order = stab.len() as u64;
            s.max_stabilizer = s.max_stabilizer.max(order);
            s.max_factor = s.max_factor.max(order / gcd(order, bound));
            for y in stab {
                if !xinv.mul(&unipotent_part(y, f), f).mul(x, f).is_upper_triangular() {
                    s.unipotent_part_outside += 1;
                }
            }
        }
    }
    Ok(s)
}
