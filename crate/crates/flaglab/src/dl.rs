//! Parabolic Deligne–Lusztig varieties `X_I(w)` over `F_{q^k}` and their
//! coverings `X̃_I(w) = {g'U_I : g'^{-1}F(g') ∈ U_IẇU_I}` with `F` the
//! `q`-power Frobenius, under the action of `G^F = GL_n(F_q)`.
//!
//! Points of `X̃` over a flag `P = x·P_I` are the cosets `x·l·U_I`,
//! `l ∈ L_I(F_{q^k})`, so `G(F_{q^k})` itself is never enumerated.

use rustc_hash::{FxHashMap, FxHashSet};
use weylbraid_core::weyl::min_double_coset_rep;
use weylbraid_core::GoodRepCertificate;

use crate::bruhat::{bruhat_perm, perm_to_weyl, type_a, weyl_to_perm};
use crate::error::{Error, Result};
use crate::flags::{in_unipotent_radical, levi_part, FlagVariety};
use crate::gf::Gf;
use crate::group::GlGroup;
use crate::mat::Mat;
use crate::subgroups::{SubgroupSets, Twisting};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct XSummary {
    pub flags: u64,
    pub x_points: u64,
    pub x_tilde_points: u64,
    pub rational_group_order: u64,
    pub orbit_count: u64,
    pub nontrivial_stabilizers: u64,
    /// Points of `X` with no point of `X̃` above them.
    pub skipped_points: u64,
    pub hom_not_into_levi: u64,
    pub hom_not_injective: u64,
    pub max_base_stabilizer: u64,
}

/// Enumerates `X`, `X̃` and checks stabilizers for a split certificate.
/// `q` must be prime so that `F_q` sits in `F_{q^k}` as the constants.
pub fn analyze_x(n: usize, q: usize, k: usize, cert: &GoodRepCertificate) -> Result<XSummary> {
    let base = Gf::of_order(q)?;
    if base.degree() != 1 {
        return Err(Error::Config(format!("Deligne–Lusztig scans need a prime q, got {q}")));
    }
    if !(1..=2).contains(&k) {
        return Err(Error::Config(format!("extension degree k = {k} outside 1..=2")));
    }
    let field = Gf::new(base.p(), k)?;
    let f = &field;
    let frob = |m: &Mat| m.frobenius(f, 1);
    let rational = GlGroup::new(n, &base)?;
    let sets = SubgroupSets::new(cert, f, Twisting::Frobenius(1))?;
    if sets.n() != n {
        return Err(Error::Config(format!("certificate is not for S_{n}")));
    }
    let blk = sets.roots.blk.clone();
    let mask = sets.roots.mask;
    let flags = FlagVariety::new(n, mask, f)?;
    let levi = sets.l_i(f)?;
    let levi_index: FxHashMap<Mat, u32> = levi.iter().enumerate().map(|(i, l)| (*l, i as u32)).collect();
    let levi_inv: Vec<Mat> = levi.iter().map(|l| l.inverse(f).expect("invertible")).collect();
    let levi_frob: Vec<Mat> = levi.iter().map(frob).collect();
    let double_coset: FxHashSet<Mat> = sets.double_coset(f).into_iter().collect();

    let rs = type_a(n)?;
    let target = weyl_to_perm(&sets.roots.w)?;
    let mut s = XSummary {
        flags: flags.len() as u64,
        rational_group_order: rational.len() as u64,
        ..Default::default()
    };

    // X̃ points as (flag, Levi index).
    let mut x_points = Vec::new();
    let mut tilde: Vec<(u32, u32)> = Vec::new();
    for c in 0..flags.len() as u32 {
        let x = flags.rep(c);
        let h = x.inverse(f).expect("invertible").mul(&frob(x), f);
        let w = perm_to_weyl(&rs, &bruhat_perm(&h, f).expect("invertible"))?;
        if weyl_to_perm(&min_double_coset_rep(mask, &w, mask))? != target {
            continue;
        }
        x_points.push(c);
        let before = tilde.len();
        for (i, (li, lf)) in levi_inv.iter().zip(&levi_frob).enumerate() {
            if double_coset.contains(&li.mul(&h, f).mul(lf, f)) {
                tilde.push((c, i as u32));
            }
        }
        if tilde.len() == before {
            s.skipped_points += 1;
        }
    }
    s.x_points = x_points.len() as u64;
    s.x_tilde_points = tilde.len() as u64;

    let g_f: Vec<Mat> = rational.elements().to_vec();
    let cover = |c: u32, l: u32| flags.rep(c).mul(&levi[l as usize], f);
    for &(c, l) in &tilde {
        let gp = cover(c, l);
        let gpinv = gp.inverse(f).expect("invertible");
        if g_f
            .iter()
            .any(|y| !y.is_identity() && in_unipotent_radical(&gpinv.mul(y, f).mul(&gp, f), &blk))
        {
            s.nontrivial_stabilizers += 1;
        }
    }

    // G^F-orbits on X̃.
    let index: FxHashMap<(u32, u32), u32> = tilde.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    let gens: Vec<Mat> = rational.generators().iter().map(|&g| *rational.elem(g)).collect();
    let mut orbit_of = vec![u32::MAX; tilde.len()];
    let mut orbit_count = 0u32;
    for start in 0..tilde.len() {
        if orbit_of[start] != u32::MAX {
            continue;
        }
        orbit_of[start] = orbit_count;
        let mut stack = vec![start];
        while let Some(pt) = stack.pop() {
            let (c, l) = tilde[pt];
            let gp = cover(c, l);
            for y in &gens {
                let g2 = y.mul(&gp, f);
                let c2 = flags.index_of_matrix(&g2, f);
                let l2 = levi_part(&flags.rep(c2).inverse(f).expect("invertible").mul(&g2, f), &blk);
                let nb = index[&(c2, levi_index[&l2])] as usize;
                if orbit_of[nb] == u32::MAX {
                    orbit_of[nb] = orbit_count;
                    stack.push(nb);
                }
            }
        }
        orbit_count += 1;
    }
    s.orbit_count = orbit_count as u64;

    // Base points with a lift: x ↦ Levi part of g'^{-1}xg' must land in
    // L_I^w = {l : ẇ^{-1}lẇ = F(l)} injectively.
    let mut first_lift: FxHashMap<u32, u32> = FxHashMap::default();
    for &(c, l) in &tilde {
        first_lift.entry(c).or_insert(l);
    }
    for &c in &x_points {
        let Some(&l) = first_lift.get(&c) else { continue };
        let gp = cover(c, l);
        let gpinv = gp.inverse(f).expect("invertible");
        let images: Vec<Mat> = g_f
            .iter()
            .filter(|y| flags.index_of_matrix(&y.mul(flags.rep(c), f), f) == c)
            .map(|y| levi_part(&gpinv.mul(y, f).mul(&gp, f), &blk))
            .collect();
        s.max_base_stabilizer = s.max_base_stabilizer.max(images.len() as u64);
        s.hom_not_into_levi += images.iter().filter(|l| !sets.in_l_w(l, f)).count() as u64;
        let distinct: FxHashSet<&Mat> = images.iter().collect();
        if distinct.len() != images.len() {
            s.hom_not_injective += 1;
        }
    }
    Ok(s)
}
