//! Parabolic Lusztig varieties `Y_I(w)` and their coverings `Ỹ_I(w)` over
//! `F_q`, for `G = GL_n(F_q)` acting by `x·(g, P) = (xgx^{-1}, xPx^{-1})`.
//!
//! The covering is taken in the form
//! `Ỹ = {(g, g'·^wU_I) : g'^{-1}gg' ∈ ẇU_I}`, and a point of `Y` with
//! `P = x·P_I` lies in `Y` iff `x^{-1}gx ∈ P_IẇP_I`.

use rustc_hash::{FxHashMap, FxHashSet};
use weylbraid_core::weyl::min_double_coset_rep;

use crate::bruhat::{bruhat_perm, perm_to_weyl, type_a, weyl_to_perm};
use crate::error::Result;
use crate::flags::{in_parabolic, levi_part, FlagVariety};
use crate::group::{CosetPartition, GlGroup};
use crate::mat::Mat;
use crate::subgroups::SubgroupSets;

/// Left-multiplication and conjugation tables of the group generators.
pub struct GroupTables {
    pub left: Vec<Vec<u32>>,
    pub conj: Vec<Vec<u32>>,
}

impl GroupTables {
    pub fn new(group: &GlGroup) -> Self {
        GroupTables {
            left: group.generators().iter().map(|&s| group.left_table(s)).collect(),
            conj: group.generators().iter().map(|&s| group.conj_table(s)).collect(),
        }
    }
}

/// Orbits of a generated group action on `0..len` by breadth-first search.
/// Returns the orbit id of every point (ids in order of first point) and,
/// per point, the index of a word in the generators carrying the orbit's
/// first point to it, tracked through `step_transport`.
fn orbits<F, T>(len: usize, ngens: usize, mut step: F, mut step_transport: T, identity: u32) -> (Vec<u32>, Vec<u32>)
where
    F: FnMut(usize, u32) -> u32,
    T: FnMut(usize, u32) -> u32,
{
    let mut orbit_of = vec![u32::MAX; len];
    let mut transport = vec![identity; len];
    let mut next_id = 0;
    let mut queue = Vec::new();
    for start in 0..len as u32 {
        if orbit_of[start as usize] != u32::MAX {
            continue;
        }
        orbit_of[start as usize] = next_id;
        queue.clear();
        queue.push(start);
        let mut head = 0;
        while head < queue.len() {
            let pt = queue[head];
            head += 1;
            for s in 0..ngens {
                let nb = step(s, pt);
                if orbit_of[nb as usize] == u32::MAX {
                    orbit_of[nb as usize] = next_id;
                    transport[nb as usize] = step_transport(s, transport[pt as usize]);
                    queue.push(nb);
                }
            }
        }
        next_id += 1;
    }
    (orbit_of, transport)
}

fn orbit_sizes(orbit_of: &[u32]) -> Vec<u64> {
    let count = orbit_of.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut sizes = vec![0u64; count];
    for &o in orbit_of {
        sizes[o as usize] += 1;
    }
    sizes
}

/// Rational points of `Ỹ_I(w)` as pairs (group index of `g`, coset id).
pub struct YTilde {
    pub cosets: CosetPartition,
    pub points: Vec<(u32, u32)>,
    index: FxHashMap<u64, u32>,
}

impl YTilde {
    pub fn enumerate(group: &GlGroup, sets: &SubgroupSets) -> Self {
        let f = group.field();
        let cosets = CosetPartition::new(group, &sets.w_u_i);
        let wu: Vec<Mat> = sets.w_dot_u_i(f);
        let mut points = Vec::with_capacity(cosets.len() * wu.len());
        for (c, &r) in cosets.reps.iter().enumerate() {
            let rm = group.elem(r);
            let rinv = group.elem(group.inv(r));
            for y in &wu {
                let g = group
                    .index_of(&rm.mul(y, f).mul(rinv, f))
                    .expect("closed under products");
                points.push((g, c as u32));
            }
        }
        let ncos = cosets.len() as u64;
        let index = points
            .iter()
            .enumerate()
            .map(|(i, &(g, c))| (g as u64 * ncos + c as u64, i as u32))
            .collect();
        YTilde { cosets, points, index }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, g: u32, coset: u32) -> Option<u32> {
        self.index
            .get(&(g as u64 * self.cosets.len() as u64 + coset as u64))
            .copied()
    }
}

/// Outcome of the covering checks: counting identity, free orbits,
/// trivial stabilizers and canonical representatives.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct YTildeSummary {
    pub points: u64,
    /// `|G/U_I|·|U_IẇU_I|`.
    pub via_double_coset: u64,
    /// `|G|·q^{l(w)}`.
    pub expected: u64,
    pub orbit_count: u64,
    pub non_free_orbits: u64,
    pub nontrivial_stabilizers: u64,
    /// Orbits containing zero or several points `(ẇv, ^wU_I)`, `v ∈ U^w`.
    pub bad_canonical_orbits: u64,
}

pub fn analyze_y_tilde(group: &GlGroup, tables: &GroupTables, sets: &SubgroupSets) -> YTildeSummary {
    let f = group.field();
    let yt = YTilde::enumerate(group, sets);
    let identity = group.identity_index();

    let u_cosets = CosetPartition::new(group, &sets.u_i).len() as u64;
    let via_double_coset = u_cosets * sets.double_coset(f).len() as u64;
    let q = f.order() as u64;
    let expected = group.len() as u64 * q.pow(sets.roots.length() as u32);

    let (orbit_of, _) = orbits(
        yt.len(),
        tables.left.len(),
        |s, pt| {
            let (g, c) = yt.points[pt as usize];
            let g2 = tables.conj[s][g as usize];
            let c2 = yt.cosets.coset_of[tables.left[s][yt.cosets.reps[c as usize] as usize] as usize];
            yt.index_of(g2, c2).expect("the action preserves Ỹ")
        },
        |_, t| t,
        identity,
    );
    let sizes = orbit_sizes(&orbit_of);
    let non_free_orbits = sizes.iter().filter(|&&s| s != group.len() as u64).count() as u64;

    // Stabilizer of (g, r·C) is Z(g) ∩ r·C·r^{-1}.
    let nontrivial: Vec<&Mat> = sets.w_u_i.iter().filter(|h| !h.is_identity()).collect();
    let nontrivial_stabilizers = yt
        .points
        .iter()
        .filter(|&&(g, c)| {
            let r = yt.cosets.reps[c as usize];
            let (rm, rinv) = (group.elem(r), group.elem(group.inv(r)));
            let gm = group.elem(g);
            nontrivial.iter().any(|h| {
                let x = rm.mul(h, f).mul(rinv, f);
                x.mul(gm, f) == gm.mul(&x, f)
            })
        })
        .count() as u64;

    let base_coset = yt.cosets.coset_of[identity as usize];
    let mut canonical = vec![0u64; sizes.len()];
    for v in &sets.u_w {
        let g = group.index_of(&sets.w_dot.mul(v, f)).expect("invertible");
        let pt = yt.index_of(g, base_coset).expect("ẇv lies in ẇU_I");
        canonical[orbit_of[pt as usize] as usize] += 1;
    }
    let bad_canonical_orbits = canonical.iter().filter(|&&c| c != 1).count() as u64;

    YTildeSummary {
        points: yt.len() as u64,
        via_double_coset,
        expected,
        orbit_count: sizes.len() as u64,
        non_free_orbits,
        nontrivial_stabilizers,
        bad_canonical_orbits,
    }
}

/// Rational points of `Y_I(w)` as pairs (group index of `g`, flag index).
pub struct YVariety {
    pub flags: FlagVariety,
    /// Flag index of `g·P_I` for every group element.
    pub flag_of: Vec<u32>,
    /// Group index of each flag's representative.
    pub rep_index: Vec<u32>,
    pub points: Vec<(u32, u32)>,
    index: FxHashMap<u64, u32>,
}

impl YVariety {
    pub fn enumerate(group: &GlGroup, sets: &SubgroupSets) -> Result<Self> {
        let f = group.field();
        let n = group.n();
        let mask = sets.roots.mask;
        let flags = FlagVariety::new(n, mask, f)?;
        let flag_of: Vec<u32> = group.elements().iter().map(|g| flags.index_of_matrix(g, f)).collect();
        let rep_index: Vec<u32> = (0..flags.len() as u32)
            .map(|c| group.index_of(flags.rep(c)).expect("representatives are invertible"))
            .collect();

        let rs = type_a(n)?;
        let target = weyl_to_perm(&sets.roots.w)?;
        let mut memo: FxHashMap<Vec<usize>, bool> = FxHashMap::default();
        let mut cell = Vec::new();
        for (i, g) in group.elements().iter().enumerate() {
            let perm = bruhat_perm(g, f).expect("invertible");
            let hit = match memo.get(&perm) {
                Some(&b) => b,
                None => {
                    let w = perm_to_weyl(&rs, &perm)?;
                    let b = weyl_to_perm(&min_double_coset_rep(mask, &w, mask))? == target;
                    memo.insert(perm, b);
                    b
                }
            };
            if hit {
                cell.push(i as u32);
            }
        }

        let mut points = Vec::with_capacity(flags.len() * cell.len());
        for c in 0..flags.len() as u32 {
            let x = rep_index[c as usize];
            let xinv = group.inv(x);
            for &h in &cell {
                points.push((group.mul(group.mul(x, h), xinv), c));
            }
        }
        let nflags = flags.len() as u64;
        let index = points
            .iter()
            .enumerate()
            .map(|(i, &(g, c))| (g as u64 * nflags + c as u64, i as u32))
            .collect();
        Ok(YVariety {
            flags,
            flag_of,
            rep_index,
            points,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, g: u32, flag: u32) -> Option<u32> {
        self.index
            .get(&(g as u64 * self.flags.len() as u64 + flag as u64))
            .copied()
    }
}

/// G-orbits on `Y` with transport elements: point `i` equals
/// `transport[i]·(orbit representative)`.
pub struct YOrbits {
    pub orbit_of: Vec<u32>,
    pub transport: Vec<u32>,
    pub reps: Vec<u32>,
}

impl YOrbits {
    pub fn new(group: &GlGroup, tables: &GroupTables, y: &YVariety) -> Self {
        let (orbit_of, transport) = orbits(
            y.len(),
            tables.left.len(),
            |s, pt| {
                let (g, c) = y.points[pt as usize];
                let g2 = tables.conj[s][g as usize];
                let c2 = y.flag_of[tables.left[s][y.rep_index[c as usize] as usize] as usize];
                y.index_of(g2, c2).expect("the action preserves Y")
            },
            |s, t| tables.left[s][t as usize],
            group.identity_index(),
        );
        let mut reps = Vec::new();
        for (i, &o) in orbit_of.iter().enumerate() {
            if o as usize == reps.len() {
                reps.push(i as u32);
            }
        }
        YOrbits {
            orbit_of,
            transport,
            reps,
        }
    }

    pub fn count(&self) -> usize {
        self.reps.len()
    }
}

/// Outcome of the base-variety checks: the bundle homomorphism on
/// stabilizers and the canonical slice meeting each orbit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct YSummary {
    pub points: u64,
    pub orbit_count: u64,
    pub lifted_orbits: u64,
    pub lifted_points: u64,
    pub skipped_points: u64,
    /// Skipped orbits that nevertheless meet `{(ẇv, P_I)}`.
    pub skipped_orbits_meeting_slice: u64,
    pub transported_lift_failures: u64,
    pub hom_not_into_levi: u64,
    pub hom_not_injective: u64,
    pub hom_not_multiplicative: u64,
    pub max_stabilizer: u64,
    pub slice_not_single_l_orbit: u64,
    pub conjugation_leaves_u_w: u64,
    /// `|L_I^w(F_q) \ U^w(F_q)|` under conjugation.
    pub l_orbits_on_u_w: u64,
    pub l_w_order: u64,
}

pub fn analyze_y(group: &GlGroup, tables: &GroupTables, sets: &SubgroupSets) -> Result<YSummary> {
    let f = group.field();
    let blk = &sets.roots.blk;
    let y = YVariety::enumerate(group, sets)?;
    let orbs = YOrbits::new(group, tables, &y);
    let wu: FxHashSet<Mat> = sets.w_dot_u_i(f).into_iter().collect();
    let parabolic: Vec<Mat> = group
        .elements()
        .iter()
        .filter(|p| in_parabolic(p, blk))
        .copied()
        .collect();
    let l_w = sets.l_i_w(f)?;
    let l_w_set: FxHashSet<Mat> = l_w.iter().copied().collect();
    let mut s = YSummary {
        points: y.len() as u64,
        orbit_count: orbs.count() as u64,
        l_w_order: l_w.len() as u64,
        ..Default::default()
    };

    // One lift per orbit; the stabilizer of t·y is t·Stab(y)·t^{-1} and the
    // Levi component of g'^{-1}xg' is unchanged when (x, g') is replaced by
    // (t x t^{-1}, t g'), so the homomorphism is examined once per orbit.
    let mut lifts: Vec<Option<Mat>> = Vec::with_capacity(orbs.count());
    for &rep in &orbs.reps {
        let (g, c) = y.points[rep as usize];
        let x = y.flags.rep(c);
        let gm = group.elem(g);
        let lift = parabolic.iter().find_map(|p| {
            let gp = x.mul(p, f);
            let gpinv = gp.inverse(f).expect("invertible");
            wu.contains(&gpinv.mul(gm, f).mul(&gp, f)).then_some(gp)
        });
        if let Some(gp) = lift {
            s.lifted_orbits += 1;
            let gpinv = gp.inverse(f).expect("invertible");
            let h = gpinv.mul(gm, f).mul(&gp, f);
            let stab: Vec<Mat> = parabolic
                .iter()
                .filter(|p| p.mul(&h, f) == h.mul(p, f))
                .copied()
                .collect();
            s.max_stabilizer = s.max_stabilizer.max(stab.len() as u64);
            let images: Vec<Mat> = stab.iter().map(|p| levi_part(p, blk)).collect();
            s.hom_not_into_levi += images.iter().filter(|l| !l_w_set.contains(l)).count() as u64;
            let distinct: FxHashSet<&Mat> = images.iter().collect();
            if distinct.len() != images.len() {
                s.hom_not_injective += 1;
            }
            let sample = stab.len().min(24);
            for i in 0..sample {
                for j in 0..sample {
                    let lhs = levi_part(&stab[i].mul(&stab[j], f), blk);
                    if lhs != images[i].mul(&images[j], f) {
                        s.hom_not_multiplicative += 1;
                    }
                }
            }
        }
        lifts.push(lift);
    }

    for (pt, &(g, _)) in y.points.iter().enumerate() {
        let o = orbs.orbit_of[pt] as usize;
        match &lifts[o] {
            None => s.skipped_points += 1,
            Some(g0) => {
                s.lifted_points += 1;
                let gp = group.elem(orbs.transport[pt]).mul(g0, f);
                let gpinv = gp.inverse(f).expect("invertible");
                if !wu.contains(&gpinv.mul(group.elem(g), f).mul(&gp, f)) {
                    s.transported_lift_failures += 1;
                }
            }
        }
    }

    // Canonical slice {(ẇv, P_I)} grouped by orbit.
    let base_flag = y.flag_of[group.identity_index() as usize];
    let mut slice_by_orbit: Vec<Vec<Mat>> = vec![Vec::new(); orbs.count()];
    for v in &sets.u_w {
        let g = group.index_of(&sets.w_dot.mul(v, f)).expect("invertible");
        let pt = y.index_of(g, base_flag).expect("ẇv lies in Y");
        slice_by_orbit[orbs.orbit_of[pt as usize] as usize].push(*v);
    }
    let u_w_set: FxHashSet<Mat> = sets.u_w.iter().copied().collect();
    let l_w_inv: Vec<Mat> = l_w.iter().map(|l| l.inverse(f).expect("invertible")).collect();
    for v in &sets.u_w {
        for (l, li) in l_w.iter().zip(&l_w_inv) {
            if !u_w_set.contains(&l.mul(v, f).mul(li, f)) {
                s.conjugation_leaves_u_w += 1;
            }
        }
    }
    for (o, z) in slice_by_orbit.iter().enumerate() {
        if lifts[o].is_none() {
            if !z.is_empty() {
                s.skipped_orbits_meeting_slice += 1;
            }
            continue;
        }
        let Some(v0) = z.first() else {
            s.slice_not_single_l_orbit += 1;
            continue;
        };
        let l_orbit: FxHashSet<Mat> = l_w
            .iter()
            .zip(&l_w_inv)
            .map(|(l, li)| l.mul(v0, f).mul(li, f))
            .collect();
        let z_set: FxHashSet<Mat> = z.iter().copied().collect();
        if l_orbit != z_set {
            s.slice_not_single_l_orbit += 1;
        }
    }

    let mut seen: FxHashSet<Mat> = FxHashSet::default();
    for v in &sets.u_w {
        if seen.insert(*v) {
            s.l_orbits_on_u_w += 1;
            for (l, li) in l_w.iter().zip(&l_w_inv) {
                seen.insert(l.mul(v, f).mul(li, f));
            }
        }
    }
    Ok(s)
}

/// Number of G-orbits on `Y` with unipotent group component, by Jordan type.
pub fn orbits_by_jordan_type(
    group: &GlGroup,
    tables: &GroupTables,
    sets: &SubgroupSets,
) -> Result<Vec<(Vec<usize>, u64)>> {
    let f = group.field();
    let y = YVariety::enumerate(group, sets)?;
    let orbs = YOrbits::new(group, tables, &y);
    let mut counts: std::collections::BTreeMap<Vec<usize>, u64> = Default::default();
    for &rep in &orbs.reps {
        let (g, _) = y.points[rep as usize];
        if let Some(j) = group.elem(g).jordan_type(f) {
            *counts.entry(j).or_default() += 1;
        }
    }
    Ok(counts.into_iter().collect())
}
