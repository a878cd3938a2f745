//! Check suites over all certificates of `S_n`, producing [`Report`]s.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use weylbraid_core::dimledger::{DimLedger, Partition};
use weylbraid_core::goodrep::find_good_reps;
use weylbraid_core::weyl::twisted_conjugacy_classes;
use weylbraid_core::{GoodRepCertificate, Twist};

use crate::bruhat::type_a;
use crate::checks::{eta_check, full_flag_check, slice_check};
use crate::dl::analyze_x;
use crate::error::{Error, Result};
use crate::gf::Gf;
use crate::group::GlGroup;
use crate::lusztig::{analyze_y, analyze_y_tilde, orbits_by_jordan_type, GroupTables, YTildeSummary};
use crate::report::Report;
use crate::subgroups::{SubgroupSets, Twisting};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    /// Trivial stabilizers on `Ỹ` (`k = 1`) or on `X̃` under `G^F` (`k > 1`).
    Isotropy,
    /// Orbit structure and point count of `Ỹ`.
    Orbits,
    Eta,
    /// Stabilizers and canonical slices on the base variety `Y`.
    LOrbits,
    FullFlag,
    /// Point counts and stabilizers of `X` and `X̃`.
    Dl,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Isotropy,
        Suite::Orbits,
        Suite::Eta,
        Suite::LOrbits,
        Suite::FullFlag,
        Suite::Dl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Isotropy => "isotropy",
            Suite::Orbits => "orbits",
            Suite::Eta => "eta",
            Suite::LOrbits => "lorbits",
            Suite::FullFlag => "fullflag",
            Suite::Dl => "dl",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

/// Comma-separated suite names, or `all`.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    let mut out: Vec<Suite> = s.split(',').map(|x| x.trim().parse()).collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Every certificate of every conjugacy class of `S_n`, by class id and
/// then in (length, shortlex) order.
pub fn symmetric_certificates(n: usize) -> Result<Vec<GoodRepCertificate>> {
    let rs = type_a(n)?;
    let mut out = Vec::new();
    for class in twisted_conjugacy_classes(&rs, &Twist::identity(&rs))? {
        out.extend(find_good_reps(&class, None)?);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct FlagConfig {
    pub n: usize,
    pub q: usize,
    pub k: usize,
    pub suites: Vec<Suite>,
    pub cache_dir: Option<PathBuf>,
    pub timing: bool,
}

fn build_group(n: usize, field: &Gf, cache_dir: &Option<PathBuf>) -> Result<GlGroup> {
    match cache_dir {
        Some(dir) => GlGroup::cached(n, field, dir),
        None => GlGroup::new(n, field),
    }
}

fn finish(mut r: Report, start: Instant, timing: bool) -> Report {
    if timing {
        r.runtime_ms = Some(start.elapsed().as_millis() as u64);
    }
    r
}

fn y_tilde_report(suite: Suite, cfg: &FlagConfig, cert: &GoodRepCertificate, s: &YTildeSummary) -> Report {
    let mut r = Report::new(suite.name(), cfg.n, cfg.q, cfg.k, cert);
    r.counts.y_tilde = Some(s.points);
    r.orbit_count = Some(s.orbit_count);
    r.metric("via_double_coset", s.via_double_coset);
    r.metric("expected", s.expected);
    r.metric("nontrivial_stabilizers", s.nontrivial_stabilizers);
    r.metric("non_free_orbits", s.non_free_orbits);
    r.metric("bad_canonical_orbits", s.bad_canonical_orbits);
    if s.nontrivial_stabilizers > 0 {
        r.violation(
            "stabilizer",
            format!("{} points of Ỹ with nontrivial stabilizer", s.nontrivial_stabilizers),
        );
    }
    if suite == Suite::Orbits {
        if s.non_free_orbits > 0 {
            r.violation("free-orbit", format!("{} orbits are not free", s.non_free_orbits));
        }
        if s.points != s.expected || s.via_double_coset != s.expected {
            r.violation(
                "counting",
                format!(
                    "|Ỹ| = {}, |G/U_I|·|U_IẇU_I| = {}, |G|·q^l(w) = {}",
                    s.points, s.via_double_coset, s.expected
                ),
            );
        }
        let q_l = (cfg.q as u64).pow(cert.length as u32);
        if s.orbit_count != q_l {
            r.violation("orbit-count", format!("{} orbits, expected {q_l}", s.orbit_count));
        }
        if s.bad_canonical_orbits > 0 {
            r.violation(
                "canonical-representative",
                format!("{} orbits without exactly one (ẇv, ^wU_I)", s.bad_canonical_orbits),
            );
        }
    }
    r
}

/// Runs the requested suites on every certificate of `S_n` over `F_q`
/// (and `F_{q^k}` for the Deligne–Lusztig suites).
pub fn run_flagcheck(cfg: &FlagConfig) -> Result<Vec<Report>> {
    let field = Gf::of_order(cfg.q)?;
    let needs_group = cfg.suites.iter().any(|s| {
        matches!(s, Suite::Orbits | Suite::LOrbits | Suite::FullFlag) || (*s == Suite::Isotropy && cfg.k == 1)
    });
    if cfg.k == 0 {
        return Err(Error::Config("k must be at least 1".into()));
    }
    if cfg.k > 1 && cfg.suites.iter().any(|s| !matches!(s, Suite::Isotropy | Suite::Dl)) {
        return Err(Error::Config(
            "only the isotropy and dl suites run over extensions (k > 1)".into(),
        ));
    }
    let group = if needs_group {
        Some(build_group(cfg.n, &field, &cfg.cache_dir)?)
    } else {
        None
    };
    let tables = group.as_ref().map(GroupTables::new);
    let certs = symmetric_certificates(cfg.n)?;
    let mut reports = Vec::new();
    for cert in &certs {
        let sets = SubgroupSets::new(cert, &field, Twisting::Split)?;
        let mut y_tilde: Option<YTildeSummary> = None;
        for &suite in &cfg.suites {
            let start = Instant::now();
            let report = match suite {
                Suite::Isotropy | Suite::Orbits if cfg.k == 1 => {
                    let (g, t) = (group.as_ref().unwrap(), tables.as_ref().unwrap());
                    let s = y_tilde.get_or_insert_with(|| analyze_y_tilde(g, t, &sets));
                    y_tilde_report(suite, cfg, cert, s)
                }
                Suite::Isotropy | Suite::Dl => {
                    let s = analyze_x(cfg.n, cfg.q, cfg.k, cert)?;
                    let mut r = Report::new(suite.name(), cfg.n, cfg.q, cfg.k, cert);
                    r.counts.x = Some(s.x_points);
                    r.counts.x_tilde = Some(s.x_tilde_points);
                    r.orbit_count = Some(s.orbit_count);
                    r.skipped = s.skipped_points;
                    r.metric("flags", s.flags);
                    r.metric("rational_group_order", s.rational_group_order);
                    r.metric("nontrivial_stabilizers", s.nontrivial_stabilizers);
                    r.metric("max_base_stabilizer", s.max_base_stabilizer);
                    if s.nontrivial_stabilizers > 0 {
                        r.violation(
                            "stabilizer",
                            format!("{} points of X̃ with nontrivial stabilizer", s.nontrivial_stabilizers),
                        );
                    }
                    if suite == Suite::Dl && (s.hom_not_into_levi > 0 || s.hom_not_injective > 0) {
                        r.violation(
                            "bundle-homomorphism",
                            format!(
                                "{} images outside L_I^w, {} non-injective points",
                                s.hom_not_into_levi, s.hom_not_injective
                            ),
                        );
                    }
                    r
                }
                Suite::Orbits => unreachable!("rejected for k > 1"),
                Suite::Eta => {
                    let s = eta_check(&sets, &field)?;
                    let mut r = Report::new(suite.name(), cfg.n, cfg.q, cfg.k, cert);
                    r.metric("left_factor", s.left_factor);
                    r.metric("u_b", s.u_b);
                    r.metric("domain", s.domain);
                    r.metric("codomain", s.codomain);
                    r.metric("image", s.image);
                    if !s.is_bijection() {
                        r.violation(
                            "eta-bijection",
                            format!(
                                "{} collisions, {} missed, {} outside the target",
                                s.collisions, s.missed, s.outside
                            ),
                        );
                    }
                    r
                }
                Suite::LOrbits => {
                    let s = analyze_y(group.as_ref().unwrap(), tables.as_ref().unwrap(), &sets)?;
                    let mut r = Report::new(suite.name(), cfg.n, cfg.q, cfg.k, cert);
                    r.counts.y = Some(s.points);
                    r.orbit_count = Some(s.orbit_count);
                    r.skipped = s.skipped_points;
                    r.metric("lifted_points", s.lifted_points);
                    r.metric("lifted_orbits", s.lifted_orbits);
                    r.metric("skipped_orbits_meeting_slice", s.skipped_orbits_meeting_slice);
                    r.metric("max_stabilizer", s.max_stabilizer);
                    r.metric("l_w_order", s.l_w_order);
                    r.metric("l_orbits_on_u_w", s.l_orbits_on_u_w);
                    let hom = s.hom_not_into_levi + s.hom_not_injective + s.hom_not_multiplicative;
                    if hom > 0 || s.transported_lift_failures > 0 {
                        r.violation(
                            "bundle-homomorphism",
                            format!(
                                "{} images outside L_I^w, {} non-injective, {} non-multiplicative, {} bad lifts",
                                s.hom_not_into_levi,
                                s.hom_not_injective,
                                s.hom_not_multiplicative,
                                s.transported_lift_failures
                            ),
                        );
                    }
                    if s.slice_not_single_l_orbit > 0 || s.conjugation_leaves_u_w > 0 {
                        r.violation(
                            "slice-l-orbit",
                            format!(
                                "{} lifted orbits not meeting the slice in one L_I^w-orbit, {} conjugates outside U^w",
                                s.slice_not_single_l_orbit, s.conjugation_leaves_u_w
                            ),
                        );
                    }
                    r
                }
                Suite::FullFlag => {
                    let s = full_flag_check(group.as_ref().unwrap(), &sets)?;
                    let mut r = Report::new(suite.name(), cfg.n, cfg.q, cfg.k, cert);
                    r.counts.y = Some(s.points);
                    r.metric("bound", s.bound);
                    r.metric("max_stabilizer", s.max_stabilizer);
                    r.metric("component_factor", s.max_factor);
                    if s.max_factor > 4 {
                        r.violation(
                            "order-divisibility",
                            format!("stabilizer factor {} exceeds 4", s.max_factor),
                        );
                    }
                    if s.unipotent_part_outside > 0 {
                        r.violation(
                            "unipotent-part",
                            format!("{} stabilizer elements", s.unipotent_part_outside),
                        );
                    }
                    r
                }
            };
            reports.push(finish(report, start, cfg.timing));
        }
    }
    Ok(reports)
}

/// For every `λ ⊢ n`: the slice of the certificate of `Ψ(λ)` meets `O_λ`,
/// and the number of G-orbits on `Y^{O_λ}` stays below `|L_I^w|·q^{l(w)}`.
pub fn run_slicecheck(n: usize, q: usize, cache_dir: Option<PathBuf>, timing: bool) -> Result<Vec<Report>> {
    let field = Gf::of_order(q)?;
    let ledger = DimLedger::new(n)?;
    let group = build_group(n, &field, &cache_dir)?;
    let tables = GroupTables::new(&group);
    let mut out = Vec::new();
    for lambda in Partition::all(n) {
        let start = Instant::now();
        let class = ledger.psi_pairing(&lambda)?;
        let cert = ledger.certificate(class.class_id).ok_or_else(|| {
            Error::Core(weylbraid_core::Error::Dependency(format!(
                "no certificate for {lambda}"
            )))
        })?;
        let sets = SubgroupSets::new(cert, &field, Twisting::Split)?;
        let s = slice_check(&sets, &field, lambda.parts())?;
        let by_type: BTreeMap<Vec<usize>, u64> = orbits_by_jordan_type(&group, &tables, &sets)?.into_iter().collect();
        let orbits = by_type.get(lambda.parts()).copied().unwrap_or(0);
        let bound = sets.l_i_w(&field)?.len() as u64 * (q as u64).pow(cert.length as u32);
        let mut r = Report::new("slice", n, q, 1, cert);
        r.lambda = Some(lambda.to_string());
        r.orbit_count = Some(orbits);
        r.metric("slice", s.slice);
        r.metric("unipotent_in_slice", s.unipotent);
        r.metric("intersection", s.intersection);
        r.metric("orbit_bound", bound);
        if s.intersection == 0 {
            r.violation("slice-empty", format!("S_Br(b) misses O_{lambda}"));
        }
        if orbits > bound {
            r.violation("orbit-bound", format!("{orbits} orbits on Y^O exceed {bound}"));
        }
        out.push(finish(r, start, timing));
    }
    Ok(out)
}
