use flaglab::checks::{eta_check, full_flag_check, slice_check};
use flaglab::dl::analyze_x;
use flaglab::gf::Gf;
use flaglab::group::{gl_order, GlGroup};
use flaglab::lusztig::{analyze_y, analyze_y_tilde, GroupTables, YTilde, YVariety};
use flaglab::subgroups::{SubgroupSets, Twisting};
use flaglab::suites::{parse_suites, run_flagcheck, run_slicecheck, symmetric_certificates, FlagConfig, Suite};
use flaglab::Error;
use weylbraid_core::GoodRepCertificate;

/// The certificate of `S_n` whose representative has the given 0-based word.
fn cert(n: usize, word: &[usize]) -> GoodRepCertificate {
    symmetric_certificates(n)
        .unwrap()
        .into_iter()
        .find(|c| c.w.word() == word)
        .unwrap_or_else(|| panic!("no certificate with word {word:?} in S_{n}"))
}

struct Setup {
    f: Gf,
    group: GlGroup,
    tables: GroupTables,
}

fn setup(n: usize, q: usize) -> Setup {
    let f = Gf::of_order(q).unwrap();
    let group = GlGroup::new(n, &f).unwrap();
    let tables = GroupTables::new(&group);
    Setup { f, group, tables }
}

#[test]
fn coxeter_gl2_over_f2() {
    let s = setup(2, 2);
    let c = cert(2, &[0]);
    assert_eq!(c.parabolic_index, 0);
    let sets = SubgroupSets::new(&c, &s.f, Twisting::Split).unwrap();
    assert_eq!(YTilde::enumerate(&s.group, &sets).len(), 12);
    assert_eq!(YVariety::enumerate(&s.group, &sets).unwrap().len(), 12);
    let t = analyze_y_tilde(&s.group, &s.tables, &sets);
    assert_eq!(
        (t.points, t.via_double_coset, t.expected, t.orbit_count),
        (12, 12, 12, 2)
    );
    assert_eq!(t.nontrivial_stabilizers + t.non_free_orbits + t.bad_canonical_orbits, 0);

    let y = analyze_y(&s.group, &s.tables, &sets).unwrap();
    assert_eq!(y.l_w_order, 1);
    assert_eq!(y.skipped_points, 0);
    assert_eq!(y.slice_not_single_l_orbit, 0);
    assert_eq!(y.max_stabilizer, 1);

    let ff = full_flag_check(&s.group, &sets).unwrap();
    assert_eq!(ff.points, 12);
    assert_eq!(ff.max_stabilizer, 1);
}

#[test]
fn identity_class_gl3_over_f2() {
    let s = setup(3, 2);
    let c = cert(3, &[]);
    assert_eq!(c.parabolic_index, 0b11);
    let sets = SubgroupSets::new(&c, &s.f, Twisting::Split).unwrap();
    let t = analyze_y_tilde(&s.group, &s.tables, &sets);
    assert_eq!(
        (t.points, t.via_double_coset, t.expected, t.orbit_count),
        (168, 168, 168, 1)
    );
    // Y is all of G over the single parabolic P = G; only g = 1 lifts to Ỹ,
    // and its stabilizer is the whole group, matching L_S^w = G.
    let y = analyze_y(&s.group, &s.tables, &sets).unwrap();
    assert_eq!(y.points, 168);
    assert_eq!((y.lifted_points, y.skipped_points), (1, 167));
    assert_eq!(y.max_stabilizer, 168);
    assert_eq!(y.l_w_order, 168);
    assert_eq!(y.hom_not_injective + y.hom_not_into_levi, 0);
    // Y_e over the full flag variety: the stabilizer of (1, B₀) is B₀.
    let ff = full_flag_check(&s.group, &sets).unwrap();
    assert_eq!(ff.max_stabilizer, 8);
    assert_eq!(ff.bound, 8);
}

#[test]
fn longest_element_gl3_over_f2() {
    let s = setup(3, 2);
    let c = cert(3, &[0, 1, 0]);
    assert_eq!(c.parabolic_index, 0);
    let sets = SubgroupSets::new(&c, &s.f, Twisting::Split).unwrap();
    let t = analyze_y_tilde(&s.group, &s.tables, &sets);
    assert_eq!(t.orbit_count, 8);
    assert_eq!(t.points, 168 * 8);
    assert_eq!(t.nontrivial_stabilizers, 0);
    // T^w(F_2) is trivial, so the domain of η is U^b = U with 8 points.
    let eta = eta_check(&sets, &s.f).unwrap();
    assert!(eta.is_bijection());
    assert_eq!((eta.domain, eta.codomain), (8, 8));
    let ff = full_flag_check(&s.group, &sets).unwrap();
    assert_eq!(ff.max_factor, 1);
}

#[test]
fn coxeter_stabilizers_over_f2_are_trivial() {
    let s = setup(3, 2);
    let sets = SubgroupSets::new(&cert(3, &[0, 1]), &s.f, Twisting::Split).unwrap();
    let t = analyze_y_tilde(&s.group, &s.tables, &sets);
    assert_eq!(t.nontrivial_stabilizers, 0);
    assert_eq!(t.orbit_count, 4);
}

#[test]
fn eta_examples_for_gl2() {
    for (q, size) in [(2, 2), (3, 6)] {
        let f = Gf::of_order(q).unwrap();
        let sets = SubgroupSets::new(&cert(2, &[0]), &f, Twisting::Split).unwrap();
        let e = eta_check(&sets, &f).unwrap();
        assert_eq!((e.left_factor, e.domain, e.codomain, e.image), (1, size, size, size));
        assert!(e.is_bijection());
    }
}

#[test]
fn longest_element_l_orbits_over_f3() {
    let s = setup(3, 3);
    let sets = SubgroupSets::new(&cert(3, &[0, 1, 0]), &s.f, Twisting::Split).unwrap();
    assert_eq!(sets.t_w.len(), 4);
    assert_eq!(sets.u_w.len(), 27);
    let y = analyze_y(&s.group, &s.tables, &sets).unwrap();
    assert_eq!(y.l_w_order, 4);
    assert_eq!(y.lifted_orbits, y.l_orbits_on_u_w);
    assert_eq!(y.slice_not_single_l_orbit + y.conjugation_leaves_u_w, 0);
}

#[test]
fn deligne_lusztig_examples() {
    let cox = cert(2, &[0]);
    let x = analyze_x(2, 2, 1, &cox).unwrap();
    assert_eq!((x.x_points, x.x_tilde_points), (0, 0));
    let x = analyze_x(2, 2, 2, &cox).unwrap();
    assert_eq!(x.flags, 5);
    assert_eq!(x.x_points, 2);
    assert_eq!(x.rational_group_order, 6);
    assert_eq!(x.nontrivial_stabilizers, 0);
    let x = analyze_x(2, 2, 1, &cert(2, &[])).unwrap();
    assert_eq!((x.flags, x.x_points), (1, 1));
    assert!(matches!(analyze_x(2, 4, 1, &cox), Err(Error::Config(_))));
}

#[test]
fn slice_examples() {
    let f = Gf::of_order(2).unwrap();
    let sets = SubgroupSets::new(&cert(2, &[0]), &f, Twisting::Split).unwrap();
    assert!(slice_check(&sets, &f, &[2]).unwrap().intersection > 0);
    let sets = SubgroupSets::new(&cert(3, &[]), &f, Twisting::Split).unwrap();
    // U^b is the big cell U·T·U⁻ here; its only unipotent class-(1,1,1) point is 1.
    let s = slice_check(&sets, &f, &[1, 1, 1]).unwrap();
    assert_eq!((s.slice, s.intersection), (64, 1));
    let sets = SubgroupSets::new(&cert(3, &[0, 1]), &f, Twisting::Split).unwrap();
    assert!(slice_check(&sets, &f, &[3]).unwrap().intersection > 0);
}

/// Over `F_3` the slices of `λ = (2)` and `λ = (2,1)` have no rational point in
/// `O_λ`: the torus factor would need a square root of -1. Over `F_9` they do.
#[test]
fn slicecheck_reports_for_small_n() {
    for n in 2..=3 {
        for q in [2, 3] {
            for r in run_slicecheck(n, q, None, false).unwrap() {
                let lambda = r.lambda.clone().unwrap();
                let obstructed = q == 3 && (lambda == "(2)" || lambda == "(2,1)");
                assert_eq!(r.passed(), !obstructed, "{n} {q} {lambda} {:?}", r.violations);
                assert_eq!(r.get("intersection").unwrap() > 0, !obstructed);
                assert!(r.orbit_count.unwrap() <= r.get("orbit_bound").unwrap());
            }
        }
    }
    let f9 = Gf::of_order(9).unwrap();
    for (n, word, lambda) in [(2, vec![0], vec![2]), (3, vec![0, 1, 0], vec![2, 1])] {
        let sets = SubgroupSets::new(&cert(n, &word), &f9, Twisting::Split).unwrap();
        assert!(slice_check(&sets, &f9, &lambda).unwrap().intersection > 0);
    }
}

#[test]
fn flagcheck_gl3_over_f2_has_no_violations() {
    let cfg = FlagConfig {
        n: 3,
        q: 2,
        k: 1,
        suites: Suite::ALL[..5].to_vec(),
        cache_dir: None,
        timing: false,
    };
    let reports = run_flagcheck(&cfg).unwrap();
    let certs = symmetric_certificates(3).unwrap();
    assert_eq!(reports.len(), 5 * certs.len());
    for r in &reports {
        assert!(r.passed(), "{} {}: {:?}", r.suite, r.cert_id, r.violations);
        assert!(r.runtime_ms.is_none());
    }
    let orbit_counts: Vec<u64> = reports
        .iter()
        .filter(|r| r.suite == "orbits")
        .map(|r| r.orbit_count.unwrap())
        .collect();
    let expected: Vec<u64> = certs.iter().map(|c| 2u64.pow(c.length as u32)).collect();
    assert_eq!(orbit_counts, expected);
}

#[test]
fn flagcheck_rejects_bad_configurations() {
    assert!(parse_suites("isotropy,bogus").is_err());
    assert_eq!(parse_suites("all").unwrap(), Suite::ALL.to_vec());
    let cfg = FlagConfig {
        n: 2,
        q: 2,
        k: 2,
        suites: vec![Suite::Orbits],
        cache_dir: None,
        timing: false,
    };
    assert!(matches!(run_flagcheck(&cfg), Err(Error::Config(_))));
    let cfg = FlagConfig {
        n: 3,
        q: 5,
        k: 1,
        suites: vec![Suite::Isotropy],
        cache_dir: None,
        timing: false,
    };
    assert!(gl_order(3, 5) > 25_000);
    assert!(matches!(run_flagcheck(&cfg), Err(Error::Resource(_))));
}
