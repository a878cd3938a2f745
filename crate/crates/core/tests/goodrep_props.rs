use std::collections::HashSet;
use std::sync::Arc;

use weylbraid_core::garside::twisted_power;
use weylbraid_core::goodrep::{
    braid_representative, canonical_rep, default_d_max, divisor_target, find_good_reps, fixed_root_data,
    is_good_position, reverify, verify_elliptic_minimal,
};
use weylbraid_core::weyl::{longest_element, twisted_conjugacy_classes};
use weylbraid_core::{BraidElement, Family, RootSystem, Twist, WeylElement};

const SETUPS: &[(Family, usize, &str)] = &[
    (Family::A, 1, "id"),
    (Family::A, 2, "id"),
    (Family::A, 3, "id"),
    (Family::A, 4, "id"),
    (Family::A, 5, "id"),
    (Family::B, 2, "id"),
    (Family::B, 3, "id"),
    (Family::B, 4, "id"),
    (Family::C, 3, "id"),
    (Family::D, 4, "id"),
    (Family::G, 2, "id"),
    (Family::A, 2, "flip"),
    (Family::A, 3, "flip"),
    (Family::A, 5, "flip"),
    (Family::D, 4, "rot3"),
];

fn setup(f: Family, r: usize, t: &str) -> (Arc<RootSystem>, Twist) {
    let rs = RootSystem::new(f, r).unwrap();
    let tw = Twist::named(&rs, t).unwrap();
    (rs, tw)
}

#[test]
fn every_class_has_reverified_certificates() {
    for &(f, r, t) in SETUPS {
        let (rs, tw) = setup(f, r, t);
        for class in twisted_conjugacy_classes(&rs, &tw).unwrap() {
            let certs = find_good_reps(&class, None).unwrap_or_else(|e| panic!("{f}{r} {t}: {e}"));
            for c in &certs {
                assert!(class.contains(&c.w));
                assert!(c.d <= 48 && c.d % tw.order() == 0);
                assert!(reverify(c), "{f}{r} {t}: {}", c.w);
                let target = divisor_target(&tw, &c.w_prime());
                assert!(c.d * c.length >= target.length());
                let b = braid_representative(c);
                assert_eq!(b.project(), c.w);
                assert_eq!(b.letter_length(), c.w_prime().length() + (&c.w_prime() * &c.w).length());
            }
            let canon = &certs[0];
            if class.is_elliptic {
                assert!(
                    verify_elliptic_minimal(canon, &class),
                    "{f}{r} {t} class {}",
                    class.class_id
                );
            }
        }
    }
}

/// No prefix of a twisted power inverts a root of `δ^{-1}(R_I^+)`, so the
/// maximal simple divisor inverts at most the complement. The target is the
/// simple that inverts exactly that complement.
#[test]
fn divisor_target_is_the_largest_possible_alpha() {
    for &(f, r, t) in SETUPS {
        let (rs, tw) = setup(f, r, t);
        let inv = tw.inverse(&rs);
        for class in twisted_conjugacy_classes(&rs, &tw).unwrap() {
            for w in class.members.iter().step_by(3) {
                let data = fixed_root_data(&tw, w);
                let Some(wp) = data.w_prime else { continue };
                let protected: HashSet<usize> = data
                    .fixed_roots
                    .iter()
                    .filter(|&&b| rs.is_positive(b))
                    .map(|&b| inv.apply_root(b))
                    .collect();
                let d = 4 * tw.order();
                let alpha = twisted_power(&BraidElement::embed_simple(w), &tw, d).unwrap().alpha();
                let ainv = alpha.inverse();
                for &b in &protected {
                    assert!(rs.is_positive(ainv.apply(b)));
                }
                let target = divisor_target(&tw, &wp);
                let inverted: HashSet<usize> = target.inversion_set().into_iter().collect();
                let complement: HashSet<usize> = (0..rs.npos()).filter(|b| !protected.contains(b)).collect();
                assert_eq!(inverted, complement);
            }
        }
    }
}

#[test]
fn refusals_name_the_failing_condition() {
    use weylbraid_core::weyl::is_min_rep;
    use weylbraid_core::Refusal;
    let rs = RootSystem::new(Family::A, 3).unwrap();
    let id = Twist::identity(&rs);
    // (13) fixes only e2 - e4 = α2 + α3
    let x = WeylElement::from_one_line(&rs, &[3, 2, 1, 4]).unwrap();
    assert_eq!(
        is_good_position(&id, &x, 8).unwrap(),
        Err(Refusal::NotStandardParabolic)
    );
    let s1 = WeylElement::simple(&rs, 0).unwrap();
    assert!(matches!(
        is_good_position(&id, &s1, 24).unwrap(),
        Err(Refusal::NoDivisibility { d_max: 24 })
    ));

    let mut seen = [0usize; 4];
    for &(f, r, t) in SETUPS {
        let (rs, tw) = setup(f, r, t);
        let inv = tw.inverse(&rs);
        for class in twisted_conjugacy_classes(&rs, &tw).unwrap() {
            for w in &class.members {
                let data = fixed_root_data(&tw, w);
                match is_good_position(&tw, w, 12).unwrap() {
                    Err(Refusal::NotStandardParabolic) => {
                        assert!(!data.is_standard_parabolic);
                        seen[0] += 1;
                    }
                    Err(Refusal::NotMinimalRep) => {
                        let i = data.parabolic_index;
                        assert!(data.is_standard_parabolic && !is_min_rep(inv.apply_mask(i), w, i));
                        seen[1] += 1;
                    }
                    Err(Refusal::NoDivisibility { .. }) => seen[2] += 1,
                    Ok(_) => seen[3] += 1,
                }
            }
        }
    }
    // (ii) never fires on its own: if δw fixes α_i for i ∈ I then w(α_i) =
    // δ^{-1}(α_i) > 0 and w^{-1}(δ^{-1}α_i) = α_i > 0, so (i) implies (ii).
    assert_eq!(seen[1], 0);
    assert!(seen[0] > 0 && seen[2] > 0 && seen[3] > 0, "{seen:?}");
}

#[test]
fn certificates_are_twist_equivariant() {
    // relabel by the diagram flip of A_n with δ = id
    for r in [3, 4, 5] {
        let rs = RootSystem::new(Family::A, r).unwrap();
        let id = Twist::identity(&rs);
        let tau = Twist::named(&rs, "flip").unwrap();
        for class in twisted_conjugacy_classes(&rs, &id).unwrap() {
            for w in &class.members {
                let a = is_good_position(&id, w, default_d_max(&id, w)).unwrap();
                let tw = tau.apply(w);
                let b = is_good_position(&id, &tw, default_d_max(&id, &tw)).unwrap();
                assert_eq!(a.is_ok(), b.is_ok());
                if let (Ok(a), Ok(b)) = (a, b) {
                    assert_eq!(b.d, a.d);
                    assert_eq!(b.parabolic_index, tau.apply_mask(a.parabolic_index));
                    assert_eq!(b.alpha_witness, tau.apply(&a.alpha_witness));
                }
            }
        }
    }
    // D4: conjugating rot3 by the spin flip gives rot3⁻¹
    let rs = RootSystem::new(Family::D, 4).unwrap();
    let rot = Twist::named(&rs, "rot3").unwrap();
    let tau = Twist::named(&rs, "flip").unwrap();
    let conj: Vec<usize> = (0..4)
        .map(|i| tau.apply_simple(rot.apply_simple(tau.apply_simple(i))))
        .collect();
    let rot_conj = Twist::new(&rs, conj).unwrap();
    assert_eq!(rot_conj.simple_perm(), rot.inverse(&rs).simple_perm());
    for class in twisted_conjugacy_classes(&rs, &rot).unwrap() {
        for w in &class.members {
            let a = is_good_position(&rot, w, 24).unwrap();
            let b = is_good_position(&rot_conj, &tau.apply(w), 24).unwrap();
            assert_eq!(a.is_ok(), b.is_ok(), "{w}");
            if let (Ok(a), Ok(b)) = (a, b) {
                assert_eq!(a.d, b.d);
            }
        }
    }
}

#[test]
fn default_bound_examples() {
    let rs = RootSystem::new(Family::A, 2).unwrap();
    let id = Twist::identity(&rs);
    let c = WeylElement::from_word(&rs, &[0, 1]).unwrap();
    assert_eq!(default_d_max(&id, &c), 6);
    assert_eq!(default_d_max(&id, &WeylElement::identity(&rs)), 2);
    let flip = Twist::named(&rs, "flip").unwrap();
    // δ·s1s2 has order 2 on roots (it is a reflection composed with the flip)
    assert_eq!(default_d_max(&flip, &c), 2 * flip.twisted_order(&c).max(2));
    let e8ish = RootSystem::new(Family::A, 6).unwrap();
    let cox = WeylElement::from_word(&e8ish, &[0, 1, 2, 3, 4, 5]).unwrap();
    assert_eq!(default_d_max(&Twist::identity(&e8ish), &cox), 14);
}

/// The three conditions are necessary for good position but they also admit
/// non-minimal members of elliptic classes.
#[test]
fn three_conditions_admit_non_minimal_elliptic_members() {
    let rs = RootSystem::new(Family::A, 3).unwrap();
    let id = Twist::identity(&rs);
    let classes = twisted_conjugacy_classes(&rs, &id).unwrap();
    let cox = classes.iter().find(|c| c.is_elliptic).unwrap();
    assert_eq!(cox.min_length, 3);
    let certs = find_good_reps(cox, None).unwrap();
    let long: Vec<Vec<usize>> = certs.iter().filter(|c| c.length > 3).map(|c| c.w.word()).collect();
    assert_eq!(long, vec![vec![0, 1, 0, 2, 1], vec![1, 0, 2, 1, 0]]);
    assert_eq!(canonical_rep(cox, None).unwrap().length, 3);
}

#[test]
fn identity_class_certificate() {
    for &(f, r, t) in SETUPS {
        let (rs, tw) = setup(f, r, t);
        let e = WeylElement::identity(&rs);
        let data = fixed_root_data(&tw, &e);
        if tw.is_identity() {
            let c = is_good_position(&tw, &e, 2).unwrap().unwrap();
            assert_eq!(c.parabolic_index, rs.full_mask());
            assert_eq!(c.w_prime(), longest_element(&rs, rs.full_mask()));
            assert_eq!(c.d, 1);
        } else {
            assert!(data.fixed_roots.len() < rs.num_roots());
        }
    }
}
