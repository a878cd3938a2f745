//! Acceptance criteria, one line each. Every criterion is evaluated and
//! printed before the test fails on the first red one.

use std::collections::{HashSet, VecDeque};
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use flaglab::report::Report;
use flaglab::suites::{run_flagcheck, run_slicecheck, FlagConfig, Suite};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use weylbraid_core::dimledger::{DimLedger, Partition};
use weylbraid_core::garside::{is_left_weighted, normalize, simple_left_divides};
use weylbraid_core::goodrep::{find_good_reps, reverify};
use weylbraid_core::weyl::{all_elements, twisted_conjugacy_classes, TwistedClass};
use weylbraid_core::{BraidElement, Family, GoodRepCertificate, RootSystem, Twist, WeylElement};

const SETUPS: &[(Family, usize, &str)] = &[
    (Family::A, 1, "id"),
    (Family::A, 2, "id"),
    (Family::A, 3, "id"),
    (Family::A, 4, "id"),
    (Family::A, 5, "id"),
    (Family::B, 2, "id"),
    (Family::B, 3, "id"),
    (Family::B, 4, "id"),
    (Family::D, 4, "id"),
    (Family::G, 2, "id"),
    (Family::A, 2, "flip"),
    (Family::A, 3, "flip"),
    (Family::A, 5, "flip"),
    (Family::D, 4, "rot3"),
];

const Y_CONFIGS: &[(usize, usize)] = &[(2, 2), (2, 3), (2, 5), (3, 2), (3, 3), (4, 2)];
const X_CONFIGS: &[(usize, usize, usize)] = &[(2, 2, 2), (2, 3, 2), (3, 2, 2)];
const ETA_CONFIGS: &[(usize, usize)] = &[(2, 2), (2, 3), (3, 2), (3, 3)];

struct Line {
    id: usize,
    pass: bool,
    detail: String,
}

fn say(line: &Line) {
    let status = if line.pass { "PASS" } else { "FAIL" };
    // Written past the test harness capture so the lines always show.
    let mut out = std::io::stdout().lock();
    writeln!(out, "acceptance criterion {:>2}: {status}: {}", line.id, line.detail).unwrap();
    out.flush().unwrap();
}

type Scan = Vec<(String, Vec<(TwistedClass, Vec<GoodRepCertificate>)>)>;

fn scan_all() -> Scan {
    SETUPS
        .iter()
        .map(|&(f, r, t)| {
            let rs = RootSystem::new(f, r).unwrap();
            let tw = Twist::named(&rs, t).unwrap();
            let classes = twisted_conjugacy_classes(&rs, &tw).unwrap();
            let per = classes
                .into_iter()
                .map(|c| {
                    let certs = find_good_reps(&c, None).unwrap_or_default();
                    (c, certs)
                })
                .collect();
            (format!("{f}{r} {t}"), per)
        })
        .collect()
}

fn criterion_1(scan: &Scan, elapsed: Duration) -> Line {
    let mut classes = 0;
    let mut certs = 0;
    let mut missing = Vec::new();
    let mut bad = 0;
    let mut max_d = 0;
    for (label, per) in scan {
        for (class, cs) in per {
            classes += 1;
            if !cs.iter().any(|c| c.d <= 48) {
                missing.push(format!("{label} class {}", class.class_id));
            }
            for c in cs {
                certs += 1;
                max_d = max_d.max(c.d);
                if !reverify(c) || !class.contains(&c.w) {
                    bad += 1;
                }
            }
        }
    }
    let pass = missing.is_empty() && bad == 0 && elapsed < Duration::from_secs(300);
    Line {
        id: 1,
        pass,
        detail: format!(
            "{classes} classes, {certs} certificates, max d = {max_d}, {} classes without certificate {missing:?}, {bad} failed re-verification, {:.1} s (limit 300 s)",
            missing.len(),
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion_2(scan: &Scan) -> Line {
    let mut elliptic = 0;
    let mut exceptions = Vec::new();
    for (label, per) in scan {
        for (class, cs) in per.iter().filter(|(c, _)| c.is_elliptic) {
            elliptic += 1;
            for c in cs.iter().filter(|c| c.length > class.min_length) {
                exceptions.push(format!(
                    "{label} class {} {} (length {} > {})",
                    class.class_id, c.w, c.length, class.min_length
                ));
            }
        }
    }
    let shown: Vec<&String> = exceptions.iter().take(4).collect();
    Line {
        id: 2,
        pass: exceptions.is_empty(),
        detail: format!(
            "{elliptic} elliptic classes, {} non-minimal certificates, e.g. {shown:?}",
            exceptions.len()
        ),
    }
}

fn criterion_3() -> Line {
    let mut partitions = 0;
    let mut identity_fail = Vec::new();
    let mut not_unique = Vec::new();
    for n in 2..=6 {
        let ledger = DimLedger::new(n).unwrap();
        for lambda in Partition::all(n) {
            partitions += 1;
            let rec = ledger.check_dimension_identity(&lambda).unwrap();
            if !rec.identity_holds {
                identity_fail.push(lambda.to_string());
            }
            let psi = ledger.psi_pairing(&lambda).unwrap().class_id;
            if ledger.identity_pairings(&lambda).unwrap() != vec![psi] {
                not_unique.push(lambda.to_string());
            }
        }
    }
    Line {
        id: 3,
        pass: identity_fail.is_empty() && not_unique.is_empty(),
        detail: format!(
            "{partitions} partitions of n = 2..6, identity fails for {identity_fail:?}, pairing not unique for {not_unique:?}"
        ),
    }
}

struct FlagRun {
    n: usize,
    q: usize,
    k: usize,
    reports: Vec<Report>,
    elapsed: Duration,
}

fn flag_run(n: usize, q: usize, k: usize, suites: Vec<Suite>) -> FlagRun {
    let start = Instant::now();
    let cfg = FlagConfig {
        n,
        q,
        k,
        suites,
        cache_dir: None,
        timing: true,
    };
    let reports = run_flagcheck(&cfg).unwrap_or_else(|e| panic!("flagcheck n={n} q={q} k={k}: {e}"));
    FlagRun {
        n,
        q,
        k,
        reports,
        elapsed: start.elapsed(),
    }
}

fn suite_reports<'a>(runs: &'a [FlagRun], suite: Suite) -> impl Iterator<Item = (&'a FlagRun, &'a Report)> {
    runs.iter().flat_map(move |run| {
        run.reports
            .iter()
            .filter(move |r| r.suite == suite.name())
            .map(move |r| (run, r))
    })
}

fn violations(runs: &[FlagRun], suite: Suite) -> (usize, Vec<String>) {
    let mut count = 0;
    let mut shown = Vec::new();
    for (run, r) in suite_reports(runs, suite) {
        count += 1;
        for v in &r.violations {
            shown.push(format!(
                "n={} q={} k={} {} {}: {}",
                run.n, run.q, run.k, r.cert_id, v.check, v.detail
            ));
        }
    }
    (count, shown)
}

fn criterion_4(runs: &[FlagRun]) -> Line {
    let (reports, bad) = violations(runs, Suite::Isotropy);
    let points: u64 = suite_reports(runs, Suite::Isotropy)
        .map(|(_, r)| r.counts.y_tilde.or(r.counts.x_tilde).unwrap_or(0))
        .sum();
    let gl4 = runs
        .iter()
        .find(|r| (r.n, r.q, r.k) == (4, 2, 1))
        .map(|r| r.elapsed)
        .unwrap_or_default();
    let configs = runs
        .iter()
        .filter(|r| r.reports.iter().any(|x| x.suite == "isotropy"))
        .count();
    Line {
        id: 4,
        pass: bad.is_empty() && configs == Y_CONFIGS.len() + X_CONFIGS.len() && gl4 < Duration::from_secs(1800),
        detail: format!(
            "{configs} configurations, {reports} certificate scans, {points} covering points, {} violations {bad:?}, GL_4(F_2) run {:.1} s (limit 1800 s)",
            bad.len(),
            gl4.as_secs_f64()
        ),
    }
}

fn criterion_5(runs: &[FlagRun]) -> Line {
    let (reports, bad) = violations(runs, Suite::Orbits);
    let mut orbits = 0;
    let mut mismatched = 0;
    for (run, r) in suite_reports(runs, Suite::Orbits) {
        let ql = (run.q as u64).pow(r.cert.length as u32);
        orbits += r.orbit_count.unwrap_or(0);
        if r.orbit_count != Some(ql)
            || r.get("via_double_coset") != r.get("expected")
            || r.counts.y_tilde != r.get("expected")
        {
            mismatched += 1;
        }
    }
    Line {
        id: 5,
        pass: bad.is_empty() && mismatched == 0 && reports > 0,
        detail: format!(
            "{reports} certificate scans, {orbits} orbits, {mismatched} count mismatches, {} violations {bad:?}",
            bad.len()
        ),
    }
}

fn criterion_6(runs: &[FlagRun]) -> Line {
    let (reports, bad) = violations(runs, Suite::Eta);
    let domain: u64 = suite_reports(runs, Suite::Eta)
        .map(|(_, r)| r.get("domain").unwrap_or(0))
        .sum();
    Line {
        id: 6,
        pass: bad.is_empty() && reports > 0,
        detail: format!(
            "{reports} maps checked, {domain} domain points in total, {} violations {bad:?}",
            bad.len()
        ),
    }
}

fn criterion_7(runs: &[FlagRun]) -> Line {
    let (reports, bad) = violations(runs, Suite::LOrbits);
    let mut per_config = Vec::new();
    let mut over = Vec::new();
    for run in runs {
        let rs: Vec<&Report> = run.reports.iter().filter(|r| r.suite == "lorbits").collect();
        if rs.is_empty() {
            continue;
        }
        let total: u64 = rs.iter().map(|r| r.counts.y.unwrap_or(0)).sum();
        let skipped: u64 = rs.iter().map(|r| r.skipped).sum();
        let share = skipped as f64 / total as f64;
        per_config.push(format!(
            "(n={}, q={}) {skipped}/{total} = {:.1}%",
            run.n,
            run.q,
            100.0 * share
        ));
        if share >= 0.5 {
            over.push(format!("(n={}, q={})", run.n, run.q));
        }
    }
    Line {
        id: 7,
        pass: bad.is_empty() && over.is_empty() && reports > 0,
        detail: format!(
            "{reports} certificate scans, {} violations on lifted points {bad:?}; skipped Y points {}; at or above 50%: {over:?}",
            bad.len(),
            per_config.join(", ")
        ),
    }
}

fn criterion_8() -> Line {
    let mut checked = 0;
    let mut empty = Vec::new();
    let mut sizes = Vec::new();
    for n in 2..=3 {
        for q in [2, 3] {
            for r in run_slicecheck(n, q, None, false).unwrap() {
                checked += 1;
                let lambda = r.lambda.clone().unwrap_or_default();
                let size = r.get("intersection").unwrap_or(0);
                sizes.push(format!("n={n} q={q} {lambda}:{size}"));
                if size == 0 {
                    empty.push(format!("n={n} q={q} {lambda}"));
                }
            }
        }
    }
    Line {
        id: 8,
        pass: empty.is_empty(),
        detail: format!(
            "{checked} slices, empty intersections {empty:?}; sizes {}",
            sizes.join(" ")
        ),
    }
}

fn criterion_9(runs: &[FlagRun]) -> Line {
    let (reports, bad) = violations(runs, Suite::FullFlag);
    let factor = suite_reports(runs, Suite::FullFlag)
        .map(|(_, r)| r.get("component_factor").unwrap_or(0))
        .max()
        .unwrap_or(0);
    Line {
        id: 9,
        pass: bad.is_empty() && reports > 0,
        detail: format!(
            "{reports} varieties, largest component factor {factor}, {} exceptions {bad:?}",
            bad.len()
        ),
    }
}

/// Braid-relation closure of a positive word; the set of words spelling one braid.
fn equivalent_words(rs: &RootSystem, word: &[usize]) -> HashSet<Vec<usize>> {
    let c = rs.cartan_matrix();
    let r = rs.rank();
    let m = |i: usize, j: usize| match c[i][j] * c[j][i] {
        0 => 2,
        1 => 3,
        2 => 4,
        _ => 6,
    };
    let mut seen = HashSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 0..r {
            for j in (0..r).filter(|&j| j != i) {
                let len = m(i, j);
                for s in 0..w.len().saturating_sub(len - 1) {
                    if (0..len).all(|t| w[s + t] == if t % 2 == 0 { i } else { j }) {
                        let mut v = w.clone();
                        for t in 0..len {
                            v[s + t] = if t % 2 == 0 { j } else { i };
                        }
                        if seen.insert(v.clone()) {
                            queue.push_back(v);
                        }
                    }
                }
            }
        }
    }
    seen
}

fn criterion_10() -> Line {
    let mut rng = StdRng::seed_from_u64(0xacce);
    let mut triples = 0;
    let mut assoc_fail = 0;
    let mut weight_fail = 0;
    let mut alpha_checks = 0;
    let mut alpha_fail = 0;
    for family in [Family::B, Family::A] {
        let rs: Arc<RootSystem> = RootSystem::new(family, 3).unwrap();
        let elems = all_elements(&rs);
        let random_braid = |rng: &mut StdRng| {
            let k = rng.gen_range(0..5);
            let factors: Vec<WeylElement> = (0..k).map(|_| elems[rng.gen_range(0..elems.len())].clone()).collect();
            (BraidElement::from_factors(&rs, factors.clone()).unwrap(), factors)
        };
        for _ in 0..5_000 {
            triples += 1;
            let (a, fa) = random_braid(&mut rng);
            let (b, fb) = random_braid(&mut rng);
            let (c, fc) = random_braid(&mut rng);
            let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            let all: Vec<WeylElement> = fa.into_iter().chain(fb).chain(fc).collect();
            if left != right || left.factors() != normalize(all).as_slice() {
                assoc_fail += 1;
            }
            for x in [&a, &b, &c, &left] {
                if x.factors().iter().any(|f| f.is_identity())
                    || x.factors().windows(2).any(|p| !is_left_weighted(&p[0], &p[1]))
                {
                    weight_fail += 1;
                }
            }
        }
        for _ in 0..150 {
            let len = rng.gen_range(0..=7);
            let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..3)).collect();
            let braid = BraidElement::from_word(&rs, &word).unwrap();
            let mut divisors = HashSet::new();
            for w in equivalent_words(&rs, &word) {
                for k in 0..=w.len() {
                    let u = WeylElement::from_word(&rs, &w[..k]).unwrap();
                    if u.length() < k {
                        break;
                    }
                    divisors.insert(u);
                }
            }
            let alpha = braid.alpha();
            let max_len = divisors.iter().map(WeylElement::length).max().unwrap_or(0);
            alpha_checks += 1;
            if !divisors.contains(&alpha)
                || alpha.length() != max_len
                || elems
                    .iter()
                    .any(|u| simple_left_divides(u, &braid) != divisors.contains(u))
            {
                alpha_fail += 1;
            }
        }
    }
    Line {
        id: 10,
        pass: assoc_fail + weight_fail + alpha_fail == 0,
        detail: format!(
            "{triples} random triples in B3/A3: {assoc_fail} associativity failures, {weight_fail} normal-form failures; {alpha_checks} alpha checks against brute-force divisor search: {alpha_fail} failures"
        ),
    }
}

#[test]
fn acceptance_criteria() {
    let mut lines = Vec::new();
    let mut record = |line: Line| {
        say(&line);
        lines.push(line);
    };

    let start = Instant::now();
    let scan = scan_all();
    record(criterion_1(&scan, start.elapsed()));
    record(criterion_2(&scan));
    record(criterion_3());

    let mut runs = Vec::new();
    for &(n, q) in Y_CONFIGS {
        let mut suites = vec![Suite::Isotropy, Suite::Orbits];
        if ETA_CONFIGS.contains(&(n, q)) {
            suites.extend([Suite::Eta, Suite::LOrbits]);
        }
        if [(2, 2), (3, 2)].contains(&(n, q)) {
            suites.push(Suite::FullFlag);
        }
        runs.push(flag_run(n, q, 1, suites));
    }
    for &(n, q, k) in X_CONFIGS {
        runs.push(flag_run(n, q, k, vec![Suite::Isotropy]));
    }
    record(criterion_4(&runs));
    record(criterion_5(&runs));
    record(criterion_6(&runs));
    record(criterion_7(&runs));
    record(criterion_8());
    record(criterion_9(&runs));
    record(criterion_10());

    let failed: Vec<usize> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    assert!(failed.is_empty(), "acceptance criteria failed: {failed:?}");
}
