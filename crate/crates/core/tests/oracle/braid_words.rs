//! Brute-force positive braid oracle: a braid is the set of all words
//! reachable from one of its words by braid relations.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use weylbraid_core::{RootSystem, WeylElement};

/// Order of `s_i s_j` read off the Cartan matrix.
pub fn coxeter_m(rs: &RootSystem, i: usize, j: usize) -> usize {
    if i == j {
        return 1;
    }
    let c = rs.cartan_matrix();
    match c[i][j] * c[j][i] {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        other => panic!("not crystallographic: {other}"),
    }
}

pub fn equivalent_words(rs: &RootSystem, word: &[usize]) -> HashSet<Vec<usize>> {
    let r = rs.rank();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(word.to_vec());
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                let m = coxeter_m(rs, i, j);
                if m > w.len() {
                    continue;
                }
                for start in 0..=w.len() - m {
                    let alt_ok = (0..m).all(|k| w[start + k] == if k % 2 == 0 { i } else { j });
                    if !alt_ok {
                        continue;
                    }
                    let mut v = w.clone();
                    for k in 0..m {
                        v[start + k] = if k % 2 == 0 { j } else { i };
                    }
                    if seen.insert(v.clone()) {
                        queue.push_back(v);
                    }
                }
            }
        }
    }
    seen
}

/// Every simple `u` with `u̲` a left divisor of the braid spelled by `word`.
pub fn simple_left_divisors(rs: &Arc<RootSystem>, word: &[usize]) -> HashSet<WeylElement> {
    let mut out = HashSet::new();
    for w in equivalent_words(rs, word) {
        for k in 0..=w.len() {
            let u = WeylElement::from_word(rs, &w[..k]).unwrap();
            if u.length() == k {
                out.insert(u);
            } else {
                break;
            }
        }
    }
    out
}
