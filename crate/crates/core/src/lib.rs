//! Exact combinatorics of finite Weyl groups and their positive braid
//! monoids, aimed at constructing and certifying good-position braid
//! representatives of (twisted) conjugacy classes.
//!
//! * [`rootsys`]: crystallographic root systems in the simple-root basis.
//! * [`weyl`]: Weyl group elements as root permutations, twists, classes,
//!   parabolic and double-coset machinery.
//! * [`garside`]: left-greedy normal forms in the positive braid monoid.
//! * [`goodrep`]: fixed-root subsystems and good-position certificates.
//! * [`dimledger`]: type-A unipotent class dimensions and the dimension
//!   identity relating them to certified representatives.
//!
//! Composition follows the function convention everywhere:
//! `(a∘b)(α) = a(b(α))`, so the word `s1 s2` applies `s2` first.

pub mod dimledger;
pub mod error;
pub mod garside;
pub mod goodrep;
pub mod rootsys;
pub mod weyl;

pub use error::{Error, Result};
pub use garside::BraidElement;
pub use goodrep::{GoodRepCertificate, Refusal};
pub use rootsys::{CartanType, Family, RootSystem};
pub use weyl::{Twist, TwistedClass, WeylElement};

/// Iterates over the set bits of a mask, lowest first.
pub fn mask_iter(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

/// Renders a 0-based simple index set as 1-based indices, e.g. `[2]` for `{s2}`.
pub fn mask_to_indices(mask: u32) -> Vec<usize> {
    mask_iter(mask).map(|i| i + 1).collect()
}

pub fn indices_to_mask(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &i| m | (1 << (i - 1)))
}
