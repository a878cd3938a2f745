//! Fixed-root subsystems and good-position certificates.
//!
//! For `w̃ = δw` let `R^w̃` be the roots fixed by `w̃`. An element `w` is
//! certified when
//!
//! 1. `R^w̃` is the root system of a standard parabolic `W_I`,
//! 2. `w` is minimal in `W_{δ^{-1}(I)} w W_I`,
//! 3. for some `d` (a multiple of the order of `δ`) the simple braid
//!    [`divisor_target`] left-divides `w̲ · δ(w̲) ⋯ δ^{d-1}(w̲)`.
//!
//! With `(a∘b)(α) = a(b(α))` and prefixes detected by `{β > 0 : x^{-1}β < 0}`,
//! no prefix of a twisted power ever inverts a root of `δ^{-1}(R_I^+)`. The
//! largest simple that can divide is therefore `δ^{-1}(w')·w₀`, the element
//! inverting exactly `R^+ ∖ δ^{-1}(R_I^+)`; it equals `w₀w'` whenever
//! `−w₀ δ^{-1}` fixes `I` (e.g. `A_n` with the flip, or `I` self-opposed).
//!
//! The same fixed-root set is used wherever a lower-index `R_w̃` would appear.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::garside::{simple_left_divides, BraidElement, TwistedPowers};
use crate::rootsys::RootSystem;
use crate::weyl::{is_min_rep, lcm, longest_element, Twist, TwistedClass, WeylElement};
use crate::{mask_iter, mask_to_indices};

/// Cap on the default search bound for `d`.
pub const D_MAX_CAP: usize = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedRootData {
    /// Indices into `all_roots`, ascending.
    pub fixed_roots: Vec<usize>,
    pub is_standard_parabolic: bool,
    /// `{i : α_i fixed}` as a mask; meaningful when standard.
    pub parabolic_index: u32,
    /// Longest element of `W_I`, present when standard.
    pub w_prime: Option<WeylElement>,
}

impl FixedRootData {
    /// Fixed positive roots.
    pub fn positive_count(&self, rs: &RootSystem) -> usize {
        self.fixed_roots.iter().filter(|&&b| rs.is_positive(b)).count()
    }
}

pub fn fixed_root_data(twist: &Twist, w: &WeylElement) -> FixedRootData {
    let rs = w.root_system();
    let fixed_roots: Vec<usize> = (0..rs.num_roots())
        .filter(|&b| twist.apply_root(w.apply(b)) == b)
        .collect();
    let mask = (0..rs.rank())
        .filter(|&i| fixed_roots.binary_search(&i).is_ok())
        .fold(0u32, |m, i| m | (1 << i));
    let parabolic: Vec<usize> = (0..rs.num_roots()).filter(|&b| rs.support(b) & !mask == 0).collect();
    let is_standard_parabolic = parabolic == fixed_roots;
    let w_prime = is_standard_parabolic.then(|| longest_element(rs, mask));
    FixedRootData {
        fixed_roots,
        is_standard_parabolic,
        parabolic_index: mask,
        w_prime,
    }
}

/// Which condition rejected an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Refusal {
    /// (i) the fixed roots do not form a standard parabolic subsystem.
    NotStandardParabolic,
    /// (ii) not minimal in its `(δ^{-1}(I), I)` double coset.
    NotMinimalRep,
    /// (iii) the divisor target never left-divides a twisted power up to `d_max`.
    NoDivisibility { d_max: usize },
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refusal::NotStandardParabolic => f.write_str("(i) fixed roots are not a standard parabolic subsystem"),
            Refusal::NotMinimalRep => f.write_str("(ii) not a minimal double coset representative"),
            Refusal::NoDivisibility { d_max } => write!(f, "(iii) no divisibility for d ≤ {d_max}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodRepCertificate {
    pub twist: Twist,
    /// Set when the certificate came from a class scan.
    pub class_id: Option<usize>,
    pub w: WeylElement,
    /// `I_w̃` as a mask.
    pub parabolic_index: u32,
    pub d: usize,
    /// `alpha` of the `d`-th twisted power.
    pub alpha_witness: WeylElement,
    pub length: usize,
}

/// Serialized certificate; words and index sets are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub rank: usize,
    pub twist: String,
    pub class_id: Option<usize>,
    pub rep_word: Vec<usize>,
    #[serde(rename = "I")]
    pub parabolic_index: Vec<usize>,
    pub d: usize,
    pub alpha_witness_word: Vec<usize>,
    pub length: usize,
}

impl GoodRepCertificate {
    pub fn root_system(&self) -> &Arc<RootSystem> {
        self.w.root_system()
    }

    /// Longest element of `W_I`.
    pub fn w_prime(&self) -> WeylElement {
        longest_element(self.root_system(), self.parabolic_index)
    }

    pub fn to_json(&self) -> CertificateJson {
        let ct = self.w.cartan_type();
        CertificateJson {
            cartan_type: ct.family.to_string(),
            rank: ct.rank,
            twist: self.twist.label().to_string(),
            class_id: self.class_id,
            rep_word: self.w.word().iter().map(|i| i + 1).collect(),
            parabolic_index: mask_to_indices(self.parabolic_index),
            d: self.d,
            alpha_witness_word: self.alpha_witness.word().iter().map(|i| i + 1).collect(),
            length: self.length,
        }
    }
}

/// The simple braid `δ^{-1}(w')·w₀` that must left-divide a twisted power.
pub fn divisor_target(twist: &Twist, w_prime: &WeylElement) -> WeylElement {
    let rs = w_prime.root_system();
    &twist.inverse(rs).apply(w_prime) * &longest_element(rs, rs.full_mask())
}

/// `min(48, 2·lcm(ord(δw), ord(δ)))`.
pub fn default_d_max(twist: &Twist, w: &WeylElement) -> usize {
    (2 * lcm(twist.twisted_order(w), twist.order())).min(D_MAX_CAP)
}

/// Decides conditions (i)–(iii). The outer error reports a violated
/// precondition; the inner value is the verdict.
pub fn is_good_position(
    twist: &Twist,
    w: &WeylElement,
    d_max: usize,
) -> Result<std::result::Result<GoodRepCertificate, Refusal>> {
    if twist.cartan_type() != w.cartan_type() {
        return Err(Error::Config(format!(
            "twist for {} used with an element of {}",
            twist.cartan_type(),
            w.cartan_type()
        )));
    }
    if d_max < twist.order() {
        return Err(Error::Domain(format!(
            "d_max = {d_max} is below the order of the twist"
        )));
    }
    let rs = w.root_system();
    let data = fixed_root_data(twist, w);
    let Some(w_prime) = data.w_prime else {
        return Ok(Err(Refusal::NotStandardParabolic));
    };
    let i_mask = data.parabolic_index;
    let left = twist.inverse(rs).apply_mask(i_mask);
    if !is_min_rep(left, w, i_mask) {
        return Ok(Err(Refusal::NotMinimalRep));
    }
    let target = divisor_target(twist, &w_prime);
    let step = twist.order();
    let powers = TwistedPowers::new(&BraidElement::embed_simple(w), twist);
    for (k, p) in powers.enumerate().take(d_max) {
        let d = k + 1;
        if d % step == 0 && simple_left_divides(&target, &p) {
            return Ok(Ok(GoodRepCertificate {
                twist: twist.clone(),
                class_id: None,
                w: w.clone(),
                parabolic_index: i_mask,
                d,
                alpha_witness: p.alpha(),
                length: w.length(),
            }));
        }
    }
    Ok(Err(Refusal::NoDivisibility { d_max }))
}

/// Checks every condition of a certificate again from scratch, including
/// that the recorded `d` is the smallest admissible exponent.
pub fn reverify(cert: &GoodRepCertificate) -> bool {
    let rs = cert.root_system();
    let data = fixed_root_data(&cert.twist, &cert.w);
    if !data.is_standard_parabolic || data.parabolic_index != cert.parabolic_index {
        return false;
    }
    let i_mask = cert.parabolic_index;
    if !is_min_rep(cert.twist.inverse(rs).apply_mask(i_mask), &cert.w, i_mask) {
        return false;
    }
    if cert.d == 0 || cert.d % cert.twist.order() != 0 || cert.length != cert.w.length() {
        return false;
    }
    let target = divisor_target(&cert.twist, &cert.w_prime());
    let b = BraidElement::embed_simple(&cert.w);
    let Ok(p) = crate::garside::twisted_power(&b, &cert.twist, cert.d) else {
        return false;
    };
    if !simple_left_divides(&target, &p) || p.alpha() != cert.alpha_witness {
        return false;
    }
    // sanity bound: the d-th power has d·l(w) letters
    if cert.d * cert.length < target.length() {
        return false;
    }
    (cert.twist.order()..cert.d).step_by(cert.twist.order()).all(|d| {
        let q = crate::garside::twisted_power(&b, &cert.twist, d).expect("d ≥ 1");
        !simple_left_divides(&target, &q)
    })
}

/// All certified members of a class, in (length, shortlex) order. With
/// `d_max = None` each member uses [`default_d_max`].
pub fn find_good_reps(class: &TwistedClass, d_max: Option<usize>) -> Result<Vec<GoodRepCertificate>> {
    if class.members.is_empty() {
        return Err(Error::Domain("empty class".into()));
    }
    let verdicts: Vec<(usize, std::result::Result<GoodRepCertificate, Refusal>)> = class
        .members
        .par_iter()
        .map(|w| {
            let bound = d_max.unwrap_or_else(|| default_d_max(&class.twist, w));
            is_good_position(&class.twist, w, bound).map(|v| (bound, v))
        })
        .collect::<Result<_>>()?;
    let used = verdicts.iter().map(|(b, _)| *b).max().unwrap_or(0);
    let certs: Vec<GoodRepCertificate> = verdicts
        .into_iter()
        .filter_map(|(_, v)| v.ok())
        .map(|mut c| {
            c.class_id = Some(class.class_id);
            c
        })
        .collect();
    if certs.is_empty() {
        return Err(Error::ExistenceFailure {
            class_id: class.class_id,
            d_max: used,
        });
    }
    Ok(certs)
}

/// First certified member in (length, shortlex) order.
pub fn canonical_rep(class: &TwistedClass, d_max: Option<usize>) -> Result<GoodRepCertificate> {
    Ok(find_good_reps(class, d_max)?.swap_remove(0))
}

/// For certificates of elliptic classes: the representative has minimal length.
pub fn verify_elliptic_minimal(cert: &GoodRepCertificate, class: &TwistedClass) -> bool {
    cert.length == class.min_length
}

/// `b = w̲' · (w'w)̲`, which projects to `w`.
pub fn braid_representative(cert: &GoodRepCertificate) -> BraidElement {
    let wp = cert.w_prime();
    let rest = &wp * &cert.w;
    BraidElement::embed_simple(&wp)
        .multiply(&BraidElement::embed_simple(&rest))
        .expect("same root system")
}

/// Fixed roots of a certificate split by sign, as used downstream.
pub fn fixed_positive_roots(cert: &GoodRepCertificate) -> Vec<usize> {
    let rs = cert.root_system();
    fixed_root_data(&cert.twist, &cert.w)
        .fixed_roots
        .into_iter()
        .filter(|&b| rs.is_positive(b))
        .collect()
}

/// Simple indices of `I` (0-based).
pub fn parabolic_indices(cert: &GoodRepCertificate) -> Vec<usize> {
    mask_iter(cert.parabolic_index).collect()
}
