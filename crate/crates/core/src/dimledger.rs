//! Unipotent classes of `GL_n` and the dimension identity
//! `dim O + l(w) + |R^w| = dim G − dim T^w` for certified representatives
//! of the matching classes of `S_n`.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::goodrep::{canonical_rep, fixed_root_data, CertificateJson, GoodRepCertificate};
use crate::rootsys::{Family, RootSystem};
use crate::weyl::{twisted_conjugacy_classes, Twist, TwistedClass, WeylElement};

pub const PAIRING_NOTE: &str = "type-A cycle-type convention";

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::Domain(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0[0];
        Partition(
            (1..=first)
                .map(|i| self.0.iter().filter(|&&p| p >= i).count())
                .collect(),
        )
    }

    /// `λ ⊵ μ`: every partial sum of `λ` is at least that of `μ`.
    pub fn dominates(&self, other: &Partition) -> bool {
        let len = self.0.len().max(other.0.len());
        let (mut a, mut b) = (0, 0);
        (0..len).all(|i| {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            a >= b
        })
    }

    /// All partitions of `n`, reverse lexicographic (starting with `(n)`).
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `3,1,1`, `(3,1,1)` or `3 1 1`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: std::result::Result<Vec<usize>, _> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect();
        Partition::new(parts.map_err(|_| Error::Domain(format!("cannot parse partition {s:?}")))?)
    }
}

fn check_partition(n: usize, lambda: &Partition) -> Result<()> {
    if lambda.size() != n {
        return Err(Error::Domain(format!("{lambda} is not a partition of {n}")));
    }
    Ok(())
}

/// `dim O_λ = n² − Σ (λ'_i)²`.
pub fn unipotent_class_dim(n: usize, lambda: &Partition) -> Result<usize> {
    check_partition(n, lambda)?;
    let c: usize = lambda.conjugate().0.iter().map(|p| p * p).sum();
    Ok(n * n - c)
}

/// Cycle type of a permutation in type A.
pub fn cycle_type(w: &WeylElement) -> Result<Partition> {
    let p = w.one_line()?;
    let mut seen = vec![false; p.len()];
    let mut parts = Vec::new();
    for start in 0..p.len() {
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] - 1;
            len += 1;
        }
        if len > 0 {
            parts.push(len);
        }
    }
    Partition::from_unsorted(parts)
}

/// `dim T^w` for the diagonal torus of `GL_n`: the number of cycles.
pub fn torus_fixed_dim(w: &WeylElement) -> Result<usize> {
    Ok(cycle_type(w)?.0.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionRecord {
    pub n: usize,
    pub lambda: Partition,
    pub dim_o: usize,
    pub class_id: usize,
    pub cert: CertificateJson,
    pub l_w: usize,
    /// `|R^w|`, both signs.
    pub fixed_root_count: usize,
    pub dim_t_w: usize,
    pub dim_g: usize,
    pub identity_holds: bool,
    /// `dim G − dim T^w − |R^w|`.
    pub c_small_threshold: usize,
    pub pairing: String,
}

/// Classes of `S_n` with their canonical certificates.
pub struct DimLedger {
    n: usize,
    rs: Arc<RootSystem>,
    classes: Vec<TwistedClass>,
    certs: Vec<Option<GoodRepCertificate>>,
}

impl DimLedger {
    /// `GL_n` with `n ≥ 2`; the Weyl group is `S_n = W(A_{n−1})`.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Config(format!("n = {n} is too small")));
        }
        let rs = RootSystem::new(Family::A, n - 1)?;
        let classes = twisted_conjugacy_classes(&rs, &Twist::identity(&rs))?;
        let certs = classes.iter().map(|c| canonical_rep(c, None).ok()).collect();
        Ok(DimLedger { n, rs, classes, certs })
    }

    /// Builds a ledger from externally supplied certificates, one slot per class.
    pub fn with_certificates(n: usize, certs: Vec<Option<GoodRepCertificate>>) -> Result<Self> {
        let mut ledger = Self::new(n)?;
        if certs.len() != ledger.classes.len() {
            return Err(Error::Domain(format!(
                "{} certificates for {} classes",
                certs.len(),
                ledger.classes.len()
            )));
        }
        ledger.certs = certs;
        Ok(ledger)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn classes(&self) -> &[TwistedClass] {
        &self.classes
    }

    pub fn certificate(&self, class_id: usize) -> Option<&GoodRepCertificate> {
        self.certs.get(class_id).and_then(Option::as_ref)
    }

    /// `Ψ(λ)`: the class of cycle type `λ`.
    pub fn psi_pairing(&self, lambda: &Partition) -> Result<&TwistedClass> {
        check_partition(self.n, lambda)?;
        for c in &self.classes {
            if &cycle_type(c.representative())? == lambda {
                return Ok(c);
            }
        }
        Err(Error::Domain(format!("no class of cycle type {lambda}")))
    }

    fn record_for(&self, lambda: &Partition, class: &TwistedClass) -> Result<DimensionRecord> {
        let cert = self
            .certificate(class.class_id)
            .ok_or_else(|| Error::Dependency(format!("no certificate for class {} of S_{}", class.class_id, self.n)))?;
        let dim_o = unipotent_class_dim(self.n, lambda)?;
        let fixed_root_count = fixed_root_data(&cert.twist, &cert.w).fixed_roots.len();
        let dim_t_w = torus_fixed_dim(&cert.w)?;
        let dim_g = self.n * self.n;
        let l_w = cert.length;
        Ok(DimensionRecord {
            n: self.n,
            lambda: lambda.clone(),
            dim_o,
            class_id: class.class_id,
            cert: cert.to_json(),
            l_w,
            fixed_root_count,
            dim_t_w,
            dim_g,
            identity_holds: dim_o + l_w + fixed_root_count + dim_t_w == dim_g,
            c_small_threshold: dim_g - dim_t_w - fixed_root_count,
            pairing: PAIRING_NOTE.to_string(),
        })
    }

    pub fn check_dimension_identity(&self, lambda: &Partition) -> Result<DimensionRecord> {
        let class = self.psi_pairing(lambda)?;
        self.record_for(lambda, class)
    }

    /// Every class whose certified representative satisfies the identity for `λ`.
    pub fn identity_pairings(&self, lambda: &Partition) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for c in &self.classes {
            if self.record_for(lambda, c)?.identity_holds {
                out.push(c.class_id);
            }
        }
        Ok(out)
    }

    /// One record per partition of `n`.
    pub fn records(&self) -> Result<Vec<DimensionRecord>> {
        Partition::all(self.n)
            .iter()
            .map(|l| self.check_dimension_identity(l))
            .collect()
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    n: usize,
    lambda: String,
    #[serde(rename = "dim_O")]
    dim_o: usize,
    rep_word: String,
    l_w: usize,
    #[serde(rename = "R_w")]
    r_w: usize,
    #[serde(rename = "dim_T_w")]
    dim_t_w: usize,
    identity_holds: bool,
    c_small_threshold: usize,
    pairing: &'a str,
}

/// Writes records as CSV; lists are space separated, words 1-based.
pub fn write_csv<W: Write>(records: &[DimensionRecord], out: W) -> Result<()> {
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut wtr = csv::Writer::from_writer(out);
    for r in records {
        wtr.serialize(CsvRow {
            n: r.n,
            lambda: join(r.lambda.parts()),
            dim_o: r.dim_o,
            rep_word: join(&r.cert.rep_word),
            l_w: r.l_w,
            r_w: r.fixed_root_count,
            dim_t_w: r.dim_t_w,
            identity_holds: r.identity_holds,
            c_small_threshold: r.c_small_threshold,
            pairing: &r.pairing,
        })
        .map_err(|e| Error::Domain(format!("csv: {e}")))?;
    }
    wtr.flush().map_err(|e| Error::Domain(format!("csv: {e}")))?;
    Ok(())
}
