//! Point sets of the subgroups of `GL_n` attached to a certificate `(w, I)`.
//!
//! `B₀` is upper triangular, `T` diagonal, `U`/`U⁻` upper/lower
//! unitriangular. The root `e_a − e_b` sits at matrix position `(a, b)` and
//! `ẇ` is the permutation matrix with `ẇ e_j = e_{w(j)}`, so that
//! `ẇ U_α ẇ^{-1} = U_{w(α)}`.

use weylbraid_core::weyl::longest_element;
use weylbraid_core::{GoodRepCertificate, WeylElement};

use crate::bruhat::{dot, weyl_to_perm};
use crate::error::{Error, Result};
use crate::flags::{blocks, inversion_positions, pattern_group};
use crate::gf::Gf;
use crate::mat::Mat;

/// Largest Levi subgroup enumerated point by point.
pub const MAX_LEVI_ORDER: u128 = 250_000;

/// How `T^w` and `L_I^w` are cut out: `ẇ^{-1}lẇ = l`, or `ẇ^{-1}lẇ = F(l)`
/// with `F` the `p^e`-power Frobenius.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twisting {
    Split,
    Frobenius(usize),
}

/// Root data of a type-A certificate in matrix positions.
#[derive(Clone, Debug)]
pub struct CertRoots {
    pub n: usize,
    pub mask: u32,
    pub w: WeylElement,
    pub perm: Vec<usize>,
    pub perm_inv: Vec<usize>,
    pub blk: Vec<usize>,
    pub w_prime: WeylElement,
    /// Roots of `U_I`.
    pub u_i: Vec<(usize, usize)>,
    /// `Inv(w)`, the roots of `U^w = U ∩ ẇU⁻ẇ^{-1}`.
    pub u_w: Vec<(usize, usize)>,
    /// Roots of `^wU_I = U_I ∩ ẇU_Iẇ^{-1}`.
    pub w_u_i: Vec<(usize, usize)>,
    /// Roots of `^{w^{-1}}U_I = U_I ∩ ẇ^{-1}U_Iẇ`.
    pub winv_u_i: Vec<(usize, usize)>,
    pub fixed_pos: Vec<(usize, usize)>,
    pub fixed_neg: Vec<(usize, usize)>,
}

impl CertRoots {
    pub fn new(cert: &GoodRepCertificate) -> Result<Self> {
        if !cert.twist.is_identity() {
            return Err(Error::Config("group-level checks model the split case only".into()));
        }
        let perm = weyl_to_perm(&cert.w)?;
        let n = perm.len();
        let mut perm_inv = vec![0; n];
        for (j, &v) in perm.iter().enumerate() {
            perm_inv[v] = j;
        }
        let mask = cert.parabolic_index;
        let blk = blocks(n, mask);
        let positive = || (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        let in_u_i = |(a, b): (usize, usize)| a < b && blk[a] != blk[b];
        let u_i: Vec<_> = positive().filter(|&r| in_u_i(r)).collect();
        let u_w = inversion_positions(&cert.w)?;
        let w_u_i = u_i
            .iter()
            .copied()
            .filter(|&(a, b)| in_u_i((perm_inv[a], perm_inv[b])))
            .collect();
        let winv_u_i = u_i
            .iter()
            .copied()
            .filter(|&(a, b)| in_u_i((perm[a], perm[b])))
            .collect();
        let fixed_pos: Vec<_> = positive().filter(|&(a, b)| perm[a] == a && perm[b] == b).collect();
        let levi_pos: Vec<_> = positive().filter(|&(a, b)| blk[a] == blk[b]).collect();
        if fixed_pos != levi_pos {
            return Err(Error::Domain(format!(
                "fixed roots of {:?} do not form the parabolic of the certificate",
                cert.w.word()
            )));
        }
        let fixed_neg = fixed_pos.iter().map(|&(a, b)| (b, a)).collect();
        Ok(CertRoots {
            n,
            mask,
            w: cert.w.clone(),
            perm,
            perm_inv,
            blk,
            w_prime: longest_element(cert.root_system(), mask),
            u_i,
            u_w,
            w_u_i,
            winv_u_i,
            fixed_pos,
            fixed_neg,
        })
    }

    pub fn length(&self) -> usize {
        self.w.length()
    }
}

/// Diagonal matrices `t` with `ẇ^{-1}tẇ = t` (resp. `F(t)`), i.e.
/// `t_{w(j)} = t_j` (resp. `F(t_j)`).
pub fn torus_fixed(perm: &[usize], f: &Gf, twisting: Twisting) -> Vec<Mat> {
    let n = perm.len();
    let q = f.order() - 1;
    let mut out = Vec::new();
    let mut d = vec![1u8; n];
    for code in 0..q.pow(n as u32) {
        let mut c = code;
        for x in d.iter_mut().rev() {
            *x = (c % q) as u8 + 1;
            c /= q;
        }
        let ok = (0..n).all(|j| {
            let target = match twisting {
                Twisting::Split => d[j],
                Twisting::Frobenius(e) => f.frobenius_pow(d[j], e),
            };
            d[perm[j]] == target
        });
        if ok {
            out.push(Mat::diagonal(&d));
        }
    }
    out
}

/// All invertible block-diagonal matrices for the given block structure.
pub fn levi_group(blk: &[usize], f: &Gf) -> Result<Vec<Mat>> {
    let n = blk.len();
    let q = f.order();
    let sizes: Vec<usize> = (0..=blk[n - 1])
        .map(|b| blk.iter().filter(|&&x| x == b).count())
        .collect();
    let order: u128 = sizes.iter().map(|&m| crate::group::gl_order(m, q)).product();
    if order > MAX_LEVI_ORDER {
        return Err(Error::Resource(format!(
            "|L_I(F_{q})| = {order} exceeds {MAX_LEVI_ORDER}"
        )));
    }
    let mut out = vec![Mat::identity(n)];
    let mut offset = 0;
    for &m in &sizes {
        let mut block_elems = Vec::new();
        for code in 0..q.pow((m * m) as u32) {
            let mut b = Mat::zero(m);
            let mut c = code;
            for slot in (0..m * m).rev() {
                b.set(slot / m, slot % m, (c % q) as u8);
                c /= q;
            }
            if b.det(f) != 0 {
                block_elems.push(b);
            }
        }
        let mut next = Vec::with_capacity(out.len() * block_elems.len());
        for base in &out {
            for b in &block_elems {
                let mut x = *base;
                for i in 0..m {
                    for j in 0..m {
                        x.set(offset + i, offset + j, b.get(i, j));
                    }
                }
                next.push(x);
            }
        }
        out = next;
        offset += m;
    }
    out.sort();
    Ok(out)
}

fn sorted_products(a: &[Mat], b: &[Mat], f: &Gf) -> Vec<Mat> {
    let mut out: Vec<Mat> = a.iter().flat_map(|x| b.iter().map(move |y| x.mul(y, f))).collect();
    out.sort();
    out.dedup();
    out
}

/// Point sets over one field for a certificate; every list is sorted.
pub struct SubgroupSets {
    pub roots: CertRoots,
    pub twisting: Twisting,
    pub w_dot: Mat,
    pub w_dot_inv: Mat,
    pub w_prime_dot: Mat,
    pub t_w: Vec<Mat>,
    pub u_w: Vec<Mat>,
    pub w_u_i: Vec<Mat>,
    pub winv_u_i: Vec<Mat>,
    pub u_i: Vec<Mat>,
    pub u_rw_plus: Vec<Mat>,
    pub u_rw_minus: Vec<Mat>,
}

impl SubgroupSets {
    pub fn new(cert: &GoodRepCertificate, f: &Gf, twisting: Twisting) -> Result<Self> {
        let roots = CertRoots::new(cert)?;
        let n = roots.n;
        let w_dot = dot(&roots.w)?;
        let sorted = |mut v: Vec<Mat>| {
            v.sort();
            v
        };
        Ok(SubgroupSets {
            twisting,
            w_dot,
            w_dot_inv: w_dot.transpose(),
            w_prime_dot: dot(&roots.w_prime)?,
            t_w: torus_fixed(&roots.perm, f, twisting),
            u_w: sorted(pattern_group(n, &roots.u_w, f)),
            w_u_i: sorted(pattern_group(n, &roots.w_u_i, f)),
            winv_u_i: sorted(pattern_group(n, &roots.winv_u_i, f)),
            u_i: sorted(pattern_group(n, &roots.u_i, f)),
            u_rw_plus: sorted(pattern_group(n, &roots.fixed_pos, f)),
            u_rw_minus: sorted(pattern_group(n, &roots.fixed_neg, f)),
            roots,
        })
    }

    pub fn n(&self) -> usize {
        self.roots.n
    }

    pub fn l_i(&self, f: &Gf) -> Result<Vec<Mat>> {
        levi_group(&self.roots.blk, f)
    }

    /// `L_I^w`.
    pub fn l_i_w(&self, f: &Gf) -> Result<Vec<Mat>> {
        Ok(self.l_i(f)?.into_iter().filter(|l| self.in_l_w(l, f)).collect())
    }

    /// Whether a Levi element satisfies `ẇ^{-1}lẇ = l` (resp. `F(l)`).
    pub fn in_l_w(&self, l: &Mat, f: &Gf) -> bool {
        let lhs = self.w_dot_inv.mul(l, f).mul(&self.w_dot, f);
        match self.twisting {
            Twisting::Split => lhs == *l,
            Twisting::Frobenius(e) => lhs == l.frobenius(f, e),
        }
    }

    /// `U^b = U^{w'}·T^w·ẇ'U^{w'w}ẇ'^{-1}`.
    pub fn u_b(&self, f: &Gf) -> Result<Vec<Mat>> {
        let n = self.n();
        let w_prime_w = self.roots.w_prime.compose(&self.roots.w)?;
        let u_wp = pattern_group(n, &inversion_positions(&self.roots.w_prime)?, f);
        let wpd_inv = self.w_prime_dot.transpose();
        let conj: Vec<Mat> = pattern_group(n, &inversion_positions(&w_prime_w)?, f)
            .iter()
            .map(|u| self.w_prime_dot.mul(u, f).mul(&wpd_inv, f))
            .collect();
        Ok(sorted_products(&sorted_products(&u_wp, &self.t_w, f), &conj, f))
    }

    /// `S_Br(b) = U^b·ẇ`.
    pub fn slice(&self, f: &Gf) -> Result<Vec<Mat>> {
        let mut out: Vec<Mat> = self.u_b(f)?.iter().map(|g| g.mul(&self.w_dot, f)).collect();
        out.sort();
        Ok(out)
    }

    /// `U·T^w·U_{(R^w)⁻}`.
    pub fn eta_target(&self, f: &Gf) -> Vec<Mat> {
        let n = self.n();
        let all_pos: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let u = pattern_group(n, &all_pos, f);
        sorted_products(&sorted_products(&u, &self.t_w, f), &self.u_rw_minus, f)
    }

    /// `ẇ·U_I`.
    pub fn w_dot_u_i(&self, f: &Gf) -> Vec<Mat> {
        let mut out: Vec<Mat> = self.u_i.iter().map(|u| self.w_dot.mul(u, f)).collect();
        out.sort();
        out
    }

    /// `U_I·ẇ·U_I`.
    pub fn double_coset(&self, f: &Gf) -> Vec<Mat> {
        let left: Vec<Mat> = self.u_i.iter().map(|u| u.mul(&self.w_dot, f)).collect();
        sorted_products(&left, &self.u_i, f)
    }
}
