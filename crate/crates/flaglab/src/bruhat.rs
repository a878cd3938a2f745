//! Bruhat decomposition `GL_n = ⊔ B₀ẇB₀` with `B₀` upper triangular.

use std::sync::Arc;

use weylbraid_core::{Family, RootSystem, WeylElement};

use crate::error::{Error, Result};
use crate::gf::Gf;
use crate::mat::Mat;

/// The root system `A_{n-1}` of `GL_n`.
pub fn type_a(n: usize) -> Result<Arc<RootSystem>> {
    if n < 2 {
        return Err(Error::Config(format!("GL_{n} has no simple reflections")));
    }
    Ok(RootSystem::new(Family::A, n - 1)?)
}

/// The permutation `w` (0-based, `w[j]` = row of the pivot in column `j`)
/// with `x ∈ B₀ẇB₀`, or `None` for a singular matrix.
///
/// Column by column, the lowest nonzero entry is the pivot; row operations
/// upward and column operations rightward clear its row and column, which
/// only multiplies by upper triangular matrices on either side.
pub fn bruhat_perm(x: &Mat, f: &Gf) -> Option<Vec<usize>> {
    let n = x.n();
    let mut m = *x;
    let mut w = vec![0; n];
    for j in 0..n {
        let r = (0..n).rev().find(|&i| m.get(i, j) != 0)?;
        w[j] = r;
        let s = f.inv(m.get(r, j));
        for i in 0..r {
            let c = m.get(i, j);
            if c != 0 {
                let t = f.mul(c, s);
                for k in j..n {
                    m.set(i, k, f.sub(m.get(i, k), f.mul(t, m.get(r, k))));
                }
            }
        }
        for k in j + 1..n {
            let c = m.get(r, k);
            if c != 0 {
                let t = f.mul(c, s);
                for i in 0..n {
                    m.set(i, k, f.sub(m.get(i, k), f.mul(t, m.get(i, j))));
                }
            }
        }
    }
    Some(w)
}

pub fn perm_to_weyl(rs: &Arc<RootSystem>, perm: &[usize]) -> Result<WeylElement> {
    let one_line: Vec<usize> = perm.iter().map(|&v| v + 1).collect();
    Ok(WeylElement::from_one_line(rs, &one_line)?)
}

/// 0-based one-line notation of a type-A element.
pub fn weyl_to_perm(w: &WeylElement) -> Result<Vec<usize>> {
    Ok(w.one_line()?.into_iter().map(|v| v - 1).collect())
}

/// The unique `w` with `x ∈ B₀ẇB₀`.
pub fn bruhat_position(rs: &Arc<RootSystem>, x: &Mat, f: &Gf) -> Result<WeylElement> {
    if x.n() != rs.rank() + 1 {
        return Err(Error::Domain(format!(
            "{}x{} matrix for {}",
            x.n(),
            x.n(),
            rs.cartan_type()
        )));
    }
    let perm = bruhat_perm(x, f).ok_or_else(|| Error::Domain("singular matrix".into()))?;
    perm_to_weyl(rs, &perm)
}

/// Permutation matrix `ẇ` of `w`.
pub fn dot(w: &WeylElement) -> Result<Mat> {
    Ok(Mat::permutation(&weyl_to_perm(w)?))
}

/// Matrix position `(a, b)` of the root `e_a - e_b` with the given index.
pub fn root_position(rs: &RootSystem, idx: usize) -> (usize, usize) {
    let v = rs.root(idx);
    let a = v.iter().position(|&c| c != 0).expect("roots are nonzero");
    let b = v.iter().rposition(|&c| c != 0).expect("roots are nonzero") + 1;
    if v[a] > 0 {
        (a, b)
    } else {
        (b, a)
    }
}
