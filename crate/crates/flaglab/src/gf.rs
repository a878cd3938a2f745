//! Finite fields `GF(p^k)` with table-driven arithmetic.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! standing for the polynomial `c_0 + c_1 x + ...` modulo a fixed monic
//! irreducible. The prime field is therefore `0..p` under the same encoding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field handled; elements must fit the 4x4 `u8` matrix storage.
pub const MAX_ORDER: usize = 64;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Gf {
    p: u8,
    k: u8,
    q: usize,
    /// Low coefficients of the modulus `x^k + m_{k-1}x^{k-1} + ... + m_0`.
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob: Vec<u8>,
    generator: u8,
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for Gf {}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn digits(mut x: usize, p: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

fn encode(c: &[usize], p: usize) -> usize {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic `b` over `F_p`; coefficient lists, low first.
fn poly_rem(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * bc % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let k = f.len() - 1;
    for deg in 1..=k / 2 {
        for low in 0..p.pow(deg as u32) {
            let mut g = digits(low, p, deg);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of degree `k` whose lower coefficients, read from
/// `x^{k-1}` down to `x^0`, are lexicographically smallest. Returned low first,
/// without the leading 1.
pub fn smallest_irreducible(p: usize, k: usize) -> Vec<usize> {
    if k == 1 {
        return vec![0];
    }
    (0..p.pow(k as u32))
        .map(|code| {
            let mut f = digits(code, p, k);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .map(|mut f| {
            f.pop();
            f
        })
        .expect("irreducibles exist in every degree")
}

impl Gf {
    pub fn new(p: usize, k: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Config(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Config("field degree must be positive".into()));
        }
        let q = p
            .checked_pow(k as u32)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::Config(format!("GF({p}^{k}) exceeds the supported order {MAX_ORDER}")))?;
        let modulus = smallest_irreducible(p, k);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let mut full = modulus.clone();
        full.push(1);
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum, p) as u8;
                let mut prod = vec![0usize; 2 * k - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = if k == 1 { prod } else { poly_rem(&prod, &full, p) };
                r.resize(k, 0);
                mul[a * q + b] = encode(&r, p) as u8;
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * q + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        let mut frob = vec![0u8; q];
        for (a, f) in frob.iter_mut().enumerate() {
            let mut acc = 1u8;
            for _ in 0..p {
                acc = mul[acc as usize * q + a];
            }
            *f = acc;
        }
        let mut field = Gf {
            p: p as u8,
            k: k as u8,
            q,
            modulus: modulus.iter().map(|&c| c as u8).collect(),
            add,
            mul,
            neg,
            inv,
            frob,
            generator: 1,
        };
        field.generator = (1..q as u8)
            .find(|&g| field.mult_order(g) == q - 1)
            .expect("the multiplicative group is cyclic");
        Ok(field)
    }

    /// `GF(q)` for a prime power `q`.
    pub fn of_order(q: usize) -> Result<Self> {
        let p = (2..=q.max(2)).find(|d| q % d == 0).unwrap_or(q);
        let mut k = 0;
        let mut r = q;
        while r > 1 && r % p == 0 {
            r /= p;
            k += 1;
        }
        if r != 1 || q < 2 {
            return Err(Error::Config(format!("{q} is not a prime power")));
        }
        Self::new(p, k)
    }

    pub fn p(&self) -> usize {
        self.p as usize
    }

    pub fn degree(&self) -> usize {
        self.k as usize
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> Vec<usize> {
        self.modulus.iter().map(|&c| c as usize).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    pub fn nonzero(&self) -> impl Iterator<Item = u8> {
        1..self.q as u8
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> u8 {
        self.generator
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; zero maps to zero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x ↦ x^p`.
    #[inline]
    pub fn frobenius(&self, a: u8) -> u8 {
        self.frob[a as usize]
    }

    /// `x ↦ x^{p^e}`.
    pub fn frobenius_pow(&self, a: u8, e: usize) -> u8 {
        (0..e % self.degree()).fold(a, |x, _| self.frobenius(x))
    }

    pub fn mult_order(&self, a: u8) -> usize {
        if a == 0 {
            return 0;
        }
        let mut x = a;
        let mut ord = 1;
        while x != 1 {
            x = self.mul(x, a);
            ord += 1;
        }
        ord
    }

    /// Whether `a` lies in the subfield of order `p^m`.
    pub fn in_subfield(&self, a: u8, m: usize) -> bool {
        self.frobenius_pow(a, m) == a
    }
}
