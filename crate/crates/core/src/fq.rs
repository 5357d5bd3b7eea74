//! Arithmetic in the coefficient field F_q with q = p^e.
//!
//! An element of F_q = F_p[z]/(base_modulus) is stored in packed form: the
//! digit vector (c_0, c_1, ..., c_{e-1}) of its representative polynomial
//! c_0 + c_1 z + ... is packed into the integer c_0 + c_1 p + c_2 p^2 + ....
//! Packing gives a canonical total order on field elements (used by every
//! "lexicographically least" rule in the crate) and makes elements `Copy`.
//!
//! Multiplicative structure is precomputed into exponent/logarithm tables over
//! a fixed generator, so products and inverses are table lookups; addition is
//! digit-wise modulo p.

use crate::error::{Error, Result};

/// An element of F_q in packed-digit form. Only meaningful relative to the
/// [`FqCtx`] that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq(pub u32);

impl Fq {
    /// The additive identity.
    pub const ZERO: Fq = Fq(0);
    /// The multiplicative identity.
    pub const ONE: Fq = Fq(1);

    /// True for the zero element.
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// True for the one element.
    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

/// Largest supported field size for an `FqCtx` (table sizes stay desk-scale).
const MAX_Q: u64 = 1 << 20;

/// Context holding the defining data and lookup tables of F_q.
#[derive(Debug, Clone)]
pub struct FqCtx {
    p: u64,
    e: usize,
    q: u32,
    /// Monic degree-e modulus over F_p, lowest coefficient first (length e+1).
    base_modulus: Vec<u32>,
    /// exp[i] = generator^i (packed), for i in 0..q-1.
    exp: Vec<u32>,
    /// log[a] = discrete log of nonzero packed a; log[0] is unused.
    log: Vec<u32>,
}

impl PartialEq for FqCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.base_modulus == other.base_modulus
    }
}

impl Eq for FqCtx {}

impl FqCtx {
    /// Builds the field F_q, q = p^e, over F_p[z]/(base_modulus).
    ///
    /// When `base_modulus` is `None` the lexicographically least monic
    /// irreducible polynomial of degree e over F_p is chosen (candidates are
    /// ordered by ascending packed value of their non-leading coefficients,
    /// constant coefficient fastest-varying).
    pub fn new(p: u64, e: usize, base_modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeP(p));
        }
        if e == 0 {
            return Err(Error::DegenerateInput("extension degree e must be >= 1".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q.saturating_mul(p);
            if q > MAX_Q {
                return Err(Error::TowerTooLarge(format!("{p}^{e}")));
            }
        }
        let modulus = match base_modulus {
            Some(m) => {
                let m = fp_trim(m.to_vec(), p);
                if m.len() != e + 1 {
                    return Err(Error::DegreeMismatch {
                        expected: e,
                        got: m.len().saturating_sub(1),
                    });
                }
                if m[e] != 1 {
                    return Err(Error::DegenerateInput("base modulus must be monic".into()));
                }
                if !fp_is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus(fp_render(&m, "z")));
                }
                m
            }
            None => default_base_modulus(p, e),
        };
        let mut ctx = FqCtx {
            p,
            e,
            q: q as u32,
            base_modulus: modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        ctx.build_tables();
        Ok(ctx)
    }

    /// The characteristic p.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The extension degree e of F_q over F_p.
    pub fn e(&self) -> usize {
        self.e
    }

    /// The field size q = p^e.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// The defining modulus over F_p, lowest coefficient first.
    pub fn base_modulus(&self) -> &[u32] {
        &self.base_modulus
    }

    /// Iterates all field elements in canonical (packed ascending) order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(Fq)
    }

    /// Unpacks an element into its digit vector (c_0, ..., c_{e-1}).
    pub fn digits(&self, a: Fq) -> Vec<u32> {
        let mut v = a.0;
        let p = self.p as u32;
        (0..self.e)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    /// Packs a digit vector (truncated or zero-padded to length e) into an element.
    pub fn from_digits(&self, digits: &[u32]) -> Fq {
        let p = self.p as u32;
        let mut v = 0u32;
        for i in (0..self.e).rev() {
            let d = digits.get(i).copied().unwrap_or(0) % p;
            v = v * p + d;
        }
        Fq(v)
    }

    /// Embeds a nonnegative integer via reduction modulo p.
    pub fn from_u64(&self, c: u64) -> Fq {
        Fq((c % self.p) as u32)
    }

    /// Addition.
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.p == 2 {
            return Fq(a.0 ^ b.0);
        }
        let p = self.p as u32;
        let (mut out, mut mult) = (0u32, 1u32);
        let (mut x, mut y) = (a.0, b.0);
        for _ in 0..self.e {
            out += ((x % p + y % p) % p) * mult;
            x /= p;
            y /= p;
            mult *= p;
        }
        Fq(out)
    }

    /// Additive inverse.
    pub fn neg(&self, a: Fq) -> Fq {
        if self.p == 2 {
            return a;
        }
        let p = self.p as u32;
        let (mut out, mut mult) = (0u32, 1u32);
        let mut x = a.0;
        for _ in 0..self.e {
            out += ((p - x % p) % p) * mult;
            x /= p;
            mult *= p;
        }
        Fq(out)
    }

    /// Subtraction.
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    /// Multiplication (table lookup).
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.is_zero() || b.is_zero() {
            return Fq::ZERO;
        }
        let idx = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64)
            % (self.q as u64 - 1);
        Fq(self.exp[idx as usize])
    }

    /// Multiplicative inverse.
    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let l = self.log[a.0 as usize] as u64;
        let idx = (self.q as u64 - 1 - l) % (self.q as u64 - 1);
        Ok(Fq(self.exp[idx as usize]))
    }

    /// Exponentiation by a nonnegative integer.
    pub fn pow(&self, a: Fq, k: u64) -> Fq {
        if k == 0 {
            return Fq::ONE;
        }
        if a.is_zero() {
            return Fq::ZERO;
        }
        let l = self.log[a.0 as usize] as u64;
        let idx = (l % (self.q as u64 - 1)) * (k % (self.q as u64 - 1)) % (self.q as u64 - 1);
        Fq(self.exp[idx as usize])
    }

    /// The unique p-th root in F_q (Frobenius is bijective): a^(p^(e-1)).
    pub fn pth_root(&self, a: Fq) -> Fq {
        let mut k = 1u64;
        for _ in 0..self.e.saturating_sub(1) {
            k *= self.p;
        }
        self.pow(a, k)
    }

    /// True iff the element lies in the prime field F_p (single nonconstant
    /// digit zero), i.e. its packed value is below p.
    pub fn in_prime_field(&self, a: Fq) -> bool {
        (a.0 as u64) < self.p
    }

    /// Product without lookup tables: schoolbook polynomial multiplication of
    /// digit vectors modulo the base modulus. Used during table construction.
    fn raw_mul(&self, a: Fq, b: Fq) -> Fq {
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u32; 2 * self.e];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p) as u32;
            }
        }
        let rem = fp_rem(prod, &self.base_modulus, self.p);
        self.from_digits(&rem)
    }

    /// Builds the exp/log tables over the least generator of F_q^*.
    fn build_tables(&mut self) {
        let q = self.q as usize;
        // Find the smallest packed value generating the multiplicative group.
        let mut generator = Fq(1);
        if q > 2 {
            'cand: for c in 2..q as u32 {
                let cand = Fq(c);
                let mut x = cand;
                let mut ord = 1usize;
                while !x.is_one() {
                    x = self.raw_mul(x, cand);
                    ord += 1;
                    if ord >= q {
                        break;
                    }
                }
                if ord == q - 1 {
                    generator = cand;
                    break 'cand;
                }
            }
        }
        let mut exp = vec![0u32; q.saturating_sub(1).max(1)];
        let mut log = vec![0u32; q];
        let mut x = Fq::ONE;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x.0;
            log[x.0 as usize] = i as u32;
            x = self.raw_mul(x, generator);
        }
        self.exp = exp;
        self.log = log;
    }
}

/// Deterministic primality test by trial division (inputs are desk-scale).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The lexicographically least monic irreducible polynomial of degree e over
/// F_p: candidates t^e + (non-leading part) are scanned by ascending packed
/// value of the non-leading coefficient vector (constant term fastest).
pub fn default_base_modulus(p: u64, e: usize) -> Vec<u32> {
    let pe = (p as u128).pow(e as u32);
    for v in 0..pe {
        let mut coeffs = Vec::with_capacity(e + 1);
        let mut x = v;
        for _ in 0..e {
            coeffs.push((x % p as u128) as u32);
            x /= p as u128;
        }
        coeffs.push(1);
        if fp_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

// ---- Polynomial helpers over F_p (digit vectors, lowest coefficient first) ----

fn fp_trim(mut a: Vec<u32>, p: u64) -> Vec<u32> {
    for c in a.iter_mut() {
        *c %= p as u32;
    }
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo monic `m` over F_p.
fn fp_rem(a: Vec<u32>, m: &[u32], p: u64) -> Vec<u32> {
    let mut r = fp_trim(a, p);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap() as u64;
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = lead * c as u64 % p;
            let idx = shift + i;
            r[idx] = ((r[idx] as u64 + p - sub) % p) as u32;
        }
        r = fp_trim(r, p);
    }
    r
}

/// Irreducibility over F_p by trial division against every monic polynomial
/// of degree at most deg/2 (desk-scale inputs only).
fn fp_is_irreducible(m: &[u32], p: u64) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u128).pow(d as u32);
        for v in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut x = v;
            for _ in 0..d {
                cand.push((x % p as u128) as u32);
                x /= p as u128;
            }
            cand.push(1);
            if fp_divides(&cand, m, p) {
                return false;
            }
        }
    }
    true
}

fn fp_divides(divisor: &[u32], m: &[u32], p: u64) -> bool {
    fp_rem(m.to_vec(), divisor, p).is_empty()
}

/// Renders a digit-vector polynomial over F_p in the given variable.
pub fn fp_render(coeffs: &[u32], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let body = match i {
            0 => c.to_string(),
            1 if c == 1 => var.to_string(),
            1 => format!("{c}*{var}"),
            _ if c == 1 => format!("{var}^{i}"),
            _ => format!("{c}*{var}^{i}"),
        };
        parts.push(body);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}
