//! Commutative polynomial arithmetic over F_q.
//!
//! Polynomials in F_q[x] show up here in two roles: as extension moduli when
//! building field towers, and as elements of the center F[x] ~ F[t^n] of a
//! twisted polynomial ring, where minimal central left multiples live. The
//! module provides exact division, gcd, irreducibility testing (Rabin),
//! complete factorization (Cantor-Zassenhaus, deterministically seeded), and
//! minimal polynomials of matrices over F_q.

use crate::error::{Error, Result};
use crate::fq::{Fq, FqCtx};
use crate::linalg::{require_square, FMatrix};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// A dense univariate polynomial over F_q, coefficients lowest-degree first.
/// Invariant: no trailing zero coefficients (the zero polynomial is `[]`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CenterPoly {
    coeffs: Vec<Fq>,
}

impl CenterPoly {
    pub fn zero() -> Self {
        CenterPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        CenterPoly { coeffs: vec![Fq::ONE] }
    }

    /// The monomial x.
    pub fn x() -> Self {
        CenterPoly { coeffs: vec![Fq::ZERO, Fq::ONE] }
    }

    pub fn constant(c: Fq) -> Self {
        CenterPoly::from_coeffs(vec![c])
    }

    /// The monomial c*x^k.
    pub fn monomial(c: Fq, k: usize) -> Self {
        let mut coeffs = vec![Fq::ZERO; k + 1];
        coeffs[k] = c;
        CenterPoly::from_coeffs(coeffs)
    }

    /// Builds from a coefficient vector (lowest first), trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CenterPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Fq {
        self.coeffs.get(k).copied().unwrap_or(Fq::ZERO)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn leading(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn add(&self, ctx: &FqCtx, other: &CenterPoly) -> CenterPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| ctx.add(self.coeff(i), other.coeff(i))).collect();
        CenterPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self, ctx: &FqCtx) -> CenterPoly {
        CenterPoly { coeffs: self.coeffs.iter().map(|&c| ctx.neg(c)).collect() }
    }

    pub fn sub(&self, ctx: &FqCtx, other: &CenterPoly) -> CenterPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| ctx.sub(self.coeff(i), other.coeff(i))).collect();
        CenterPoly::from_coeffs(coeffs)
    }

    pub fn mul(&self, ctx: &FqCtx, other: &CenterPoly) -> CenterPoly {
        if self.is_zero() || other.is_zero() {
            return CenterPoly::zero();
        }
        let mut coeffs = vec![Fq::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = ctx.add(coeffs[i + j], ctx.mul(a, b));
            }
        }
        CenterPoly::from_coeffs(coeffs)
    }

    pub fn mul_scalar(&self, ctx: &FqCtx, c: Fq) -> CenterPoly {
        CenterPoly::from_coeffs(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    /// Returns (monic associate, leading unit). The zero polynomial maps to
    /// (zero, 1).
    pub fn monic(&self, ctx: &FqCtx) -> (CenterPoly, Fq) {
        if self.is_zero() {
            return (CenterPoly::zero(), Fq::ONE);
        }
        let lead = self.leading();
        if lead.is_one() {
            return (self.clone(), Fq::ONE);
        }
        let inv = ctx.inv(lead).expect("leading coefficient nonzero");
        (self.mul_scalar(ctx, inv), lead)
    }

    /// Evaluation at a point of F_q (Horner).
    pub fn eval(&self, ctx: &FqCtx, a: Fq) -> Fq {
        let mut acc = Fq::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = ctx.add(ctx.mul(acc, a), c);
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self, ctx: &FqCtx) -> CenterPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| ctx.mul(ctx.from_u64(i as u64), c))
            .collect();
        CenterPoly::from_coeffs(coeffs)
    }

    /// Substitutes x := x^k.
    pub fn inflate(&self, k: usize) -> CenterPoly {
        assert!(k >= 1, "inflation exponent must be positive");
        if self.is_zero() {
            return CenterPoly::zero();
        }
        let mut coeffs = vec![Fq::ZERO; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        CenterPoly::from_coeffs(coeffs)
    }

    /// Renders in compact form, highest-degree term first, e.g. `x^2+x+1` or
    /// `(z+1)*x+z`. `genvar` names the generator used for non-prime F_q
    /// coefficients.
    pub fn render(&self, ctx: &FqCtx, var: &str, genvar: &str) -> String {
        render_terms(self.coeffs.iter().map(|&c| coeff_string(ctx, c, genvar)).collect(), var)
    }
}

/// Renders one F_q element, e.g. `2`, `z`, `z+1`.
pub fn coeff_string(ctx: &FqCtx, c: Fq, genvar: &str) -> String {
    crate::fq::fp_render(&ctx.digits(c), genvar)
}

/// Shared polynomial pretty-printer over pre-rendered coefficient strings
/// (lowest-degree first; "0" entries are skipped).
pub fn render_terms(coeff_strings: Vec<String>, var: &str) -> String {
    let mut parts = Vec::new();
    for (k, cs) in coeff_strings.iter().enumerate().rev() {
        if cs == "0" {
            continue;
        }
        let term = if k == 0 {
            cs.clone()
        } else {
            let var_part = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
            if cs == "1" {
                var_part
            } else if cs.contains('+') || cs.contains('*') {
                format!("({cs})*{var_part}")
            } else {
                format!("{cs}*{var_part}")
            }
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

/// Euclidean division: a = q*b + r with deg r < deg b.
pub fn cp_divmod(ctx: &FqCtx, a: &CenterPoly, b: &CenterPoly) -> Result<(CenterPoly, CenterPoly)> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let db = b.degree().expect("b nonzero");
    let lead_inv = ctx.inv(b.leading()).expect("leading coefficient nonzero");
    let mut rem = a.coeffs.clone();
    if rem.len() < db + 1 {
        return Ok((CenterPoly::zero(), a.clone()));
    }
    let mut quot = vec![Fq::ZERO; rem.len() - db];
    for k in (db..rem.len()).rev() {
        let c = rem[k];
        if c.is_zero() {
            continue;
        }
        let qc = ctx.mul(c, lead_inv);
        quot[k - db] = qc;
        for (j, &bc) in b.coeffs.iter().enumerate() {
            rem[k - db + j] = ctx.sub(rem[k - db + j], ctx.mul(qc, bc));
        }
    }
    Ok((CenterPoly::from_coeffs(quot), CenterPoly::from_coeffs(rem)))
}

/// Remainder of a modulo b.
pub fn cp_rem(ctx: &FqCtx, a: &CenterPoly, b: &CenterPoly) -> Result<CenterPoly> {
    Ok(cp_divmod(ctx, a, b)?.1)
}

/// True iff b divides a exactly.
pub fn cp_divides(ctx: &FqCtx, b: &CenterPoly, a: &CenterPoly) -> bool {
    !b.is_zero() && cp_rem(ctx, a, b).expect("divisor nonzero").is_zero()
}

/// Monic greatest common divisor. Errors if both inputs are zero.
pub fn cp_gcd(ctx: &FqCtx, a: &CenterPoly, b: &CenterPoly) -> Result<CenterPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    while !r1.is_zero() {
        let r2 = cp_rem(ctx, &r0, &r1)?;
        r0 = r1;
        r1 = r2;
    }
    Ok(r0.monic(ctx).0)
}

/// Monic least common multiple. lcm(a, 0) = 0.
pub fn cp_lcm(ctx: &FqCtx, a: &CenterPoly, b: &CenterPoly) -> Result<CenterPoly> {
    if a.is_zero() || b.is_zero() {
        return Ok(CenterPoly::zero());
    }
    let g = cp_gcd(ctx, a, b)?;
    let (q, _) = cp_divmod(ctx, a, &g)?;
    Ok(q.mul(ctx, b).monic(ctx).0)
}

/// base^exp modulo `modulus`.
pub fn cp_pow_mod(
    ctx: &FqCtx,
    base: &CenterPoly,
    mut exp: u64,
    modulus: &CenterPoly,
) -> Result<CenterPoly> {
    if modulus.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut base = cp_rem(ctx, base, modulus)?;
    let mut acc = cp_rem(ctx, &CenterPoly::one(), modulus)?;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = cp_rem(ctx, &acc.mul(ctx, &base), modulus)?;
        }
        base = cp_rem(ctx, &base.mul(ctx, &base), modulus)?;
        exp >>= 1;
    }
    Ok(acc)
}

/// Rabin's irreducibility test. Constants and the zero polynomial are not
/// irreducible; degree-1 polynomials always are.
pub fn cp_is_irreducible(ctx: &FqCtx, a: &CenterPoly) -> Result<bool> {
    let Some(d) = a.degree() else {
        return Ok(false);
    };
    if d == 0 {
        return Ok(false);
    }
    if d == 1 {
        return Ok(true);
    }
    let (a, _) = a.monic(ctx);
    let q = ctx.q() as u64;
    let x = cp_rem(ctx, &CenterPoly::x(), &a)?;
    // Checkpoints d/r for each distinct prime r | d, plus the final power d.
    let mut checkpoints: Vec<usize> = distinct_prime_divisors(d).iter().map(|&r| d / r).collect();
    checkpoints.sort_unstable();
    // u = x^(q^i) mod a, advanced one Frobenius application at a time.
    let mut u = x.clone();
    let mut i = 0usize;
    for &cp in &checkpoints {
        while i < cp {
            u = cp_pow_mod(ctx, &u, q, &a)?;
            i += 1;
        }
        let g = cp_gcd(ctx, &u.sub(ctx, &x), &a)?;
        if !g.is_one() {
            return Ok(false);
        }
    }
    while i < d {
        u = cp_pow_mod(ctx, &u, q, &a)?;
        i += 1;
    }
    Ok(u == x)
}

fn distinct_prime_divisors(mut d: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            out.push(p);
            while d.is_multiple_of(p) {
                d /= p;
            }
        }
        p += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

/// Canonical order on monic polynomials: ascending degree, then ascending
/// coefficient vector read from the highest degree down (equivalently the
/// packed base-q value with the constant coefficient fastest-varying).
pub fn cp_cmp(a: &CenterPoly, b: &CenterPoly) -> std::cmp::Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.iter().rev().map(|c| c.0).cmp(b.coeffs.iter().rev().map(|c| c.0)))
}

/// Complete factorization into monic irreducibles.
///
/// Returns the leading unit and the list of (irreducible factor,
/// multiplicity) pairs in canonical order. The randomized equal-degree
/// splitting is driven by a ChaCha stream seeded from `seed`, so results are
/// reproducible; the canonical sort makes the output independent of the seed.
pub fn cp_factor(
    ctx: &FqCtx,
    a: &CenterPoly,
    seed: u64,
) -> Result<(Fq, Vec<(CenterPoly, usize)>)> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (mut f, unit) = a.monic(ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors: Vec<(CenterPoly, usize)> = Vec::new();
    // Multiplicities found after k applications of the p-th root scale by p^k.
    let mut scale = 1usize;
    let p = ctx.p() as usize;
    while f.degree().is_some_and(|d| d >= 1) {
        let fp = f.derivative(ctx);
        if fp.is_zero() {
            f = poly_pth_root(ctx, &f);
            scale *= p;
            continue;
        }
        let g = cp_gcd(ctx, &f, &fp)?;
        let (w, _) = cp_divmod(ctx, &f, &g)?;
        // w is squarefree and nonconstant: it collects every irreducible
        // factor of f whose multiplicity is not divisible by p.
        for h in factor_squarefree(ctx, &w, &mut rng)? {
            let mut mult = 0usize;
            loop {
                let (q, r) = cp_divmod(ctx, &f, &h)?;
                if !r.is_zero() {
                    break;
                }
                f = q;
                mult += 1;
            }
            factors.push((h, mult * scale));
        }
    }
    factors.sort_by(|x, y| cp_cmp(&x.0, &y.0));
    Ok((unit, factors))
}

/// p-th root of a polynomial whose derivative vanishes: f(x) = g(x)^p.
fn poly_pth_root(ctx: &FqCtx, f: &CenterPoly) -> CenterPoly {
    let p = ctx.p() as usize;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|&c| ctx.pth_root(c))
        .collect();
    CenterPoly::from_coeffs(coeffs)
}

/// Factors a monic squarefree polynomial into distinct monic irreducibles
/// (distinct-degree then equal-degree splitting).
fn factor_squarefree(
    ctx: &FqCtx,
    w: &CenterPoly,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<CenterPoly>> {
    let mut out = Vec::new();
    let q = ctx.q() as u64;
    let mut g = w.clone();
    let x = CenterPoly::x();
    let mut h = cp_rem(ctx, &x, &g)?;
    let mut d = 0usize;
    while g.degree().is_some_and(|dg| dg >= 1) {
        let dg = g.degree().expect("g nonconstant");
        if 2 * (d + 1) > dg {
            // What remains is a single irreducible factor.
            out.push(g.clone());
            break;
        }
        d += 1;
        h = cp_pow_mod(ctx, &h, q, &g)?;
        let gd = cp_gcd(ctx, &h.sub(ctx, &cp_rem(ctx, &x, &g)?), &g)?;
        if gd.degree().is_some_and(|dd| dd >= 1) {
            equal_degree_split(ctx, &gd, d, rng, &mut out)?;
            let (qq, _) = cp_divmod(ctx, &g, &gd)?;
            g = qq;
            if g.degree().is_some_and(|dg| dg >= 1) {
                h = cp_rem(ctx, &h, &g)?;
            }
        }
    }
    Ok(out)
}

/// Splits a product of distinct irreducibles, all of degree d, into its
/// factors (Cantor-Zassenhaus).
fn equal_degree_split(
    ctx: &FqCtx,
    g: &CenterPoly,
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<CenterPoly>,
) -> Result<()> {
    let dg = g.degree().expect("nonconstant product");
    if dg == d {
        out.push(g.clone());
        return Ok(());
    }
    let q = ctx.q() as u64;
    loop {
        let r = random_poly_below(ctx, dg, rng);
        if r.is_constant() {
            continue;
        }
        // A common factor with the random element already splits g.
        let shared = cp_gcd(ctx, &r, g)?;
        let candidate = if shared.degree().is_some_and(|ds| ds >= 1) && shared != *g {
            shared
        } else if ctx.p() == 2 {
            // Trace to F_2 of r in each residue field F_{q^d}.
            let mut u = cp_rem(ctx, &r, g)?;
            let mut s = u.clone();
            for _ in 1..(d * ctx.e()) {
                u = cp_rem(ctx, &u.mul(ctx, &u), g)?;
                s = s.add(ctx, &u);
            }
            cp_gcd(ctx, &s, g)?
        } else {
            // Norm to F_q followed by the (q-1)/2 power: s is +-1 in each
            // residue field, and gcd with s - 1 separates the signs.
            let mut u = cp_rem(ctx, &r, g)?;
            let mut s = u.clone();
            for _ in 1..d {
                u = cp_pow_mod(ctx, &u, q, g)?;
                s = cp_rem(ctx, &s.mul(ctx, &u), g)?;
            }
            let b = cp_pow_mod(ctx, &s, (q - 1) / 2, g)?;
            cp_gcd(ctx, &b.sub(ctx, &CenterPoly::one()), g)?
        };
        if candidate.degree().is_some_and(|dc| dc >= 1) && candidate != *g {
            equal_degree_split(ctx, &candidate, d, rng, out)?;
            let (rest, _) = cp_divmod(ctx, g, &candidate)?;
            equal_degree_split(ctx, &rest, d, rng, out)?;
            return Ok(());
        }
    }
}

/// Uniform random polynomial of degree < bound.
fn random_poly_below(ctx: &FqCtx, bound: usize, rng: &mut ChaCha8Rng) -> CenterPoly {
    let q = ctx.q() as u64;
    let reject_at = (u64::MAX / q) * q;
    let coeffs = (0..bound)
        .map(|_| loop {
            let r = rng.next_u64();
            if r < reject_at {
                break Fq((r % q) as u32);
            }
        })
        .collect();
    CenterPoly::from_coeffs(coeffs)
}

/// Minimal polynomial of a square matrix over F_q: the least-degree monic
/// polynomial annihilating it. Computed as the lcm of the minimal
/// polynomials of the standard basis vectors (Krylov relations found by
/// augmented elimination); deterministic.
pub fn min_poly_of_matrix(ctx: &FqCtx, a: &FMatrix) -> Result<CenterPoly> {
    require_square(a)?;
    let n = a.rows();
    let mut minp = CenterPoly::one();
    for start in 0..n {
        if minp.degree() == Some(n) {
            break;
        }
        let local = local_min_poly(ctx, a, start);
        minp = cp_lcm(ctx, &minp, &local)?;
    }
    Ok(minp)
}

/// Minimal polynomial of the basis vector e_start under the matrix action.
fn local_min_poly(ctx: &FqCtx, a: &FMatrix, start: usize) -> CenterPoly {
    let n = a.rows();
    // Reduced Krylov vectors with pivots, each paired with its expression in
    // terms of the original sequence e, Ae, A^2 e, ...
    let mut reduced: Vec<(Vec<Fq>, usize, Vec<Fq>)> = Vec::new();
    let mut v = vec![Fq::ZERO; n];
    v[start] = Fq::ONE;
    for k in 0..=n {
        let mut cur = v.clone();
        let mut combo = vec![Fq::ZERO; k + 1];
        combo[k] = Fq::ONE;
        for (row, piv, row_combo) in &reduced {
            let c = cur[*piv];
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                cur[j] = ctx.sub(cur[j], ctx.mul(c, row[j]));
            }
            for (j, rc) in row_combo.iter().enumerate() {
                combo[j] = ctx.sub(combo[j], ctx.mul(c, *rc));
            }
        }
        match cur.iter().position(|c| !c.is_zero()) {
            None => return CenterPoly::from_coeffs(combo),
            Some(piv) => {
                let inv = ctx.inv(cur[piv]).expect("pivot nonzero");
                for c in cur.iter_mut() {
                    *c = ctx.mul(*c, inv);
                }
                for c in combo.iter_mut() {
                    *c = ctx.mul(*c, inv);
                }
                reduced.push((cur, piv, combo));
            }
        }
        v = a.apply(ctx, &v);
    }
    unreachable!("a Krylov relation must appear within n+1 steps");
}
