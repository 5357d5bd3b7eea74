//! The twisted polynomial ring R = K[t; sigma] with t*a = sigma(a)*t.
//!
//! R is a left and right Euclidean domain (sigma is bijective), which gives
//! right/left division, greatest common right divisors, least common left
//! multiples, and — through the companion-matrix construction — the minimal
//! central left multiple h(t) = hhat(t^n) of any f with (f, t)_r = 1.

use crate::centerpoly::{min_poly_of_matrix, render_terms, CenterPoly};
use crate::error::{Error, Result};
use crate::fq::Fq;
use crate::linalg::FMatrix;
use crate::tower::{FieldTower, KElem};

/// A twisted polynomial over K, coefficients lowest degree first.
/// Invariant: no trailing zero coefficients (zero polynomial = empty vector).
#[derive(Clone)]
pub struct SkewPoly {
    tower: FieldTower,
    coeffs: Vec<KElem>,
}

impl std::fmt::Debug for SkewPoly {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "SkewPoly({})", self.render())
    }
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        self.tower == other.tower && self.coeffs == other.coeffs
    }
}
impl Eq for SkewPoly {}

impl SkewPoly {
    pub fn zero(tower: &FieldTower) -> Self {
        SkewPoly { tower: tower.clone(), coeffs: Vec::new() }
    }

    pub fn one(tower: &FieldTower) -> Self {
        SkewPoly::constant(tower.one())
    }

    /// The indeterminate t.
    pub fn t(tower: &FieldTower) -> Self {
        SkewPoly::monomial(tower.one(), 1)
    }

    pub fn constant(c: KElem) -> Self {
        let tower = c.tower().clone();
        SkewPoly::from_coeffs(&tower, vec![c])
    }

    /// The monomial c * t^k.
    pub fn monomial(c: KElem, k: usize) -> Self {
        let tower = c.tower().clone();
        let mut coeffs = vec![tower.zero(); k + 1];
        coeffs[k] = c;
        SkewPoly::from_coeffs(&tower, coeffs)
    }

    /// Builds from coefficients (lowest first), trimming trailing zeros.
    /// Panics if a coefficient belongs to a different tower.
    pub fn from_coeffs(tower: &FieldTower, mut coeffs: Vec<KElem>) -> Self {
        assert!(
            coeffs.iter().all(|c| c.tower() == tower),
            "all coefficients must come from the same tower"
        );
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly { tower: tower.clone(), coeffs }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coeffs(&self) -> &[KElem] {
        &self.coeffs
    }

    /// Coefficient of t^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> KElem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.tower.zero())
    }

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

    pub fn leading(&self) -> KElem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.tower.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn add(&self, other: &SkewPoly) -> SkewPoly {
        assert!(self.tower == other.tower, "tower mismatch in addition");
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        SkewPoly::from_coeffs(&self.tower, coeffs)
    }

    pub fn neg(&self) -> SkewPoly {
        SkewPoly { tower: self.tower.clone(), coeffs: self.coeffs.iter().map(KElem::neg).collect() }
    }

    pub fn sub(&self, other: &SkewPoly) -> SkewPoly {
        self.add(&other.neg())
    }

    /// Left scalar multiple c*f (plain coefficient scaling, since c t^i = c t^i).
    pub fn scale(&self, c: &KElem) -> SkewPoly {
        SkewPoly::from_coeffs(
            &self.tower,
            self.coeffs.iter().map(|a| c.mul(a)).collect(),
        )
    }

    /// The monic associate lead^{-1} * f together with the leading unit.
    pub fn monic(&self) -> (SkewPoly, KElem) {
        if self.is_zero() {
            return (self.clone(), self.tower.one());
        }
        let lead = self.leading();
        if lead.is_one() {
            return (self.clone(), lead);
        }
        let inv = lead.inv().expect("leading coefficient nonzero");
        (self.scale(&inv), lead)
    }

    /// Number of trailing zero coefficients: the largest v with t^v a right
    /// factor (degree of the gcrd with a big power of t). Zero polynomial
    /// reports 0.
    pub fn t_valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Splits f = g * t^v (right factor t^v), returning (g, v).
    pub fn strip_t_valuation(&self) -> (SkewPoly, usize) {
        let v = self.t_valuation();
        (SkewPoly::from_coeffs(&self.tower, self.coeffs[v..].to_vec()), v)
    }

    /// True iff the polynomial is central: lies in F[t^n], i.e. nonzero
    /// coefficients only at degrees divisible by n, each in F.
    pub fn is_central(&self) -> bool {
        let n = self.tower.n();
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || (i % n == 0 && c.is_in_f()))
    }

    /// Canonical compact rendering, e.g. `t^2+(g+1)*t+g`.
    pub fn render(&self) -> String {
        let strings = self.coeffs.iter().map(|c| c.render()).collect();
        render_terms(strings, "t")
    }
}

/// Twisted product: coefficient of t^k in a*b is sum over i+j=k of
/// a_i * sigma^i(b_j).
pub fn s_mul(a: &SkewPoly, b: &SkewPoly) -> Result<SkewPoly> {
    a.tower().require_same(b.tower())?;
    let tower = a.tower();
    if a.is_zero() || b.is_zero() {
        return Ok(SkewPoly::zero(tower));
    }
    let mut coeffs = vec![tower.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, ai) in a.coeffs.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            coeffs[i + j] = coeffs[i + j].add(&ai.mul(&bj.frobenius(i)));
        }
    }
    Ok(SkewPoly::from_coeffs(tower, coeffs))
}

/// Right division: a = q*b + r with deg r < deg b; the pair is unique.
pub fn s_right_divmod(a: &SkewPoly, b: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
    a.tower().require_same(b.tower())?;
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let tower = a.tower();
    let db = b.degree().expect("b nonzero");
    let lead_inv = b.leading().inv().expect("leading coefficient nonzero");
    let mut rem = a.coeffs.clone();
    if rem.len() < db + 1 {
        return Ok((SkewPoly::zero(tower), a.clone()));
    }
    let mut quot = vec![tower.zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        // q_c t^{k-db} * b has top coefficient q_c * sigma^{k-db}(lead_b).
        let shift = k - db;
        let qc = rem[k].mul(&lead_inv.frobenius(shift));
        quot[shift] = qc.clone();
        for (j, bj) in b.coeffs.iter().enumerate() {
            let delta = qc.mul(&bj.frobenius(shift));
            rem[shift + j] = rem[shift + j].sub(&delta);
        }
    }
    Ok((SkewPoly::from_coeffs(tower, quot), SkewPoly::from_coeffs(tower, rem)))
}

/// Remainder of right division.
pub fn s_rem(a: &SkewPoly, b: &SkewPoly) -> Result<SkewPoly> {
    Ok(s_right_divmod(a, b)?.1)
}

/// True iff b is a right divisor of a (a = q*b exactly).
pub fn s_right_divides(b: &SkewPoly, a: &SkewPoly) -> bool {
    !b.is_zero() && s_rem(a, b).map(|r| r.is_zero()).unwrap_or(false)
}

/// Left division: a = b*q + r with deg r < deg b.
pub fn s_left_divmod(a: &SkewPoly, b: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
    a.tower().require_same(b.tower())?;
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let tower = a.tower();
    let n = tower.n();
    let db = b.degree().expect("b nonzero");
    let lead_inv = b.leading().inv().expect("leading coefficient nonzero");
    let mut rem = a.coeffs.clone();
    if rem.len() < db + 1 {
        return Ok((SkewPoly::zero(tower), a.clone()));
    }
    let mut quot = vec![tower.zero(); rem.len() - db];
    // b * q_c t^{k-db} has top coefficient lead_b * sigma^{db}(q_c), so
    // q_c = sigma^{-db}(rem_k * lead_b^{-1}); sigma^{-db} = sigma^{(n - db mod n) mod n}.
    let back = (n - (db % n)) % n;
    for k in (db..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let shift = k - db;
        let qc = rem[k].mul(&lead_inv).frobenius(back);
        quot[shift] = qc.clone();
        for (j, bj) in b.coeffs.iter().enumerate() {
            let delta = bj.mul(&qc.frobenius(j));
            rem[j + shift] = rem[j + shift].sub(&delta);
        }
    }
    Ok((SkewPoly::from_coeffs(tower, quot), SkewPoly::from_coeffs(tower, rem)))
}

/// Monic greatest common right divisor via the right Euclidean algorithm.
pub fn s_gcrd(a: &SkewPoly, b: &SkewPoly) -> Result<SkewPoly> {
    a.tower().require_same(b.tower())?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    while !r1.is_zero() {
        let r2 = s_rem(&r0, &r1)?;
        r0 = r1;
        r1 = r2;
    }
    Ok(r0.monic().0)
}

/// Monic least common left multiple via the extended right Euclidean
/// algorithm: tracking r_i = u_i*a + v_i*b, the u at the vanishing remainder
/// gives lclm = monic(u*a), of degree deg a + deg b - deg gcrd(a,b).
pub fn s_lclm(a: &SkewPoly, b: &SkewPoly) -> Result<SkewPoly> {
    a.tower().require_same(b.tower())?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let tower = a.tower();
    let mut r0 = a.clone();
    let mut u0 = SkewPoly::one(tower);
    let mut r1 = b.clone();
    let mut u1 = SkewPoly::zero(tower);
    while !r1.is_zero() {
        let (q, r2) = s_right_divmod(&r0, &r1)?;
        let u2 = u0.sub(&s_mul(&q, &u1)?);
        r0 = r1;
        u0 = u1;
        r1 = r2;
        u1 = u2;
    }
    let m = s_mul(&u1, a)?.monic().0;
    debug_assert!(s_right_divides(a, &m) && s_right_divides(b, &m));
    Ok(m)
}

/// Right invariance test: R*f is a two-sided ideal iff every nonzero lower
/// coefficient a_i lies in F and n divides m - i. Exactly these f make the
/// quotient S_f associative and factor as a * (central) * t^v.
pub fn is_right_invariant(f: &SkewPoly) -> bool {
    let Some(m) = f.degree() else {
        return false;
    };
    let n = f.tower().n();
    f.coeffs[..m]
        .iter()
        .enumerate()
        .all(|(i, c)| c.is_zero() || (c.is_in_f() && (m - i) % n == 0))
}

/// The minimal central left multiple of f and its hat polynomial.
#[derive(Debug, Clone)]
pub struct MclmResult {
    /// h(t) = hhat(t^n): the least-degree monic central multiple of the
    /// t-valuation-free part of f.
    pub h: SkewPoly,
    /// hhat in F[x] with h = hhat(t^n); monic.
    pub hhat: CenterPoly,
    /// cofactor with h = cofactor * (f stripped of its t-valuation).
    pub cofactor: SkewPoly,
    /// v where the input factored as f = (stripped part) * t^v.
    pub t_valuation: usize,
}

/// Computes the minimal central left multiple h = hhat(t^n) of f.
///
/// If f has a zero constant term, the t-valuation v is stripped first
/// (f = g * t^v) and the computation runs on g; v is recorded. The
/// construction follows the companion-matrix route: left multiplication by
/// t on R/Rf acts on coordinates as c -> C sigma(c) for the companion
/// matrix C of f, so the central t^n acts K-linearly with matrix
/// A_f = C C^{sigma} ... C^{sigma^{n-1}}; flattening A_f to an mn-by-mn
/// matrix over F through the regular representation of K, hhat is its
/// minimal polynomial.
pub fn mclm(f: &SkewPoly) -> Result<MclmResult> {
    if !f.is_monic() {
        return Err(Error::DegenerateInput("mclm requires a monic polynomial".into()));
    }
    let (g, v) = f.strip_t_valuation();
    if g.is_constant() && v == 0 {
        return Err(Error::DegenerateInput("mclm requires degree at least 1".into()));
    }
    let tower = f.tower();
    let m = g.degree().expect("g nonzero");
    if m == 0 {
        // f was a pure power of t; the stripped part is 1.
        return Ok(MclmResult {
            h: SkewPoly::one(tower),
            hhat: CenterPoly::one(),
            cofactor: SkewPoly::one(tower),
            t_valuation: v,
        });
    }
    let a_f = twisted_companion_product(&g);
    let flat = flatten_k_matrix(tower, &a_f);
    let hhat = min_poly_of_matrix(tower.base(), &flat)?;
    // h(t) = hhat(t^n), coefficients embedded from F into K.
    let h = center_to_skew(tower, &hhat);
    let (cofactor, rem) = s_right_divmod(&h, &g)?;
    assert!(rem.is_zero(), "the minimal central left multiple must be right-divisible by f");
    Ok(MclmResult { h, hhat, t_valuation: v, cofactor })
}

/// Interprets p(x) in F[x] as the central polynomial p(t^n) in K[t;sigma].
pub fn center_to_skew(tower: &FieldTower, p: &CenterPoly) -> SkewPoly {
    let n = tower.n();
    let mut coeffs = Vec::new();
    for (j, &c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            coeffs.resize(j * n + 1, tower.zero());
            coeffs[j * n] = tower.from_base(c);
        }
    }
    SkewPoly::from_coeffs(tower, coeffs)
}

/// Extracts hhat from a central polynomial h = hhat(t^n); None if h is not
/// central.
pub fn skew_to_center(h: &SkewPoly) -> Option<CenterPoly> {
    if !h.is_central() {
        return None;
    }
    let n = h.tower().n();
    let coeffs = h
        .coeffs()
        .iter()
        .step_by(n)
        .map(|c| c.base_part().expect("central coefficients lie in F"))
        .collect();
    Some(CenterPoly::from_coeffs(coeffs))
}

/// A_f = C C^{sigma} ... C^{sigma^{n-1}} over K for the companion matrix C
/// of the monic f (last column holds -a_i); the untwisted factor sits on
/// the left because each application of t twists the coordinates that were
/// already in place.
fn twisted_companion_product(f: &SkewPoly) -> Vec<Vec<KElem>> {
    let tower = f.tower();
    let m = f.degree().expect("f nonconstant");
    let n = tower.n();
    let mut companion = vec![vec![tower.zero(); m]; m];
    for i in 0..m {
        if i + 1 < m {
            companion[i + 1][i] = tower.one();
        }
        companion[i][m - 1] = f.coeff(i).neg();
    }
    let mut acc = k_identity(tower, m);
    for j in 0..n {
        let twisted = k_matrix_frobenius(&companion, j);
        acc = k_matrix_mul(&acc, &twisted);
    }
    acc
}

fn k_identity(tower: &FieldTower, m: usize) -> Vec<Vec<KElem>> {
    let mut out = vec![vec![tower.zero(); m]; m];
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = tower.one();
    }
    out
}

fn k_matrix_frobenius(a: &[Vec<KElem>], j: usize) -> Vec<Vec<KElem>> {
    a.iter().map(|row| row.iter().map(|x| x.frobenius(j)).collect()).collect()
}

fn k_matrix_mul(a: &[Vec<KElem>], b: &[Vec<KElem>]) -> Vec<Vec<KElem>> {
    let m = a.len();
    let mut out = Vec::with_capacity(m);
    for ai in a {
        let mut row = Vec::with_capacity(m);
        for j in 0..m {
            let mut acc = ai[0].mul(&b[0][j]);
            for (k, bk) in b.iter().enumerate().skip(1) {
                acc = acc.add(&ai[k].mul(&bk[j]));
            }
            row.push(acc);
        }
        out.push(row);
    }
    out
}

/// Flattens an m-by-m matrix over K to an mn-by-mn matrix over F by
/// replacing each entry with its regular-representation block. This is an
/// F-algebra homomorphism, so minimal polynomials over F are preserved.
fn flatten_k_matrix(tower: &FieldTower, a: &[Vec<KElem>]) -> FMatrix {
    let m = a.len();
    let n = tower.n();
    let mut out = FMatrix::zero(m * n, m * n);
    for (bi, row) in a.iter().enumerate() {
        for (bj, entry) in row.iter().enumerate() {
            if entry.is_zero() {
                continue;
            }
            let block = tower.mul_matrix(entry);
            for i in 0..n {
                for j in 0..n {
                    out.set(bi * n + i, bj * n + j, block.get(i, j));
                }
            }
        }
    }
    out
}

/// Convenience: the coordinates of a skew polynomial of degree < m as an
/// mn-vector over F (coefficient i occupies positions i*n .. i*n + n).
pub fn skew_to_flat(tower: &FieldTower, g: &SkewPoly, m: usize) -> Vec<Fq> {
    let n = tower.n();
    let mut out = vec![Fq::ZERO; m * n];
    for (i, c) in g.coeffs().iter().enumerate() {
        out[i * n..(i + 1) * n].copy_from_slice(c.coords());
    }
    out
}

/// Inverse of `skew_to_flat`.
pub fn flat_to_skew(tower: &FieldTower, v: &[Fq]) -> SkewPoly {
    let n = tower.n();
    let coeffs = v
        .chunks(n)
        .map(|chunk| tower.from_coords(chunk).expect("chunk length n"))
        .collect();
    SkewPoly::from_coeffs(tower, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::build_tower;

    fn f4() -> FieldTower {
        build_tower(2, 1, 2, None, None).unwrap()
    }

    fn f9() -> FieldTower {
        build_tower(3, 1, 2, None, None).unwrap()
    }

    /// Builds a polynomial from packed coefficient indices, lowest first.
    fn sp(tower: &FieldTower, packed: &[u64]) -> SkewPoly {
        SkewPoly::from_coeffs(
            tower,
            packed.iter().map(|&i| tower.element_from_index(i)).collect(),
        )
    }

    #[test]
    fn defining_relation_t_times_g() {
        let tower = f4();
        let t = SkewPoly::t(&tower);
        let g = SkewPoly::constant(tower.generator());
        // t * g = sigma(g) t = (g+1) t.
        let prod = s_mul(&t, &g).unwrap();
        assert_eq!(prod, sp(&tower, &[0, 3]));
        assert_eq!(prod.render(), "(g+1)*t");
    }

    #[test]
    fn pinned_products_over_f4() {
        let tower = f4();
        // (t+1)^2 = t^2+1: the cross terms sigma(1)t and 1*t cancel... they
        // add to 2t = 0 in characteristic 2.
        let t1 = sp(&tower, &[1, 1]);
        assert_eq!(s_mul(&t1, &t1).unwrap(), sp(&tower, &[1, 0, 1]));
        // (t+g)(t+1) = t^2 + (g+1)t + g.
        let a = sp(&tower, &[2, 1]);
        let b = sp(&tower, &[1, 1]);
        let prod = s_mul(&a, &b).unwrap();
        assert_eq!(prod, sp(&tower, &[2, 3, 1]));
        assert_eq!(prod.render(), "t^2+(g+1)*t+g");
    }

    #[test]
    fn degree_law_holds() {
        let tower = f9();
        let a = sp(&tower, &[5, 0, 7]);
        let b = sp(&tower, &[2, 8]);
        assert_eq!(
            s_mul(&a, &b).unwrap().degree(),
            Some(a.degree().unwrap() + b.degree().unwrap())
        );
    }

    #[test]
    fn right_division_pinned_examples() {
        let tower = f4();
        // (t^2+1) / (t+1) -> (t+1, 0).
        let (q, r) = s_right_divmod(&sp(&tower, &[1, 0, 1]), &sp(&tower, &[1, 1])).unwrap();
        assert_eq!(q, sp(&tower, &[1, 1]));
        assert!(r.is_zero());
        // (t^2+g) / (t+g) -> (t+g+1, g+1) using sigma(g) = g+1.
        let (q, r) = s_right_divmod(&sp(&tower, &[2, 0, 1]), &sp(&tower, &[2, 1])).unwrap();
        assert_eq!(q, sp(&tower, &[3, 1]));
        assert_eq!(r, sp(&tower, &[3]));
        // Division by a constant.
        let a = sp(&tower, &[2, 3, 1]);
        let (q, r) = s_right_divmod(&a, &SkewPoly::one(&tower)).unwrap();
        assert_eq!(q, a);
        assert!(r.is_zero());
    }

    #[test]
    fn right_division_round_trips_exhaustively() {
        // All (a, b) with deg a <= 2, deg b = 1 over F_4: quotient-remainder
        // reconstruction and degree bound.
        let tower = f4();
        for ai in 0..64u64 {
            let a = sp(&tower, &[ai % 4, (ai / 4) % 4, ai / 16]);
            for bi in 0..4u64 {
                let b = sp(&tower, &[bi, 1]);
                let (q, r) = s_right_divmod(&a, &b).unwrap();
                assert_eq!(s_mul(&q, &b).unwrap().add(&r), a);
                assert!(r.is_constant());
            }
        }
    }

    #[test]
    fn left_division_round_trips() {
        let tower = f4();
        for ai in 0..256u64 {
            let a = sp(&tower, &[ai % 4, (ai / 4) % 4, (ai / 16) % 4, ai / 64]);
            for bi in 0..16u64 {
                let b = sp(&tower, &[bi % 4, bi / 4, 1]);
                let (q, r) = s_left_divmod(&a, &b).unwrap();
                assert_eq!(s_mul(&b, &q).unwrap().add(&r), a);
                assert!(r.degree().is_none_or(|d| d < 2));
            }
        }
    }

    #[test]
    fn left_division_handles_twist() {
        let tower = f4();
        // t*g: left-divide by t: t * sigma^{-1}(g) = g t, so q = sigma^{-1}(g) = g+1...
        // sigma has order 2, so sigma^{-1}(g) = sigma(g) = g+1.
        let a = s_mul(&SkewPoly::constant(tower.generator()), &SkewPoly::t(&tower)).unwrap();
        let (q, r) = s_left_divmod(&a, &SkewPoly::t(&tower)).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, SkewPoly::constant(tower.generator().frobenius(1)));
    }

    #[test]
    fn division_by_zero_is_rejected() {
        let tower = f4();
        let z = SkewPoly::zero(&tower);
        assert!(matches!(s_right_divmod(&sp(&tower, &[1, 1]), &z), Err(Error::DivisionByZero)));
        assert!(matches!(s_left_divmod(&sp(&tower, &[1, 1]), &z), Err(Error::DivisionByZero)));
    }

    #[test]
    fn gcrd_pinned_examples() {
        let tower = f4();
        // t^2+1 and t^2+(g+1)t+g share the right factor t+1.
        let d = s_gcrd(&sp(&tower, &[1, 0, 1]), &sp(&tower, &[2, 3, 1])).unwrap();
        assert_eq!(d, sp(&tower, &[1, 1]));
        // gcrd with zero is the monic associate.
        let d = s_gcrd(&sp(&tower, &[0, 2]), &SkewPoly::zero(&tower)).unwrap();
        assert_eq!(d, sp(&tower, &[0, 1]));
        // t^2+g and t are right-coprime (constant term nonzero).
        let d = s_gcrd(&sp(&tower, &[2, 0, 1]), &SkewPoly::t(&tower)).unwrap();
        assert!(d.is_one());
        assert!(matches!(
            s_gcrd(&SkewPoly::zero(&tower), &SkewPoly::zero(&tower)),
            Err(Error::BothZero)
        ));
    }

    #[test]
    fn gcrd_divides_both_inputs() {
        let tower = f9();
        for ai in 0..81u64 {
            let a = sp(&tower, &[ai % 9, ai / 9, 1]);
            let b = sp(&tower, &[(ai * 7) % 9, 1]);
            let d = s_gcrd(&a, &b).unwrap();
            assert!(s_right_divides(&d, &a));
            assert!(s_right_divides(&d, &b));
        }
    }

    #[test]
    fn lclm_degree_and_divisibility() {
        let tower = f4();
        let t1 = sp(&tower, &[1, 1]);
        assert_eq!(s_lclm(&t1, &t1).unwrap(), t1);
        for (a, b) in [
            (sp(&tower, &[1, 1]), sp(&tower, &[2, 1])),
            (SkewPoly::t(&tower), sp(&tower, &[1, 1])),
        ] {
            let m = s_lclm(&a, &b).unwrap();
            assert!(s_right_divides(&a, &m), "lclm must be right-divisible by a");
            assert!(s_right_divides(&b, &m), "lclm must be right-divisible by b");
            let d = s_gcrd(&a, &b).unwrap();
            let expected = a.degree().unwrap() + b.degree().unwrap()
                - d.degree().unwrap();
            assert_eq!(m.degree(), Some(expected));
        }
        assert!(matches!(
            s_lclm(&SkewPoly::zero(&tower), &t1),
            Err(Error::ZeroInput)
        ));
    }

    #[test]
    fn right_invariance_pinned_cases() {
        let tower = f4();
        assert!(is_right_invariant(&sp(&tower, &[1, 0, 1]))); // t^2+1
        assert!(!is_right_invariant(&sp(&tower, &[2, 0, 1]))); // t^2+g
        assert!(!is_right_invariant(&sp(&tower, &[1, 1, 1]))); // t^2+t+1
        assert!(is_right_invariant(&sp(&tower, &[0, 1]))); // t
        assert!(is_right_invariant(&sp(&tower, &[0, 1, 0, 1]))); // t^3+t = (t^2+1)t
    }

    #[test]
    fn right_invariant_polynomials_factor_through_the_center() {
        // Cross-check the coefficient criterion against the structural form
        // a * c(t) * t^v with c central: exhaustively over monic degree <= 3.
        let tower = f4();
        for idx in 0..64u64 {
            let f = sp(&tower, &[idx % 4, (idx / 4) % 4, (idx / 16) % 4, 1]);
            let (g, v) = f.strip_t_valuation();
            let claim = is_right_invariant(&f);
            // Structural check: g central after valuation stripping (monic
            // input makes the unit a trivial 1).
            assert_eq!(claim, g.is_central(), "mismatch at {:?} (v={})", f, v);
        }
    }

    #[test]
    fn mclm_worked_example_t2_plus_g() {
        let tower = f4();
        let f = sp(&tower, &[2, 0, 1]);
        let r = mclm(&f).unwrap();
        let f2 = tower.base();
        assert_eq!(r.hhat, CenterPoly::from_coeffs(vec![Fq(1), Fq(1), Fq(1)]));
        assert_eq!(r.hhat.render(f2, "x", "z"), "x^2+x+1");
        assert_eq!(r.h, sp(&tower, &[1, 0, 1, 0, 1]));
        assert_eq!(r.h.render(), "t^4+t^2+1");
        assert_eq!(r.cofactor, sp(&tower, &[3, 0, 1]));
        assert_eq!(r.t_valuation, 0);
        assert_eq!(s_mul(&r.cofactor, &f).unwrap(), r.h);
    }

    #[test]
    fn mclm_of_central_f_is_itself() {
        let tower = f4();
        let f = sp(&tower, &[1, 0, 1]); // t^2+1 central
        let r = mclm(&f).unwrap();
        assert_eq!(r.hhat, CenterPoly::from_coeffs(vec![Fq(1), Fq(1)]));
        assert_eq!(r.h, f);
        assert!(r.cofactor.is_one());
    }

    #[test]
    fn mclm_worked_example_with_reducible_hhat() {
        let tower = f4();
        let f = sp(&tower, &[2, 3, 1]); // t^2+(g+1)t+g
        let r = mclm(&f).unwrap();
        assert_eq!(r.hhat, CenterPoly::from_coeffs(vec![Fq(1), Fq(0), Fq(1)])); // x^2+1
        assert_eq!(r.h, sp(&tower, &[1, 0, 0, 0, 1])); // t^4+1
        assert_eq!(s_mul(&r.cofactor, &f).unwrap(), r.h);
    }

    #[test]
    fn mclm_strips_t_valuation() {
        let tower = f4();
        let f = sp(&tower, &[0, 2, 0, 1]); // (t^2+g) t
        let r = mclm(&f).unwrap();
        assert_eq!(r.t_valuation, 1);
        assert_eq!(r.hhat.render(tower.base(), "x", "z"), "x^2+x+1");
        // Pure power of t.
        let r = mclm(&sp(&tower, &[0, 0, 1])).unwrap();
        assert_eq!(r.t_valuation, 2);
        assert!(r.h.is_one() && r.hhat.is_one());
    }

    #[test]
    fn mclm_output_is_central_and_minimal_bruteforce() {
        // Independent oracle: the least monic hhat (by degree, then packed
        // order) with hhat(t^n) right-divisible by f must match.
        let tower = f4();
        for idx in [2u64, 3, 6, 7, 9, 11, 14] {
            let f = sp(&tower, &[idx % 4, idx / 4, 1]);
            let r = mclm(&f).unwrap();
            assert!(r.h.is_central());
            let mut found = None;
            'outer: for deg in 1..=4usize {
                // Base field here is F_2: packed bits are the coefficients.
                for packed in 0..2u64.pow(deg as u32) {
                    let mut coeffs: Vec<Fq> =
                        (0..deg).map(|i| Fq(((packed >> i) & 1) as u32)).collect();
                    coeffs.push(Fq::ONE);
                    let cand = CenterPoly::from_coeffs(coeffs);
                    let skew = center_to_skew(&tower, &cand);
                    if s_right_divides(&f, &skew) {
                        found = Some(cand);
                        break 'outer;
                    }
                }
            }
            assert_eq!(found.expect("a central multiple exists"), r.hhat, "f = {:?}", f);
        }
    }

    #[test]
    fn mclm_rejects_bad_inputs() {
        let tower = f4();
        assert!(matches!(mclm(&SkewPoly::one(&tower)), Err(Error::DegenerateInput(_))));
        assert!(matches!(mclm(&sp(&tower, &[1, 2])), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn centrality_detection() {
        let tower = f4();
        assert!(sp(&tower, &[1, 0, 1]).is_central());
        assert!(!sp(&tower, &[2, 0, 1]).is_central()); // g not in F
        assert!(!sp(&tower, &[1, 1]).is_central()); // t has degree 1
        assert!(SkewPoly::zero(&tower).is_central());
        assert_eq!(
            skew_to_center(&sp(&tower, &[1, 0, 1])).unwrap(),
            CenterPoly::from_coeffs(vec![Fq(1), Fq(1)])
        );
        assert!(skew_to_center(&sp(&tower, &[2, 0, 1])).is_none());
    }

    #[test]
    fn flat_round_trip() {
        let tower = f4();
        let g = sp(&tower, &[2, 3, 1]);
        let flat = skew_to_flat(&tower, &g, 4);
        assert_eq!(flat.len(), 8);
        assert_eq!(flat_to_skew(&tower, &flat), g);
    }

    #[test]
    fn tower_mismatch_is_reported() {
        let a = SkewPoly::t(&f4());
        let b = SkewPoly::t(&f9());
        assert!(matches!(s_mul(&a, &b), Err(Error::TowerMismatch)));
        assert!(matches!(s_right_divmod(&a, &b), Err(Error::TowerMismatch)));
        assert!(matches!(s_gcrd(&a, &b), Err(Error::TowerMismatch)));
    }
}
