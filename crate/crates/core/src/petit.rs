//! The Petit algebra S_f = K[t;sigma]/K[t;sigma]f: a (generally
//! nonassociative) unital F-algebra on the skew polynomials of degree < m
//! with multiplication g.h = remainder of gh under right division by f.
//!
//! The module computes the associator, the nucleus Nuc(S_f) = K cap Nuc_r
//! (closed form Fix(sigma^d), d = gcd({m - lambda_j} and n), plus a
//! brute-force cross-check), the right nucleus Nuc_r(S_f) — the eigenring
//! E(f) = {g : deg g < m, fg in Rf} — with its structure constants and
//! division-algebra status, t-power membership, and a lower bound on the
//! eigenring dimension from the nucleus subalgebra L + Lt^c + Lt^{2c} + ...

use crate::centerpoly::{cp_divmod, cp_factor, cp_is_irreducible, min_poly_of_matrix, CenterPoly};
use crate::error::{Error, Result};
use crate::fq::{Fq, FqCtx};
use crate::linalg::{FMatrix, RowSpan};
use crate::skew::{flat_to_skew, is_right_invariant, mclm, s_mul, s_rem, skew_to_flat, SkewPoly};
use crate::tower::{FieldTower, Subfield};

/// Cap on q^dim for the exhaustive zero-divisor element scan.
const ELEMENT_SCAN_CAP: u64 = 1 << 12;

/// The algebra S_f for a fixed monic f of degree m >= 2.
#[derive(Debug, Clone)]
pub struct PetitAlgebra {
    f: SkewPoly,
    m: usize,
    /// Indices i < m with a_i != 0 (the lower support of f).
    lambda_set: Vec<usize>,
}

impl PetitAlgebra {
    pub fn new(f: &SkewPoly) -> Result<Self> {
        if !f.is_monic() {
            return Err(Error::DegenerateInput(
                "the Petit algebra requires a monic polynomial".into(),
            ));
        }
        let m = f.degree().expect("monic implies nonzero");
        if m < 2 {
            return Err(Error::DegenerateInput(
                "the Petit algebra requires degree at least 2".into(),
            ));
        }
        let lambda_set = (0..m).filter(|&i| !f.coeff(i).is_zero()).collect();
        Ok(PetitAlgebra { f: f.clone(), m, lambda_set })
    }

    pub fn f(&self) -> &SkewPoly {
        &self.f
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn tower(&self) -> &FieldTower {
        self.f.tower()
    }

    pub fn lambda_set(&self) -> &[usize] {
        &self.lambda_set
    }

    /// F-dimension of the ambient algebra S_f.
    pub fn ambient_dim(&self) -> usize {
        self.m * self.tower().n()
    }
}

/// Multiplication in S_f: remainder of the skew product under right division
/// by f. Inputs must have degree < m.
pub fn petit_mul(alg: &PetitAlgebra, g: &SkewPoly, h: &SkewPoly) -> Result<SkewPoly> {
    for x in [g, h] {
        if let Some(d) = x.degree() {
            if d >= alg.m {
                return Err(Error::DegreeTooHigh { m: alg.m, got: d });
            }
        }
    }
    s_rem(&s_mul(g, h)?, &alg.f)
}

/// The associator [x, y, z] = (xy)z - x(yz) in S_f; vanishes identically
/// iff S_f is associative iff f is right invariant.
pub fn associator(alg: &PetitAlgebra, x: &SkewPoly, y: &SkewPoly, z: &SkewPoly) -> Result<SkewPoly> {
    let left = petit_mul(alg, &petit_mul(alg, x, y)?, z)?;
    let right = petit_mul(alg, x, &petit_mul(alg, y, z)?)?;
    Ok(left.sub(&right))
}

/// The nucleus Nuc(S_f) = Fix(sigma^d) for non-right-invariant f.
#[derive(Debug, Clone)]
pub struct NucleusReport {
    /// d = gcd of {m - lambda_j : a_{lambda_j} != 0} together with n.
    pub d: usize,
    /// Fix(sigma^d) as a subfield of K.
    pub subfield: Subfield,
    /// [Nuc(S_f) : F] = gcd(n, d).
    pub degree_over_f: usize,
}

/// Closed-form nucleus: elements c of K with sigma^m(c) a_i = a_i sigma^i(c)
/// for every i in the lower support, i.e. Fix(sigma^d) with
/// d = gcd(m - lambda_1, ..., m - lambda_r, n).
///
/// Rejects right-invariant f: S_f is then associative and the nucleus is all
/// of S_f, not a subfield of K.
pub fn nucleus(alg: &PetitAlgebra) -> Result<NucleusReport> {
    if is_right_invariant(&alg.f) {
        return Err(Error::RightInvariantInput);
    }
    let n = alg.tower().n();
    let d = alg
        .lambda_set
        .iter()
        .fold(n, |acc, &lambda| gcd(acc, alg.m - lambda));
    let subfield = alg.tower().fixed_field(d);
    let degree_over_f = subfield.degree_over_f;
    debug_assert_eq!(degree_over_f, gcd(n, d));
    Ok(NucleusReport { d, subfield, degree_over_f })
}

/// Brute-force K cap Nuc_r: solves sigma^m(c) a_i = a_i sigma^i(c) as an
/// F-linear system on the coordinates of c. No right-invariance guard — for
/// right-invariant f this returns all of K.
pub fn nucleus_bruteforce(alg: &PetitAlgebra) -> Result<Subfield> {
    let tower = alg.tower();
    if tower.field_size() > crate::tower::MAX_FIELD_SIZE {
        return Err(Error::TooLarge("field too large for brute-force nucleus".into()));
    }
    let ctx = tower.base();
    let n = tower.n();
    let minus_one = ctx.neg(Fq::ONE);
    let blocks: Vec<FMatrix> = alg
        .lambda_set
        .iter()
        .map(|&i| {
            let mul_a = tower.mul_matrix(&alg.f.coeff(i));
            let high = mul_a.mul(ctx, tower.frobenius_matrix(alg.m % n));
            let low = mul_a.mul(ctx, tower.frobenius_matrix(i % n));
            high.add(ctx, &low.scale(ctx, minus_one))
        })
        .collect();
    let mut stacked = FMatrix::zero(blocks.len() * n, n);
    for (b, block) in blocks.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                stacked.set(b * n + i, j, block.get(i, j));
            }
        }
    }
    Ok(tower.subfield_from_kernel(stacked.kernel_basis(ctx)))
}

/// The right nucleus Nuc_r(S_f) = E(f) with its structural diagnostics.
#[derive(Debug, Clone)]
pub struct EigenringReport {
    /// The algebra the report describes.
    pub algebra: PetitAlgebra,
    /// An F-basis of Nuc_r(S_f) as skew polynomials of degree < m.
    pub basis: Vec<SkewPoly>,
    pub dim_over_f: usize,
    /// hhat with hhat(t^n) the minimal central left multiple of the
    /// t-valuation-free part of f.
    pub hhat: CenterPoly,
    pub hhat_irreducible: bool,
    /// s = m / deg hhat when integral and f has no t-valuation.
    pub s: Option<usize>,
    /// k = n / (s/l); available once both s and l are known.
    pub k: Option<usize>,
    /// Number of irreducible factors of f; filled by the factorizer only.
    pub l: Option<usize>,
    /// c[i][j] = coordinates of basis_i . basis_j in the basis.
    pub structure_constants: Vec<Vec<Vec<Fq>>>,
    /// Whether S_f is a division algebra: certified true via deg hhat = m
    /// with hhat irreducible, decided false by an exhibited zero divisor,
    /// None when the zero-divisor scan exceeded its cap.
    pub is_division: Option<bool>,
}

impl EigenringReport {
    fn span(&self) -> RowSpan {
        let tower = self.algebra.tower();
        let flats: Vec<Vec<Fq>> = self
            .basis
            .iter()
            .map(|b| skew_to_flat(tower, b, self.algebra.m))
            .collect();
        RowSpan::new(tower.base(), self.algebra.ambient_dim(), &flats)
    }

    /// True iff g (of degree < m) lies in the F-span of the basis.
    pub fn contains(&self, g: &SkewPoly) -> bool {
        if g.degree().is_some_and(|d| d >= self.algebra.m) {
            return false;
        }
        let tower = self.algebra.tower();
        let flat = skew_to_flat(tower, g, self.algebra.m);
        self.span().contains(tower.base(), &flat)
    }

    /// Coordinates of g with respect to the report basis; None outside the
    /// span.
    pub fn coords_of(&self, g: &SkewPoly) -> Option<Vec<Fq>> {
        if g.degree().is_some_and(|d| d >= self.algebra.m) {
            return None;
        }
        let tower = self.algebra.tower();
        let flats: Vec<Vec<Fq>> = self
            .basis
            .iter()
            .map(|b| skew_to_flat(tower, b, self.algebra.m))
            .collect();
        coords_in_flat_basis(tower.base(), &flats, &skew_to_flat(tower, g, self.algebra.m))
    }

    /// The element with the given basis coordinates.
    pub fn element_from_coords(&self, coords: &[Fq]) -> SkewPoly {
        assert_eq!(coords.len(), self.dim_over_f, "coordinate length mismatch");
        let tower = self.algebra.tower();
        let mut acc = SkewPoly::zero(tower);
        for (c, b) in coords.iter().zip(self.basis.iter()) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(&tower.from_base(*c)));
            }
        }
        acc
    }

    /// Matrix of left multiplication by the element with the given basis
    /// coordinates, with respect to the basis.
    pub fn left_mul_matrix(&self, coords: &[Fq]) -> FMatrix {
        assert_eq!(coords.len(), self.dim_over_f, "coordinate length mismatch");
        let ctx = self.algebra.tower().base();
        let d = self.dim_over_f;
        FMatrix::from_fn(d, d, |k, j| {
            let mut acc = Fq::ZERO;
            for (i, &xi) in coords.iter().enumerate() {
                acc = ctx.add(acc, ctx.mul(xi, self.structure_constants[i][j][k]));
            }
            acc
        })
    }

    /// Records the number of irreducible factors of f (from the factorizer)
    /// and derives k = n / (s/l) when hhat is irreducible.
    pub fn fill_l(&mut self, l: usize) {
        assert!(l >= 1, "a factorization has at least one factor");
        self.l = Some(l);
        if !self.hhat_irreducible {
            return;
        }
        if let Some(s) = self.s {
            assert!(s % l == 0, "l = {l} must divide s = {s} for irreducible hhat");
            let s_prime = s / l;
            let n = self.algebra.tower().n();
            assert!(n.is_multiple_of(s_prime), "s/l = {s_prime} must divide n = {n}");
            self.k = Some(n / s_prime);
        }
    }
}

/// The F-linear map g -> remainder of f*g under right division by f, as an
/// (mn)-by-(mn) matrix in the flat monomial basis y^j t^i (column i*n + j).
fn eigenring_matrix(alg: &PetitAlgebra) -> FMatrix {
    let tower = alg.tower();
    let n = tower.n();
    let dim = alg.ambient_dim();
    let mut t = FMatrix::zero(dim, dim);
    for i in 0..alg.m {
        for j in 0..n {
            let mut coords = vec![Fq::ZERO; n];
            coords[j] = Fq::ONE;
            let monomial = SkewPoly::monomial(
                tower.from_coords(&coords).expect("coordinate vector of length n"),
                i,
            );
            let image = s_rem(&s_mul(&alg.f, &monomial).expect("same tower"), &alg.f)
                .expect("f nonzero");
            let flat = skew_to_flat(tower, &image, alg.m);
            for (r, &v) in flat.iter().enumerate() {
                t.set(r, i * n + j, v);
            }
        }
    }
    t
}

/// Canonical flat basis of the eigenring (kernel of `eigenring_matrix`).
pub(crate) fn eigenring_basis_raw(alg: &PetitAlgebra) -> Vec<Vec<Fq>> {
    eigenring_matrix(alg).kernel_basis(alg.tower().base())
}

/// Computes the full eigenring report: basis, structure constants, hhat
/// diagnostics, and division status.
pub fn eigenring(alg: &PetitAlgebra) -> EigenringReport {
    let tower = alg.tower();
    let ctx = tower.base();
    let raw = eigenring_basis_raw(alg);
    let basis: Vec<SkewPoly> = raw.iter().map(|v| flat_to_skew(tower, v)).collect();
    for b in &basis {
        debug_assert!(
            s_rem(&s_mul(&alg.f, b).expect("same tower"), &alg.f)
                .expect("f nonzero")
                .is_zero(),
            "eigenring basis element fails the defining condition"
        );
    }
    let dim_over_f = basis.len();

    let mclm_data = mclm(&alg.f).expect("f monic of degree >= 2");
    let hhat = mclm_data.hhat.clone();
    let hhat_irreducible =
        cp_is_irreducible(ctx, &hhat).expect("hhat nonzero for nonzero f");
    let s = if mclm_data.t_valuation == 0 {
        match hhat.degree() {
            Some(d) if d > 0 && alg.m.is_multiple_of(d) => Some(alg.m / d),
            _ => None,
        }
    } else {
        None
    };

    // Structure constants: close the basis under the algebra product.
    let structure_constants: Vec<Vec<Vec<Fq>>> = basis
        .iter()
        .map(|bi| {
            basis
                .iter()
                .map(|bj| {
                    let prod = petit_mul(alg, bi, bj).expect("basis degrees < m");
                    let flat = skew_to_flat(tower, &prod, alg.m);
                    coords_in_flat_basis(ctx, &raw, &flat)
                        .expect("eigenring closed under multiplication")
                })
                .collect()
        })
        .collect();

    let mut report = EigenringReport {
        algebra: alg.clone(),
        basis,
        dim_over_f,
        hhat,
        hhat_irreducible,
        s,
        k: None,
        l: None,
        structure_constants,
        is_division: None,
    };
    report.is_division = decide_is_division(&report, &mclm_data);
    report
}

fn decide_is_division(
    report: &EigenringReport,
    mclm_data: &crate::skew::MclmResult,
) -> Option<bool> {
    let alg = &report.algebra;
    // Irreducibility certificate: deg hhat = m with hhat irreducible
    // (and no t-valuation) iff f is irreducible iff S_f is division.
    if mclm_data.t_valuation == 0
        && report.hhat_irreducible
        && report.hhat.degree() == Some(alg.m)
    {
        return Some(true);
    }
    if alg.f.coeff(0).is_zero() {
        // f = g * t is reducible and g . t = f = 0 in S_f: a zero divisor.
        return Some(false);
    }
    match zero_divisor_search(report) {
        ZdSearch::Found(_, _) => Some(false),
        ZdSearch::NoneExhaustive => Some(true),
        ZdSearch::Capped => None,
    }
}

/// Outcome of the zero-divisor search over the eigenring.
pub(crate) enum ZdSearch {
    /// A pair (q1, q2) of nonzero eigenring elements with q1 . q2 = 0.
    Found(SkewPoly, SkewPoly),
    /// Every element was checked; the eigenring is a division algebra.
    NoneExhaustive,
    /// The element scan exceeded its cap and the minimal-polynomial route
    /// found no split.
    Capped,
}

/// Searches Nuc_r for zero divisors: first through reducible minimal
/// polynomials of basis elements (p = p1 p2 gives p1(b) . p2(b) = 0), then
/// by exhaustive scan for elements with singular left multiplication.
pub(crate) fn zero_divisor_search(report: &EigenringReport) -> ZdSearch {
    let alg = &report.algebra;
    let tower = alg.tower();
    let ctx = tower.base();
    let d = report.dim_over_f;

    for i in 0..d {
        let mut coords = vec![Fq::ZERO; d];
        coords[i] = Fq::ONE;
        let lb = report.left_mul_matrix(&coords);
        let p = min_poly_of_matrix(ctx, &lb).expect("square matrix");
        if p.degree() == Some(1) {
            continue;
        }
        if cp_is_irreducible(ctx, &p).expect("minimal polynomial is nonconstant") {
            continue;
        }
        let (_, factors) = cp_factor(ctx, &p, 0).expect("minimal polynomial is nonconstant");
        let p1 = factors[0].0.clone();
        let (p2, r) = cp_divmod(ctx, &p, &p1).expect("p1 nonzero");
        debug_assert!(r.is_zero());
        let b = &report.basis[i];
        let q1 = eval_in_algebra(alg, &p1, b);
        let q2 = eval_in_algebra(alg, &p2, b);
        assert!(!q1.is_zero() && !q2.is_zero(), "proper factors of the minimal polynomial");
        debug_assert!(petit_mul(alg, &q1, &q2).expect("degrees < m").is_zero());
        return ZdSearch::Found(q1, q2);
    }

    // Exhaustive scan: every nonzero coordinate vector, singular left
    // multiplication betrays a zero divisor with its kernel partner.
    let q = ctx.q() as u64;
    let mut total: u64 = 1;
    for _ in 0..d {
        total = match total.checked_mul(q) {
            Some(v) if v <= ELEMENT_SCAN_CAP => v,
            _ => return ZdSearch::Capped,
        };
    }
    let lbs: Vec<FMatrix> = (0..d)
        .map(|i| {
            let mut coords = vec![Fq::ZERO; d];
            coords[i] = Fq::ONE;
            report.left_mul_matrix(&coords)
        })
        .collect();
    for idx in 1..total {
        let mut coords = vec![Fq::ZERO; d];
        let mut rem = idx;
        for c in coords.iter_mut() {
            *c = Fq((rem % q) as u32);
            rem /= q;
        }
        let mut lb = FMatrix::zero(d, d);
        for (c, m) in coords.iter().zip(lbs.iter()) {
            if !c.is_zero() {
                lb = lb.add(ctx, &m.scale(ctx, *c));
            }
        }
        let kernel = lb.kernel_basis(ctx);
        if let Some(y) = kernel.first() {
            let q1 = report.element_from_coords(&coords);
            let q2 = report.element_from_coords(y);
            debug_assert!(petit_mul(alg, &q1, &q2).expect("degrees < m").is_zero());
            return ZdSearch::Found(q1, q2);
        }
    }
    ZdSearch::NoneExhaustive
}

/// Evaluates p in F[x] at the algebra element b (Horner in S_f; valid since
/// F is central and F[b] is associative).
fn eval_in_algebra(alg: &PetitAlgebra, p: &CenterPoly, b: &SkewPoly) -> SkewPoly {
    let tower = alg.tower();
    let mut acc = SkewPoly::zero(tower);
    for &c in p.coeffs().iter().rev() {
        acc = petit_mul(alg, &acc, b).expect("degrees < m");
        if !c.is_zero() {
            acc = acc.add(&SkewPoly::constant(tower.from_base(c)));
        }
    }
    acc
}

/// Exact membership of t^k in Nuc_r(S_f), for 1 <= k < m, via the defining
/// condition f t^k in Rf. For k = 1 this must agree with the coefficient
/// condition (all a_i in F), which the function asserts.
pub fn t_power_in_nucr(alg: &PetitAlgebra, k: usize) -> Result<bool> {
    if k == 0 || k >= alg.m {
        return Err(Error::KOutOfRange { k, max: alg.m - 1 });
    }
    let tk = SkewPoly::monomial(alg.tower().one(), k);
    let member = s_rem(&s_mul(&alg.f, &tk)?, &alg.f)?.is_zero();
    if k == 1 {
        assert_eq!(
            member,
            t_power_coeff_condition(alg, 1)?,
            "t in Nuc_r must coincide with all coefficients lying in F"
        );
    }
    Ok(member)
}

/// The sufficient condition for t^k in Nuc_r: every a_i (i < m) lies in
/// Fix(sigma^k). An equivalence at k = 1.
pub fn t_power_coeff_condition(alg: &PetitAlgebra, k: usize) -> Result<bool> {
    if k == 0 || k >= alg.m {
        return Err(Error::KOutOfRange { k, max: alg.m - 1 });
    }
    Ok((0..alg.m).all(|i| {
        let a = alg.f.coeff(i);
        a.frobenius(k) == a
    }))
}

/// Lower bound on [Nuc_r : F] from the nucleus subalgebra
/// L + Lt^c + Lt^{2c} + ... (L = Nuc(S_f)): returns (c, bound) where c is
/// the least integer in 1..m-1 with all a_i in Fix(sigma^c) (None if there
/// is none) and bound = ceil(m/c) * [L:F] when c exists, else [L:F].
pub fn subalgebra_lower_bound(alg: &PetitAlgebra) -> Result<(Option<usize>, usize)> {
    if is_right_invariant(&alg.f) {
        return Err(Error::RightInvariantInput);
    }
    let c = (1..alg.m).find(|&c| {
        (0..alg.m).all(|i| {
            let a = alg.f.coeff(i);
            a.frobenius(c) == a
        })
    });
    let lf = nucleus(alg)?.degree_over_f;
    let bound = match c {
        Some(c) => lf * alg.m.div_ceil(c),
        None => lf,
    };
    let dim = eigenring_basis_raw(alg).len();
    assert!(
        bound <= dim,
        "subalgebra bound {bound} exceeds eigenring dimension {dim}"
    );
    Ok((c, bound))
}

/// The eigenring report under the hypotheses of the structure theorems:
/// requires (f, t)_r = 1 (nonzero constant term) and asserts the dimension
/// law dim = m s and s | gcd(m, n) when hhat is irreducible.
pub fn diagnostics(alg: &PetitAlgebra) -> Result<EigenringReport> {
    if alg.f.coeff(0).is_zero() {
        return Err(Error::TValuationNonzero);
    }
    let report = eigenring(alg);
    if report.hhat_irreducible {
        let s = report
            .s
            .expect("deg hhat divides m when hhat is irreducible");
        assert_eq!(
            report.dim_over_f,
            alg.m * s,
            "dimension law [Nuc_r : F] = m s violated"
        );
        let g = gcd(alg.m, alg.tower().n());
        assert!(g.is_multiple_of(s), "s = {s} must divide gcd(m, n) = {g}");
    }
    Ok(report)
}

/// Solves sum x_i basis_i = v over F; None if v is outside the span.
fn coords_in_flat_basis(ctx: &FqCtx, basis: &[Vec<Fq>], v: &[Fq]) -> Option<Vec<Fq>> {
    let rows = v.len();
    let cols = basis.len() + 1;
    let mut aug = FMatrix::zero(rows, cols);
    for (j, b) in basis.iter().enumerate() {
        for (i, &x) in b.iter().enumerate() {
            aug.set(i, j, x);
        }
    }
    for (i, &x) in v.iter().enumerate() {
        aug.set(i, cols - 1, x);
    }
    let pivots = aug.rref(ctx);
    if pivots.contains(&(cols - 1)) {
        return None;
    }
    let mut coords = vec![Fq::ZERO; basis.len()];
    for (r, &c) in pivots.iter().enumerate() {
        coords[c] = aug.get(r, cols - 1);
    }
    Some(coords)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::build_tower;

    fn f4() -> FieldTower {
        build_tower(2, 1, 2, None, None).unwrap()
    }

    fn f16_over_f2() -> FieldTower {
        build_tower(2, 1, 4, None, None).unwrap()
    }

    fn sp(tower: &FieldTower, packed: &[u64]) -> SkewPoly {
        SkewPoly::from_coeffs(
            tower,
            packed.iter().map(|&i| tower.element_from_index(i)).collect(),
        )
    }

    fn alg(tower: &FieldTower, packed: &[u64]) -> PetitAlgebra {
        PetitAlgebra::new(&sp(tower, packed)).unwrap()
    }

    #[test]
    fn construction_validates_input() {
        let tower = f4();
        assert!(PetitAlgebra::new(&sp(&tower, &[2, 1])).is_err()); // degree 1
        assert!(PetitAlgebra::new(&sp(&tower, &[0, 0, 2])).is_err()); // not monic
        assert!(PetitAlgebra::new(&sp(&tower, &[2, 0, 1])).is_ok());
        assert_eq!(alg(&tower, &[2, 0, 1]).lambda_set(), &[0]);
        assert_eq!(alg(&tower, &[2, 3, 1]).lambda_set(), &[0, 1]);
        assert_eq!(alg(&tower, &[0, 3, 0, 1]).lambda_set(), &[1]);
    }

    #[test]
    fn petit_mul_pinned_examples() {
        let tower = f4();
        let a = alg(&tower, &[2, 0, 1]); // t^2 + g
        let t = SkewPoly::t(&tower);
        // t . t = t^2 mod (t^2+g) = -g = g.
        assert_eq!(petit_mul(&a, &t, &t).unwrap(), sp(&tower, &[2]));
        // Unital.
        let h = sp(&tower, &[3, 2]);
        assert_eq!(petit_mul(&a, &SkewPoly::one(&tower), &h).unwrap(), h);
        assert_eq!(petit_mul(&a, &h, &SkewPoly::one(&tower)).unwrap(), h);
        // In S_{t^2+(g+1)t+g}: (t+1) . (t+g) = t.
        let b = alg(&tower, &[2, 3, 1]);
        assert_eq!(
            petit_mul(&b, &sp(&tower, &[1, 1]), &sp(&tower, &[2, 1])).unwrap(),
            t
        );
        // Degree guard.
        assert!(matches!(
            petit_mul(&a, &sp(&tower, &[0, 0, 1]), &t),
            Err(Error::DegreeTooHigh { m: 2, got: 2 })
        ));
    }

    #[test]
    fn associator_pinned_examples() {
        let tower = f4();
        let a = alg(&tower, &[2, 0, 1]); // t^2+g, Nuc_r = K
        let one = SkewPoly::one(&tower);
        let t = SkewPoly::t(&tower);
        for yi in 0..4u64 {
            for zi in 0..4u64 {
                let y = sp(&tower, &[yi]);
                let z = sp(&tower, &[zi]);
                assert!(associator(&a, &one, &y, &z).unwrap().is_zero());
            }
        }
        // [t, t, d] = 0 for every d in K since K = Nuc_r here.
        for di in 0..4u64 {
            let d = sp(&tower, &[di]);
            assert!(associator(&a, &t, &t, &d).unwrap().is_zero());
        }
        // S_{t^2+t+g} is properly nonassociative: [t,t,t] = t.
        let b = alg(&tower, &[2, 1, 1]);
        assert_eq!(associator(&b, &t, &t, &t).unwrap(), t);
    }

    #[test]
    fn nucleus_closed_form_examples() {
        let tower = f4();
        // f = t^2+g: d = gcd(2, 2) = 2, nucleus = Fix(sigma^2) = K.
        let r = nucleus(&alg(&tower, &[2, 0, 1])).unwrap();
        assert_eq!((r.d, r.degree_over_f), (2, 2));
        assert!(r.subfield.contains(&tower.generator()));
        // a_{m-1} != 0 forces the nucleus down to F.
        let r = nucleus(&alg(&tower, &[2, 3, 1])).unwrap();
        assert_eq!((r.d, r.degree_over_f), (1, 1));
        assert!(!r.subfield.contains(&tower.generator()));
        // t^4 + a2 t^2 + a0 over F_16, n = 4: d = gcd(4, 2, 4) = 2.
        let big = f16_over_f2();
        let y = big.generator();
        let f = SkewPoly::from_coeffs(
            &big,
            vec![y.clone(), big.zero(), y.clone(), big.zero(), big.one()],
        );
        let r = nucleus(&PetitAlgebra::new(&f).unwrap()).unwrap();
        assert_eq!((r.d, r.degree_over_f), (2, 2));
        // Right-invariant input is rejected.
        assert!(matches!(
            nucleus(&alg(&tower, &[1, 0, 1])),
            Err(Error::RightInvariantInput)
        ));
    }

    #[test]
    fn bruteforce_nucleus_matches_closed_form_exhaustively() {
        // All monic degree-2 f over F_4; the closed form must agree with the
        // literal linear solve whenever f is not right invariant.
        let tower = f4();
        for a0 in 0..4u64 {
            for a1 in 0..4u64 {
                let f = sp(&tower, &[a0, a1, 1]);
                let a = PetitAlgebra::new(&f).unwrap();
                let brute = nucleus_bruteforce(&a).unwrap();
                match nucleus(&a) {
                    Ok(r) => assert!(
                        r.subfield.same_subspace(&brute),
                        "mismatch at f = {:?}",
                        f
                    ),
                    Err(Error::RightInvariantInput) => {
                        // Associative case: every element of K qualifies.
                        assert_eq!(brute.degree_over_f, tower.n());
                    }
                    Err(e) => panic!("unexpected error {e:?}"),
                }
            }
        }
    }

    #[test]
    fn eigenring_of_t2_plus_g_is_k() {
        let tower = f4();
        let r = eigenring(&alg(&tower, &[2, 0, 1]));
        assert_eq!(r.dim_over_f, 2);
        assert!(r.contains(&SkewPoly::one(&tower)));
        assert!(r.contains(&SkewPoly::constant(tower.generator())));
        assert!(!r.contains(&SkewPoly::t(&tower)));
        assert_eq!(r.hhat.coeffs(), &[Fq(1), Fq(1), Fq(1)]);
        assert!(r.hhat_irreducible);
        assert_eq!(r.s, Some(1));
        assert_eq!(r.is_division, Some(true));
    }

    #[test]
    fn eigenring_of_f2t_polynomial_is_ft_quotient() {
        let tower = f4();
        let r = eigenring(&alg(&tower, &[1, 1, 1])); // t^2+t+1 irreducible in F_2[t]
        assert_eq!(r.dim_over_f, 2);
        assert!(r.contains(&SkewPoly::one(&tower)));
        assert!(r.contains(&SkewPoly::t(&tower)));
        // The quotient realizes F_2[t]/(t^2+t+1) = F_4: commutative and a field.
        let a = alg(&tower, &[1, 1, 1]);
        let t = SkewPoly::t(&tower);
        assert_eq!(petit_mul(&a, &t, &t).unwrap(), sp(&tower, &[1, 1]));
        assert_eq!(r.is_division, Some(true));
        assert!(r.hhat_irreducible);
    }

    #[test]
    fn eigenring_of_right_invariant_f_is_everything() {
        let tower = f4();
        let r = eigenring(&alg(&tower, &[1, 0, 1])); // t^2+1 = (t+1)^2
        assert_eq!(r.dim_over_f, 4);
        assert_eq!(r.is_division, Some(false));
        // hhat = x+1 irreducible of degree 1: s = m / 1 = 2.
        assert_eq!(r.s, Some(2));
        assert_eq!(r.hhat.coeffs(), &[Fq(1), Fq(1)]);
    }

    #[test]
    fn eigenring_membership_matches_defining_condition_exhaustively() {
        let tower = f4();
        let a = alg(&tower, &[2, 0, 1]);
        let r = eigenring(&a);
        for idx in 0..16u64 {
            let g = sp(&tower, &[idx % 4, idx / 4]);
            let cond = s_rem(&s_mul(a.f(), &g).unwrap(), a.f()).unwrap().is_zero();
            assert_eq!(cond, r.contains(&g), "at g = {:?}", g);
        }
    }

    #[test]
    fn eigenring_is_associative_on_basis_triples() {
        let tower = f4();
        for packed in [[2u64, 3, 1], [2, 1, 1], [1, 1, 1]] {
            let a = alg(&tower, &packed);
            let r = eigenring(&a);
            for x in &r.basis {
                for y in &r.basis {
                    for z in &r.basis {
                        assert!(associator(&a, x, y, z).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn zero_divisors_verify_by_multiplication() {
        let tower = f4();
        let a = alg(&tower, &[2, 3, 1]); // t^2+(g+1)t+g = (t+g)(t+1)
        let r = eigenring(&a);
        assert_eq!(r.is_division, Some(false));
        match zero_divisor_search(&r) {
            ZdSearch::Found(q1, q2) => {
                assert!(!q1.is_zero() && !q2.is_zero());
                assert!(petit_mul(&a, &q1, &q2).unwrap().is_zero());
            }
            _ => panic!("reducible f must yield a zero divisor"),
        }
    }

    #[test]
    fn division_status_matches_reducibility_exhaustively() {
        // Independent oracle: monic degree-2 f with nonzero constant term is
        // reducible iff it has a monic right factor t + c.
        let tower = f4();
        for a0 in 1..4u64 {
            for a1 in 0..4u64 {
                let f = sp(&tower, &[a0, a1, 1]);
                let has_linear_factor = (0..4u64).any(|c| {
                    let cand = sp(&tower, &[c, 1]);
                    s_rem(&f, &cand).unwrap().is_zero()
                });
                let r = eigenring(&PetitAlgebra::new(&f).unwrap());
                assert_eq!(
                    r.is_division,
                    Some(!has_linear_factor),
                    "at f = {:?}",
                    f
                );
            }
        }
    }

    #[test]
    fn t_power_membership_pinned_examples() {
        let tower = f4();
        // a_0 = g not in F: t is not in Nuc_r.
        assert!(!t_power_in_nucr(&alg(&tower, &[2, 0, 1]), 1).unwrap());
        assert!(!t_power_coeff_condition(&alg(&tower, &[2, 0, 1]), 1).unwrap());
        // f in F[t]: t in Nuc_r.
        assert!(t_power_in_nucr(&alg(&tower, &[1, 1, 1]), 1).unwrap());
        // Out-of-range k.
        assert!(matches!(
            t_power_in_nucr(&alg(&tower, &[2, 0, 1]), 2),
            Err(Error::KOutOfRange { k: 2, max: 1 })
        ));
        assert!(matches!(
            t_power_in_nucr(&alg(&tower, &[2, 0, 1]), 0),
            Err(Error::KOutOfRange { k: 0, max: 1 })
        ));
    }

    #[test]
    fn t_square_membership_over_f16() {
        // f = t^4 + a t^2 + a with a in Fix(sigma^2) minus F: the sufficient
        // condition puts t^2 in Nuc_r, and the exact test confirms it.
        let big = f16_over_f2();
        let a = big.element_from_index(6); // y^2+y, a root of x^2+x+1
        assert_eq!(a.frobenius(2), a);
        assert!(!a.is_in_f());
        let f = SkewPoly::from_coeffs(
            &big,
            vec![a.clone(), big.zero(), a.clone(), big.zero(), big.one()],
        );
        let alg = PetitAlgebra::new(&f).unwrap();
        assert!(t_power_coeff_condition(&alg, 2).unwrap());
        assert!(t_power_in_nucr(&alg, 2).unwrap());
        assert!(!t_power_in_nucr(&alg, 1).unwrap());
    }

    #[test]
    fn subalgebra_bound_pinned_examples() {
        let tower = f4();
        // f = t^2+t+1 in F[t]: c = 1, L = F, bound 2 = eigenring dim (tight).
        assert_eq!(
            subalgebra_lower_bound(&alg(&tower, &[1, 1, 1])).unwrap(),
            (Some(1), 2)
        );
        // f = t^2+g: no proper c; bound [K:F] = 2 from the nucleus alone.
        assert_eq!(
            subalgebra_lower_bound(&alg(&tower, &[2, 0, 1])).unwrap(),
            (None, 2)
        );
        // Right-invariant input rejected.
        assert!(matches!(
            subalgebra_lower_bound(&alg(&tower, &[1, 0, 1])),
            Err(Error::RightInvariantInput)
        ));
        // f = t^4+t^2+1 in F[t] over F_16 (n=4): c = 1, L = Fix(sigma^2),
        // bound 4*2 = 8.
        let big = f16_over_f2();
        let f = sp(&big, &[1, 0, 1, 0, 1]);
        assert_eq!(
            subalgebra_lower_bound(&PetitAlgebra::new(&f).unwrap()).unwrap(),
            (Some(1), 8)
        );
    }

    #[test]
    fn diagnostics_guards_and_fill_l() {
        let tower = f4();
        assert!(matches!(
            diagnostics(&alg(&tower, &[0, 2, 1])),
            Err(Error::TValuationNonzero)
        ));
        let r = diagnostics(&alg(&tower, &[2, 0, 1])).unwrap();
        assert_eq!((r.s, r.k, r.l), (Some(1), None, None));
        // t^2+1: hhat = x+1 irreducible, s = 2; factoring gives l = 2,
        // hence s' = 1 and k = n = 2.
        let mut r = eigenring(&alg(&tower, &[1, 0, 1]));
        r.fill_l(2);
        assert_eq!((r.s, r.k, r.l), (Some(2), Some(2), Some(2)));
    }

    #[test]
    fn structure_constants_reproduce_products() {
        let tower = f4();
        let r = eigenring(&alg(&tower, &[2, 3, 1]));
        let a = &r.algebra;
        for (i, bi) in r.basis.iter().enumerate() {
            for (j, bj) in r.basis.iter().enumerate() {
                let prod = petit_mul(a, bi, bj).unwrap();
                let from_constants = r.element_from_coords(&r.structure_constants[i][j]);
                assert_eq!(prod, from_constants);
            }
        }
    }

    #[test]
    fn left_mul_matrix_matches_structure_constants() {
        let tower = f4();
        let r = eigenring(&alg(&tower, &[1, 1, 1]));
        // Left multiplication by the identity is the identity matrix.
        let one_coords = r.coords_of(&SkewPoly::one(&tower)).unwrap();
        assert_eq!(r.left_mul_matrix(&one_coords), FMatrix::identity(r.dim_over_f));
    }
}
