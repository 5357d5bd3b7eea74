//! Finite-field towers F = F_q inside K = F_{q^n} with the Frobenius twist.
//!
//! K is represented as F_q[y]/(ext_modulus); elements are coordinate vectors
//! in the power basis 1, y, ..., y^{n-1}, lowest power first. The twist map
//! sigma: a -> a^q generates Gal(K/F); every power of sigma is tabulated as
//! an n-by-n matrix over F_q so that fixed subfields are plain kernels.

use std::sync::Arc;

use crate::centerpoly::{cp_is_irreducible, cp_pow_mod, cp_rem, CenterPoly};
use crate::error::{Error, Result};
use crate::fq::{Fq, FqCtx};
use crate::linalg::{FMatrix, RowSpan};

/// Hard cap on |K| = q^n: brute-force oracles must terminate at desk scale.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

struct TowerInner {
    base: FqCtx,
    n: usize,
    ext_modulus: CenterPoly,
    gen: char,
    /// frob[j] is the matrix of sigma^j on K as an F_q-vector space.
    frob: Vec<FMatrix>,
}

/// A validated tower F = F_q subset K = F_{q^n}; cheap to clone (shared).
#[derive(Clone)]
pub struct FieldTower {
    inner: Arc<TowerInner>,
}

impl std::fmt::Debug for FieldTower {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            fm,
            "FieldTower(p={}, e={}, n={}, ext={})",
            self.p(),
            self.e(),
            self.n(),
            self.ext_modulus().render(self.base(), "y", "z")
        )
    }
}

impl PartialEq for FieldTower {
    /// Structural equality on the mathematical data (the generator letter is
    /// presentation only).
    fn eq(&self, other: &Self) -> bool {
        self.inner.base == other.inner.base
            && self.inner.n == other.inner.n
            && self.inner.ext_modulus == other.inner.ext_modulus
    }
}
impl Eq for FieldTower {}

/// Builds a tower F_q subset F_{q^n} with sigma = (a -> a^q).
///
/// Omitted moduli default to the least monic irreducible of the right degree
/// in the packed coefficient order (constant coefficient varying fastest).
pub fn build_tower(
    p: u64,
    e: usize,
    n: usize,
    base_modulus: Option<&[u32]>,
    ext_modulus: Option<&CenterPoly>,
) -> Result<FieldTower> {
    FieldTower::with_gen(p, e, n, base_modulus, ext_modulus, 'g')
}

impl FieldTower {
    /// Full constructor with an explicit generator letter for printing K
    /// elements.
    pub fn with_gen(
        p: u64,
        e: usize,
        n: usize,
        base_modulus: Option<&[u32]>,
        ext_modulus: Option<&CenterPoly>,
        gen: char,
    ) -> Result<Self> {
        let base = FqCtx::new(p, e, base_modulus)?;
        if n < 1 {
            return Err(Error::DegenerateInput("extension degree n must be at least 1".into()));
        }
        let size = (0..n).try_fold(1u64, |acc, _| {
            let next = acc.checked_mul(base.q() as u64)?;
            (next <= MAX_FIELD_SIZE).then_some(next)
        });
        if size.is_none() {
            return Err(Error::TowerTooLarge(format!("{}^{}", base.q(), n)));
        }
        let ext = match ext_modulus {
            Some(m) => {
                if m.degree() != Some(n) {
                    return Err(Error::DegreeMismatch {
                        expected: n,
                        got: m.degree().map_or(0, |d| d),
                    });
                }
                if !m.is_monic() {
                    return Err(Error::ReducibleModulus(
                        "extension modulus must be monic".into(),
                    ));
                }
                if !cp_is_irreducible(&base, m)? {
                    return Err(Error::ReducibleModulus(format!(
                        "{} is not irreducible over the base field",
                        m.render(&base, "y", "z")
                    )));
                }
                m.clone()
            }
            None => default_ext_modulus(&base, n),
        };
        let frob = frobenius_tables(&base, n, &ext)?;
        Ok(FieldTower { inner: Arc::new(TowerInner { base, n, ext_modulus: ext, gen, frob }) })
    }

    pub fn base(&self) -> &FqCtx {
        &self.inner.base
    }

    pub fn p(&self) -> u64 {
        self.inner.base.p()
    }

    pub fn e(&self) -> usize {
        self.inner.base.e()
    }

    /// |F| = p^e.
    pub fn q(&self) -> u32 {
        self.inner.base.q()
    }

    /// [K : F].
    pub fn n(&self) -> usize {
        self.inner.n
    }

    /// |K| = q^n.
    pub fn field_size(&self) -> u64 {
        (self.q() as u64).pow(self.inner.n as u32)
    }

    pub fn ext_modulus(&self) -> &CenterPoly {
        &self.inner.ext_modulus
    }

    /// The letter used when printing K elements.
    pub fn gen_letter(&self) -> char {
        self.inner.gen
    }

    /// The zero element of K.
    pub fn zero(&self) -> KElem {
        KElem { tower: self.clone(), coords: vec![Fq::ZERO; self.inner.n] }
    }

    /// The multiplicative identity of K.
    pub fn one(&self) -> KElem {
        self.from_base(Fq::ONE)
    }

    /// The power-basis generator y (equals 1 when n = 1).
    pub fn generator(&self) -> KElem {
        if self.inner.n == 1 {
            return self.one();
        }
        let mut coords = vec![Fq::ZERO; self.inner.n];
        coords[1] = Fq::ONE;
        KElem { tower: self.clone(), coords }
    }

    /// Embeds an F_q scalar into K.
    pub fn from_base(&self, c: Fq) -> KElem {
        let mut coords = vec![Fq::ZERO; self.inner.n];
        coords[0] = c;
        KElem { tower: self.clone(), coords }
    }

    /// Builds an element from power-basis coordinates (lowest first; padded
    /// or trimmed-checked to length n).
    pub fn from_coords(&self, coords: &[Fq]) -> Result<KElem> {
        if coords.len() > self.inner.n && coords[self.inner.n..].iter().any(|c| !c.is_zero()) {
            return Err(Error::DegreeMismatch { expected: self.inner.n, got: coords.len() });
        }
        let mut full = coords.to_vec();
        full.truncate(self.inner.n);
        full.resize(self.inner.n, Fq::ZERO);
        Ok(KElem { tower: self.clone(), coords: full })
    }

    /// The element whose packed index is `idx` (coordinates are the base-q
    /// digits of idx, lowest first). Enumerating 0..field_size covers K.
    pub fn element_from_index(&self, idx: u64) -> KElem {
        let q = self.q() as u64;
        let mut coords = Vec::with_capacity(self.inner.n);
        let mut rest = idx;
        for _ in 0..self.inner.n {
            coords.push(Fq((rest % q) as u32));
            rest /= q;
        }
        KElem { tower: self.clone(), coords }
    }

    /// All elements of K in packed-index order.
    pub fn elements(&self) -> impl Iterator<Item = KElem> + '_ {
        (0..self.field_size()).map(move |i| self.element_from_index(i))
    }

    /// The matrix of sigma^j (j arbitrary, reduced mod n).
    pub fn frobenius_matrix(&self, j: usize) -> &FMatrix {
        &self.inner.frob[j % self.inner.n]
    }

    /// The n-by-n F_q matrix of multiplication by `a` on K.
    pub fn mul_matrix(&self, a: &KElem) -> FMatrix {
        self.check_same(a);
        let n = self.inner.n;
        let mut m = FMatrix::zero(n, n);
        let mut col = a.clone();
        for j in 0..n {
            for i in 0..n {
                m.set(i, j, col.coords[i]);
            }
            if j + 1 < n {
                col = col.mul(&self.generator());
            }
        }
        m
    }

    /// Fix(sigma^d) as a subfield report; [Fix(sigma^d) : F] = gcd(n, d).
    pub fn fixed_field(&self, d: usize) -> Subfield {
        let n = self.inner.n;
        let s = self.frobenius_matrix(d);
        let diff = s.add(self.base(), &FMatrix::identity(n).scale(self.base(), self.base().neg(Fq::ONE)));
        let kernel = diff.kernel_basis(self.base());
        let expected = gcd(n as u64, d as u64) as usize;
        assert_eq!(
            kernel.len(),
            expected,
            "fixed-field dimension must equal gcd(n, d)"
        );
        self.subfield_from_basis(d, kernel)
    }

    /// Intersection of Fix(sigma^{d_i}) over the given exponents: equals
    /// Fix(sigma^g) for g = gcd(exponents, n). The literal kernel
    /// intersection is computed and checked against the closed form.
    pub fn intersect_fixed_fields(&self, exponents: &[usize]) -> Result<Subfield> {
        if exponents.is_empty() {
            return Err(Error::EmptyList);
        }
        let n = self.inner.n;
        let g = exponents.iter().fold(n as u64, |acc, &d| gcd(acc, d as u64)) as usize;
        // Literal intersection: stack (sigma^{d_i} - id) and take the kernel.
        let minus_one = self.base().neg(Fq::ONE);
        let stacked = FMatrix::from_fn(n * exponents.len(), n, |row, col| {
            let (block, i) = (row / n, row % n);
            let s = self.frobenius_matrix(exponents[block]);
            let mut v = s.get(i, col);
            if i == col {
                v = self.base().add(v, minus_one);
            }
            v
        });
        let literal = stacked.kernel_basis(self.base());
        let closed = self.fixed_field(if g == 0 { n } else { g });
        assert_eq!(
            literal.len(),
            closed.degree_over_f,
            "literal kernel intersection must match the gcd closed form"
        );
        let literal_span = RowSpan::new(self.base(), n, &literal);
        assert!(
            closed.basis.iter().all(|b| literal_span.contains(self.base(), &b.coords)),
            "closed-form fixed field must lie inside the literal intersection"
        );
        Ok(closed)
    }

    fn subfield_from_basis(&self, d: usize, kernel: Vec<Vec<Fq>>) -> Subfield {
        let span = RowSpan::new(self.base(), self.inner.n, &kernel);
        let basis = kernel
            .into_iter()
            .map(|coords| KElem { tower: self.clone(), coords })
            .collect::<Vec<_>>();
        Subfield { d, degree_over_f: basis.len(), basis, span }
    }

    /// Builds a subfield report directly from spanning coordinate vectors
    /// (used by brute-force nucleus computations).
    pub fn subfield_from_kernel(&self, kernel: Vec<Vec<Fq>>) -> Subfield {
        let dim = RowSpan::new(self.base(), self.inner.n, &kernel).dim();
        assert_eq!(dim, kernel.len(), "kernel basis must be independent");
        // Subfields of K are unique per degree, so the fixed-field exponent
        // is recoverable from the dimension alone.
        self.subfield_from_basis(dim, kernel)
    }

    fn check_same(&self, a: &KElem) {
        assert!(
            *self == a.tower,
            "element belongs to a different tower; use matching towers"
        );
    }

    /// Errors unless the two towers are structurally identical.
    pub fn require_same(&self, other: &FieldTower) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Least monic irreducible of the given degree in packed coefficient order.
fn default_ext_modulus(base: &FqCtx, n: usize) -> CenterPoly {
    if n == 1 {
        // y itself is irreducible; K = F via y = 0... but a tower wants a
        // field-defining modulus: y - c works for any c; choose y (c = 0).
        return CenterPoly::x();
    }
    let q = base.q() as u64;
    let count = q.pow(n as u32);
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut rest = idx;
        for _ in 0..n {
            coeffs.push(Fq((rest % q) as u32));
            rest /= q;
        }
        coeffs.push(Fq::ONE);
        let cand = CenterPoly::from_coeffs(coeffs);
        if cp_is_irreducible(base, &cand).expect("degree >= 1") {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree over F_q");
}

fn frobenius_tables(base: &FqCtx, n: usize, ext: &CenterPoly) -> Result<Vec<FMatrix>> {
    // sigma(y^i) = (y^q)^i mod ext; columns of the sigma matrix.
    let yq = cp_pow_mod(base, &CenterPoly::x(), base.q() as u64, ext)?;
    let mut sigma = FMatrix::zero(n, n);
    let mut col = CenterPoly::one();
    for j in 0..n {
        for i in 0..n {
            sigma.set(i, j, col.coeff(i));
        }
        if j + 1 < n {
            col = cp_rem(base, &col.mul(base, &yq), ext)?;
        }
    }
    let mut tables = Vec::with_capacity(n);
    let mut acc = FMatrix::identity(n);
    for _ in 0..n {
        tables.push(acc.clone());
        acc = sigma.mul(base, &acc);
    }
    // sigma^n must be the identity (K/F is cyclic of degree n).
    assert_eq!(acc, FMatrix::identity(n), "sigma^n must be the identity");
    Ok(tables)
}

/// An element of K, carrying its tower handle.
#[derive(Clone)]
pub struct KElem {
    tower: FieldTower,
    coords: Vec<Fq>,
}

impl std::fmt::Debug for KElem {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "KElem({})", self.render())
    }
}

impl PartialEq for KElem {
    fn eq(&self, other: &Self) -> bool {
        self.tower == other.tower && self.coords == other.coords
    }
}
impl Eq for KElem {}

impl KElem {
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coords(&self) -> &[Fq] {
        &self.coords
    }

    /// Packed index: base-q digits of the coordinates, lowest first.
    pub fn index(&self) -> u64 {
        let q = self.tower.q() as u64;
        self.coords.iter().rev().fold(0u64, |acc, c| acc * q + c.0 as u64)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// True iff the element lies in the base field F.
    pub fn is_in_f(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The F_q scalar when the element lies in F.
    pub fn base_part(&self) -> Option<Fq> {
        self.is_in_f().then_some(self.coords[0])
    }

    fn as_poly(&self) -> CenterPoly {
        CenterPoly::from_coeffs(self.coords.clone())
    }

    fn from_poly(tower: &FieldTower, p: CenterPoly) -> KElem {
        let mut coords = p.coeffs().to_vec();
        coords.resize(tower.n(), Fq::ZERO);
        KElem { tower: tower.clone(), coords }
    }

    pub fn add(&self, other: &KElem) -> KElem {
        self.tower.check_same(other);
        let ctx = self.tower.base();
        let coords =
            self.coords.iter().zip(&other.coords).map(|(&a, &b)| ctx.add(a, b)).collect();
        KElem { tower: self.tower.clone(), coords }
    }

    pub fn neg(&self) -> KElem {
        let ctx = self.tower.base();
        KElem {
            tower: self.tower.clone(),
            coords: self.coords.iter().map(|&a| ctx.neg(a)).collect(),
        }
    }

    pub fn sub(&self, other: &KElem) -> KElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &KElem) -> KElem {
        self.tower.check_same(other);
        let ctx = self.tower.base();
        let prod = self.as_poly().mul(ctx, &other.as_poly());
        let rem = cp_rem(ctx, &prod, self.tower.ext_modulus()).expect("modulus nonzero");
        KElem::from_poly(&self.tower, rem)
    }

    pub fn scale(&self, c: Fq) -> KElem {
        let ctx = self.tower.base();
        KElem {
            tower: self.tower.clone(),
            coords: self.coords.iter().map(|&a| ctx.mul(a, c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u64) -> KElem {
        let mut base = self.clone();
        let mut acc = self.tower.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<KElem> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        // a^(q^n - 2) = a^{-1} in a field of q^n elements.
        Ok(self.pow(self.tower.field_size() - 2))
    }

    /// sigma^j(a) = a^{q^j}, via the tabulated matrices.
    pub fn frobenius(&self, j: usize) -> KElem {
        let m = self.tower.frobenius_matrix(j);
        KElem { tower: self.tower.clone(), coords: m.apply(self.tower.base(), &self.coords) }
    }

    /// Canonical compact rendering in the tower's generator letter.
    pub fn render(&self) -> String {
        let ctx = self.tower.base();
        let gen = self.tower.gen_letter().to_string();
        crate::centerpoly::render_terms(
            self.coords.iter().map(|&c| crate::centerpoly::coeff_string(ctx, c, "z")).collect(),
            &gen,
        )
    }
}

/// The op-level form of the Frobenius map: sigma^j applied to `a`.
pub fn frobenius(a: &KElem, j: usize) -> KElem {
    a.frobenius(j)
}

/// A fixed subfield Fix(sigma^d) inside K, with an F-basis.
#[derive(Debug, Clone)]
pub struct Subfield {
    /// The exponent whose fixed field this is (reduced data).
    pub d: usize,
    /// [Fix(sigma^d) : F] = gcd(n, d).
    pub degree_over_f: usize,
    /// Canonical F-basis as elements of K.
    pub basis: Vec<KElem>,
    span: RowSpan,
}

impl Subfield {
    pub fn contains(&self, a: &KElem) -> bool {
        self.span.contains(a.tower().base(), a.coords())
    }

    /// True iff the two reports describe the same F-subspace of K.
    pub fn same_subspace(&self, other: &Subfield) -> bool {
        self.degree_over_f == other.degree_over_f
            && other.basis.iter().all(|b| self.contains(b))
    }
}
