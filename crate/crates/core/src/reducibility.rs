//! Reducibility of skew polynomials: the four-step decision procedure, the
//! irreducibility certificate through the minimal central left multiple,
//! factor extraction from eigenring zero divisors, and a complete recursive
//! factorizer.
//!
//! The decision procedure is one-sided: TRUE verdicts assert reducibility
//! (and are backed by the factorizer), STOP verdicts assert nothing.

use crate::centerpoly::{cp_factor, cp_is_irreducible, CenterPoly};
use crate::error::{Error, Result};
use crate::fq::is_prime;
use crate::petit::{eigenring, zero_divisor_search, EigenringReport, PetitAlgebra, ZdSearch};
use crate::skew::{
    center_to_skew, is_right_invariant, mclm, s_gcrd, s_right_divmod, SkewPoly,
};
use crate::tower::KElem;

/// Cap on q^(n * ceil(m/2)) for the exhaustive right-factor scan.
const FACTOR_SCAN_CAP: u64 = 1 << 24;

/// Outcome class of the decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    /// f is reducible (sound: the factorizer confirms every such verdict).
    ReducibleTrue,
    /// The procedure cannot decide; no claim is made either way.
    StopUndecided,
    /// f is irreducible, certified through the minimal central left multiple.
    IrreducibleCertified,
    /// f is right invariant; the procedure does not apply.
    RightInvariant,
    /// f has zero constant term: t is a proper right factor.
    TrivialTFactor,
}

impl VerdictKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictKind::ReducibleTrue => "TRUE",
            VerdictKind::StopUndecided => "STOP",
            VerdictKind::IrreducibleCertified => "IRREDUCIBLE",
            VerdictKind::RightInvariant => "RIGHT_INVARIANT",
            VerdictKind::TrivialTFactor => "TRIVIAL_T_FACTOR",
        }
    }
}

/// The rule that produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictReason {
    /// Step 1: f lies in F[t] and factors there.
    CommutativeFactor,
    /// Step 1: f lies in F[t] and is irreducible there; undecided (such f
    /// can still factor in the skew ring, so no pass-through to later steps).
    CommutativeIrreducibleStop,
    /// Step 2: [L:F] > m. Kept verbatim although unreachable: with a
    /// nonzero constant term, d divides m, so [L:F] <= m always.
    NucleusTooLarge,
    /// Step 3: Fix(sigma^c) equals the nucleus L.
    FixEqualsNucleus,
    /// Step 3: m = qc and [L:F] > c.
    DivisibleCase,
    /// Step 3: m = qc + r with 0 < r < c and [L:F] >= c.
    RemainderCase,
    /// Step 4: no rule fired.
    Undecided,
    /// f is right invariant.
    RightInvariant,
    /// Zero constant term.
    TrivialTFactor,
    /// The minimal-central-left-multiple certificate (degree mn, hhat
    /// irreducible).
    Certificate,
}

impl VerdictReason {
    /// The step of the decision procedure this rule belongs to, if any.
    pub fn step(&self) -> Option<u8> {
        match self {
            VerdictReason::CommutativeFactor | VerdictReason::CommutativeIrreducibleStop => Some(1),
            VerdictReason::NucleusTooLarge => Some(2),
            VerdictReason::FixEqualsNucleus
            | VerdictReason::DivisibleCase
            | VerdictReason::RemainderCase => Some(3),
            VerdictReason::Undecided => Some(4),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictReason::CommutativeFactor => "commutative-factor",
            VerdictReason::CommutativeIrreducibleStop => "commutative-irreducible",
            VerdictReason::NucleusTooLarge => "nucleus-exceeds-degree",
            VerdictReason::FixEqualsNucleus => "fix-equals-nucleus",
            VerdictReason::DivisibleCase => "divisible-case",
            VerdictReason::RemainderCase => "remainder-case",
            VerdictReason::Undecided => "undecided",
            VerdictReason::RightInvariant => "right-invariant",
            VerdictReason::TrivialTFactor => "trivial-t-factor",
            VerdictReason::Certificate => "central-multiple-certificate",
        }
    }
}

/// Result of the decision procedure.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub reason: VerdictReason,
    /// A proper right factor when one is constructively known.
    pub witness: Option<SkewPoly>,
}

/// The four-step reducibility decision for monic f of degree >= 2.
///
/// Entry hypothesis (checked): n prime or gcd(m, n) = 1. Right-invariant
/// inputs and zero constant terms produce their own verdict kinds before the
/// numbered steps. The procedure is sound for TRUE but deliberately
/// incomplete: STOP carries no information.
pub fn decide(f: &SkewPoly, seed: u64) -> Result<Verdict> {
    let tower = f.tower();
    let ctx = tower.base();
    let n = tower.n();
    if !f.is_monic() {
        return Err(Error::DegenerateInput("decide requires a monic polynomial".into()));
    }
    let m = f.degree().expect("monic implies nonzero");
    if m < 2 {
        return Err(Error::DegenerateInput("decide requires degree at least 2".into()));
    }
    if is_right_invariant(f) {
        return Ok(Verdict {
            kind: VerdictKind::RightInvariant,
            reason: VerdictReason::RightInvariant,
            witness: None,
        });
    }
    if f.coeff(0).is_zero() {
        return Ok(Verdict {
            kind: VerdictKind::TrivialTFactor,
            reason: VerdictReason::TrivialTFactor,
            witness: Some(SkewPoly::t(tower)),
        });
    }
    let g = gcd(m, n);
    if !is_prime(n as u64) && g != 1 {
        return Err(Error::HypothesisViolated { n, g });
    }

    // Step 1: polynomials over F are handled by commutative factorization.
    // Both branches terminate: an F-irreducible f can still factor in the
    // skew ring, so passing it to the later steps would risk unsound TRUEs.
    if f.coeffs().iter().all(KElem::is_in_f) {
        let image = CenterPoly::from_coeffs(
            f.coeffs().iter().map(|c| c.base_part().expect("coefficient in F")).collect(),
        );
        let (_, factors) = cp_factor(ctx, &image, seed)?;
        if factors.len() == 1 && factors[0].1 == 1 {
            return Ok(Verdict {
                kind: VerdictKind::StopUndecided,
                reason: VerdictReason::CommutativeIrreducibleStop,
                witness: None,
            });
        }
        let witness = center_poly_as_skew(f, &factors[0].0);
        return Ok(Verdict {
            kind: VerdictKind::ReducibleTrue,
            reason: VerdictReason::CommutativeFactor,
            witness: Some(witness),
        });
    }

    // Step 2: d = gcd({m - lambda} and n), L = Fix(sigma^d).
    let d = (0..m)
        .filter(|&i| !f.coeff(i).is_zero())
        .fold(n, |acc, lambda| gcd(acc, m - lambda));
    let l_deg = gcd(n, d);
    if l_deg > m {
        return Ok(Verdict {
            kind: VerdictKind::ReducibleTrue,
            reason: VerdictReason::NucleusTooLarge,
            witness: None,
        });
    }

    // Step 3: least c in 1..m-1 with Fix(sigma^c) proper and all a_i fixed
    // by sigma^c. (Under the entry hypothesis no branch can fire for
    // f outside F[t]; the rules are kept verbatim.)
    let c = (1..m).find(|&c| {
        gcd(n, c) < n
            && (0..m).all(|i| {
                let a = f.coeff(i);
                a.frobenius(c) == a
            })
    });
    if let Some(c) = c {
        let fix_deg = gcd(n, c);
        if fix_deg == l_deg {
            return Ok(Verdict {
                kind: VerdictKind::ReducibleTrue,
                reason: VerdictReason::FixEqualsNucleus,
                witness: None,
            });
        }
        if m.is_multiple_of(c) && l_deg > c {
            return Ok(Verdict {
                kind: VerdictKind::ReducibleTrue,
                reason: VerdictReason::DivisibleCase,
                witness: None,
            });
        }
        if !m.is_multiple_of(c) && l_deg >= c {
            return Ok(Verdict {
                kind: VerdictKind::ReducibleTrue,
                reason: VerdictReason::RemainderCase,
                witness: None,
            });
        }
    }

    // Step 4: out of rules.
    Ok(Verdict {
        kind: VerdictKind::StopUndecided,
        reason: VerdictReason::Undecided,
        witness: None,
    })
}

/// Embeds p in F[t] (same variable) into the skew ring.
fn center_poly_as_skew(f: &SkewPoly, p: &CenterPoly) -> SkewPoly {
    let tower = f.tower();
    SkewPoly::from_coeffs(tower, p.coeffs().iter().map(|&c| tower.from_base(c)).collect())
}

/// A proof object for irreducibility: the minimal central left multiple has
/// the maximal degree mn with an irreducible hat polynomial.
#[derive(Debug, Clone)]
pub struct IrreducibilityCertificate {
    /// Irreducible hhat in F[x] of degree exactly m.
    pub hhat: CenterPoly,
    /// h = hhat(t^n), the minimal central left multiple, of degree mn.
    pub h: SkewPoly,
}

/// Produces the certificate when deg h = mn and hhat is irreducible in
/// F[x]; degree-1 inputs always certify. Absence of a certificate is not a
/// reducibility proof by itself, but at this scale the factor-extraction
/// routes close the gap.
pub fn certify_irreducible(f: &SkewPoly) -> Result<Option<IrreducibilityCertificate>> {
    if !f.is_monic() {
        return Err(Error::DegenerateInput("certification requires a monic polynomial".into()));
    }
    let Some(m) = f.degree().filter(|&m| m >= 1) else {
        return Err(Error::DegenerateInput("certification requires degree at least 1".into()));
    };
    if f.coeff(0).is_zero() {
        return Err(Error::TValuationNonzero);
    }
    let ctx = f.tower().base();
    let data = mclm(f)?;
    debug_assert_eq!(data.t_valuation, 0);
    if data.hhat.degree() == Some(m) && cp_is_irreducible(ctx, &data.hhat)? {
        Ok(Some(IrreducibilityCertificate { hhat: data.hhat, h: data.h }))
    } else {
        Ok(None)
    }
}

/// Extracts a zero-divisor pair from the eigenring: None means the
/// eigenring was exhaustively verified to be a division algebra; TooLarge
/// means the scan cap was exceeded without a minimal-polynomial split.
pub fn find_zero_divisor(report: &EigenringReport) -> Result<Option<(SkewPoly, SkewPoly)>> {
    match zero_divisor_search(report) {
        ZdSearch::Found(q1, q2) => Ok(Some((q1, q2))),
        ZdSearch::NoneExhaustive => Ok(None),
        ZdSearch::Capped => Err(Error::TooLarge(
            "eigenring exceeds the zero-divisor scan cap".into(),
        )),
    }
}

/// Finds a proper two-sided split f = g * h (degrees >= 1), or None when f
/// is certified irreducible. Routes, in order: (a) strip a right factor t;
/// (b) a proper irreducible factor p of hhat gives the proper right factor
/// gcrd(p(t^n), f); (c) an eigenring zero divisor (q1, q2) gives the proper
/// right factor gcrd(q2, f); (d) bounded exhaustive right-factor scan.
pub fn proper_factor(f: &SkewPoly, seed: u64) -> Result<Option<(SkewPoly, SkewPoly)>> {
    let tower = f.tower();
    let ctx = tower.base();
    if !f.is_monic() {
        return Err(Error::DegenerateInput("factor extraction requires a monic polynomial".into()));
    }
    let m = f.degree().expect("monic implies nonzero");
    if m < 2 {
        return Err(Error::DegenerateInput("factor extraction requires degree at least 2".into()));
    }

    // (a) Zero constant term: t is a right factor and the quotient is the
    // coefficient shift.
    if f.coeff(0).is_zero() {
        let q = SkewPoly::from_coeffs(tower, f.coeffs()[1..].to_vec());
        return Ok(Some((q, SkewPoly::t(tower))));
    }

    let data = mclm(f)?;
    let hhat = &data.hhat;
    let hhat_irreducible = cp_is_irreducible(ctx, hhat)?;

    if hhat_irreducible && hhat.degree() == Some(m) {
        // Certificate: f is irreducible.
        return Ok(None);
    }

    if !hhat_irreducible {
        // (b) Each irreducible factor p of hhat is tried in canonical order;
        // a reducible hhat always yields a proper gcrd: gcrd = f would force
        // hhat = p, and gcrd = 1 for all p would let f divide away every
        // central factor of hhat(t^n).
        let (_, factors) = cp_factor(ctx, hhat, seed)?;
        for (p, _) in &factors {
            let pt = center_to_skew(tower, p);
            let w = s_gcrd(&pt, f)?;
            let dw = w.degree().expect("gcrd of nonzero inputs is nonzero");
            if dw > 0 && dw < m {
                let (q, r) = s_right_divmod(f, &w)?;
                debug_assert!(r.is_zero());
                return Ok(Some((q, w)));
            }
        }
        unreachable!("a reducible hat polynomial must produce a proper gcrd");
    }

    // hhat irreducible of degree < m: f is a product of similar irreducible
    // factors and the eigenring contains zero divisors.
    let alg = PetitAlgebra::new(f)?;
    let report = eigenring(&alg);
    match zero_divisor_search(&report) {
        ZdSearch::Found(_, q2) => {
            let w = s_gcrd(&q2, f)?;
            let dw = w.degree().expect("gcrd of nonzero inputs is nonzero");
            assert!(
                dw > 0 && dw < m,
                "a zero divisor's right component must share a proper factor with f"
            );
            let (q, r) = s_right_divmod(f, &w)?;
            debug_assert!(r.is_zero());
            return Ok(Some((q, w)));
        }
        ZdSearch::NoneExhaustive => {
            unreachable!("an uncertified f has eigenring zero divisors");
        }
        ZdSearch::Capped => {}
    }

    // (d) Bounded exhaustive scan over monic right factors of degree up to
    // m/2, least candidate first (by degree, then packed coefficient order).
    let size = tower.field_size();
    let mut budget: u64 = 1;
    for _ in 0..m.div_ceil(2) {
        budget = match budget.checked_mul(size) {
            Some(v) if v <= FACTOR_SCAN_CAP => v,
            _ => return Err(Error::Inconclusive),
        };
    }
    for k in 1..=m / 2 {
        let count = size.pow(k as u32);
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(k + 1);
            let mut rem = idx;
            for _ in 0..k {
                coeffs.push(tower.element_from_index(rem % size));
                rem /= size;
            }
            coeffs.push(tower.one());
            let w = SkewPoly::from_coeffs(tower, coeffs);
            let (q, r) = s_right_divmod(f, &w)?;
            if r.is_zero() {
                return Ok(Some((q, w)));
            }
        }
    }
    Err(Error::Inconclusive)
}

/// A complete factorization f = f_1 * ... * f_l * t^v with monic
/// irreducible f_i.
#[derive(Debug, Clone)]
pub struct Factorization {
    /// Irreducible factors in product order (leftmost first).
    pub factors: Vec<SkewPoly>,
    /// Leading unit; trivially 1 for monic input.
    pub unit: KElem,
    /// Stripped power of t.
    pub t_valuation: usize,
}

impl Factorization {
    /// Total number of irreducible factors, counting each stripped t.
    pub fn l(&self) -> usize {
        self.factors.len() + self.t_valuation
    }

    /// Multiplies the factorization back together.
    pub fn recombine(&self, tower: &crate::tower::FieldTower) -> SkewPoly {
        let mut acc = SkewPoly::constant(self.unit.clone());
        for p in &self.factors {
            acc = crate::skew::s_mul(&acc, p).expect("same tower");
        }
        if self.t_valuation > 0 {
            let t_pow = SkewPoly::monomial(tower.one(), self.t_valuation);
            acc = crate::skew::s_mul(&acc, &t_pow).expect("same tower");
        }
        acc
    }
}

/// Factors monic f of degree >= 1 completely by recursive proper splits.
pub fn factorize(f: &SkewPoly, seed: u64) -> Result<Factorization> {
    if !f.is_monic() {
        return Err(Error::DegenerateInput("factorization requires a monic polynomial".into()));
    }
    if f.degree().is_none_or(|m| m < 1) {
        return Err(Error::DegenerateInput("factorization requires degree at least 1".into()));
    }
    let tower = f.tower();
    let (core, v) = f.strip_t_valuation();
    let mut factors = Vec::new();
    split_completely(&core, seed, &mut factors)?;
    let result = Factorization { factors, unit: tower.one(), t_valuation: v };
    debug_assert_eq!(&result.recombine(tower), f, "recombination must reproduce the input");
    Ok(result)
}

fn split_completely(g: &SkewPoly, seed: u64, out: &mut Vec<SkewPoly>) -> Result<()> {
    match g.degree().expect("monic pieces are nonzero") {
        0 => Ok(()),
        1 => {
            out.push(g.clone());
            Ok(())
        }
        _ => match proper_factor(g, seed)? {
            None => {
                out.push(g.clone());
                Ok(())
            }
            Some((a, b)) => {
                split_completely(&a, seed, out)?;
                split_completely(&b, seed, out)
            }
        },
    }
}

/// Structural recompression f = g(t^c) * t^r with r = (deg f) mod c:
/// succeeds iff every nonzero coefficient sits at an exponent congruent to
/// deg f modulo c; returns the coefficients of g (lowest first) and r.
pub fn recompress(f: &SkewPoly, c: usize) -> Option<(Vec<KElem>, usize)> {
    assert!(c >= 1, "compression step must be positive");
    let m = f.degree()?;
    let r = m % c;
    for (i, a) in f.coeffs().iter().enumerate() {
        if !a.is_zero() && i % c != r {
            return None;
        }
    }
    let coeffs = (0..=(m - r) / c).map(|j| f.coeff(j * c + r)).collect();
    Some((coeffs, r))
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
    use crate::petit::petit_mul;
    use crate::skew::{s_mul, s_rem};
    use crate::tower::{build_tower, FieldTower};

    fn f4() -> FieldTower {
        build_tower(2, 1, 2, None, None).unwrap()
    }

    fn f8() -> FieldTower {
        build_tower(2, 1, 3, None, None).unwrap()
    }

    fn sp(tower: &FieldTower, packed: &[u64]) -> SkewPoly {
        SkewPoly::from_coeffs(
            tower,
            packed.iter().map(|&i| tower.element_from_index(i)).collect(),
        )
    }

    #[test]
    fn decide_commutative_factor_over_f8() {
        // t^2+1 = (t+1)^2 over F_2: TRUE at step 1 with witness t+1.
        let tower = f8();
        let v = decide(&sp(&tower, &[1, 0, 1]), 0).unwrap();
        assert_eq!(v.kind, VerdictKind::ReducibleTrue);
        assert_eq!(v.reason.step(), Some(1));
        let w = v.witness.unwrap();
        assert_eq!(w, sp(&tower, &[1, 1]));
        assert!(s_rem(&sp(&tower, &[1, 0, 1]), &w).unwrap().is_zero());
    }

    #[test]
    fn decide_stops_on_irreducible_input() {
        // t^2+g over F_4 is irreducible; the procedure correctly stops.
        let tower = f4();
        let v = decide(&sp(&tower, &[2, 0, 1]), 0).unwrap();
        assert_eq!(v.kind, VerdictKind::StopUndecided);
        assert_eq!(v.reason, VerdictReason::Undecided);
        assert!(v.witness.is_none());
    }

    #[test]
    fn decide_stops_on_commutatively_irreducible_input() {
        // t^2+t+1 is irreducible over F_2 and stays irreducible in the skew
        // ring; step 1 must stop rather than fall through to step 3, which
        // would wrongly claim reducibility.
        let tower = f4();
        let v = decide(&sp(&tower, &[1, 1, 1]), 0).unwrap();
        assert_eq!(v.kind, VerdictKind::StopUndecided);
        assert_eq!(v.reason, VerdictReason::CommutativeIrreducibleStop);
    }

    #[test]
    fn decide_trivial_t_factor() {
        let tower = f4();
        let v = decide(&sp(&tower, &[0, 2, 1]), 0).unwrap();
        assert_eq!(v.kind, VerdictKind::TrivialTFactor);
        assert_eq!(v.witness.unwrap(), SkewPoly::t(&tower));
    }

    #[test]
    fn decide_right_invariant_verdict() {
        let tower = f4();
        let v = decide(&sp(&tower, &[1, 0, 1]), 0).unwrap();
        assert_eq!(v.kind, VerdictKind::RightInvariant);
    }

    #[test]
    fn decide_rejects_composite_n_with_common_factor() {
        let big = build_tower(2, 1, 4, None, None).unwrap();
        let y = big.generator();
        // m = 2, n = 4: gcd = 2 with composite n.
        let f = SkewPoly::from_coeffs(&big, vec![y.clone(), big.zero(), big.one()]);
        assert!(matches!(
            decide(&f, 0),
            Err(Error::HypothesisViolated { n: 4, g: 2 })
        ));
        // m = 3 is coprime to n = 4: accepted.
        let f = SkewPoly::from_coeffs(&big, vec![y, big.zero(), big.zero(), big.one()]);
        assert!(decide(&f, 0).is_ok());
    }

    #[test]
    fn decide_is_sound_for_degree_2_exhaustively() {
        // Over F_4 and F_8 every monic degree-2 f: a TRUE or TRIVIAL verdict
        // must be confirmed by the factorizer.
        for tower in [f4(), f8()] {
            let size = tower.field_size();
            for a0 in 0..size {
                for a1 in 0..size {
                    let f = sp(&tower, &[a0, a1, 1]);
                    let v = decide(&f, 0).unwrap();
                    match v.kind {
                        VerdictKind::ReducibleTrue => {
                            let fact = factorize(&f, 0).unwrap();
                            assert!(fact.l() >= 2, "unsound TRUE at {:?}", f);
                        }
                        VerdictKind::TrivialTFactor => {
                            assert!(factorize(&f, 0).unwrap().t_valuation >= 1);
                        }
                        _ => {}
                    }
                }
            }
        }
    }

    #[test]
    fn certificate_pinned_examples() {
        let tower = f4();
        let cert = certify_irreducible(&sp(&tower, &[2, 0, 1])).unwrap().unwrap();
        assert_eq!(cert.hhat.coeffs(), &[crate::fq::Fq(1), crate::fq::Fq(1), crate::fq::Fq(1)]);
        assert_eq!(cert.h.degree(), Some(4));
        assert!(certify_irreducible(&sp(&tower, &[2, 3, 1])).unwrap().is_none());
        // Degree 1 always certifies.
        assert!(certify_irreducible(&sp(&tower, &[2, 1])).unwrap().is_some());
        // Zero constant term is out of protocol.
        assert!(matches!(
            certify_irreducible(&sp(&tower, &[0, 2, 1])),
            Err(Error::TValuationNonzero)
        ));
    }

    #[test]
    fn zero_divisor_examples() {
        let tower = f4();
        let alg = PetitAlgebra::new(&sp(&tower, &[2, 3, 1])).unwrap();
        let report = eigenring(&alg);
        let (q1, q2) = find_zero_divisor(&report).unwrap().unwrap();
        assert!(petit_mul(&alg, &q1, &q2).unwrap().is_zero());
        // Both components share proper right factors with f; the left one
        // lands on one of the two linear right divisors.
        let w1 = s_gcrd(&q1, alg.f()).unwrap();
        assert!(w1 == sp(&tower, &[1, 1]) || w1 == sp(&tower, &[2, 1]));
        // Division eigenrings have none.
        for f in [sp(&tower, &[2, 0, 1]), sp(&tower, &[1, 1, 1])] {
            let report = eigenring(&PetitAlgebra::new(&f).unwrap());
            assert!(find_zero_divisor(&report).unwrap().is_none());
        }
    }

    #[test]
    fn proper_factor_pinned_examples() {
        let tower = f4();
        // t^2+(g+1)t+g = (t+g)(t+1).
        let (a, b) = proper_factor(&sp(&tower, &[2, 3, 1]), 0).unwrap().unwrap();
        assert_eq!(a, sp(&tower, &[2, 1]));
        assert_eq!(b, sp(&tower, &[1, 1]));
        // t^4+1 = (t^2+1)(t^2+1) through the central route.
        let (a, b) = proper_factor(&sp(&tower, &[1, 0, 0, 0, 1]), 0).unwrap().unwrap();
        assert_eq!(a, sp(&tower, &[1, 0, 1]));
        assert_eq!(b, sp(&tower, &[1, 0, 1]));
        // Irreducible: no factor.
        assert!(proper_factor(&sp(&tower, &[2, 0, 1]), 0).unwrap().is_none());
        // Zero constant term: right factor t.
        let (a, b) = proper_factor(&sp(&tower, &[0, 2, 1]), 0).unwrap().unwrap();
        assert_eq!(a, sp(&tower, &[2, 1]));
        assert_eq!(b, SkewPoly::t(&tower));
    }

    #[test]
    fn factorize_pinned_chains() {
        let tower = f4();
        // t^2+(g+1)t+g -> [t+g, t+1].
        let fact = factorize(&sp(&tower, &[2, 3, 1]), 0).unwrap();
        assert_eq!(fact.factors, vec![sp(&tower, &[2, 1]), sp(&tower, &[1, 1])]);
        assert_eq!((fact.l(), fact.t_valuation), (2, 0));
        // t^4+1 -> [t+1, t+1, t+1, t+1].
        let fact = factorize(&sp(&tower, &[1, 0, 0, 0, 1]), 0).unwrap();
        assert_eq!(fact.factors, vec![sp(&tower, &[1, 1]); 4]);
        assert_eq!(fact.l(), 4);
        // t^2+g stays whole.
        let fact = factorize(&sp(&tower, &[2, 0, 1]), 0).unwrap();
        assert_eq!(fact.factors, vec![sp(&tower, &[2, 0, 1])]);
        assert_eq!(fact.l(), 1);
        // Pure power of t.
        let fact = factorize(&sp(&tower, &[0, 0, 1]), 0).unwrap();
        assert!(fact.factors.is_empty());
        assert_eq!((fact.t_valuation, fact.l()), (2, 2));
    }

    #[test]
    fn factorize_similar_factor_product() {
        // t^4+t^2+1 = (t^2+g)(t^2+g+1) over F_4: hhat = x^2+x+1 is
        // irreducible of degree 2 < 4, so the zero-divisor route must split.
        let tower = f4();
        let f = sp(&tower, &[1, 0, 1, 0, 1]);
        let fact = factorize(&f, 0).unwrap();
        assert_eq!(fact.factors.len(), 2);
        assert!(fact.factors.iter().all(|p| p.degree() == Some(2)));
        assert_eq!(fact.recombine(&tower), f);
        for p in &fact.factors {
            assert!(certify_irreducible(p).unwrap().is_some());
        }
    }

    #[test]
    fn factor_order_multiplies_back_left_to_right() {
        let tower = f4();
        for packed in [[2u64, 3, 1], [1, 2, 1], [3, 3, 1], [1, 0, 1]] {
            let f = sp(&tower, &packed);
            let fact = factorize(&f, 0).unwrap();
            let mut acc = SkewPoly::one(&tower);
            for p in &fact.factors {
                acc = s_mul(&acc, p).unwrap();
            }
            assert_eq!(acc, f, "recombination failed for {:?}", f);
        }
    }

    #[test]
    fn factorize_results_are_seed_independent() {
        let tower = f4();
        for packed in [[2u64, 3, 1], [1, 0, 1]] {
            let f = sp(&tower, &packed);
            let a = factorize(&f, 0).unwrap();
            let b = factorize(&f, 12345).unwrap();
            assert_eq!(a.factors, b.factors);
        }
    }

    #[test]
    fn recompression_structure() {
        let tower = f4();
        // t^4 + g t^2 + g: support {0, 2, 4}, step 2, r = 0.
        let f = sp(&tower, &[2, 0, 2, 0, 1]);
        let (coeffs, r) = recompress(&f, 2).unwrap();
        assert_eq!(r, 0);
        assert_eq!(coeffs.len(), 3);
        assert_eq!(coeffs[0], tower.generator());
        // t^3 + g t: support {1, 3}, step 2, r = 1.
        let f = sp(&tower, &[0, 2, 0, 1]);
        let (coeffs, r) = recompress(&f, 2).unwrap();
        assert_eq!(r, 1);
        assert_eq!(coeffs.len(), 2);
        // Mixed support fails.
        assert!(recompress(&sp(&tower, &[2, 3, 1]), 2).is_none());
        // Step 1 always succeeds.
        assert!(recompress(&sp(&tower, &[2, 3, 1]), 1).is_some());
    }

    #[test]
    fn recompression_always_succeeds_at_the_nucleus_parameter() {
        // With a_0 != 0, every exponent in the support is congruent to m
        // modulo d (by construction of d), hence also modulo gcd(n, d).
        let tower = f4();
        let n = tower.n();
        for idx in 0..256u64 {
            let f = sp(
                &tower,
                &[1 + idx % 3, (idx / 3) % 4, (idx / 12) % 4, (idx / 48) % 4, 1],
            );
            let m = f.degree().unwrap();
            let d = (0..m)
                .filter(|&i| !f.coeff(i).is_zero())
                .fold(n, |acc, lambda| gcd(acc, m - lambda));
            let c = gcd(n, d);
            let (coeffs, r) = recompress(&f, c).expect("structural recompression");
            // Multiply back: sum coeffs[j] t^{jc+r} must equal f.
            let mut back = SkewPoly::zero(&tower);
            for (j, a) in coeffs.iter().enumerate() {
                if !a.is_zero() {
                    back = back.add(&SkewPoly::monomial(a.clone(), j * c + r));
                }
            }
            assert_eq!(back, f);
        }
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let tower = f4();
        assert!(decide(&sp(&tower, &[2, 1]), 0).is_err()); // degree 1
        assert!(decide(&sp(&tower, &[1, 2]), 0).is_err()); // not monic
        assert!(proper_factor(&sp(&tower, &[2, 1]), 0).is_err());
        assert!(factorize(&SkewPoly::one(&tower), 0).is_err());
        assert!(factorize(&sp(&tower, &[1, 2]), 0).is_err());
    }
}
