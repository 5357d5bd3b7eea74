//! Built-in verification suite: the library's acceptance checks with
//! independent brute-force oracles, runnable from the CLI (`selftest`) and
//! asserted one by one in the integration tests.

use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::centerpoly::{cp_factor, CenterPoly};
use crate::fq::Fq;
use crate::petit::{eigenring, nucleus, nucleus_bruteforce, t_power_in_nucr, EigenringReport, PetitAlgebra};
use crate::reducibility::{certify_irreducible, decide, factorize, VerdictKind};
use crate::skew::{center_to_skew, is_right_invariant, mclm, s_mul, s_rem, SkewPoly};
use crate::tower::{build_tower, FieldTower};

/// Selftest scale: `Fast` shrinks the random sample sizes, `Full` runs the
/// documented budgets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

/// One completed check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

struct Sizes {
    random_fields: usize,
    random_nucleus: usize,
    random_mclm: usize,
    random_factor: usize,
    wide_sweep: bool,
}

impl Sizes {
    fn for_level(level: Level) -> Sizes {
        match level {
            Level::Fast => Sizes {
                random_fields: 20,
                random_nucleus: 40,
                random_mclm: 60,
                random_factor: 60,
                wide_sweep: false,
            },
            Level::Full => Sizes {
                random_fields: 100,
                random_nucleus: 200,
                random_mclm: 500,
                random_factor: 500,
                wide_sweep: true,
            },
        }
    }
}

/// Runs every check and reports the outcomes in a fixed order.
pub fn run(level: Level, seed: u64) -> Vec<CheckResult> {
    (1..=CHECK_COUNT).map(|i| run_check(i, level, seed)).collect()
}

/// Number of checks in the suite.
pub const CHECK_COUNT: usize = 9;

/// Runs a single check by its 1-based index.
pub fn run_check(index: usize, level: Level, seed: u64) -> CheckResult {
    let s = Sizes::for_level(level);
    match index {
        1 => check_eigenring_count(&s),
        2 => check_dimension_law(&s, seed),
        3 => check_nucleus_closed_form(&s, seed),
        4 => check_t_membership(),
        5 => check_minimal_central_multiple(&s, seed),
        6 => check_decision_soundness(seed),
        7 => check_factorizer(&s, seed),
        8 => check_worked_chain(seed),
        9 => check_subalgebra_span(),
        other => panic!("check index {other} out of range 1..={CHECK_COUNT}"),
    }
}

macro_rules! ensure {
    ($c:expr, $($t:tt)*) => {
        if !$c {
            return Err(format!($($t)*));
        }
    };
}

fn timed(
    name: &'static str,
    body: impl FnOnce() -> std::result::Result<String, String>,
) -> CheckResult {
    let start = Instant::now();
    let outcome = body();
    let millis = start.elapsed().as_millis();
    match outcome {
        Ok(detail) => CheckResult { name, passed: true, detail, millis },
        Err(detail) => CheckResult { name, passed: false, detail, millis },
    }
}

// ---------------------------------------------------------------------------
// Shared infrastructure
// ---------------------------------------------------------------------------

fn t_f4() -> FieldTower {
    build_tower(2, 1, 2, None, None).expect("F_4 tower")
}

fn t_f8() -> FieldTower {
    build_tower(2, 1, 3, None, None).expect("F_8 tower")
}

fn t_f9() -> FieldTower {
    build_tower(3, 1, 2, None, None).expect("F_9 tower")
}

fn t_f16() -> FieldTower {
    build_tower(2, 1, 4, None, None).expect("F_16 tower")
}

/// All monic skew polynomials of the given degree over the tower.
fn all_monic(tower: &FieldTower, deg: usize) -> Vec<SkewPoly> {
    let size = tower.field_size();
    let count = size.pow(deg as u32);
    (0..count)
        .map(|mut idx| {
            let mut coeffs = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                coeffs.push(tower.element_from_index(idx % size));
                idx /= size;
            }
            coeffs.push(tower.one());
            SkewPoly::from_coeffs(tower, coeffs)
        })
        .collect()
}

/// A uniformly random monic polynomial; `require_a0` rejects zero constant
/// terms.
pub fn random_monic(
    tower: &FieldTower,
    deg: usize,
    rng: &mut ChaCha8Rng,
    require_a0: bool,
) -> SkewPoly {
    let size = tower.field_size();
    let mut coeffs = Vec::with_capacity(deg + 1);
    for i in 0..deg {
        loop {
            let c = tower.element_from_index(rng.next_u64() % size);
            if i == 0 && require_a0 && c.is_zero() {
                continue;
            }
            coeffs.push(c);
            break;
        }
    }
    coeffs.push(tower.one());
    SkewPoly::from_coeffs(tower, coeffs)
}

/// Complete irreducibility oracle: scans every monic right-factor degree
/// 1..m-1. Independent of the certificate and eigenring machinery.
pub fn irreducible_by_scan(f: &SkewPoly) -> bool {
    let tower = f.tower();
    let size = tower.field_size();
    let m = f.degree().expect("nonzero input");
    for k in 1..m {
        let count = size.pow(k as u32);
        for mut idx in 0..count {
            let mut coeffs = Vec::with_capacity(k + 1);
            for _ in 0..k {
                coeffs.push(tower.element_from_index(idx % size));
                idx /= size;
            }
            coeffs.push(tower.one());
            let w = SkewPoly::from_coeffs(tower, coeffs);
            if s_rem(f, &w).expect("same tower").is_zero() {
                return false;
            }
        }
    }
    true
}

/// Enumeration oracle for the hat polynomial: the least monic nonconstant
/// p over F (by degree, then packed coefficient order) with f right-dividing
/// p(t^n).
pub fn hhat_by_enumeration(f: &SkewPoly) -> CenterPoly {
    let tower = f.tower();
    let ctx = tower.base();
    let q = ctx.q() as u64;
    let m = f.degree().expect("nonzero input");
    for deg in 1..=m {
        let count = q.pow(deg as u32);
        for mut idx in 0..count {
            let mut coeffs = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                coeffs.push(Fq((idx % q) as u32));
                idx /= q;
            }
            coeffs.push(Fq(1));
            let p = CenterPoly::from_coeffs(coeffs);
            if s_rem(&center_to_skew(tower, &p), f).expect("same tower").is_zero() {
                return p;
            }
        }
    }
    unreachable!("hhat of degree at most m always exists");
}

/// Field check on an eigenring: commutative and free of zero divisors.
fn eigenring_is_field(report: &EigenringReport) -> std::result::Result<(), String> {
    let tower = report.algebra.tower();
    let ctx = tower.base();
    let dim = report.dim_over_f;
    let q = ctx.q() as u64;
    for i in 0..dim {
        for j in 0..dim {
            ensure!(
                report.structure_constants[i][j] == report.structure_constants[j][i],
                "eigenring not commutative at basis pair ({i}, {j})"
            );
        }
    }
    let elements = q.pow(dim as u32);
    for mut idx in 1..elements {
        let mut coords = Vec::with_capacity(dim);
        for _ in 0..dim {
            coords.push(Fq((idx % q) as u32));
            idx /= q;
        }
        let mat = report.left_mul_matrix(&coords);
        ensure!(
            mat.rank(ctx) == dim,
            "eigenring has a zero divisor (singular left multiplication)"
        );
    }
    Ok(())
}

/// Every monic divisor p of hhat with 1 <= deg p < deg hhat.
fn proper_divisors(
    ctx: &crate::fq::FqCtx,
    hhat: &CenterPoly,
    seed: u64,
) -> std::result::Result<Vec<CenterPoly>, String> {
    let (_, primes) = cp_factor(ctx, hhat, seed).map_err(|e| e.to_string())?;
    let deg = hhat.degree().expect("nonconstant");
    let mut divisors = vec![CenterPoly::one()];
    for (p, mult) in &primes {
        let mut next = Vec::new();
        for d in &divisors {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*mult {
                acc = acc.mul(ctx, p);
                next.push(acc.clone());
            }
        }
        divisors = next;
    }
    Ok(divisors
        .into_iter()
        .filter(|d| d.degree().is_some_and(|k| k >= 1 && k < deg))
        .collect())
}

// ---------------------------------------------------------------------------
// The nine checks
// ---------------------------------------------------------------------------

/// Eigenring count: every irreducible, non-right-invariant monic degree-2
/// f has an eigenring with exactly q^2 = 4 elements (dimension 2 over F).
fn check_eigenring_count(s: &Sizes) -> CheckResult {
    let wide = s.wide_sweep;
    timed("eigenring-count", move || {
        let mut towers = vec![t_f4()];
        if wide {
            towers.push(t_f16());
        }
        let mut checked = 0usize;
        let mut total = 0usize;
        for tower in &towers {
            for f in all_monic(tower, 2) {
                total += 1;
                if is_right_invariant(&f) || !irreducible_by_scan(&f) {
                    continue;
                }
                let alg = PetitAlgebra::new(&f).map_err(|e| e.to_string())?;
                let report = eigenring(&alg);
                ensure!(
                    report.dim_over_f == 2,
                    "eigenring of {} has dimension {} (expected 2)",
                    f.render(),
                    report.dim_over_f
                );
                checked += 1;
            }
        }
        Ok(format!(
            "{checked} irreducible non-invariant candidates out of {total} monic degree-2 inputs; eigenring size 4 each"
        ))
    })
}

/// Dimension law: irreducible f gives a commutative eigenring of dimension
/// m over F with no zero divisors (a field).
fn check_dimension_law(s: &Sizes, seed: u64) -> CheckResult {
    let n_random = s.random_fields;
    let wide = s.wide_sweep;
    timed("dimension-law", move || {
        let mut population: Vec<SkewPoly> = Vec::new();
        let mut towers = vec![t_f4()];
        if wide {
            towers.push(t_f16());
        }
        for tower in &towers {
            for f in all_monic(tower, 2) {
                if !is_right_invariant(&f) && irreducible_by_scan(&f) {
                    population.push(f);
                }
            }
        }
        let f8 = t_f8();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51_1AB);
        let mut found = 0usize;
        while found < n_random {
            let deg = 2 + (found % 2);
            let f = random_monic(&f8, deg, &mut rng, true);
            if is_right_invariant(&f) || !irreducible_by_scan(&f) {
                continue;
            }
            population.push(f);
            found += 1;
        }
        for f in &population {
            let m = f.degree().expect("monic");
            let alg = PetitAlgebra::new(f).map_err(|e| e.to_string())?;
            let report = eigenring(&alg);
            ensure!(
                report.dim_over_f == m,
                "dim {} != m {} for {}",
                report.dim_over_f,
                m,
                f.render()
            );
            eigenring_is_field(&report)
                .map_err(|e| format!("{} for {}", e, f.render()))?;
        }
        Ok(format!(
            "{} irreducible inputs: eigenring is a field of dimension m in every case",
            population.len()
        ))
    })
}

/// Closed-form nucleus equals the brute-force kernel computation.
fn check_nucleus_closed_form(s: &Sizes, seed: u64) -> CheckResult {
    let n_random = s.random_nucleus;
    timed("nucleus-closed-form", move || {
        let f4 = t_f4();
        let mut checked = 0usize;
        for deg in 2..=3 {
            for f in all_monic(&f4, deg) {
                if is_right_invariant(&f) {
                    continue;
                }
                let alg = PetitAlgebra::new(&f).map_err(|e| e.to_string())?;
                let report = nucleus(&alg).map_err(|e| e.to_string())?;
                let brute = nucleus_bruteforce(&alg).map_err(|e| e.to_string())?;
                ensure!(
                    report.subfield.same_subspace(&brute),
                    "nucleus mismatch for {}",
                    f.render()
                );
                checked += 1;
            }
        }
        let f16 = t_f16();
        let size = f16.field_size();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x90C);
        let mut done = 0usize;
        while done < n_random {
            // Every fourth sample uses the sparse even-support shape
            // t^4 + a_2 t^2 + a_0; the rest are fully random of degree 2-4.
            let f = if done % 4 == 3 {
                let a0 = f16.element_from_index(rng.next_u64() % size);
                let a2 = f16.element_from_index(rng.next_u64() % size);
                SkewPoly::from_coeffs(
                    &f16,
                    vec![a0, f16.zero(), a2, f16.zero(), f16.one()],
                )
            } else {
                let deg = 2 + (rng.next_u64() % 3) as usize;
                random_monic(&f16, deg, &mut rng, false)
            };
            if is_right_invariant(&f) {
                continue;
            }
            let alg = PetitAlgebra::new(&f).map_err(|e| e.to_string())?;
            let report = nucleus(&alg).map_err(|e| e.to_string())?;
            let brute = nucleus_bruteforce(&alg).map_err(|e| e.to_string())?;
            ensure!(
                report.subfield.same_subspace(&brute),
                "nucleus mismatch for {}",
                f.render()
            );
            done += 1;
        }
        Ok(format!(
            "{checked} exhaustive degree 2-3 inputs and {n_random} random degree <= 4 inputs agree with brute force"
        ))
    })
}

/// Membership of t in the right nucleus is equivalent to all lower
/// coefficients lying in F (exhaustive at degree 2).
fn check_t_membership() -> CheckResult {
    timed("t-membership", || {
        let mut checked = 0usize;
        for tower in [t_f4(), t_f8()] {
            for f in all_monic(&tower, 2) {
                let alg = PetitAlgebra::new(&f).map_err(|e| e.to_string())?;
                let member = t_power_in_nucr(&alg, 1).map_err(|e| e.to_string())?;
                let coeff_condition = (0..2).all(|i| f.coeff(i).is_in_f());
                ensure!(
                    member == coeff_condition,
                    "membership {} but coefficient condition {} for {}",
                    member,
                    coeff_condition,
                    f.render()
                );
                checked += 1;
            }
        }
        Ok(format!("{checked} degree-2 inputs: membership matches the coefficient condition"))
    })
}

/// Minimal central left multiple: centrality, exact cofactor, and
/// minimality against every proper divisor of hhat.
fn check_minimal_central_multiple(s: &Sizes, seed: u64) -> CheckResult {
    let n_random = s.random_mclm;
    timed("central-multiple", move || {
        let towers = [t_f4(), t_f8(), t_f9()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3C1);
        let mut minimality_checked = 0usize;
        for i in 0..n_random {
            let tower = &towers[i % towers.len()];
            let deg = 2 + (rng.next_u64() % 3) as usize;
            let f = random_monic(tower, deg, &mut rng, true);
            let data = mclm(&f).map_err(|e| e.to_string())?;
            ensure!(data.h.is_central(), "h not central for {}", f.render());
            let back = s_mul(&data.cofactor, &f).map_err(|e| e.to_string())?;
            ensure!(back == data.h, "cofactor product mismatch for {}", f.render());
            let hdeg = data.hhat.degree().expect("nonconstant hhat");
            if hdeg <= 3 {
                for p in proper_divisors(tower.base(), &data.hhat, seed)? {
                    let rem = s_rem(&center_to_skew(tower, &p), &f).map_err(|e| e.to_string())?;
                    ensure!(
                        !rem.is_zero(),
                        "hhat not minimal for {}: proper divisor works",
                        f.render()
                    );
                }
                minimality_checked += 1;
            }
        }
        Ok(format!(
            "{n_random} random inputs: h central with exact cofactor; minimality verified for {minimality_checked} cases with deg hhat <= 3"
        ))
    })
}

/// Soundness of the decision procedure at degree 2: TRUE and trivial-factor
/// verdicts are confirmed by the factorizer and never contradict the
/// exhaustive scan.
fn check_decision_soundness(seed: u64) -> CheckResult {
    timed("decision-soundness", move || {
        let mut trues = 0usize;
        let mut stops = 0usize;
        for tower in [t_f4(), t_f8()] {
            for f in all_monic(&tower, 2) {
                let verdict = decide(&f, seed).map_err(|e| e.to_string())?;
                match verdict.kind {
                    VerdictKind::ReducibleTrue => {
                        ensure!(
                            !irreducible_by_scan(&f),
                            "TRUE for scan-irreducible {}",
                            f.render()
                        );
                        let fact = factorize(&f, seed).map_err(|e| e.to_string())?;
                        ensure!(fact.l() >= 2, "TRUE but l = {} for {}", fact.l(), f.render());
                        if let Some(w) = &verdict.witness {
                            let rem = s_rem(&f, w).map_err(|e| e.to_string())?;
                            ensure!(rem.is_zero(), "witness fails for {}", f.render());
                        }
                        trues += 1;
                    }
                    VerdictKind::TrivialTFactor => {
                        ensure!(f.coeff(0).is_zero(), "trivial verdict with a_0 != 0");
                        let fact = factorize(&f, seed).map_err(|e| e.to_string())?;
                        ensure!(fact.t_valuation >= 1, "trivial verdict without t factor");
                        trues += 1;
                    }
                    VerdictKind::StopUndecided | VerdictKind::RightInvariant => {
                        stops += 1;
                    }
                    VerdictKind::IrreducibleCertified => {
                        return Err("decision procedure cannot certify irreducibility".into());
                    }
                }
            }
        }
        Ok(format!(
            "{trues} confirmed reducibility verdicts, {stops} no-claim outcomes, zero contradictions"
        ))
    })
}

/// Factorizer recombination and per-factor irreducibility.
fn check_factorizer(s: &Sizes, seed: u64) -> CheckResult {
    let n_random = s.random_factor;
    timed("factorizer", move || {
        let towers = [t_f4(), t_f8(), t_f9()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xFAC);
        let mut total_factors = 0usize;
        for i in 0..n_random {
            let tower = &towers[i % towers.len()];
            let deg = 2 + (rng.next_u64() % 3) as usize;
            let f = random_monic(tower, deg, &mut rng, false);
            let fact = factorize(&f, seed).map_err(|e| e.to_string())?;
            ensure!(
                fact.recombine(tower) == f,
                "recombination mismatch for {}",
                f.render()
            );
            for p in &fact.factors {
                let certified = certify_irreducible(p).map_err(|e| e.to_string())?.is_some();
                ensure!(
                    certified || irreducible_by_scan(p),
                    "claimed factor {} of {} is reducible",
                    p.render(),
                    f.render()
                );
                total_factors += 1;
            }
        }
        Ok(format!(
            "{n_random} random inputs recombine exactly; {total_factors} factors individually verified irreducible"
        ))
    })
}

/// The worked example chain over F_4, with hhat recomputed by the
/// enumeration oracle before being asserted.
fn check_worked_chain(seed: u64) -> CheckResult {
    timed("worked-chain", move || {
        let tower = t_f4();
        let g = tower.generator();
        let one = tower.one();

        // f = t^2 + g: hhat = x^2+x+1, h = t^4+t^2+1, irreducible with a
        // field eigenring of size 4.
        let f1 = SkewPoly::from_coeffs(&tower, vec![g.clone(), tower.zero(), one.clone()]);
        let expected_hhat = CenterPoly::from_coeffs(vec![Fq(1), Fq(1), Fq(1)]);
        let oracle = hhat_by_enumeration(&f1);
        ensure!(oracle == expected_hhat, "oracle hhat disagrees with the pinned value");
        let data = mclm(&f1).map_err(|e| e.to_string())?;
        ensure!(data.hhat == oracle, "mclm hhat disagrees with the enumeration oracle");
        ensure!(
            data.h == center_to_skew(&tower, &expected_hhat),
            "h != t^4+t^2+1"
        );
        ensure!(
            certify_irreducible(&f1).map_err(|e| e.to_string())?.is_some(),
            "t^2+g must certify irreducible"
        );
        let report = eigenring(&PetitAlgebra::new(&f1).map_err(|e| e.to_string())?);
        ensure!(report.dim_over_f == 2, "eigenring of t^2+g must have dimension 2");
        eigenring_is_field(&report)?;

        // f = t^2+(g+1)t+g: hhat = (x+1)^2 = x^2+1, factors [t+g, t+1].
        let f2 = SkewPoly::from_coeffs(
            &tower,
            vec![g.clone(), g.add(&one), one.clone()],
        );
        let expected_hhat = CenterPoly::from_coeffs(vec![Fq(1), Fq(0), Fq(1)]);
        let oracle = hhat_by_enumeration(&f2);
        ensure!(oracle == expected_hhat, "oracle hhat of f2 disagrees with (x+1)^2");
        let data = mclm(&f2).map_err(|e| e.to_string())?;
        ensure!(data.hhat == oracle, "mclm hhat of f2 disagrees with the oracle");
        let fact = factorize(&f2, seed).map_err(|e| e.to_string())?;
        let expected = vec![
            SkewPoly::from_coeffs(&tower, vec![g, one.clone()]),
            SkewPoly::from_coeffs(&tower, vec![one.clone(), one]),
        ];
        ensure!(fact.factors == expected, "factorization of f2 is not [t+g, t+1]");
        Ok("both worked examples reproduced from oracle-recomputed values".into())
    })
}

/// For f over F (not right invariant), the nucleus basis times the t-powers
/// stays inside the eigenring span.
fn check_subalgebra_span() -> CheckResult {
    timed("subalgebra-span", || {
        let mut checked = 0usize;
        for tower in [t_f4(), t_f8()] {
            let p = tower.base().q() as u64;
            for deg in 2..=3usize {
                let count = p.pow(deg as u32);
                for mut idx in 0..count {
                    let mut coeffs = Vec::with_capacity(deg + 1);
                    for _ in 0..deg {
                        coeffs.push(tower.from_base(Fq((idx % p) as u32)));
                        idx /= p;
                    }
                    coeffs.push(tower.one());
                    let f = SkewPoly::from_coeffs(&tower, coeffs);
                    if is_right_invariant(&f) {
                        continue;
                    }
                    let alg = PetitAlgebra::new(&f).map_err(|e| e.to_string())?;
                    let subfield = nucleus(&alg).map_err(|e| e.to_string())?.subfield;
                    let report = eigenring(&alg);
                    for u in &subfield.basis {
                        for j in 0..deg {
                            let elem = SkewPoly::monomial(u.clone(), j);
                            ensure!(
                                report.contains(&elem),
                                "{} * t^{} escapes the eigenring of {}",
                                u.render(),
                                j,
                                f.render()
                            );
                        }
                    }
                    checked += 1;
                }
            }
        }
        Ok(format!(
            "{checked} base-coefficient inputs: nucleus basis times t-powers lies in the eigenring"
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_selftest_passes() {
        for r in run(Level::Fast, 0) {
            assert!(r.passed, "{} failed: {}", r.name, r.detail);
        }
    }

    #[test]
    fn oracles_agree_on_known_values() {
        let tower = t_f4();
        let g = tower.generator();
        let f = SkewPoly::from_coeffs(&tower, vec![g, tower.zero(), tower.one()]);
        assert!(irreducible_by_scan(&f));
        assert_eq!(
            hhat_by_enumeration(&f),
            CenterPoly::from_coeffs(vec![Fq(1), Fq(1), Fq(1)])
        );
        let reducible = SkewPoly::from_coeffs(
            &tower,
            vec![tower.one(), tower.zero(), tower.one()],
        );
        assert!(!irreducible_by_scan(&reducible));
    }
}
