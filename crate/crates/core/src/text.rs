//! Text front end: tower specs and expression parsers for field elements,
//! skew polynomials, and commutative polynomials over the base field.
//!
//! Grammar (documented in FORMATS.md): expressions are sums of terms, terms
//! are `*`-separated factors, factors are an integer, a single-letter
//! symbol, or a parenthesized expression, optionally raised to an integer
//! power with `^`. Multiplication is never implicit. The skew variable is
//! `t`, commutative variables are `x` (center) and `y` (extension modulus),
//! `z` names the base-field generator when e > 1, and the extension
//! generator letter comes from the tower (default `g`).

use crate::centerpoly::CenterPoly;
use crate::error::{Error, Result};
use crate::fq::{fp_render, Fq, FqCtx};
use crate::skew::{s_mul, SkewPoly};
use crate::tower::{FieldTower, KElem};

/// Largest exponent the parsers accept; keeps pathological inputs from
/// allocating unbounded polynomials.
const MAX_EXPONENT: u32 = 4096;

// ---------------------------------------------------------------------------
// Lexer and expression AST
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Sym(char),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '(' => {
                chars.next();
                toks.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                toks.push(Tok::RParen);
            }
            '0'..='9' => {
                let mut v: u64 = 0;
                while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d as u64))
                        .ok_or_else(|| Error::ParseError("integer literal overflows".into()))?;
                    chars.next();
                }
                toks.push(Tok::Int(v));
            }
            c if c.is_ascii_alphabetic() => {
                chars.next();
                toks.push(Tok::Sym(c));
            }
            other => {
                return Err(Error::ParseError(format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(toks)
}

/// Untyped arithmetic expression; evaluated per target ring.
#[derive(Debug, Clone)]
enum Expr {
    Int(u64),
    Sym(char),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                Tok::Plus => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.peek() == Some(Tok::Star) {
            self.pos += 1;
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek() == Some(Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let mut base = match self.next() {
            Some(Tok::Int(v)) => Expr::Int(v),
            Some(Tok::Sym(c)) => Expr::Sym(c),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.next() != Some(Tok::RParen) {
                    return Err(Error::ParseError("missing closing parenthesis".into()));
                }
                inner
            }
            other => {
                return Err(Error::ParseError(format!(
                    "expected a term, found {other:?}"
                )))
            }
        };
        if self.peek() == Some(Tok::Caret) {
            self.pos += 1;
            let Some(Tok::Int(k)) = self.next() else {
                return Err(Error::ParseError("exponent must be an integer literal".into()));
            };
            if k > MAX_EXPONENT as u64 {
                return Err(Error::ParseError(format!(
                    "exponent {k} exceeds the supported bound {MAX_EXPONENT}"
                )));
            }
            base = Expr::Pow(Box::new(base), k as u32);
        }
        Ok(base)
    }
}

fn parse_expr(s: &str) -> Result<Expr> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::ParseError("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::ParseError(format!(
            "trailing input after position {}",
            p.pos
        )));
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// Evaluators
// ---------------------------------------------------------------------------

fn eval_k(tower: &FieldTower, e: &Expr) -> Result<KElem> {
    match e {
        Expr::Int(v) => Ok(tower.from_base(int_in_fq(tower.base(), *v))),
        Expr::Sym(c) if *c == tower.gen_letter() => Ok(tower.generator()),
        Expr::Sym('z') if tower.e() > 1 => Ok(tower.from_base(Fq(tower.p() as u32))),
        Expr::Sym(c) => Err(Error::ParseError(format!(
            "symbol '{c}' is not an element of this field"
        ))),
        Expr::Neg(a) => Ok(eval_k(tower, a)?.neg()),
        Expr::Add(a, b) => Ok(eval_k(tower, a)?.add(&eval_k(tower, b)?)),
        Expr::Sub(a, b) => Ok(eval_k(tower, a)?.sub(&eval_k(tower, b)?)),
        Expr::Mul(a, b) => Ok(eval_k(tower, a)?.mul(&eval_k(tower, b)?)),
        Expr::Pow(a, k) => Ok(eval_k(tower, a)?.pow(*k as u64)),
    }
}

fn eval_skew(tower: &FieldTower, e: &Expr) -> Result<SkewPoly> {
    match e {
        Expr::Sym('t') => Ok(SkewPoly::t(tower)),
        Expr::Int(_) | Expr::Sym(_) => Ok(SkewPoly::constant(eval_k(tower, e)?)),
        Expr::Neg(a) => Ok(eval_skew(tower, a)?.neg()),
        Expr::Add(a, b) => Ok(eval_skew(tower, a)?.add(&eval_skew(tower, b)?)),
        Expr::Sub(a, b) => Ok(eval_skew(tower, a)?.sub(&eval_skew(tower, b)?)),
        Expr::Mul(a, b) => s_mul(&eval_skew(tower, a)?, &eval_skew(tower, b)?),
        Expr::Pow(a, k) => {
            let base = eval_skew(tower, a)?;
            if let Some(d) = base.degree() {
                if d as u64 * *k as u64 > MAX_EXPONENT as u64 {
                    return Err(Error::ParseError("power result degree too large".into()));
                }
            }
            let mut acc = SkewPoly::one(tower);
            for _ in 0..*k {
                acc = s_mul(&acc, &base)?;
            }
            Ok(acc)
        }
    }
}

fn eval_center(ctx: &FqCtx, var: char, e: &Expr) -> Result<CenterPoly> {
    match e {
        Expr::Int(v) => Ok(CenterPoly::constant(int_in_fq(ctx, *v))),
        Expr::Sym(c) if *c == var => Ok(CenterPoly::monomial(Fq(1), 1)),
        Expr::Sym('z') if ctx.e() > 1 => Ok(CenterPoly::constant(Fq(ctx.p() as u32))),
        Expr::Sym(c) => Err(Error::ParseError(format!(
            "symbol '{c}' is not valid in a polynomial in '{var}'"
        ))),
        Expr::Neg(a) => Ok(eval_center(ctx, var, a)?.neg(ctx)),
        Expr::Add(a, b) => Ok(eval_center(ctx, var, a)?.add(ctx, &eval_center(ctx, var, b)?)),
        Expr::Sub(a, b) => Ok(eval_center(ctx, var, a)?.sub(ctx, &eval_center(ctx, var, b)?)),
        Expr::Mul(a, b) => Ok(eval_center(ctx, var, a)?.mul(ctx, &eval_center(ctx, var, b)?)),
        Expr::Pow(a, k) => {
            let base = eval_center(ctx, var, a)?;
            if let Some(d) = base.degree() {
                if d as u64 * *k as u64 > MAX_EXPONENT as u64 {
                    return Err(Error::ParseError("power result degree too large".into()));
                }
            }
            let mut acc = CenterPoly::one();
            for _ in 0..*k {
                acc = acc.mul(ctx, &base);
            }
            Ok(acc)
        }
    }
}

fn int_in_fq(ctx: &FqCtx, v: u64) -> Fq {
    Fq((v % ctx.p()) as u32)
}

/// Parses an element of K written in the tower's generator letter.
pub fn parse_k_elem(tower: &FieldTower, s: &str) -> Result<KElem> {
    eval_k(tower, &parse_expr(s)?)
}

/// Parses a skew polynomial in `t`; products are evaluated in the twisted
/// ring, so non-normal-form inputs like `t*g` are accepted and normalized.
pub fn parse_skew_poly(tower: &FieldTower, s: &str) -> Result<SkewPoly> {
    eval_skew(tower, &parse_expr(s)?)
}

/// Parses a commutative polynomial over F in the given variable letter.
pub fn parse_center_poly(ctx: &FqCtx, var: char, s: &str) -> Result<CenterPoly> {
    eval_center(ctx, var, &parse_expr(s)?)
}

// ---------------------------------------------------------------------------
// Tower specs
// ---------------------------------------------------------------------------

/// A parsed tower description `GF(p[^e])^n[/segment...]` where segments are
/// a bare extension modulus in `y` (or `mod=...`), `base=...` in `z`, and
/// `gen=<letter>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerSpec {
    pub p: u64,
    pub e: usize,
    pub n: usize,
    /// Base modulus over F_p, lowest coefficient first, when given.
    pub base_modulus: Option<Vec<u32>>,
    /// Extension modulus over F_q in `y`, when given.
    pub ext_modulus: Option<CenterPoly>,
    pub gen: char,
}

impl TowerSpec {
    pub fn parse(s: &str) -> Result<TowerSpec> {
        let s = s.trim();
        let rest = s
            .strip_prefix("GF(")
            .ok_or_else(|| Error::ParseError("tower spec must start with GF(".into()))?;
        let close = rest
            .find(')')
            .ok_or_else(|| Error::ParseError("tower spec is missing ')'".into()))?;
        let size = &rest[..close];
        let (p, e) = match size.split_once('^') {
            Some((p, e)) => (parse_int(p)?, parse_int(e)? as usize),
            None => (parse_int(size)?, 1),
        };
        let rest = &rest[close + 1..];
        let rest = rest
            .strip_prefix('^')
            .ok_or_else(|| Error::ParseError("tower spec needs ^n after GF(...)".into()))?;
        let (n_str, segments) = match rest.find('/') {
            Some(i) => (&rest[..i], &rest[i + 1..]),
            None => (rest, ""),
        };
        let n = parse_int(n_str)? as usize;

        let mut base_str: Option<&str> = None;
        let mut ext_str: Option<&str> = None;
        let mut gen = 'g';
        if !segments.is_empty() {
            for seg in segments.split('/') {
                if let Some(v) = seg.strip_prefix("base=") {
                    if base_str.replace(v).is_some() {
                        return Err(Error::ParseError("duplicate base modulus".into()));
                    }
                } else if let Some(v) = seg.strip_prefix("gen=") {
                    let mut it = v.chars();
                    match (it.next(), it.next()) {
                        (Some(c), None) if c.is_ascii_alphabetic() => gen = c,
                        _ => {
                            return Err(Error::ParseError(
                                "gen= takes a single letter".into(),
                            ))
                        }
                    }
                } else {
                    let v = seg.strip_prefix("mod=").unwrap_or(seg);
                    if ext_str.replace(v).is_some() {
                        return Err(Error::ParseError("duplicate extension modulus".into()));
                    }
                }
            }
        }
        if ['t', 'x', 'y', 'z'].contains(&gen) {
            return Err(Error::ParseError(
                "generator letter collides with a reserved variable".into(),
            ));
        }

        let base_modulus = match base_str {
            None => None,
            Some(bs) => {
                let fp = FqCtx::new(p, 1, None)?;
                let poly = parse_center_poly(&fp, 'z', bs)?;
                Some(poly.coeffs().iter().map(|c| c.0).collect())
            }
        };
        let ext_modulus = match ext_str {
            None => None,
            Some(es) => {
                let ctx = FqCtx::new(p, e, base_modulus.as_deref())?;
                Some(parse_center_poly(&ctx, 'y', es)?)
            }
        };
        Ok(TowerSpec { p, e, n, base_modulus, ext_modulus, gen })
    }

    /// Builds the field tower this spec describes.
    pub fn build(&self) -> Result<FieldTower> {
        FieldTower::with_gen(
            self.p,
            self.e,
            self.n,
            self.base_modulus.as_deref(),
            self.ext_modulus.as_ref(),
            self.gen,
        )
    }

    /// The fully explicit spec of an existing tower (moduli spelled out).
    pub fn for_tower(tower: &FieldTower) -> TowerSpec {
        TowerSpec {
            p: tower.p(),
            e: tower.e(),
            n: tower.n(),
            base_modulus: Some(tower.base().base_modulus().to_vec()),
            ext_modulus: Some(tower.ext_modulus().clone()),
            gen: tower.gen_letter(),
        }
    }

    /// Canonical printed form; bare extension modulus, labeled base/gen.
    pub fn print(&self) -> Result<String> {
        let mut out = if self.e == 1 {
            format!("GF({})^{}", self.p, self.n)
        } else {
            format!("GF({}^{})^{}", self.p, self.e, self.n)
        };
        if let Some(ext) = &self.ext_modulus {
            let ctx = FqCtx::new(self.p, self.e, self.base_modulus.as_deref())?;
            out.push('/');
            out.push_str(&ext.render(&ctx, "y", "z"));
        }
        if let Some(base) = &self.base_modulus {
            out.push_str("/base=");
            out.push_str(&fp_render(base, "z"));
        }
        if self.gen != 'g' {
            out.push_str("/gen=");
            out.push(self.gen);
        }
        Ok(out)
    }
}

fn parse_int(s: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| Error::ParseError(format!("expected an integer, found '{s}'")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::build_tower;

    fn f4() -> FieldTower {
        build_tower(2, 1, 2, None, None).unwrap()
    }

    #[test]
    fn parses_the_documented_tower_specs() {
        let spec = TowerSpec::parse("GF(2)^2/y^2+y+1").unwrap();
        assert_eq!((spec.p, spec.e, spec.n, spec.gen), (2, 1, 2, 'g'));
        assert_eq!(spec.build().unwrap(), f4());
        let spec = TowerSpec::parse("GF(2)^3/y^3+y+1").unwrap();
        assert_eq!(spec.build().unwrap(), build_tower(2, 1, 3, None, None).unwrap());
        // Bare form and mod= form agree.
        assert_eq!(
            TowerSpec::parse("GF(2)^2/y^2+y+1").unwrap(),
            TowerSpec::parse("GF(2)^2/mod=y^2+y+1").unwrap()
        );
        // Defaults: no segments at all.
        assert_eq!(TowerSpec::parse("GF(3)^2").unwrap().build().unwrap().field_size(), 9);
    }

    #[test]
    fn tower_spec_round_trips_through_print_and_parse() {
        for s in [
            "GF(2)^2",
            "GF(2)^2/y^2+y+1",
            "GF(3)^2/y^2+1",
            "GF(2^2)^2",
            "GF(2)^4/gen=a",
            "GF(2^2)^2/base=z^2+z+1",
        ] {
            let spec = TowerSpec::parse(s).unwrap();
            let printed = spec.print().unwrap();
            let reparsed = TowerSpec::parse(&printed).unwrap();
            assert_eq!(spec, reparsed, "round trip failed for {s} -> {printed}");
            // Explicit specs for built towers round-trip too.
            let full = TowerSpec::for_tower(&spec.build().unwrap());
            let printed = full.print().unwrap();
            assert_eq!(TowerSpec::parse(&printed).unwrap(), full);
        }
    }

    #[test]
    fn explicit_spec_of_a_nested_tower_mentions_both_moduli() {
        let tower = build_tower(2, 2, 2, None, None).unwrap();
        let printed = TowerSpec::for_tower(&tower).print().unwrap();
        assert_eq!(printed, "GF(2^2)^2/y^2+y+z/base=z^2+z+1");
        assert_eq!(TowerSpec::parse(&printed).unwrap().build().unwrap(), tower);
    }

    #[test]
    fn rejects_malformed_specs() {
        for s in ["F(2)^2", "GF(2", "GF(2)2", "GF(2)^2/gen=xy", "GF(2)^2/gen=t"] {
            assert!(TowerSpec::parse(s).is_err(), "{s} should fail");
        }
        // Non-prime characteristic surfaces at build time.
        assert!(TowerSpec::parse("GF(4)^2").unwrap().build().is_err());
    }

    #[test]
    fn parses_skew_polynomials_in_normal_form() {
        let tower = f4();
        let g = tower.generator();
        let f = parse_skew_poly(&tower, "t^2+(g+1)*t+g").unwrap();
        let expected = SkewPoly::from_coeffs(
            &tower,
            vec![g.clone(), g.add(&tower.one()), tower.one()],
        );
        assert_eq!(f, expected);
        assert_eq!(f.render(), "t^2+(g+1)*t+g");
    }

    #[test]
    fn skew_parser_respects_the_twist() {
        let tower = f4();
        // t*g = sigma(g)*t = (g+1)*t.
        assert_eq!(
            parse_skew_poly(&tower, "t*g").unwrap(),
            parse_skew_poly(&tower, "(g+1)*t").unwrap()
        );
        assert_ne!(
            parse_skew_poly(&tower, "t*g").unwrap(),
            parse_skew_poly(&tower, "g*t").unwrap()
        );
    }

    #[test]
    fn skew_render_parse_round_trip_is_exhaustive_for_degree_2() {
        let tower = f4();
        for a0 in 0..4u64 {
            for a1 in 0..4u64 {
                for a2 in 1..4u64 {
                    let f = SkewPoly::from_coeffs(
                        &tower,
                        vec![
                            tower.element_from_index(a0),
                            tower.element_from_index(a1),
                            tower.element_from_index(a2),
                        ],
                    );
                    let back = parse_skew_poly(&tower, &f.render()).unwrap();
                    assert_eq!(back, f, "round trip failed for {}", f.render());
                }
            }
        }
    }

    #[test]
    fn parses_center_polynomials() {
        let ctx = FqCtx::new(2, 1, None).unwrap();
        let p = parse_center_poly(&ctx, 'x', "x^2+x+1").unwrap();
        assert_eq!(p.coeffs(), &[Fq(1), Fq(1), Fq(1)]);
        assert_eq!(p.render(&ctx, "x", "z"), "x^2+x+1");
        // Coefficients in a nontrivial base field use z.
        let ctx4 = FqCtx::new(2, 2, None).unwrap();
        let p = parse_center_poly(&ctx4, 'y', "y^2+y+z").unwrap();
        assert_eq!(p.coeffs(), &[Fq(2), Fq(1), Fq(1)]);
        assert_eq!(p.render(&ctx4, "y", "z"), "y^2+y+z");
    }

    #[test]
    fn parses_k_elements_and_respects_characteristic() {
        let tower = f4();
        assert_eq!(parse_k_elem(&tower, "g+1").unwrap(), tower.element_from_index(3));
        assert_eq!(parse_k_elem(&tower, "2").unwrap(), tower.zero());
        assert_eq!(parse_k_elem(&tower, "g^2").unwrap(), tower.generator().mul(&tower.generator()));
        let f9 = build_tower(3, 1, 2, None, None).unwrap();
        assert_eq!(parse_k_elem(&f9, "-1").unwrap(), tower_neg_one(&f9));
        assert_eq!(parse_k_elem(&f9, "2*g+2").unwrap(), parse_k_elem(&f9, "-g-1").unwrap());
    }

    fn tower_neg_one(t: &FieldTower) -> KElem {
        t.one().neg()
    }

    #[test]
    fn rejects_malformed_expressions() {
        let tower = f4();
        for s in ["", "t^2++1", "q+1", "t^", "(t+1", "t 2", "5000000000000000000000"] {
            assert!(parse_skew_poly(&tower, s).is_err(), "{s:?} should fail");
        }
        // z is reserved for nontrivial base fields only.
        assert!(parse_k_elem(&tower, "z").is_err());
        // Huge exponents are rejected, not allocated.
        assert!(parse_skew_poly(&tower, "t^5000").is_err());
    }
}
