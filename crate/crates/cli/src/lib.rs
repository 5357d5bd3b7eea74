//! skewlab: command-line surface over skewlab-core with bit-exact text
//! output, canonical JSON output, a built-in selftest, and fixture
//! generation. Exit codes: 0 success, 2 parse error, 3 domain error,
//! 4 inconclusive.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skewlab_core::petit::{diagnostics, nucleus, t_power_in_nucr, PetitAlgebra};
use skewlab_core::reducibility::{certify_irreducible, decide, factorize};
use skewlab_core::selftest::{run as selftest_run, Level};
use skewlab_core::skew::{mclm, s_gcrd, s_lclm, s_left_divmod, s_mul, s_right_divmod};
use skewlab_core::text::{parse_skew_poly, TowerSpec};
use skewlab_core::{Error, FieldTower, SkewPoly};

#[derive(Parser)]
#[command(
    name = "skewlab",
    version,
    about = "Exact arithmetic in twisted polynomial rings over finite-field towers"
)]
pub struct Cli {
    /// Field tower, e.g. "GF(2)^2/y^2+y+1"
    #[arg(long, global = true)]
    tower: Option<String>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized subroutines (results are canonical regardless)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Right,
    Left,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two skew polynomials
    Mul { a: String, b: String },
    /// Divide a by b with remainder on the chosen side
    Divmod {
        #[arg(long, value_enum, default_value_t = Side::Right)]
        side: Side,
        a: String,
        b: String,
    },
    /// Greatest common right divisor
    Gcrd { a: String, b: String },
    /// Least common left multiple
    Lclm { a: String, b: String },
    /// Minimal central left multiple h = hhat(t^n)
    Mclm { f: String },
    /// Nucleus of the quotient algebra S_f (closed form)
    Nucleus { f: String },
    /// Eigenring report for S_f (dimension, hhat, parameters, basis)
    Eigenring { f: String },
    /// Test whether t^k lies in the right nucleus of S_f
    Tpow {
        #[arg(long)]
        k: usize,
        f: String,
    },
    /// Run the reducibility decision procedure on f
    Decide { f: String },
    /// Try to certify irreducibility of f via its central multiple
    Certify { f: String },
    /// Factor f into monic irreducible skew polynomials
    Factor { f: String },
    /// Run the built-in verification suite
    Selftest {
        #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
        level: LevelArg,
    },
    /// Write worked-example fixtures as JSON
    GenFixtures {
        #[arg(long, default_value = "fixtures")]
        out: PathBuf,
    },
}

/// Machine-readable code for each error variant (written to stderr).
fn error_code(e: &Error) -> &'static str {
    match e {
        Error::NonPrimeP(_) => "non-prime-characteristic",
        Error::ReducibleModulus(_) => "reducible-modulus",
        Error::DegreeMismatch { .. } => "degree-mismatch",
        Error::TowerTooLarge(_) => "tower-too-large",
        Error::TowerMismatch => "tower-mismatch",
        Error::EmptyList => "empty-list",
        Error::DivisionByZero => "division-by-zero",
        Error::BothZero => "both-zero",
        Error::ZeroInput => "zero-input",
        Error::ConstantInput => "constant-input",
        Error::DegenerateInput(_) => "degenerate-input",
        Error::DegreeTooHigh { .. } => "degree-too-high",
        Error::RightInvariantInput => "right-invariant-input",
        Error::KOutOfRange { .. } => "k-out-of-range",
        Error::TooLarge(_) => "too-large",
        Error::TValuationNonzero => "t-valuation-nonzero",
        Error::HypothesisViolated { .. } => "hypothesis-violated",
        Error::Inconclusive => "inconclusive",
        Error::ParseError(_) => "parse-error",
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ParseError(_) => 2,
        Error::Inconclusive => 4,
        _ => 3,
    }
}

struct Ctx {
    format: Format,
    seed: u64,
}

/// Parses argv and runs; returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout();
    run(cli, &mut stdout)
}

/// Runs a parsed invocation, writing results to `out`. Errors go to stderr.
pub fn run<W: Write>(cli: Cli, out: &mut W) -> i32 {
    let ctx = Ctx { format: cli.format, seed: cli.seed };
    let outcome = dispatch(&cli.command, cli.tower.as_deref(), &ctx);
    match outcome {
        Ok(rendered) => {
            writeln!(out, "{rendered}").expect("stdout");
            0
        }
        Err(e) => {
            eprintln!("error: {}: {}", error_code(&e), e);
            exit_code(&e)
        }
    }
}

fn require_tower(spec: Option<&str>) -> Result<FieldTower, Error> {
    let spec = spec.ok_or_else(|| {
        Error::ParseError("this command needs --tower (e.g. --tower \"GF(2)^2\")".into())
    })?;
    TowerSpec::parse(spec)?.build()
}

fn dispatch(cmd: &Command, tower: Option<&str>, ctx: &Ctx) -> Result<String, Error> {
    match cmd {
        Command::Mul { a, b } => {
            let tower = require_tower(tower)?;
            let x = parse_skew_poly(&tower, a)?;
            let y = parse_skew_poly(&tower, b)?;
            let r = s_mul(&x, &y)?;
            Ok(render_single(ctx, &r))
        }
        Command::Divmod { side, a, b } => {
            let tower = require_tower(tower)?;
            let x = parse_skew_poly(&tower, a)?;
            let y = parse_skew_poly(&tower, b)?;
            let ((q, r), side_name) = match side {
                Side::Right => (s_right_divmod(&x, &y)?, "right"),
                Side::Left => (s_left_divmod(&x, &y)?, "left"),
            };
            Ok(match ctx.format {
                Format::Text => format!("q = {}\nr = {}", q.render(), r.render()),
                Format::Json => pretty(&json!({
                    "q": q.render(),
                    "r": r.render(),
                    "side": side_name,
                })),
            })
        }
        Command::Gcrd { a, b } => {
            let tower = require_tower(tower)?;
            let x = parse_skew_poly(&tower, a)?;
            let y = parse_skew_poly(&tower, b)?;
            Ok(render_single(ctx, &s_gcrd(&x, &y)?))
        }
        Command::Lclm { a, b } => {
            let tower = require_tower(tower)?;
            let x = parse_skew_poly(&tower, a)?;
            let y = parse_skew_poly(&tower, b)?;
            Ok(render_single(ctx, &s_lclm(&x, &y)?))
        }
        Command::Mclm { f } => {
            let tower = require_tower(tower)?;
            let f = parse_skew_poly(&tower, f)?;
            let data = mclm(&f)?;
            let hhat = data.hhat.render(tower.base(), "x", "z");
            Ok(match ctx.format {
                Format::Text => format!(
                    "hhat = {hhat}\nh = {}\ncofactor = {}\nt_valuation = {}",
                    data.h.render(),
                    data.cofactor.render(),
                    data.t_valuation
                ),
                Format::Json => pretty(&json!({
                    "hhat": hhat,
                    "h": data.h.render(),
                    "cofactor": data.cofactor.render(),
                    "t_valuation": data.t_valuation,
                })),
            })
        }
        Command::Nucleus { f } => {
            let tower = require_tower(tower)?;
            let f = parse_skew_poly(&tower, f)?;
            let alg = PetitAlgebra::new(&f)?;
            let report = nucleus(&alg)?;
            let basis: Vec<String> =
                report.subfield.basis.iter().map(|b| b.render()).collect();
            Ok(match ctx.format {
                Format::Text => format!(
                    "d = {}\n[L:F] = {}\nbasis = {}",
                    report.d,
                    report.degree_over_f,
                    basis.join(", ")
                ),
                Format::Json => pretty(&json!({
                    "d": report.d,
                    "degree_over_f": report.degree_over_f,
                    "basis": basis,
                })),
            })
        }
        Command::Eigenring { f } => {
            let tower = require_tower(tower)?;
            let f = parse_skew_poly(&tower, f)?;
            let alg = PetitAlgebra::new(&f)?;
            let mut report = diagnostics(&alg)?;
            // The parameter l comes from the factorizer; k follows from it.
            if report.hhat_irreducible && report.l.is_none() {
                if let Ok(fact) = factorize(&f, ctx.seed) {
                    report.fill_l(fact.l());
                }
            }
            let hhat = report.hhat.render(tower.base(), "x", "z");
            let basis: Vec<String> = report.basis.iter().map(|b| b.render()).collect();
            Ok(match ctx.format {
                Format::Text => format!(
                    "dim = {}\nhhat = {}\nhhat_irreducible = {}\ns = {}\nk = {}\nl = {}\nbasis = {}\nis_division = {}",
                    report.dim_over_f,
                    hhat,
                    report.hhat_irreducible,
                    opt_text(report.s),
                    opt_text(report.k),
                    opt_text(report.l),
                    basis.join(", "),
                    report.is_division.map_or("-".to_string(), |b| b.to_string()),
                ),
                Format::Json => pretty(&json!({
                    "dim": report.dim_over_f,
                    "hhat": hhat,
                    "hhat_irreducible": report.hhat_irreducible,
                    "s": report.s,
                    "k": report.k,
                    "l": report.l,
                    "basis": basis,
                    "is_division": report.is_division,
                })),
            })
        }
        Command::Tpow { k, f } => {
            let tower = require_tower(tower)?;
            let f = parse_skew_poly(&tower, f)?;
            let alg = PetitAlgebra::new(&f)?;
            let member = t_power_in_nucr(&alg, *k)?;
            Ok(match ctx.format {
                Format::Text => format!("member = {member}"),
                Format::Json => pretty(&json!({ "k": k, "member": member })),
            })
        }
        Command::Decide { f } => {
            let tower = require_tower(tower)?;
            let f = parse_skew_poly(&tower, f)?;
            let verdict = decide(&f, ctx.seed)?;
            Ok(match ctx.format {
                Format::Text => {
                    let mut line = verdict.kind.as_str().to_string();
                    if let Some(step) = verdict.reason.step() {
                        line.push_str(&format!(" step={step}"));
                    }
                    if let Some(w) = &verdict.witness {
                        line.push_str(&format!(" witness={}", w.render()));
                    }
                    line
                }
                Format::Json => pretty(&json!({
                    "kind": verdict.kind.as_str(),
                    "reason": verdict.reason.as_str(),
                    "step": verdict.reason.step(),
                    "witness": verdict.witness.as_ref().map(|w| w.render()),
                })),
            })
        }
        Command::Certify { f } => {
            let tower = require_tower(tower)?;
            let f = parse_skew_poly(&tower, f)?;
            let cert = certify_irreducible(&f)?;
            Ok(match ctx.format {
                Format::Text => match &cert {
                    Some(c) => format!(
                        "certified = true\nhhat = {}\nh = {}",
                        c.hhat.render(tower.base(), "x", "z"),
                        c.h.render()
                    ),
                    None => "certified = false".to_string(),
                },
                Format::Json => pretty(&json!({
                    "certified": cert.is_some(),
                    "hhat": cert.as_ref().map(|c| c.hhat.render(tower.base(), "x", "z")),
                    "h": cert.as_ref().map(|c| c.h.render()),
                })),
            })
        }
        Command::Factor { f } => {
            let tower = require_tower(tower)?;
            let f = parse_skew_poly(&tower, f)?;
            let fact = factorize(&f, ctx.seed)?;
            let factors: Vec<String> = fact.factors.iter().map(|p| p.render()).collect();
            Ok(match ctx.format {
                Format::Text => format!(
                    "factors = [{}]\nt_valuation = {}\nl = {}",
                    factors.join(", "),
                    fact.t_valuation,
                    fact.l()
                ),
                Format::Json => pretty(&json!({
                    "factors": factors,
                    "t_valuation": fact.t_valuation,
                    "l": fact.l(),
                    "unit": fact.unit.render(),
                })),
            })
        }
        Command::Selftest { level } => {
            let level = match level {
                LevelArg::Fast => Level::Fast,
                LevelArg::Full => Level::Full,
            };
            let results = selftest_run(level, ctx.seed);
            let all_passed = results.iter().all(|r| r.passed);
            let rendered = match ctx.format {
                Format::Text => {
                    let mut lines: Vec<String> = results
                        .iter()
                        .map(|r| {
                            format!(
                                "{} {}: {} ({} ms)",
                                if r.passed { "PASS" } else { "FAIL" },
                                r.name,
                                r.detail,
                                r.millis
                            )
                        })
                        .collect();
                    lines.push(format!(
                        "{}/{} checks passed",
                        results.iter().filter(|r| r.passed).count(),
                        results.len()
                    ));
                    lines.join("\n")
                }
                Format::Json => pretty(&json!({
                    "checks": results
                        .iter()
                        .map(|r| {
                            json!({
                                "name": r.name,
                                "passed": r.passed,
                                "detail": r.detail,
                                "millis": r.millis as u64,
                            })
                        })
                        .collect::<Vec<_>>(),
                    "passed": all_passed,
                })),
            };
            if all_passed {
                Ok(rendered)
            } else {
                // Print the report, then fail with a domain exit code.
                println!("{rendered}");
                Err(Error::DegenerateInput("selftest reported failures".into()))
            }
        }
        Command::GenFixtures { out } => gen_fixtures(out, ctx),
    }
}

fn render_single(ctx: &Ctx, p: &SkewPoly) -> String {
    match ctx.format {
        Format::Text => p.render(),
        Format::Json => pretty(&json!({ "result": p.render() })),
    }
}

fn opt_text(v: Option<usize>) -> String {
    v.map_or("-".to_string(), |x| x.to_string())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON rendering")
}

/// The fixture catalog: worked examples whose derived values are recomputed
/// and written out for downstream comparison.
fn gen_fixtures(dir: &PathBuf, ctx: &Ctx) -> Result<String, Error> {
    let catalog = [
        ("GF(2)^2/y^2+y+1", "t^2+g"),
        ("GF(2)^2/y^2+y+1", "t^2+(g+1)*t+g"),
        ("GF(2)^2/y^2+y+1", "t^4+1"),
        ("GF(2)^3/y^3+y+1", "t^2+1"),
        ("GF(3)^2/y^2+1", "t^2+1"),
    ];
    let mut entries = Vec::new();
    for (spec, f_str) in catalog {
        let tower = TowerSpec::parse(spec)?.build()?;
        let f = parse_skew_poly(&tower, f_str)?;
        let data = mclm(&f)?;
        let fact = factorize(&f, ctx.seed)?;
        let alg = PetitAlgebra::new(&f)?;
        let report = diagnostics(&alg)?;
        entries.push(json!({
            "tower": spec,
            "f": f.render(),
            "hhat": data.hhat.render(tower.base(), "x", "z"),
            "h": data.h.render(),
            "factors": fact.factors.iter().map(|p| p.render()).collect::<Vec<_>>(),
            "l": fact.l(),
            "eigenring_dim": report.dim_over_f,
            "is_division": report.is_division,
        }));
    }
    std::fs::create_dir_all(dir)
        .map_err(|e| Error::DegenerateInput(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join("worked_examples.json");
    let body = pretty(&json!({ "fixtures": entries }));
    std::fs::write(&path, body.as_bytes())
        .map_err(|e| Error::DegenerateInput(format!("cannot write {}: {e}", path.display())))?;
    match ctx.format {
        Format::Text => Ok(format!("wrote {}", path.display())),
        Format::Json => Ok(pretty(&json!({ "written": [path.display().to_string()] }))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_partition_the_error_space() {
        assert_eq!(exit_code(&Error::ParseError("x".into())), 2);
        assert_eq!(exit_code(&Error::Inconclusive), 4);
        assert_eq!(exit_code(&Error::RightInvariantInput), 3);
        assert_eq!(exit_code(&Error::TowerMismatch), 3);
        assert_eq!(exit_code(&Error::HypothesisViolated { n: 4, g: 2 }), 3);
        assert_eq!(exit_code(&Error::TooLarge("scan".into())), 3);
    }

    #[test]
    fn machine_codes_are_stable() {
        assert_eq!(error_code(&Error::ParseError("x".into())), "parse-error");
        assert_eq!(error_code(&Error::Inconclusive), "inconclusive");
        assert_eq!(error_code(&Error::TValuationNonzero), "t-valuation-nonzero");
        assert_eq!(
            error_code(&Error::KOutOfRange { k: 9, max: 1 }),
            "k-out-of-range"
        );
    }

    #[test]
    fn missing_tower_is_a_parse_error() {
        let err = require_tower(None).unwrap_err();
        assert_eq!(exit_code(&err), 2);
    }
}
