//! Error types shared across the library.

use thiserror::Error;

/// Errors raised by tower construction and the algebra operations.
///
/// Every fallible operation in this crate reports one of these variants;
/// the CLI maps them onto its exit codes (domain errors exit 3,
/// [`Error::Inconclusive`] exits 4).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The characteristic supplied for a tower is not prime.
    #[error("characteristic {0} is not prime")]
    NonPrimeP(u64),
    /// A supplied modulus is reducible over its coefficient field.
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),
    /// A supplied modulus does not have the required degree.
    #[error("modulus degree {got} does not match required degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    /// The tower size q^n = p^(e*n) exceeds the supported bound 2^20.
    #[error("tower size {0} exceeds the supported bound 2^20")]
    TowerTooLarge(String),
    /// Operands belong to different field towers.
    #[error("operands belong to different field towers")]
    TowerMismatch,
    /// An exponent list that must be nonempty was empty.
    #[error("exponent list must not be empty")]
    EmptyList,
    /// Division by the zero polynomial.
    #[error("division by the zero polynomial")]
    DivisionByZero,
    /// Both arguments of a gcd/gcrd computation were zero.
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    /// A zero operand where a nonzero one is required.
    #[error("zero operand where a nonzero one is required")]
    ZeroInput,
    /// A constant polynomial where degree >= 1 is required.
    #[error("constant polynomial where degree >= 1 is required")]
    ConstantInput,
    /// Input violates a structural precondition (monic, minimum degree, ...).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    /// An algebra element has degree >= m and is outside S_f.
    #[error("operand degree {got} must be below the algebra degree {m}")]
    DegreeTooHigh { m: usize, got: usize },
    /// The operation's statement assumes f is not right invariant.
    #[error("operation is undefined for right-invariant f")]
    RightInvariantInput,
    /// A power index k outside the valid range 1..=max.
    #[error("power {k} is outside the valid range 1..={max}")]
    KOutOfRange { k: usize, max: usize },
    /// An exhaustive scan would exceed the desk-scale bound.
    #[error("search space too large for an exhaustive scan: {0}")]
    TooLarge(String),
    /// The operation requires a nonzero constant term, i.e. (f,t)_r = 1.
    #[error("operation requires a nonzero constant term (t-valuation 0)")]
    TValuationNonzero,
    /// The decision procedure's standing hypothesis fails for this input.
    #[error("hypothesis violated: n = {n} is composite and gcd(m, n) = {g} != 1")]
    HypothesisViolated { n: usize, g: usize },
    /// Every factorization route was exhausted without reaching a verdict.
    #[error("factorization inconclusive within desk-scale bounds")]
    Inconclusive,
    /// A tower spec, element, or polynomial string failed to parse.
    #[error("parse error: {0}")]
    ParseError(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
