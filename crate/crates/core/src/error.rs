//! Error type shared by every layer of the engine.

use std::fmt;

/// Errors produced by field construction, polynomial arithmetic, the
/// Gröbner engine and the verification laboratory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Characteristic is not 0 or an odd prime.
    InvalidCharacteristic(u64),
    /// Two operands live over different coefficient fields.
    FieldMismatch,
    /// Two operands live on different variable sets.
    VarSetMismatch,
    /// A variable name is not part of the active variable set.
    UnknownVariable(String),
    /// A variable name occurs twice in one set or assignment.
    DuplicateVariable(String),
    /// A point does not assign a value to some variable.
    MissingAssignment(String),
    /// Text did not conform to the polynomial grammar.
    Parse { line: usize, col: usize, msg: String },
    /// A literal has a denominator divisible by the field characteristic.
    NonRepresentableCoefficient(String),
    /// Division by zero in the coefficient field.
    DivisionByZero,
    /// An operation required a nonzero polynomial.
    ZeroPolynomial,
    /// Exponent arithmetic overflowed the monomial representation.
    ExponentOverflow,
    /// The configured time budget ran out before the computation finished.
    BudgetExceeded,
    /// Krull dimension was requested for the unit ideal.
    UnitIdeal(String),
    /// More variables than the combinatorial dimension search supports.
    TooManyVariables(usize),
    /// A caller-supplied parameter is out of range or inconsistent.
    InvalidParameter(String),
    /// A family check was invoked on an instance violating its hypotheses.
    HypothesisViolation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidCharacteristic(p) => {
                write!(f, "characteristic {p} is not 0 or an odd prime")
            }
            Error::FieldMismatch => write!(f, "operands live over different coefficient fields"),
            Error::VarSetMismatch => write!(f, "operands live on different variable sets"),
            Error::UnknownVariable(name) => write!(f, "unknown variable `{name}`"),
            Error::DuplicateVariable(name) => write!(f, "duplicate variable `{name}`"),
            Error::MissingAssignment(name) => write!(f, "no value assigned to variable `{name}`"),
            Error::Parse { line, col, msg } => write!(f, "parse error at {line}:{col}: {msg}"),
            Error::NonRepresentableCoefficient(lit) => {
                write!(f, "coefficient `{lit}` is not representable in the field")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroPolynomial => write!(f, "operation requires a nonzero polynomial"),
            Error::ExponentOverflow => write!(f, "monomial exponent overflow"),
            Error::BudgetExceeded => write!(f, "time budget exceeded"),
            Error::UnitIdeal(label) => {
                write!(f, "dimension undefined: `{label}` is the unit ideal")
            }
            Error::TooManyVariables(n) => {
                write!(f, "dimension search supports at most 128 variables, got {n}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::HypothesisViolation(msg) => write!(f, "hypothesis violation: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
