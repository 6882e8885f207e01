use num_bigint::BigInt;

/// Crate-wide error type.
#[derive(Debug)]
pub enum Error {
    /// Matrix or state dimensions do not fit the requested operation.
    ShapeMismatch(String),
    /// A documented precondition was violated by the caller.
    Contract(String),
    /// Text input could not be parsed.
    Parse { line: usize, msg: String },
    /// The cone has a nontrivial lineality space and therefore no extreme rays.
    NonPointed { lineality: Vec<Vec<BigInt>> },
    /// Unrecognised named state or named inequality family.
    UnknownName(String),
    /// The operation is only defined for a different parameter range.
    Unsupported(String),
    /// An enumeration would exceed the configured budget.
    BudgetExceeded { required: u128, limit: u128 },
    /// The requested rank triple fails the realizability conditions.
    UnrealizableTriple(usize, usize, usize),
    /// An internal self-check failed; indicates a bug, not bad input.
    Internal(String),
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
            Error::Contract(msg) => write!(f, "contract violation: {msg}"),
            Error::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
            Error::NonPointed { lineality } => write!(
                f,
                "cone is not pointed: lineality space has dimension {}",
                lineality.len()
            ),
            Error::UnknownName(name) => write!(f, "unknown name: {name}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::BudgetExceeded { required, limit } => {
                write!(f, "budget exceeded: {required} instances, limit {limit}")
            }
            Error::UnrealizableTriple(a, b, c) => write!(
                f,
                "rank triple ({a}, {b}, {c}) is not realizable: needs a <= b*c, b <= a*c, c <= a*b"
            ),
            Error::Internal(msg) => write!(f, "internal invariant breach: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
