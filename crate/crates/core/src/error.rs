use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid bit string {0:?}")]
    InvalidBitString(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("expected {expected} {what} lines, found {found}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid code: {0}")]
    InvariantViolation(String),

    #[error("unknown builtin code {0:?} (known: five_qubit, steane, trivial_1)")]
    UnknownBuiltin(String),

    #[error("{what} needs n <= {cap}, got n = {n}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("secret has {found} bits, code encodes {expected}")]
    SecretLength { expected: usize, found: usize },

    #[error("share index {index} out of range for {n} shares")]
    ShareOutOfRange { index: usize, n: usize },

    #[error("no computational basis seed survives the code projector")]
    EmptyCodespace,

    #[error("intermediate distinguishability: trace distance {distance:e} between secrets {a} and {b}")]
    IntermediateDistinguishability { a: usize, b: usize, distance: f64 },

    #[error("{0} distinguishable classes is not a power of two")]
    NonPowerOfTwoClasses(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("line {line}: {message}")]
    MalformedLine { line: usize, message: String },
}
