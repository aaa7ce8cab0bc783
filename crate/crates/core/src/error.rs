use std::fmt;

/// Error type shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The characteristic passed to a field constructor is not prime.
    NonPrime(u64),
    /// The modulus polynomial is not irreducible over Z_p.
    ReducibleModulus {
        p: u64,
        modulus: Vec<u64>,
    },
    /// No built-in modulus is known for this (p, e) pair.
    NoDefaultModulus {
        p: u64,
        e: usize,
    },
    /// The modulus is not monic of degree e, or has out-of-range coefficients.
    BadModulus(String),
    /// q = p^e exceeds what the table-backed representation supports.
    FieldTooLarge {
        q: u64,
        max: u64,
    },
    /// Element coefficients do not match the field (wrong length).
    BadElement(String),
    DivisionByZero,
    /// A point or coefficient vector has the wrong number of entries.
    ArityMismatch {
        expected: usize,
        got: usize,
    },
    /// Two operands belong to different rings (field or variable count differ).
    RingMismatch,
    /// The two points defining a line coincide (or a point vector is zero).
    DegeneratePoints,
    /// All-zero coordinate vector cannot define a projective point.
    ZeroVector,
    /// A divisor that must be a nonzero linear form is not.
    NotLinear,
    /// k outside 1..=n.
    BadK {
        k: usize,
        n: usize,
    },
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
    /// A coordinate-change matrix must be invertible.
    SingularMatrix,
    /// Operation requires a homogeneous polynomial.
    NotHomogeneous,
    /// The generator set's zero locus differs from the given point set.
    LocusMismatch,
    /// Degree outside the range the construction is defined for.
    BadDegreeRange(String),
    AlphasNotDistinct,
    BadMultiplicities(String),
    /// The associated binary quadratic has a root over F_q.
    ReducibleQuadratic,
    /// The curve has an F_q-line component, so the certificate does not apply.
    HasLineComponent,
    /// An exhaustive scan would exceed the configured candidate budget.
    BudgetExceeded {
        required: u128,
        budget: u128,
    },
    BadPartition {
        part: u64,
        num_parts: u64,
    },
    /// No field embedding exists (different characteristic or non-dividing degree).
    NoEmbedding(String),
    /// Text-form parse failure.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPrime(p) => write!(f, "{p} is not prime"),
            Error::ReducibleModulus { p, modulus } => {
                write!(f, "modulus {modulus:?} is reducible over Z_{p}")
            }
            Error::NoDefaultModulus { p, e } => {
                write!(f, "no built-in modulus for F_{p}^{e}; pass one explicitly")
            }
            Error::BadModulus(msg) => write!(f, "bad modulus: {msg}"),
            Error::FieldTooLarge { q, max } => {
                write!(f, "field with q = {q} exceeds the supported maximum {max}")
            }
            Error::BadElement(msg) => write!(f, "bad field element: {msg}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ArityMismatch { expected, got } => {
                write!(f, "arity mismatch: expected {expected} entries, got {got}")
            }
            Error::RingMismatch => write!(f, "operands belong to different rings"),
            Error::DegeneratePoints => write!(f, "points do not span a line"),
            Error::ZeroVector => write!(f, "zero vector has no projective class"),
            Error::NotLinear => write!(f, "polynomial is not a nonzero linear form"),
            Error::BadK { k, n } => write!(f, "k = {k} outside 1..={n}"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::SingularMatrix => write!(f, "matrix is not invertible"),
            Error::NotHomogeneous => write!(f, "polynomial is not homogeneous"),
            Error::LocusMismatch => write!(f, "zero locus does not match the given point set"),
            Error::BadDegreeRange(msg) => write!(f, "degree out of range: {msg}"),
            Error::AlphasNotDistinct => write!(f, "alpha values must be pairwise distinct"),
            Error::BadMultiplicities(msg) => write!(f, "bad multiplicities: {msg}"),
            Error::ReducibleQuadratic => {
                write!(f, "the associated binary quadratic is reducible over F_q")
            }
            Error::HasLineComponent => write!(f, "curve has an F_q-line component"),
            Error::BudgetExceeded { required, budget } => {
                write!(f, "scan of {required} candidates exceeds budget {budget}")
            }
            Error::BadPartition { part, num_parts } => {
                write!(f, "partition index {part} outside 0..{num_parts}")
            }
            Error::NoEmbedding(msg) => write!(f, "no field embedding: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
