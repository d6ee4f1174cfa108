use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("index {index} out of range for {count} items")]
    InvalidIndex { index: usize, count: usize },

    #[error("generator name `{0}` already in use")]
    NameCollision(String),

    #[error("relator {i} cannot be combined with itself")]
    SameRelator { i: usize },

    #[error("malformed PD code: {0}")]
    MalformedPd(String),

    #[error("presentation has {generators} generators and {relators} relators; deficiency must be 1")]
    Deficiency { generators: usize, relators: usize },

    #[error("not a knot group presentation: {0}")]
    NotKnotGroup(String),

    #[error("representation image of `{0}` is not invertible")]
    NotInvertible(String),

    #[error("representation does not satisfy relator {index} ({relator})")]
    RelatorFails { index: usize, relator: String },

    #[error("representation is missing generator `{0}`")]
    MissingImage(String),

    #[error("matrix for `{name}` has wrong shape (expected {dim}x{dim})")]
    BadShape { name: String, dim: usize },

    #[error("bad column {k}: alpha(x_k) = 0")]
    BadColumn { k: usize },

    #[error("no generator with nonzero abelianization image")]
    NoAdmissibleColumn,

    #[error("degenerate presentation: {0}")]
    Degenerate(String),

    #[error("det Phi(x_{k} - 1) vanishes")]
    VanishingDenominator { k: usize },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("invariant is zero")]
    ZeroInvariant,

    #[error("(t^(1/2) - t^(-1/2)) * invariant is not a Laurent polynomial")]
    NonPolynomial,

    #[error("Conway expansion failed: {0}")]
    Asymmetric(String),

    #[error("genus must be at least 1")]
    GenusPrecondition,

    #[error("operation needs an exact coefficient ring")]
    InexactRing,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("polynomial interpolation failed: {0}")]
    Interpolation(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
