use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^32)")]
    InvalidModulus(u64),

    #[error("operands live over different fields (p = {0} and p = {1})")]
    ModulusMismatch(u64, u64),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("series inverse needs a nonzero constant coefficient")]
    ZeroConstantTerm,

    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("shift has length {got}, expected {expected}")]
    ShiftLength { expected: usize, got: usize },

    #[error("matrix is not column reduced")]
    NotColumnReduced,

    #[error("matrix is not reduced for the given shift")]
    NotReduced,

    #[error("matrix is not in Hermite form")]
    NotHermite,

    #[error("matrix is not in column-monic Popov shape: {0}")]
    NotPopov(String),

    #[error("degree precondition violated: {0}")]
    DegreePrecondition(String),

    #[error("matrix is singular")]
    Singular,

    #[error("constant term of the matrix is singular")]
    SingularConstantTerm,

    #[error("identity column {0} of M faces a nonzero column of F")]
    IdentityColumnNotZero(usize),

    #[error("column {0} of the Hermite form has degree zero; remove identity columns first")]
    ZeroDiagonalDegree(usize),

    #[error("supplied minimal degree is inconsistent with the module")]
    MinimalDegreeMismatch,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

impl Error {
    /// True for errors caused by malformed input (shape, syntax), as opposed
    /// to mathematical precondition failures.
    pub fn is_shape_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::DimensionMismatch(_)
                | Error::ShiftLength { .. }
                | Error::ModulusMismatch(..)
                | Error::InvalidModulus(_)
                | Error::InvalidParameter(_)
        )
    }
}
