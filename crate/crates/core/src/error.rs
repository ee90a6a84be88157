use thiserror::Error;

/// Errors raised by the constructions in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("entry ({i},{j},{k}) = {value} has a denominator not invertible mod {modulus}")]
    NonInvertibleDenominator {
        i: usize,
        j: usize,
        k: usize,
        value: String,
        modulus: u64,
    },

    #[error("{modulus} is not prime")]
    NotPrime { modulus: u64 },

    #[error("assumption violated: polarization has rank {b_rank} < p = {p}")]
    AssumptionViolated { b_rank: usize, p: usize },

    #[error("unsupported root system: {0}")]
    UnsupportedType(String),

    #[error("{type_name}: no unique simple root alpha with psi - alpha a root (candidates {candidates:?}); type A is excluded since its adjoint variety has Picard rank > 1")]
    AlphaNotUnique {
        type_name: String,
        candidates: Vec<usize>,
    },

    #[error("degenerate extraction: {0}")]
    DegeneratePairing(&'static str),

    #[error("singular linear system")]
    Singular,

    #[error("malformed tensor file: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
