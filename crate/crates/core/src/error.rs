use thiserror::Error;

/// Errors raised by the set-system, construction, algebra and search layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground size {0} exceeds the 64-element mask capacity")]
    GroundTooLarge(usize),

    #[error("element {element} is outside the ground set [{n}]")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("subset mask {mask:#x} does not fit in a ground set of size {n}")]
    MaskOutOfRange { mask: u64, n: usize },

    #[error("blocks {first} and {second} of a d-partition intersect")]
    BlocksOverlap { first: usize, second: usize },

    #[error("member {index} has {found} blocks, expected {expected}")]
    BlockCountMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} would hold {size} entries, above the cap of {cap}")]
    TooLarge { what: &'static str, size: u128, cap: u128 },

    #[error("input is not a permutation of the power set of [{0}]")]
    NotAPermutation(usize),

    #[error("input system is not a skew Bollobás system")]
    NotSkewBollobas,

    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("sequence lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),

    #[error("pair {index} has dim(U ∩ V) = {dim}, above t = {t}")]
    DiagonalTooLarge { index: usize, dim: usize, t: usize },

    #[error("no subspace in general position after {tries} tries; violated constraints {violated:?}")]
    GeneralPositionExhausted { tries: usize, violated: Vec<usize> },

    #[error("independent computations disagree: {0}")]
    OracleMismatch(String),

    #[error("search cap exceeded: {0}")]
    CapExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
