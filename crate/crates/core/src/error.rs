use alloc::string::String;

/// Everything that can go wrong inside the core crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("field of order {p}^{k} exceeds the configured bound")]
    DegreeTooLarge { p: u64, k: u32 },
    #[error("no primitive prime divisor of {q}^{m} - 1")]
    NoZsigmondy { q: u64, m: u32 },
    #[error("value too large for desk-scale arithmetic: {0}")]
    TooLarge(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("permutation is odd")]
    NotEven,
    #[error("not a bijection of 0..n")]
    NotPermutation,
    #[error("search exhausted after {0} attempts")]
    SearchExhausted(u64),
    #[error("sequence index {0} is in the tail regime")]
    TailRegime(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension too small: {0}")]
    DimensionTooSmall(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("matrix not in SL")]
    NotSpecial,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("alternating form cannot be diagonalised")]
    Alternating,
    #[error("no split into two nonsingular summands")]
    NoSplit,
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("odd weight vector")]
    OddWeight,
    #[error("lambda is not in L")]
    NotInL,
    #[error("vectors are linearly dependent")]
    DependentPair,
    #[error("characteristic {0} not supported here")]
    BadCharacteristic(u64),
    #[error("cover shapes differ")]
    ShapeMismatch,
    #[error("closure exceeded {0} covers")]
    DepthExplosion(usize),
    #[error("counting hypothesis fails at index {index}")]
    HypothesisViolated { index: usize },
    #[error("group of order {0} too large to enumerate")]
    GroupTooLarge(u128),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
