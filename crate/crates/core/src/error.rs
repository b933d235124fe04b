use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input {0} out of range: must be nonzero and below 2^96")]
    OutOfRange(u128),
    #[error("exponent {0} out of range")]
    ExponentRange(u32),
    #[error("factorization budget exceeded on {0}: increase the budget or reduce alpha")]
    BudgetExceeded(u128),
    #[error("{0} is not prime")]
    NotPrime(u128),
    #[error("{r} divides the base {q}, so no multiplicative order exists")]
    DividesBase { q: u128, r: u128 },
    #[error("no primitive prime divisor found for ({q}, {n}) outside the known exceptions")]
    NoPrimitiveDivisor { q: u128, n: u32 },
    #[error("cyclotomic value of ({q}, {n}) exceeds the factorization range")]
    CyclotomicRange { q: u128, n: u32 },
    #[error("integer overflow past 128 bits")]
    Overflow,
    #[error("a spectrum needs at least one positive element order")]
    EmptySpectrum,
    #[error("prime graph has {0} vertices, over the coclique search budget of 64")]
    VertexBudget(usize),
    #[error("field degree {0} out of range: must be between 1 and 45")]
    AlphaRange(u32),
    #[error("modulus {0:#b} is not a monic irreducible of the requested degree with nonzero constant term")]
    BadModulus(u64),
    #[error("inverse of zero in GF(2^alpha)")]
    ZeroInverse,
    #[error("matrix generator is singular")]
    SingularGenerator,
    #[error("matrix entry does not fit in GF(2^{0})")]
    EntryRange(u32),
    #[error("permutation generator is not a bijection on the stated degree")]
    InvalidPerm,
    #[error("({m}, {t}, {k}) does not define a fixed-point-free metacyclic action")]
    InvalidFrobenius { m: u64, t: u64, k: u64 },
    #[error("a direct product needs at least one factor")]
    EmptyProduct,
    #[error("enumeration cap exceeded after {found} elements")]
    CapExceeded { found: u128 },
    #[error("element order exceeds the cap {0}")]
    OrderCapExceeded(u64),
    #[error("alpha {0} must be odd (1 or 3..=45) for a Suzuki group")]
    SuzukiAlpha(u32),
    #[error("gamma {gamma} is not a nontrivial divisor of alpha {alpha}")]
    BadGamma { alpha: u32, gamma: u32 },
    #[error("p {p} is not a prime divisor of alpha {alpha}")]
    BadTwistPrime { alpha: u32, p: u32 },
    #[error("parse error: {0}")]
    SpecParse(String),
    #[error("unknown verification suite {0:?}")]
    UnknownSuite(String),
    #[error("family cap {0} out of range: must be between 1 and 10000")]
    FamilyCap(u64),
}
