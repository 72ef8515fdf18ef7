use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("singular matrix")]
    Singular,
    #[error("no power up to {0} is the identity")]
    Overflow(usize),
    #[error("group exceeds the closure cap of {0} elements")]
    TooLarge(usize),
    #[error("representation is reducible")]
    ReducibleInput,
    #[error("centralizer is trivial, input is not bad")]
    NotBad,
    #[error("image is not monomial with cyclic-shift support")]
    NotMonomial,
    #[error("relator {0} is not sent to the identity")]
    RelatorNotSatisfied(usize),
    #[error("layer map is not a homomorphism to Z/p")]
    NotHomomorphism,
    #[error("values are not equivariant under the shift")]
    NotEquivariant,
    #[error("product of commutators is not scalar")]
    NotScalarResult,
    #[error("no scalar root found in supported cyclotomic fields")]
    ScalarRootUnavailable,
    #[error("centralizer shape not supported: order {0}")]
    UnsupportedCentralizer(usize),
    #[error("criteria disagree on weight profile {0}")]
    CriterionMismatch(String),
    #[error("not found: {0}")]
    NotFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
