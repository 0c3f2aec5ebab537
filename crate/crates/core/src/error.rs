use thiserror::Error;

/// Errors raised by group, fusion and realization computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size cap exceeded: {what} grew past {limit}")]
    CapExceeded { what: String, limit: usize },
    #[error("degree mismatch: expected {expected}, got {found}")]
    BadDegree { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not a p-group: order {order} is not a power of {prime}")]
    NotAPGroup { order: usize, prime: u32 },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("not a group action: {0}")]
    NotAnAction(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("bad domain: {0}")]
    BadDomain(String),
    #[error("not an isomorphism: {0}")]
    NotAnIsomorphism(String),
    #[error("not a class function: {0}")]
    NotAClassFunction(String),
    #[error("fusion systems live on different ambient groups")]
    AmbientMismatch,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
