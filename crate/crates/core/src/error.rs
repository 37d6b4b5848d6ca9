use alloc::string::String;

/// Everything that can go wrong inside the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("cannot parse group spec `{0}`")]
    Parse(String),
    #[error("table is not a group: {0}")]
    NotAGroup(String),
    #[error("{what} has size {size}, above the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("group is not abelian")]
    NotAbelian,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("the identity vertex has no weight decomposition")]
    IdentityVertex,
    #[error("the identity element does not define an interval subgraph")]
    IdentityElement,
    #[error("Lanczos did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("trace row does not belong to the system: {0}")]
    UnknownRow(String),
    #[error("vertex set is not a clique through the identity")]
    NotAClique,
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("map is not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("map is not a graph isomorphism")]
    NotAnIsomorphism,
    #[error("parameters (m = {m}, |G| = {order}) are exceptional; use the refinement search")]
    ExceptionalCase { m: usize, order: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("claim violated: {0}")]
    ClaimViolated(String),
}

pub type Result<T> = core::result::Result<T, Error>;
