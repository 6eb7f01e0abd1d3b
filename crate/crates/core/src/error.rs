//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not invariant under the involution")]
    NotInvariant,
    #[error("subgroup is not contained in the orientation kernel")]
    NotInKernel,
    #[error("maps belong to different parent groups")]
    ParentMismatch,
    #[error("elements belong to different algebra contexts")]
    ContextMismatch,
    #[error("pair is incompatible: some g has g*g^* outside the orientation kernel")]
    Incompatible,
    #[error("orientation is trivial")]
    TrivialOrientation,
    #[error("group is abelian")]
    AbelianGroup,
    #[error("the set of {p}-elements is not closed under multiplication")]
    PNotSubgroup { p: u64 },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("{what} needs {needed} points, above the bound {bound}")]
    BoundExceeded {
        what: String,
        needed: u128,
        bound: u128,
    },
    #[error("{0} is not a valid prime here")]
    InvalidPrime(u64),
    #[error("cannot parse group spec: {0}")]
    SpecParse(String),
    #[error("cannot parse word: {0}")]
    WordParse(String),
    #[error("word is trivial after reduction")]
    TrivialWord,
    #[error("cannot parse report: {0}")]
    ReportParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
