use crate::laurent::QuotientError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("elements live over different generator tables")]
    TableMismatch,
    #[error("`{0}` is not a unit")]
    NotUnit(String),
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("cannot orient the zero relation")]
    ZeroRelation,
    #[error("leading coefficient {coeff} of `{word}` is not a unit")]
    NonUnitLeading { word: String, coeff: String },
    #[error("rule `{lhs}` is not strictly decreasing: `{offending}` is not smaller")]
    NotDecreasing { lhs: String, offending: String },
    #[error("monomial rules need a swap rule for every generator pair; `{0}` has none")]
    IncompleteSwaps(String),
    #[error("link expansion needs complexity bound {needed}, table holds {have}")]
    BoundExceeded { needed: i64, have: i64 },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no coordinate assignment is consistent with the tested products")]
    NoCalibration,
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

pub type Result<T> = std::result::Result<T, Error>;
