use thiserror::Error;

use crate::algebra::Element;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid algebra spec `{input}`: {reason}")]
    SpecParse { input: String, reason: String },

    #[error("cannot parse element `{input}`: {reason}")]
    ElementParse { input: String, reason: String },

    #[error("element {0} is not in the basis of the algebra")]
    NotInBasis(String),

    #[error("element {element} lies outside the weight window (max weight {max_weight})")]
    OutsideWindow { element: String, max_weight: i64 },

    #[error("cell (degree {degree}, grade {grade}) exceeds the cap of {cap} basis tuples")]
    ResourceCap { degree: usize, grade: i64, cap: usize },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed cochain record: {0}")]
    Deserialize(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn not_in_basis(element: &Element) -> Self {
        Error::NotInBasis(element.to_string())
    }
}
