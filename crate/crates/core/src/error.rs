use crate::linalg::ShapeError;
use crate::sl::Weight;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("n must be 3 or 4 (got {0})")]
    InvalidRank(usize),
    #[error("unknown module label {0:?}")]
    UnknownLabel(String),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("modules are over different sl_n ({0} vs {1})")]
    MismatchedRank(usize, usize),
    #[error("non-integral or non-semisimple action of {element} (not a weight module)")]
    NonIntegralWeight { element: String },
    #[error("constituent with highest weight {weight} lies outside Theta_n^+")]
    NonThetaConstituent { weight: Weight },
    #[error("module is not completely reducible into weight-basis constituents: {0}")]
    NotCompletelyReducible(String),
    #[error("product {0} is referenced by a bracket rule but not declared")]
    MissingProduct(String),
    #[error("invalid coordinate data: {0}")]
    InvalidData(String),
    #[error("the n=3 hypothesis on S and S' self-brackets fails: {0}")]
    ConditionViolated(String),
    #[error("coordinate extraction failed: {0}")]
    Extraction(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
