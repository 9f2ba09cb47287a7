use thiserror::Error;

use crate::lattice::Element;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("set is not bounded: {0}")]
    NotBounded(String),
    #[error("cone map is not additive: f({left} + {right}) != f({left}) + f({right})")]
    NotAdditiveOnCone { left: Element, right: Element },
    #[error("decomposition precondition |x| <= |y1| + |y2| fails at {0}")]
    DecompositionPrereqViolated(Element),
    #[error("oracle dimension {dim} exceeds the cap of {cap}")]
    OracleTooLarge { dim: usize, cap: usize },
    #[error("family member {index} is not below the bound")]
    NotBoundedAbove { index: usize },
    #[error("invalid neighborhood: {0}")]
    InvalidNeighborhood(String),
    #[error("product of neighborhoods is {{0}} under zero multiplication")]
    VacuousProduct,
    #[error("soundness bug: {0}")]
    SoundnessBug(String),
    #[error("convergence precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("net has {needed} table terms but the horizon is {horizon}")]
    HorizonExceeded { needed: u64, horizon: u64 },
    #[error("unknown gallery case {0:?}")]
    UnknownCase(String),
    #[error("case registry is empty")]
    EmptyRegistry,
    #[error("unknown instance {0:?}")]
    UnknownInstance(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
