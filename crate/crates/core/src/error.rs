use thiserror::Error;

use crate::geometry::BoxId;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("box {id}: {reason}")]
    InvalidBox { id: BoxId, reason: &'static str },

    #[error("TU type {id}: {reason}")]
    InvalidTuType { id: String, reason: &'static str },

    #[error("TU has no placed boxes")]
    EmptyTu,

    #[error("box {0} does not fit any available TU type")]
    BoxUnpackable(BoxId),

    #[error("no feasible move")]
    NoMove,

    #[error("TU catalog is empty")]
    EmptyCatalog,

    #[error("partition bounds infeasible: {0}")]
    InfeasibleBounds(String),

    #[error("no perfect partition defined for TU type {0}")]
    UnknownType(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
