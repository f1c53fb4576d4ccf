//! Air transport unit consolidation.
//!
//! Boxes are packed onto pallets (transport units, TUs) of several types so
//! as to minimise total TU volume, TU count and an off-centre penalty on each
//! load's centre of gravity.
//!
//! * [`geometry`]: domain types, feasibility checks and the objective.
//! * [`packer`]: extreme-point constructive packing into one TU type.
//! * [`search`]: iterated local search over TU contents and types.
//! * [`forge`]: lower bounds and generated instances with known optima.

pub mod error;
pub mod forge;
pub mod geometry;
pub mod packer;
pub mod search;

pub use error::{Error, Result};
