pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod evaluators;
pub mod exact;
pub mod jets;
pub mod linalg;
pub mod rmt;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{MultiPoly, Registry, Scalar, TruncatedSeries, Truncation};
