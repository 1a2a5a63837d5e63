//! Exact scalars, sparse polynomials and truncated power series.

mod poly;
mod scalar;
mod series;

pub use poly::{MultiPoly, Registry};
pub use scalar::{rational_to_f64, Scalar};
pub use series::{CapGroup, TruncatedSeries, Truncation};
