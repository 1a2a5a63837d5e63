//! Determinants, Pfaffians and Vandermonde products over generic rings.

mod matrix;
mod ring;

pub use matrix::{det, det_bareiss, det_cofactor, pfaffian, vandermonde, AntisymMatrix, RingMatrix};
pub use ring::{PolyRing, Ring, ScalarRing, SeriesRing};
