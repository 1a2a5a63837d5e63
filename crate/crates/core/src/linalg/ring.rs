use std::fmt::Debug;
use std::sync::Arc;

use crate::exact::{MultiPoly, Registry, Scalar, TruncatedSeries, Truncation};

/// Commutative ring structure acting on elements of type `Elem`.
///
/// Elements such as polynomials need context (a registry, caps) to build zero
/// and one, so the ring carries it instead of the element type.
pub trait Ring {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_scalar(&self, c: &Scalar) -> Self::Elem;

    /// Whether [`Ring::div_exact`] is available (integral domain with exact
    /// division), which enables fraction-free elimination.
    fn has_exact_division(&self) -> bool {
        false
    }

    /// `a / b` when `b` divides `a`.
    fn div_exact(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Self::Elem> {
        None
    }
}

/// Gaussian rationals.
#[derive(Clone, Copy, Debug, Default)]
pub struct ScalarRing;

impl Ring for ScalarRing {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn from_scalar(&self, c: &Scalar) -> Scalar {
        c.clone()
    }
    fn has_exact_division(&self) -> bool {
        true
    }
    fn div_exact(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        a.checked_div(b).ok()
    }
}

/// Polynomials over a fixed registry.
#[derive(Clone, Debug)]
pub struct PolyRing {
    pub reg: Registry,
}

impl PolyRing {
    pub fn new(reg: &Registry) -> Self {
        PolyRing { reg: reg.clone() }
    }
}

impl Ring for PolyRing {
    type Elem = MultiPoly;

    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(&self.reg)
    }
    fn one(&self) -> MultiPoly {
        MultiPoly::one(&self.reg)
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a + b
    }
    fn sub(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a - b
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a * b
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        -a
    }
    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }
    fn from_scalar(&self, c: &Scalar) -> MultiPoly {
        MultiPoly::constant(&self.reg, c.clone())
    }
    fn has_exact_division(&self) -> bool {
        true
    }
    fn div_exact(&self, a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
        a.exact_div(b).ok().flatten()
    }
}

/// Truncated power series sharing one registry and one set of caps.
#[derive(Clone, Debug)]
pub struct SeriesRing {
    pub reg: Registry,
    pub trunc: Arc<Truncation>,
}

impl SeriesRing {
    pub fn new(reg: &Registry, trunc: Truncation) -> Self {
        SeriesRing { reg: reg.clone(), trunc: Arc::new(trunc) }
    }

    pub fn lift(&self, p: MultiPoly) -> TruncatedSeries {
        TruncatedSeries::from_poly(p, &self.trunc)
    }

    pub fn var(&self, i: usize) -> TruncatedSeries {
        self.lift(MultiPoly::var(&self.reg, i))
    }
}

impl Ring for SeriesRing {
    type Elem = TruncatedSeries;

    fn zero(&self) -> TruncatedSeries {
        TruncatedSeries::zero(&self.reg, &self.trunc)
    }
    fn one(&self) -> TruncatedSeries {
        TruncatedSeries::constant(&self.reg, &self.trunc, Scalar::one())
    }
    fn add(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
        a.try_add(b).expect("series ring operands")
    }
    fn sub(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
        a.try_sub(b).expect("series ring operands")
    }
    fn mul(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
        a.try_mul(b).expect("series ring operands")
    }
    fn neg(&self, a: &TruncatedSeries) -> TruncatedSeries {
        a.neg()
    }
    fn is_zero(&self, a: &TruncatedSeries) -> bool {
        a.is_zero()
    }
    fn from_scalar(&self, c: &Scalar) -> TruncatedSeries {
        TruncatedSeries::constant(&self.reg, &self.trunc, c.clone())
    }
}
