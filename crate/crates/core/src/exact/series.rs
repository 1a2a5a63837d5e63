use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{MultiPoly, Registry, Scalar};

/// One weighted degree cap: `sum(weight * exponent) <= cap` over `vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapGroup {
    pub vars: Vec<(usize, u32)>,
    pub cap: u32,
}

/// A set of degree caps; a monomial survives when every group admits it.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Truncation {
    groups: Vec<CapGroup>,
}

impl Truncation {
    pub fn new(groups: Vec<CapGroup>) -> Self {
        Truncation { groups }
    }

    /// Independent cap per variable.
    pub fn per_variable(caps: &[u32]) -> Self {
        Truncation {
            groups: caps
                .iter()
                .enumerate()
                .map(|(i, &c)| CapGroup { vars: vec![(i, 1)], cap: c })
                .collect(),
        }
    }

    /// Cap on the plain total degree of the listed variables.
    pub fn total(vars: impl IntoIterator<Item = usize>, cap: u32) -> Self {
        Truncation { groups: vec![CapGroup { vars: vars.into_iter().map(|v| (v, 1)).collect(), cap }] }
    }

    pub fn groups(&self) -> &[CapGroup] {
        &self.groups
    }

    pub fn admits(&self, exps: &[u32]) -> bool {
        self.groups
            .iter()
            .all(|g| g.vars.iter().map(|&(v, w)| w * exps[v]).sum::<u32>() <= g.cap)
    }

    /// Group-wise minimum of two truncations with identical group layout.
    pub fn tighter(&self, other: &Truncation) -> Result<Truncation> {
        if self == other {
            return Ok(self.clone());
        }
        if self.groups.len() != other.groups.len()
            || self.groups.iter().zip(&other.groups).any(|(a, b)| a.vars != b.vars)
        {
            return Err(Error::TruncationMismatch("different cap groups".into()));
        }
        Ok(Truncation {
            groups: self
                .groups
                .iter()
                .zip(&other.groups)
                .map(|(a, b)| CapGroup { vars: a.vars.clone(), cap: a.cap.min(b.cap) })
                .collect(),
        })
    }
}

/// Polynomial in formal variables, eagerly re-truncated after every operation.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries {
    poly: MultiPoly,
    trunc: Arc<Truncation>,
}

impl TruncatedSeries {
    pub fn zero(reg: &Registry, trunc: &Arc<Truncation>) -> Self {
        TruncatedSeries { poly: MultiPoly::zero(reg), trunc: trunc.clone() }
    }

    pub fn constant(reg: &Registry, trunc: &Arc<Truncation>, c: Scalar) -> Self {
        TruncatedSeries { poly: MultiPoly::constant(reg, c), trunc: trunc.clone() }
    }

    pub fn from_poly(poly: MultiPoly, trunc: &Arc<Truncation>) -> Self {
        let mut out = MultiPoly::zero(poly.registry());
        for (e, c) in poly.terms() {
            if trunc.admits(e) {
                out.add_term(e.clone(), c.clone());
            }
        }
        TruncatedSeries { poly: out, trunc: trunc.clone() }
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn truncation(&self) -> &Arc<Truncation> {
        &self.trunc
    }

    pub fn registry(&self) -> &Registry {
        self.poly.registry()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.poly.coeff(exps)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn joint(&self, other: &TruncatedSeries) -> Result<Arc<Truncation>> {
        if Arc::ptr_eq(&self.trunc, &other.trunc) || self.trunc == other.trunc {
            Ok(self.trunc.clone())
        } else {
            Ok(Arc::new(self.trunc.tighter(&other.trunc)?))
        }
    }

    pub fn try_add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let t = self.joint(other)?;
        Ok(TruncatedSeries::from_poly(self.poly.try_add(&other.poly)?, &t))
    }

    pub fn try_sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let t = self.joint(other)?;
        Ok(TruncatedSeries::from_poly(self.poly.try_sub(&other.poly)?, &t))
    }

    pub fn try_mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let t = self.joint(other)?;
        if self.poly.registry() != other.poly.registry() {
            return Err(Error::RegistryMismatch);
        }
        let poly = self.poly.mul_filtered(&other.poly, |e| t.admits(e));
        Ok(TruncatedSeries { poly, trunc: t })
    }

    pub fn scale(&self, c: &Scalar) -> TruncatedSeries {
        TruncatedSeries { poly: self.poly.scale(c), trunc: self.trunc.clone() }
    }

    pub fn neg(&self) -> TruncatedSeries {
        self.scale(&Scalar::int(-1))
    }

    /// `exp(self)` for a series without constant term.
    pub fn exp_nilpotent(&self) -> Result<TruncatedSeries> {
        if !self.poly.constant_term().is_zero() {
            return Err(Error::pre("exp of a series with nonzero constant term"));
        }
        let reg = self.registry().clone();
        let mut acc = TruncatedSeries::constant(&reg, &self.trunc, Scalar::one());
        let mut term = acc.clone();
        let mut n = 1i64;
        loop {
            term = term.try_mul(self)?.scale(&Scalar::ratio(1, n));
            if term.is_zero() {
                break;
            }
            acc = acc.try_add(&term)?;
            n += 1;
        }
        Ok(acc)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(..)", self.poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_product() {
        let reg = Registry::new(["u1"]);
        let t = Arc::new(Truncation::total([0], 2));
        let u = MultiPoly::var(&reg, 0);
        let one = MultiPoly::one(&reg);
        let a = TruncatedSeries::from_poly(&(&one + &u) + &u.pow(2), &t);
        let b = TruncatedSeries::from_poly(&one + &u, &t);
        let c = a.try_mul(&b).unwrap();
        let expect = &(&one + &u.scale(&Scalar::int(2))) + &u.pow(2).scale(&Scalar::int(2));
        assert_eq!(c.poly(), &expect);
    }

    #[test]
    fn weighted_caps() {
        let t = Truncation::new(vec![CapGroup { vars: vec![(0, 1), (1, 2)], cap: 3 }]);
        assert!(t.admits(&[1, 1]));
        assert!(!t.admits(&[0, 2]));
        assert!(t.admits(&[3, 0]));
    }

    #[test]
    fn tighter_caps_win() {
        let reg = Registry::new(["u"]);
        let t2 = Arc::new(Truncation::total([0], 2));
        let t1 = Arc::new(Truncation::total([0], 1));
        let u = MultiPoly::var(&reg, 0);
        let a = TruncatedSeries::from_poly(u.clone(), &t2);
        let b = TruncatedSeries::from_poly(u.clone(), &t1);
        assert!(a.try_mul(&b).unwrap().is_zero());
        let other = Arc::new(Truncation::per_variable(&[1, 1]));
        let reg2 = Registry::new(["u", "v"]);
        let c = TruncatedSeries::from_poly(MultiPoly::var(&reg2, 0), &other);
        let d = TruncatedSeries::from_poly(MultiPoly::var(&reg2, 0), &Arc::new(Truncation::total([0, 1], 1)));
        assert!(matches!(c.try_add(&d), Err(Error::TruncationMismatch(_))));
    }

    #[test]
    fn exp_of_nilpotent() {
        let reg = Registry::new(["u"]);
        let t = Arc::new(Truncation::total([0], 3));
        let u = TruncatedSeries::from_poly(MultiPoly::var(&reg, 0), &t);
        let e = u.exp_nilpotent().unwrap();
        assert_eq!(e.coeff(&[3]), Scalar::ratio(1, 6));
        assert_eq!(e.coeff(&[4]), Scalar::zero());
    }
}
