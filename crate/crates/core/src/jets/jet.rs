use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::exact::{MultiPoly, Scalar};

/// Normalised Taylor coefficients `c_j = f^(j)(point) / j!`, `j = 0..=order`.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionJet {
    pub point: Scalar,
    pub coeffs: Vec<Scalar>,
}

/// Normalised Taylor coefficients `c_ab = d_x^a d_y^b K(chi, xi) / (a! b!)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelJet {
    pub points: (Scalar, Scalar),
    pub coeffs: Vec<Vec<Scalar>>,
}

fn powers(x: &Scalar, n: usize) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Scalar::one());
    for i in 0..n {
        let next = &out[i] * x;
        out.push(next);
    }
    out
}

impl FunctionJet {
    pub fn new(point: Scalar, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::pre("jet needs at least one coefficient"));
        }
        Ok(FunctionJet { point, coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `c_j`; asking past the order is an error.
    pub fn coeff(&self, j: usize) -> Result<&Scalar> {
        self.coeffs.get(j).ok_or(Error::InsufficientJetOrder { have: self.order(), need: j })
    }

    pub fn require(&self, need: usize) -> Result<()> {
        if self.order() < need {
            Err(Error::InsufficientJetOrder { have: self.order(), need })
        } else {
            Ok(())
        }
    }

    /// Taylor jet of a univariate polynomial.
    pub fn from_poly(p: &MultiPoly, point: &Scalar, order: usize) -> Result<Self> {
        if p.nvars() != 1 {
            return Err(Error::pre("function jet needs a univariate polynomial"));
        }
        let pw = powers(point, p.degree_in(0) as usize);
        let mut coeffs = vec![Scalar::zero(); order + 1];
        for (e, c) in p.terms() {
            let n = e[0] as usize;
            for (j, slot) in coeffs.iter_mut().enumerate().take(n.min(order) + 1) {
                *slot += &(c * &pw[n - j] * Scalar::big(binomial(n as i64, j as i64)));
            }
        }
        Ok(FunctionJet { point: point.clone(), coeffs })
    }

    /// The zero function.
    pub fn zero(point: &Scalar, order: usize) -> Self {
        FunctionJet { point: point.clone(), coeffs: vec![Scalar::zero(); order + 1] }
    }
}

impl KernelJet {
    pub fn new(points: (Scalar, Scalar), coeffs: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = coeffs.len();
        if n == 0 || coeffs.iter().any(|r| r.len() != n) {
            return Err(Error::pre("kernel jet needs a square coefficient table"));
        }
        Ok(KernelJet { points, coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, a: usize, b: usize) -> Result<&Scalar> {
        self.coeffs
            .get(a)
            .and_then(|r| r.get(b))
            .ok_or(Error::InsufficientJetOrder { have: self.order(), need: a.max(b) })
    }

    pub fn require(&self, need: usize) -> Result<()> {
        if self.order() < need {
            Err(Error::InsufficientJetOrder { have: self.order(), need })
        } else {
            Ok(())
        }
    }

    /// Taylor jet of a bivariate polynomial `K(x, y)` at `(chi, xi)`.
    pub fn from_poly(p: &MultiPoly, points: (&Scalar, &Scalar), order: usize) -> Result<Self> {
        if p.nvars() != 2 {
            return Err(Error::pre("kernel jet needs a bivariate polynomial"));
        }
        let px = powers(points.0, p.degree_in(0) as usize);
        let py = powers(points.1, p.degree_in(1) as usize);
        let mut coeffs = vec![vec![Scalar::zero(); order + 1]; order + 1];
        for (e, c) in p.terms() {
            let (n, m) = (e[0] as usize, e[1] as usize);
            for a in 0..=n.min(order) {
                let ca = c * &px[n - a] * Scalar::big(binomial(n as i64, a as i64));
                for b in 0..=m.min(order) {
                    coeffs[a][b] += &(&ca * &py[m - b] * Scalar::big(binomial(m as i64, b as i64)));
                }
            }
        }
        Ok(KernelJet { points: (points.0.clone(), points.1.clone()), coeffs })
    }

    /// Jet of `(x, y) -> K(y, x)` at the swapped points.
    pub fn transposed(&self) -> KernelJet {
        let n = self.coeffs.len();
        KernelJet {
            points: (self.points.1.clone(), self.points.0.clone()),
            coeffs: (0..n).map(|a| (0..n).map(|b| self.coeffs[b][a].clone()).collect()).collect(),
        }
    }

    pub fn negated(&self) -> KernelJet {
        KernelJet {
            points: self.points.clone(),
            coeffs: self.coeffs.iter().map(|r| r.iter().map(|c| -c).collect()).collect(),
        }
    }

    /// `K(chi, xi) = -K(xi, chi)` to the common order.
    pub fn antisymmetric_with(&self, swapped: &KernelJet) -> bool {
        let n = self.coeffs.len().min(swapped.coeffs.len());
        self.points.0 == swapped.points.1
            && self.points.1 == swapped.points.0
            && (0..n).all(|a| (0..n).all(|b| (&self.coeffs[a][b] + &swapped.coeffs[b][a]).is_zero()))
    }
}

/// Serialised jet: `{"point": [...], "order": n, "coeffs": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JetRecord {
    pub point: Vec<Scalar>,
    pub order: usize,
    pub coeffs: serde_json::Value,
}

impl From<&FunctionJet> for JetRecord {
    fn from(j: &FunctionJet) -> Self {
        JetRecord {
            point: vec![j.point.clone()],
            order: j.order(),
            coeffs: serde_json::to_value(&j.coeffs).expect("scalars serialise"),
        }
    }
}

impl From<&KernelJet> for JetRecord {
    fn from(j: &KernelJet) -> Self {
        JetRecord {
            point: vec![j.points.0.clone(), j.points.1.clone()],
            order: j.order(),
            coeffs: serde_json::to_value(&j.coeffs).expect("scalars serialise"),
        }
    }
}

impl TryFrom<&JetRecord> for FunctionJet {
    type Error = Error;
    fn try_from(r: &JetRecord) -> Result<Self> {
        let [point] = r.point.as_slice() else {
            return Err(Error::Parse("function jet needs one point".into()));
        };
        let coeffs: Vec<Scalar> =
            serde_json::from_value(r.coeffs.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if coeffs.len() != r.order + 1 {
            return Err(Error::Parse(format!("order {} with {} coefficients", r.order, coeffs.len())));
        }
        FunctionJet::new(point.clone(), coeffs)
    }
}

impl TryFrom<&JetRecord> for KernelJet {
    type Error = Error;
    fn try_from(r: &JetRecord) -> Result<Self> {
        let [x, y] = r.point.as_slice() else {
            return Err(Error::Parse("kernel jet needs two points".into()));
        };
        let coeffs: Vec<Vec<Scalar>> =
            serde_json::from_value(r.coeffs.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if coeffs.len() != r.order + 1 {
            return Err(Error::Parse(format!("order {} with {} rows", r.order, coeffs.len())));
        }
        KernelJet::new((x.clone(), y.clone()), coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Registry;

    #[test]
    fn taylor_of_cube() {
        let reg = Registry::new(["x"]);
        let x = MultiPoly::var(&reg, 0);
        let j = FunctionJet::from_poly(&x.pow(3), &Scalar::int(2), 4).unwrap();
        let want: Vec<Scalar> = [8, 12, 6, 1, 0].iter().map(|&v| Scalar::int(v)).collect();
        assert_eq!(j.coeffs, want);
    }

    #[test]
    fn kernel_jet_matches_derivatives() {
        let reg = Registry::new(["x", "y"]);
        let x = MultiPoly::var(&reg, 0);
        let y = MultiPoly::var(&reg, 1);
        let k = &(&x.pow(2) * &y) - &(&y.pow(2) * &x);
        let chi = Scalar::ratio(1, 2);
        let jet = KernelJet::from_poly(&k, (&chi, &chi), 3).unwrap();
        // d_x d_y (x^2 y - x y^2) = 2x - 2y = 0 at the diagonal
        assert!(jet.coeffs[1][1].is_zero());
        assert_eq!(jet.coeffs[2][1], Scalar::int(1));
        assert!(jet.antisymmetric_with(&jet));
    }

    #[test]
    fn record_round_trip() {
        let j = FunctionJet::new(Scalar::ratio(1, 3), vec![Scalar::int(1), Scalar::ratio(-1, 2)]).unwrap();
        let text = serde_json::to_string(&JetRecord::from(&j)).unwrap();
        assert_eq!(text, r#"{"point":["1/3"],"order":1,"coeffs":["1/1","-1/2"]}"#);
        let back: JetRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(FunctionJet::try_from(&back).unwrap(), j);
    }
}
