use num_bigint::BigInt;
use num_rational::BigRational;

use crate::combinatorics::kostka::kostka;
use crate::combinatorics::numbers::falling;
use crate::combinatorics::partition::{compositions, Partition};
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::linalg::{det, vandermonde, RingMatrix, ScalarRing};

/// Schur polynomial value computed two independent ways.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurEval {
    /// `det[u_a^{hat_b}] / Delta_k(u)`
    pub bialternant: Scalar,
    /// `sum_alpha K_{lambda, alpha} u^alpha`
    pub monomial: Scalar,
}

pub fn schur_eval(shape: &Partition, points: &[Scalar]) -> Result<SchurEval> {
    let k = points.len();
    let hat = shape.shifted(k)?;
    let vdm = vandermonde(&ScalarRing, points);
    if vdm.is_zero() {
        return Err(Error::pre("bialternant needs pairwise distinct points"));
    }
    let m = RingMatrix::from_fn(k, k, |a, b| points[a].pow(hat.values()[b] as u32));
    let bialternant = det(&ScalarRing, &m)? / vdm;

    let mut monomial = Scalar::zero();
    for alpha in compositions(shape.size() as u32, k) {
        let kn = kostka(shape, &alpha)?;
        if kn == BigInt::from(0) {
            continue;
        }
        let term: Scalar = alpha.iter().zip(points).map(|(&e, u)| u.pow(e)).product();
        monomial += &(term * Scalar::big(kn));
    }
    Ok(SchurEval { bialternant, monomial })
}

/// Factorial Schur function `t_nu(x) = det[x_a!/(x_a - hat_b)!] / Delta_k(x)`
/// at integer points, `k = points.len()`.
pub fn factorial_schur(nu: &Partition, points: &[i64]) -> Result<BigRational> {
    let k = points.len();
    let hat = nu.shifted(k)?;
    let pts: Vec<Scalar> = points.iter().map(|&x| Scalar::int(x)).collect();
    let vdm = vandermonde(&ScalarRing, &pts);
    if vdm.is_zero() {
        return Err(Error::pre("factorial Schur function needs distinct points"));
    }
    if points.iter().any(|&x| x < 0) {
        return Err(Error::pre("factorial Schur function needs non-negative points"));
    }
    let m = RingMatrix::from_fn(k, k, |a, b| Scalar::big(falling(points[a], hat.values()[b] as u32)));
    let v = det(&ScalarRing, &m)? / vdm;
    Ok(v.re().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schur_two_routes() {
        let p = Partition::new(vec![2, 1]).unwrap();
        let pts = [Scalar::int(1), Scalar::int(2), Scalar::ratio(1, 3)];
        let e = schur_eval(&p, &pts).unwrap();
        assert_eq!(e.bialternant, e.monomial);
    }

    #[test]
    fn factorial_schur_empty_is_one() {
        let v = factorial_schur(&Partition::empty(), &[0, 2, 5]).unwrap();
        assert_eq!(v, BigRational::from_integer(1.into()));
    }

    #[test]
    fn factorial_schur_single_box() {
        // t_(1)(x) = sum x_a - k(k-1)/2
        let v = factorial_schur(&Partition::new(vec![1]).unwrap(), &[0, 3, 4]).unwrap();
        assert_eq!(v, BigRational::from_integer(4.into()));
    }
}
