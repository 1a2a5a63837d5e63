use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::combinatorics::{barnes_g, binomial, factorial};
use crate::error::{Error, Result};
use crate::exact::Scalar;

/// Coefficients of `L_n^{(a)}(x)` in powers of `x`.
pub fn laguerre_coeffs(n: u32, a: u32) -> Vec<BigRational> {
    (0..=n)
        .map(|i| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            BigRational::new(binomial((n + a) as i64, (n - i) as i64) * sign, factorial(i as u64))
        })
        .collect()
}

/// Generalised Laguerre polynomial `L_n^{(a)}(x)`.
pub fn laguerre(n: u32, a: u32, x: &Scalar) -> Scalar {
    horner(&laguerre_coeffs(n, a), x)
}

/// Coefficients of the truncated Laguerre polynomial
/// `L_{a,b}(x) = sum_{m<=b} C(a,m) (-x)^m / m!`.
pub fn laguerre_truncated_coeffs(a: u32, b: u32) -> Vec<BigRational> {
    (0..=b)
        .map(|m| {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            BigRational::new(binomial(a as i64, m as i64) * sign, factorial(m as u64))
        })
        .collect()
}

pub fn laguerre_truncated(a: u32, b: u32, x: &Scalar) -> Scalar {
    horner(&laguerre_truncated_coeffs(a, b), x)
}

/// Physicists' Hermite polynomial coefficients, `H_{j+1} = 2x H_j - 2j H_{j-1}`.
pub fn hermite_coeffs(j: u32) -> Vec<BigInt> {
    let mut prev = vec![BigInt::from(1)];
    if j == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::from(0), BigInt::from(2)];
    for n in 1..j {
        let mut next = vec![BigInt::from(0); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * 2;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c * (2 * n as i64);
        }
        prev = cur;
        cur = next;
    }
    cur
}

pub fn hermite(j: u32, x: &Scalar) -> Scalar {
    let c: Vec<BigRational> = hermite_coeffs(j).into_iter().map(BigRational::from_integer).collect();
    horner(&c, x)
}

fn horner(c: &[BigRational], x: &Scalar) -> Scalar {
    c.iter().rev().fold(Scalar::zero(), |acc, a| acc * x + Scalar::real(a.clone()))
}

/// Modified Bessel function `I_nu(x)` by its power series, summed until
/// the term drops below `1e-18` of the partial sum.
pub fn bessel_i(nu: u32, x: f64) -> f64 {
    let half = x / 2.0;
    let mut term = half.powi(nu as i32) / (1..=nu).map(f64::from).product::<f64>();
    let mut sum = term;
    let q = half * half;
    for m in 1..10_000u32 {
        term *= q / (m as f64 * (m + nu) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum SpecialValue {
    Exact(Scalar),
    Float(f64),
}

/// Dispatch by name: `laguerre` (n, a), `laguerre_trunc` (a, b), `hermite`
/// (j), `barnes_g` (n, x ignored), `bessel_i` (nu, floating x).
pub fn special(name: &str, params: &[u32], x: &Scalar) -> Result<SpecialValue> {
    let need = |n: usize| -> Result<()> {
        if params.len() != n {
            return Err(Error::pre(format!("{name} takes {n} integer parameter(s)")));
        }
        Ok(())
    };
    Ok(match name {
        "laguerre" => {
            need(2)?;
            SpecialValue::Exact(laguerre(params[0], params[1], x))
        }
        "laguerre_trunc" => {
            need(2)?;
            SpecialValue::Exact(laguerre_truncated(params[0], params[1], x))
        }
        "hermite" => {
            need(1)?;
            SpecialValue::Exact(hermite(params[0], x))
        }
        "barnes_g" => {
            need(1)?;
            SpecialValue::Exact(Scalar::big(barnes_g(params[0] as u64)))
        }
        "bessel_i" => {
            need(1)?;
            SpecialValue::Float(bessel_i(params[0], x.to_f64().0))
        }
        _ => return Err(Error::UnknownFunction(name.into())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(hermite_coeffs(3), vec![0.into(), (-12).into(), 0.into(), 8.into()]);
        assert_eq!(bessel_i(0, 0.0), 1.0);
        assert_eq!(bessel_i(1, 0.0), 0.0);
        assert!((bessel_i(1, 1.0) - 0.565_159_103_992_485).abs() < 1e-14);
        // L_1^{(0)}(x) = 1 - x
        assert_eq!(laguerre(1, 0, &Scalar::int(3)), Scalar::int(-2));
        assert_eq!(laguerre_truncated(3, 3, &Scalar::ratio(1, 2)), laguerre(3, 0, &Scalar::ratio(1, 2)));
        assert!(matches!(special("zeta", &[], &Scalar::one()), Err(Error::UnknownFunction(_))));
    }
}
