use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

/// `1/n!`, with `1/n! = 0` for negative `n`.
pub fn inv_factorial_or_zero(n: i64) -> BigRational {
    if n < 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::one(), factorial(n as u64))
    }
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Falling factorial `x!/(x-n)!`, zero when `n > x >= 0`.
pub fn falling(x: i64, n: u32) -> BigInt {
    (0..n as i64).fold(BigInt::one(), |acc, j| acc * (x - j))
}

/// `m! / prod(parts_i!)`.
pub fn multinomial(m: u64, parts: &[u64]) -> Result<BigInt> {
    let s: u64 = parts.iter().sum();
    if s != m {
        return Err(Error::SizeMismatch { shape: m, weight: s });
    }
    Ok(parts.iter().fold(factorial(m), |acc, &p| acc / factorial(p)))
}

/// Product of factorials of the entries.
pub fn factorial_product(v: &[u64]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, &x| acc * factorial(x))
}

/// Barnes function on positive integers, `G(n) = prod_{j=0}^{n-2} j!`.
pub fn barnes_g(n: u64) -> BigInt {
    (0..n.saturating_sub(1)).fold(BigInt::one(), |acc, j| acc * factorial(j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(falling(5, 2), BigInt::from(20));
        assert_eq!(falling(2, 3), BigInt::zero());
        assert_eq!(inv_factorial_or_zero(-1), BigRational::zero());
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), BigInt::from(12));
        assert!(multinomial(4, &[2, 1]).is_err());
        assert_eq!(barnes_g(1), BigInt::one());
        assert_eq!(barnes_g(4), BigInt::from(2));
        assert_eq!(barnes_g(5), BigInt::from(12));
    }
}
