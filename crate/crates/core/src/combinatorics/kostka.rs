use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinatorics::numbers::factorial;
use crate::combinatorics::partition::{hook_count, Partition};
use crate::error::{Error, Result};

type Key = (Vec<u32>, Vec<u32>);

fn cache() -> &'static Mutex<HashMap<Key, BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Kostka number `K_{shape, weight}`: semistandard tableaux of the given
/// shape and content.
///
/// Entries equal to the largest label form a horizontal strip; removing it
/// recursively enumerates the tableaux. Results are memoised on the shape and
/// the sorted weight, which is valid because the count is symmetric in the
/// weight.
pub fn kostka(shape: &Partition, weight: &[u32]) -> Result<BigInt> {
    let w: u64 = weight.iter().map(|&x| x as u64).sum();
    if w != shape.size() {
        return Err(Error::SizeMismatch { shape: shape.size(), weight: w });
    }
    let mut sorted: Vec<u32> = weight.iter().copied().filter(|&x| x > 0).collect();
    sorted.sort_unstable();
    if shape.len() > sorted.len() {
        return Ok(BigInt::zero());
    }
    Ok(strip_count(shape.parts(), &sorted))
}

fn strip_count(shape: &[u32], weight: &[u32]) -> BigInt {
    if weight.is_empty() {
        return if shape.is_empty() { BigInt::from(1) } else { BigInt::zero() };
    }
    if shape.len() > weight.len() {
        return BigInt::zero();
    }
    let key = (shape.to_vec(), weight.to_vec());
    if let Some(v) = cache().lock().expect("kostka cache").get(&key) {
        return v.clone();
    }
    let (&last, rest) = weight.split_last().unwrap();
    let mut total = BigInt::zero();
    let mut inner = shape.to_vec();
    remove_strips(shape, 0, last, &mut inner, &mut |mu| {
        let trimmed: Vec<u32> = mu.iter().copied().filter(|&p| p > 0).collect();
        total += strip_count(&trimmed, rest);
    });
    cache().lock().expect("kostka cache").insert(key, total.clone());
    total
}

/// Enumerates `mu` with `lambda/mu` a horizontal strip of size `left`.
fn remove_strips(lambda: &[u32], row: usize, left: u32, mu: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if row == lambda.len() {
        if left == 0 {
            f(mu);
        }
        return;
    }
    let floor = lambda.get(row + 1).copied().unwrap_or(0);
    let max_take = (lambda[row] - floor).min(left);
    for take in 0..=max_take {
        mu[row] = lambda[row] - take;
        remove_strips(lambda, row + 1, left - take, mu, f);
    }
    mu[row] = lambda[row];
}

/// The two closed forms of `K_{shape, (1^m)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KostkaOnes {
    /// `m! / prod(hook lengths)`
    pub hook: BigInt,
    /// `m! Delta_m(hat) / hat!` with the `m`-shifted sequence
    pub shifted: BigInt,
}

pub fn kostka_ones(shape: &Partition) -> Result<KostkaOnes> {
    let m = shape.size() as usize;
    let hat = shape.shifted(m)?;
    let shifted = factorial(m as u64) * hat.vandermonde() / hat.factorial();
    Ok(KostkaOnes { hook: hook_count(shape), shifted })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn known_values() {
        assert_eq!(kostka(&p(&[3, 1]), &[2, 1, 1]).unwrap(), BigInt::from(2));
        assert_eq!(kostka(&p(&[2, 2]), &[1, 1, 1, 1]).unwrap(), BigInt::from(2));
        assert_eq!(kostka(&p(&[3, 2]), &[1, 1, 1, 1, 1]).unwrap(), BigInt::from(5));
        assert_eq!(kostka(&p(&[2]), &[0, 2]).unwrap(), BigInt::from(1));
        assert_eq!(kostka(&p(&[1, 1]), &[2]).unwrap(), BigInt::zero());
        assert_eq!(kostka(&Partition::empty(), &[]).unwrap(), BigInt::from(1));
    }

    #[test]
    fn size_mismatch() {
        assert!(matches!(kostka(&p(&[2, 1]), &[2, 2]), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn ones_agree() {
        let k = kostka_ones(&p(&[3, 2, 1])).unwrap();
        assert_eq!(k.hook, BigInt::from(16));
        assert_eq!(k.shifted, BigInt::from(16));
    }
}
