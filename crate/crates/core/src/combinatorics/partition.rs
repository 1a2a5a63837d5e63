use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::combinatorics::numbers::{factorial, factorial_product};
use crate::error::{Error, Result};

/// Integer partition with positive, non-increasing parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

/// Composition-like weight; order matters, zeros allowed.
pub type WeightVector = Vec<u32>;

impl Partition {
    /// Trailing zeros are dropped; any increase is rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not non-increasing")));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has an inner zero")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// Part `i` (0-based), zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0);
        Partition((1..=w).map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32).collect())
    }

    /// Hook lengths in row-major order.
    pub fn hook_lengths(&self) -> Vec<u64> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row as usize - j - 1;
                let leg = conj.part(j) as usize - i - 1;
                out.push((arm + leg + 1) as u64);
            }
        }
        out
    }

    /// `hat_j = j - 1 + lambda_{k-j+1}` for `j = 1..=k`.
    pub fn shifted(&self, k: usize) -> Result<ShiftedSequence> {
        if self.len() > k {
            return Err(Error::pre(format!("partition {self} is longer than {k}")));
        }
        Ok(ShiftedSequence((0..k).map(|j| j as u64 + self.part(k - 1 - j) as u64).collect()))
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Strictly increasing sequence of non-negative integers, the shifted form of
/// a partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShiftedSequence(Vec<u64>);

impl ShiftedSequence {
    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `prod_j hat_j!`
    pub fn factorial(&self) -> BigInt {
        factorial_product(&self.0)
    }

    /// `prod_{i<j} (hat_j - hat_i)`
    pub fn vandermonde(&self) -> BigInt {
        let mut acc = BigInt::from(1);
        for j in 0..self.0.len() {
            for i in 0..j {
                acc *= self.0[j] as i64 - self.0[i] as i64;
            }
        }
        acc
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&v| v as i64).collect()
    }
}

/// Partitions of `m` with at most `max_len` parts, in reverse-lexicographic
/// order: `(3), (2,1), (1,1,1)`.
pub fn partitions(m: u32, max_len: usize) -> Vec<Partition> {
    fn rec(m: u32, max_len: usize, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if m == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if max_len == 0 {
            return;
        }
        for p in (1..=m.min(max_part)).rev() {
            cur.push(p);
            rec(m - p, max_len - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, max_len, m, &mut Vec::new(), &mut out);
    out
}

/// Weak compositions of `m` into exactly `parts` parts.
pub fn compositions(m: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(m: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(m);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=m {
            cur.push(first);
            rec(m - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if m == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(m, parts, &mut Vec::new(), &mut out);
    out
}

/// `m! / prod(hooks)`, the number of standard tableaux.
pub fn hook_count(shape: &Partition) -> BigInt {
    let h: BigInt = shape.hook_lengths().iter().map(|&x| BigInt::from(x)).product();
    factorial(shape.size()) / h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reverse_lex_order() {
        let ps: Vec<Vec<u32>> = partitions(4, 4).into_iter().map(Into::into).collect();
        assert_eq!(ps, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(partitions(4, 2).len(), 3);
        assert_eq!(partitions(0, 0), vec![Partition::empty()]);
    }

    #[test]
    fn shifted_sequence() {
        let p = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(p.shifted(3).unwrap().values(), &[0, 2, 4]);
        assert_eq!(p.shifted(2).unwrap().values(), &[1, 3]);
        assert!(p.shifted(1).is_err());
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap().parts(), &[2, 1]);
    }

    #[test]
    fn hooks() {
        let p = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(p.hook_lengths(), vec![4, 2, 1, 1]);
        assert_eq!(hook_count(&p), BigInt::from(3));
        assert_eq!(p.conjugate().parts(), &[2, 1, 1]);
    }

    #[test]
    fn composition_count() {
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(compositions(0, 0).len(), 1);
        assert!(compositions(1, 0).is_empty());
    }
}
