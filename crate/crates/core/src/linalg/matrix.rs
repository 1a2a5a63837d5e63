use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::Ring;

/// Dense row-major matrix over some ring's elements.
#[derive(Clone, Debug, PartialEq)]
pub struct RingMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> RingMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Ragged);
        }
        Ok(RingMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RingMatrix { rows, cols, data }
    }

    pub fn try_from_fn<E>(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> std::result::Result<T, E>,
    ) -> std::result::Result<Self, E> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j)?);
            }
        }
        Ok(RingMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> RingMatrix<U> {
        RingMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        RingMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Sub-matrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        RingMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }
}

/// Antisymmetric matrix stored by its strict upper triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct AntisymMatrix<T> {
    n: usize,
    upper: Vec<T>,
}

impl<T: Clone> AntisymMatrix<T> {
    /// `f(i, j)` is called for `i < j` only.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut upper = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                upper.push(f(i, j));
            }
        }
        AntisymMatrix { n, upper }
    }

    /// Validates `m = -m^T` with a zero diagonal.
    pub fn from_matrix<R: Ring<Elem = T>>(ring: &R, m: &RingMatrix<T>) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        for i in 0..m.rows() {
            if !ring.is_zero(m.get(i, i)) {
                return Err(Error::NotAntisymmetric(i, i));
            }
            for j in i + 1..m.rows() {
                if !ring.is_zero(&ring.add(m.get(i, j), m.get(j, i))) {
                    return Err(Error::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(AntisymMatrix::from_upper(m.rows(), |i, j| m.get(i, j).clone()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        // row i starts after sum_{r<i} (n - 1 - r) entries
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    /// Entry `(i, j)`, materialising the sign below the diagonal.
    pub fn get<R: Ring<Elem = T>>(&self, ring: &R, i: usize, j: usize) -> T {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[self.slot(i, j)].clone(),
            std::cmp::Ordering::Greater => ring.neg(&self.upper[self.slot(j, i)]),
            std::cmp::Ordering::Equal => ring.zero(),
        }
    }

    pub fn upper(&self, i: usize, j: usize) -> &T {
        &self.upper[self.slot(i, j)]
    }

    pub fn to_matrix<R: Ring<Elem = T>>(&self, ring: &R) -> RingMatrix<T> {
        RingMatrix::from_fn(self.n, self.n, |i, j| self.get(ring, i, j))
    }
}

/// Determinant; fraction-free Bareiss elimination when the ring has exact
/// division, cofactor expansion otherwise.
pub fn det<R: Ring>(ring: &R, m: &RingMatrix<R::Elem>) -> Result<R::Elem> {
    if ring.has_exact_division() {
        det_bareiss(ring, m)
    } else {
        det_cofactor(ring, m)
    }
}

fn check_square<T>(m: &RingMatrix<T>) -> Result<usize> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    if m.rows > 24 {
        return Err(Error::pre(format!("determinant of size {} is out of range", m.rows)));
    }
    Ok(m.rows)
}

/// Laplace expansion row by row, sharing minors over column subsets.
pub fn det_cofactor<R: Ring>(ring: &R, m: &RingMatrix<R::Elem>) -> Result<R::Elem> {
    let n = check_square(m)?;
    let mut layer: HashMap<u32, R::Elem> = HashMap::from([(0u32, ring.one())]);
    for r in 0..n {
        let mut next: HashMap<u32, R::Elem> = HashMap::new();
        for (mask, acc) in &layer {
            for c in 0..n {
                if mask & (1 << c) != 0 || ring.is_zero(m.get(r, c)) {
                    continue;
                }
                let above = (mask >> (c + 1)).count_ones();
                let mut term = ring.mul(acc, m.get(r, c));
                if above % 2 == 1 {
                    term = ring.neg(&term);
                }
                let key = mask | (1 << c);
                let v = match next.remove(&key) {
                    Some(prev) => ring.add(&prev, &term),
                    None => term,
                };
                next.insert(key, v);
            }
        }
        layer = next;
    }
    Ok(layer.remove(&((1u32 << n) - 1)).unwrap_or_else(|| ring.zero()))
}

/// Fraction-free Gaussian elimination.
pub fn det_bareiss<R: Ring>(ring: &R, m: &RingMatrix<R::Elem>) -> Result<R::Elem> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(ring.one());
    }
    let mut a: Vec<Vec<R::Elem>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&a[k][k]) {
            match (k + 1..n).find(|&i| !ring.is_zero(&a[i][k])) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(ring.zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(&ring.mul(&a[i][j], &a[k][k]), &ring.mul(&a[i][k], &a[k][j]));
                a[i][j] = ring
                    .div_exact(&num, &prev)
                    .ok_or_else(|| Error::Internal("inexact division in fraction-free elimination".into()))?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { ring.neg(&d) } else { d })
}

/// Pfaffian by expansion along the first row,
/// `Pf(A) = sum_{j>1} (-1)^j a_{1j} Pf(A without rows/cols 1, j)`,
/// with sub-Pfaffians shared across branches.
pub fn pfaffian<R: Ring>(ring: &R, a: &AntisymMatrix<R::Elem>) -> Result<R::Elem> {
    let n = a.dim();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    if n > 40 {
        return Err(Error::pre(format!("pfaffian of size {n} is out of range")));
    }
    let mut memo: HashMap<u64, R::Elem> = HashMap::new();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(pf_rec(ring, a, full, &mut memo))
}

fn pf_rec<R: Ring>(ring: &R, a: &AntisymMatrix<R::Elem>, mask: u64, memo: &mut HashMap<u64, R::Elem>) -> R::Elem {
    if mask == 0 {
        return ring.one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1u64 << first);
    let mut acc = ring.zero();
    let mut pos = 0usize;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        pos += 1;
        let entry = a.upper(first, j);
        if ring.is_zero(entry) {
            continue;
        }
        let sub = pf_rec(ring, a, rest & !(1u64 << j), memo);
        let term = ring.mul(entry, &sub);
        acc = if pos % 2 == 1 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
    }
    memo.insert(mask, acc.clone());
    acc
}

/// `prod_{k<j} (z_j - z_k)`.
pub fn vandermonde<R: Ring>(ring: &R, z: &[R::Elem]) -> R::Elem {
    let mut acc = ring.one();
    for j in 0..z.len() {
        for k in 0..j {
            acc = ring.mul(&acc, &ring.sub(&z[j], &z[k]));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Scalar;
    use crate::linalg::ScalarRing;

    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }

    #[test]
    fn det_routes_agree() {
        let m = RingMatrix::from_rows(vec![
            vec![s(2), s(-1), s(0), s(3)],
            vec![s(1), s(0), s(4), s(1)],
            vec![s(0), s(5), s(1), s(-2)],
            vec![s(3), s(1), s(1), s(0)],
        ])
        .unwrap();
        let a = det_bareiss(&ScalarRing, &m).unwrap();
        let b = det_cofactor(&ScalarRing, &m).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, s(135));
    }

    #[test]
    fn zero_pivot_swaps() {
        let m = RingMatrix::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]]).unwrap();
        assert_eq!(det(&ScalarRing, &m).unwrap(), s(-1));
    }

    #[test]
    fn not_square() {
        let m = RingMatrix::from_rows(vec![vec![s(0), s(1)]]).unwrap();
        assert!(matches!(det(&ScalarRing, &m), Err(Error::NotSquare { .. })));
        assert_eq!(RingMatrix::from_rows(vec![vec![s(1)], vec![]]), Err(Error::Ragged));
    }

    #[test]
    fn pfaffian_small() {
        let empty: AntisymMatrix<Scalar> = AntisymMatrix::from_upper(0, |_, _| s(0));
        assert_eq!(pfaffian(&ScalarRing, &empty).unwrap(), s(1));
        let two = AntisymMatrix::from_upper(2, |_, _| s(7));
        assert_eq!(pfaffian(&ScalarRing, &two).unwrap(), s(7));
        let four = AntisymMatrix::from_upper(4, |i, j| s((i * 4 + j) as i64 + 1));
        // a12 a34 - a13 a24 + a14 a23 with a_ij = 4i + j + 1 (0-based)
        let expect = 2 * 12 - 3 * 8 + 4 * 7;
        assert_eq!(pfaffian(&ScalarRing, &four).unwrap(), s(expect));
        let three = AntisymMatrix::from_upper(3, |_, _| s(1));
        assert_eq!(pfaffian(&ScalarRing, &three), Err(Error::OddDimension(3)));
    }

    #[test]
    fn antisymmetry_checked() {
        let m = RingMatrix::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]]).unwrap();
        assert_eq!(AntisymMatrix::from_matrix(&ScalarRing, &m), Err(Error::NotAntisymmetric(0, 1)));
    }

    #[test]
    fn vandermonde_values() {
        assert_eq!(vandermonde(&ScalarRing, &[]), s(1));
        assert_eq!(vandermonde(&ScalarRing, &[s(1), s(2), s(4)]), s(1 * 3 * 2));
    }
}
