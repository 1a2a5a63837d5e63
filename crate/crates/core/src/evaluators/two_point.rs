use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinatorics::{binomial, compositions, factorial_product, kostka, partitions};
use crate::error::{Error, Result};
use crate::evaluators::kostka_route::kderiv;
use crate::exact::Scalar;
use crate::jets::KernelJet;
use crate::linalg::{pfaffian, AntisymMatrix, ScalarRing};

type Key = (Vec<i64>, Vec<i64>);

fn cache() -> &'static Mutex<HashMap<Key, BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The multi-sum
/// `sum_{r^(l) |= x_l} sum_{s^(j) |= y_j} prod_{j,l} C(r^(l)_j + s^(j)_l, r^(l)_j)`
/// with `r^(l)` of length `n = y.len()` and `s^(j)` of length `m = x.len()`.
///
/// For fixed `r` the `s` sums factor and give
/// `prod_j C(y_j + c_j + m - 1, y_j)` with `c_j = sum_l r^(l)_j`, so only the
/// column sums of `r` are enumerated.
pub fn a_multisum(x: &[i64], y: &[i64]) -> BigInt {
    if x.iter().chain(y).any(|&v| v < 0) {
        return BigInt::zero();
    }
    let (m, n) = (x.len(), y.len());
    if m == 0 || n == 0 {
        let all_zero = x.iter().chain(y).all(|&v| v == 0);
        return if all_zero { BigInt::one() } else { BigInt::zero() };
    }
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_unstable();
    ys.sort_unstable();
    let key = (xs, ys);
    if let Some(v) = cache().lock().expect("multisum cache").get(&key) {
        return v.clone();
    }
    let mut states: HashMap<Vec<i64>, BigInt> = HashMap::from([(vec![0; n], BigInt::one())]);
    for &xl in &key.0 {
        let comps = compositions(xl as u32, n);
        let mut next: HashMap<Vec<i64>, BigInt> = HashMap::new();
        for (c, cnt) in &states {
            for r in &comps {
                let c2: Vec<i64> = c.iter().zip(r).map(|(a, &b)| a + b as i64).collect();
                *next.entry(c2).or_insert_with(BigInt::zero) += cnt;
            }
        }
        states = next;
    }
    let mut total = BigInt::zero();
    for (c, cnt) in states {
        let prod: BigInt = key.1.iter().zip(&c).map(|(&yj, &cj)| binomial(yj + cj + m as i64 - 1, yj)).product();
        total += cnt * prod;
    }
    cache().lock().expect("multisum cache").insert(key, total.clone());
    total
}

/// All permutations of `0..n` with their signs.
fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i32)>) {
        let n = used.len();
        if cur.len() == n {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if cur[i] > cur[j] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Double alternant of [`a_multisum`]:
/// `sum_{sigma, tau} sgn(sigma) sgn(tau) A(lh_i - nh_sigma(i); mh_i - eh_tau(i))`.
pub fn a_tilde(lh: &[u64], nh: &[u64], mh: &[u64], eh: &[u64]) -> Result<BigInt> {
    if lh.len() != nh.len() || mh.len() != eh.len() {
        return Err(Error::pre(format!(
            "tuple lengths differ: {} vs {} and {} vs {}",
            lh.len(),
            nh.len(),
            mh.len(),
            eh.len()
        )));
    }
    let sp = signed_permutations(lh.len());
    let tp = signed_permutations(mh.len());
    let mut total = BigInt::zero();
    for (s, ss) in &sp {
        let x: Vec<i64> = (0..lh.len()).map(|i| lh[i] as i64 - nh[s[i]] as i64).collect();
        if x.iter().any(|&v| v < 0) {
            continue;
        }
        for (t, ts) in &tp {
            let y: Vec<i64> = (0..mh.len()).map(|i| mh[i] as i64 - eh[t[i]] as i64).collect();
            let v = a_multisum(&x, &y);
            if !v.is_zero() {
                total += v * (ss * ts);
            }
        }
    }
    Ok(total)
}

/// Jets of the antisymmetric kernel at the three point pairs.
#[derive(Clone, Debug)]
pub struct TwoPointJets {
    /// at `(chi, chi)`
    pub cc: KernelJet,
    /// at `(chi, xi)`
    pub cx: KernelJet,
    /// at `(xi, xi)`
    pub xx: KernelJet,
}

impl TwoPointJets {
    pub fn validate(&self) -> Result<()> {
        let (chi, xi) = (&self.cx.points.0, &self.cx.points.1);
        if chi == xi {
            return Err(Error::pre("the two limiting points coincide"));
        }
        if self.cc.points != (chi.clone(), chi.clone()) || self.xx.points != (xi.clone(), xi.clone()) {
            return Err(Error::pre("diagonal jets must sit at (chi, chi) and (xi, xi)"));
        }
        for (i, j) in [&self.cc, &self.xx].iter().enumerate() {
            if !j.antisymmetric_with(j) {
                return Err(Error::NotAntisymmetric(i, i));
            }
        }
        Ok(())
    }

    fn order(&self) -> usize {
        self.cc.order().min(self.cx.order()).min(self.xx.order())
    }
}

/// Kostka form of `lim prod_j (d_{x_{1,j}} d_{x_{2,j}})^alpha_j Pf[A]/Delta_{2k}`
/// with `x_{1,.} -> chi`, `x_{2,.} -> xi`.
pub fn eval_pf_two_point(jets: &TwoPointJets, alpha: &[u32], k: usize) -> Result<Scalar> {
    let size: u32 = alpha.iter().sum();
    eval_pf_two_point_bounded(jets, alpha, k, size)
}

/// As [`eval_pf_two_point`] with the `q, q'` sums running to `qmax`; terms
/// past `|alpha|` vanish.
pub fn eval_pf_two_point_bounded(jets: &TwoPointJets, alpha: &[u32], k: usize, qmax: u32) -> Result<Scalar> {
    jets.validate()?;
    if k == 0 || alpha.len() > k {
        return Err(Error::pre(format!("need k >= 1 and at most k weights, got k = {k}")));
    }
    let size: u32 = alpha.iter().sum();
    let need = qmax as usize + k - 1;
    if jets.order() < need {
        return Err(Error::InsufficientJetOrder { have: jets.order(), need });
    }
    let (chi, xi) = (jets.cx.points.0.clone(), jets.cx.points.1.clone());
    let diff = &xi - &chi;

    let shapes = partitions(size, k);
    let mut weighted = Vec::new();
    for lam in &shapes {
        let kn = kostka(lam, alpha)?;
        if !kn.is_zero() {
            weighted.push((lam.shifted(k)?.values().to_vec(), kn));
        }
    }
    let hats = |q: u32| -> Result<Vec<Vec<u64>>> {
        partitions(q, k).iter().map(|p| Ok(p.shifted(k)?.values().to_vec())).collect()
    };
    let mut nus = Vec::new();
    for q in 0..=qmax {
        for h in hats(q)? {
            nus.push((q, h));
        }
    }
    let terms: Vec<Scalar> = nus
        .par_iter()
        .map(|(q, nh)| {
            let mut acc = Scalar::zero();
            for (qp, eh) in &nus {
                let mut s = BigInt::zero();
                for (lh, kl) in &weighted {
                    for (mh, km) in &weighted {
                        let a = a_tilde(lh, nh, mh, eh)?;
                        if !a.is_zero() {
                            s += kl * km * a;
                        }
                    }
                }
                if s.is_zero() {
                    continue;
                }
                let n = 2 * k;
                let all: Vec<u64> = nh.iter().chain(eh.iter()).copied().collect();
                let mut table = vec![vec![Scalar::zero(); n]; n];
                for i in 0..n {
                    for j in i + 1..n {
                        table[i][j] = match (i < k, j < k) {
                            (true, true) => kderiv(&jets.cc, all[i], all[j])?,
                            (true, false) => kderiv(&jets.cx, all[i], all[j])?,
                            _ => kderiv(&jets.xx, all[i], all[j])?,
                        };
                    }
                }
                let pf = pfaffian(&ScalarRing, &AntisymMatrix::from_upper(n, |i, j| table[i][j].clone()))?;
                if pf.is_zero() {
                    continue;
                }
                let w = BigRational::new(s, factorial_product(nh) * factorial_product(eh));
                let sign = if qp % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
                acc += &(pf.scale(&w) * sign * diff.pow(q + qp));
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let total: Scalar = terms.into_iter().sum();
    let af = factorial_product(&alpha.iter().map(|&a| a as u64).collect::<Vec<_>>());
    let sign = if size % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
    let denom = diff.pow(2 * size + (k * k) as u32);
    (total * Scalar::big(&af * &af) * sign).checked_div(&denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multisum_small_cases() {
        assert_eq!(a_multisum(&[], &[]), BigInt::one());
        assert_eq!(a_multisum(&[3], &[2]), BigInt::from(10));
        assert_eq!(a_multisum(&[-1, 2], &[0, 0]), BigInt::zero());
    }

    #[test]
    fn multisum_matches_definition() {
        // direct enumeration over r and s for m = n = 2
        let brute = |x: &[i64], y: &[i64]| -> BigInt {
            let mut tot = BigInt::zero();
            for r0 in compositions(x[0] as u32, 2) {
                for r1 in compositions(x[1] as u32, 2) {
                    for s0 in compositions(y[0] as u32, 2) {
                        for s1 in compositions(y[1] as u32, 2) {
                            let r = [&r0, &r1];
                            let s = [&s0, &s1];
                            let mut p = BigInt::one();
                            for j in 0..2 {
                                for l in 0..2 {
                                    let (a, b) = (r[l][j] as i64, s[j][l] as i64);
                                    p *= binomial(a + b, a);
                                }
                            }
                            tot += p;
                        }
                    }
                }
            }
            tot
        };
        for (x, y) in [([1, 2], [0, 3]), ([2, 2], [1, 1]), ([0, 3], [2, 0])] {
            assert_eq!(a_multisum(&x, &y), brute(&x, &y));
        }
    }
}
