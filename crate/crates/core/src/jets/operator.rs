use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{binomial, factorial, falling};
use crate::error::{Error, Result};
use crate::exact::{Scalar, TruncatedSeries};

/// Derivative symbol `d/du_{point, order}`; `order` starts at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct USym {
    pub point: usize,
    pub order: usize,
}

type DMono = Vec<(USym, u32)>;

/// Constant-coefficient polynomial in commuting derivatives `d/du_{l,j}`.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOperator {
    terms: BTreeMap<DMono, BigInt>,
}

fn mono_mul(a: &DMono, b: &DMono) -> DMono {
    let mut m: BTreeMap<USym, u32> = a.iter().copied().collect();
    for &(s, e) in b {
        *m.entry(s).or_insert(0) += e;
    }
    m.into_iter().collect()
}

impl DiffOperator {
    pub fn one() -> Self {
        DiffOperator { terms: BTreeMap::from([(Vec::new(), BigInt::one())]) }
    }

    pub fn zero() -> Self {
        DiffOperator { terms: BTreeMap::new() }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[(USym, u32)], &BigInt)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    /// Coefficient of `prod d_{u_{0,j}}^{e_j}` for a single-point operator,
    /// given as `(order, exponent)` pairs.
    pub fn coeff(&self, mono: &[(usize, u32)]) -> BigInt {
        let mut key: DMono = mono
            .iter()
            .filter(|&&(_, e)| e > 0)
            .map(|&(j, e)| (USym { point: 0, order: j }, e))
            .collect();
        key.sort();
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &DiffOperator) -> DiffOperator {
        let mut out = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = out.entry(mono_mul(ma, mb)).or_insert_with(BigInt::zero);
                *e += ca * cb;
            }
        }
        out.retain(|_, c: &mut BigInt| !c.is_zero());
        DiffOperator { terms: out }
    }

    pub fn pow(&self, n: u32) -> DiffOperator {
        (0..n).fold(DiffOperator::one(), |acc, _| acc.mul(self))
    }

    /// Moves every symbol to `point`.
    pub fn at_point(&self, point: usize) -> DiffOperator {
        DiffOperator {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.iter().map(|&(s, e)| (USym { point, order: s.order }, e)).collect(), c.clone()))
                .collect(),
        }
    }

    /// Weighted degrees `sum_j j * e_j` that occur, per point.
    pub fn weights(&self) -> Vec<BTreeMap<usize, u32>> {
        self.terms
            .keys()
            .map(|m| {
                let mut w = BTreeMap::new();
                for &(s, e) in m {
                    *w.entry(s.point).or_insert(0) += s.order as u32 * e;
                }
                w
            })
            .collect()
    }

    /// Operator after `u_j -> s^j u_j`, as `(power of s, operator)` pairs.
    ///
    /// Each derivative `d/du_j` picks up `s^-j`.
    pub fn rescaled(&self) -> BTreeMap<i64, DiffOperator> {
        let mut out: BTreeMap<i64, DiffOperator> = BTreeMap::new();
        for (m, c) in &self.terms {
            let w: i64 = m.iter().map(|&(s, e)| s.order as i64 * e as i64).sum();
            out.entry(-w).or_insert_with(DiffOperator::zero).terms.insert(m.clone(), c.clone());
        }
        out
    }

    /// `lim_{u -> 0}` of the operator applied to a series: each monomial
    /// `prod d^{e}` reads `prod e! * [u^e] series`.
    pub fn apply(&self, series: &TruncatedSeries, index: impl Fn(USym) -> Option<usize>) -> Result<Scalar> {
        let n = series.registry().len();
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; n];
            let mut fact = BigInt::one();
            for &(s, e) in m {
                let i = index(s).ok_or_else(|| {
                    Error::InsufficientTruncation(format!("no variable for u{}_{}", s.point + 1, s.order))
                })?;
                exps[i] += e;
                fact *= factorial(e as u64);
            }
            if !series.truncation().admits(&exps) {
                return Err(Error::InsufficientTruncation(format!("monomial {exps:?} is cut off")));
            }
            let v = series.coeff(&exps);
            if !v.is_zero() {
                total += &(v * Scalar::big(c * fact));
            }
        }
        Ok(total)
    }
}

fn sym_label(s: USym, multi: bool) -> String {
    if multi {
        format!("∂u{}_{}", s.point + 1, s.order)
    } else {
        format!("∂u{}", s.order)
    }
}

impl fmt::Display for DiffOperator {
    /// Terms ordered by their multiset of orders read as a partition, e.g.
    /// `∂u1^4 + 6∂u2∂u1^2 + 3∂u2^2 + 4∂u3∂u1 + ∂u4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let multi = self.terms.keys().flatten().any(|(s, _)| s.point != 0);
        let mut rows: Vec<(Vec<(usize, usize)>, String)> = Vec::new();
        for (m, c) in &self.terms {
            let mut key: Vec<(usize, usize)> = Vec::new();
            for &(s, e) in m {
                for _ in 0..e {
                    key.push((s.point, s.order));
                }
            }
            key.sort_by(|a, b| b.cmp(a));
            let mut body = String::new();
            for &(s, e) in m.iter().rev() {
                body.push_str(&sym_label(s, multi));
                if e > 1 {
                    body.push_str(&format!("^{e}"));
                }
            }
            let coeff = if body.is_empty() {
                c.to_string()
            } else if c.is_one() {
                String::new()
            } else if *c == -BigInt::one() {
                "-".into()
            } else {
                c.to_string()
            };
            rows.push((key, format!("{coeff}{body}")));
        }
        rows.sort();
        let text: Vec<String> = rows.into_iter().map(|(_, t)| t).collect();
        write!(f, "{}", text.join(" + ").replace("+ -", "- "))
    }
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of the Weyl algebra in `u_1..u_n`, normal ordered with all
/// multiplications left of all derivatives: keys are `(u exponents,
/// derivative exponents)`.
#[derive(Clone, Debug, PartialEq)]
struct Weyl {
    n: usize,
    terms: BTreeMap<(Vec<u32>, Vec<u32>), BigInt>,
}

impl Weyl {
    fn term(n: usize, u: Vec<u32>, d: Vec<u32>, c: BigInt) -> Self {
        Weyl { n, terms: BTreeMap::from([((u, d), c)]) }
    }

    fn add(&mut self, other: &Weyl) {
        for (k, c) in &other.terms {
            *self.terms.entry(k.clone()).or_insert_with(BigInt::zero) += c;
        }
        self.terms.retain(|_, c| !c.is_zero());
    }

    /// Product, re-normal-ordered with `d^b u^c = sum_t C(b,t) c!/(c-t)! u^{c-t} d^{b-t}`.
    fn mul(&self, other: &Weyl) -> Weyl {
        let mut out = Weyl { n: self.n, terms: BTreeMap::new() };
        for ((ua, da), ca) in &self.terms {
            for ((ub, db), cb) in &other.terms {
                let mut partial: Vec<(Vec<u32>, Vec<u32>, BigInt)> = vec![(ua.clone(), Vec::new(), ca * cb)];
                for i in 0..self.n {
                    let (b, c) = (da[i], ub[i]);
                    let mut next = Vec::new();
                    for (u, d, coef) in &partial {
                        for t in 0..=b.min(c) {
                            let w = binomial(b as i64, t as i64) * falling(c as i64, t);
                            let mut u2 = u.clone();
                            u2[i] += c - t;
                            let mut d2 = d.clone();
                            d2.push(b - t);
                            next.push((u2, d2, coef * w));
                        }
                    }
                    partial = next;
                }
                for (u, d, coef) in partial {
                    let d: Vec<u32> = d.iter().zip(db).map(|(x, y)| x + y).collect();
                    *out.terms.entry((u, d)).or_insert_with(BigInt::zero) += coef;
                }
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    /// Sets `u = 0` after normal ordering.
    fn at_zero(&self) -> Weyl {
        Weyl {
            n: self.n,
            terms: self.terms.iter().filter(|((u, _), _)| u.iter().all(|&e| e == 0)).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }
}

/// `lim_{u->0} D_{u,k}` for one point, built from
/// `D_k = D_{k-1} [d_{u_1} + sum_{l=1}^{k-1} u_l d_{u_{l+1}}]` in the Weyl
/// algebra. `D_0` is the identity.
pub fn build_d(k: usize) -> DiffOperator {
    if k == 0 {
        return DiffOperator::one();
    }
    let n = k;
    let unit = |i: usize| {
        let mut v = vec![0u32; n];
        v[i] = 1;
        v
    };
    let mut d = Weyl::term(n, vec![0; n], unit(0), BigInt::one());
    for m in 2..=k {
        let mut step = Weyl::term(n, vec![0; n], unit(0), BigInt::one());
        for l in 1..m {
            step.add(&Weyl::term(n, unit(l - 1), unit(l), BigInt::one()));
        }
        d = d.mul(&step).at_zero();
    }
    let mut out = DiffOperator::zero();
    for ((_, dexp), c) in d.terms {
        let mono: DMono = dexp
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e > 0)
            .map(|(j, &e)| (USym { point: 0, order: j + 1 }, e))
            .collect();
        out.terms.insert(mono, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        assert_eq!(build_d(1).to_string(), "∂u1");
        assert_eq!(build_d(2).to_string(), "∂u1^2 + ∂u2");
        assert_eq!(build_d(3).to_string(), "∂u1^3 + 3∂u2∂u1 + ∂u3");
        assert_eq!(build_d(4).to_string(), "∂u1^4 + 6∂u2∂u1^2 + 3∂u2^2 + 4∂u3∂u1 + ∂u4");
        assert_eq!(build_d(0).to_string(), "1");
    }

    #[test]
    fn weyl_commutator() {
        // d u = u d + 1
        let d = Weyl::term(1, vec![0], vec![1], BigInt::one());
        let u = Weyl::term(1, vec![1], vec![0], BigInt::one());
        let p = d.mul(&u);
        assert_eq!(p.terms.len(), 2);
        assert_eq!(p.terms[&(vec![0], vec![0])], BigInt::one());
        assert_eq!(p.terms[&(vec![1], vec![1])], BigInt::one());
    }
}
