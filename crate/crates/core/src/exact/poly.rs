use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::Scalar;

/// Immutable, shared list of variable names.
///
/// Two registries are compatible when their names agree; there is no
/// implicit re-indexing between differently ordered registries.
#[derive(Clone)]
pub struct Registry(Arc<[String]>);

impl Registry {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Registry(names.into_iter().map(Into::into).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for Registry {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Registry {}

impl fmt::Debug for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Sparse multivariate polynomial with exact coefficients.
#[derive(Clone, PartialEq)]
pub struct MultiPoly {
    reg: Registry,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MultiPoly {
    pub fn zero(reg: &Registry) -> Self {
        MultiPoly { reg: reg.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(reg: &Registry, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(reg);
        p.add_term(vec![0; reg.len()], c);
        p
    }

    pub fn one(reg: &Registry) -> Self {
        MultiPoly::constant(reg, Scalar::one())
    }

    pub fn var(reg: &Registry, i: usize) -> Self {
        let mut e = vec![0; reg.len()];
        e[i] = 1;
        MultiPoly::monomial(reg, e, Scalar::one())
    }

    pub fn monomial(reg: &Registry, exps: Vec<u32>, c: Scalar) -> Self {
        assert_eq!(exps.len(), reg.len(), "exponent vector length");
        let mut p = MultiPoly::zero(reg);
        p.add_term(exps, c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I>(reg: &Registry, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = MultiPoly::zero(reg);
        for (e, c) in terms {
            if e.len() != reg.len() {
                return Err(Error::pre(format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    reg.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn registry(&self) -> &Registry {
        &self.reg
    }

    pub fn nvars(&self) -> usize {
        self.reg.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Constant term.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.nvars()])
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn check(&self, other: &MultiPoly) -> Result<()> {
        if self.reg == other.reg {
            Ok(())
        } else {
            Err(Error::RegistryMismatch)
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        Ok(self.mul_filtered(other, |_| true))
    }

    /// Product keeping only monomials accepted by `keep`.
    pub(crate) fn mul_filtered(&self, other: &MultiPoly, keep: impl Fn(&[u32]) -> bool) -> MultiPoly {
        let mut acc: std::collections::HashMap<Vec<u32>, Scalar> = std::collections::HashMap::new();
        let mut e = vec![0u32; self.nvars()];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                for k in 0..e.len() {
                    e[k] = ea[k] + eb[k];
                }
                if !keep(&e) {
                    continue;
                }
                let prod = ca * cb;
                match acc.get_mut(&e) {
                    Some(v) => *v += &prod,
                    None => {
                        acc.insert(e.clone(), prod);
                    }
                }
            }
        }
        MultiPoly {
            reg: self.reg.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.reg);
        }
        MultiPoly {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.reg);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.reg);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * &Scalar::int(e[i] as i64));
        }
        out
    }

    pub fn derivative_n(&self, i: usize, n: u32) -> MultiPoly {
        (0..n).fold(self.clone(), |p, _| p.derivative(i))
    }

    /// Substitutes the scalar `v` for variable `i`; the registry is kept.
    pub fn substitute(&self, i: usize, v: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.reg);
        let mut powers: Vec<Scalar> = vec![Scalar::one()];
        for (e, c) in &self.terms {
            while powers.len() <= e[i] as usize {
                let next = powers.last().unwrap() * v;
                powers.push(next);
            }
            let mut f = e.clone();
            f[i] = 0;
            out.add_term(f, c * &powers[e[i] as usize]);
        }
        out
    }

    /// Replaces variable `j` by variable `i`.
    pub fn substitute_var(&self, j: usize, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.reg);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f[i] += f[j];
            if i != j {
                f[j] = 0;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Evaluates at a full point.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars() {
            return Err(Error::pre(format!(
                "evaluation point has {} coordinates for {} variables",
                point.len(),
                self.nvars()
            )));
        }
        let mut p = self.clone();
        for (i, v) in point.iter().enumerate() {
            p = p.substitute(i, v);
        }
        Ok(p.constant_term())
    }

    /// Exact quotient `self / (x_j - x_i)`.
    ///
    /// The remainder `self|_{x_j = x_i}` is computed first; a nonzero
    /// remainder is reported as [`Error::NotDivisible`].
    pub fn divide_by_linear(&self, i: usize, j: usize) -> Result<MultiPoly> {
        if i == j || i >= self.nvars() || j >= self.nvars() {
            return Err(Error::pre(format!("bad linear factor x{j} - x{i}")));
        }
        if !self.substitute_var(j, i).is_zero() {
            return Err(Error::NotDivisible { i, j });
        }
        // synthetic division in x_j with coefficients in the other variables
        let n = self.degree_in(j) as usize;
        let mut coeffs = vec![MultiPoly::zero(&self.reg); n + 1];
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let d = f[j] as usize;
            f[j] = 0;
            coeffs[d].add_term(f, c.clone());
        }
        let xi = MultiPoly::var(&self.reg, i);
        let mut q = MultiPoly::zero(&self.reg);
        let mut b = MultiPoly::zero(&self.reg);
        for d in (1..=n).rev() {
            b = &coeffs[d] + &(&xi * &b);
            for (e, c) in &b.terms {
                let mut f = e.clone();
                f[j] = (d - 1) as u32;
                q.add_term(f, c.clone());
            }
        }
        Ok(q)
    }

    /// Exact multivariate quotient, `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &MultiPoly) -> Result<Option<MultiPoly>> {
        self.check(d)?;
        let Some((dl, dc)) = d.terms.iter().next_back() else {
            return Err(Error::DivisionByZero);
        };
        let dinv = dc.inv()?;
        let mut rem = self.clone();
        let mut q = MultiPoly::zero(&self.reg);
        while let Some((rl, rc)) = rem.terms.iter().next_back() {
            if rl.iter().zip(dl).any(|(a, b)| a < b) {
                return Ok(None);
            }
            let e: Vec<u32> = rl.iter().zip(dl).map(|(a, b)| a - b).collect();
            let t = MultiPoly::monomial(&self.reg, e, rc * &dinv);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Ok(Some(q))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*{}", self.reg.name(i))?,
                    _ => write!(f, "*{}^{}", self.reg.name(i), p)?,
                }
            }
        }
        Ok(())
    }
}

macro_rules! poly_ops {
    ($($tr:ident $m:ident $try:ident),*) => {$(
        /// Panics when the registries differ; the `try_` methods report it instead.
        impl<'a> $tr<&'a MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                self.$try(rhs).expect("registry mismatch")
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly { (&self).$m(&rhs) }
        }
    )*};
}
poly_ops!(Add add try_add, Sub sub try_sub, Mul mul try_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&Scalar::int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Registry {
        Registry::new(["x", "y"])
    }

    #[test]
    fn divide_difference_of_squares() {
        let r = xy();
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        let p = &(&y * &y) - &(&x * &x);
        let q = p.divide_by_linear(0, 1).unwrap();
        assert_eq!(q, &x + &y);
    }

    #[test]
    fn divide_reports_remainder() {
        let r = xy();
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        let p = &(&y * &y) + &x;
        assert_eq!(p.divide_by_linear(0, 1), Err(Error::NotDivisible { i: 0, j: 1 }));
    }

    #[test]
    fn registry_mismatch_is_error() {
        let a = MultiPoly::var(&xy(), 0);
        let b = MultiPoly::var(&Registry::new(["y", "x"]), 0);
        assert_eq!(a.try_add(&b), Err(Error::RegistryMismatch));
        let c = MultiPoly::var(&xy(), 1);
        assert!(a.try_mul(&c).is_ok());
    }

    #[test]
    fn exact_division() {
        let r = xy();
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        let a = &(&x * &x) + &(&y * &MultiPoly::constant(&r, Scalar::int(3)));
        let b = &x - &y;
        let p = &a * &b;
        assert_eq!(p.exact_div(&b).unwrap(), Some(a.clone()));
        assert_eq!((&p + &x).exact_div(&b).unwrap(), None);
    }

    #[test]
    fn derivative_and_eval() {
        let r = xy();
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        let p = &x.pow(3) * &y;
        assert_eq!(p.derivative(0), &MultiPoly::constant(&r, Scalar::int(3)) * &(&x.pow(2) * &y));
        assert_eq!(p.eval(&[Scalar::int(2), Scalar::ratio(1, 2)]).unwrap(), Scalar::int(4));
    }
}
