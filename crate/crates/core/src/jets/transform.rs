use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, factorial};
use crate::error::{Error, Result};
use crate::exact::{CapGroup, MultiPoly, Registry, Scalar, TruncatedSeries, Truncation};
use crate::jets::operator::{build_d, DiffOperator, USym};
use crate::jets::{FunctionJet, KernelJet};
use crate::linalg::SeriesRing;

/// Limiting points `chi_l` and the derivative orders `n_{l,i}` of the
/// variables that approach each of them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivativeSpec {
    pub points: Vec<Scalar>,
    pub orders: Vec<Vec<u32>>,
}

impl DerivativeSpec {
    pub fn new(points: Vec<Scalar>, orders: Vec<Vec<u32>>) -> Result<Self> {
        let s = DerivativeSpec { points, orders };
        s.validate()?;
        Ok(s)
    }

    pub fn single(point: Scalar, orders: Vec<u32>) -> Result<Self> {
        DerivativeSpec::new(vec![point], vec![orders])
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.is_empty() || self.points.len() != self.orders.len() {
            return Err(Error::pre("derivative spec needs one order list per point"));
        }
        if self.orders.iter().any(Vec::is_empty) {
            return Err(Error::pre("every limiting point needs at least one variable"));
        }
        for j in 0..self.points.len() {
            for i in 0..j {
                if self.points[i] == self.points[j] {
                    return Err(Error::pre("limiting points must be distinct"));
                }
            }
        }
        Ok(())
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    /// `P_l`
    pub fn count(&self, l: usize) -> usize {
        self.orders[l].len()
    }

    /// `P = sum_l P_l`
    pub fn total(&self) -> usize {
        self.orders.iter().map(Vec::len).sum()
    }

    /// `sum_i n_{l,i}`, the weighted u-degree read by the operator at `l`.
    pub fn weight(&self, l: usize) -> u32 {
        self.orders[l].iter().sum()
    }

    pub fn max_order(&self) -> u32 {
        self.orders.iter().flatten().copied().max().unwrap_or(0)
    }

    /// `m_{l,k}`: how many variables at point `l` carry order `k`.
    pub fn multiplicity(&self, l: usize, k: u32) -> usize {
        self.orders[l].iter().filter(|&&n| n == k).count()
    }

    /// Jet order needed at point `l`: `P_l - 1 + sum_i n_{l,i}`.
    pub fn jet_order_needed(&self, l: usize) -> usize {
        self.count(l) - 1 + self.weight(l) as usize
    }

    pub fn max_jet_order(&self) -> usize {
        (0..self.num_points()).map(|l| self.jet_order_needed(l)).max().unwrap_or(0)
    }

    /// Index of the first variable attached to point `l`.
    pub fn offset(&self, l: usize) -> usize {
        self.orders[..l].iter().map(Vec::len).sum()
    }

    /// Point index of global variable `a` (0-based).
    pub fn point_of(&self, a: usize) -> usize {
        let mut acc = 0;
        for (l, o) in self.orders.iter().enumerate() {
            acc += o.len();
            if a < acc {
                return l;
            }
        }
        panic!("variable {a} out of range")
    }

    /// `prod_l prod_i D_{u_l, n_{l,i}}`, with point `l` relabelled to
    /// `l + shift`.
    pub fn operator(&self, shift: usize) -> DiffOperator {
        let mut op = DiffOperator::one();
        for (l, orders) in self.orders.iter().enumerate() {
            for &n in orders {
                if n > 0 {
                    op = op.mul(&build_d(n as usize).at_point(l + shift));
                }
            }
        }
        op
    }
}

/// Formal variables `u_{l,j}`, `j = 1..=d`, with one weighted cap per point:
/// `sum_j j * deg(u_{l,j}) <= W_l`.
#[derive(Clone, Debug)]
pub struct ULayout {
    caps: Vec<u32>,
    d: usize,
    ring: SeriesRing,
}

impl ULayout {
    pub fn new(caps: Vec<u32>, d: usize) -> Self {
        let d = d.max(1);
        let names: Vec<String> = (0..caps.len())
            .flat_map(|l| (1..=d).map(move |j| format!("u{}_{}", l + 1, j)))
            .collect();
        let reg = Registry::new(names);
        let groups = caps
            .iter()
            .enumerate()
            .map(|(l, &cap)| CapGroup { vars: (1..=d).map(|j| (l * d + j - 1, j as u32)).collect(), cap })
            .collect();
        ULayout { caps, d, ring: SeriesRing::new(&reg, Truncation::new(groups)) }
    }

    /// One block per point of each spec, in order.
    pub fn for_specs(specs: &[&DerivativeSpec]) -> Self {
        let caps = specs.iter().flat_map(|s| (0..s.num_points()).map(|l| s.weight(l))).collect();
        let d = specs.iter().map(|s| s.max_order()).max().unwrap_or(1) as usize;
        ULayout::new(caps, d)
    }

    pub fn ring(&self) -> &SeriesRing {
        &self.ring
    }

    pub fn registry(&self) -> &Registry {
        &self.ring.reg
    }

    pub fn truncation(&self) -> &Arc<Truncation> {
        &self.ring.trunc
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn cap(&self, block: usize) -> u32 {
        self.caps[block]
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn index(&self, s: USym) -> Option<usize> {
        (s.point < self.caps.len() && s.order >= 1 && s.order <= self.d).then(|| s.point * self.d + s.order - 1)
    }

    fn var(&self, block: usize, j: usize) -> TruncatedSeries {
        self.ring.var(block * self.d + j - 1)
    }

    fn zero(&self) -> TruncatedSeries {
        TruncatedSeries::zero(self.registry(), self.truncation())
    }

    fn constant(&self, c: Scalar) -> TruncatedSeries {
        TruncatedSeries::constant(self.registry(), self.truncation(), c)
    }

    /// `lim_{u->0} op series`.
    pub fn apply(&self, op: &DiffOperator, series: &TruncatedSeries) -> Result<Scalar> {
        op.apply(series, |s| self.index(s))
    }
}

type ZSeries = Vec<TruncatedSeries>;

fn z_mul(layout: &ULayout, a: &ZSeries, b: &ZSeries) -> Result<ZSeries> {
    let n = a.len();
    let mut out = vec![layout.zero(); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n - i {
            if b[j].is_zero() {
                continue;
            }
            out[i + j] = out[i + j].try_add(&a[i].try_mul(&b[j])?)?;
        }
    }
    Ok(out)
}

fn z_mul_scalar(layout: &ULayout, a: &ZSeries, b: &[Scalar]) -> Result<ZSeries> {
    let n = a.len();
    let mut out = vec![layout.zero(); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n - i {
            if b[j].is_zero() {
                continue;
            }
            out[i + j] = out[i + j].try_add(&a[i].scale(&b[j]))?;
        }
    }
    Ok(out)
}

fn scalar_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let n = a.len();
    let mut out = vec![Scalar::zero(); n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] += &(&a[i] * &b[j]);
        }
    }
    out
}

/// `exp(g)` for a z-series whose coefficients have no constant u-term.
fn z_exp(layout: &ULayout, g: &ZSeries) -> Result<ZSeries> {
    let n = g.len();
    let mut acc = vec![layout.zero(); n];
    acc[0] = layout.constant(Scalar::one());
    let mut term = acc.clone();
    let mut k = 1i64;
    loop {
        // term = g^k / k!
        let inv = Scalar::ratio(1, k);
        term = z_mul(layout, &term, g)?.iter().map(|t| t.scale(&inv)).collect();
        if term.iter().all(TruncatedSeries::is_zero) {
            break;
        }
        for (a, t) in acc.iter_mut().zip(&term) {
            *a = a.try_add(t)?;
        }
        k += 1;
    }
    Ok(acc)
}

/// Taylor coefficients of `(z + delta)^(-p)` up to `z^n`.
fn inverse_power(delta: &Scalar, p: u32, n: usize) -> Result<Vec<Scalar>> {
    let dinv = delta.inv()?;
    let base = dinv.pow(p);
    let mut out = Vec::with_capacity(n + 1);
    let mut dpow = base;
    for i in 0..=n {
        let c = Scalar::big(binomial(p as i64 + i as i64 - 1, i as i64));
        let sign = if i % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
        out.push(&(&c * &sign) * &dpow);
        dpow = &dpow * &dinv;
    }
    if p == 0 {
        out = vec![Scalar::zero(); n + 1];
        out[0] = Scalar::one();
    }
    Ok(out)
}

/// Residue weights of the transform attached to one derivative spec:
/// `weights[alpha-1][l][s] = Res_{zeta=chi_l} (zeta-chi_l)^s g_alpha(zeta)` with
/// `g_alpha(zeta) = exp[sum_m F_d(u_m, chi_m, zeta)] zeta^{P-alpha} / prod_m (zeta-chi_m)^{P_m}`
/// and `F_d(u, chi, zeta) = sum_j (j-1)! u_j / (zeta - chi)^j`.
///
/// `K_alpha f = sum_l sum_s c^{(l)}_s weights[alpha-1][l][s]` for jets `c^{(l)}`
/// of `f` at `chi_l`.
#[derive(Clone, Debug)]
pub struct KTransform {
    spec: DerivativeSpec,
    weights: Vec<Vec<Vec<TruncatedSeries>>>,
}

impl KTransform {
    /// `block` is the index of the spec's first point inside `layout`.
    pub fn new(spec: &DerivativeSpec, layout: &ULayout, block: usize) -> Result<Self> {
        spec.validate()?;
        let big_p = spec.total();
        let lpts = spec.num_points();
        let d = layout.d();
        let mut local = Vec::with_capacity(lpts);
        let mut others = Vec::with_capacity(lpts);
        for l in 0..lpts {
            let z = spec.jet_order_needed(l);
            let w = spec.weight(l) as usize;
            // exp of the essential singularity at chi_l, in powers of 1/(zeta - chi_l)
            let mut g = vec![layout.zero(); w + 1];
            for j in 1..=d.min(w) {
                g[j] = layout.var(block + l, j).scale(&Scalar::big(factorial(j as u64 - 1)));
            }
            local.push(z_exp(layout, &g)?);
            // exp factors of the other points, analytic at chi_l
            let mut x = vec![layout.zero(); z + 1];
            x[0] = layout.constant(Scalar::one());
            for m in (0..lpts).filter(|&m| m != l) {
                let delta = &spec.points[l] - &spec.points[m];
                let mut gm = vec![layout.zero(); z + 1];
                for j in 1..=d {
                    let u = layout.var(block + m, j);
                    if u.is_zero() {
                        continue;
                    }
                    let ser = inverse_power(&delta, j as u32, z)?;
                    let c = Scalar::big(factorial(j as u64 - 1));
                    for (slot, s) in gm.iter_mut().zip(&ser) {
                        *slot = slot.try_add(&u.scale(&(&c * s)))?;
                    }
                }
                x = z_mul(layout, &x, &z_exp(layout, &gm)?)?;
            }
            others.push(x);
        }
        let mut weights = Vec::with_capacity(big_p);
        for alpha in 1..=big_p {
            let e = (big_p - alpha) as i64;
            let mut per_point = Vec::with_capacity(lpts);
            for l in 0..lpts {
                let z = spec.jet_order_needed(l);
                let chi = &spec.points[l];
                // zeta^{P-alpha} expanded about chi_l
                let mut poly: Vec<Scalar> = (0..=z as i64)
                    .map(|i| if i <= e { Scalar::big(binomial(e, i)) * chi.pow((e - i) as u32) } else { Scalar::zero() })
                    .collect();
                for m in (0..lpts).filter(|&m| m != l) {
                    let delta = chi - &spec.points[m];
                    poly = scalar_mul(&poly, &inverse_power(&delta, spec.count(m) as u32, z)?);
                }
                let rest = z_mul_scalar(layout, &others[l], &poly)?;
                let pl = spec.count(l);
                let e_neg = &local[l];
                let mut ws = Vec::with_capacity(z + 1);
                for s in 0..=z {
                    let mut acc = layout.zero();
                    for (p, ep) in e_neg.iter().enumerate() {
                        let idx = pl as i64 - 1 + p as i64 - s as i64;
                        if idx < 0 || idx as usize > z || ep.is_zero() {
                            continue;
                        }
                        acc = acc.try_add(&ep.try_mul(&rest[idx as usize])?)?;
                    }
                    ws.push(acc);
                }
                per_point.push(ws);
            }
            weights.push(per_point);
        }
        Ok(KTransform { spec: spec.clone(), weights })
    }

    pub fn spec(&self) -> &DerivativeSpec {
        &self.spec
    }

    fn check_alpha(&self, alpha: usize) -> Result<()> {
        if alpha == 0 || alpha > self.spec.total() {
            return Err(Error::pre(format!("index {alpha} outside 1..={}", self.spec.total())));
        }
        Ok(())
    }

    /// `[K_alpha f](u)` from jets of `f` at every limiting point.
    pub fn apply(&self, jets: &[FunctionJet], alpha: usize, layout: &ULayout) -> Result<TruncatedSeries> {
        self.check_alpha(alpha)?;
        if jets.len() != self.spec.num_points() {
            return Err(Error::pre("one function jet per limiting point is required"));
        }
        let mut acc = layout.zero();
        for (l, jet) in jets.iter().enumerate() {
            if jet.point != self.spec.points[l] {
                return Err(Error::pre("jet point differs from the limiting point"));
            }
            let w = &self.weights[alpha - 1][l];
            jet.require(w.len() - 1)?;
            for (s, ws) in w.iter().enumerate() {
                if !jet.coeffs[s].is_zero() {
                    acc = acc.try_add(&ws.scale(&jet.coeffs[s]))?;
                }
            }
        }
        Ok(acc)
    }

    /// `[K_alpha (x) K'_gamma A](u, v)` with `self` acting on the first
    /// argument and `other` on the second; `jets[l][m]` is the jet of `A` at
    /// `(chi_l, xi_m)`.
    pub fn apply_kernel(
        &self,
        other: &KTransform,
        jets: &[Vec<KernelJet>],
        alpha: usize,
        gamma: usize,
        layout: &ULayout,
    ) -> Result<TruncatedSeries> {
        self.check_alpha(alpha)?;
        other.check_alpha(gamma)?;
        let mut acc = layout.zero();
        for (l, row) in jets.iter().enumerate() {
            for (m, jet) in row.iter().enumerate() {
                if jet.points.0 != self.spec.points[l] || jet.points.1 != other.spec.points[m] {
                    return Err(Error::pre("kernel jet points differ from the limiting points"));
                }
                let wa = &self.weights[alpha - 1][l];
                let wb = &other.weights[gamma - 1][m];
                jet.require(wa.len().max(wb.len()) - 1)?;
                for (a, sa) in wa.iter().enumerate() {
                    if sa.is_zero() {
                        continue;
                    }
                    let mut inner = layout.zero();
                    for (b, sb) in wb.iter().enumerate() {
                        let c = &jet.coeffs[a][b];
                        if !c.is_zero() {
                            inner = inner.try_add(&sb.scale(c))?;
                        }
                    }
                    if !inner.is_zero() {
                        acc = acc.try_add(&sa.try_mul(&inner)?)?;
                    }
                }
            }
        }
        Ok(acc)
    }
}

/// Borel-type series `[B_{chi,d} f](u)` in `u_1..u_d`: the coefficient of
/// `prod_j u_j^{m_j}` is `c_s prod_j ((j-1)!^{m_j} / m_j!)` with
/// `s = sum_j j m_j`.
///
/// `caps[j-1]` bounds the degree of `u_j`; the jet must reach
/// `sum_j j * caps[j-1]`.
pub fn borel(jet: &FunctionJet, d: usize, caps: &[u32]) -> Result<TruncatedSeries> {
    if caps.len() != d || d == 0 {
        return Err(Error::pre("borel needs one cap per variable and d >= 1"));
    }
    let need: usize = caps.iter().enumerate().map(|(j, &c)| (j + 1) * c as usize).sum();
    jet.require(need)?;
    let trunc = Arc::new(Truncation::per_variable(caps));
    borel_into(jet, d, &trunc, |m| m.iter().zip(caps).all(|(a, b)| a <= b))
}

/// As [`borel`] with the weighted cap `sum_j j m_j <= weight`.
pub fn borel_weighted(jet: &FunctionJet, d: usize, weight: u32) -> Result<TruncatedSeries> {
    if d == 0 {
        return Err(Error::pre("borel needs d >= 1"));
    }
    jet.require(weight as usize)?;
    let trunc = Arc::new(Truncation::new(vec![CapGroup {
        vars: (0..d).map(|j| (j, j as u32 + 1)).collect(),
        cap: weight,
    }]));
    borel_into(jet, d, &trunc, |m| m.iter().enumerate().map(|(j, &e)| (j as u32 + 1) * e).sum::<u32>() <= weight)
}

fn borel_into(
    jet: &FunctionJet,
    d: usize,
    trunc: &Arc<Truncation>,
    keep: impl Fn(&[u32]) -> bool,
) -> Result<TruncatedSeries> {
    let reg = Registry::new((1..=d).map(|j| format!("u{j}")));
    let mut poly = MultiPoly::zero(&reg);
    let max_s = jet.order();
    let mut m = vec![0u32; d];
    loop {
        let s: usize = m.iter().enumerate().map(|(j, &e)| (j + 1) * e as usize).sum();
        if s <= max_s && keep(&m) {
            let mut c = jet.coeffs[s].clone();
            for (j, &e) in m.iter().enumerate() {
                let num = factorial(j as u64).pow(e);
                c = c * Scalar::real(num_rational::BigRational::new(num, factorial(e as u64)));
            }
            poly.add_term(m.clone(), c);
        }
        // odometer over exponent vectors with weighted degree <= max_s
        let mut i = 0;
        loop {
            if i == d {
                return Ok(TruncatedSeries::from_poly(poly, trunc));
            }
            m[i] += 1;
            let s: usize = m.iter().enumerate().map(|(j, &e)| (j + 1) * e as usize).sum();
            if s <= max_s {
                break;
            }
            m[i] = 0;
            i += 1;
        }
    }
}

/// `u_1` derivative of order `n` of a series, re-truncated.
pub fn d_u1(series: &TruncatedSeries, n: u32) -> TruncatedSeries {
    TruncatedSeries::from_poly(series.poly().derivative_n(0, n), series.truncation())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp_jet(chi: &Scalar, order: usize) -> FunctionJet {
        // f = exp(x) scaled so c_j = 1/j!
        let coeffs = (0..=order).map(|j| Scalar::real(num_rational::BigRational::new(1.into(), factorial(j as u64)))).collect();
        FunctionJet::new(chi.clone(), coeffs).unwrap()
    }

    #[test]
    fn borel_d1_coefficients() {
        let j = exp_jet(&Scalar::zero(), 4);
        let b = borel(&j, 1, &[4]).unwrap();
        // c_m / m! = 1/m!^2
        assert_eq!(b.coeff(&[2]), Scalar::ratio(1, 4));
        assert_eq!(b.coeff(&[3]), Scalar::ratio(1, 36));
    }

    #[test]
    fn borel_needs_order() {
        let j = exp_jet(&Scalar::zero(), 3);
        assert!(matches!(borel(&j, 2, &[1, 2]), Err(Error::InsufficientJetOrder { .. })));
    }

    #[test]
    fn transform_of_zero_is_zero() {
        let spec = DerivativeSpec::single(Scalar::int(1), vec![1, 0]).unwrap();
        let layout = ULayout::for_specs(&[&spec]);
        let t = KTransform::new(&spec, &layout, 0).unwrap();
        let z = FunctionJet::zero(&Scalar::int(1), 5);
        assert!(t.apply(&[z], 1, &layout).unwrap().is_zero());
        assert!(t.apply(&[FunctionJet::zero(&Scalar::int(1), 5)], 3, &layout).is_err());
    }
}
