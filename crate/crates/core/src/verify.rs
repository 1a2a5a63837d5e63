//! Seeded random problems and the cross-route agreement suite.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::evaluators::*;
use crate::exact::{MultiPoly, Registry, Scalar};
use crate::jets::{DerivativeSpec, KernelJet};

pub const MAX_COEFF: i64 = 5;
pub const MAX_DEGREE: u32 = 6;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn coeff(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::int(rng.gen_range(-MAX_COEFF..=MAX_COEFF))
}

/// Univariate polynomial of degree `<= deg` in `x`.
pub fn random_poly1(rng: &mut ChaCha8Rng, deg: u32) -> MultiPoly {
    let reg = Registry::new(["x"]);
    let mut p = MultiPoly::zero(&reg);
    for e in 0..=deg {
        p.add_term(vec![e], coeff(rng));
    }
    p
}

/// Bivariate polynomial of total degree `<= deg` in `x, y`.
pub fn random_kernel(rng: &mut ChaCha8Rng, deg: u32) -> MultiPoly {
    let reg = Registry::new(["x", "y"]);
    let mut p = MultiPoly::zero(&reg);
    for i in 0..=deg {
        for j in 0..=deg - i {
            p.add_term(vec![i, j], coeff(rng));
        }
    }
    p
}

/// `p(x, y) - p(y, x)` for a random `p`.
pub fn random_antisym(rng: &mut ChaCha8Rng, deg: u32) -> MultiPoly {
    let p = random_kernel(rng, deg);
    &p - &swap_xy(&p)
}

/// `p(y, x)`.
pub fn swap_xy(p: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::zero(p.registry());
    for (e, c) in p.terms() {
        out.add_term(vec![e[1], e[0]], c.clone());
    }
    out
}

/// Distinct small rationals.
pub fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::new();
    while out.len() < n {
        let c = Scalar::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3));
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// `len` derivative orders with total at most `max_total`.
pub fn random_orders(rng: &mut ChaCha8Rng, len: usize, max_total: u32) -> Vec<u32> {
    let total = rng.gen_range(0..=max_total);
    let mut v = vec![0u32; len];
    for _ in 0..total {
        let i = rng.gen_range(0..len);
        v[i] += 1;
    }
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct RouteValue {
    pub route: String,
    pub value: Scalar,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCase {
    pub index: usize,
    pub kind: String,
    pub k: usize,
    pub points: usize,
    pub orders: String,
    pub values: Vec<RouteValue>,
    pub passed: bool,
}

impl CrossCase {
    fn new(index: usize, kind: &str, k: usize, points: usize, orders: String) -> Self {
        CrossCase { index, kind: kind.into(), k, points, orders, values: Vec::new(), passed: false }
    }

    fn push(&mut self, route: &str, v: Result<Scalar>) -> Result<()> {
        self.values.push(RouteValue { route: route.into(), value: v? });
        Ok(())
    }

    fn finish(mut self) -> Self {
        self.passed = self.values.len() >= 2 && self.values.windows(2).all(|w| w[0].value == w[1].value);
        self
    }

    pub fn line(&self) -> String {
        let routes: Vec<&str> = self.values.iter().map(|v| v.route.as_str()).collect();
        let value = if self.passed {
            self.values.first().map(|v| v.value.to_string()).unwrap_or_default()
        } else {
            self.values.iter().map(|v| v.value.to_string()).collect::<Vec<_>>().join(" vs ")
        };
        format!(
            "{} case {:>3} {:<8} k={} L={} orders={} routes={} value={}",
            if self.passed { "PASS" } else { "FAIL" },
            self.index,
            self.kind,
            self.k,
            self.points,
            self.orders,
            routes.join("/"),
            value
        )
    }
}

fn fmt_orders(o: &[Vec<u32>]) -> String {
    let parts: Vec<String> = o.iter().map(|v| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")).collect();
    format!("[{}]", parts.join("|"))
}

fn single_h(orders: &[u32]) -> Option<usize> {
    orders.iter().all(|&n| n <= 1).then(|| orders.iter().filter(|&&n| n == 0).count())
}

fn multiplicities(orders: &[u32]) -> Vec<u32> {
    let d = orders.iter().copied().max().unwrap_or(0) as usize;
    let mut h = vec![0u32; d + 1];
    for &n in orders {
        h[n as usize] += 1;
    }
    h
}

/// Random determinant problem on univariate columns.
fn det_columns_case(rng: &mut ChaCha8Rng, index: usize, k: usize, lpts: usize, max_total: u32) -> Result<CrossCase> {
    let pts = random_points(rng, lpts);
    let sizes = split(rng, k, lpts);
    let orders: Vec<Vec<u32>> = sizes.iter().map(|&s| random_orders(rng, s, max_total / lpts as u32)).collect();
    let spec = DerivativeSpec::new(pts, orders.clone())?;
    let cols: Vec<MultiPoly> = (0..k).map(|_| random_poly1(rng, MAX_DEGREE)).collect();
    let poly = PolyDetProblem::Columns { x: spec.clone(), cols: cols.clone() };
    let mut c = CrossCase::new(index, "det-cols", k, lpts, fmt_orders(&orders));
    c.push("oracle", oracle_eval(&OracleProblem::DetColumns { x: spec.clone(), cols }))?;
    let jp = poly.jets()?;
    c.push("transform", eval_det_corollary(&jp))?;
    if lpts == 1 {
        let DetEntries::Columns(cols) = &jp.entries else { unreachable!() };
        let flat: Vec<_> = cols.iter().map(|c| c[0].clone()).collect();
        c.push("kostka", eval_det_kostka_columns(&flat, &orders[0]))?;
        c.push("borel", eval_borel_higher(&flat, &multiplicities(&orders[0])))?;
        if let Some(h) = single_h(&orders[0]) {
            c.push("multinomial", eval_first_order_multinomial_columns(&flat, h))?;
        }
    }
    Ok(c.finish())
}

/// Random two-sided determinant problem on a bivariate kernel.
fn det_kernel_case(rng: &mut ChaCha8Rng, index: usize, k: usize, lpts: usize, max_total: u32) -> Result<CrossCase> {
    let xs = random_points(rng, lpts);
    let ys = random_points(rng, lpts);
    let sx = split(rng, k, lpts);
    let sy = split(rng, k, lpts);
    let ox: Vec<Vec<u32>> = sx.iter().map(|&s| random_orders(rng, s, max_total / lpts as u32)).collect();
    let oy: Vec<Vec<u32>> = sy.iter().map(|&s| random_orders(rng, s, max_total / lpts as u32)).collect();
    let x = DerivativeSpec::new(xs, ox.clone())?;
    let y = DerivativeSpec::new(ys, oy.clone())?;
    let kernel = random_kernel(rng, MAX_DEGREE);
    let mut c = CrossCase::new(index, "det-kern", k, lpts, format!("{}x{}", fmt_orders(&ox), fmt_orders(&oy)));
    c.push("oracle", oracle_eval(&OracleProblem::DetKernel { x: x.clone(), y: y.clone(), kernel: kernel.clone() }))?;
    let poly = PolyDetProblem::Kernel { x: x.clone(), y: y.clone(), kernel: kernel.clone() };
    c.push("transform", eval_det_corollary(&poly.jets()?))?;
    if lpts == 1 {
        let na: u32 = ox[0].iter().sum();
        let nb: u32 = oy[0].iter().sum();
        let jet = KernelJet::from_poly(&kernel, (&x.points[0], &y.points[0]), (na.max(nb) as usize) + k - 1)?;
        c.push("kostka", eval_det_kostka(&jet, &ox[0], &oy[0], k))?;
        if let (Some(hx), Some(hy)) = (single_h(&ox[0]), single_h(&oy[0])) {
            c.push("multinomial", eval_first_order_multinomial_split(&jet, hx, hy, k))?;
        }
    }
    Ok(c.finish())
}

/// Random Pfaffian problem; `k` counts pairs, so there are `2k` variables.
fn pf_case(rng: &mut ChaCha8Rng, index: usize, k: usize, lpts: usize, max_total: u32, with_b: bool) -> Result<CrossCase> {
    let (p, q) = if with_b { (2 * k - 1, 1 + (k % 2) * 2) } else { (2 * k, 0) };
    let lpts = lpts.min(p);
    let pts = random_points(rng, lpts);
    let a = random_antisym(rng, MAX_DEGREE);
    if lpts == 2 && !with_b {
        // paired pattern: the same orders at both points, as in the two-point form
        let alpha = random_orders(rng, k, max_total / 2);
        let spec = DerivativeSpec::new(pts.clone(), vec![alpha.clone(), alpha.clone()])?;
        let mut c = CrossCase::new(index, "pf-pair", k, 2, fmt_orders(&spec.orders));
        c.push("oracle", oracle_eval(&OracleProblem::Pfaffian { spec: spec.clone(), a: a.clone(), b: vec![], c: vec![] }))?;
        let poly = PolyPfProblem { spec: spec.clone(), a: a.clone(), b: vec![], c: vec![] };
        c.push("transform", eval_main_theorem(&poly.jets()?))?;
        let order = alpha.iter().sum::<u32>() as usize + k - 1;
        let jets = TwoPointJets {
            cc: KernelJet::from_poly(&a, (&pts[0], &pts[0]), order)?,
            cx: KernelJet::from_poly(&a, (&pts[0], &pts[1]), order)?,
            xx: KernelJet::from_poly(&a, (&pts[1], &pts[1]), order)?,
        };
        c.push("two-point", eval_pf_two_point(&jets, &alpha, k))?;
        return Ok(c.finish());
    }
    let sizes = split(rng, p, lpts);
    let orders: Vec<Vec<u32>> = sizes.iter().map(|&s| random_orders(rng, s, max_total / lpts as u32)).collect();
    let spec = DerivativeSpec::new(pts.clone(), orders.clone())?;
    let b: Vec<MultiPoly> = (0..q).map(|_| random_poly1(rng, MAX_DEGREE)).collect();
    let mut cm = vec![vec![Scalar::zero(); q]; q];
    for i in 0..q {
        for j in i + 1..q {
            let v = coeff(rng);
            cm[j][i] = -&v;
            cm[i][j] = v;
        }
    }
    let kind = if q > 0 { "pf-bc" } else { "pf" };
    let mut c = CrossCase::new(index, kind, k, lpts, fmt_orders(&orders));
    c.push("oracle", oracle_eval(&OracleProblem::Pfaffian { spec: spec.clone(), a: a.clone(), b: b.clone(), c: cm.clone() }))?;
    let poly = PolyPfProblem { spec: spec.clone(), a: a.clone(), b, c: cm };
    c.push("transform", eval_main_theorem(&poly.jets()?))?;
    if lpts == 1 && q == 0 {
        let n: u32 = orders[0].iter().sum();
        let jet = KernelJet::from_poly(&a, (&pts[0], &pts[0]), n as usize + p - 1)?;
        c.push("kostka", eval_pf_kostka(&jet, &orders[0], k))?;
    }
    Ok(c.finish())
}

/// Splits `n` variables over `l` points, each getting at least one.
fn split(rng: &mut ChaCha8Rng, n: usize, l: usize) -> Vec<usize> {
    if l == 1 || n < l {
        return vec![n];
    }
    let first = rng.gen_range(1..n);
    let mut v = vec![first, n - first];
    v.shuffle(rng);
    v
}

/// Runs `count` seeded cross-route cases with `k <= max_k` and derivative
/// totals at most `max_total` per side.
pub fn cross_suite(seed: u64, count: usize, max_k: usize, max_total: u32) -> Result<Vec<CrossCase>> {
    let max_k = max_k.max(1);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let mut r = rng(seed.wrapping_mul(1_000_003).wrapping_add(i as u64));
        let k = 1 + i % max_k;
        let lpts = 1 + (i / max_k) % 2;
        let case = match (i / (2 * max_k)) % 4 {
            0 => det_columns_case(&mut r, i, k, lpts.min(k), max_total)?,
            1 => det_kernel_case(&mut r, i, k, lpts.min(k), max_total)?,
            2 => pf_case(&mut r, i, k, lpts, max_total, false)?,
            _ => pf_case(&mut r, i, k, lpts, max_total, true)?,
        };
        out.push(case);
    }
    Ok(out)
}
