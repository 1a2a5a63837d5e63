use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::combinatorics::{compositions, factorial, factorial_product, kostka, multinomial, partitions, Partition};
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::jets::{DerivativeSpec, FunctionJet, KernelJet};
use crate::linalg::{det, pfaffian, AntisymMatrix, RingMatrix, ScalarRing};

/// `d^a f / a!` is stored; this returns `d^a f`.
pub(crate) fn fderiv(jet: &FunctionJet, a: u64) -> Result<Scalar> {
    Ok(jet.coeff(a as usize)? * &Scalar::big(factorial(a)))
}

pub(crate) fn kderiv(jet: &KernelJet, a: u64, b: u64) -> Result<Scalar> {
    Ok(jet.coeff(a as usize, b as usize)? * &Scalar::big(factorial(a) * factorial(b)))
}

fn weight_factorial(w: &[u32]) -> BigInt {
    factorial_product(&w.iter().map(|&x| x as u64).collect::<Vec<_>>())
}

fn check_weight(w: &[u32], k: usize, what: &str) -> Result<()> {
    if w.len() > k {
        return Err(Error::pre(format!("{what} has {} entries but k = {k}", w.len())));
    }
    Ok(())
}

/// Partitions with their Kostka weight `K_{mu,w} / hat(mu)!`, skipping zeros.
fn weighted_shapes(w: &[u32], k: usize) -> Result<Vec<(Partition, Vec<u64>, BigRational)>> {
    let size: u32 = w.iter().sum();
    let mut out = Vec::new();
    for mu in partitions(size, k) {
        let kn = kostka(&mu, w)?;
        if kn.is_zero() {
            continue;
        }
        let hat = mu.shifted(k)?;
        let c = BigRational::new(kn, hat.factorial());
        out.push((mu, hat.values().to_vec(), c));
    }
    Ok(out)
}

/// Two-sided Kostka form for `lim prod d_x^alpha d_y^beta det[B(x_a,y_b)]/(Delta(x) Delta(y))`.
pub fn eval_det_kostka(jet: &KernelJet, alpha: &[u32], beta: &[u32], k: usize) -> Result<Scalar> {
    check_weight(alpha, k, "alpha")?;
    check_weight(beta, k, "beta")?;
    if k == 0 {
        return Err(Error::pre("k must be positive"));
    }
    let na: u32 = alpha.iter().sum();
    let nb: u32 = beta.iter().sum();
    jet.require((na.max(nb) as usize) + k - 1)?;
    let xs = weighted_shapes(alpha, k)?;
    let ys = weighted_shapes(beta, k)?;
    let terms: Vec<Scalar> = xs
        .par_iter()
        .map(|(_, mh, cm)| {
            let mut acc = Scalar::zero();
            for (_, lh, cl) in &ys {
                let m = RingMatrix::try_from_fn(k, k, |a, b| kderiv(jet, mh[a], lh[b]))?;
                let d = det(&ScalarRing, &m)?;
                acc += &d.scale(&(cm * cl));
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let pre = weight_factorial(alpha) * weight_factorial(beta);
    Ok(terms.into_iter().sum::<Scalar>() * Scalar::big(pre))
}

/// One-sided Kostka form: `lim prod d^alpha det[B_b(x_a)]/Delta(x)`, all
/// columns expanded at the same point.
pub fn eval_det_kostka_columns(cols: &[FunctionJet], alpha: &[u32]) -> Result<Scalar> {
    let k = cols.len();
    if k == 0 {
        return Err(Error::pre("no columns"));
    }
    check_weight(alpha, k, "alpha")?;
    if cols.windows(2).any(|w| w[0].point != w[1].point) {
        return Err(Error::pre("all columns must be expanded at the same point"));
    }
    let na: u32 = alpha.iter().sum();
    for c in cols {
        c.require(na as usize + k - 1)?;
    }
    let mut acc = Scalar::zero();
    for (_, mh, cm) in weighted_shapes(alpha, k)? {
        let m = RingMatrix::try_from_fn(k, k, |a, b| fderiv(&cols[b], mh[a]))?;
        acc += &det(&ScalarRing, &m)?.scale(&cm);
    }
    Ok(acc * Scalar::big(weight_factorial(alpha)))
}

/// Kostka form for `lim prod d^alpha Pf[A(x_a,x_b)]/Delta_{2k}(x)`, `x -> chi`.
pub fn eval_pf_kostka(jet: &KernelJet, alpha: &[u32], k: usize) -> Result<Scalar> {
    if k == 0 {
        return Err(Error::pre("k must be positive"));
    }
    let n = 2 * k;
    check_weight(alpha, n, "alpha")?;
    if jet.points.0 != jet.points.1 {
        return Err(Error::pre("the Pfaffian form needs a jet on the diagonal"));
    }
    let o = jet.order();
    for a in 0..=o {
        for b in a..=o {
            if !(&jet.coeffs[a][b] + &jet.coeffs[b][a]).is_zero() {
                return Err(Error::NotAntisymmetric(a, b));
            }
        }
    }
    let na: u32 = alpha.iter().sum();
    jet.require(na as usize + n - 1)?;
    let mut acc = Scalar::zero();
    for (_, mh, cm) in weighted_shapes(alpha, n)? {
        let table = (0..n)
            .map(|a| (0..n).map(|b| kderiv(jet, mh[a], mh[b])).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let m = AntisymMatrix::from_upper(n, |a, b| table[a][b].clone());
        acc += &pfaffian(&ScalarRing, &m)?.scale(&cm);
    }
    Ok(acc * Scalar::big(weight_factorial(alpha)))
}

/// Number of order-zero variables when `spec` has one point and only
/// orders 0 and 1.
pub fn first_order_pattern(spec: &DerivativeSpec) -> Result<usize> {
    if spec.num_points() != 1 {
        return Err(Error::pre("the first-order form needs a single limiting point"));
    }
    if spec.max_order() > 1 {
        return Err(Error::pre("the first-order form allows derivative orders 0 and 1 only"));
    }
    Ok(spec.multiplicity(0, 0))
}

fn multinomial_weights(m: u32, k: usize) -> Result<Vec<(Vec<u64>, BigRational)>> {
    compositions(m, k)
        .into_iter()
        .map(|r| {
            let parts: Vec<u64> = r.iter().map(|&x| x as u64).collect();
            let rows: Vec<u64> = parts.iter().enumerate().map(|(a, &x)| x + a as u64).collect();
            let w = BigRational::new(multinomial(m as u64, &parts)?, factorial_product(&rows));
            Ok((rows, w))
        })
        .collect()
}

/// `sum_r multinom(k-h; r) det[d^{r_a+a-1} B_b(chi)] / prod (r_c+c-1)!`.
pub fn eval_first_order_multinomial_columns(cols: &[FunctionJet], h: usize) -> Result<Scalar> {
    let k = cols.len();
    if h > k || k == 0 {
        return Err(Error::pre(format!("need 0 <= h <= k, got h = {h}, k = {k}")));
    }
    if cols.windows(2).any(|w| w[0].point != w[1].point) {
        return Err(Error::pre("all columns must be expanded at the same point"));
    }
    let mut acc = Scalar::zero();
    for (rows, w) in multinomial_weights((k - h) as u32, k)? {
        let m = RingMatrix::try_from_fn(k, k, |a, b| fderiv(&cols[b], rows[a]))?;
        acc += &det(&ScalarRing, &m)?.scale(&w);
    }
    Ok(acc)
}

/// Two-sided multinomial form on a kernel jet at `(chi, xi)`, `h` order-zero
/// variables on each side.
pub fn eval_first_order_multinomial(jet: &KernelJet, h: usize, k: usize) -> Result<Scalar> {
    eval_first_order_multinomial_split(jet, h, h, k)
}

/// As [`eval_first_order_multinomial`] with separate counts `hx`, `hy`.
pub fn eval_first_order_multinomial_split(jet: &KernelJet, hx: usize, hy: usize, k: usize) -> Result<Scalar> {
    if hx > k || hy > k || k == 0 {
        return Err(Error::pre(format!("need 0 <= h <= k, got h = ({hx}, {hy}), k = {k}")));
    }
    let wx = multinomial_weights((k - hx) as u32, k)?;
    let wy = multinomial_weights((k - hy) as u32, k)?;
    let terms: Vec<Scalar> = wx
        .par_iter()
        .map(|(rr, wr)| {
            let mut acc = Scalar::zero();
            for (ss, wsv) in &wy {
                let m = RingMatrix::try_from_fn(k, k, |a, b| kderiv(jet, rr[a], ss[b]))?;
                acc += &det(&ScalarRing, &m)?.scale(&(wr * wsv));
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    Ok(terms.into_iter().sum())
}
