use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::combinatorics::{binomial, factorial};
use crate::error::{Error, Result};
use crate::exact::{rational_to_f64, CapGroup, MultiPoly, Registry, Scalar, TruncatedSeries, Truncation};
use crate::jets::{build_d, DiffOperator, KernelJet, USym};
use crate::linalg::{det_cofactor, RingMatrix, SeriesRing};
use crate::rmt::{MomentResult, Prefactor};

/// Jet of `sum_{j<n} (x y)^j` at `(chi, conj chi)`.
pub fn cue_jet(n: u64, chi: &Scalar, order: usize) -> Result<KernelJet> {
    let reg = Registry::new(["x", "y"]);
    let mut p = MultiPoly::zero(&reg);
    for j in 0..n as u32 {
        p.add_term(vec![j, j], Scalar::one());
    }
    KernelJet::from_poly(&p, (chi, &chi.conj()), order)
}

fn check_h(k: usize, h: &[u32]) -> Result<()> {
    let total: u32 = h.iter().sum();
    if k == 0 || total as usize != k {
        return Err(Error::pre(format!("multiplicities {h:?} must sum to k = {k} >= 1")));
    }
    Ok(())
}

fn weighted_monomials(d: usize, cap: u32) -> Vec<Vec<u32>> {
    fn go(j: usize, d: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if j == d {
            out.push(cur.clone());
            return;
        }
        let w = j as u32 + 1;
        for e in 0..=left / w {
            cur.push(e);
            go(j + 1, d, left - e * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, cap, &mut Vec::new(), &mut out);
    out
}

fn borel_weight(m: &[u32]) -> (usize, BigRational) {
    let mut s = 0;
    let mut w = BigRational::one();
    for (j, &e) in m.iter().enumerate() {
        s += (j + 1) * e as usize;
        w *= BigRational::new(factorial(j as u64).pow(e), factorial(e as u64));
    }
    (s, w)
}

/// Moment `lim prod d_x^{orders} d_y^{orders} det[K_{N+k}(x_a, y_b)] / (Delta Delta)`
/// at `x -> chi`, `y -> conj chi`, where `h[j]` counts the `j`-th order
/// derivatives. Computed from the two-sided Borel series of the kernel, one
/// `u_1` (resp. `v_1`) derivative per row (column), then
/// `prod_j (D_{u,j} D_{v,j})^{h_j}` at `u = v = 0`.
pub fn cue_finite_moment(n: u64, chi: &Scalar, h: &[u32]) -> Result<Scalar> {
    let k: u32 = h.iter().sum();
    check_h(k as usize, h)?;
    let k = k as usize;
    let d = (h.len().max(2)) - 1;
    let weight: u32 = h.iter().enumerate().map(|(j, &m)| j as u32 * m).sum();
    let wide = weight + k as u32 - 1;
    let jet = cue_jet(n + k as u64, chi, wide as usize)?;

    let names: Vec<String> = (1..=d).map(|j| format!("u{j}")).chain((1..=d).map(|j| format!("v{j}"))).collect();
    let reg = Registry::new(names);
    let group = |off: usize, cap: u32| CapGroup { vars: (0..d).map(|j| (off + j, j as u32 + 1)).collect(), cap };
    let mons = weighted_monomials(d, wide);
    let mut full = MultiPoly::zero(&reg);
    for mu in &mons {
        let (s, wu) = borel_weight(mu);
        for mv in &mons {
            let (t, wv) = borel_weight(mv);
            let c = jet.coeff(s, t)?;
            if c.is_zero() {
                continue;
            }
            let exps: Vec<u32> = mu.iter().chain(mv).copied().collect();
            full.add_term(exps, c.scale(&(&wu * &wv)));
        }
    }
    let ring = SeriesRing::new(&reg, Truncation::new(vec![group(0, weight), group(d, weight)]));
    let m = RingMatrix::from_fn(k, k, |a, b| {
        ring.lift(full.derivative_n(0, a as u32).derivative_n(d, b as u32))
    });
    let det = det_cofactor(&ring, &m)?;
    let mut op = DiffOperator::one();
    for (j, &mult) in h.iter().enumerate().skip(1) {
        let dj = build_d(j);
        op = op.mul(&dj.pow(mult)).mul(&dj.at_point(1).pow(mult));
    }
    op.apply(&det, |s: USym| (s.order >= 1 && s.order <= d && s.point <= 1).then(|| s.point * d + s.order - 1))
}

/// First-derivative moment from the explicit Laguerre entries
/// `sum_l chi^{l-a+1} conj(chi)^{l-b+1} L_{l-a+1}^{(a-1)}(-u/chi) L_{l-b+1}^{(b-1)}(-ubar/conj chi)`
/// followed by `(d_u d_ubar)^{h1}`. Every `chi^p L_p^{(q)}(-u/chi)` is kept
/// polynomial so `chi = 0` is allowed.
pub fn cue_finite_moment_laguerre(n: u64, k: usize, h1: u32, chi: &Scalar) -> Result<Scalar> {
    if k == 0 || h1 as usize > k {
        return Err(Error::pre("need k >= 1 and h1 <= k"));
    }
    let top = n as usize + k - 1;
    let reg = Registry::new(["u", "ubar"]);
    let ring = SeriesRing::new(&reg, Truncation::per_variable(&[h1, h1]));
    let bar = chi.conj();
    let cp: Vec<Scalar> = (0..=top).map(|e| chi.pow(e as u32)).collect();
    let bp: Vec<Scalar> = (0..=top).map(|e| bar.pow(e as u32)).collect();
    // chi^p L_p^{(q)}(-u/chi) = sum_i C(p+q, p-i) chi^{p-i} u^i / i!
    let lag = |pw: &[Scalar], p: usize, q: usize| -> Vec<(u32, Scalar)> {
        (0..=p.min(h1 as usize))
            .map(|i| {
                let c = BigRational::new(binomial((p + q) as i64, (p - i) as i64), factorial(i as u64));
                (i as u32, pw[p - i].scale(&c))
            })
            .collect()
    };
    let m = RingMatrix::from_fn(k, k, |a, b| {
        let mut poly = MultiPoly::zero(&reg);
        for l in a.max(b)..=top {
            let left = lag(&cp, l - a, a);
            let right = lag(&bp, l - b, b);
            for (i, ci) in &left {
                for (j, cj) in &right {
                    poly.add_term(vec![*i, *j], ci * cj);
                }
            }
        }
        ring.lift(poly)
    });
    let det = det_cofactor(&ring, &m)?;
    let hf = Scalar::big(factorial(h1 as u64));
    Ok(det.coeff(&[h1, h1]) * &hf * &hf)
}

/// `N -> infinity` limit inside the unit disc:
/// `h1! L_{h1}^{(0)}(-k^2 t) / (1-t)^{k^2 + 2 h1}`.
pub fn cue_disc_limit(k: usize, h1: u32) -> Result<MomentResult> {
    if k == 0 || h1 as usize > k {
        return Err(Error::pre("need k >= 1 and h1 <= k"));
    }
    let k2 = BigInt::from(k * k);
    let hf = factorial(h1 as u64);
    let poly_t = (0..=h1)
        .map(|i| BigRational::new(binomial(h1 as i64, i as i64) * k2.pow(i) * &hf, factorial(i as u64)))
        .collect();
    Ok(MomentResult {
        k,
        prefactor: Prefactor { exp_coeff: 0, pi_power: 0, one_minus_t_power: -((k * k) as i64 + 2 * h1 as i64) },
        poly_t,
    })
}

/// Finite-`N` moment at `chi = 1` divided by `N^{k^2 + 2 h1}`.
pub fn cue_scaled(n: u64, k: usize, h1: u32) -> Result<(BigRational, f64)> {
    let z = cue_finite_moment_laguerre(n, k, h1, &Scalar::one())?;
    let scale = BigInt::from(n).pow((k * k) as u32 + 2 * h1);
    let v = z.re() / BigRational::from_integer(scale);
    let f = rational_to_f64(&v);
    Ok((v, f))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CircleLimit {
    pub k: usize,
    pub h1: u32,
    #[serde(serialize_with = "crate::rmt::cue::ser_rat")]
    pub c: BigRational,
    #[serde(serialize_with = "crate::rmt::cue::ser_rat")]
    pub exact: BigRational,
    pub value: f64,
}

pub(crate) fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

/// Unit-circle limit `lim_{u->0} (c(c+1) + d_u - d_u^2)^{h1}
/// det[u^{(b-a-k)/2} I_{k+a-b}(2 sqrt u)]`. Each entry is the entire series
/// `sum_m u^m / (m! (m+k+a-b)!)`, truncated at degree `2 h1`.
pub fn cue_circle_limit(k: usize, h1: u32, c: &BigRational) -> Result<CircleLimit> {
    circle_limit_truncated(k, h1, c, 2 * h1)
}

/// As [`cue_circle_limit`] with an explicit series truncation.
pub fn circle_limit_truncated(k: usize, h1: u32, c: &BigRational, trunc: u32) -> Result<CircleLimit> {
    if k == 0 || h1 as usize > k {
        return Err(Error::pre("need k >= 1 and h1 <= k"));
    }
    if trunc < 2 * h1 {
        return Err(Error::InsufficientTruncation(format!("operator has order {} but series stop at {trunc}", 2 * h1)));
    }
    let reg = Registry::new(["u"]);
    let ring = SeriesRing::new(&reg, Truncation::per_variable(&[trunc]));
    let m = RingMatrix::from_fn(k, k, |a, b| {
        let nu = (k + a - b) as u64;
        let mut p = MultiPoly::zero(&reg);
        for i in 0..=trunc as u64 {
            p.add_term(vec![i as u32], Scalar::real(BigRational::new(BigInt::one(), factorial(i) * factorial(i + nu))));
        }
        ring.lift(p)
    });
    let det: TruncatedSeries = det_cofactor(&ring, &m)?;
    // (c(c+1) + D - D^2)^{h1} as a polynomial in D
    let base = [c * (c + BigRational::one()), BigRational::one(), -BigRational::one()];
    let mut op = vec![BigRational::one()];
    for _ in 0..h1 {
        let mut next = vec![BigRational::zero(); op.len() + 2];
        for (i, x) in op.iter().enumerate() {
            for (j, y) in base.iter().enumerate() {
                next[i + j] += x * y;
            }
        }
        op = next;
    }
    let mut exact = BigRational::zero();
    for (j, q) in op.iter().enumerate() {
        if !q.is_zero() {
            exact += q * det.coeff(&[j as u32]).re() * BigRational::from_integer(factorial(j as u64));
        }
    }
    let value = exact.to_f64().unwrap_or(f64::NAN);
    Ok(CircleLimit { k, h1, c: c.clone(), exact, value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_k1_h1() {
        let l = cue_circle_limit(1, 1, &BigRational::zero()).unwrap();
        assert_eq!(l.exact, BigRational::new(1.into(), 3.into()));
    }

    #[test]
    fn laguerre_and_borel_agree() {
        let chi = Scalar::new(BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 3.into()));
        for k in 1..=3usize {
            for h1 in 0..=k as u32 {
                let a = cue_finite_moment_laguerre(3, k, h1, &chi).unwrap();
                let b = cue_finite_moment(3, &chi, &[k as u32 - h1, h1]).unwrap();
                assert_eq!(a, b, "k={k} h1={h1}");
            }
        }
    }

    #[test]
    fn k1_first_derivative_is_sum_of_squares() {
        // sum_{j<=N} j^2 at |chi| = 1
        let z = cue_finite_moment_laguerre(5, 1, 1, &Scalar::one()).unwrap();
        assert_eq!(z, Scalar::int(55));
    }
}
