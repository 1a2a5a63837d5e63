use std::sync::Arc;

use crate::combinatorics::factorial;
use crate::error::{Error, Result};
use crate::exact::{CapGroup, MultiPoly, Registry, Scalar, TruncatedSeries, Truncation};
use crate::jets::build_d;

/// `F_d(u, chi, zeta) = sum_{l<=d} (l-1)! u_l / (zeta - chi)^l` as a
/// polynomial in `u_1..u_d`.
pub fn f_d(reg: &Registry, d: usize, chi: &Scalar, zeta: &Scalar) -> Result<MultiPoly> {
    let inv = (zeta - chi).inv()?;
    let mut p = MultiPoly::zero(reg);
    for l in 1..=d {
        let mut e = vec![0u32; reg.len()];
        e[l - 1] = 1;
        p.add_term(e, inv.pow(l as u32) * Scalar::big(factorial(l as u64 - 1)));
    }
    Ok(p)
}

/// `d_x^k prod_j (z_j - x)/(zeta_j - x)` through the operator identity:
/// `lim_{u->0} D_{u,k} exp[sum_j F_k(u,x,zeta_j) - F_k(u,x,z_j)]` times the
/// product itself.
pub fn product_derivative(k: usize, x: &Scalar, zs: &[Scalar], zetas: &[Scalar]) -> Result<Scalar> {
    if zs.len() != zetas.len() {
        return Err(Error::pre("need as many zeros as poles"));
    }
    let mut value = Scalar::one();
    for (z, zeta) in zs.iter().zip(zetas) {
        value = value * (z - x) * (zeta - x).inv()?;
    }
    if k == 0 {
        return Ok(value);
    }
    let reg = Registry::new((1..=k).map(|j| format!("u{j}")));
    let trunc = Arc::new(Truncation::new(vec![CapGroup { vars: (0..k).map(|j| (j, j as u32 + 1)).collect(), cap: k as u32 }]));
    let mut g = MultiPoly::zero(&reg);
    for (z, zeta) in zs.iter().zip(zetas) {
        g = g.try_add(&f_d(&reg, k, x, zeta)?)?.try_sub(&f_d(&reg, k, x, z)?)?;
    }
    let series = TruncatedSeries::from_poly(g, &trunc).exp_nilpotent()?;
    let op = build_d(k);
    let lim = op.apply(&series, |s| (s.point == 0 && s.order >= 1 && s.order <= k).then(|| s.order - 1))?;
    Ok(lim * value)
}
