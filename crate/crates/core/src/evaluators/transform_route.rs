use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{MultiPoly, Scalar, TruncatedSeries, Truncation};
use crate::evaluators::problem::{DetEntries, DetProblem, PfaffianProblem};
use crate::jets::{borel_weighted, build_d, DiffOperator, FunctionJet, KTransform, ULayout};
use crate::linalg::{det_cofactor, pfaffian, AntisymMatrix, RingMatrix, SeriesRing};
use std::sync::Arc;

fn par_table<T: Send>(n: usize, m: usize, f: impl Fn(usize, usize) -> Result<T> + Sync) -> Result<Vec<Vec<T>>> {
    (0..n).into_par_iter().map(|i| (0..m).map(|j| f(i, j)).collect()).collect()
}

/// Pfaffian of K-transformed entries, then the lemma operators at `u = 0`.
pub fn eval_main_theorem(p: &PfaffianProblem) -> Result<Scalar> {
    p.validate()?;
    let spec = &p.spec;
    let layout = ULayout::for_specs(&[spec]);
    let kt = KTransform::new(spec, &layout, 0)?;
    let big_p = spec.total();
    let n = p.size();
    // upper triangle, row by row
    let rows: Vec<Vec<TruncatedSeries>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n)
                .map(|j| {
                    if j < big_p {
                        kt.apply_kernel(&kt, &p.a, i + 1, j + 1, &layout)
                    } else if i < big_p {
                        kt.apply(&p.b[j - big_p], i + 1, &layout)
                    } else {
                        Ok(layout.ring().lift(MultiPoly::constant(layout.registry(), p.c[i - big_p][j - big_p].clone())))
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let m = AntisymMatrix::from_upper(n, |i, j| rows[i][j - i - 1].clone());
    let pf = pfaffian(layout.ring(), &m)?;
    layout.apply(&spec.operator(0), &pf)
}

/// Determinant analogue: one-sided on columns, or two-sided on a kernel.
pub fn eval_det_corollary(p: &DetProblem) -> Result<Scalar> {
    p.validate()?;
    let x = &p.x;
    let n = x.total();
    match &p.entries {
        DetEntries::Columns(cols) => {
            let layout = ULayout::for_specs(&[x]);
            let kt = KTransform::new(x, &layout, 0)?;
            let t = par_table(n, n, |a, b| kt.apply(&cols[b], a + 1, &layout))?;
            let m = RingMatrix::from_rows(t)?;
            let d = det_cofactor(layout.ring(), &m)?;
            layout.apply(&x.operator(0), &d)
        }
        DetEntries::Kernel { y, jets } => {
            let layout = ULayout::for_specs(&[x, y]);
            let lx = x.num_points();
            let kx = KTransform::new(x, &layout, 0)?;
            let ky = KTransform::new(y, &layout, lx)?;
            let t = par_table(n, n, |a, b| kx.apply_kernel(&ky, jets, a + 1, b + 1, &layout))?;
            let m = RingMatrix::from_rows(t)?;
            let d = det_cofactor(layout.ring(), &m)?;
            layout.apply(&x.operator(0).mul(&y.operator(lx)), &d)
        }
    }
}

/// Single-point form with `h[j]` variables of derivative order `j`:
/// `lim prod_j D_{u,j}^{h_j} det[d_{u_1}^{a-1} [B_{chi,d} B_b](u)]`.
pub fn eval_borel_higher(cols: &[FunctionJet], h: &[u32]) -> Result<Scalar> {
    let k = cols.len();
    let total: u32 = h.iter().sum();
    if total as usize != k || k == 0 {
        return Err(Error::pre(format!("multiplicities sum to {total}, expected {k} columns")));
    }
    if cols.windows(2).any(|w| w[0].point != w[1].point) {
        return Err(Error::pre("all columns must be expanded at the same point"));
    }
    let d = (h.len() - 1).max(1);
    let weight: u32 = h.iter().enumerate().map(|(j, &m)| j as u32 * m).sum();
    let wide = weight + k as u32 - 1;
    let series: Vec<TruncatedSeries> = cols.iter().map(|c| borel_weighted(c, d, wide)).collect::<Result<_>>()?;
    let reg = series[0].registry().clone();
    let trunc = Truncation::new(vec![crate::exact::CapGroup {
        vars: (0..d).map(|j| (j, j as u32 + 1)).collect(),
        cap: weight,
    }]);
    let ring = SeriesRing::new(&reg, trunc);
    let narrow: Arc<Truncation> = ring.trunc.clone();
    let m = RingMatrix::from_fn(k, k, |a, b| {
        TruncatedSeries::from_poly(series[b].poly().derivative_n(0, a as u32), &narrow)
    });
    let det = det_cofactor(&ring, &m)?;
    let mut op = DiffOperator::one();
    for (j, &mult) in h.iter().enumerate().skip(1) {
        op = op.mul(&build_d(j).pow(mult));
    }
    op.apply(&det, |s| (s.point == 0 && s.order >= 1 && s.order <= d).then(|| s.order - 1))
}
