//! Brute-force reference: symbolic determinant or Pfaffian over polynomials,
//! exact division by the Vandermonde products, formal differentiation and
//! substitution.

use crate::error::{Error, Result};
use crate::exact::{MultiPoly, Registry, Scalar};
use crate::jets::DerivativeSpec;
use crate::linalg::{det_cofactor, pfaffian, AntisymMatrix, PolyRing, RingMatrix};

#[derive(Clone, Debug)]
pub enum OracleProblem {
    /// `det[B_b(x_a)] / Delta(x)`, univariate columns.
    DetColumns { x: DerivativeSpec, cols: Vec<MultiPoly> },
    /// `det[B(x_a, y_b)] / (Delta(x) Delta(y))`, bivariate kernel.
    DetKernel { x: DerivativeSpec, y: DerivativeSpec, kernel: MultiPoly },
    /// `Pf[[A, B], [-B^T, C]] / Delta(x)`.
    Pfaffian { spec: DerivativeSpec, a: MultiPoly, b: Vec<MultiPoly>, c: Vec<Vec<Scalar>> },
}

/// Substitutes the variables of a univariate or bivariate polynomial by
/// polynomials of a larger registry.
fn compose(p: &MultiPoly, args: &[&MultiPoly], reg: &Registry) -> Result<MultiPoly> {
    if p.nvars() != args.len() {
        return Err(Error::pre(format!("expected {} variables, found {}", args.len(), p.nvars())));
    }
    let mut out = MultiPoly::zero(reg);
    for (e, c) in p.terms() {
        let mut t = MultiPoly::constant(reg, c.clone());
        for (a, &k) in args.iter().zip(e) {
            if k > 0 {
                t = t.try_mul(&a.pow(k))?;
            }
        }
        out = out.try_add(&t)?;
    }
    Ok(out)
}

fn vandermonde_divide(mut p: MultiPoly, vars: &[usize]) -> Result<MultiPoly> {
    for j in 0..vars.len() {
        for i in 0..j {
            p = p.divide_by_linear(vars[i], vars[j])?;
        }
    }
    Ok(p)
}

/// Differentiates variable `first + a` by `orders[a]` and substitutes its
/// limit, one variable at a time.
fn limit(mut p: MultiPoly, spec: &DerivativeSpec, first: usize) -> MultiPoly {
    for (l, orders) in spec.orders.iter().enumerate() {
        let base = first + spec.offset(l);
        for (i, &n) in orders.iter().enumerate() {
            p = p.derivative_n(base + i, n).substitute(base + i, &spec.points[l]);
        }
    }
    p
}

fn names(prefix: &str, n: usize) -> impl Iterator<Item = String> + '_ {
    (1..=n).map(move |i| format!("{prefix}{i}"))
}

pub fn oracle_eval(p: &OracleProblem) -> Result<Scalar> {
    match p {
        OracleProblem::DetColumns { x, cols } => {
            x.validate()?;
            let n = x.total();
            if cols.len() != n {
                return Err(Error::pre(format!("{} columns for {n} variables", cols.len())));
            }
            let reg = Registry::new(names("x", n));
            let xs: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(&reg, i)).collect();
            let m = RingMatrix::try_from_fn(n, n, |a, b| compose(&cols[b], &[&xs[a]], &reg))?;
            let d = det_cofactor(&PolyRing::new(&reg), &m)?;
            let q = vandermonde_divide(d, &(0..n).collect::<Vec<_>>())?;
            Ok(limit(q, x, 0).constant_term())
        }
        OracleProblem::DetKernel { x, y, kernel } => {
            x.validate()?;
            y.validate()?;
            let n = x.total();
            if y.total() != n {
                return Err(Error::pre("x and y need the same number of variables"));
            }
            let reg = Registry::new(names("x", n).chain(names("y", n)));
            let v: Vec<MultiPoly> = (0..2 * n).map(|i| MultiPoly::var(&reg, i)).collect();
            let m = RingMatrix::try_from_fn(n, n, |a, b| compose(kernel, &[&v[a], &v[n + b]], &reg))?;
            let d = det_cofactor(&PolyRing::new(&reg), &m)?;
            let q = vandermonde_divide(d, &(0..n).collect::<Vec<_>>())?;
            let q = vandermonde_divide(q, &(n..2 * n).collect::<Vec<_>>())?;
            Ok(limit(limit(q, x, 0), y, n).constant_term())
        }
        OracleProblem::Pfaffian { spec, a, b, c } => {
            spec.validate()?;
            let np = spec.total();
            let q = b.len();
            let n = np + q;
            if n % 2 == 1 {
                return Err(Error::OddDimension(n));
            }
            let reg = Registry::new(names("x", np));
            let xs: Vec<MultiPoly> = (0..np).map(|i| MultiPoly::var(&reg, i)).collect();
            let mut upper = vec![vec![MultiPoly::zero(&reg); n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    upper[i][j] = if j < np {
                        compose(a, &[&xs[i], &xs[j]], &reg)?
                    } else if i < np {
                        compose(&b[j - np], &[&xs[i]], &reg)?
                    } else {
                        MultiPoly::constant(&reg, c[i - np][j - np].clone())
                    };
                }
            }
            // A must be antisymmetric for the ratio to be a polynomial
            if np >= 2 {
                let sym = compose(a, &[&xs[0], &xs[1]], &reg)?.try_add(&compose(a, &[&xs[1], &xs[0]], &reg)?)?;
                if !sym.is_zero() {
                    return Err(Error::NotAntisymmetric(0, 1));
                }
            }
            let m = AntisymMatrix::from_upper(n, |i, j| upper[i][j].clone());
            let pf = pfaffian(&PolyRing::new(&reg), &m)?;
            let quot = vandermonde_divide(pf, &(0..np).collect::<Vec<_>>())?;
            Ok(limit(quot, spec, 0).constant_term())
        }
    }
}
