use crate::error::{Error, Result};
use crate::exact::{MultiPoly, Scalar};
use crate::jets::{DerivativeSpec, FunctionJet, KernelJet};

/// Matrix entries of a determinant problem.
#[derive(Clone, Debug)]
pub enum DetEntries {
    /// `columns[b][l]` is the jet of `B_b` at `chi_l`.
    Columns(Vec<Vec<FunctionJet>>),
    /// `B(x, y)` with its own limit spec in `y`; `jets[l][m]` sits at `(chi_l, xi_m)`.
    Kernel { y: DerivativeSpec, jets: Vec<Vec<KernelJet>> },
}

/// `lim prod d^n det[...] / Delta(x) (Delta(y))`.
#[derive(Clone, Debug)]
pub struct DetProblem {
    pub x: DerivativeSpec,
    pub entries: DetEntries,
}

impl DetProblem {
    pub fn validate(&self) -> Result<()> {
        self.x.validate()?;
        let p = self.x.total();
        match &self.entries {
            DetEntries::Columns(cols) => {
                if cols.len() != p {
                    return Err(Error::pre(format!("{} columns for {p} variables", cols.len())));
                }
                for col in cols {
                    check_function_jets(col, &self.x)?;
                }
            }
            DetEntries::Kernel { y, jets } => {
                y.validate()?;
                if y.total() != p {
                    return Err(Error::pre(format!("{p} x variables but {} y variables", y.total())));
                }
                check_kernel_jets(jets, &self.x.points, &y.points)?;
            }
        }
        Ok(())
    }
}

/// `lim prod d^n Pf[[A, B], [-B^T, C]] / Delta_P(x)`.
#[derive(Clone, Debug)]
pub struct PfaffianProblem {
    pub spec: DerivativeSpec,
    /// `a[l][m]` is the jet of `A` at `(chi_l, chi_m)`.
    pub a: Vec<Vec<KernelJet>>,
    /// `b[d][l]` is the jet of `B_d` at `chi_l`.
    pub b: Vec<Vec<FunctionJet>>,
    pub c: Vec<Vec<Scalar>>,
}

impl PfaffianProblem {
    pub fn new(spec: DerivativeSpec, a: Vec<Vec<KernelJet>>, b: Vec<Vec<FunctionJet>>, c: Vec<Vec<Scalar>>) -> Result<Self> {
        let p = PfaffianProblem { spec, a, b, c };
        p.validate()?;
        Ok(p)
    }

    pub fn size(&self) -> usize {
        self.spec.total() + self.b.len()
    }

    pub fn validate(&self) -> Result<()> {
        self.spec.validate()?;
        let n = self.size();
        if n == 0 || n % 2 == 1 {
            return Err(Error::OddDimension(n));
        }
        check_kernel_jets(&self.a, &self.spec.points, &self.spec.points)?;
        for l in 0..self.a.len() {
            for m in 0..=l {
                if !self.a[l][m].antisymmetric_with(&self.a[m][l]) {
                    return Err(Error::NotAntisymmetric(l, m));
                }
            }
        }
        for col in &self.b {
            check_function_jets(col, &self.spec)?;
        }
        let q = self.b.len();
        if self.c.len() != q || self.c.iter().any(|r| r.len() != q) {
            return Err(Error::pre(format!("C must be {q}x{q}")));
        }
        for i in 0..q {
            for j in 0..=i {
                if !(&self.c[i][j] + &self.c[j][i]).is_zero() {
                    return Err(Error::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(())
    }
}

fn check_function_jets(col: &[FunctionJet], spec: &DerivativeSpec) -> Result<()> {
    if col.len() != spec.num_points() {
        return Err(Error::pre("one jet per limiting point is required"));
    }
    for (l, j) in col.iter().enumerate() {
        if j.point != spec.points[l] {
            return Err(Error::pre(format!("jet at {} but limiting point is {}", j.point, spec.points[l])));
        }
    }
    Ok(())
}

fn check_kernel_jets(jets: &[Vec<KernelJet>], xs: &[Scalar], ys: &[Scalar]) -> Result<()> {
    if jets.len() != xs.len() || jets.iter().any(|r| r.len() != ys.len()) {
        return Err(Error::pre(format!("kernel jets must form a {}x{} table", xs.len(), ys.len())));
    }
    for (l, row) in jets.iter().enumerate() {
        for (m, j) in row.iter().enumerate() {
            if j.points.0 != xs[l] || j.points.1 != ys[m] {
                return Err(Error::pre(format!("kernel jet at ({}, {}) is misplaced", j.points.0, j.points.1)));
            }
        }
    }
    Ok(())
}

/// Jets of univariate polynomials at every point of `spec`, `out[b][l]`.
pub fn column_jets(cols: &[MultiPoly], points: &[Scalar], order: usize) -> Result<Vec<Vec<FunctionJet>>> {
    cols.iter()
        .map(|p| points.iter().map(|chi| FunctionJet::from_poly(p, chi, order)).collect())
        .collect()
}

/// Jets of a bivariate polynomial on the grid `xs x ys`, `out[l][m]`.
pub fn kernel_jets(k: &MultiPoly, xs: &[Scalar], ys: &[Scalar], order: usize) -> Result<Vec<Vec<KernelJet>>> {
    xs.iter()
        .map(|x| ys.iter().map(|y| KernelJet::from_poly(k, (x, y), order)).collect())
        .collect()
}

/// Polynomial-sourced determinant problem; the oracle reads the polynomials,
/// the theorem routes read their jets.
#[derive(Clone, Debug)]
pub enum PolyDetProblem {
    Columns { x: DerivativeSpec, cols: Vec<MultiPoly> },
    Kernel { x: DerivativeSpec, y: DerivativeSpec, kernel: MultiPoly },
}

impl PolyDetProblem {
    pub fn jets(&self) -> Result<DetProblem> {
        let p = match self {
            PolyDetProblem::Columns { x, cols } => DetProblem {
                x: x.clone(),
                entries: DetEntries::Columns(column_jets(cols, &x.points, x.max_jet_order())?),
            },
            PolyDetProblem::Kernel { x, y, kernel } => {
                let order = x.max_jet_order().max(y.max_jet_order());
                DetProblem {
                    x: x.clone(),
                    entries: DetEntries::Kernel { y: y.clone(), jets: kernel_jets(kernel, &x.points, &y.points, order)? },
                }
            }
        };
        p.validate()?;
        Ok(p)
    }
}

/// Polynomial-sourced Pfaffian problem.
#[derive(Clone, Debug)]
pub struct PolyPfProblem {
    pub spec: DerivativeSpec,
    pub a: MultiPoly,
    pub b: Vec<MultiPoly>,
    pub c: Vec<Vec<Scalar>>,
}

impl PolyPfProblem {
    pub fn jets(&self) -> Result<PfaffianProblem> {
        let order = self.spec.max_jet_order();
        PfaffianProblem::new(
            self.spec.clone(),
            kernel_jets(&self.a, &self.spec.points, &self.spec.points, order)?,
            column_jets(&self.b, &self.spec.points, order)?,
            self.c.clone(),
        )
    }
}
