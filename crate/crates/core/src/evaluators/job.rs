//! JSON job files for the `eval` command.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluators::{
    eval_det_corollary, eval_det_kostka, eval_main_theorem, eval_pf_kostka, eval_pf_two_point, oracle_eval,
    OracleProblem, PolyDetProblem, PolyPfProblem, TwoPointJets,
};
use crate::exact::{MultiPoly, Registry, Scalar};
use crate::jets::{DerivativeSpec, JetRecord, KernelJet};

/// Sparse polynomial: `{"vars": ["x", "y"], "terms": [[[2, 1], "3/1"], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyRecord {
    pub vars: Vec<String>,
    pub terms: Vec<(Vec<u32>, Scalar)>,
}

impl PolyRecord {
    pub fn to_poly(&self) -> Result<MultiPoly> {
        let reg = Registry::new(self.vars.iter().cloned());
        let mut p = MultiPoly::zero(&reg);
        for (e, c) in &self.terms {
            if e.len() != self.vars.len() {
                return Err(Error::Parse(format!("exponent {e:?} does not match {} variables", self.vars.len())));
            }
            p.add_term(e.clone(), c.clone());
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KernelInput {
    Poly(PolyRecord),
    Jet(JetRecord),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Det,
    Pf,
    Pf2,
    Main,
}

/// `mode` picks the route:
/// - `det` with `alpha`/`beta`/`k`: Kostka route on a kernel jet at `points`;
///   with `spec` (and optionally `y_spec`): transform route on a polynomial.
/// - `pf`: Kostka route for the single-point Pfaffian.
/// - `pf2`: two-point Pfaffian, polynomial kernel, `points = [chi, xi]`.
/// - `main`: Pfaffian main theorem with optional `b` columns and `c` block.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalJob {
    pub mode: Mode,
    pub kernel: KernelInput,
    #[serde(default)]
    pub points: Vec<Scalar>,
    pub spec: Option<DerivativeSpec>,
    pub y_spec: Option<DerivativeSpec>,
    #[serde(default)]
    pub alpha: Vec<u32>,
    #[serde(default)]
    pub beta: Vec<u32>,
    pub k: Option<usize>,
    #[serde(default)]
    pub b: Vec<PolyRecord>,
    #[serde(default)]
    pub c: Vec<Vec<Scalar>>,
    #[serde(default)]
    pub oracle: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub k: usize,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub jet_order: usize,
    pub q_max: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EvalOutcome {
    pub mode: Mode,
    pub value: Scalar,
    pub oracle: Option<Scalar>,
    pub bounds: Bounds,
}

impl EvalJob {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    fn poly(&self) -> Result<MultiPoly> {
        match &self.kernel {
            KernelInput::Poly(p) => p.to_poly(),
            KernelInput::Jet(_) => Err(Error::pre(format!("{:?} mode needs a polynomial kernel", self.mode))),
        }
    }

    fn k(&self) -> Result<usize> {
        let k = self.k.unwrap_or(self.alpha.len().max(self.beta.len()));
        if k == 0 {
            return Err(Error::pre("k must be at least 1"));
        }
        Ok(k)
    }

    fn padded(&self, w: &[u32], k: usize) -> Result<Vec<u32>> {
        if w.len() > k {
            return Err(Error::pre(format!("weight {w:?} longer than k = {k}")));
        }
        let mut v = w.to_vec();
        v.resize(k, 0);
        Ok(v)
    }

    /// Kernel jet at `(points[0], points[1 or 0])`, or the supplied jet.
    fn jet(&self, order: usize) -> Result<KernelJet> {
        match &self.kernel {
            KernelInput::Jet(r) => KernelJet::try_from(r),
            KernelInput::Poly(p) => {
                let (x, y) = match self.points.as_slice() {
                    [x] => (x, x),
                    [x, y] => (x, y),
                    _ => return Err(Error::pre("give one or two points for a polynomial kernel")),
                };
                KernelJet::from_poly(&p.to_poly()?, (x, y), order)
            }
        }
    }

    pub fn run(&self) -> Result<EvalOutcome> {
        let outcome = |value, oracle, bounds| Ok(EvalOutcome { mode: self.mode, value, oracle, bounds });
        match self.mode {
            Mode::Det if self.spec.is_some() => {
                let x = self.spec.clone().expect("checked");
                let y = self.y_spec.clone().unwrap_or_else(|| x.clone());
                let kernel = self.poly()?;
                let prob = PolyDetProblem::Kernel { x: x.clone(), y: y.clone(), kernel: kernel.clone() };
                let value = eval_det_corollary(&prob.jets()?)?;
                let oracle = self
                    .oracle
                    .then(|| oracle_eval(&OracleProblem::DetKernel { x: x.clone(), y: y.clone(), kernel }))
                    .transpose()?;
                let bounds = Bounds {
                    k: x.total(),
                    alpha: Vec::new(),
                    beta: Vec::new(),
                    jet_order: x.max_jet_order().max(y.max_jet_order()),
                    q_max: None,
                };
                outcome(value, oracle, bounds)
            }
            Mode::Det => {
                let k = self.k()?;
                let (alpha, beta) = (self.padded(&self.alpha, k)?, self.padded(&self.beta, k)?);
                let order = alpha.iter().sum::<u32>().max(beta.iter().sum()) as usize + k - 1;
                let jet = self.jet(order)?;
                let value = eval_det_kostka(&jet, &alpha, &beta, k)?;
                let oracle = if self.oracle {
                    let kernel = self.poly()?;
                    let (cx, cy) = (jet.points.0.clone(), jet.points.1.clone());
                    Some(oracle_eval(&OracleProblem::DetKernel {
                        x: DerivativeSpec::single(cx, alpha.clone())?,
                        y: DerivativeSpec::single(cy, beta.clone())?,
                        kernel,
                    })?)
                } else {
                    None
                };
                outcome(value, oracle, Bounds { k, alpha, beta, jet_order: order, q_max: None })
            }
            Mode::Pf => {
                let k = self.k.unwrap_or(self.alpha.len().div_ceil(2)).max(1);
                let alpha = self.padded(&self.alpha, 2 * k)?;
                let order = alpha.iter().sum::<u32>() as usize + 2 * k - 1;
                let jet = self.jet(order)?;
                let value = eval_pf_kostka(&jet, &alpha, k)?;
                let oracle = if self.oracle {
                    Some(oracle_eval(&OracleProblem::Pfaffian {
                        spec: DerivativeSpec::single(jet.points.0.clone(), alpha.clone())?,
                        a: self.poly()?,
                        b: Vec::new(),
                        c: Vec::new(),
                    })?)
                } else {
                    None
                };
                outcome(value, oracle, Bounds { k, alpha, beta: Vec::new(), jet_order: order, q_max: None })
            }
            Mode::Pf2 => {
                let k = self.k()?;
                let alpha = self.padded(&self.alpha, k)?;
                let [chi, xi] = self.points.as_slice() else {
                    return Err(Error::pre("pf2 needs points [chi, xi]"));
                };
                let a = self.poly()?;
                let q = alpha.iter().sum::<u32>();
                let order = q as usize + k - 1;
                let jets = TwoPointJets {
                    cc: KernelJet::from_poly(&a, (chi, chi), order)?,
                    cx: KernelJet::from_poly(&a, (chi, xi), order)?,
                    xx: KernelJet::from_poly(&a, (xi, xi), order)?,
                };
                let value = eval_pf_two_point(&jets, &alpha, k)?;
                let oracle = if self.oracle {
                    let spec = DerivativeSpec::new(vec![chi.clone(), xi.clone()], vec![alpha.clone(), alpha.clone()])?;
                    Some(oracle_eval(&OracleProblem::Pfaffian { spec, a, b: Vec::new(), c: Vec::new() })?)
                } else {
                    None
                };
                outcome(value, oracle, Bounds { k, alpha, beta: Vec::new(), jet_order: order, q_max: Some(q) })
            }
            Mode::Main => {
                let spec = self.spec.clone().ok_or_else(|| Error::pre("main mode needs a spec"))?;
                let a = self.poly()?;
                let b = self.b.iter().map(PolyRecord::to_poly).collect::<Result<Vec<_>>>()?;
                let prob = PolyPfProblem { spec: spec.clone(), a: a.clone(), b: b.clone(), c: self.c.clone() };
                let value = eval_main_theorem(&prob.jets()?)?;
                let oracle = self
                    .oracle
                    .then(|| oracle_eval(&OracleProblem::Pfaffian { spec: spec.clone(), a, b, c: self.c.clone() }))
                    .transpose()?;
                let bounds = Bounds {
                    k: spec.total(),
                    alpha: Vec::new(),
                    beta: Vec::new(),
                    jet_order: spec.max_jet_order(),
                    q_max: None,
                };
                outcome(value, oracle, bounds)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_job_round_trip() {
        let job = EvalJob::from_json(
            r#"{"mode": "det", "kernel": {"vars": ["x", "y"], "terms": [[[0, 0], "1/1"], [[1, 1], "1/1"], [[2, 2], "1/1"]]},
                "points": ["1/2", "1/3"], "alpha": [1, 0], "beta": [0, 1], "oracle": true}"#,
        )
        .unwrap();
        let out = job.run().unwrap();
        assert_eq!(Some(out.value), out.oracle);
        assert_eq!(out.bounds.k, 2);
    }

    #[test]
    fn rejects_unknown_fields() {
        assert!(EvalJob::from_json(r#"{"mode": "det", "kernel": {"vars": [], "terms": []}, "nope": 1}"#).is_err());
    }
}
