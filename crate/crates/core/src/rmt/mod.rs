//! Random matrix applications: Ginibre and CUE characteristic polynomial
//! derivative moments.

pub mod cue;
pub mod ginibre;
pub mod special;

use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::exact::{rational_to_f64, MultiPoly, Registry, Scalar};

pub use cue::{
    circle_limit_truncated, cue_circle_limit, cue_disc_limit, cue_finite_moment, cue_finite_moment_laguerre, cue_jet, cue_scaled, CircleLimit,
};
pub use ginibre::{
    ginibre_jet, ginibre_moment_first, ginibre_moment_general, ginibre_moment_one_higher, ginibre_moment_two_higher,
    ginibre_via_evaluator, GinibreJet,
};
pub use special::{bessel_i, hermite, hermite_coeffs, laguerre, laguerre_coeffs, laguerre_truncated, special, SpecialValue};

/// Factor `e^{exp_coeff |chi|^2} pi^{pi_power} (1 - |chi|^2)^{one_minus_t_power}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prefactor {
    pub exp_coeff: i64,
    pub pi_power: i64,
    pub one_minus_t_power: i64,
}

/// Moment as `prefactor * poly(t)` with `t = |chi|^2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentResult {
    pub k: usize,
    pub prefactor: Prefactor,
    #[serde(serialize_with = "coeff_pairs")]
    pub poly_t: Vec<BigRational>,
}

fn coeff_pairs<S: Serializer>(c: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    let nz: Vec<_> = c.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
    let mut seq = s.serialize_seq(Some(nz.len()))?;
    for (m, v) in nz {
        seq.serialize_element(&[m.to_string(), format!("{}/{}", v.numer(), v.denom())])?;
    }
    seq.end()
}

impl MomentResult {
    pub fn poly(&self) -> MultiPoly {
        let reg = Registry::new(["t"]);
        let mut p = MultiPoly::zero(&reg);
        for (m, c) in self.poly_t.iter().enumerate() {
            p.add_term(vec![m as u32], Scalar::real(c.clone()));
        }
        p
    }

    /// Polynomial part at `t`, prefactor left out.
    pub fn poly_at(&self, t: &BigRational) -> BigRational {
        self.poly_t.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    /// Full value in floating point.
    pub fn value_f64(&self, t: f64) -> f64 {
        let p: f64 = self.poly_t.iter().rev().fold(0.0, |acc, c| acc * t + rational_to_f64(c));
        let pf = &self.prefactor;
        p * (pf.exp_coeff as f64 * t).exp()
            * std::f64::consts::PI.powi(pf.pi_power as i32)
            * (1.0 - t).powi(pf.one_minus_t_power as i32)
    }

    /// Human-readable form, `e^{k t} / pi^k * (...)`.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        let pf = &self.prefactor;
        if pf.exp_coeff != 0 {
            parts.push(format!("e^({} t)", pf.exp_coeff));
        }
        if pf.pi_power != 0 {
            parts.push(format!("pi^({})", pf.pi_power));
        }
        if pf.one_minus_t_power != 0 {
            parts.push(format!("(1 - t)^({})", pf.one_minus_t_power));
        }
        let poly: Vec<String> = self
            .poly_t
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| match m {
                0 => c.to_string(),
                1 => format!("{c} t"),
                _ => format!("{c} t^{m}"),
            })
            .collect();
        let poly = if poly.is_empty() { "0".to_string() } else { poly.join(" + ").replace("+ -", "- ") };
        parts.push(format!("({poly})"));
        parts.join(" * ")
    }
}
