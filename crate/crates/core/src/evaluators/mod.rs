//! Engines for the limits `lim prod d^n (det or Pf) / Vandermonde`: the
//! residue-transform route, the Kostka-number route, the two-point Pfaffian
//! form, the first-order multinomial sums and a brute-force polynomial oracle.

pub mod job;
mod kostka_route;
mod oracle;
mod problem;
mod transform_route;
mod two_point;

pub use kostka_route::{
    eval_det_kostka, eval_det_kostka_columns, eval_first_order_multinomial, eval_first_order_multinomial_columns, eval_first_order_multinomial_split,
    eval_pf_kostka, first_order_pattern,
};
pub use job::{EvalJob, EvalOutcome};
pub use oracle::{oracle_eval, OracleProblem};
pub use problem::{column_jets, kernel_jets, DetEntries, DetProblem, PfaffianProblem, PolyDetProblem, PolyPfProblem};
pub use transform_route::{eval_borel_higher, eval_det_corollary, eval_main_theorem};
pub use two_point::{a_multisum, a_tilde, eval_pf_two_point, eval_pf_two_point_bounded, TwoPointJets};
