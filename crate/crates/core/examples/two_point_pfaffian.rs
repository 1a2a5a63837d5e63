//! Two-point Pfaffian through the A-tilde multisums, checked by the oracle.

use charderiv::evaluators::{a_tilde, eval_pf_two_point, oracle_eval, OracleProblem, TwoPointJets};
use charderiv::jets::{DerivativeSpec, KernelJet};
use charderiv::verify::{random_antisym, rng};
use charderiv::Scalar;

fn main() -> charderiv::Result<()> {
    let a = random_antisym(&mut rng(4), 6);
    let (chi, xi) = (Scalar::zero(), Scalar::ratio(2, 3));
    let (alpha, k) = (vec![1, 1], 2);
    let order = 2 + k - 1;
    let jets = TwoPointJets {
        cc: KernelJet::from_poly(&a, (&chi, &chi), order)?,
        cx: KernelJet::from_poly(&a, (&chi, &xi), order)?,
        xx: KernelJet::from_poly(&a, (&xi, &xi), order)?,
    };
    let value = eval_pf_two_point(&jets, &alpha, k)?;
    let spec = DerivativeSpec::new(vec![chi, xi], vec![alpha.clone(), alpha])?;
    let oracle = oracle_eval(&OracleProblem::Pfaffian { spec, a, b: vec![], c: vec![] })?;
    println!("two-point {value}\noracle    {oracle}");

    println!("A~((1,2),(0,1); (1,2),(0,1)) = {}", a_tilde(&[1, 2], &[0, 1], &[1, 2], &[0, 1])?);
    Ok(())
}
