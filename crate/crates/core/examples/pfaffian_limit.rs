//! Pfaffian limit with extra columns B and a constant block C, two points.

use charderiv::evaluators::{eval_main_theorem, oracle_eval, OracleProblem, PolyPfProblem};
use charderiv::jets::DerivativeSpec;
use charderiv::verify::{random_antisym, rng};
use charderiv::{MultiPoly, Registry, Scalar};

fn main() -> charderiv::Result<()> {
    // seeded antisymmetric A(x, y) of degree <= 6
    let a = random_antisym(&mut rng(1), 6);
    println!("A = {a}");
    let r1 = Registry::new(["x"]);
    let t = MultiPoly::var(&r1, 0);
    let b = vec![t.pow(2).try_add(&MultiPoly::one(&r1))?];

    // three variables (P = 3) plus one B column: Pf of size 4
    let spec = DerivativeSpec::new(vec![Scalar::ratio(1, 2), Scalar::int(2)], vec![vec![0, 1], vec![2]])?;
    let prob = PolyPfProblem { spec: spec.clone(), a: a.clone(), b: b.clone(), c: vec![vec![Scalar::zero()]] };
    let value = eval_main_theorem(&prob.jets()?)?;
    let oracle = oracle_eval(&OracleProblem::Pfaffian { spec, a, b, c: vec![vec![Scalar::zero()]] })?;
    println!("theorem {value}\noracle  {oracle}");
    assert_eq!(value, oracle);
    Ok(())
}
