//! A determinant limit three ways: transform route, Kostka route, oracle.

use charderiv::evaluators::{eval_det_corollary, eval_det_kostka, oracle_eval, OracleProblem, PolyDetProblem};
use charderiv::jets::{DerivativeSpec, KernelJet};
use charderiv::{MultiPoly, Registry, Scalar};

fn main() -> charderiv::Result<()> {
    let reg = Registry::new(["x", "y"]);
    let x = MultiPoly::var(&reg, 0);
    let y = MultiPoly::var(&reg, 1);
    // B(x, y) = 1 + x y + 3 x^2 y - x^3 y^2
    let kernel = MultiPoly::one(&reg)
        .try_add(&x.try_mul(&y)?)?
        .try_add(&x.pow(2).try_mul(&y)?.scale(&Scalar::int(3)))?
        .try_sub(&x.pow(3).try_mul(&y.pow(2))?)?;

    let (chi, xi) = (Scalar::ratio(1, 2), Scalar::ratio(-1, 3));
    let (alpha, beta) = (vec![2, 1], vec![1, 0]);
    let xs = DerivativeSpec::single(chi.clone(), alpha.clone())?;
    let ys = DerivativeSpec::single(xi.clone(), beta.clone())?;

    let prob = PolyDetProblem::Kernel { x: xs.clone(), y: ys.clone(), kernel: kernel.clone() };
    let transform = eval_det_corollary(&prob.jets()?)?;
    let jet = KernelJet::from_poly(&kernel, (&chi, &xi), 4)?;
    let kostka = eval_det_kostka(&jet, &alpha, &beta, 2)?;
    let oracle = oracle_eval(&OracleProblem::DetKernel { x: xs, y: ys, kernel })?;
    println!("transform {transform}\nkostka    {kostka}\noracle    {oracle}");
    assert!(transform == kostka && kostka == oracle);
    Ok(())
}
