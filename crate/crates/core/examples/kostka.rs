//! Kostka numbers, hook lengths and Schur polynomials.

use charderiv::combinatorics::{kostka, kostka_ones, partitions, schur_eval, Partition};
use charderiv::Scalar;

fn main() -> charderiv::Result<()> {
    let shape = Partition::new(vec![3, 1])?;
    println!("K_(3,1),(2,1,1) = {}", kostka(&shape, &[2, 1, 1])?);

    // standard tableaux: hook formula and shifted-sequence form
    for lam in partitions(5, 5) {
        let k = kostka_ones(&lam)?;
        println!("{:?}: f = {} (shifted form {})", lam.parts(), k.hook, k.shifted);
    }

    let pts = [Scalar::int(1), Scalar::ratio(1, 2), Scalar::ratio(-2, 3)];
    let s = schur_eval(&Partition::new(vec![2, 1])?, &pts)?;
    println!("s_(2,1)(1, 1/2, -2/3) = {} = {}", s.bialternant, s.monomial);
    Ok(())
}
