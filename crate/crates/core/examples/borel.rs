//! First and second order Borel series of a jet.

use charderiv::jets::{borel, FunctionJet};
use charderiv::Scalar;

fn main() -> charderiv::Result<()> {
    // f(x) = 1/(1 - x) at 0: every c_j is 1
    let jet = FunctionJet::new(Scalar::zero(), vec![Scalar::one(); 9])?;
    let b1 = borel(&jet, 1, &[6])?;
    println!("B_1 f = {}", b1.poly());
    let b2 = borel(&jet, 2, &[4, 2])?;
    println!("B_2 f = {}", b2.poly());
    Ok(())
}
