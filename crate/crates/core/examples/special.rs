//! Laguerre, Hermite, Barnes G and Bessel I.

use charderiv::rmt::{special, SpecialValue};
use charderiv::Scalar;

fn main() -> charderiv::Result<()> {
    let x = Scalar::ratio(1, 2);
    for (name, params) in [("laguerre", vec![3, 1]), ("laguerre_trunc", vec![4, 2]), ("hermite", vec![4]), ("barnes_g", vec![5])] {
        match special(name, &params, &x)? {
            SpecialValue::Exact(v) => println!("{name}{params:?}(1/2) = {v}"),
            SpecialValue::Float(v) => println!("{name}{params:?}(1/2) = {v}"),
        }
    }
    if let SpecialValue::Float(v) = special("bessel_i", &[1], &Scalar::int(2))? {
        println!("I_1(2) = {v:.15}");
    }
    Ok(())
}
