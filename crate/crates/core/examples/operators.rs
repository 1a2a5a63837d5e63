//! The operators D_{u,k} and the identity they encode on a rational product.

use charderiv::jets::{build_d, product_derivative};
use charderiv::Scalar;

fn main() -> charderiv::Result<()> {
    for k in 1..=5 {
        println!("D_{k} = {}", build_d(k));
    }

    // d^3/dx^3 of (z1 - x)(z2 - x) / ((w1 - x)(w2 - x)) at x = 1/3
    let zs = [Scalar::int(2), Scalar::ratio(-1, 2)];
    let ws = [Scalar::int(1), Scalar::ratio(5, 4)];
    let x = Scalar::ratio(1, 3);
    for k in 0..=3 {
        println!("k={k}: {}", product_derivative(k, &x, &zs, &ws)?);
    }
    Ok(())
}
