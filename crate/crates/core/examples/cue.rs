//! CUE moments: finite N, inside the disc, and on the unit circle.

use charderiv::rmt::{cue_circle_limit, cue_disc_limit, cue_finite_moment, cue_scaled};
use charderiv::Scalar;
use num_rational::BigRational;
use num_traits::Zero;

fn main() -> charderiv::Result<()> {
    let chi = Scalar::ratio(1, 2);
    for n in [5u64, 20, 80] {
        let z = cue_finite_moment(n, &chi, &[1, 1])?;
        println!("N={n:>3}  k=2 h1=1 at chi=1/2: {:.12}", z.to_f64().0);
    }
    let lim = cue_disc_limit(2, 1)?;
    println!("limit {} = {:.12}", lim.render(), lim.value_f64(0.25));

    // second derivatives too: h = (h0, h1, h2)
    println!("N=4, k=2, one first and one second derivative: {}", cue_finite_moment(4, &chi, &[0, 1, 1])?);

    let circle = cue_circle_limit(2, 1, &BigRational::zero())?;
    println!("unit circle k=2 h1=1: {} = {:.6e}", circle.exact, circle.value);
    for n in [40u64, 80, 160] {
        println!("  N={n:>3} rescaled: {:.6e}", cue_scaled(n, 2, 1)?.1);
    }
    Ok(())
}
