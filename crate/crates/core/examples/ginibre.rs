//! Ginibre moments of |D|^2 with derivatives, closed forms and the evaluator route.

use charderiv::rmt::{
    ginibre_moment_first, ginibre_moment_general, ginibre_moment_one_higher, ginibre_moment_two_higher,
    ginibre_via_evaluator,
};
use charderiv::Scalar;

fn main() -> charderiv::Result<()> {
    for k in 1..=3 {
        for h in 0..=k {
            println!("k={k} h={h}: {}", ginibre_moment_first(k, h)?.render());
        }
    }
    println!("one higher (k=2, n=3): {}", ginibre_moment_one_higher(2, 3)?.render());
    println!("two higher (k=3, 2, 1): {}", ginibre_moment_two_higher(3, 2, 1)?.render());

    let chi = Scalar::ratio(3, 4);
    let g = ginibre_moment_general(2, &[2, 1])?;
    let t = chi.norm_sqr();
    println!("poly at t = {t}: {} (evaluator: {})", g.poly_at(&t), ginibre_via_evaluator(2, &[2, 1], &chi)?);
    Ok(())
}
