//! Seeded agreement suite across all evaluator routes.

use charderiv::verify::cross_suite;

fn main() -> charderiv::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let cases = cross_suite(seed, 24, 3, 4)?;
    for c in &cases {
        println!("{}", c.line());
    }
    let bad = cases.iter().filter(|c| !c.passed).count();
    println!("{} / {} agree", cases.len() - bad, cases.len());
    Ok(())
}
