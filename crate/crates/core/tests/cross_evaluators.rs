use charderiv::verify::cross_suite;

#[test]
fn seeded_cross_suite_agrees() {
    let cases = cross_suite(11, 100, 3, 4).unwrap();
    for c in &cases {
        println!("{}", c.line());
    }
    assert!(cases.iter().all(|c| c.passed));
}
