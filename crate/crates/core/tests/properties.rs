use charderiv::combinatorics::{kostka, partitions, schur_eval, Partition};
use charderiv::evaluators::{a_multisum, a_tilde, eval_det_kostka};
use charderiv::jets::{borel, build_d, FunctionJet, KernelJet};
use charderiv::linalg::{det, det_bareiss, det_cofactor, pfaffian, AntisymMatrix, RingMatrix, ScalarRing};
use charderiv::rmt::ginibre_moment_general;
use charderiv::verify::{random_kernel, random_points, rng};
use charderiv::{MultiPoly, Registry, Scalar};
use num_traits::Signed;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=7, -3i64..=3).prop_map(|(n, d, im)| {
        Scalar::new(Scalar::ratio(n, d).re().clone(), Scalar::ratio(im, d).re().clone())
    })
}

fn real() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| Scalar::ratio(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_distributes(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!((&a + &b) * &c, &a * &c + &b * &c);
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn linear_division_undoes_multiplication(coeffs in prop::collection::vec(-5i64..=5, 1..8)) {
        let reg = Registry::new(["a", "b"]);
        let mut p = MultiPoly::zero(&reg);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(vec![i as u32 % 3, i as u32 / 3], Scalar::int(*c));
        }
        let lin = MultiPoly::var(&reg, 1).try_sub(&MultiPoly::var(&reg, 0)).unwrap();
        let q = p.try_mul(&lin).unwrap().divide_by_linear(0, 1).unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn determinant_routes_agree(n in 1usize..5, vals in prop::collection::vec(real(), 16)) {
        let m = RingMatrix::from_fn(n, n, |i, j| vals[i * 4 + j].clone());
        let a = det(&ScalarRing, &m).unwrap();
        prop_assert_eq!(&a, &det_bareiss(&ScalarRing, &m).unwrap());
        prop_assert_eq!(&a, &det_cofactor(&ScalarRing, &m).unwrap());
    }

    #[test]
    fn pfaffian_squares_to_determinant(half in 1usize..4, vals in prop::collection::vec(scalar(), 15)) {
        let n = 2 * half;
        let m = AntisymMatrix::from_upper(n, |i, j| vals[(i * n + j) % 15].clone());
        let pf = pfaffian(&ScalarRing, &m).unwrap();
        prop_assert_eq!(&pf * &pf, det(&ScalarRing, &m.to_matrix(&ScalarRing)).unwrap());
    }

    #[test]
    fn schur_routes_agree(size in 0u32..5, pick in 0usize..8, pts in prop::collection::vec(real(), 3)) {
        let shapes = partitions(size, 3);
        let shape = &shapes[pick % shapes.len()];
        let distinct = pts[0] != pts[1] && pts[1] != pts[2] && pts[0] != pts[2];
        prop_assume!(distinct);
        let e = schur_eval(shape, &pts).unwrap();
        prop_assert_eq!(e.bialternant, e.monomial);
    }

    #[test]
    fn kostka_symmetric_in_weight(w in prop::collection::vec(0u32..3, 3), pick in 0usize..8) {
        let size: u32 = w.iter().sum();
        let shapes = partitions(size, 3);
        let shape = &shapes[pick % shapes.len()];
        let mut rev = w.clone();
        rev.reverse();
        prop_assert_eq!(kostka(shape, &w).unwrap(), kostka(shape, &rev).unwrap());
    }

    #[test]
    fn borel_d1_law(cs in prop::collection::vec(real(), 6)) {
        let jet = FunctionJet::new(Scalar::zero(), cs.clone()).unwrap();
        let s = borel(&jet, 1, &[5]).unwrap();
        for (m, c) in cs.iter().enumerate() {
            let f: i64 = (1..=m as i64).product();
            prop_assert_eq!(s.coeff(&[m as u32]), c * &Scalar::ratio(1, f));
        }
    }

    #[test]
    fn multisum_symmetric_per_tuple(x in prop::collection::vec(0i64..3, 2), y in prop::collection::vec(0i64..3, 3)) {
        let xr: Vec<i64> = x.iter().rev().copied().collect();
        let yr: Vec<i64> = vec![y[2], y[0], y[1]];
        prop_assert_eq!(a_multisum(&x, &y), a_multisum(&xr, &yr));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn det_evaluator_invariant_under_alpha_permutation(seed in 0u64..1000) {
        let mut r = rng(seed);
        let kernel = random_kernel(&mut r, 6);
        let pts = random_points(&mut r, 2);
        let jet = KernelJet::from_poly(&kernel, (&pts[0], &pts[1]), 5).unwrap();
        let beta = [1u32, 0, 0];
        let base = eval_det_kostka(&jet, &[2, 1, 0], &beta, 3).unwrap();
        prop_assert_eq!(&base, &eval_det_kostka(&jet, &[0, 1, 2], &beta, 3).unwrap());
        prop_assert_eq!(&base, &eval_det_kostka(&jet, &[1, 2, 0], &[0, 0, 1], 3).unwrap());
    }

    #[test]
    fn a_tilde_alternates(size in 0u32..3, q in 0u32..3, pick in 0usize..4) {
        let k = 2;
        let hat = |p: &Partition| p.shifted(k).unwrap().values().to_vec();
        let lams = partitions(size, k);
        let nus = partitions(q, k);
        let lh = hat(&lams[pick % lams.len()]);
        let nh = hat(&nus[pick % nus.len()]);
        let v = a_tilde(&lh, &nh, &lh, &nh).unwrap();
        let swapped: Vec<u64> = nh.iter().rev().copied().collect();
        prop_assert_eq!(a_tilde(&lh, &swapped, &lh, &nh).unwrap(), -v);
    }

    #[test]
    fn ginibre_polynomial_shape(alpha in prop::collection::vec(0u32..3, 1..4)) {
        let k = alpha.len();
        let g = ginibre_moment_general(k, &alpha).unwrap();
        prop_assert!(g.poly_t.iter().all(|c| !c.is_negative()));
        prop_assert!(g.poly_t.len() <= alpha.iter().sum::<u32>() as usize + 1);
        let mut rev = alpha.clone();
        rev.reverse();
        prop_assert_eq!(g.poly_t, ginibre_moment_general(k, &rev).unwrap().poly_t);
    }
}

#[test]
fn operator_scaling_is_homogeneous() {
    // D_{(s u_1, s^2 u_2, ...), k} = s^{-k} D_{u, k}
    for k in 1..=6 {
        let parts = build_d(k).rescaled();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![-(k as i64)]);
    }
}
