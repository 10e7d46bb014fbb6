use num_bigint::BigInt;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use legdouble::chromatic::{dual_chromatic_polynomial, extract_linear_factors, sheaf_point_count};
use legdouble::doubling::{decompose, double_map, expected_decomposable_polynomial, superimpose_dual};
use legdouble::plane_graph::CombMap;
use legdouble::polygon::{enumerate_triangulations, flip_distance, Triangulation};

fn pair(n: usize, a: usize, b: usize) -> (Triangulation, Triangulation) {
    let all = enumerate_triangulations(n).unwrap();
    (all[a % all.len()].clone(), all[b % all.len()].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn genus_is_n_minus_3(n in 4usize..=10, a in any::<usize>(), b in any::<usize>()) {
        let (x, y) = pair(n, a, b);
        prop_assert_eq!(double_map(&x, &y).unwrap().weave_genus().unwrap(), n - 3);
    }

    #[test]
    fn dual_is_superimposition(n in 3usize..=9, a in any::<usize>(), b in any::<usize>()) {
        let (x, y) = pair(n, a, b);
        let dual = double_map(&x, &y).unwrap().dual().unwrap();
        prop_assert!(dual.isomorphic(&superimpose_dual(&x, &y).unwrap()));
    }

    #[test]
    fn decomposition_is_relabel_invariant(n in 4usize..=9, a in any::<usize>(), b in any::<usize>(), seed in any::<u64>()) {
        let (x, y) = pair(n, a, b);
        let m = double_map(&x, &y).unwrap();
        let mut perm: Vec<usize> = (0..m.dart_count()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let r1 = decompose(&m).unwrap();
        let r2 = decompose(&m.relabel(&perm).unwrap()).unwrap();
        prop_assert_eq!(r1.decomposable, r2.decomposable);
        prop_assert_eq!(r1.k_std + r1.l_clifford, r2.k_std + r2.l_clifford);
        prop_assert_eq!(r1.residual_form, r2.residual_form);
        let r3 = decompose(&double_map(&y, &x).unwrap()).unwrap();
        prop_assert_eq!(r1.decomposable, r3.decomposable);
    }

    #[test]
    fn certificate_bounds_moves(n in 4usize..=9, a in any::<usize>(), b in any::<usize>()) {
        let (x, y) = pair(n, a, b);
        let m = double_map(&x, &y).unwrap();
        let r = decompose(&m).unwrap();
        let p = dual_chromatic_polynomial(&m).unwrap();
        let f = extract_linear_factors(&p, &[2, 3]);
        prop_assert_eq!(f.multiplicities[0], Some(r.certificate.mult_x_minus_2));
        prop_assert_eq!(f.multiplicities[1], Some(r.certificate.mult_x_minus_3));
        if r.decomposable {
            prop_assert!(r.residual.isomorphic(&CombMap::theta()));
            prop_assert!(r.certificate.mult_x_minus_2 >= r.k_std);
            prop_assert!(r.certificate.mult_x_minus_3 >= r.l_clifford);
            prop_assert_eq!(p, expected_decomposable_polynomial(r.k_std, r.l_clifford));
            prop_assert!(flip_distance(&x, &y).unwrap() <= n - 3);
        }
    }

    #[test]
    fn four_colour_count_is_positive(n in 3usize..=10, a in any::<usize>(), b in any::<usize>()) {
        let (x, y) = pair(n, a, b);
        let m = double_map(&x, &y).unwrap();
        prop_assert!(sheaf_point_count(&m, 3).unwrap() >= BigInt::from(1));
        prop_assert!(sheaf_point_count(&m, 4).unwrap() >= BigInt::from(1));
    }
}
