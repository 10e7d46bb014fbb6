use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

use legdouble::cyclotomic::{cyclotomic_poly, euler_phi, two_cos, CycElem};
use legdouble::poly::IntPoly;

fn element() -> impl Strategy<Value = CycElem> {
    (1u32..=60).prop_flat_map(|m| {
        prop::collection::vec((-5i64..=5, 1i64..=4), 0..=m as usize).prop_map(move |cs| {
            let coeffs = cs.into_iter().map(|(a, b)| BigRational::new(a.into(), b.into())).collect();
            CycElem::from_poly(m, coeffs).unwrap()
        })
    })
}

fn close(a: num_complex::Complex64, b: num_complex::Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

#[test]
fn cyclotomic_product_identity() {
    for m in 1..=60u32 {
        let product = (1..=m)
            .filter(|d| m % d == 0)
            .fold(IntPoly::one(), |acc, d| &acc * &cyclotomic_poly(d).unwrap());
        let mut target = vec![0i64; m as usize + 1];
        target[0] = -1;
        target[m as usize] = 1;
        assert_eq!(product, IntPoly::from_i64(&target), "m = {m}");
        assert_eq!(cyclotomic_poly(m).unwrap().degree(), Some(euler_phi(m)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn galois_action_is_a_group_action(x in element(), a in 1i64..200, b in 1i64..200) {
        let m = x.conductor() as i64;
        prop_assume!(a.gcd(&m) == 1 && b.gcd(&m) == 1);
        let composed = x.galois(a).unwrap().galois(b).unwrap();
        prop_assert_eq!(composed, x.galois(a * b).unwrap());
        let fixed = (1..=m).filter(|u| u.gcd(&m) == 1).all(|u| x.galois(u).unwrap() == x);
        prop_assert_eq!(fixed, x.is_rational().is_some());
    }

    #[test]
    fn galois_is_a_ring_map(x in element(), y in element(), a in 1i64..200) {
        let m = x.conductor();
        let y = CycElem::from_poly(m, y.coeffs().to_vec()).unwrap();
        prop_assume!(a.gcd(&(m as i64)) == 1);
        prop_assert_eq!(x.mul(&y).galois(a).unwrap(), x.galois(a).unwrap().mul(&y.galois(a).unwrap()));
        prop_assert_eq!(x.add(&y).galois(a).unwrap(), x.galois(a).unwrap().add(&y.galois(a).unwrap()));
    }

    #[test]
    fn inverse_is_exact(x in element()) {
        prop_assume!(!x.is_zero());
        let one = CycElem::from_int(x.conductor(), 1).unwrap();
        prop_assert_eq!(x.mul(&x.inv().unwrap()), one);
    }

    #[test]
    fn floats_agree(x in element(), y in element()) {
        let m = x.conductor();
        let y = CycElem::from_poly(m, y.coeffs().to_vec()).unwrap();
        prop_assert!(close(x.mul(&y).to_complex(), x.to_complex() * y.to_complex()));
        prop_assert!(close(x.conj().to_complex(), x.to_complex().conj()));
        if !y.is_zero() {
            prop_assert!(close(x.div(&y).unwrap().to_complex(), x.to_complex() / y.to_complex()));
        }
    }

    #[test]
    fn two_cos_matches_float(p in -40i64..40, q in 1u32..=60) {
        let v = two_cos(p, q).unwrap().to_complex();
        let expect = 2.0 * (std::f64::consts::PI * p as f64 / q as f64).cos();
        prop_assert!((v.re - expect).abs() < 1e-9 && v.im.abs() < 1e-9);
    }
}
