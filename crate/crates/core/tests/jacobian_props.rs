mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use torsion_forge::algebra::{int, Polynomial, PrimeField, QPoly, Rationals};
use torsion_forge::jacobian::{CurvePoint, HyperellipticCurve, JacobianError};

use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms_over_prime_fields(seed in any::<u64>(), g in 1usize..5, pi in 0usize..4) {
        let p = [10007u64, 101, 1009, 65537][pi];
        let mut rng = StdRng::seed_from_u64(seed);
        let curve = random_curve_fp(p, g, &mut rng);
        let a = random_class_fp(&curve, &mut rng);
        let b = random_class_fp(&curve, &mut rng);
        let c = random_class_fp(&curve, &mut rng);
        let zero = curve.zero();
        prop_assert_eq!(curve.add(&a, &zero).unwrap(), a.clone());
        prop_assert!(curve.add(&a, &curve.negate(&a).unwrap()).unwrap().is_zero());
        prop_assert_eq!(curve.add(&a, &b).unwrap(), curve.add(&b, &a).unwrap());
        let ab_c = curve.add(&curve.add(&a, &b).unwrap(), &c).unwrap();
        let a_bc = curve.add(&a, &curve.add(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c.clone(), a_bc);
        prop_assert!(curve.validate(&ab_c).is_ok());
        prop_assert!(ab_c.weight() <= g);
    }

    #[test]
    fn add_matches_naive_oracle_over_prime_fields(seed in any::<u64>(), g in 1usize..5) {
        let mut rng = StdRng::seed_from_u64(seed);
        let curve = random_curve_fp(1009, g, &mut rng);
        let a = random_class_fp(&curve, &mut rng);
        let b = random_class_fp(&curve, &mut rng);
        prop_assert_eq!(curve.add(&a, &b).unwrap(), naive_add(&curve, &a, &b));
        prop_assert_eq!(curve.double(&a).unwrap(), naive_add(&curve, &a, &a));
    }

    #[test]
    fn scalar_mul_is_linear(seed in any::<u64>(), m in -60i64..60, n in -60i64..60) {
        let mut rng = StdRng::seed_from_u64(seed);
        let curve = random_curve_fp(10007, 2, &mut rng);
        let d = random_class_fp(&curve, &mut rng);
        let lhs = curve.scalar_mul(m + n, &d).unwrap();
        let rhs = curve.add(&curve.scalar_mul(m, &d).unwrap(), &curve.scalar_mul(n, &d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let mn = curve.scalar_mul(m * n, &d).unwrap();
        prop_assert_eq!(mn, curve.scalar_mul(m, &curve.scalar_mul(n, &d).unwrap()).unwrap());
    }
}

#[test]
fn oracle_agrees_on_corpus_curves() {
    let mut rng = StdRng::seed_from_u64(7);
    for entry in corpus().iter().take(9) {
        let gen = entry.curve.divisor_from_point(&entry.point).unwrap();
        for _ in 0..4 {
            let a = random_class(&entry.curve, std::slice::from_ref(&gen), &mut rng);
            let b = random_class(&entry.curve, std::slice::from_ref(&gen), &mut rng);
            assert_eq!(entry.curve.add(&a, &b).unwrap(), naive_add(&entry.curve, &a, &b), "{}", entry.entry.name);
        }
    }
}

#[test]
fn naive_reduction_of_a_point_sum() {
    // three points on a genus 2 curve over Q reduce to a weight <= 2 class
    let curve = c2();
    let p = curve.divisor_from_point(&c2_point()).unwrap();
    let q = curve.divisor_from_point(&CurvePoint::affine(int(1), int(4))).unwrap();
    let pq = curve.add(&p, &q).unwrap();
    assert_eq!(pq.weight(), 2);
    assert_eq!(curve.add(&pq, &p).unwrap(), naive_add(&curve, &pq, &p));
}

#[test]
fn invalid_pairs_are_rejected() {
    let curve = c2();
    let x = QPoly::x(Rationals);
    assert!(matches!(
        curve.divisor_from_uv(x.clone(), QPoly::constant(Rationals, int(3))),
        Err(JacobianError::InvalidDivisor(_))
    ));
    assert!(matches!(
        curve.divisor_from_uv(x.pow(3), QPoly::zero(Rationals)),
        Err(JacobianError::InvalidDivisor(_))
    ));
    let k = PrimeField::new(101).unwrap();
    let other = HyperellipticCurve::new(Polynomial::new(k, vec![1, 0, 0, 1])).unwrap();
    let p = other.divisor_from_point(&CurvePoint::affine(0, 1)).unwrap();
    // (0, 1) is a flex of y^2 = x^3 + 1, so it has order 3
    assert!(other.scalar_mul(3, &p).unwrap().is_zero());
}
