use arf_brown::clifford::Parity;
use arf_brown::exact::Qi;
use arf_brown::pin1::CircleClass;
use arf_brown::quadform::{enumerate_enhancements, Enhancement, Z4};
use arf_brown::surface::{intersection_form, GluingScheme};
use arf_brown::tqft::{
    evaluate_circle, evaluate_point, partition_function, stack, TheoryClass, TqftError, TqftValue,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rp2(value: i64) -> (GluingScheme, Enhancement) {
    let s = GluingScheme::nonorientable(1);
    let q = Enhancement::new(intersection_form(&s).unwrap(), vec![Z4::new(value)]).unwrap();
    (s, q)
}

fn random_surface(rng: &mut ChaCha8Rng) -> (GluingScheme, Enhancement) {
    let s = if rng.gen_bool(0.5) {
        GluingScheme::orientable(rng.gen_range(1..=2))
    } else {
        GluingScheme::nonorientable(rng.gen_range(1..=4))
    };
    let mut all = enumerate_enhancements(&intersection_form(&s).unwrap());
    let q = all.swap_remove(rng.gen_range(0..all.len()));
    (s, q)
}

fn random_theory(rng: &mut ChaCha8Rng) -> TheoryClass {
    let num = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let weight = Qi::new(
        num_rational::BigRational::new(num.into(), rng.gen_range(1..=3).into()),
        num_rational::BigRational::from_integer(rng.gen_range(-1..=1).into()),
    );
    TheoryClass::new(rng.gen_range(0..8), weight).unwrap()
}

fn root_and_factor(v: &TqftValue) -> (u8, Qi) {
    match v {
        TqftValue::PartitionFunction { root, .. } => (root.exponent(), v.euler_factor().unwrap()),
        other => panic!("not a number: {other:?}"),
    }
}

#[test]
fn ab_power_is_detected_by_rp2_and_circles() {
    let mut seen = std::collections::BTreeSet::new();
    for k in 0..8 {
        let t = TheoryClass::arf_brown(k);
        let (root, _) = root_and_factor(&partition_function(&t, &[rp2(1)]).unwrap());
        let parity = match evaluate_circle(&t, CircleClass::Nonbounding) {
            TqftValue::SuperLine { parity } => parity,
            other => panic!("{other:?}"),
        };
        assert_eq!(root as i64, k);
        assert_eq!(parity, Parity::from_bit(k as usize));
        assert_eq!(evaluate_circle(&t, CircleClass::Bounding), TqftValue::SuperLine { parity: Parity::Even });
        assert_eq!(evaluate_point(&t), TqftValue::Superalgebra { generators: k as u8 });
        seen.insert((root, parity.bit()));
    }
    assert_eq!(seen.len(), 8);
}

#[test]
fn partition_function_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let t = random_theory(&mut rng);
        let a = random_surface(&mut rng);
        let b = random_surface(&mut rng);
        let za = partition_function(&t, std::slice::from_ref(&a)).unwrap();
        let zb = partition_function(&t, std::slice::from_ref(&b)).unwrap();
        let zab = partition_function(&t, &[a, b]).unwrap();
        assert_eq!(za.multiply(&zb).unwrap(), zab);
    }
}

#[test]
fn stacking_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x57ac);
    for _ in 0..100 {
        let (t1, t2, t3) = (random_theory(&mut rng), random_theory(&mut rng), random_theory(&mut rng));
        assert_eq!(stack(&stack(&t1, &t2), &t3), stack(&t1, &stack(&t2, &t3)));
        assert_eq!(stack(&t1, &t2), stack(&t2, &t1));
        assert_eq!(stack(&t1, &TheoryClass::arf_brown(0)), t1);

        let surfaces = [random_surface(&mut rng), random_surface(&mut rng)];
        let (r1, f1) = root_and_factor(&partition_function(&t1, &surfaces).unwrap());
        let (r2, f2) = root_and_factor(&partition_function(&t2, &surfaces).unwrap());
        let (r12, f12) = root_and_factor(&partition_function(&stack(&t1, &t2), &surfaces).unwrap());
        assert_eq!(r12, (r1 + r2) % 8);
        assert_eq!(f12, &f1 * &f2);

        let p = |t: &TheoryClass| match evaluate_point(t) {
            TqftValue::Superalgebra { generators } => generators,
            other => panic!("{other:?}"),
        };
        assert_eq!(p(&stack(&t1, &t2)), (p(&t1) + p(&t2)) % 8);
    }
}

#[test]
fn euler_theory_sees_only_euler_characteristic() {
    let t = TheoryClass::euler(Qi::from_int(3)).unwrap();
    let torus = GluingScheme::orientable(2);
    let q = enumerate_enhancements(&intersection_form(&torus).unwrap()).remove(5);
    let (root, factor) = root_and_factor(&partition_function(&t, &[(torus, q)]).unwrap());
    assert_eq!(root, 0);
    assert_eq!(factor, Qi::from_ratio(1, 9));
    let sphere = GluingScheme::sphere();
    let q0 = Enhancement::new(intersection_form(&sphere).unwrap(), vec![]).unwrap();
    assert_eq!(root_and_factor(&partition_function(&t, &[(sphere, q0)]).unwrap()).1, Qi::from_int(9));
}

#[test]
fn mismatched_forms_and_zero_weight_are_rejected() {
    assert!(matches!(TheoryClass::euler(Qi::zero()), Err(TqftError::ZeroWeight)));
    let (_, q) = rp2(1);
    let err = partition_function(&TheoryClass::arf_brown(1), &[(GluingScheme::orientable(1), q)]).unwrap_err();
    assert!(matches!(err, TqftError::FormMismatch { index: 0 }));
}
