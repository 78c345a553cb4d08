use super::*;
use crate::random;
use proptest::prelude::*;

fn z4() -> Ring {
    Ring::integers_mod(4).unwrap()
}

fn dual() -> Ring {
    Ring::poly_quotient(2, vec![0, 0, 1]).unwrap()
}

/// `R = k[x]/(x²)` in every degree with differential `x`.
fn x_periodic() -> Complex {
    let r = dual();
    let x = r.from_coords(&[0, 1]);
    Complex::periodic(&FpModule::free(&r, 1), RingMatrix::from_rows(&r, vec![vec![x]])).unwrap()
}

/// `0 → Z/2 → Z/4 → Z/2 → 0` as an exact complex on `[0, 2]`.
fn z2_z4_z2() -> Complex {
    let r = z4();
    let z2 = FpModule::cyclic(&r, r.from_int(2));
    Complex::bounded(
        &r,
        0,
        vec![z2.clone(), FpModule::free(&r, 1), z2],
        vec![RingMatrix::from_ints(&r, 1, 1, &[1]), RingMatrix::from_ints(&r, 1, 1, &[2])],
    )
    .unwrap()
}

fn bounds() -> GpBounds {
    GpBounds::default()
}

#[test]
fn verdict_algebra() {
    use Verdict::*;
    assert_eq!(Yes.and(Unknown), Unknown);
    assert_eq!(Unknown.and(No), No);
    assert!(agree(&[Yes, Unknown, Yes]));
    assert!(!agree(&[Yes, No]));
}

#[test]
fn x_periodic_is_strongly_ce_gp() {
    let g = x_periodic();
    let class = classify_strongly_ce_gp(&g, &bounds());
    assert_eq!(class.overall, Verdict::Yes);
    assert!(class.consistent);
    let rep = theorem511_evaluate(&g, &bounds(), (0, 0)).unwrap();
    assert_eq!(rep.c1, Verdict::Yes);
    assert_eq!(rep.c2, Verdict::Yes);
    assert!(rep.c3 && rep.c4 && rep.agree);
}

#[test]
fn sphere_fails_every_condition() {
    let g = Complex::sphere(0, &FpModule::free(&z4(), 1));
    let rep = theorem511_evaluate(&g, &bounds(), (-1, 1)).unwrap();
    assert_eq!(rep.c1, Verdict::No);
    assert!(!rep.c3 && !rep.c4);
    assert!(rep.hom_into_failures.contains(&"S^0(R)".to_string()));
    assert!(rep.agree);
}

#[test]
fn nonprojective_exact_complex() {
    let g = z2_z4_z2();
    assert!(g.is_exact());
    let rep = corollary56_evaluate(&g, &bounds()).unwrap();
    assert_eq!(rep.classification, Verdict::No);
    assert!(!rep.terms_projective);
    assert!(rep.agree);
    assert!(corollary56_evaluate(&x_periodic(), &bounds()).is_err());
    assert!(corollary56_evaluate(&Complex::sphere(0, &FpModule::free(&z4(), 1)), &bounds()).is_err());
}

#[test]
fn resolution_hypotheses() {
    let one = FpModule::free(&z4(), 1);
    assert!(build_resolution(&Complex::disk(1, &one), 0).is_err());
    assert!(build_resolution(&Complex::sphere(0, &one), 1).is_err());
    assert!(build_resolution(&z2_z4_z2(), 1).is_err());
    let m = Ring::monomial_quotient(2, 2, vec![vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
    assert!(build_resolution(&Complex::disk(1, &FpModule::free(&m, 1)), 1).is_err());
}

#[test]
fn resolutions_verify() {
    for g in [x_periodic(), Complex::disk(1, &FpModule::free(&z4(), 2))] {
        let res = build_resolution(&g, 2).unwrap();
        assert_eq!(res.terms().len(), 4);
        let rep = verify_resolution(&res, default_generator_degrees(&g));
        assert!(rep.passed(), "{:?}", rep.failures);
    }
}

#[test]
fn tampered_resolution_is_caught() {
    let r = z4();
    let mut res = build_resolution(&Complex::disk(1, &FpModule::free(&r, 1)), 1).unwrap();
    let z2 = FpModule::cyclic(&r, r.from_int(2));
    let one = FpModule::free(&r, 1);
    let (a, b) = (Complex::sphere(0, &z2), Complex::sphere(0, &one));
    let f = ChainMap::new(&a, &b, vec![RingMatrix::from_ints(&r, 1, 1, &[2])]).unwrap();
    let g = ChainMap::new(&b, &a, vec![RingMatrix::from_ints(&r, 1, 1, &[1])]).unwrap();
    res.right = vec![ShortSequence::new(f, g).unwrap()];
    res.left.clear();
    let rep = verify_resolution(&res, (0, 0));
    assert!(!rep.junctions);
    assert!(rep.failures.iter().any(|s| s.starts_with("short piece")));
}

#[test]
fn disk_detector_on_spheres() {
    let one = FpModule::free(&z4(), 1);
    assert_eq!(disk_detected_degrees(&Complex::sphere(0, &one), &[-1, 0, 1]).unwrap(), vec![0]);
    assert!(disk_detected_degrees(&Complex::disk(1, &one), &[-1, 0, 1, 2]).unwrap().is_empty());
}

#[test]
fn dual_exactness_of_module_sequences() {
    let r = z4();
    let one = FpModule::free(&r, 1);
    let z2 = FpModule::cyclic(&r, r.from_int(2));
    // Z/4 is self-injective, so Z/2 → Z/4 → Z/2 stays exact after dualizing
    let f = ModuleMap::new(&z2, &one, RingMatrix::from_ints(&r, 1, 1, &[2])).unwrap();
    let g = ModuleMap::new(&one, &z2, RingMatrix::from_ints(&r, 1, 1, &[1])).unwrap();
    assert!(dual_exact_at(&f, &g));
    // Z/2 --0--> Z/4 --2--> Z/4 dualizes to Z/4 --2--> Z/4 --0--> Z/2
    let f = ModuleMap::new(&z2, &one, RingMatrix::from_ints(&r, 1, 1, &[0])).unwrap();
    let g = ModuleMap::new(&one, &one, RingMatrix::from_ints(&r, 1, 1, &[2])).unwrap();
    assert!(!dual_exact_at(&f, &g));
    // R → R² → R split
    let i = ModuleMap::new(&one, &FpModule::free(&r, 2), RingMatrix::from_ints(&r, 2, 1, &[1, 0])).unwrap();
    let p = ModuleMap::new(&FpModule::free(&r, 2), &one, RingMatrix::from_ints(&r, 1, 2, &[0, 1])).unwrap();
    assert!(dual_exact_at(&i, &p));
}

fn ring_strategy() -> impl Strategy<Value = Ring> {
    prop_oneof![Just(z4()), Just(dual())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn detector_matches_homology(r in ring_strategy(), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let g = random::free_complex(&r, 0, 4, 2, &mut rng);
        let degrees: Vec<i64> = (-1..=4).collect();
        let nonexact: Vec<i64> = degrees.iter().copied().filter(|&n| !g.is_exact_at(n)).collect();
        prop_assert_eq!(disk_detected_degrees(&g, &degrees).unwrap(), nonexact);
    }

    #[test]
    fn exact_free_complexes_satisfy_all_conditions(r in ring_strategy(), seed in any::<u64>(), periodic in any::<bool>()) {
        let mut rng = random::rng(seed);
        let g = if periodic { random::exact_periodic(&r, 2, &mut rng) } else { random::exact_free(&r, 0, 3, 1, &mut rng) };
        let range = default_generator_degrees(&g);
        let rep = theorem511_evaluate(&g, &bounds(), range).unwrap();
        prop_assert!(rep.c3 && rep.c4);
        prop_assert!(rep.c1 != Verdict::No && rep.c2 != Verdict::No);
        prop_assert!(rep.agree);
        let res = build_resolution(&g, 2).unwrap();
        let v = verify_resolution(&res, range);
        prop_assert!(v.passed(), "{:?}", v.failures);
    }

    #[test]
    fn conditions_agree_on_random_complexes(r in ring_strategy(), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let g = random::free_complex(&r, 0, 3, 2, &mut rng);
        let rep = theorem511_evaluate(&g, &bounds(), default_generator_degrees(&g)).unwrap();
        prop_assert!(rep.agree, "{:?}", rep);
        prop_assert_eq!(rep.c3, rep.exact);
    }
}
