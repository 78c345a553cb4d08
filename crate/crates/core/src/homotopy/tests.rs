use super::*;
use crate::complex::hom::hom_complex;
use crate::random;
use proptest::prelude::*;

fn z4() -> Ring {
    Ring::integers_mod(4).unwrap()
}

fn dual() -> Ring {
    Ring::poly_quotient(2, vec![0, 0, 1]).unwrap()
}

fn x_periodic() -> Complex {
    let r = dual();
    let x = r.from_coords(&[0, 1]);
    Complex::periodic(&FpModule::free(&r, 1), RingMatrix::from_rows(&r, vec![vec![x]])).unwrap()
}

fn one(r: &Ring) -> FpModule {
    FpModule::free(r, 1)
}

/// Coordinate projection `A ⊕ B → B`.
fn projection(a: &Complex, b: &Complex) -> ChainMap {
    let r = a.ring().clone();
    let sum = a.direct_sum(b).unwrap();
    ChainMap::from_fn(&sum, b, |n| {
        let (ga, gb) = (a.module(n).gens(), b.module(n).gens());
        RingMatrix::identity(&r, gb).placed(gb, ga + gb, 0, ga)
    })
    .unwrap()
}

#[test]
fn disk_identity_is_null_homotopic() {
    let d = Complex::disk(1, &one(&z4()));
    let h = null_homotopy(&ChainMap::identity(&d)).unwrap().unwrap();
    assert!(h.verify());
    assert!(h.component(0).equals(&ModuleMap::identity(&one(&z4()))));
}

#[test]
fn sphere_identity_is_not_null_homotopic() {
    let s = Complex::sphere(0, &one(&z4()));
    assert!(null_homotopy(&ChainMap::identity(&s)).unwrap().is_none());
}

#[test]
fn x_periodic_identity_is_not_null_homotopic() {
    // 1 = x s + s x has no solution, at any period
    assert!(null_homotopy(&ChainMap::identity(&x_periodic())).unwrap().is_none());
    let pd = Complex::periodic_disk(&one(&dual()));
    let h = null_homotopy(&ChainMap::identity(&pd)).unwrap().unwrap();
    assert!(h.verify());
    assert_eq!(h.period(), Some(1));
}

#[test]
fn cone_examples() {
    let r = dual();
    let c = random::free_complex(&r, 0, 3, 2, &mut random::rng(4));
    let cone = mapping_cone(&ChainMap::identity(&c)).unwrap();
    assert!(is_null_homotopic(&ChainMap::identity(&cone)).unwrap());
    let z = Complex::zero(&r);
    let cone = mapping_cone(&ChainMap::zero(&z, &c)).unwrap();
    assert_eq!(cone.window(), c.window());
    for n in c.degrees() {
        assert_eq!(cone.module(n).gens(), c.module(n).gens());
        assert_eq!(cone.diff(n).matrix(), c.diff(n).matrix());
    }
    let s = Complex::sphere(0, &one(&r));
    let x = ChainMap::new(&s, &s, vec![RingMatrix::from_rows(&r, vec![vec![r.from_coords(&[0, 1])]])]).unwrap();
    let cone = mapping_cone(&x).unwrap();
    assert_eq!(cone.homology(0).cardinality(), BigUint::from(2u32));
    assert!(mapping_cone(&ChainMap::zero(&s, &x_periodic())).is_err());
}

#[test]
fn equivalence_examples() {
    let r = z4();
    let q2 = Complex::sphere(0, &one(&r));
    let p = projection(&Complex::disk(1, &one(&r)), &q2);
    let e = homotopy_equivalence(&p).unwrap().unwrap();
    assert!(e.verify());
    let id = homotopy_equivalence(&ChainMap::identity(&q2)).unwrap().unwrap();
    assert!(id.verify());
    assert!(id.target_homotopy.component(0).is_zero());
    let z2 = FpModule::cyclic(&r, r.from_int(2));
    let f = ChainMap::new(&Complex::sphere(0, &z2), &q2, vec![RingMatrix::from_ints(&r, 1, 1, &[2])]).unwrap();
    assert!(homotopy_equivalence(&f).unwrap().is_none());
    let xp = x_periodic();
    let e = homotopy_equivalence(&projection(&Complex::periodic_disk(&one(&dual())), &xp)).unwrap().unwrap();
    assert!(e.verify());
}

#[test]
fn minimize_examples() {
    let r = dual();
    let x = r.from_coords(&[0, 1]);
    let g = Complex::bounded(&r, 0, vec![one(&r), one(&r)], vec![RingMatrix::from_rows(&r, vec![vec![x]])]).unwrap();
    let m = minimize(&g).unwrap();
    assert_eq!(m.eliminations, 0);
    assert_eq!(m.complex, g);
    assert!(m.equivalence.verify());

    let mut rng = random::rng(5);
    let padded = random::with_disks(&g, &[(2, 1)], &mut rng);
    let m = minimize(&padded).unwrap();
    assert_eq!(m.eliminations, 1);
    assert!(m.equivalence.verify());
    assert!(is_unit_free(&m.complex));
    assert_eq!(m.complex.window(), g.window());
    assert!(homotopy_equivalence(&m.equivalence.forward).unwrap().is_some());

    let two = Complex::disk(1, &one(&r)).direct_sum(&Complex::disk(2, &one(&r))).unwrap();
    let m = minimize(&random::conjugate(&two, 6, &mut rng)).unwrap();
    assert_eq!(m.eliminations, 2);
    assert!(m.complex.is_zero());
    assert!(m.equivalence.verify());

    assert!(minimize(&Complex::sphere(0, &FpModule::cyclic(&r, x))).is_err());
    assert!(minimize(&Complex::sphere(0, &one(&Ring::integers_mod(6).unwrap()))).is_err());
}

#[test]
fn xi_triangle_examples() {
    let r = z4();
    let m = one(&r);
    let (s0, d1, s1) = (Complex::sphere(0, &m), Complex::disk(1, &m), Complex::sphere(1, &m));
    let f = ChainMap::new(&s0, &d1, vec![RingMatrix::identity(&r, 1)]).unwrap();
    let g = ChainMap::new(&d1, &s1, vec![RingMatrix::zeros(0, 1), RingMatrix::identity(&r, 1)]).unwrap();
    let rep = is_xi_triangle(&ShortSequence::new(f, g).unwrap()).unwrap();
    assert!(rep.split.split);
    assert!(!rep.member);
    assert_eq!(rep.member, rep.strongly_exact);

    let a = random::free_complex(&r, 0, 3, 2, &mut random::rng(8));
    let c = random::free_complex(&r, 0, 3, 2, &mut random::rng(9));
    let b = a.direct_sum(&c).unwrap();
    let incl = ChainMap::from_fn(&a, &b, |n| {
        let (ga, gc) = (a.module(n).gens(), c.module(n).gens());
        RingMatrix::identity(&r, ga).placed(ga + gc, ga, 0, 0)
    })
    .unwrap();
    let rep = is_xi_triangle(&ShortSequence::new(incl, projection(&a, &c)).unwrap()).unwrap();
    assert!(rep.member && rep.strongly_exact);
}

#[test]
fn homotopy_ce_projective_examples() {
    let r = z4();
    let p = Complex::disk(1, &one(&r)).direct_sum(&Complex::sphere(0, &one(&r))).unwrap();
    let p = random::conjugate(&p, 6, &mut random::rng(2));
    let rep = is_homotopy_ce_projective(&p).unwrap();
    assert_eq!(rep.by_minimization, Some(true));
    assert_eq!(rep.by_precover, Some(true));
    assert_eq!(rep.minimized.unwrap().degrees(), vec![0]);

    let rep = is_homotopy_ce_projective(&x_periodic()).unwrap();
    assert_eq!(rep.verdict(), Some(false));
    assert!(rep.agree());

    assert_eq!(is_homotopy_ce_projective(&Complex::zero(&r)).unwrap().verdict(), Some(true));

    // D¹ → nonunit: R --2--> R over Z/4 is unit-free with nonzero differential
    let q = Complex::bounded(&r, 0, vec![one(&r), one(&r)], vec![RingMatrix::from_ints(&r, 1, 1, &[2])]).unwrap();
    let rep = is_homotopy_ce_projective(&q).unwrap();
    assert_eq!(rep.by_minimization, Some(false));
    assert_eq!(rep.by_precover, Some(false));
}

#[test]
fn gp_object_examples() {
    let bounds = GpBounds::default();
    let rep = classify_gp_object(&x_periodic(), &bounds).unwrap();
    assert_eq!(rep.verdict(), Verdict::Yes);
    let padded = random::with_disks(&x_periodic(), &[(0, 1)], &mut random::rng(1));
    let rep = classify_gp_object(&padded, &bounds).unwrap();
    assert_eq!(rep.verdict(), Verdict::Yes);
    let m = rep.minimization.unwrap();
    assert_eq!(m.eliminations, 1);
    assert!(m.equivalence.verify());
    let r = dual();
    let k = FpModule::cyclic(&r, r.from_coords(&[0, 1]));
    assert_eq!(classify_gp_object(&Complex::sphere(0, &k), &bounds).unwrap().verdict(), Verdict::No);
}

/// Classes of chain maps by enumeration: maps over null-homotopic maps.
fn classes_by_enumeration(x: &Complex, y: &Complex) -> Option<BigUint> {
    let space = MorphismSpace::new(x, y).unwrap();
    let maps = space.elements(1 << 10)?;
    let null = maps.iter().filter(|f| is_null_homotopic(f).unwrap()).count();
    Some(BigUint::from(maps.len()) / BigUint::from(null))
}

fn ring_strategy() -> impl Strategy<Value = Ring> {
    prop_oneof![Just(z4()), Just(dual())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn constructed_null_homotopies_are_found(r in ring_strategy(), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let x = random::free_complex(&r, 0, 3, 2, &mut rng);
        let y = random::free_complex(&r, 0, 4, 2, &mut rng);
        let s: Vec<RingMatrix> = (-1..=3).map(|n| random::matrix(&r, y.module(n + 1).gens(), x.module(n).gens(), &mut rng)).collect();
        let at = |n: i64| if (-1..=3).contains(&n) { s[(n + 1) as usize].clone() } else { RingMatrix::zeros(y.module(n + 1).gens(), x.module(n).gens()) };
        let f = ChainMap::from_fn(&x, &y, |n| {
            r.mat_add(&r.mat_mul(y.diff(n + 1).matrix(), &at(n)), &r.mat_mul(&at(n - 1), x.diff(n).matrix()))
        }).unwrap();
        let h = null_homotopy(&f).unwrap();
        prop_assert!(h.map(|h| h.certifies(&f)).unwrap_or(false));
    }

    #[test]
    fn periodic_constructed_null_homotopies(r in ring_strategy(), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let x = random::free_periodic(&r, 3, &mut rng);
        let g = x.module(0).gens();
        let s = random::matrix(&r, g, g, &mut rng);
        let d = x.diff(0).matrix().clone();
        let f = ChainMap::new(&x, &x, vec![r.mat_add(&r.mat_mul(&d, &s), &r.mat_mul(&s, &d))]).unwrap();
        let h = null_homotopy(&f).unwrap();
        prop_assert!(h.map(|h| h.certifies(&f)).unwrap_or(false));
    }

    #[test]
    fn classes_match_hom_homology(r in ring_strategy(), seed in any::<u64>(), n in -1i64..=1) {
        let mut rng = random::rng(seed);
        let x = random::free_complex(&r, 0, 3, 1, &mut rng);
        let y = random::free_complex(&r, 0, 3, 1, &mut rng);
        let shifted = y.suspension(-n);
        let classes = homotopy_classes(&x, &shifted).unwrap();
        let h = hom_complex(&x, &y, None).unwrap();
        prop_assert_eq!(Some(classes.clone()), h.homology_order(n));
        if let Some(e) = classes_by_enumeration(&x, &shifted) {
            prop_assert_eq!(e, classes);
        }
    }

    #[test]
    fn equivalence_iff_cone_contractible(r in ring_strategy(), seed in any::<u64>(), periodic in any::<bool>()) {
        let mut rng = random::rng(seed);
        let x = if periodic { random::free_periodic(&r, 2, &mut rng) } else { random::free_complex(&r, 0, 3, 2, &mut rng) };
        let padded = random::with_disks(&x, &[(1, 1), (2, 1)], &mut rng);
        let m = minimize(&padded).unwrap();
        prop_assert!(m.equivalence.verify());
        prop_assert!(is_homotopy_equivalence(&m.equivalence.forward).unwrap());
        let e = homotopy_equivalence(&m.equivalence.backward).unwrap().unwrap();
        prop_assert!(e.verify());
        let contractible = is_null_homotopic(&ChainMap::identity(&x)).unwrap();
        prop_assert_eq!(is_homotopy_equivalence(&ChainMap::zero(&x, &x)).unwrap(), contractible);
    }

    #[test]
    fn minimize_is_idempotent(seed in any::<u64>(), periodic in any::<bool>()) {
        let r = dual();
        let mut rng = random::rng(seed);
        let g = if periodic { random::exact_periodic(&r, 2, &mut rng) } else { random::unit_free_complex(&r, 0, 3, 2, &mut rng) };
        let x = random::with_disks(&g, &[(1, 1), (2, 1)], &mut rng);
        let m = minimize(&x).unwrap();
        prop_assert!(is_unit_free(&m.complex));
        prop_assert!(m.equivalence.verify());
        let again = minimize(&m.complex).unwrap();
        prop_assert_eq!(again.eliminations, 0);
        prop_assert_eq!(&again.complex, &m.complex);
    }

    #[test]
    fn routes_agree(r in ring_strategy(), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let p = random::free_complex(&r, 0, 3, 2, &mut rng);
        let rep = is_homotopy_ce_projective(&p).unwrap();
        prop_assert!(rep.agree(), "{:?}", rep);
    }

    #[test]
    fn split_triangles_are_members(r in ring_strategy(), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let a = random::free_complex(&r, 0, 3, 2, &mut rng);
        let c = random::free_complex(&r, 0, 3, 2, &mut rng);
        let b = a.direct_sum(&c).unwrap();
        let incl = ChainMap::from_fn(&a, &b, |n| {
            let (ga, gc) = (a.module(n).gens(), c.module(n).gens());
            RingMatrix::identity(&r, ga).placed(ga + gc, ga, 0, 0)
        }).unwrap();
        let rep = is_xi_triangle(&ShortSequence::new(incl, projection(&a, &c)).unwrap()).unwrap();
        prop_assert!(rep.member);
    }

    #[test]
    fn xi_membership_is_strong_exactness(r in ring_strategy(), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let s = random::subcomplex_sequence(&r, 3, 2, &mut rng);
        let rep = is_xi_triangle(&s).unwrap();
        prop_assert_eq!(rep.member, rep.strongly_exact);
    }
}
