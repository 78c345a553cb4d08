use super::hom::{disk_sphere_correspondences, hom_complex, MorphismSpace};
use super::*;
use crate::random;
use crate::ring::RingElement;
use num_bigint::BigUint;
use proptest::prelude::*;

fn z4() -> Ring {
    Ring::integers_mod(4).unwrap()
}

fn dual() -> Ring {
    Ring::poly_quotient(2, vec![0, 0, 1]).unwrap()
}

fn free(r: &Ring, n: usize) -> FpModule {
    FpModule::free(r, n)
}

#[test]
fn disks_are_exact_spheres_are_not() {
    let r = z4();
    let d = Complex::disk(1, &free(&r, 1));
    assert_eq!(d.window(), Some((0, 1)));
    assert!(d.is_exact());
    let s = Complex::sphere(0, &free(&r, 1));
    assert!(!s.is_exact());
    assert_eq!(s.homology(0).cardinality(), BigUint::from(4u32));
    assert!(Complex::periodic_disk(&free(&r, 2)).is_exact());
}

#[test]
fn two_on_z4_is_exact_periodic() {
    let r = z4();
    let x = Complex::periodic(&free(&r, 1), RingMatrix::from_ints(&r, 1, 1, &[2])).unwrap();
    assert!(x.is_exact());
    let dd = x.degree_data(0);
    assert_eq!(dd.z.cardinality(), BigUint::from(2u32));
    assert_eq!(dd.b.cardinality(), BigUint::from(2u32));
    assert!(dd.h.is_zero_module());
}

#[test]
fn rejects_non_complexes() {
    let r = z4();
    let one = free(&r, 1);
    let err = Complex::bounded(
        &r,
        0,
        vec![one.clone(), one.clone(), one.clone()],
        vec![RingMatrix::from_ints(&r, 1, 1, &[1]), RingMatrix::from_ints(&r, 1, 1, &[1])],
    );
    assert_eq!(err.unwrap_err(), Error::NotAComplex { degree: 2 });
    assert!(Complex::periodic(&one, RingMatrix::from_ints(&r, 1, 1, &[1])).is_err());
    let z2 = FpModule::cyclic(&r, r.from_int(2));
    // Z/2 → Z/4 sending 1 to 1 is not well defined
    assert!(matches!(
        Complex::bounded(&r, 0, vec![one, z2], vec![RingMatrix::from_ints(&r, 1, 1, &[1])]),
        Err(Error::IllDefined(_))
    ));
}

#[test]
fn suspension_round_trip_and_signs() {
    let mut rng = random::rng(7);
    let x = random::free_complex(&z4(), -1, 4, 2, &mut rng);
    assert_eq!(x.suspension(3).suspension(-3), x);
    let s = x.suspension(1);
    for n in x.degrees() {
        assert_eq!(s.module(n + 1), x.module(n));
        assert!(s.diff(n + 1).equals(&x.diff(n).neg()));
    }
}

#[test]
fn bounded_trims_zero_ends() {
    let r = z4();
    let x = Complex::bounded(&r, 0, vec![free(&r, 0), free(&r, 1), free(&r, 0)], vec![
        RingMatrix::zeros(0, 1),
        RingMatrix::zeros(1, 0),
    ])
    .unwrap();
    assert_eq!(x, Complex::sphere(1, &free(&r, 1)));
}

#[test]
fn chain_map_validation() {
    let r = z4();
    let one = free(&r, 1);
    let d = Complex::disk(1, &one);
    let s0 = Complex::sphere(0, &one);
    // D^1 → S^0 projecting onto degree 0 is not a chain map; S^0 → D^1 is.
    assert_eq!(
        ChainMap::new(&d, &s0, vec![RingMatrix::identity(&r, 1), RingMatrix::zeros(0, 1)]).unwrap_err(),
        Error::NotChainMap { degree: 1 }
    );
    assert!(ChainMap::new(&s0, &d, vec![RingMatrix::identity(&r, 1)]).is_ok());
    let s1 = Complex::sphere(1, &one);
    assert!(ChainMap::new(&d, &s1, vec![RingMatrix::zeros(0, 1), RingMatrix::identity(&r, 1)]).is_ok());
}

#[test]
fn subcomplex_and_quotient() {
    let r = z4();
    let x = Complex::disk(1, &free(&r, 1));
    // the subcomplex generated by the top generator is everything
    let (a, incl) = x.subcomplex(|n| {
        if n == 1 {
            RingMatrix::identity(&r, 1)
        } else {
            RingMatrix::zeros(x.module(n).gens(), 0)
        }
    });
    assert_eq!(a.window(), Some((0, 1)));
    assert!((0..=1).all(|n| incl.component(n).is_isomorphism()));
    let (q, _) = Complex::quotient(&incl).unwrap();
    assert!(q.is_zero());
    // the bottom generator spans S^0(R)
    let (b, incl) = x.subcomplex(|n| {
        if n == 0 {
            RingMatrix::identity(&r, 1)
        } else {
            RingMatrix::zeros(x.module(n).gens(), 0)
        }
    });
    assert_eq!(b.window(), Some((0, 0)));
    let (q, proj) = Complex::quotient(&incl).unwrap();
    assert_eq!(q.window(), Some((1, 1)));
    assert!(ShortSequence::new(incl, proj).is_ok());
}

#[test]
fn hom_into_sphere_counts_module_maps() {
    let r = z4();
    let x = Complex::sphere(0, &FpModule::cyclic(&r, r.from_int(2)));
    let y = Complex::sphere(0, &free(&r, 1));
    let h = hom_complex(&x, &y, None).unwrap();
    // Hom(Z/2, Z/4) has two elements
    assert_eq!(h.homology_order(0), Some(BigUint::from(2u32)));
}

#[test]
fn disk_sphere_correspondences_on_examples() {
    let r = z4();
    let z2 = FpModule::cyclic(&r, r.from_int(2));
    let x = Complex::bounded(
        &r,
        0,
        vec![z2.clone(), free(&r, 1), z2.clone()],
        vec![RingMatrix::from_ints(&r, 1, 1, &[1]), RingMatrix::from_ints(&r, 1, 1, &[2])],
    )
    .unwrap();
    for m in [free(&r, 1), z2.clone()] {
        for n in -1..=3 {
            for c in disk_sphere_correspondences(&m, &x, n, 1 << 12).unwrap() {
                assert!(c.holds(), "{} at n={n}: {c:?}", c.label);
            }
        }
    }
    let p = Complex::periodic(&free(&r, 1), RingMatrix::from_ints(&r, 1, 1, &[2])).unwrap();
    for c in disk_sphere_correspondences(&z2, &p, 0, 1 << 12).unwrap() {
        assert!(c.holds(), "{}: {c:?}", c.label);
    }
}

fn ring_strategy() -> impl Strategy<Value = Ring> {
    prop_oneof![Just(z4()), Just(dual())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hom_cycles_are_chain_maps(r in ring_strategy(), seed in any::<u64>(), n in -2i64..=2) {
        let mut rng = random::rng(seed);
        let c = random::free_complex(&r, 0, 3, 2, &mut rng);
        let seq = random::subcomplex_sequence(&r, 3, 2, &mut rng);
        let d = seq.g.target().clone();
        let h = hom_complex(&c, &d, None).unwrap();
        let cycles = h.complex.degree_data(n).z.cardinality();
        let maps = MorphismSpace::new(&c, &d.suspension(-n)).unwrap().cardinality();
        prop_assert_eq!(cycles, maps);
    }

    #[test]
    fn short_exactness_of_subcomplex_sequences(r in ring_strategy(), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let s = random::subcomplex_sequence(&r, 4, 2, &mut rng);
        for n in s.degrees() {
            prop_assert!(s.f.component(n).is_injective());
            prop_assert!(s.g.component(n).is_surjective());
            prop_assert_eq!(
                s.f.target().module(n).cardinality(),
                s.f.source().module(n).cardinality() * s.g.target().module(n).cardinality()
            );
        }
    }

    #[test]
    fn homology_order_by_counting(r in ring_strategy(), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let x = random::free_complex(&r, 0, 4, 2, &mut rng);
        for n in x.degrees() {
            let dd = x.degree_data(n);
            prop_assert_eq!(dd.z.cardinality(), dd.h.cardinality() * dd.b.cardinality());
            prop_assert_eq!(dd.term.cardinality(), dd.z.cardinality() * dd.c_mod_z.cardinality());
            prop_assert_eq!(x.is_exact_at(n), dd.h.is_zero_module());
        }
    }

    #[test]
    fn random_exact_complexes_are_exact(r in ring_strategy(), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        prop_assert!(random::exact_free(&r, 0, 4, 2, &mut rng).is_exact());
        prop_assert!(random::exact_periodic(&r, 3, &mut rng).is_exact());
    }
}

#[test]
fn self_annihilating_elements() {
    let r = z4();
    let sa: Vec<RingElement> = random::self_annihilating(&r);
    assert_eq!(sa, vec![r.from_int(2)]);
}
