use cehom_core::ce::is_strongly_ce_exact;
use cehom_core::gp::{build_resolution, classify_strongly_ce_gp, default_generator_degrees, verify_resolution};
use cehom_core::homotopy::{homotopy_classes, minimize, null_homotopy};
use cehom_core::{random, ChainMap, FpModule, GpBounds, Ring};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn dual() -> Ring {
    Ring::poly_quotient(2, vec![0, 0, 1]).unwrap()
}

fn modules(c: &mut Criterion) {
    let r = Ring::integers_mod(4).unwrap();
    let mut rng = random::rng(1);
    let ms: Vec<FpModule> = (0..8).map(|_| random::module(&r, 3, 3, &mut rng)).collect();
    c.bench_function("gp oracle, 8 modules over Z/4", |b| {
        b.iter(|| ms.iter().filter(|m| cehom_core::module::is_gorenstein_projective(m, &GpBounds::default()).is_yes()).count())
    });
}

fn complexes(c: &mut Criterion) {
    let r = dual();
    let mut rng = random::rng(2);
    let s = random::subcomplex_sequence(&r, 4, 2, &mut rng);
    c.bench_function("strong C-E exactness, length 4", |b| b.iter(|| is_strongly_ce_exact(black_box(&s))));
    let g = random::exact_free(&r, 0, 4, 2, &mut rng);
    c.bench_function("classify exact free complex", |b| b.iter(|| classify_strongly_ce_gp(black_box(&g), &GpBounds::default())));
    c.bench_function("build and verify resolution, depth 2", |b| {
        b.iter(|| {
            let res = build_resolution(&g, 2).unwrap();
            verify_resolution(&res, default_generator_degrees(&g)).passed()
        })
    });
}

fn homotopy(c: &mut Criterion) {
    let r = dual();
    let mut rng = random::rng(3);
    let x = random::free_complex(&r, 0, 3, 2, &mut rng);
    let y = random::free_complex(&r, 0, 3, 2, &mut rng);
    c.bench_function("homotopy classes, length 3", |b| b.iter(|| homotopy_classes(black_box(&x), &y).unwrap()));
    let padded = random::with_disks(&random::unit_free_complex(&r, 0, 4, 2, &mut rng), &[(1, 1), (2, 2)], &mut rng);
    c.bench_function("minimize with 3 disk ranks", |b| b.iter(|| minimize(black_box(&padded)).unwrap().eliminations));
    let p = random::exact_periodic(&r, 3, &mut rng);
    let id = ChainMap::identity(&p);
    c.bench_function("periodic null-homotopy of the identity", |b| b.iter(|| null_homotopy(black_box(&id)).unwrap().is_some()));
}

criterion_group!(benches, modules, complexes, homotopy);
criterion_main!(benches);
