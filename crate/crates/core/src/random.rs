//! Seeded generators of small modules, complexes and sequences, shared by the
//! property tests and the experiment suites.

use std::collections::BTreeSet;

use rand::Rng as _;
use rand_chacha::ChaCha8Rng;

use crate::complex::{Complex, ShortSequence};
use crate::module::FpModule;
use crate::ring::linsys::kernel_generators;
use crate::ring::{Ring, RingElement, RingMatrix};

pub use rand::SeedableRng;
pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn element(ring: &Ring, rng: &mut Rng) -> RingElement {
    RingElement(rng.gen_range(0..ring.cardinality() as u32))
}

pub fn matrix(ring: &Ring, rows: usize, cols: usize, rng: &mut Rng) -> RingMatrix {
    RingMatrix::from_fn(rows, cols, |_, _| element(ring, rng))
}

/// Entries drawn from the maximal ideal (nonunits) only.
pub fn nonunit_matrix(ring: &Ring, rows: usize, cols: usize, rng: &mut Rng) -> RingMatrix {
    let nonunits: Vec<RingElement> = ring.elements().filter(|&a| !ring.is_unit(a)).collect();
    RingMatrix::from_fn(rows, cols, |_, _| nonunits[rng.gen_range(0..nonunits.len())])
}

pub fn module(ring: &Ring, max_gens: usize, max_rels: usize, rng: &mut Rng) -> FpModule {
    let g = rng.gen_range(1..=max_gens);
    let r = rng.gen_range(0..=max_rels);
    FpModule::new(ring, g, matrix(ring, g, r, rng)).expect("free target")
}

/// Random invertible matrix as a product of elementary matrices, with its inverse.
pub fn invertible(ring: &Ring, n: usize, steps: usize, rng: &mut Rng) -> (RingMatrix, RingMatrix) {
    let mut p = RingMatrix::identity(ring, n);
    let mut q = RingMatrix::identity(ring, n);
    if n < 2 {
        let units: Vec<RingElement> = ring.elements().filter(|&a| ring.is_unit(a)).collect();
        if n == 1 {
            let u = units[rng.gen_range(0..units.len())];
            p.set(0, 0, u);
            q.set(0, 0, ring.inverse(u).expect("unit"));
        }
        return (p, q);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = element(ring, rng);
        let mut e = RingMatrix::identity(ring, n);
        e.set(i, j, c);
        let mut einv = RingMatrix::identity(ring, n);
        einv.set(i, j, ring.neg(c));
        p = ring.mat_mul(&e, &p);
        q = ring.mat_mul(&q, &einv);
    }
    (p, q)
}

/// Bounded complex of free modules on `[lo, lo+len-1]`, each `d_{n+1}` a
/// random combination of kernel generators of `d_n`.
pub fn free_complex(ring: &Ring, lo: i64, len: usize, max_rank: usize, rng: &mut Rng) -> Complex {
    let ranks: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_rank)).collect();
    let mut diffs: Vec<RingMatrix> = Vec::new();
    for i in 1..len {
        let d = if i == 1 {
            matrix(ring, ranks[0], ranks[1], rng)
        } else {
            let k = kernel_generators(ring, &diffs[i - 2]);
            let m = matrix(ring, k.cols(), ranks[i], rng);
            ring.mat_mul(&k, &m)
        };
        diffs.push(d);
    }
    let terms = ranks.iter().map(|&r| FpModule::free(ring, r)).collect();
    Complex::bounded(ring, lo, terms, diffs).expect("kernel construction gives a complex")
}

/// Periodic free complex `d = A·B` with `B·A = 0`.
pub fn free_periodic(ring: &Ring, max_rank: usize, rng: &mut Rng) -> Complex {
    let r = rng.gen_range(1..=max_rank);
    let k = rng.gen_range(0..=r);
    let b = matrix(ring, k, r, rng);
    let kb = kernel_generators(ring, &b);
    let a = ring.mat_mul(&kb, &matrix(ring, kb.cols(), k, rng));
    Complex::periodic(&FpModule::free(ring, r), ring.mat_mul(&a, &b)).expect("d² = A(BA)B = 0")
}

/// Elements `a` with `ann(a) = (a)`, so that `(R, a)` is exact periodic.
pub fn self_annihilating(ring: &Ring) -> Vec<RingElement> {
    ring.elements()
        .filter(|&a| {
            let ideal: BTreeSet<u32> = ring.elements().map(|b| ring.mul(a, b).index()).collect();
            let ann: BTreeSet<u32> = ring.elements().filter(|&b| ring.is_zero(ring.mul(a, b))).map(|b| b.index()).collect();
            ideal == ann
        })
        .collect()
}

/// Per-degree change of basis of a free complex.
pub fn conjugate(x: &Complex, steps: usize, rng: &mut Rng) -> Complex {
    let ring = x.ring();
    if x.is_periodic() {
        let m = x.module(0);
        let (p, q) = invertible(ring, m.gens(), steps, rng);
        let d = ring.mat_mul(&ring.mat_mul(&p, x.diff(0).matrix()), &q);
        return Complex::periodic(&m, d).expect("conjugate of a complex");
    }
    let Some((lo, hi)) = x.window() else { return x.clone() };
    let bases: Vec<(RingMatrix, RingMatrix)> =
        (lo..=hi).map(|n| invertible(ring, x.module(n).gens(), steps, rng)).collect();
    let terms = (lo..=hi).map(|n| x.module(n)).collect();
    let diffs = (lo + 1..=hi)
        .map(|n| {
            let p = &bases[(n - 1 - lo) as usize].0;
            let q = &bases[(n - lo) as usize].1;
            ring.mat_mul(&ring.mat_mul(p, x.diff(n).matrix()), q)
        })
        .collect();
    Complex::bounded(ring, lo, terms, diffs).expect("conjugate of a complex")
}

/// Exact bounded complex of free modules: conjugated sum of disks.
pub fn exact_free(ring: &Ring, lo: i64, len: usize, max_rank: usize, rng: &mut Rng) -> Complex {
    let mut x = Complex::zero(ring);
    for n in lo + 1..lo + len as i64 {
        let r = rng.gen_range(0..=max_rank);
        x = x.direct_sum(&Complex::disk(n, &FpModule::free(ring, r))).expect("bounded");
    }
    conjugate(&x, 6, rng)
}

/// Exact periodic complex of free modules: periodic disks and `(R, a)` with
/// `ann(a) = (a)`, conjugated.
pub fn exact_periodic(ring: &Ring, max_blocks: usize, rng: &mut Rng) -> Complex {
    let sa: Vec<RingElement> = self_annihilating(ring).into_iter().filter(|a| !ring.is_zero(*a)).collect();
    let blocks = rng.gen_range(1..=max_blocks);
    let mut x: Option<Complex> = None;
    for _ in 0..blocks {
        let b = if !sa.is_empty() && rng.gen_bool(0.5) {
            let a = sa[rng.gen_range(0..sa.len())];
            Complex::periodic(&FpModule::free(ring, 1), RingMatrix::from_rows(ring, vec![vec![a]])).expect("a² = 0")
        } else {
            Complex::periodic_disk(&FpModule::free(ring, 1))
        };
        x = Some(match x {
            None => b,
            Some(y) => y.direct_sum(&b).expect("periodic"),
        });
    }
    conjugate(&x.expect("at least one block"), 6, rng)
}

/// `A ↪ X ↠ X/A` for a random free complex and a random subcomplex.
pub fn subcomplex_sequence(ring: &Ring, len: usize, max_rank: usize, rng: &mut Rng) -> ShortSequence {
    let x = free_complex(ring, 0, len, max_rank, rng);
    let gens: Vec<RingMatrix> = (-1..=len as i64)
        .map(|n| {
            let g = x.module(n).gens();
            let k = if g == 0 { 0 } else { rng.gen_range(0..=1) };
            matrix(ring, g, k, rng)
        })
        .collect();
    let (_, incl) = x.subcomplex(|n| gens[(n + 1) as usize].clone());
    let (_, proj) = Complex::quotient(&incl).expect("injective inclusion");
    ShortSequence::new(incl, proj).expect("quotient kills the subcomplex")
}

/// Direct sum of a complex with disks, hidden by a change of basis.
pub fn with_disks(x: &Complex, disks: &[(i64, usize)], rng: &mut Rng) -> Complex {
    let ring = x.ring();
    let mut y = x.clone();
    for &(n, r) in disks {
        let d = if x.is_periodic() {
            Complex::periodic_disk(&FpModule::free(ring, r))
        } else {
            Complex::disk(n, &FpModule::free(ring, r))
        };
        y = y.direct_sum(&d).expect("same variant");
    }
    conjugate(&y, 8, rng)
}

/// Bounded free complex whose differentials have only nonunit entries.
pub fn unit_free_complex(ring: &Ring, lo: i64, len: usize, max_rank: usize, rng: &mut Rng) -> Complex {
    for _ in 0..64 {
        let ranks: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_rank)).collect();
        let diffs: Vec<RingMatrix> = (1..len).map(|i| nonunit_matrix(ring, ranks[i - 1], ranks[i], rng)).collect();
        let terms = ranks.iter().map(|&r| FpModule::free(ring, r)).collect();
        if let Ok(c) = Complex::bounded(ring, lo, terms, diffs) {
            return c;
        }
    }
    Complex::sphere(lo, &FpModule::free(ring, 1))
}
