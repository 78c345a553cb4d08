//! The homotopy category: null-homotopies, mapping cones, homotopy
//! equivalences, minimization of free complexes over local rings, triangles
//! of the C-E proper class, and classification up to homotopy.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::ce::{is_degreewise_split, is_strongly_ce_exact, Family, SplitReport};
use crate::complex::hom::{chain_equations, map_blocks, zero_components, MorphismSpace};
use crate::complex::{ChainMap, Complex, ShortSequence, Support};
use crate::error::{Error, Result};
use crate::gp::{classify_strongly_ce_gp, GpClassification, Verdict};
use crate::module::{is_projective, FpModule, GpBounds, ModuleMap};
use crate::ring::linsys::{coords_vec, prune_generators, vec_coords, BlockId, LinearSystem, Term};
use crate::ring::{Lattice, Ring, RingElement, RingMatrix};

/// Longest backward walk while looking for a periodic null-homotopy.
const CYCLE_LIMIT: usize = 1 << 12;

/// `s_n: X_n → Y_{n+1}` with `f_n = d s_n + s_{n−1} d`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    map: ChainMap,
    lo: i64,
    comps: Vec<ModuleMap>,
    /// `Some(L)` for maps between periodic complexes: `s_n = comps[n mod L]`.
    period: Option<usize>,
}

impl Homotopy {
    fn from_matrices(map: &ChainMap, lo: i64, mats: Vec<RingMatrix>, period: Option<usize>) -> Homotopy {
        let (x, y) = (map.source(), map.target());
        let comps = mats
            .into_iter()
            .enumerate()
            .map(|(k, m)| {
                let n = if period.is_some() { 0 } else { lo + k as i64 };
                ModuleMap::raw(x.module(n), y.module(n + 1), m)
            })
            .collect();
        Homotopy {
            map: map.clone(),
            lo,
            comps,
            period,
        }
    }

    /// Homotopy over the natural degrees of `map` built from a matrix per degree.
    fn from_fn(map: &ChainMap, mut s: impl FnMut(i64) -> RingMatrix) -> Homotopy {
        match map.support() {
            Support::Periodic => Self::from_matrices(map, 0, vec![s(0)], Some(1)),
            Support::Window { lo, hi } => Self::from_matrices(map, lo - 1, (lo - 1..=hi).map(s).collect(), None),
            Support::Empty => Self::from_matrices(map, 0, Vec::new(), None),
        }
    }

    pub fn map(&self) -> &ChainMap {
        &self.map
    }

    pub fn period(&self) -> Option<usize> {
        self.period
    }

    pub fn component(&self, n: i64) -> ModuleMap {
        if let Some(l) = self.period {
            return self.comps[n.rem_euclid(l as i64) as usize].clone();
        }
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.comps.len() {
            self.comps[k as usize].clone()
        } else {
            ModuleMap::zero(&self.map.source().module(n), &self.map.target().module(n + 1))
        }
    }

    fn check_degrees(&self) -> Vec<i64> {
        match self.period {
            Some(l) => (0..l as i64).collect(),
            None => self.map.support().degrees(),
        }
    }

    /// Re-checks `f_n = d s_n + s_{n−1} d` as module maps.
    pub fn verify(&self) -> bool {
        let (x, y) = (self.map.source(), self.map.target());
        self.check_degrees().into_iter().all(|n| {
            let ds = y.diff(n + 1).compose(&self.component(n));
            let sd = self.component(n - 1).compose(&x.diff(n));
            self.map.component(n).sub(&ds.add(&sd)).is_zero()
        })
    }

    pub fn certifies(&self, f: &ChainMap) -> bool {
        self.map.equals(f) && self.verify()
    }
}

/// `d^Y_{n+1} s_n + s_{n−1} d^X_n ≡ rhs (mod Y_n)`.
fn homotopy_equation(
    sys: &mut LinearSystem,
    x: &Complex,
    y: &Complex,
    n: i64,
    s_n: BlockId,
    s_prev: BlockId,
    extra: &[Term],
    rhs: Option<&RingMatrix>,
) {
    let ring = x.ring();
    let tgt = y.module(n);
    let w = sys.add_block(tgt.relations().cols(), x.module(n).gens());
    let neg = ring.mat_neg(tgt.relations());
    let dy = y.diff(n + 1).matrix().clone();
    let dx = x.diff(n).matrix().clone();
    let mut terms = vec![Term::new(s_n).left(&dy), Term::new(s_prev).right(&dx), Term::new(w).left(&neg)];
    terms.extend_from_slice(extra);
    sys.add_equation(tgt.gens(), x.module(n).gens(), &terms, rhs);
}

/// A null-homotopy of `f`, if one exists.
///
/// Bounded supports give one finite system. Between periodic complexes a
/// 1-periodic homotopy is tried first; otherwise the affine sets of values a
/// homotopy can take are shrunk until stable, and a periodic certificate is
/// read off a cycle inside the stable set.
pub fn null_homotopy(f: &ChainMap) -> Result<Option<Homotopy>> {
    match f.support() {
        Support::Empty => Ok(Some(Homotopy::from_matrices(f, 0, Vec::new(), None))),
        Support::Window { lo, hi } => Ok(bounded_null_homotopy(f, lo, hi)),
        Support::Periodic => periodic_null_homotopy(f),
    }
}

pub fn is_null_homotopic(f: &ChainMap) -> Result<bool> {
    Ok(null_homotopy(f)?.is_some())
}

fn bounded_null_homotopy(f: &ChainMap, lo: i64, hi: i64) -> Option<Homotopy> {
    let (x, y) = (f.source(), f.target());
    let degrees: Vec<i64> = (lo - 1..=hi).collect();
    let mut sys = LinearSystem::new(x.ring());
    let blocks = map_blocks(&mut sys, x, y, &degrees, 1);
    for n in lo..=hi {
        let k = (n - lo) as usize;
        let rhs = f.component(n).matrix().clone();
        homotopy_equation(&mut sys, x, y, n, blocks[k + 1], blocks[k], &[], Some(&rhs));
    }
    let sol = sys.solve()?;
    let mats = blocks.iter().map(|b| sol[b.index()].clone()).collect();
    Some(Homotopy::from_matrices(f, lo - 1, mats, None))
}

/// Affine set `p + span_R(gens)` of matrices, entries row-major.
struct Coset {
    p: Vec<RingElement>,
    gens: Vec<Vec<RingElement>>,
    order: BigUint,
}

impl Coset {
    fn from_lattice(ring: &Ring, p: Vec<RingElement>, lat: &Lattice) -> Coset {
        let len = p.len();
        let candidates = lat.basis().map(|(_, row)| coords_vec(ring, row)).collect();
        Coset {
            p,
            gens: prune_generators(ring, len, candidates),
            order: lat.order(),
        }
    }

    fn constrain(&self, sys: &mut LinearSystem, ring: &Ring, block: BlockId, cols: usize) {
        let ts: Vec<BlockId> = self.gens.iter().map(|_| sys.add_block(1, 1)).collect();
        for (e, &pe) in self.p.iter().enumerate() {
            let mut terms = vec![(block, e / cols, e % cols, ring.one())];
            for (t, g) in ts.iter().zip(&self.gens) {
                terms.push((*t, 0, 0, ring.neg(g[e])));
            }
            sys.add_entry_equation(&terms, pe);
        }
    }
}

/// System for pairs `(a, b) = (s_{n−1}, s_n)` satisfying the homotopy
/// equation, with `a` in `set` and optionally `b` fixed.
fn pair_system(f: &ChainMap, set: &Coset, fixed_b: Option<&RingMatrix>) -> (LinearSystem, BlockId, BlockId) {
    let (x, y) = (f.source(), f.target());
    let ring = x.ring();
    let mut sys = LinearSystem::new(ring);
    let blocks = map_blocks(&mut sys, x, y, &[0, 0], 1);
    let (a, b) = (blocks[0], blocks[1]);
    let rhs = f.component(0).matrix().clone();
    homotopy_equation(&mut sys, x, y, 0, b, a, &[], Some(&rhs));
    let cols = x.module(0).gens();
    set.constrain(&mut sys, ring, a, cols);
    if let Some(m) = fixed_b {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                sys.add_entry_equation(&[(b, i, j, ring.one())], m.get(i, j));
            }
        }
    }
    (sys, a, b)
}

fn periodic_null_homotopy(f: &ChainMap) -> Result<Option<Homotopy>> {
    let (x, y) = (f.source(), f.target());
    let ring = x.ring();
    let mut sys = LinearSystem::new(ring);
    let s = map_blocks(&mut sys, x, y, &[0], 1)[0];
    let rhs = f.component(0).matrix().clone();
    homotopy_equation(&mut sys, x, y, 0, s, s, &[], Some(&rhs));
    if let Some(sol) = sys.solve() {
        return Ok(Some(Homotopy::from_matrices(f, 0, vec![sol[s.index()].clone()], Some(1))));
    }
    let (rows, cols) = (y.module(0).gens(), x.module(0).gens());
    let mut all = LinearSystem::new(ring);
    let b = map_blocks(&mut all, x, y, &[0], 1)[0];
    let mut set = Coset::from_lattice(ring, vec![ring.zero(); rows * cols], &all.kernel_projection(&[b]));
    // values of s_n admitting ever longer chains s_{n−k}, …, s_n
    loop {
        let (sys, _, b) = pair_system(f, &set, None);
        let Some(sol) = sys.solve() else { return Ok(None) };
        let next = Coset::from_lattice(ring, sol[b.index()].entries().to_vec(), &sys.kernel_projection(&[b]));
        let stable = next.order == set.order;
        set = next;
        if stable {
            break;
        }
    }
    let mut walk: Vec<RingMatrix> = Vec::new();
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut cur = RingMatrix::from_vec(rows, cols, set.p.clone()).expect("shape");
    let start = loop {
        let key = vec_coords(ring, cur.entries());
        if let Some(&i) = seen.get(&key) {
            break i;
        }
        if walk.len() >= CYCLE_LIMIT {
            return Err(Error::Budget(format!("no periodic homotopy within {CYCLE_LIMIT} steps")));
        }
        seen.insert(key, walk.len());
        walk.push(cur.clone());
        let (sys, a, _) = pair_system(f, &set, Some(&cur));
        let sol = sys
            .solve()
            .ok_or_else(|| Error::Budget("stable set element without a predecessor".into()))?;
        cur = sol[a.index()].clone();
    };
    // walk[k+1] is s_{n−1} when walk[k] is s_n
    let cycle = &walk[start..];
    let l = cycle.len();
    let mats = (0..l).map(|r| cycle[(l - r) % l].clone()).collect();
    Ok(Some(Homotopy::from_matrices(f, 0, mats, Some(l))))
}

/// The null-homotopic chain maps `X → Y` together with the maps that vanish
/// in `Y`, as a lattice in the coordinates of `MorphismSpace::new(x, y)`.
pub fn null_homotopic_lattice(x: &Complex, y: &Complex) -> Result<Lattice> {
    let space = MorphismSpace::new(x, y)?;
    let support = space.support();
    let degrees = support.degrees();
    let mut sys = LinearSystem::new(x.ring());
    let fb = map_blocks(&mut sys, x, y, &degrees, 0);
    let ring = x.ring();
    match support {
        Support::Empty => return Ok(space.zero_lattice().clone()),
        Support::Periodic => {
            let s = map_blocks(&mut sys, x, y, &[0], 1)[0];
            let neg = RingMatrix::identity(ring, y.module(0).gens());
            let neg = ring.mat_neg(&neg);
            homotopy_equation(&mut sys, x, y, 0, s, s, &[Term::new(fb[0]).left(&neg)], None);
        }
        Support::Window { lo, hi } => {
            let sd: Vec<i64> = (lo - 1..=hi).collect();
            let s = map_blocks(&mut sys, x, y, &sd, 1);
            for n in lo..=hi {
                let k = (n - lo) as usize;
                let neg = ring.mat_neg(&RingMatrix::identity(ring, y.module(n).gens()));
                homotopy_equation(&mut sys, x, y, n, s[k + 1], s[k], &[Term::new(fb[k]).left(&neg)], None);
            }
        }
    }
    let mut lat = sys.kernel_projection(&fb);
    for (_, row) in zero_components(x, y, &degrees).basis() {
        lat.insert(row.to_vec());
    }
    Ok(lat)
}

/// `|Hom_K(X, Y)|`: chain maps modulo null-homotopic ones.
pub fn homotopy_classes(x: &Complex, y: &Complex) -> Result<BigUint> {
    let space = MorphismSpace::new(x, y)?;
    Ok(space.valid_lattice().order() / null_homotopic_lattice(x, y)?.order())
}

/// `Cone(f)_n = N_n ⊕ M_{n−1}` with `d = [[d^N, f], [0, −d^M]]`.
pub fn mapping_cone(f: &ChainMap) -> Result<Complex> {
    let (m, n) = (f.source(), f.target());
    if m.is_periodic() != n.is_periodic() {
        return Err(Error::VariantMismatch);
    }
    let ring = m.ring();
    let diff = |k: i64| {
        let top = n.diff(k).matrix().hstack(f.component(k - 1).matrix());
        let bottom = RingMatrix::zeros(m.module(k - 2).gens(), n.module(k).gens()).hstack(&ring.mat_neg(m.diff(k - 1).matrix()));
        top.vstack(&bottom)
    };
    if n.is_periodic() {
        return Complex::periodic(&n.module(0).direct_sum(&m.module(0)), diff(0));
    }
    let window = match (n.window(), m.window()) {
        (None, None) => return Ok(Complex::zero(ring)),
        (Some(w), None) => w,
        (None, Some((a, b))) => (a + 1, b + 1),
        (Some((a, b)), Some((c, d))) => (a.min(c + 1), b.max(d + 1)),
    };
    let terms = (window.0..=window.1).map(|k| n.module(k).direct_sum(&m.module(k - 1))).collect();
    let diffs = (window.0 + 1..=window.1).map(diff).collect();
    Complex::bounded(ring, window.0, terms, diffs)
}

#[derive(Clone, Debug)]
pub struct HomotopyEquivalence {
    pub forward: ChainMap,
    pub backward: ChainMap,
    /// Certifies `id − forward ∘ backward` on the target.
    pub target_homotopy: Homotopy,
    /// Certifies `id − backward ∘ forward` on the source.
    pub source_homotopy: Homotopy,
}

impl HomotopyEquivalence {
    pub fn verify(&self) -> bool {
        let (m, n) = (self.forward.source(), self.forward.target());
        let fg = ChainMap::identity(n).sub(&self.forward.compose(&self.backward));
        let gf = ChainMap::identity(m).sub(&self.backward.compose(&self.forward));
        self.target_homotopy.certifies(&fg) && self.source_homotopy.certifies(&gf)
    }
}

/// Decided by contractibility of the mapping cone; the backward map and both
/// homotopies are read off the contracting homotopy.
pub fn homotopy_equivalence(f: &ChainMap) -> Result<Option<HomotopyEquivalence>> {
    let cone = mapping_cone(f)?;
    let Some(h) = null_homotopy(&ChainMap::identity(&cone))? else {
        return Ok(None);
    };
    if h.period().is_some_and(|l| l > 1) {
        return match periodic_equivalence(f) {
            Some(e) => Ok(Some(e)),
            None => Err(Error::Budget("the cone contracts only with a longer period".into())),
        };
    }
    let (m, n) = (f.source(), f.target());
    let ring = m.ring();
    let gn = |k: i64| n.module(k).gens();
    let gm = |k: i64| m.module(k).gens();
    let backward = ChainMap::from_fn(n, m, |k| h.component(k).matrix().submatrix(gn(k + 1), 0, gm(k), gn(k)))?;
    let fg = ChainMap::identity(n).sub(&f.compose(&backward));
    let gf = ChainMap::identity(m).sub(&backward.compose(f));
    let target_homotopy = Homotopy::from_fn(&fg, |k| h.component(k).matrix().submatrix(0, 0, gn(k + 1), gn(k)));
    let source_homotopy = Homotopy::from_fn(&gf, |k| {
        let c = h.component(k + 1).matrix().submatrix(gn(k + 2), gn(k + 1), gm(k + 1), gm(k));
        ring.mat_neg(&c)
    });
    let eq = HomotopyEquivalence {
        forward: f.clone(),
        backward,
        target_homotopy,
        source_homotopy,
    };
    debug_assert!(eq.verify());
    Ok(Some(eq))
}

pub fn is_homotopy_equivalence(f: &ChainMap) -> Result<bool> {
    let cone = mapping_cone(f)?;
    is_null_homotopic(&ChainMap::identity(&cone))
}

/// One joint 1-periodic system for the inverse `g` and homotopies `a`, `σ`.
fn periodic_equivalence(f: &ChainMap) -> Option<HomotopyEquivalence> {
    let (m, n) = (f.source(), f.target());
    let ring = m.ring();
    let mut sys = LinearSystem::new(ring);
    let g = map_blocks(&mut sys, n, m, &[0], 0)[0];
    chain_equations(&mut sys, n, m, Support::Periodic, &[g]);
    let a = map_blocks(&mut sys, n, n, &[0], 1)[0];
    let s = map_blocks(&mut sys, m, m, &[0], 1)[0];
    let f0 = f.component(0).matrix().clone();
    let idn = RingMatrix::identity(ring, n.module(0).gens());
    let idm = RingMatrix::identity(ring, m.module(0).gens());
    homotopy_equation(&mut sys, n, n, 0, a, a, &[Term::new(g).left(&f0)], Some(&idn));
    homotopy_equation(&mut sys, m, m, 0, s, s, &[Term::new(g).right(&f0)], Some(&idm));
    let sol = sys.solve()?;
    let backward = ChainMap::new(n, m, vec![sol[g.index()].clone()]).ok()?;
    let fg = ChainMap::identity(n).sub(&f.compose(&backward));
    let gf = ChainMap::identity(m).sub(&backward.compose(f));
    Some(HomotopyEquivalence {
        forward: f.clone(),
        backward,
        target_homotopy: Homotopy::from_fn(&fg, |_| sol[a.index()].clone()),
        source_homotopy: Homotopy::from_fn(&gf, |_| sol[s.index()].clone()),
    })
}

fn is_free(m: &FpModule) -> bool {
    m.cardinality() == BigUint::from(m.ring().cardinality()).pow(m.gens() as u32)
}

fn check_minimizable(x: &Complex) -> Result<()> {
    if !x.ring().is_local() {
        return Err(Error::Hypotheses(format!("{} is not local", x.ring().name())));
    }
    if let Some(n) = x.degrees().into_iter().find(|&n| !is_free(&x.module(n))) {
        return Err(Error::Hypotheses(format!("term in degree {n} is not free")));
    }
    Ok(())
}

pub fn is_unit_free(x: &Complex) -> bool {
    find_unit(x, false).is_none()
}

/// First unit entry `(n, i, j, u)` of a differential; periodic complexes need `i ≠ j`.
fn find_unit(x: &Complex, off_diagonal: bool) -> Option<(i64, usize, usize, RingElement)> {
    let ring = x.ring();
    let degrees: Vec<i64> = if x.is_periodic() { vec![0] } else { x.degrees() };
    for n in degrees {
        let d = x.diff(n);
        let d = d.matrix();
        for j in 0..d.cols() {
            for i in 0..d.rows() {
                if ring.is_unit(d.get(i, j)) && !(off_diagonal && i == j) {
                    return Some((n, i, j, d.get(i, j)));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct Minimization {
    pub complex: Complex,
    /// `forward: X → complex`, `backward: complex → X`.
    pub equivalence: HomotopyEquivalence,
    pub eliminations: usize,
}

/// `I − u⁻¹ w e_iᵀ` and `I − u⁻¹ e_j d_{i,·}`, the two corrections of one elimination.
fn corrections(ring: &Ring, d: &RingMatrix, i: usize, j: usize, u: RingElement) -> (RingMatrix, RingMatrix) {
    let uinv = ring.inverse(u).expect("unit");
    let delta = |r: usize, c: usize| if r == c { ring.one() } else { ring.zero() };
    let w = d.column(j);
    let row = d.row(i);
    let p = RingMatrix::from_fn(d.rows(), d.rows(), |r, c| {
        if c == i {
            ring.sub(delta(r, c), ring.mul(uinv, w[r]))
        } else {
            delta(r, c)
        }
    });
    let q = RingMatrix::from_fn(d.cols(), d.cols(), |r, c| {
        if r == j {
            ring.sub(delta(r, c), ring.mul(uinv, row[c]))
        } else {
            delta(r, c)
        }
    });
    (p, q)
}

fn without(n: usize, drop: &[usize]) -> Vec<usize> {
    (0..n).filter(|k| !drop.contains(k)).collect()
}

/// Splits off the disk through the unit entry; returns the smaller complex
/// with maps `f: X → X'` and `g: X' → X`, `f g = id`.
fn eliminate(x: &Complex, n: i64, i: usize, j: usize, u: RingElement) -> Result<(Complex, ChainMap, ChainMap)> {
    let ring = x.ring();
    let d = x.diff(n).matrix().clone();
    let (p, q) = corrections(ring, &d, i, j, u);
    if x.is_periodic() {
        let keep = without(d.rows(), &[i, j]);
        let f = p.select_rows(&keep);
        let g = q.select_cols(&keep);
        let dd = ring.mat_mul(&f, &ring.mat_mul(&d, &g));
        let y = Complex::periodic(&FpModule::free(ring, keep.len()), dd)?;
        let fm = ChainMap::new(x, &y, vec![f])?;
        let gm = ChainMap::new(&y, x, vec![g])?;
        return Ok((y, fm, gm));
    }
    let g_at = |m: i64| x.module(m).gens();
    let fmat = |m: i64| {
        if m == n {
            RingMatrix::identity(ring, g_at(m)).select_rows(&without(g_at(m), &[j]))
        } else if m == n - 1 {
            p.select_rows(&without(g_at(m), &[i]))
        } else {
            RingMatrix::identity(ring, g_at(m))
        }
    };
    let gmat = |m: i64| {
        if m == n {
            q.select_cols(&without(g_at(m), &[j]))
        } else if m == n - 1 {
            RingMatrix::identity(ring, g_at(m)).select_cols(&without(g_at(m), &[i]))
        } else {
            RingMatrix::identity(ring, g_at(m))
        }
    };
    let (lo, hi) = x.window().expect("a unit entry lives in the window");
    let terms = (lo..=hi).map(|m| FpModule::free(ring, fmat(m).rows())).collect();
    let diffs = (lo + 1..=hi)
        .map(|m| ring.mat_mul(&fmat(m - 1), &ring.mat_mul(x.diff(m).matrix(), &gmat(m))))
        .collect();
    let y = Complex::bounded(ring, lo, terms, diffs)?;
    let fm = ChainMap::from_fn(x, &y, fmat)?;
    let gm = ChainMap::from_fn(&y, x, gmat)?;
    Ok((y, fm, gm))
}

/// Removes disk summands through unit entries until every differential
/// entry lies in the maximal ideal.
pub fn minimize(x: &Complex) -> Result<Minimization> {
    check_minimizable(x)?;
    let mut cur = x.clone();
    let mut forward = ChainMap::identity(x);
    let mut backward = ChainMap::identity(x);
    let mut eliminations = 0;
    loop {
        let Some((n, i, j, u)) = find_unit(&cur, cur.is_periodic()) else {
            if find_unit(&cur, false).is_some() {
                return Err(Error::Hypotheses("unit entries only on the diagonal".into()));
            }
            break;
        };
        let (next, f, g) = eliminate(&cur, n, i, j, u)?;
        forward = f.compose(&forward);
        backward = backward.compose(&g);
        cur = next;
        eliminations += 1;
    }
    let fg = ChainMap::identity(&cur).sub(&forward.compose(&backward));
    let gf = ChainMap::identity(x).sub(&backward.compose(&forward));
    let target_homotopy = null_homotopy(&fg)?.ok_or_else(|| Error::Hypotheses("f g is not the identity".into()))?;
    let source_homotopy = null_homotopy(&gf)?.ok_or_else(|| Error::Hypotheses("g f is not homotopic to the identity".into()))?;
    Ok(Minimization {
        complex: cur,
        equivalence: HomotopyEquivalence {
            forward,
            backward,
            target_homotopy,
            source_homotopy,
        },
        eliminations,
    })
}

#[derive(Clone, Debug)]
pub struct XiTriangleReport {
    pub split: SplitReport,
    /// `0 → H_n(A) → H_n(B) → H_n(C) → 0` short exact, per degree.
    pub homology_exact: Vec<(i64, bool)>,
    pub member: bool,
    /// The strongly C-E exact verdict computed independently.
    pub strongly_exact: bool,
}

pub fn is_xi_triangle(s: &ShortSequence) -> Result<XiTriangleReport> {
    let split = is_degreewise_split(s)?;
    let [a, b, c] = s.complexes();
    let homology_exact: Vec<(i64, bool)> = s
        .degrees()
        .into_iter()
        .map(|n| {
            let (da, db, dc) = (a.degree_data(n), b.degree_data(n), c.degree_data(n));
            let fh = Family::Homology.induced(&s.f.component(n), &da, &db);
            let gh = Family::Homology.induced(&s.g.component(n), &db, &dc);
            let ok = fh.is_injective() && gh.is_surjective() && db.h.cardinality() == da.h.cardinality() * dc.h.cardinality();
            (n, ok)
        })
        .collect();
    let member = split.split && homology_exact.iter().all(|x| x.1);
    Ok(XiTriangleReport {
        split,
        homology_exact,
        member,
        strongly_exact: is_strongly_ce_exact(s).strongly_exact(),
    })
}

#[derive(Clone, Debug)]
pub struct HomotopyCeProjective {
    /// Minimizes to a complex with zero differential.
    pub by_minimization: Option<bool>,
    pub minimized: Option<Complex>,
    /// The C-E precover `Q → P` splits up to homotopy.
    pub by_precover: Option<bool>,
}

impl HomotopyCeProjective {
    pub fn verdict(&self) -> Option<bool> {
        self.by_minimization.or(self.by_precover)
    }

    pub fn agree(&self) -> bool {
        match (self.by_minimization, self.by_precover) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }
}

/// `π: Q → P` with `Q_n = R^{g_n} ⊕ R^{g_{n+1}} ⊕ R^{z_n}` (disks on the
/// terms plus spheres on the cycle generators), onto on terms, cycles,
/// boundaries and homology.
pub fn ce_precover(p: &Complex) -> Result<ChainMap> {
    let ring = p.ring();
    let g = |n: i64| p.module(n).gens();
    let zgens = |n: i64| {
        let dd = p.degree_data(n);
        dd.z_incl.matrix().clone()
    };
    let z = |n: i64| p.degree_data(n).z.gens();
    let q_diff = |n: i64| {
        let rows = g(n - 1) + g(n) + z(n - 1);
        let cols = g(n) + g(n + 1) + z(n);
        RingMatrix::identity(ring, g(n)).placed(rows, cols, g(n - 1), 0)
    };
    let pi = |n: i64| {
        RingMatrix::identity(ring, g(n)).hstack(p.diff(n + 1).matrix()).hstack(&zgens(n))
    };
    let q = if p.is_periodic() {
        Complex::periodic(&FpModule::free(ring, 2 * g(0) + z(0)), q_diff(0))?
    } else {
        let Some((lo, hi)) = p.window() else {
            return Ok(ChainMap::identity(p));
        };
        let terms = (lo - 1..=hi).map(|n| FpModule::free(ring, g(n) + g(n + 1) + z(n))).collect();
        let diffs = (lo..=hi).map(q_diff).collect();
        Complex::bounded(ring, lo - 1, terms, diffs)?
    };
    ChainMap::from_fn(&q, p, pi)
}

/// Whether the precover has a section up to homotopy: `π h ≃ id`.
fn precover_splits(p: &Complex) -> Result<bool> {
    let pi = ce_precover(p)?;
    let q = pi.source().clone();
    let ring = p.ring();
    let support = Support::of(p, &q);
    let degrees = support.degrees();
    let mut sys = LinearSystem::new(ring);
    let h = map_blocks(&mut sys, p, &q, &degrees, 0);
    chain_equations(&mut sys, p, &q, support, &h);
    match support {
        Support::Empty => return Ok(true),
        Support::Periodic => {
            let s = map_blocks(&mut sys, p, p, &[0], 1)[0];
            let negpi = ring.mat_neg(pi.component(0).matrix());
            let id = ring.mat_neg(&RingMatrix::identity(ring, p.module(0).gens()));
            homotopy_equation(&mut sys, p, p, 0, s, s, &[Term::new(h[0]).left(&negpi)], Some(&id));
        }
        Support::Window { lo, hi } => {
            let s = map_blocks(&mut sys, p, p, &(lo - 1..=hi).collect::<Vec<_>>(), 1);
            let negpi: Vec<RingMatrix> = (lo..=hi).map(|n| ring.mat_neg(pi.component(n).matrix())).collect();
            for n in lo..=hi {
                let k = (n - lo) as usize;
                let id = ring.mat_neg(&RingMatrix::identity(ring, p.module(n).gens()));
                homotopy_equation(&mut sys, p, p, n, s[k + 1], s[k], &[Term::new(h[k]).left(&negpi[k])], Some(&id));
            }
        }
    }
    Ok(sys.solve().is_some())
}

/// Homotopy C-E projectivity by two routes: minimization to a complex with
/// zero differential, and splitting of the C-E precover up to homotopy. The
/// precover route searches 1-periodic data only, so for periodic complexes a
/// failure there is inconclusive.
pub fn is_homotopy_ce_projective(p: &Complex) -> Result<HomotopyCeProjective> {
    let (by_minimization, minimized) = match minimize(p) {
        Ok(m) => {
            let zero = m.complex.degrees().into_iter().all(|n| m.complex.diff(n).is_zero());
            (Some(zero), Some(m.complex))
        }
        Err(Error::Hypotheses(_)) => (None, None),
        Err(e) => return Err(e),
    };
    let projective = p.degrees().into_iter().all(|n| is_projective(&p.module(n)).projective);
    let by_precover = if projective {
        match precover_splits(p)? {
            true => Some(true),
            false if p.is_periodic() => None,
            false => Some(false),
        }
    } else {
        None
    };
    if by_minimization.is_none() && by_precover.is_none() {
        return Err(Error::Hypotheses("neither minimization nor the precover route applies".into()));
    }
    Ok(HomotopyCeProjective {
        by_minimization,
        minimized,
        by_precover,
    })
}

#[derive(Clone, Debug)]
pub struct GpObjectReport {
    pub classification: GpClassification,
    /// Present when the complex was minimized first.
    pub minimization: Option<Minimization>,
}

impl GpObjectReport {
    pub fn verdict(&self) -> Verdict {
        self.classification.overall
    }
}

/// Minimizes when possible, then classifies the minimal complex degreewise.
/// Without minimization the complex itself is classified, and an `Unknown`
/// verdict is an error.
pub fn classify_gp_object(x: &Complex, bounds: &GpBounds) -> Result<GpObjectReport> {
    match minimize(x) {
        Ok(m) => Ok(GpObjectReport {
            classification: classify_strongly_ce_gp(&m.complex, bounds),
            minimization: Some(m),
        }),
        Err(Error::Hypotheses(why)) => {
            let classification = classify_strongly_ce_gp(x, bounds);
            if classification.overall == Verdict::Unknown {
                return Err(Error::Hypotheses(format!("{why}; direct classification inconclusive")));
            }
            Ok(GpObjectReport {
                classification,
                minimization: None,
            })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests;
