//! The total Hom complex, the group of chain maps between two complexes, and
//! the adjunctions between disks or spheres and the terms of a complex.
//!
//! `Hom(C, D)_n = Π_t Hom_R(C_t, D_{t+n})` is computed as an abelian group:
//! a presentation over the prime subring `Z/c`, with generators the basis of
//! the lattice of well-defined matrices and relations the combinations that
//! vanish in the targets. Its differential is
//! `(δf)_m = d^D_{m+n} f_m − (−1)^n f_{m−1} d^C_m`.

use num_bigint::BigUint;

use super::{ChainMap, Complex, Shape, Support};
use crate::error::{Error, Result};
use crate::module::{
    descend, lift_through, matrix_column_lattice, quotient_elements, solve_modulo, FpModule, HomGroup, ModuleMap,
};
use crate::ring::linsys::{coords_vec, matrices_coords, vec_coords, BlockId, LinearSystem, Term};
use crate::ring::{Lattice, Ring, RingMatrix};

#[derive(Clone, Debug)]
struct HomDegree {
    parts: Vec<(i64, HomGroup)>,
    width: usize,
    gens: Vec<Vec<u64>>,
    zero_gens: Vec<Vec<u64>>,
}

/// `Hom(C, D)` materialized on a window of degrees, as a bounded complex over `Z/c`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub complex: Complex,
    /// Degrees whose homology equals that of the full Hom complex.
    pub reliable: Option<(i64, i64)>,
    lo: i64,
    degrees: Vec<HomDegree>,
    source: Complex,
    target: Complex,
}

fn sign(ring: &Ring, n: i64) -> crate::ring::RingElement {
    ring.from_int(if n.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// `t` with `Hom_R(C_t, D_{t+n})` possibly nonzero.
fn parts_of(c: &Complex, d: &Complex, n: i64) -> Vec<i64> {
    match (c.window(), d.shape()) {
        (Some((a, b)), Shape::Periodic) => (a..=b).collect(),
        (Some((a, b)), Shape::Bounded { .. }) => match d.window() {
            Some((p, q)) => (a.max(p - n)..=b.min(q - n)).collect(),
            None => Vec::new(),
        },
        (None, _) if c.is_periodic() => match d.window() {
            Some((p, q)) => (p - n..=q - n).collect(),
            None => Vec::new(),
        },
        (None, _) => Vec::new(),
    }
}

fn p_matrix(p: &Ring, rows: usize, vs: &[Vec<u64>]) -> RingMatrix {
    RingMatrix::from_fn(rows, vs.len(), |i, j| p.from_int(vs[j][i] as i64))
}

impl HomDegree {
    fn new(c: &Complex, d: &Complex, n: i64) -> HomDegree {
        let parts: Vec<(i64, HomGroup)> = parts_of(c, d, n)
            .into_iter()
            .map(|t| (t, HomGroup::new(&c.module(t), &d.module(t + n))))
            .collect();
        let width: usize = parts.iter().map(|(_, h)| h.valid_lattice().ncols()).sum();
        let mut gens = Vec::new();
        let mut zero_gens = Vec::new();
        let mut off = 0;
        for (_, h) in &parts {
            let w = h.valid_lattice().ncols();
            for (lat, out) in [(h.valid_lattice(), &mut gens), (h.zero_lattice(), &mut zero_gens)] {
                for (_, row) in lat.basis() {
                    let mut v = vec![0u64; width];
                    v[off..off + w].copy_from_slice(row);
                    out.push(v);
                }
            }
            off += w;
        }
        HomDegree {
            parts,
            width,
            gens,
            zero_gens,
        }
    }

    fn decode(&self, coords: &[u64]) -> Vec<(i64, ModuleMap)> {
        let mut off = 0;
        self.parts
            .iter()
            .map(|(t, h)| {
                let w = h.valid_lattice().ncols();
                let f = h.map_from_coords(&coords[off..off + w]);
                off += w;
                (*t, f)
            })
            .collect()
    }

    /// Ambient coordinates of the combination `Σ a_i g_i` of generators.
    fn combine(&self, c: u64, a: &[u64]) -> Vec<u64> {
        let mut v = vec![0u64; self.width];
        for (ai, g) in a.iter().zip(&self.gens) {
            for (x, y) in v.iter_mut().zip(g) {
                *x = (*x + ai * y) % c;
            }
        }
        v
    }

    fn module(&self, p: &Ring) -> FpModule {
        let r = self.gens.len();
        let mut sys = LinearSystem::new(p);
        let a = sys.add_block(r, 1);
        let w = sys.add_block(self.zero_gens.len(), 1);
        let vm = p_matrix(p, self.width, &self.gens);
        let zm = p.mat_neg(&p_matrix(p, self.width, &self.zero_gens));
        sys.add_equation(self.width, 1, &[Term::new(a).left(&vm), Term::new(w).left(&zm)], None);
        let lat = sys.kernel_projection(&[a]);
        let rels: Vec<Vec<_>> = lat.basis().map(|(_, row)| coords_vec(p, row)).collect();
        FpModule::new(p, r, RingMatrix::from_columns(r, &rels)).expect("relations have the right length")
    }
}

pub fn hom_complex(c: &Complex, d: &Complex, window: Option<(i64, i64)>) -> Result<HomComplex> {
    if c.ring() != d.ring() {
        return Err(Error::RingMismatch);
    }
    if c.is_periodic() && d.is_periodic() {
        return Err(Error::VariantMismatch);
    }
    let ring = c.ring();
    let p = ring.prime_subring();
    let (lo, hi, reliable) = match (c.is_periodic() || d.is_periodic(), window) {
        (false, None) => match (c.window(), d.window()) {
            (Some((a, b)), Some((x, y))) => (x - b, y - a, Some((x - b, y - a))),
            _ => (0, -1, None),
        },
        (_, Some((a, b))) => (a - 1, b + 1, Some((a, b))),
        (true, None) => return Err(Error::Hypotheses("a periodic argument needs a degree window".into())),
    };
    let degrees: Vec<HomDegree> = (lo..=hi).map(|n| HomDegree::new(c, d, n)).collect();
    let modules: Vec<FpModule> = degrees.iter().map(|h| h.module(&p)).collect();
    let mut diffs = Vec::new();
    for n in lo + 1..=hi {
        let (src, tgt) = (&degrees[(n - lo) as usize], &degrees[(n - 1 - lo) as usize]);
        let vm = p_matrix(&p, tgt.width, &tgt.gens);
        let zm = p_matrix(&p, tgt.width, &tgt.zero_gens);
        let mut cols = Vec::with_capacity(src.gens.len());
        for g in &src.gens {
            let f = src.decode(g);
            let get = |m: i64| f.iter().find(|(t, _)| *t == m).map(|x| x.1.clone());
            let mut u = Vec::with_capacity(tgt.width);
            for (m, _) in &tgt.parts {
                let mut x = ModuleMap::zero(&c.module(*m), &d.module(m + n - 1));
                if let Some(fm) = get(*m) {
                    x = x.add(&d.diff(m + n).compose(&fm));
                }
                if let Some(fm1) = get(m - 1) {
                    x = x.sub(&fm1.compose(&c.diff(*m)).scale(sign(ring, n)));
                }
                u.extend(vec_coords(ring, x.matrix().entries()));
            }
            let b = p_matrix(&p, tgt.width, &[u]);
            let a = solve_modulo(&p, &vm, &zm, &b).expect("δ of a well-defined map is well defined");
            cols.push(a.column(0));
        }
        diffs.push(RingMatrix::from_columns(tgt.gens.len(), &cols));
    }
    let complex = if modules.is_empty() {
        Complex::zero(&p)
    } else {
        Complex::bounded(&p, lo, modules, diffs)?
    };
    Ok(HomComplex {
        complex,
        reliable,
        lo,
        degrees,
        source: c.clone(),
        target: d.clone(),
    })
}

impl HomComplex {
    /// `|H_n(Hom(C, D))|`, or `None` outside the reliable window.
    pub fn homology_order(&self, n: i64) -> Option<BigUint> {
        let bounded = !self.source.is_periodic() && !self.target.is_periodic();
        let Some((a, b)) = self.reliable else {
            return bounded.then(|| BigUint::from(1u32));
        };
        if n < a || n > b {
            // both bounded: Hom vanishes outside its natural window
            return bounded.then(|| BigUint::from(1u32));
        }
        Some(self.complex.homology(n).cardinality())
    }

    /// Whether the homology vanishes on the whole reliable window.
    pub fn is_exact(&self) -> bool {
        match self.reliable {
            Some((a, b)) => (a..=b).all(|n| self.complex.is_exact_at(n)),
            None => true,
        }
    }

    /// The degree-`n` element with generator coefficients `a`, as the family
    /// of maps `C_t → D_{t+n}`.
    pub fn element(&self, n: i64, a: &[u64]) -> Vec<(i64, ModuleMap)> {
        let h = &self.degrees[(n - self.lo) as usize];
        h.decode(&h.combine(self.source.ring().modulus(), a))
    }

    /// A degree-`n` cycle read as a chain map `C → Σ^{-n} D`.
    pub fn cycle_as_chain_map(&self, n: i64, a: &[u64]) -> Result<ChainMap> {
        let parts = self.element(n, a);
        let target = self.target.suspension(-n);
        ChainMap::from_fn(&self.source, &target, |m| {
            parts
                .iter()
                .find(|(t, _)| *t == m)
                .map(|x| x.1.matrix().clone())
                .unwrap_or_else(|| RingMatrix::zeros(target.module(m).gens(), self.source.module(m).gens()))
        })
    }
}

/// Chain maps `X → Y` (degree 0) as `valid / zero` lattices of component
/// coordinates, concatenated over the support in increasing degree.
#[derive(Clone, Debug)]
pub struct MorphismSpace {
    source: Complex,
    target: Complex,
    support: Support,
    valid: Lattice,
    zero: Lattice,
}

/// Adds one block per support degree and the well-definedness equations.
pub(crate) fn map_blocks(sys: &mut LinearSystem, x: &Complex, y: &Complex, degrees: &[i64], shift: i64) -> Vec<BlockId> {
    let ring = x.ring();
    degrees
        .iter()
        .map(|&n| {
            let (a, b) = (x.module(n), y.module(n + shift));
            let f = sys.add_block(b.gens(), a.gens());
            let w = sys.add_block(b.relations().cols(), a.relations().cols());
            let neg = ring.mat_neg(b.relations());
            sys.add_equation(
                b.gens(),
                a.relations().cols(),
                &[Term::new(f).right(a.relations()), Term::new(w).left(&neg)],
                None,
            );
            f
        })
        .collect()
}

pub(crate) fn block_at(support: Support, blocks: &[BlockId], n: i64) -> Option<BlockId> {
    match support {
        Support::Periodic => blocks.first().copied(),
        Support::Window { lo, hi } if (lo..=hi).contains(&n) => Some(blocks[(n - lo) as usize]),
        _ => None,
    }
}

/// Adds `d^Y_n F_n − F_{n−1} d^X_n ≡ 0 (mod Y_{n−1})` for every check degree.
pub(crate) fn chain_equations(sys: &mut LinearSystem, x: &Complex, y: &Complex, support: Support, blocks: &[BlockId]) {
    let ring = x.ring();
    for n in support.check_degrees() {
        let (dy, dx) = (y.diff(n), x.diff(n));
        let neg_dx = ring.mat_neg(dx.matrix());
        let tgt = y.module(n - 1);
        let w = sys.add_block(tgt.relations().cols(), x.module(n).gens());
        let neg = ring.mat_neg(tgt.relations());
        let mut terms = vec![Term::new(w).left(&neg)];
        if let Some(b) = block_at(support, blocks, n) {
            terms.push(Term::new(b).left(dy.matrix()));
        }
        if let Some(b) = block_at(support, blocks, n - 1) {
            terms.push(Term::new(b).right(&neg_dx));
        }
        sys.add_equation(tgt.gens(), x.module(n).gens(), &terms, None);
    }
}

/// Zero lattice: components whose columns vanish in the target.
pub(crate) fn zero_components(x: &Complex, y: &Complex, degrees: &[i64]) -> Lattice {
    let ring = x.ring();
    let parts: Vec<Lattice> = degrees
        .iter()
        .map(|&n| matrix_column_lattice(ring, &y.module(n), x.module(n).gens()))
        .collect();
    let width = parts.iter().map(|l| l.ncols()).sum();
    let mut out = Lattice::new(ring.modulus(), width);
    let mut off = 0;
    for l in &parts {
        for (_, row) in l.basis() {
            let mut v = vec![0u64; width];
            v[off..off + row.len()].copy_from_slice(row);
            out.insert(v);
        }
        off += l.ncols();
    }
    out
}

impl MorphismSpace {
    pub fn new(x: &Complex, y: &Complex) -> Result<MorphismSpace> {
        if x.ring() != y.ring() {
            return Err(Error::RingMismatch);
        }
        let support = Support::of(x, y);
        let degrees = support.degrees();
        let mut sys = LinearSystem::new(x.ring());
        let blocks = map_blocks(&mut sys, x, y, &degrees, 0);
        chain_equations(&mut sys, x, y, support, &blocks);
        let valid = sys.kernel_projection(&blocks);
        let zero = zero_components(x, y, &degrees);
        Ok(MorphismSpace {
            source: x.clone(),
            target: y.clone(),
            support,
            valid,
            zero,
        })
    }

    pub fn cardinality(&self) -> BigUint {
        self.valid.order() / self.zero.order()
    }

    pub fn valid_lattice(&self) -> &Lattice {
        &self.valid
    }

    pub fn zero_lattice(&self) -> &Lattice {
        &self.zero
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn map_from_coords(&self, coords: &[u64]) -> ChainMap {
        let ring = self.source.ring();
        let k = ring.dim();
        let mut off = 0;
        let comps = self
            .support
            .degrees()
            .into_iter()
            .map(|n| {
                let (a, b) = (self.source.module(n), self.target.module(n));
                let len = a.gens() * b.gens() * k;
                let m = RingMatrix::from_vec(b.gens(), a.gens(), coords_vec(ring, &coords[off..off + len]))
                    .expect("shape");
                off += len;
                ModuleMap::raw(a, b, m)
            })
            .collect();
        ChainMap::raw(&self.source, &self.target, comps)
    }

    pub fn coords_of(&self, f: &ChainMap) -> Vec<u64> {
        let comps: Vec<ModuleMap> = self.support.degrees().into_iter().map(|n| f.component(n)).collect();
        let refs: Vec<&RingMatrix> = comps.iter().map(|c| c.matrix()).collect();
        matrices_coords(self.source.ring(), &refs)
    }

    /// One representative per chain map; `None` past `limit`.
    pub fn elements(&self, limit: u64) -> Option<Vec<ChainMap>> {
        let reps = quotient_elements(&self.valid, &self.zero, limit)?;
        Some(reps.iter().map(|c| self.map_from_coords(c)).collect())
    }
}

/// One of the four adjunction isomorphisms between chain maps out of or into
/// a disk or sphere and module maps, checked by enumeration.
#[derive(Clone, Debug)]
pub struct Correspondence {
    pub label: &'static str,
    pub complex_side: BigUint,
    pub module_side: BigUint,
    pub roundtrip: bool,
}

impl Correspondence {
    pub fn holds(&self) -> bool {
        self.roundtrip && self.complex_side == self.module_side
    }
}

/// `Hom(D^n(M), X) → Hom_R(M, X_n)`.
pub fn from_disk_forward(f: &ChainMap, n: i64) -> ModuleMap {
    f.component(n)
}

pub fn from_disk_backward(g: &ModuleMap, x: &Complex, n: i64) -> ChainMap {
    let disk = Complex::disk(n, g.source());
    let dg = x.diff(n).compose(g);
    ChainMap::from_fn(&disk, x, |m| if m == n { g.matrix().clone() } else { dg.matrix().clone() })
        .expect("disk maps are chain maps")
}

/// `Hom(S^n(M), X) → Hom_R(M, Z_n X)`.
pub fn from_sphere_forward(f: &ChainMap, z_incl: &ModuleMap, n: i64) -> Result<ModuleMap> {
    lift_through(&f.component(n), z_incl).ok_or(Error::NotChainMap { degree: n })
}

pub fn from_sphere_backward(g: &ModuleMap, z_incl: &ModuleMap, x: &Complex, n: i64) -> ChainMap {
    let sphere = Complex::sphere(n, g.source());
    let comp = z_incl.compose(g);
    ChainMap::from_fn(&sphere, x, |_| comp.matrix().clone()).expect("cycles give chain maps")
}

/// `Hom(X, D^n(M)) → Hom_R(X_{n−1}, M)`.
pub fn to_disk_forward(f: &ChainMap, n: i64) -> ModuleMap {
    f.component(n - 1)
}

pub fn to_disk_backward(g: &ModuleMap, x: &Complex, n: i64) -> ChainMap {
    let disk = Complex::disk(n, g.target());
    let gd = g.compose(&x.diff(n));
    ChainMap::from_fn(x, &disk, |m| {
        let (a, b) = (x.module(m), disk.module(m));
        if m == n {
            gd.matrix().clone()
        } else if m == n - 1 {
            g.matrix().clone()
        } else {
            RingMatrix::zeros(b.gens(), a.gens())
        }
    })
    .expect("maps into a disk are chain maps")
}

/// `Hom(X, S^n(M)) → Hom_R(X_n / B_n, M)`.
pub fn to_sphere_forward(f: &ChainMap, c_mod_b_proj: &ModuleMap, n: i64) -> Result<ModuleMap> {
    let fn_ = f.component(n);
    let id = ModuleMap::identity(fn_.target());
    descend(&fn_, c_mod_b_proj, &id).ok_or(Error::NotChainMap { degree: n })
}

pub fn to_sphere_backward(g: &ModuleMap, c_mod_b_proj: &ModuleMap, x: &Complex, n: i64) -> ChainMap {
    let sphere = Complex::sphere(n, g.target());
    let comp = g.compose(c_mod_b_proj);
    ChainMap::from_fn(x, &sphere, |m| {
        if m == n {
            comp.matrix().clone()
        } else {
            RingMatrix::zeros(sphere.module(m).gens(), x.module(m).gens())
        }
    })
    .expect("maps killing boundaries give chain maps")
}

fn check_bijection<A, B>(
    label: &'static str,
    lhs: Vec<A>,
    rhs: Vec<B>,
    fwd: impl Fn(&A) -> Result<B>,
    bwd: impl Fn(&B) -> A,
    eq_a: impl Fn(&A, &A) -> bool,
    eq_b: impl Fn(&B, &B) -> bool,
) -> Result<Correspondence> {
    let mut ok = true;
    for a in &lhs {
        let b = fwd(a)?;
        ok &= eq_a(&bwd(&b), a);
    }
    for b in &rhs {
        ok &= eq_b(&fwd(&bwd(b))?, b);
    }
    Ok(Correspondence {
        label,
        complex_side: BigUint::from(lhs.len()),
        module_side: BigUint::from(rhs.len()),
        roundtrip: ok,
    })
}

/// All four correspondences for `(M, X, n)`, by enumerating both sides.
pub fn disk_sphere_correspondences(m: &FpModule, x: &Complex, n: i64, limit: u64) -> Result<Vec<Correspondence>> {
    if m.ring() != x.ring() {
        return Err(Error::RingMismatch);
    }
    let over = || Error::Budget(format!("more than {limit} maps to enumerate"));
    let eq_c = |a: &ChainMap, b: &ChainMap| a.equals(b);
    let eq_m = |a: &ModuleMap, b: &ModuleMap| a.equals(b);
    let data = x.degree_data(n);
    let mut out = Vec::new();

    let disk = Complex::disk(n, m);
    let lhs = MorphismSpace::new(&disk, x)?.elements(limit).ok_or_else(over)?;
    let rhs = HomGroup::new(m, &x.module(n)).elements(limit).ok_or_else(over)?;
    out.push(check_bijection(
        "Hom(D^n(M), X) = Hom(M, X_n)",
        lhs,
        rhs,
        |f| Ok(from_disk_forward(f, n)),
        |g| from_disk_backward(g, x, n),
        eq_c,
        eq_m,
    )?);

    let sphere = Complex::sphere(n, m);
    let lhs = MorphismSpace::new(&sphere, x)?.elements(limit).ok_or_else(over)?;
    let rhs = HomGroup::new(m, &data.z).elements(limit).ok_or_else(over)?;
    out.push(check_bijection(
        "Hom(S^n(M), X) = Hom(M, Z_n)",
        lhs,
        rhs,
        |f| from_sphere_forward(f, &data.z_incl, n),
        |g| from_sphere_backward(g, &data.z_incl, x, n),
        eq_c,
        eq_m,
    )?);

    let lhs = MorphismSpace::new(x, &disk)?.elements(limit).ok_or_else(over)?;
    let rhs = HomGroup::new(&x.module(n - 1), m).elements(limit).ok_or_else(over)?;
    out.push(check_bijection(
        "Hom(X, D^n(M)) = Hom(X_{n-1}, M)",
        lhs,
        rhs,
        |f| Ok(to_disk_forward(f, n)),
        |g| to_disk_backward(g, x, n),
        eq_c,
        eq_m,
    )?);

    let lhs = MorphismSpace::new(x, &sphere)?.elements(limit).ok_or_else(over)?;
    let rhs = HomGroup::new(&data.c_mod_b, m).elements(limit).ok_or_else(over)?;
    out.push(check_bijection(
        "Hom(X, S^n(M)) = Hom(X_n/B_n, M)",
        lhs,
        rhs,
        |f| to_sphere_forward(f, &data.c_mod_b_proj, n),
        |g| to_sphere_backward(g, &data.c_mod_b_proj, x, n),
        eq_c,
        eq_m,
    )?);
    Ok(out)
}
