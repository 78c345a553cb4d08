//! Finitely presented modules `R^g / im(Rel)` and the maps between them.

pub mod gorenstein;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ring::linsys::{coords_vec, insert_r_multiples, r_span, vec_coords, Term};
use crate::ring::{Lattice, LinearSystem, Ring, RingElement, RingMatrix};

pub use gorenstein::{is_gorenstein_projective, verify_witness, GpBounds, GpStatus, GpVerdict, GpWitness};

struct ModuleData {
    ring: Ring,
    gens: usize,
    rels: RingMatrix,
    span: OnceLock<Lattice>,
}

/// Cokernel of a relation matrix whose columns are the relations.
#[derive(Clone)]
pub struct FpModule(Arc<ModuleData>);

impl PartialEq for FpModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.gens == other.0.gens && self.0.rels == other.0.rels && self.0.ring == other.0.ring)
    }
}
impl Eq for FpModule {}

impl fmt::Debug for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpModule(gens={}, rels={})", self.gens(), self.0.rels.cols())
    }
}

impl FpModule {
    pub fn new(ring: &Ring, gens: usize, rels: RingMatrix) -> Result<Self> {
        if rels.rows() != gens {
            return Err(Error::Dimension(format!(
                "relation matrix has {} rows for {gens} generators",
                rels.rows()
            )));
        }
        Ok(Self::from_parts(ring, rels))
    }

    fn from_parts(ring: &Ring, rels: RingMatrix) -> Self {
        FpModule(Arc::new(ModuleData {
            ring: ring.clone(),
            gens: rels.rows(),
            rels,
            span: OnceLock::new(),
        }))
    }

    pub fn free(ring: &Ring, rank: usize) -> Self {
        Self::from_parts(ring, RingMatrix::zeros(rank, 0))
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::free(ring, 0)
    }

    /// `R/(a)`.
    pub fn cyclic(ring: &Ring, a: RingElement) -> Self {
        Self::from_parts(ring, RingMatrix::from_rows(ring, vec![vec![a]]))
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn gens(&self) -> usize {
        self.0.gens
    }

    pub fn relations(&self) -> &RingMatrix {
        &self.0.rels
    }

    /// Additive span of the relations inside `R^g`, in ring coordinates.
    pub fn relation_lattice(&self) -> &Lattice {
        self.0
            .span
            .get_or_init(|| r_span(self.ring(), self.gens(), &self.0.rels.columns()))
    }

    /// True when the presentation has no nonzero relation.
    pub fn is_free_presentation(&self) -> bool {
        self.0.rels.is_zero()
    }

    pub fn reduce(&self, v: &[RingElement]) -> Vec<RingElement> {
        let mut c = vec_coords(self.ring(), v);
        self.relation_lattice().reduce(&mut c);
        coords_vec(self.ring(), &c)
    }

    pub fn is_zero_element(&self, v: &[RingElement]) -> bool {
        self.relation_lattice().contains(&vec_coords(self.ring(), v))
    }

    pub fn cardinality(&self) -> BigUint {
        let total = BigUint::from(self.ring().modulus()).pow((self.gens() * self.ring().dim()) as u32);
        total / self.relation_lattice().order()
    }

    pub fn is_zero_module(&self) -> bool {
        self.cardinality().is_one()
    }

    /// Canonical representatives of all elements, if there are at most `limit`.
    pub fn elements(&self, limit: u64) -> Option<Vec<Vec<RingElement>>> {
        let ring = self.ring();
        let n = self.gens() * ring.dim();
        let c = ring.modulus();
        let lat = self.relation_lattice();
        let mut ranges = vec![c; n];
        for (j, row) in lat.basis() {
            ranges[j] = row[j];
        }
        let mut total: u64 = 1;
        for &r in &ranges {
            total = total.checked_mul(r).filter(|&t| t <= limit)?;
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut cur = vec![0u64; n];
        loop {
            out.push(coords_vec(ring, &cur));
            let mut i = n;
            loop {
                if i == 0 {
                    return Some(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < ranges[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    pub fn direct_sum(&self, other: &FpModule) -> FpModule {
        Self::from_parts(self.ring(), self.relations().block_diag(other.relations()))
    }

    pub fn direct_sum_all(ring: &Ring, parts: &[FpModule]) -> FpModule {
        parts
            .iter()
            .fold(FpModule::zero(ring), |acc, m| acc.direct_sum(m))
    }

    /// Eliminates generators killed by unit relations and drops redundant
    /// relations. Returns the new module with inverse isomorphisms.
    pub fn simplify(&self) -> Simplified {
        let ring = self.ring();
        let g = self.gens();
        let mut rels = self.relations().clone();
        let mut to = RingMatrix::identity(ring, g);
        let mut from = RingMatrix::identity(ring, g);
        loop {
            let found = (0..rels.cols()).find_map(|c| {
                (0..rels.rows())
                    .find(|&i| ring.is_unit(rels.get(i, c)))
                    .map(|i| (i, c))
            });
            let Some((i, c)) = found else { break };
            let n = rels.rows();
            let u_inv = ring.inverse(rels.get(i, c)).expect("unit");
            let keep: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            let other_cols: Vec<usize> = (0..rels.cols()).filter(|&k| k != c).collect();
            let new_rels = RingMatrix::from_fn(n - 1, other_cols.len(), |a, b| {
                let (j, k) = (keep[a], other_cols[b]);
                let t = ring.mul(ring.mul(rels.get(i, k), u_inv), rels.get(j, c));
                ring.sub(rels.get(j, k), t)
            });
            let step = RingMatrix::from_fn(n - 1, n, |a, col| {
                if col == i {
                    ring.neg(ring.mul(u_inv, rels.get(keep[a], c)))
                } else if col == keep[a] {
                    ring.one()
                } else {
                    ring.zero()
                }
            });
            let incl = RingMatrix::from_fn(n, n - 1, |row, b| {
                if row == keep[b] {
                    ring.one()
                } else {
                    ring.zero()
                }
            });
            to = ring.mat_mul(&step, &to);
            from = ring.mat_mul(&from, &incl);
            rels = new_rels;
        }
        let nonzero: Vec<Vec<RingElement>> = rels.columns().into_iter().filter(|c| c.iter().any(|e| e.0 != 0)).collect();
        let kept = crate::ring::linsys::prune_generators(ring, rels.rows(), nonzero);
        let module = FpModule::from_parts(ring, RingMatrix::from_columns(rels.rows(), &kept));
        Simplified {
            to: ModuleMap::raw(self.clone(), module.clone(), to),
            from: ModuleMap::raw(module.clone(), self.clone(), from),
            module,
        }
    }
}

/// A simplified presentation together with the mutually inverse isomorphisms.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub module: FpModule,
    pub to: ModuleMap,
    pub from: ModuleMap,
}

/// R-linear map given on generators; column j is the image of generator j.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: FpModule,
    target: FpModule,
    matrix: RingMatrix,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({:?} -> {:?}, {:?})", self.source, self.target, self.matrix)
    }
}

impl ModuleMap {
    pub fn new(source: &FpModule, target: &FpModule, matrix: RingMatrix) -> Result<Self> {
        if matrix.rows() != target.gens() || matrix.cols() != source.gens() {
            return Err(Error::Dimension(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.gens(),
                source.gens()
            )));
        }
        let ring = source.ring();
        let images = ring.mat_mul(&matrix, source.relations());
        for (k, col) in images.columns().iter().enumerate() {
            if !target.is_zero_element(col) {
                return Err(Error::IllDefined(format!("relation {k} of the source is not sent to zero")));
            }
        }
        Ok(Self::raw(source.clone(), target.clone(), matrix))
    }

    pub(crate) fn raw(source: FpModule, target: FpModule, matrix: RingMatrix) -> Self {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (target.gens(), source.gens()));
        ModuleMap { source, target, matrix }
    }

    pub fn identity(m: &FpModule) -> Self {
        Self::raw(m.clone(), m.clone(), RingMatrix::identity(m.ring(), m.gens()))
    }

    pub fn zero(source: &FpModule, target: &FpModule) -> Self {
        Self::raw(source.clone(), target.clone(), RingMatrix::zeros(target.gens(), source.gens()))
    }

    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    pub fn matrix(&self) -> &RingMatrix {
        &self.matrix
    }

    pub fn ring(&self) -> &Ring {
        self.source.ring()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        assert_eq!(first.target.gens(), self.source.gens(), "composition shape mismatch");
        let m = self.ring().mat_mul(&self.matrix, &first.matrix);
        Self::raw(first.source.clone(), self.target.clone(), m)
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        Self::raw(self.source.clone(), self.target.clone(), self.ring().mat_add(&self.matrix, &other.matrix))
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        Self::raw(self.source.clone(), self.target.clone(), self.ring().mat_sub(&self.matrix, &other.matrix))
    }

    pub fn neg(&self) -> ModuleMap {
        Self::raw(self.source.clone(), self.target.clone(), self.ring().mat_neg(&self.matrix))
    }

    pub fn scale(&self, s: RingElement) -> ModuleMap {
        Self::raw(self.source.clone(), self.target.clone(), self.ring().mat_scale(s, &self.matrix))
    }

    pub fn apply(&self, v: &[RingElement]) -> Vec<RingElement> {
        self.target.reduce(&self.ring().mat_vec(&self.matrix, v))
    }

    /// Matrix with every column in canonical form.
    pub fn canonical_matrix(&self) -> RingMatrix {
        let cols: Vec<Vec<RingElement>> = self.matrix.columns().iter().map(|c| self.target.reduce(c)).collect();
        RingMatrix::from_columns(self.target.gens(), &cols)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.columns().iter().all(|c| self.target.is_zero_element(c))
    }

    pub fn equals(&self, other: &ModuleMap) -> bool {
        self.sub(other).is_zero()
    }

    /// Image inside the target's ambient free module, including its relations.
    pub fn image_lattice(&self) -> Lattice {
        let mut l = self.target.relation_lattice().clone();
        for col in self.matrix.columns() {
            insert_r_multiples(self.ring(), &mut l, &col);
        }
        l
    }

    pub fn image_cardinality(&self) -> BigUint {
        self.image_lattice().order() / self.target.relation_lattice().order()
    }

    pub fn is_injective(&self) -> bool {
        self.image_cardinality() == self.source.cardinality()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_cardinality() == self.target.cardinality()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Lex-least `X` with `M·X ≡ B` modulo the column span of `rel`.
pub fn solve_modulo(ring: &Ring, m: &RingMatrix, rel: &RingMatrix, b: &RingMatrix) -> Option<RingMatrix> {
    let mut sys = LinearSystem::new(ring);
    let x = sys.add_block(m.cols(), b.cols());
    let w = sys.add_block(rel.cols(), b.cols());
    sys.add_equation(b.rows(), b.cols(), &[Term::new(x).left(m), Term::new(w).left(rel)], Some(b));
    sys.solve().map(|mut v| v.swap_remove(0))
}

/// Columns generating the submodule of `R^g` of vectors `u` with `A·u ∈ span(rel)`,
/// pruned modulo `base` (a sublattice already accounted for).
fn preimage_generators(ring: &Ring, a: &RingMatrix, rel: &RingMatrix, base: Option<&Lattice>) -> Vec<Vec<RingElement>> {
    let mut sys = LinearSystem::new(ring);
    let u = sys.add_block(a.cols(), 1);
    let w = sys.add_block(rel.cols(), 1);
    let neg_rel = ring.mat_neg(rel);
    sys.add_equation(a.rows(), 1, &[Term::new(u).left(a), Term::new(w).left(&neg_rel)], None);
    let lat = sys.kernel_projection(&[u]);
    let mut seen = match base {
        Some(b) => b.clone(),
        None => Lattice::new(ring.modulus(), a.cols() * ring.dim()),
    };
    let mut kept = Vec::new();
    for (_, row) in lat.basis() {
        if !seen.contains(row) {
            let v = coords_vec(ring, row);
            insert_r_multiples(ring, &mut seen, &v);
            kept.push(v);
        }
    }
    kept
}

/// Submodule of `m` generated by the columns of `gens`, with its inclusion.
pub fn submodule(m: &FpModule, gens: &RingMatrix) -> (FpModule, ModuleMap) {
    let ring = m.ring();
    let rels = preimage_generators(ring, gens, m.relations(), None);
    let n0 = FpModule::from_parts(ring, RingMatrix::from_columns(gens.cols(), &rels));
    let s = n0.simplify();
    let incl = ModuleMap::raw(n0, m.clone(), gens.clone()).compose(&s.from);
    (s.module, incl)
}

pub fn kernel(f: &ModuleMap) -> (FpModule, ModuleMap) {
    let ring = f.ring();
    let src = f.source();
    let gens = preimage_generators(ring, f.matrix(), f.target().relations(), Some(src.relation_lattice()));
    submodule(src, &RingMatrix::from_columns(src.gens(), &gens))
}

/// `(Im f, A ↠ Im f, Im f ↪ B)`.
pub fn image(f: &ModuleMap) -> (FpModule, ModuleMap, ModuleMap) {
    let ring = f.ring();
    let tgt = f.target();
    let rels = preimage_generators(ring, f.matrix(), tgt.relations(), None);
    let n0 = FpModule::from_parts(ring, RingMatrix::from_columns(f.source().gens(), &rels));
    let s = n0.simplify();
    let incl = ModuleMap::raw(n0, tgt.clone(), f.matrix().clone()).compose(&s.from);
    let surj = ModuleMap::raw(f.source().clone(), s.module.clone(), s.to.matrix().clone());
    (s.module, surj, incl)
}

pub fn cokernel(f: &ModuleMap) -> (FpModule, ModuleMap) {
    let ring = f.ring();
    let tgt = f.target();
    let rels = tgt.relations().hstack(f.matrix());
    let q0 = FpModule::from_parts(ring, rels);
    let s = q0.simplify();
    let proj = ModuleMap::raw(tgt.clone(), s.module.clone(), s.to.matrix().clone());
    (s.module, proj)
}

/// `h` with `mono ∘ h = f`, when the image of `f` lies in the image of `mono`.
pub fn lift_through(f: &ModuleMap, mono: &ModuleMap) -> Option<ModuleMap> {
    let x = solve_modulo(f.ring(), mono.matrix(), f.target().relations(), f.matrix())?;
    ModuleMap::new(f.source(), mono.source(), x).ok()
}

/// The map `A' → B'` induced by `f: A → B` along surjections `pa: A ↠ A'`, `pb: B → B'`.
pub fn descend(f: &ModuleMap, pa: &ModuleMap, pb: &ModuleMap) -> Option<ModuleMap> {
    let ring = f.ring();
    let a2 = pa.target();
    let id = RingMatrix::identity(ring, a2.gens());
    let pre = solve_modulo(ring, pa.matrix(), a2.relations(), &id)?;
    let m = ring.mat_mul(&ring.mat_mul(pb.matrix(), f.matrix()), &pre);
    ModuleMap::new(a2, pb.target(), m).ok()
}

/// Some well-defined `s` with `f ∘ s = id`, if `f` splits as a surjection.
pub fn section(f: &ModuleMap) -> Option<ModuleMap> {
    let ring = f.ring();
    let (a, b) = (f.source(), f.target());
    let mut sys = LinearSystem::new(ring);
    let s = sys.add_block(a.gens(), b.gens());
    let w1 = sys.add_block(a.relations().cols(), b.relations().cols());
    let w2 = sys.add_block(b.relations().cols(), b.gens());
    let neg_a = ring.mat_neg(a.relations());
    let neg_b = ring.mat_neg(b.relations());
    sys.add_equation(
        a.gens(),
        b.relations().cols(),
        &[Term::new(s).right(b.relations()), Term::new(w1).left(&neg_a)],
        None,
    );
    let id = RingMatrix::identity(ring, b.gens());
    sys.add_equation(
        b.gens(),
        b.gens(),
        &[Term::new(s).left(f.matrix()), Term::new(w2).left(&neg_b)],
        Some(&id),
    );
    let v = sys.solve()?;
    Some(ModuleMap::raw(b.clone(), a.clone(), v[0].clone()))
}

pub fn inverse(f: &ModuleMap) -> Option<ModuleMap> {
    if !f.is_isomorphism() {
        return None;
    }
    section(f)
}

/// Projectivity test: the canonical surjection `R^g ↠ M` splits.
#[derive(Clone, Debug)]
pub struct ProjectivityReport {
    pub projective: bool,
    pub section: Option<ModuleMap>,
}

pub fn is_projective(m: &FpModule) -> ProjectivityReport {
    let ring = m.ring();
    let g = m.gens();
    let rel = m.relations();
    let mut sys = LinearSystem::new(ring);
    let s = sys.add_block(g, g);
    let y = sys.add_block(rel.cols(), g);
    sys.add_equation(g, rel.cols(), &[Term::new(s).right(rel)], None);
    let neg_rel = ring.mat_neg(rel);
    let id = RingMatrix::identity(ring, g);
    sys.add_equation(g, g, &[Term::new(s), Term::new(y).left(&neg_rel)], Some(&id));
    match sys.solve() {
        Some(v) => ProjectivityReport {
            projective: true,
            section: Some(ModuleMap::raw(m.clone(), FpModule::free(ring, g), v[0].clone())),
        },
        None => ProjectivityReport {
            projective: false,
            section: None,
        },
    }
}

/// `Hom_R(M, N)` as the quotient of the lattice of well-defined matrices by
/// the matrices whose columns vanish in `N`.
#[derive(Clone, Debug)]
pub struct HomGroup {
    source: FpModule,
    target: FpModule,
    valid: Lattice,
    zero: Lattice,
}

impl HomGroup {
    pub fn new(m: &FpModule, n: &FpModule) -> Self {
        let ring = m.ring();
        let rcols = m.relations().cols();
        let mut sys = LinearSystem::new(ring);
        let x = sys.add_block(n.gens(), m.gens());
        let w = sys.add_block(n.relations().cols(), rcols);
        let neg = ring.mat_neg(n.relations());
        sys.add_equation(
            n.gens(),
            rcols,
            &[Term::new(x).right(m.relations()), Term::new(w).left(&neg)],
            None,
        );
        let valid = sys.kernel_projection(&[x]);
        let zero = matrix_column_lattice(ring, n, m.gens());
        HomGroup {
            source: m.clone(),
            target: n.clone(),
            valid,
            zero,
        }
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

    pub fn map_from_coords(&self, coords: &[u64]) -> ModuleMap {
        let ring = self.source.ring();
        let vals = coords_vec(ring, coords);
        let m = RingMatrix::from_vec(self.target.gens(), self.source.gens(), vals).expect("shape");
        ModuleMap::raw(self.source.clone(), self.target.clone(), m)
    }

    /// One representative per element, in BFS order from zero; `None` past `limit`.
    pub fn elements(&self, limit: u64) -> Option<Vec<ModuleMap>> {
        let reps = quotient_elements(&self.valid, &self.zero, limit)?;
        Some(reps.iter().map(|c| self.map_from_coords(c)).collect())
    }
}

/// Lattice (row-major coordinates of `n.gens() × cols` matrices) of matrices
/// whose columns all vanish in `n`.
pub(crate) fn matrix_column_lattice(ring: &Ring, n: &FpModule, cols: usize) -> Lattice {
    let k = ring.dim();
    let g = n.gens();
    let mut l = Lattice::new(ring.modulus(), g * cols * k);
    for b in 0..cols {
        for rel in n.relations().columns() {
            for t in 0..k {
                let bt = ring.basis_element(t);
                let mut v = vec![0u64; g * cols * k];
                for a in 0..g {
                    let e = ring.mul(rel[a], bt);
                    ring.write_coords(e, &mut v[(a * cols + b) * k..(a * cols + b + 1) * k]);
                }
                l.insert(v);
            }
        }
    }
    l
}

/// Canonical representatives of `valid / zero` (with `zero ⊆ valid`).
pub fn quotient_elements(valid: &Lattice, zero: &Lattice, limit: u64) -> Option<Vec<Vec<u64>>> {
    let c = valid.modulus();
    let gens: Vec<Vec<u64>> = valid.basis().map(|(_, r)| r.to_vec()).collect();
    let start = vec![0u64; valid.ncols()];
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let mut y: Vec<u64> = x.iter().zip(g).map(|(a, b)| (a + b) % c).collect();
            zero.reduce(&mut y);
            if seen.insert(y.clone()) {
                if seen.len() as u64 > limit {
                    return None;
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Some(order)
}

/// Exhaustive search for an isomorphism, by cardinality then enumeration of Hom.
pub fn find_isomorphism(m: &FpModule, n: &FpModule, limit: u64) -> Option<ModuleMap> {
    if m.cardinality() != n.cardinality() {
        return None;
    }
    let hom = HomGroup::new(m, n);
    hom.elements(limit)?.into_iter().find(|f| f.is_injective())
}

/// `Hom_R(M, R)` as the lattice of row vectors `y` with `y·Rel = 0`.
pub fn dual_lattice(m: &FpModule) -> Lattice {
    let ring = m.ring();
    let mut sys = LinearSystem::new(ring);
    let y = sys.add_block(1, m.gens());
    sys.add_equation(1, m.relations().cols(), &[Term::new(y).right(m.relations())], None);
    sys.kernel_projection(&[y])
}
