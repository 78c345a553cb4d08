//! Chain complexes of finitely presented modules, chain maps between them and
//! the per-degree invariants (cycles, boundaries, homology and the two
//! quotients of a term).
//!
//! A complex is either bounded (finitely many nonzero terms, stored over a
//! window of degrees) or 1-periodic (one module `M` with `d: M → M`, `d² = 0`,
//! repeated in every degree). Differentials lower degree: `d_n: X_n → X_{n-1}`.

pub mod hom;

use crate::error::{Error, Result};
use crate::module::{cokernel, descend, image, kernel, lift_through, submodule, FpModule, ModuleMap};
use crate::ring::{Ring, RingMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Bounded { lo: i64 },
    Periodic,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    ring: Ring,
    shape: Shape,
    terms: Vec<FpModule>,
    // bounded: diffs[i] = d_{lo+i+1}; periodic: [d]
    diffs: Vec<ModuleMap>,
}

impl std::fmt::Debug for Complex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.shape {
            Shape::Periodic => write!(f, "Periodic({:?}, d={:?})", self.terms[0], self.diffs[0].matrix()),
            Shape::Bounded { lo } => {
                write!(f, "Bounded(lo={lo}")?;
                for (i, t) in self.terms.iter().enumerate() {
                    write!(f, ", [{}] {:?}", lo + i as i64, t)?;
                    if i + 1 < self.terms.len() {
                        write!(f, " <-{:?}-", self.diffs[i].matrix())?;
                    }
                }
                write!(f, ")")
            }
        }
    }
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl Complex {
    /// `terms[i]` sits in degree `lo + i`; `diffs[i]` is `d_{lo+i+1}` as a
    /// matrix from `terms[i+1]` to `terms[i]`.
    pub fn bounded(ring: &Ring, lo: i64, terms: Vec<FpModule>, diffs: Vec<RingMatrix>) -> Result<Complex> {
        if diffs.len() != terms.len().saturating_sub(1) {
            return Err(Error::Dimension(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            )));
        }
        if let Some(t) = terms.iter().find(|t| t.ring() != ring) {
            let _ = t;
            return Err(Error::RingMismatch);
        }
        let mut maps = Vec::with_capacity(diffs.len());
        for (i, m) in diffs.into_iter().enumerate() {
            maps.push(ModuleMap::new(&terms[i + 1], &terms[i], m)?);
        }
        for i in 1..maps.len() {
            if !maps[i - 1].compose(&maps[i]).is_zero() {
                return Err(Error::NotAComplex { degree: lo + i as i64 + 1 });
            }
        }
        Ok(Self::bounded_unchecked(ring, lo, terms, maps))
    }

    fn bounded_unchecked(ring: &Ring, mut lo: i64, mut terms: Vec<FpModule>, mut diffs: Vec<ModuleMap>) -> Complex {
        while terms.last().is_some_and(|t| t.gens() == 0) {
            terms.pop();
            diffs.pop();
        }
        while terms.first().is_some_and(|t| t.gens() == 0) {
            terms.remove(0);
            if !diffs.is_empty() {
                diffs.remove(0);
            }
            lo += 1;
        }
        if terms.is_empty() {
            lo = 0;
        }
        Complex {
            ring: ring.clone(),
            shape: Shape::Bounded { lo },
            terms,
            diffs,
        }
    }

    pub fn periodic(module: &FpModule, d: RingMatrix) -> Result<Complex> {
        let map = ModuleMap::new(module, module, d)?;
        if !map.compose(&map).is_zero() {
            return Err(Error::NotAComplex { degree: 0 });
        }
        Ok(Complex {
            ring: module.ring().clone(),
            shape: Shape::Periodic,
            terms: vec![module.clone()],
            diffs: vec![map],
        })
    }

    pub fn zero(ring: &Ring) -> Complex {
        Self::bounded_unchecked(ring, 0, Vec::new(), Vec::new())
    }

    /// `D^n(M)`: `M` in degrees `n` and `n-1` joined by the identity.
    pub fn disk(n: i64, m: &FpModule) -> Complex {
        let id = ModuleMap::identity(m);
        Self::bounded_unchecked(m.ring(), n - 1, vec![m.clone(), m.clone()], vec![id])
    }

    /// `S^n(M)`: `M` in degree `n`.
    pub fn sphere(n: i64, m: &FpModule) -> Complex {
        Self::bounded_unchecked(m.ring(), n, vec![m.clone()], Vec::new())
    }

    /// `M ⊕ M` with `d(x, y) = (y, 0)`: the periodic analogue of a disk sum.
    pub fn periodic_disk(m: &FpModule) -> Complex {
        let ring = m.ring();
        let g = m.gens();
        let d = RingMatrix::identity(ring, g).placed(2 * g, 2 * g, 0, g);
        Self::periodic(&m.direct_sum(m), d).expect("periodic disk is a complex")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_periodic(&self) -> bool {
        self.shape == Shape::Periodic
    }

    /// Lowest and highest nonzero degree of a bounded complex.
    pub fn window(&self) -> Option<(i64, i64)> {
        match self.shape {
            Shape::Bounded { lo } if !self.terms.is_empty() => Some((lo, lo + self.terms.len() as i64 - 1)),
            _ => None,
        }
    }

    /// Degrees at which per-degree checks are needed: the window, or a single
    /// representative degree for periodic complexes.
    pub fn degrees(&self) -> Vec<i64> {
        match self.shape {
            Shape::Periodic => vec![0],
            Shape::Bounded { .. } => match self.window() {
                Some((a, b)) => (a..=b).collect(),
                None => Vec::new(),
            },
        }
    }

    pub fn module(&self, n: i64) -> FpModule {
        match self.shape {
            Shape::Periodic => self.terms[0].clone(),
            Shape::Bounded { lo } => {
                let i = n - lo;
                if i >= 0 && (i as usize) < self.terms.len() {
                    self.terms[i as usize].clone()
                } else {
                    FpModule::zero(&self.ring)
                }
            }
        }
    }

    /// `d_n: X_n → X_{n-1}`.
    pub fn diff(&self, n: i64) -> ModuleMap {
        match self.shape {
            Shape::Periodic => self.diffs[0].clone(),
            Shape::Bounded { lo } => {
                let i = n - 1 - lo;
                if i >= 0 && (i as usize) < self.diffs.len() {
                    self.diffs[i as usize].clone()
                } else {
                    ModuleMap::zero(&self.module(n), &self.module(n - 1))
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_zero_module())
    }

    /// `(Σ^k X)_n = X_{n-k}` with differential `(-1)^k d`.
    pub fn suspension(&self, k: i64) -> Complex {
        let s = self.ring.from_int(sign(k));
        let diffs: Vec<ModuleMap> = self.diffs.iter().map(|d| d.scale(s)).collect();
        match self.shape {
            Shape::Periodic => Complex {
                diffs,
                ..self.clone()
            },
            Shape::Bounded { lo } => Self::bounded_unchecked(&self.ring, lo + k, self.terms.clone(), diffs),
        }
    }

    pub fn direct_sum(&self, other: &Complex) -> Result<Complex> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        match (self.shape, other.shape) {
            (Shape::Periodic, Shape::Periodic) => {
                let m = self.terms[0].direct_sum(&other.terms[0]);
                let d = self.diffs[0].matrix().block_diag(other.diffs[0].matrix());
                Complex::periodic(&m, d)
            }
            (Shape::Bounded { .. }, Shape::Bounded { .. }) => {
                let (lo, hi) = match (self.window(), other.window()) {
                    (None, None) => return Ok(self.clone()),
                    (Some(w), None) | (None, Some(w)) => w,
                    (Some(a), Some(b)) => (a.0.min(b.0), a.1.max(b.1)),
                };
                Ok(Self::from_degrees(&self.ring, lo, hi, |n| {
                    (self.module(n).direct_sum(&other.module(n)), {
                        let a = self.diff(n);
                        let b = other.diff(n);
                        a.matrix().block_diag(b.matrix())
                    })
                }))
            }
            _ => Err(Error::VariantMismatch),
        }
    }

    /// Bounded complex on `[lo, hi]` from per-degree `(X_n, d_n)`; `d_lo` is ignored.
    /// The data must already form a complex.
    pub(crate) fn from_degrees(
        ring: &Ring,
        lo: i64,
        hi: i64,
        mut f: impl FnMut(i64) -> (FpModule, RingMatrix),
    ) -> Complex {
        let data: Vec<(FpModule, RingMatrix)> = (lo..=hi).map(&mut f).collect();
        let terms: Vec<FpModule> = data.iter().map(|x| x.0.clone()).collect();
        let diffs = (1..data.len())
            .map(|i| ModuleMap::raw(terms[i].clone(), terms[i - 1].clone(), data[i].1.clone()))
            .collect();
        Self::bounded_unchecked(ring, lo, terms, diffs)
    }

    /// Same shape as `self`: bounded on `self`'s window or periodic.
    pub(crate) fn like(&self, mut f: impl FnMut(i64) -> (FpModule, RingMatrix)) -> Complex {
        match self.shape {
            Shape::Periodic => {
                let (m, d) = f(0);
                let map = ModuleMap::raw(m.clone(), m.clone(), d);
                Complex {
                    ring: self.ring.clone(),
                    shape: Shape::Periodic,
                    terms: vec![m],
                    diffs: vec![map],
                }
            }
            Shape::Bounded { .. } => match self.window() {
                Some((lo, hi)) => Self::from_degrees(&self.ring, lo, hi, f),
                None => Complex::zero(&self.ring),
            },
        }
    }

    /// Exactness at `n` by counting: `|X_n| = |im d_n|·|im d_{n+1}|`.
    pub fn is_exact_at(&self, n: i64) -> bool {
        self.module(n).cardinality() == self.diff(n).image_cardinality() * self.diff(n + 1).image_cardinality()
    }

    pub fn is_exact(&self) -> bool {
        self.degrees().into_iter().all(|n| self.is_exact_at(n))
    }

    pub fn degree_data(&self, n: i64) -> DegreeData {
        DegreeData::new(self, n)
    }

    pub fn homology(&self, n: i64) -> FpModule {
        self.degree_data(n).h
    }

    /// Subcomplex generated by the columns of `gens(n)` (vectors in `X_n`)
    /// together with their boundaries, with its inclusion.
    pub fn subcomplex(&self, mut gens: impl FnMut(i64) -> RingMatrix) -> (Complex, ChainMap) {
        let ring = &self.ring;
        let span = |n: i64, gens: &mut dyn FnMut(i64) -> RingMatrix| {
            let own = gens(n);
            let up = ring.mat_mul(self.diff(n + 1).matrix(), &gens(n + 1));
            submodule(&self.module(n), &own.hstack(&up))
        };
        let (lo, hi) = match self.shape {
            Shape::Periodic => (0, 0),
            Shape::Bounded { .. } => match self.window() {
                Some(w) => w,
                None => return (self.clone(), ChainMap::identity(self)),
            },
        };
        let parts: Vec<(FpModule, ModuleMap)> = (lo - 1..=hi).map(|n| span(n, &mut gens)).collect();
        let at = |n: i64| &parts[(n - lo + 1) as usize];
        let sub = self.like(|n| {
            let (a, ia) = at(n);
            let (_, ib) = if self.is_periodic() { at(n) } else { at(n - 1) };
            let d = lift_through(&self.diff(n).compose(ia), ib).expect("subcomplex is closed under d");
            (a.clone(), d.matrix().clone())
        });
        let incl = ChainMap::from_fn(&sub, self, |n| at(n).1.matrix().clone()).expect("inclusion is a chain map");
        (sub, incl)
    }

    /// Quotient `X / A` along a degreewise injective chain map, with its projection.
    pub fn quotient(incl: &ChainMap) -> Result<(Complex, ChainMap)> {
        let x = incl.target();
        if x.is_periodic() != incl.source().is_periodic() {
            return Err(Error::VariantMismatch);
        }
        let (lo, hi) = match x.shape {
            Shape::Periodic => (0, 0),
            Shape::Bounded { .. } => match x.window() {
                Some(w) => w,
                None => return Ok((x.clone(), ChainMap::identity(x))),
            },
        };
        let parts: Vec<(FpModule, ModuleMap)> = (lo - 1..=hi).map(|n| cokernel(&incl.component(n))).collect();
        let at = |n: i64| &parts[(n - lo + 1) as usize];
        let q = x.like(|n| {
            let (c, pa) = at(n);
            let (_, pb) = if x.is_periodic() { at(n) } else { at(n - 1) };
            let d = descend(&x.diff(n), pa, pb).expect("differential descends to the quotient");
            (c.clone(), d.matrix().clone())
        });
        let proj = ChainMap::from_fn(x, &q, |n| at(n).1.matrix().clone())?;
        Ok((q, proj))
    }
}

/// Cycles, boundaries, homology and the quotients `X_n/Z_n`, `X_n/B_n` of
/// one degree, with their structure maps.
#[derive(Clone, Debug)]
pub struct DegreeData {
    pub degree: i64,
    pub term: FpModule,
    pub z: FpModule,
    pub z_incl: ModuleMap,
    pub b: FpModule,
    pub b_incl: ModuleMap,
    pub b_to_z: ModuleMap,
    pub h: FpModule,
    pub h_proj: ModuleMap,
    pub c_mod_z: FpModule,
    pub c_mod_z_proj: ModuleMap,
    pub c_mod_b: FpModule,
    pub c_mod_b_proj: ModuleMap,
}

impl DegreeData {
    fn new(x: &Complex, n: i64) -> DegreeData {
        let term = x.module(n);
        let (z, z_incl) = kernel(&x.diff(n));
        let (b, _, b_incl) = image(&x.diff(n + 1));
        let b_to_z = lift_through(&b_incl, &z_incl).expect("boundaries are cycles");
        let (h, h_proj) = cokernel(&b_to_z);
        let (c_mod_z, c_mod_z_proj) = cokernel(&z_incl);
        let (c_mod_b, c_mod_b_proj) = cokernel(&b_incl);
        DegreeData {
            degree: n,
            term,
            z,
            z_incl,
            b,
            b_incl,
            b_to_z,
            h,
            h_proj,
            c_mod_z,
            c_mod_z_proj,
            c_mod_b,
            c_mod_b_proj,
        }
    }
}

/// Where a chain map has (possibly) nonzero components.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    Window { lo: i64, hi: i64 },
    Periodic,
    Empty,
}

impl Support {
    /// Bounded source: its window. Periodic source into a bounded target:
    /// the target's window. Both periodic: one repeated component.
    pub fn of(source: &Complex, target: &Complex) -> Support {
        match (source.shape, target.shape) {
            (Shape::Periodic, Shape::Periodic) => Support::Periodic,
            (Shape::Bounded { .. }, _) => match source.window() {
                Some((lo, hi)) => Support::Window { lo, hi },
                None => Support::Empty,
            },
            (Shape::Periodic, Shape::Bounded { .. }) => match target.window() {
                Some((lo, hi)) => Support::Window { lo, hi },
                None => Support::Empty,
            },
        }
    }

    pub fn degrees(self) -> Vec<i64> {
        match self {
            Support::Window { lo, hi } => (lo..=hi).collect(),
            Support::Periodic => vec![0],
            Support::Empty => Vec::new(),
        }
    }

    /// Degrees where the chain condition `d f_n = f_{n-1} d` can fail.
    pub fn check_degrees(self) -> Vec<i64> {
        match self {
            Support::Window { lo, hi } => (lo..=hi + 1).collect(),
            Support::Periodic => vec![0],
            Support::Empty => Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    support: Support,
    comps: Vec<ModuleMap>,
}

impl ChainMap {
    /// Components listed over `Support::of(source, target)`.
    pub fn new(source: &Complex, target: &Complex, comps: Vec<RingMatrix>) -> Result<ChainMap> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch);
        }
        let support = Support::of(source, target);
        let degs = support.degrees();
        if degs.len() != comps.len() {
            return Err(Error::Dimension(format!(
                "chain map needs {} components, got {}",
                degs.len(),
                comps.len()
            )));
        }
        let mut maps = Vec::with_capacity(comps.len());
        for (n, m) in degs.into_iter().zip(comps) {
            maps.push(ModuleMap::new(&source.module(n), &target.module(n), m)?);
        }
        let f = ChainMap {
            source: source.clone(),
            target: target.clone(),
            support,
            comps: maps,
        };
        for n in support.check_degrees() {
            let lhs = target.diff(n).compose(&f.component(n));
            let rhs = f.component(n - 1).compose(&source.diff(n));
            if !lhs.equals(&rhs) {
                return Err(Error::NotChainMap { degree: n });
            }
        }
        Ok(f)
    }

    pub fn from_fn(source: &Complex, target: &Complex, f: impl FnMut(i64) -> RingMatrix) -> Result<ChainMap> {
        let comps = Support::of(source, target).degrees().into_iter().map(f).collect();
        Self::new(source, target, comps)
    }

    pub(crate) fn raw(source: &Complex, target: &Complex, comps: Vec<ModuleMap>) -> ChainMap {
        let support = Support::of(source, target);
        debug_assert_eq!(support.degrees().len(), comps.len());
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            support,
            comps,
        }
    }

    fn raw_from_fn(source: &Complex, target: &Complex, mut f: impl FnMut(i64) -> ModuleMap) -> ChainMap {
        let comps = Support::of(source, target).degrees().into_iter().map(&mut f).collect();
        Self::raw(source, target, comps)
    }

    pub fn identity(x: &Complex) -> ChainMap {
        Self::raw_from_fn(x, x, |n| ModuleMap::identity(&x.module(n)))
    }

    pub fn zero(source: &Complex, target: &Complex) -> ChainMap {
        Self::raw_from_fn(source, target, |n| ModuleMap::zero(&source.module(n), &target.module(n)))
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn component(&self, n: i64) -> ModuleMap {
        match self.support {
            Support::Periodic => self.comps[0].clone(),
            Support::Window { lo, hi } if (lo..=hi).contains(&n) => self.comps[(n - lo) as usize].clone(),
            _ => ModuleMap::zero(&self.source.module(n), &self.target.module(n)),
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> ChainMap {
        Self::raw_from_fn(&first.source, &self.target, |n| self.component(n).compose(&first.component(n)))
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        Self::raw_from_fn(&self.source, &self.target, |n| self.component(n).add(&other.component(n)))
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        Self::raw_from_fn(&self.source, &self.target, |n| self.component(n).sub(&other.component(n)))
    }

    pub fn neg(&self) -> ChainMap {
        Self::raw_from_fn(&self.source, &self.target, |n| self.component(n).neg())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn equals(&self, other: &ChainMap) -> bool {
        self.sub(other).is_zero()
    }

    /// The same components viewed between suspensions: `Σ^k f`.
    pub fn suspension(&self, k: i64) -> ChainMap {
        let (s, t) = (self.source.suspension(k), self.target.suspension(k));
        Self::raw_from_fn(&s, &t, |n| self.component(n - k))
    }
}

/// `A --f--> B --g--> C` with `g ∘ f = 0`.
#[derive(Clone, Debug)]
pub struct ShortSequence {
    pub f: ChainMap,
    pub g: ChainMap,
}

impl ShortSequence {
    pub fn new(f: ChainMap, g: ChainMap) -> Result<ShortSequence> {
        check_composable(&f, &g)?;
        let degrees = all_degrees(&[f.source(), f.target(), g.target()]);
        for n in degrees {
            if !g.component(n).compose(&f.component(n)).is_zero() {
                return Err(Error::NonzeroComposite { degree: n });
            }
        }
        Ok(ShortSequence { f, g })
    }

    pub fn complexes(&self) -> [&Complex; 3] {
        [self.f.source(), self.f.target(), self.g.target()]
    }

    pub fn degrees(&self) -> Vec<i64> {
        all_degrees(&self.complexes())
    }
}

fn check_composable(f: &ChainMap, g: &ChainMap) -> Result<()> {
    if f.source().ring() != g.target().ring() {
        return Err(Error::RingMismatch);
    }
    if f.target() != g.source() {
        return Err(Error::Dimension("consecutive maps do not share an object".into()));
    }
    let p = f.source().is_periodic();
    if f.target().is_periodic() != p || g.target().is_periodic() != p {
        return Err(Error::VariantMismatch);
    }
    Ok(())
}

/// Union of the degrees of several complexes of the same variant.
pub fn all_degrees(xs: &[&Complex]) -> Vec<i64> {
    if xs.iter().any(|x| x.is_periodic()) {
        return vec![0];
    }
    let windows: Vec<(i64, i64)> = xs.iter().filter_map(|x| x.window()).collect();
    match (windows.iter().map(|w| w.0).min(), windows.iter().map(|w| w.1).max()) {
        (Some(a), Some(b)) => (a..=b).collect(),
        _ => Vec::new(),
    }
}

/// Whether a finite sequence is understood to continue by zeros at both
/// ends or is a window into a longer sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ends {
    Zero,
    Open,
}

/// `X^0 → X^1 → … → X^k` with consecutive composites zero.
#[derive(Clone, Debug)]
pub struct LongSequence {
    pub maps: Vec<ChainMap>,
    pub ends: Ends,
}

impl LongSequence {
    pub fn new(maps: Vec<ChainMap>, ends: Ends) -> Result<LongSequence> {
        if maps.is_empty() {
            return Err(Error::Dimension("a sequence needs at least one map".into()));
        }
        for w in maps.windows(2) {
            ShortSequence::new(w[0].clone(), w[1].clone())?;
        }
        Ok(LongSequence { maps, ends })
    }

    pub fn objects(&self) -> Vec<&Complex> {
        let mut v = vec![self.maps[0].source()];
        v.extend(self.maps.iter().map(|m| m.target()));
        v
    }

    pub fn degrees(&self) -> Vec<i64> {
        all_degrees(&self.objects())
    }
}

#[cfg(test)]
mod tests;
