//! Strongly C-E Gorenstein projective complexes: the degreewise
//! classification, explicit strongly complete resolutions, and the
//! Hom-exactness characterizations.
//!
//! "For every C-E projective P" is reduced to the generators `D^i(R)` and
//! `S^i(R)` over a finite range of degrees.

use crate::ce::{is_ce_projective, long_sequence_report, Family};
use crate::complex::hom::{hom_complex, MorphismSpace};
use crate::complex::{ChainMap, Complex, Ends, LongSequence, ShortSequence};
use crate::error::{Error, Result};
use crate::module::{dual_lattice, is_gorenstein_projective, is_projective, GpBounds, GpStatus, GpVerdict, ModuleMap};
use crate::ring::linsys::{vec_coords, LinearSystem, Term};
use crate::ring::{Lattice, Ring, RingMatrix, ZeroGorenstein};
use crate::FpModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
            (Verdict::Unknown, _) | (_, Verdict::Unknown) => Verdict::Unknown,
            _ => Verdict::Yes,
        }
    }

    pub fn resolved(self) -> Option<bool> {
        match self {
            Verdict::Yes => Some(true),
            Verdict::No => Some(false),
            Verdict::Unknown => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Yes => "Yes",
            Verdict::No => "No",
            Verdict::Unknown => "Unknown",
        }
    }
}

impl From<GpStatus> for Verdict {
    fn from(s: GpStatus) -> Verdict {
        match s {
            GpStatus::Yes => Verdict::Yes,
            GpStatus::Unknown => Verdict::Unknown,
        }
    }
}

/// Whether each resolved verdict in the list agrees with the others.
pub fn agree(vs: &[Verdict]) -> bool {
    let resolved: Vec<bool> = vs.iter().filter_map(|v| v.resolved()).collect();
    resolved.windows(2).all(|w| w[0] == w[1])
}

const GP_FAMILIES: [Family; 5] = [
    Family::Cycles,
    Family::Boundaries,
    Family::Homology,
    Family::TermsModCycles,
    Family::TermsModBoundaries,
];

#[derive(Clone, Debug)]
pub struct DegreeConditions {
    pub degree: i64,
    pub term_projective: bool,
    pub gp: Vec<(Family, GpVerdict)>,
}

impl DegreeConditions {
    pub fn status(&self, f: Family) -> Verdict {
        if f == Family::Terms {
            return Verdict::from_bool(self.term_projective);
        }
        self.gp
            .iter()
            .find(|(g, _)| *g == f)
            .map(|(_, v)| v.status.into())
            .unwrap_or(Verdict::Unknown)
    }
}

#[derive(Clone, Debug)]
pub struct GpClassification {
    pub degrees: Vec<DegreeConditions>,
    /// Projective terms; `X/Z` and `H` Gorenstein projective.
    pub set2: Verdict,
    /// Projective terms; `Z`, `B` and `H` Gorenstein projective.
    pub set3: Verdict,
    /// Projective terms; all five derived modules Gorenstein projective.
    pub set4: Verdict,
    pub overall: Verdict,
    pub consistent: bool,
}

fn set_verdict(degrees: &[DegreeConditions], families: &[Family]) -> Verdict {
    degrees.iter().fold(Verdict::Yes, |acc, d| {
        families
            .iter()
            .fold(acc.and(Verdict::from_bool(d.term_projective)), |a, &f| a.and(d.status(f)))
    })
}

pub fn classify_strongly_ce_gp(g: &Complex, bounds: &GpBounds) -> GpClassification {
    let degrees: Vec<DegreeConditions> = g
        .degrees()
        .into_iter()
        .map(|n| {
            let dd = g.degree_data(n);
            DegreeConditions {
                degree: n,
                term_projective: is_projective(&dd.term).projective,
                gp: GP_FAMILIES
                    .iter()
                    .map(|&f| (f, is_gorenstein_projective(f.module(&dd), bounds)))
                    .collect(),
            }
        })
        .collect();
    let set2 = set_verdict(&degrees, &[Family::TermsModCycles, Family::Homology]);
    let set3 = set_verdict(&degrees, &[Family::Cycles, Family::Boundaries, Family::Homology]);
    let set4 = set_verdict(&degrees, &GP_FAMILIES);
    GpClassification {
        degrees,
        set2,
        set3,
        set4,
        overall: set3,
        consistent: agree(&[set2, set3, set4]),
    }
}

pub fn is_sharp_projective(g: &Complex) -> bool {
    g.degrees().into_iter().all(|n| is_projective(&g.module(n)).projective)
}

/// A strongly complete C-E projective resolution materialized to finite
/// depth: `right[i]` is `L^i ↪ P^i ↠ L^{i+1}` with `L^0 = G`, and `left[i]`
/// is `K^{i+1} ↪ Q^i ↠ K^i` with `K^0 = G`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub center: Complex,
    pub right: Vec<ShortSequence>,
    pub left: Vec<ShortSequence>,
}

impl Resolution {
    /// `Q^{d-1} → … → Q^0 → P^0 → … → P^{d-1}`.
    pub fn terms(&self) -> Vec<&Complex> {
        let mut v: Vec<&Complex> = self.left.iter().rev().map(|s| s.f.target()).collect();
        v.extend(self.right.iter().map(|s| s.f.target()));
        v
    }

    /// The spliced maps between consecutive terms.
    pub fn maps(&self) -> Vec<ChainMap> {
        let mut v = Vec::new();
        for i in (1..self.left.len()).rev() {
            v.push(self.left[i - 1].f.compose(&self.left[i].g));
        }
        if let (Some(l), Some(r)) = (self.left.first(), self.right.first()) {
            v.push(r.f.compose(&l.g));
        }
        for i in 1..self.right.len() {
            v.push(self.right[i].f.compose(&self.right[i - 1].g));
        }
        v
    }

    pub fn sequence(&self) -> Result<LongSequence> {
        LongSequence::new(self.maps(), Ends::Open)
    }

    /// Places where consecutive pieces do not share their middle object.
    pub fn link_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut link = |a: &Complex, b: &Complex, what: String| {
            if a != b {
                out.push(what);
            }
        };
        if let Some(r) = self.right.first() {
            link(r.f.source(), &self.center, "right piece 0 does not start at the center".into());
        }
        if let Some(l) = self.left.first() {
            link(l.g.target(), &self.center, "left piece 0 does not end at the center".into());
        }
        for (i, w) in self.right.windows(2).enumerate() {
            link(w[0].g.target(), w[1].f.source(), format!("right pieces {i} and {} do not link", i + 1));
        }
        for (i, w) in self.left.windows(2).enumerate() {
            link(w[0].f.source(), w[1].g.target(), format!("left pieces {i} and {} do not link", i + 1));
        }
        out
    }

    /// All short pieces, left side first.
    pub fn pieces(&self) -> Vec<&ShortSequence> {
        self.left.iter().chain(&self.right).collect()
    }
}

fn two_step(x: &Complex, f: impl Fn(i64) -> (FpModule, RingMatrix), window: Option<(i64, i64)>) -> Complex {
    match window {
        None => {
            let (m, d) = f(0);
            Complex::periodic(&m, d).expect("the disk differential squares to zero")
        }
        Some((lo, hi)) => Complex::from_degrees(x.ring(), lo, hi, f),
    }
}

/// `X ↪ ⊕ D^n(X_n) ↠ ΣX` with `P_n = X_n ⊕ X_{n-1}`, `d(x, y) = (y, 0)`,
/// embedding `x ↦ (x, dx)` and projection `(x, y) ↦ y − dx`.
fn embedding_step(x: &Complex) -> Result<ShortSequence> {
    let ring = x.ring();
    let window = if x.is_periodic() {
        None
    } else {
        Some(x.window().map_or((0, -1), |(a, b)| (a, b + 1)))
    };
    let g = |n: i64| x.module(n).gens();
    let p = two_step(
        x,
        |n| {
            let m = x.module(n).direct_sum(&x.module(n - 1));
            let d = RingMatrix::identity(ring, g(n - 1)).placed(g(n - 1) + g(n - 2), g(n) + g(n - 1), 0, g(n));
            (m, d)
        },
        window,
    );
    let l = x.suspension(1);
    let alpha = ChainMap::from_fn(x, &p, |n| RingMatrix::identity(ring, g(n)).vstack(x.diff(n).matrix()))?;
    let pi = ChainMap::from_fn(&p, &l, |n| {
        ring.mat_neg(x.diff(n).matrix()).hstack(&RingMatrix::identity(ring, g(n - 1)))
    })?;
    ShortSequence::new(alpha, pi)
}

/// `Σ^{-1}Y ↪ ⊕ D^n(Y_n) ↠ Y` with `P_n = Y_{n+1} ⊕ Y_n`, `φ(a, b) = da + b`
/// and kernel inclusion `a ↦ (a, −da)`.
fn cover_step(y: &Complex) -> Result<ShortSequence> {
    let ring = y.ring();
    let window = if y.is_periodic() {
        None
    } else {
        Some(y.window().map_or((0, -1), |(a, b)| (a - 1, b)))
    };
    let g = |n: i64| y.module(n).gens();
    let p = two_step(
        y,
        |n| {
            let m = y.module(n + 1).direct_sum(&y.module(n));
            let d = RingMatrix::identity(ring, g(n)).placed(g(n) + g(n - 1), g(n + 1) + g(n), 0, g(n + 1));
            (m, d)
        },
        window,
    );
    let k = y.suspension(-1);
    let kappa = ChainMap::from_fn(&k, &p, |n| {
        RingMatrix::identity(ring, g(n + 1)).vstack(&ring.mat_neg(y.diff(n + 1).matrix()))
    })?;
    let phi = ChainMap::from_fn(&p, y, |n| y.diff(n + 1).matrix().hstack(&RingMatrix::identity(ring, g(n))))?;
    ShortSequence::new(kappa, phi)
}

pub fn build_resolution(g: &Complex, depth: usize) -> Result<Resolution> {
    if depth < 1 {
        return Err(Error::Hypotheses("depth must be at least 1".into()));
    }
    if g.ring().zero_gorenstein() != ZeroGorenstein::Yes {
        return Err(Error::Hypotheses(format!("{} is not known to be zero-Gorenstein", g.ring().name())));
    }
    if !g.is_exact() {
        return Err(Error::Hypotheses("complex is not exact".into()));
    }
    if !is_sharp_projective(g) {
        return Err(Error::Hypotheses("some term is not projective".into()));
    }
    let mut right = Vec::with_capacity(depth);
    let mut x = g.clone();
    for _ in 0..depth {
        let s = embedding_step(&x)?;
        x = s.g.target().clone();
        right.push(s);
    }
    let mut left = Vec::with_capacity(depth);
    let mut y = g.clone();
    for _ in 0..depth {
        let s = cover_step(&y)?;
        y = s.f.source().clone();
        left.push(s);
    }
    Ok(Resolution {
        center: g.clone(),
        right,
        left,
    })
}

/// `ker f* = im g*` for `A --f--> B --g--> C` after `Hom_R(−, R)`.
pub fn dual_exact_at(f: &ModuleMap, g: &ModuleMap) -> bool {
    let ring = f.ring();
    let b = f.target();
    let mut sys = LinearSystem::new(ring);
    let y = sys.add_block(1, b.gens());
    sys.add_equation(1, b.relations().cols(), &[Term::new(y).right(b.relations())], None);
    sys.add_equation(1, f.source().gens(), &[Term::new(y).right(f.matrix())], None);
    let ker = sys.kernel_projection(&[y]);
    let c_dual = dual_lattice(g.target());
    let mut im = Lattice::new(ring.modulus(), b.gens() * ring.dim());
    for (_, row) in c_dual.basis() {
        let z = RingMatrix::from_vec(1, g.target().gens(), crate::ring::linsys::coords_vec(ring, row)).expect("shape");
        let zg = ring.mat_mul(&z, g.matrix());
        im.insert(vec_coords(ring, zg.entries()));
    }
    ker.order() == im.order()
}

#[derive(Clone, Debug)]
pub struct ResolutionReport {
    pub terms_ce_projective: bool,
    pub junctions: bool,
    pub hom_exact: bool,
    pub failures: Vec<String>,
}

impl ResolutionReport {
    pub fn passed(&self) -> bool {
        self.terms_ce_projective && self.junctions && self.hom_exact
    }
}

/// Default generator degrees: one beyond the center's window on each side.
pub fn default_generator_degrees(g: &Complex) -> (i64, i64) {
    match g.window() {
        Some((a, b)) => (a - 1, b + 1),
        None => (0, 0),
    }
}

pub fn verify_resolution(res: &Resolution, generators: (i64, i64)) -> ResolutionReport {
    let mut failures = Vec::new();
    let terms = res.terms();
    let mut terms_ok = true;
    for (i, t) in terms.iter().enumerate() {
        let rep = is_ce_projective(t);
        if !rep.projective {
            terms_ok = false;
            failures.push(format!("term {i} is not C-E projective: {:?}", rep.failures));
        }
    }
    let mut junctions = true;
    for (i, s) in res.pieces().into_iter().enumerate() {
        let rep = long_sequence_report(&LongSequence {
            maps: vec![s.f.clone(), s.g.clone()],
            ends: Ends::Zero,
        });
        if !rep.strongly_exact() {
            junctions = false;
            failures.push(format!("short piece {i}: {}", rep.failures.join("; ")));
        }
    }
    let mut hom_exact = true;
    let links = res.link_failures();
    let spliced = if links.is_empty() {
        res.sequence()
    } else {
        Err(Error::Hypotheses(links.join("; ")))
    };
    match spliced {
        Err(e) => {
            junctions = false;
            hom_exact = false;
            failures.push(format!("spliced sequence is not a complex: {e}"));
        }
        Ok(seq) => {
            let rep = long_sequence_report(&seq);
            if !rep.strongly_exact() {
                junctions = false;
                failures.push(format!("spliced sequence: {}", rep.failures.join("; ")));
            }
            let degrees: Vec<i64> = if res.center.is_periodic() {
                vec![generators.0]
            } else {
                (generators.0..=generators.1).collect()
            };
            let maps = &seq.maps;
            for i in degrees {
                // Hom(−, D^i(R)) sees degree i−1 terms; Hom(−, S^i(R)) sees X_i/B_i.
                let n = i - 1;
                let tables: Vec<_> = terms.iter().map(|t| t.degree_data(i)).collect();
                for p in 1..maps.len() {
                    let (f, g) = (maps[p - 1].component(n), maps[p].component(n));
                    if !dual_exact_at(&f, &g) {
                        hom_exact = false;
                        failures.push(format!("Hom(-, D^{i}(R)) not exact at term {p}"));
                    }
                    let fq = Family::TermsModBoundaries.induced(&maps[p - 1].component(i), &tables[p - 1], &tables[p]);
                    let gq = Family::TermsModBoundaries.induced(&maps[p].component(i), &tables[p], &tables[p + 1]);
                    if !dual_exact_at(&fq, &gq) {
                        hom_exact = false;
                        failures.push(format!("Hom(-, S^{i}(R)) not exact at term {p}"));
                    }
                }
            }
        }
    }
    ResolutionReport {
        terms_ce_projective: terms_ok,
        junctions,
        hom_exact,
        failures,
    }
}

/// The generators `D^i(R)`, `S^i(R)` for `i` in the range.
pub fn generators(ring: &Ring, range: (i64, i64)) -> Vec<(String, Complex)> {
    let r = FpModule::free(ring, 1);
    (range.0..=range.1)
        .flat_map(|i| {
            [
                (format!("D^{i}(R)"), Complex::disk(i, &r)),
                (format!("S^{i}(R)"), Complex::sphere(i, &r)),
            ]
        })
        .collect()
}

fn hom_window(g: &Complex) -> Option<(i64, i64)> {
    if g.is_periodic() {
        Some((-1, 1))
    } else {
        None
    }
}

/// Generators `P` (by name) for which `Hom(P, G)` is not exact.
pub fn hom_into_failures(g: &Complex, range: (i64, i64)) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (name, p) in generators(g.ring(), range) {
        if !hom_complex(&p, g, hom_window(g))?.is_exact() {
            out.push(name);
        }
    }
    Ok(out)
}

/// Generators `P` (by name) for which `Hom(G, P)` is not exact.
pub fn hom_out_failures(g: &Complex, range: (i64, i64)) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (name, p) in generators(g.ring(), range) {
        if !hom_complex(g, &p, hom_window(g))?.is_exact() {
            out.push(name);
        }
    }
    Ok(out)
}

/// Degrees `n` where the restriction of chain maps `D^{n+1}(R) → G` to
/// `S^n(R) ↪ D^{n+1}(R)` misses some map `S^n(R) → G`.
pub fn disk_detected_degrees(g: &Complex, degrees: &[i64]) -> Result<Vec<i64>> {
    let r = FpModule::free(g.ring(), 1);
    let mut out = Vec::new();
    for &n in degrees {
        let disk = MorphismSpace::new(&Complex::disk(n + 1, &r), g)?;
        let sphere = MorphismSpace::new(&Complex::sphere(n, &r), g)?;
        // disk coordinates are (f_n, f_{n+1}); the restriction keeps f_n
        let width = sphere.valid_lattice().ncols();
        let mut restricted = sphere.zero_lattice().clone();
        for (_, row) in disk.valid_lattice().basis() {
            restricted.insert(row[..width].to_vec());
        }
        if restricted.order() != sphere.valid_lattice().order() {
            out.push(n);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Thm511Report {
    pub exact: bool,
    pub sharp_projective: bool,
    pub cycles_gp: Verdict,
    pub classification: Verdict,
    pub hom_into_failures: Vec<String>,
    pub hom_out_failures: Vec<String>,
    pub c1: Verdict,
    pub c2: Verdict,
    pub c3: bool,
    pub c4: bool,
    pub agree: bool,
}

pub fn theorem511_evaluate(g: &Complex, bounds: &GpBounds, range: (i64, i64)) -> Result<Thm511Report> {
    let exact = g.is_exact();
    let terms_projective = g.degrees().into_iter().all(|n| is_projective(&g.module(n)).projective);
    let sharp = is_sharp_projective(g);
    let class = classify_strongly_ce_gp(g, bounds);
    let cycles_gp = class
        .degrees
        .iter()
        .fold(Verdict::Yes, |acc, d| acc.and(d.status(Family::Cycles)));
    let into = hom_into_failures(g, range)?;
    let out = hom_out_failures(g, range)?;
    let c1 = Verdict::from_bool(exact && terms_projective).and(cycles_gp);
    let c2 = class.overall.and(Verdict::from_bool(into.is_empty()));
    let c3 = terms_projective && into.is_empty() && out.is_empty();
    let c4 = sharp && into.is_empty() && out.is_empty();
    let agree = agree(&[c1, c2, Verdict::from_bool(c3), Verdict::from_bool(c4)]);
    Ok(Thm511Report {
        exact,
        sharp_projective: sharp,
        cycles_gp,
        classification: class.overall,
        hom_into_failures: into,
        hom_out_failures: out,
        c1,
        c2,
        c3,
        c4,
        agree,
    })
}

#[derive(Clone, Debug)]
pub struct Cor56Report {
    pub classification: Verdict,
    pub terms_projective: bool,
    pub agree: bool,
}

/// For an exact bounded complex: classification against projectivity of terms.
pub fn corollary56_evaluate(g: &Complex, bounds: &GpBounds) -> Result<Cor56Report> {
    if g.is_periodic() {
        return Err(Error::Hypotheses("complex is not bounded".into()));
    }
    if !g.is_exact() {
        return Err(Error::Hypotheses("complex is not exact".into()));
    }
    let classification = classify_strongly_ce_gp(g, bounds).overall;
    let terms_projective = g.degrees().into_iter().all(|n| is_projective(&g.module(n)).projective);
    Ok(Cor56Report {
        classification,
        terms_projective,
        agree: agree(&[classification, Verdict::from_bool(terms_projective)]),
    })
}

#[cfg(test)]
mod tests;
