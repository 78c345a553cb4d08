//! Cartan-Eilenberg exactness, C-E projectivity and the disk/sphere
//! decomposition of C-E projective complexes.
//!
//! A sequence of complexes is C-E exact when it stays exact after applying
//! each of the six functors `X ↦ X_n, Z_n, B_n, X_n/Z_n, X_n/B_n, H_n` in
//! every degree. Exactness of modules is decided by counting.

use num_bigint::BigUint;

use crate::complex::{all_degrees, ChainMap, Complex, DegreeData, Ends, LongSequence, ShortSequence};
use crate::error::{Error, Result};
use crate::module::{descend, image, inverse, is_projective, lift_through, section, FpModule, ModuleMap};
use crate::ring::RingMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Terms,
    Cycles,
    Boundaries,
    TermsModCycles,
    TermsModBoundaries,
    Homology,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Terms,
        Family::Cycles,
        Family::Boundaries,
        Family::TermsModCycles,
        Family::TermsModBoundaries,
        Family::Homology,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Terms => "X_n",
            Family::Cycles => "Z_n",
            Family::Boundaries => "B_n",
            Family::TermsModCycles => "X_n/Z_n",
            Family::TermsModBoundaries => "X_n/B_n",
            Family::Homology => "H_n",
        }
    }

    pub fn module(self, dd: &DegreeData) -> &FpModule {
        match self {
            Family::Terms => &dd.term,
            Family::Cycles => &dd.z,
            Family::Boundaries => &dd.b,
            Family::TermsModCycles => &dd.c_mod_z,
            Family::TermsModBoundaries => &dd.c_mod_b,
            Family::Homology => &dd.h,
        }
    }

    /// The map `F(f_n): F(X_n) → F(Y_n)` induced by a chain map component.
    pub fn induced(self, f: &ModuleMap, src: &DegreeData, tgt: &DegreeData) -> ModuleMap {
        let lift = |a: &ModuleMap, b: &ModuleMap| {
            lift_through(&f.compose(a), b).expect("chain maps preserve cycles and boundaries")
        };
        match self {
            Family::Terms => f.clone(),
            Family::Cycles => lift(&src.z_incl, &tgt.z_incl),
            Family::Boundaries => lift(&src.b_incl, &tgt.b_incl),
            Family::TermsModCycles => {
                descend(f, &src.c_mod_z_proj, &tgt.c_mod_z_proj).expect("chain maps preserve cycles")
            }
            Family::TermsModBoundaries => {
                descend(f, &src.c_mod_b_proj, &tgt.c_mod_b_proj).expect("chain maps preserve boundaries")
            }
            Family::Homology => {
                let z = lift(&src.z_incl, &tgt.z_incl);
                descend(&z, &src.h_proj, &tgt.h_proj).expect("chain maps preserve boundaries")
            }
        }
    }
}

fn degree_table(xs: &[&Complex], degrees: &[i64]) -> Vec<Vec<DegreeData>> {
    xs.iter()
        .map(|x| degrees.iter().map(|&n| x.degree_data(n)).collect())
        .collect()
}

fn short_exact(f: &ModuleMap, g: &ModuleMap) -> bool {
    f.is_injective()
        && g.is_surjective()
        && f.source().cardinality() * g.target().cardinality() == f.target().cardinality()
}

#[derive(Clone, Debug)]
pub struct CeExactReport {
    /// One flag per family, in `Family::ALL` order.
    pub families: [bool; 6],
    pub failures: Vec<(Family, i64)>,
}

impl CeExactReport {
    pub fn exact(&self) -> bool {
        self.families.iter().all(|&b| b)
    }

    pub fn family(&self, f: Family) -> bool {
        self.families[Family::ALL.iter().position(|&x| x == f).expect("listed")]
    }
}

/// Short exactness of `0 → F(A) → F(B) → F(C) → 0` for every family and degree.
pub fn is_ce_exact(s: &ShortSequence) -> CeExactReport {
    let degrees = s.degrees();
    let table = degree_table(&s.complexes(), &degrees);
    let mut families = [true; 6];
    let mut failures = Vec::new();
    for (i, &n) in degrees.iter().enumerate() {
        let (fa, fb) = (s.f.component(n), s.g.component(n));
        for (k, fam) in Family::ALL.iter().enumerate() {
            let f = fam.induced(&fa, &table[0][i], &table[1][i]);
            let g = fam.induced(&fb, &table[1][i], &table[2][i]);
            if !short_exact(&f, &g) {
                families[k] = false;
                failures.push((*fam, n));
            }
        }
    }
    CeExactReport { families, failures }
}

/// Degreewise split: every `B_n ↠ C_n` has a section compatible with a
/// short exact sequence of modules.
#[derive(Clone, Debug)]
pub struct SplitReport {
    pub split: bool,
    pub sections: Vec<(i64, Option<ModuleMap>)>,
}

pub fn is_degreewise_split(s: &ShortSequence) -> Result<SplitReport> {
    let mut sections = Vec::new();
    for n in s.degrees() {
        let (f, g) = (s.f.component(n), s.g.component(n));
        if !short_exact(&f, &g) {
            return Err(Error::NotShortExact { degree: n });
        }
        sections.push((n, section(&g)));
    }
    Ok(SplitReport {
        split: sections.iter().all(|(_, s)| s.is_some()),
        sections,
    })
}

/// Exactness of a long sequence under each family, junction by junction,
/// plus splitting of each `X^i_n ↠ im(X^i_n → X^{i+1}_n)`.
#[derive(Clone, Debug)]
pub struct StrongReport {
    pub families: [bool; 6],
    pub split: bool,
    pub failures: Vec<String>,
}

impl StrongReport {
    pub fn ce_exact(&self) -> bool {
        self.families.iter().all(|&b| b)
    }

    pub fn strongly_exact(&self) -> bool {
        self.ce_exact() && self.split
    }
}

pub fn long_sequence_report(seq: &LongSequence) -> StrongReport {
    let objects = seq.objects();
    let degrees = all_degrees(&objects);
    let table = degree_table(&objects, &degrees);
    let k = seq.maps.len();
    let positions: Vec<usize> = match seq.ends {
        Ends::Zero => (0..=k).collect(),
        Ends::Open => (1..k).collect(),
    };
    let mut families = [true; 6];
    let mut split = true;
    let mut failures = Vec::new();
    for (di, &n) in degrees.iter().enumerate() {
        let comps: Vec<ModuleMap> = seq.maps.iter().map(|m| m.component(n)).collect();
        for (fi, fam) in Family::ALL.iter().enumerate() {
            let maps: Vec<ModuleMap> = comps
                .iter()
                .enumerate()
                .map(|(i, c)| fam.induced(c, &table[i][di], &table[i + 1][di]))
                .collect();
            for &p in &positions {
                let total = fam.module(&table[p][di]).cardinality();
                let incoming = if p > 0 { maps[p - 1].image_cardinality() } else { BigUint::from(1u32) };
                let outgoing = if p < k { maps[p].image_cardinality() } else { BigUint::from(1u32) };
                if total != incoming * outgoing {
                    families[fi] = false;
                    failures.push(format!("{} not exact at object {p}, degree {n}", fam.name()));
                }
            }
        }
        for &p in &positions {
            if p < k {
                let (_, surj, _) = image(&comps[p]);
                if section(&surj).is_none() {
                    split = false;
                    failures.push(format!("object {p} does not split off its image in degree {n}"));
                }
            }
        }
    }
    StrongReport {
        families,
        split,
        failures,
    }
}

pub fn is_strongly_ce_exact(s: &ShortSequence) -> StrongReport {
    let seq = LongSequence {
        maps: vec![s.f.clone(), s.g.clone()],
        ends: Ends::Zero,
    };
    long_sequence_report(&seq)
}

/// The five families of the two-out-of-five criterion: terms, cycles,
/// boundaries (interchangeable with terms mod cycles), terms mod boundaries,
/// homology.
pub fn criterion_family(i: u8) -> Option<&'static [Family]> {
    match i {
        1 => Some(&[Family::Terms]),
        2 => Some(&[Family::Cycles]),
        3 => Some(&[Family::Boundaries, Family::TermsModCycles]),
        4 => Some(&[Family::TermsModBoundaries]),
        5 => Some(&[Family::Homology]),
        _ => None,
    }
}

/// Given that the sequence is short exact under two of the five families,
/// whether it is C-E exact. Errors when the two families are not exact.
pub fn two_of_five_check(s: &ShortSequence, pair: (u8, u8)) -> Result<bool> {
    let report = is_ce_exact(s);
    for i in [pair.0, pair.1] {
        let fams = criterion_family(i).ok_or_else(|| Error::Hypotheses(format!("no family numbered {i}")))?;
        if !fams.iter().any(|&f| report.family(f)) {
            return Err(Error::Hypotheses(format!("family {i} is not short exact")));
        }
    }
    Ok(report.exact())
}

#[derive(Clone, Debug)]
pub struct CeProjectiveReport {
    pub projective: bool,
    pub failures: Vec<(Family, i64)>,
}

/// Terms, cycles, boundaries and homology projective in every degree.
pub fn is_ce_projective(p: &Complex) -> CeProjectiveReport {
    let mut failures = Vec::new();
    for n in p.degrees() {
        let dd = p.degree_data(n);
        for fam in [Family::Terms, Family::Cycles, Family::Boundaries, Family::Homology] {
            if !is_projective(fam.module(&dd)).projective {
                failures.push((fam, n));
            }
        }
    }
    CeProjectiveReport {
        projective: failures.is_empty(),
        failures,
    }
}

/// `P ≅ P' ⊕ P''` with `P'` a sum of disks on the boundaries and `P''` a sum
/// of spheres on the homology.
#[derive(Clone, Debug)]
pub struct CeDecomposition {
    pub disk_part: Complex,
    pub sphere_part: Complex,
    /// `disk_part ⊕ sphere_part → P`.
    pub iso: ChainMap,
    pub inverse: ChainMap,
    /// `(n, M)` for each disk `D^n(M)` (the periodic analogue when `P` is periodic).
    pub disks: Vec<(i64, FpModule)>,
    pub spheres: Vec<(i64, FpModule)>,
}

pub fn ce_decompose(p: &Complex) -> Result<CeDecomposition> {
    if !is_ce_projective(p).projective {
        return Err(Error::Hypotheses("complex is not C-E projective".into()));
    }
    let ring = p.ring();
    let (lo, hi) = if p.is_periodic() {
        (0, 0)
    } else {
        match p.window() {
            Some(w) => w,
            None => {
                let z = Complex::zero(ring);
                return Ok(CeDecomposition {
                    disk_part: z.clone(),
                    sphere_part: z.clone(),
                    iso: ChainMap::zero(&z, p),
                    inverse: ChainMap::zero(p, &z),
                    disks: Vec::new(),
                    spheres: Vec::new(),
                });
            }
        }
    };
    // boundary modules B_{n-1} = im d_n with d_n: P_n ↠ B_{n-1} and a section
    let bnd: Vec<(FpModule, ModuleMap, ModuleMap)> = (lo - 1..=hi + 1)
        .map(|n| {
            let (b, surj, incl) = image(&p.diff(n));
            let s = section(&surj).expect("boundaries are projective");
            (b, incl, s)
        })
        .collect();
    // B_m = im d_{m+1} is bnd[m + 2 - lo]
    let b_at = |m: i64| if p.is_periodic() { &bnd[1] } else { &bnd[(m + 2 - lo) as usize] };
    let data: Vec<DegreeData> = (lo..=hi).map(|n| p.degree_data(n)).collect();
    let hom_part: Vec<(FpModule, ModuleMap)> = data
        .iter()
        .map(|dd| {
            let tau = section(&dd.h_proj).expect("homology is projective");
            (dd.h.clone(), dd.z_incl.compose(&tau))
        })
        .collect();
    let at = |n: i64| (n - lo) as usize;
    let disk_part = p.like(|n| {
        let (bp, bn) = (&b_at(n - 1).0, &b_at(n).0);
        let m = bp.direct_sum(bn);
        let (gp, gn) = (bp.gens(), bn.gens());
        let prev = &b_at(n - 2).0;
        let d = RingMatrix::identity(ring, gp).placed(prev.gens() + gp, gp + gn, prev.gens(), 0);
        (m, d)
    });
    let sphere_part = p.like(|n| {
        let h = &hom_part[at(n)].0;
        let below = if p.is_periodic() || n > lo { hom_part[at(n) - usize::from(n > lo)].0.gens() } else { 0 };
        (h.clone(), RingMatrix::zeros(below, h.gens()))
    });
    let q = disk_part.direct_sum(&sphere_part)?;
    let iso = ChainMap::from_fn(&q, p, |n| {
        let sigma = b_at(n - 1).2.matrix();
        let iota = b_at(n).1.matrix();
        let tau = hom_part[at(n)].1.matrix();
        sigma.hstack(iota).hstack(tau)
    })?;
    let inv = ChainMap::from_fn(p, &q, |n| {
        inverse(&iso.component(n)).expect("the decomposition map is an isomorphism").matrix().clone()
    })?;
    let mut disks = Vec::new();
    let mut spheres = Vec::new();
    for n in lo..=hi {
        let b = &b_at(n - 1).0;
        if !b.is_zero_module() {
            disks.push((n, b.clone()));
        }
        let h = &hom_part[at(n)].0;
        if !h.is_zero_module() {
            spheres.push((n, h.clone()));
        }
    }
    Ok(CeDecomposition {
        disk_part,
        sphere_part,
        iso,
        inverse: inv,
        disks,
        spheres,
    })
}

#[cfg(test)]
mod tests;
