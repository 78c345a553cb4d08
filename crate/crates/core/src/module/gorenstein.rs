//! Gorenstein projectivity of modules, decided by exhibiting a periodic
//! complete projective resolution and re-verifying it.
//!
//! Over the principal corpus rings the module is diagonalized to `⊕ R/(d)`
//! and each cyclic piece gets the two-term periodic resolution built from `d`
//! and a generator of its annihilator. Elsewhere free summands are split off
//! and the remaining part is pushed through left `R`-approximations until it
//! comes back to itself or the bounds run out.

use num_bigint::BigUint;

use super::{cokernel, dual_lattice, find_isomorphism, kernel, lift_through, FpModule, ModuleMap};
use crate::ring::linsys::{coords_vec, prune_generators, r_span};
use crate::ring::snf::{annihilator_generator, diagonalize};
use crate::ring::{Ring, RingElement, RingMatrix, ZeroGorenstein};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GpBounds {
    /// Longest period tried by the search.
    pub period: usize,
    /// Largest rank of a free term in the search.
    pub rank: usize,
    /// Cap on enumerated maps during isomorphism search.
    pub max_states: u64,
}

impl Default for GpBounds {
    fn default() -> Self {
        GpBounds {
            period: 2,
            rank: 4,
            max_states: 1 << 24,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GpStatus {
    Yes,
    Unknown,
}

/// Periodic exact complex of free modules `F_i` (indices mod the period)
/// with `d_i: F_i → F_{i−1}`, together with `M ↪ F_0` onto `ker d_0`.
#[derive(Clone, Debug)]
pub struct GpWitness {
    pub ranks: Vec<usize>,
    pub differentials: Vec<RingMatrix>,
    pub embedding: ModuleMap,
}

impl GpWitness {
    pub fn period(&self) -> usize {
        self.ranks.len()
    }
}

#[derive(Clone, Debug)]
pub struct GpVerdict {
    pub status: GpStatus,
    pub witness: Option<GpWitness>,
    pub note: String,
    pub bounds: GpBounds,
}

impl GpVerdict {
    pub fn is_yes(&self) -> bool {
        self.status == GpStatus::Yes
    }
}

fn free_image_order(ring: &Ring, m: &RingMatrix) -> BigUint {
    r_span(ring, m.rows(), &m.columns()).order()
}

fn free_card(ring: &Ring, rank: usize) -> BigUint {
    BigUint::from(ring.cardinality()).pow(rank as u32)
}

/// Exactness of a periodic complex of free modules at every term.
fn periodic_exact(ring: &Ring, ranks: &[usize], d: &[RingMatrix]) -> Result<(), String> {
    let p = ranks.len();
    for i in 0..p {
        let next = (i + 1) % p;
        let comp = ring.mat_mul(&d[i], &d[next]);
        if !comp.is_zero() {
            return Err(format!("d_{i} ∘ d_{next} ≠ 0"));
        }
        let ker = free_card(ring, ranks[i]) / free_image_order(ring, &d[i]);
        let im = free_image_order(ring, &d[next]);
        if ker != im {
            return Err(format!("not exact at F_{i}"));
        }
    }
    Ok(())
}

/// Independent re-verification of a witness for `m`.
pub fn verify_witness(m: &FpModule, w: &GpWitness) -> Result<(), String> {
    let ring = m.ring();
    let p = w.ranks.len();
    if p == 0 || w.differentials.len() != p {
        return Err("period mismatch".into());
    }
    for i in 0..p {
        let prev = (i + p - 1) % p;
        let d = &w.differentials[i];
        if d.rows() != w.ranks[prev] || d.cols() != w.ranks[i] {
            return Err(format!("d_{i} has the wrong shape"));
        }
    }
    periodic_exact(ring, &w.ranks, &w.differentials)?;
    // Hom(-, R): F_i* → F_{i+1}* is the transpose of d_{i+1}; reversing the
    // order gives another periodic complex of free modules.
    let dual_ranks: Vec<usize> = (0..p).map(|i| w.ranks[(p - i) % p]).collect();
    let dual_d: Vec<RingMatrix> = (0..p)
        .map(|i| w.differentials[(p - i + 1) % p].transpose())
        .collect();
    periodic_exact(ring, &dual_ranks, &dual_d).map_err(|e| format!("Hom(-, R) fails: {e}"))?;
    let emb = &w.embedding;
    if emb.source() != m || emb.target().gens() != w.ranks[0] || !emb.target().is_free_presentation() {
        return Err("embedding has the wrong source or target".into());
    }
    ModuleMap::new(m, emb.target(), emb.matrix().clone()).map_err(|e| e.to_string())?;
    if !ring.mat_mul(&w.differentials[0], emb.matrix()).is_zero() {
        return Err("embedding does not land in ker d_0".into());
    }
    if !emb.is_injective() {
        return Err("embedding is not injective".into());
    }
    let ker = free_card(ring, w.ranks[0]) / free_image_order(ring, &w.differentials[0]);
    if emb.image_cardinality() != ker {
        return Err("embedding misses part of ker d_0".into());
    }
    Ok(())
}

fn contractible_block(ring: &Ring) -> RingMatrix {
    RingMatrix::from_rows(ring, vec![vec![ring.zero(), ring.one()], vec![ring.zero(), ring.zero()]])
}

enum Piece {
    Unit,
    Free,
    Cyclic { d: RingElement, b: RingElement },
}

fn principal_witness(m: &FpModule) -> Option<GpWitness> {
    let ring = m.ring();
    let diag = diagonalize(ring, m.relations())?;
    let mut pieces = Vec::new();
    for &d in &diag.diagonal {
        pieces.push(if ring.is_unit(d) {
            Piece::Unit
        } else if d.0 == 0 {
            Piece::Free
        } else {
            let b = annihilator_generator(ring, d)?;
            let (ib, id) = (ring.ideal_lattice(b), ring.ideal_lattice(d));
            let same = ib.order() == id.order() && id.contains(&ring.coords(b));
            Piece::Cyclic { d, b: if same { d } else { b } }
        });
    }
    let period = if pieces.iter().all(|p| match p {
        Piece::Cyclic { d, b } => d == b,
        _ => true,
    }) {
        1
    } else {
        2
    };
    let mut d0 = RingMatrix::zeros(0, 0);
    let mut d1 = RingMatrix::zeros(0, 0);
    let mut cols: Vec<Vec<RingElement>> = Vec::new();
    let mut offset = 0;
    let total: usize = pieces
        .iter()
        .map(|p| match p {
            Piece::Unit => 0,
            Piece::Free => 2,
            Piece::Cyclic { .. } => 1,
        })
        .sum();
    for p in &pieces {
        let mut col = vec![ring.zero(); total];
        match p {
            Piece::Unit => {}
            Piece::Free => {
                let blk = contractible_block(ring);
                d0 = d0.block_diag(&blk);
                d1 = d1.block_diag(&blk);
                col[offset] = ring.one();
                offset += 2;
            }
            Piece::Cyclic { d, b } => {
                d0 = d0.block_diag(&RingMatrix::from_rows(ring, vec![vec![*d]]));
                d1 = d1.block_diag(&RingMatrix::from_rows(ring, vec![vec![*b]]));
                col[offset] = *b;
                offset += 1;
            }
        }
        cols.push(col);
    }
    let psi = ring.mat_mul(&RingMatrix::from_columns(total, &cols), &diag.u);
    let embedding = ModuleMap::raw(m.clone(), FpModule::free(ring, total), psi);
    let (ranks, differentials) = if period == 1 {
        (vec![total], vec![d0])
    } else {
        (vec![total, total], vec![d0, d1])
    };
    Some(GpWitness {
        ranks,
        differentials,
        embedding,
    })
}

/// Splits `M ≅ core ⊕ R^s` over a local ring; returns `(core, s, iso: M → core ⊕ R^s)`.
fn split_free(m: &FpModule) -> (FpModule, usize, ModuleMap) {
    let ring = m.ring();
    let dual = dual_lattice(m);
    let found = dual.basis().find_map(|(_, row)| {
        let y = coords_vec(ring, row);
        y.iter().position(|&e| ring.is_unit(e)).map(|j| (y, j))
    });
    let Some((y, j)) = found else {
        return (m.clone(), 0, ModuleMap::identity(m));
    };
    let r1 = FpModule::free(ring, 1);
    let phi = ModuleMap::raw(m.clone(), r1.clone(), RingMatrix::from_rows(ring, vec![y.clone()]));
    let inv = ring.inverse(y[j]).expect("unit");
    let mut sigma_col = vec![ring.zero(); m.gens()];
    sigma_col[j] = inv;
    let sigma = ModuleMap::raw(r1.clone(), m.clone(), RingMatrix::column_vector(sigma_col));
    let (k, incl) = kernel(&phi);
    let residual = ModuleMap::identity(m).sub(&sigma.compose(&phi));
    let to_k = lift_through(&residual, &incl).expect("residual lands in the kernel");
    let sum = k.direct_sum(&r1);
    let iso = ModuleMap::raw(m.clone(), sum, to_k.matrix().vstack(phi.matrix()));
    let (core, s, iso_k) = split_free(&k);
    let target = core.direct_sum(&FpModule::free(ring, s + 1));
    let lifted = iso_k.matrix().block_diag(&RingMatrix::identity(ring, 1));
    let total = ring.mat_mul(&lifted, iso.matrix());
    (core, s + 1, ModuleMap::raw(m.clone(), target, total))
}

fn search_witness(m: &FpModule, bounds: &GpBounds) -> Result<GpWitness, String> {
    let ring = m.ring();
    if !ring.is_local() {
        return Err("search needs a local ring".into());
    }
    let (core, s, iso) = split_free(m);
    let mut iotas: Vec<ModuleMap> = Vec::new();
    let mut projs: Vec<ModuleMap> = Vec::new();
    let mut current = core.clone();
    let mut closing: Option<ModuleMap> = None;
    if core.is_zero_module() {
        closing = Some(ModuleMap::zero(&core, &core));
        iotas.push(ModuleMap::zero(&core, &FpModule::free(ring, 0)));
        projs.push(ModuleMap::zero(&FpModule::free(ring, 0), &core));
    } else {
        for step in 1..=bounds.period {
            let dual = dual_lattice(&current);
            let candidates: Vec<Vec<RingElement>> = dual.basis().map(|(_, r)| coords_vec(ring, r)).collect();
            let rows = prune_generators(ring, current.gens(), candidates);
            if rows.len() > bounds.rank {
                return Err(format!(
                    "step {step}: approximation needs rank {} > {}",
                    rows.len(),
                    bounds.rank
                ));
            }
            let free = FpModule::free(ring, rows.len());
            let iota = ModuleMap::raw(current.clone(), free, RingMatrix::from_rows(ring, rows));
            if !iota.is_injective() {
                return Err(format!("step {step}: cosyzygy is not torsionless"));
            }
            let (next, proj) = cokernel(&iota);
            iotas.push(iota);
            projs.push(proj);
            if next.cardinality() == core.cardinality() {
                if let Some(phi) = find_isomorphism(&next, &core, bounds.max_states) {
                    closing = Some(phi);
                    break;
                }
            }
            current = next;
        }
    }
    let Some(phi) = closing else {
        return Err(format!("no period ≤ {} closes up", bounds.period));
    };
    let p = iotas.len();
    let mut ranks = vec![0usize; p];
    let mut diffs = vec![RingMatrix::zeros(0, 0); p];
    for j in 0..p {
        let idx = (p - j) % p;
        ranks[idx] = iotas[j].target().gens();
    }
    for j in 0..p {
        let idx = (p - j) % p;
        let map = if j + 1 < p {
            iotas[j + 1].compose(&projs[j])
        } else {
            iotas[0].compose(&phi).compose(&projs[j])
        };
        diffs[idx] = map.matrix().clone();
    }
    let blk = contractible_block(ring);
    for _ in 0..s {
        for i in 0..p {
            ranks[i] += 2;
            diffs[i] = diffs[i].block_diag(&blk);
        }
    }
    let mut psi_free = RingMatrix::zeros(2 * s, s);
    for t in 0..s {
        psi_free.set(2 * t, t, ring.one());
    }
    let psi = ring.mat_mul(&iotas[0].matrix().block_diag(&psi_free), iso.matrix());
    Ok(GpWitness {
        embedding: ModuleMap::raw(m.clone(), FpModule::free(ring, ranks[0]), psi),
        ranks,
        differentials: diffs,
    })
}

pub fn is_gorenstein_projective(m: &FpModule, bounds: &GpBounds) -> GpVerdict {
    let ring = m.ring();
    let attempt = if ring.zero_gorenstein() == ZeroGorenstein::Yes {
        principal_witness(m).ok_or_else(|| "ring has no Euclidean lift".to_string())
    } else {
        search_witness(m, bounds)
    };
    match attempt {
        Ok(w) => match verify_witness(m, &w) {
            Ok(()) => GpVerdict {
                status: GpStatus::Yes,
                note: format!("periodic complete resolution of period {}", w.period()),
                witness: Some(w),
                bounds: *bounds,
            },
            Err(e) => GpVerdict {
                status: GpStatus::Unknown,
                witness: None,
                note: format!("candidate witness rejected: {e}"),
                bounds: *bounds,
            },
        },
        Err(note) => GpVerdict {
            status: GpStatus::Unknown,
            witness: None,
            note,
            bounds: *bounds,
        },
    }
}
