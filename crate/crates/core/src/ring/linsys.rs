//! Linear systems over a finite ring, solved by expanding to `Z/c` and
//! running Howell elimination.
//!
//! Unknowns are grouped into matrix blocks; an equation is a matrix identity
//! `Σ coeff · L · X · R = C`. Solutions are the lexicographically least in
//! block order, so every search in the crate is deterministic.

use super::{Lattice, Ring, RingElement, RingMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockId(usize);

impl BlockId {
    /// Position of this block in `solve()` output.
    pub fn index(self) -> usize {
        self.0
    }
}

/// One summand `coeff · left · X · right` of a matrix equation.
#[derive(Clone, Copy)]
pub struct Term<'a> {
    pub block: BlockId,
    pub left: Option<&'a RingMatrix>,
    pub right: Option<&'a RingMatrix>,
    pub coeff: Option<RingElement>,
}

impl<'a> Term<'a> {
    pub fn new(block: BlockId) -> Self {
        Term {
            block,
            left: None,
            right: None,
            coeff: None,
        }
    }
    pub fn left(mut self, m: &'a RingMatrix) -> Self {
        self.left = Some(m);
        self
    }
    pub fn right(mut self, m: &'a RingMatrix) -> Self {
        self.right = Some(m);
        self
    }
    pub fn scaled(mut self, c: RingElement) -> Self {
        self.coeff = Some(c);
        self
    }
}

pub struct LinearSystem {
    ring: Ring,
    blocks: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    nvars: usize,
    eqs: Vec<Vec<(usize, RingElement)>>,
    rhs: Vec<RingElement>,
}

pub fn vec_coords(ring: &Ring, v: &[RingElement]) -> Vec<u64> {
    let k = ring.dim();
    let mut out = vec![0u64; v.len() * k];
    for (i, &e) in v.iter().enumerate() {
        ring.write_coords(e, &mut out[i * k..(i + 1) * k]);
    }
    out
}

pub fn coords_vec(ring: &Ring, coords: &[u64]) -> Vec<RingElement> {
    coords.chunks(ring.dim()).map(|c| ring.from_coords(c)).collect()
}

/// Additive lattice of the R-span of the given vectors of length `len`.
pub fn r_span(ring: &Ring, len: usize, vectors: &[Vec<RingElement>]) -> Lattice {
    let mut l = Lattice::new(ring.modulus(), len * ring.dim());
    for v in vectors {
        insert_r_multiples(ring, &mut l, v);
    }
    l
}

pub fn insert_r_multiples(ring: &Ring, l: &mut Lattice, v: &[RingElement]) {
    for t in 0..ring.dim() {
        let b = ring.basis_element(t);
        let w: Vec<RingElement> = v.iter().map(|&x| ring.mul(x, b)).collect();
        l.insert(vec_coords(ring, &w));
    }
}

/// Keeps each candidate that is not already in the R-span of those kept so far.
pub fn prune_generators(ring: &Ring, len: usize, candidates: Vec<Vec<RingElement>>) -> Vec<Vec<RingElement>> {
    let mut l = Lattice::new(ring.modulus(), len * ring.dim());
    let mut kept = Vec::new();
    for v in candidates {
        if !l.contains(&vec_coords(ring, &v)) {
            insert_r_multiples(ring, &mut l, &v);
            kept.push(v);
        }
    }
    kept
}

impl LinearSystem {
    pub fn new(ring: &Ring) -> Self {
        LinearSystem {
            ring: ring.clone(),
            blocks: Vec::new(),
            offsets: Vec::new(),
            nvars: 0,
            eqs: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn add_block(&mut self, rows: usize, cols: usize) -> BlockId {
        self.blocks.push((rows, cols));
        self.offsets.push(self.nvars);
        self.nvars += rows * cols;
        BlockId(self.blocks.len() - 1)
    }

    pub fn block_shape(&self, b: BlockId) -> (usize, usize) {
        self.blocks[b.0]
    }

    /// Adds the entrywise equations of `Σ terms = rhs` for a `rows × cols` identity.
    pub fn add_equation(&mut self, rows: usize, cols: usize, terms: &[Term], rhs: Option<&RingMatrix>) {
        let r = &self.ring;
        if let Some(c) = rhs {
            assert_eq!((c.rows(), c.cols()), (rows, cols), "rhs shape");
        }
        for t in terms {
            let (br, bc) = self.blocks[t.block.0];
            match t.left {
                Some(l) => assert_eq!((l.rows(), l.cols()), (rows, br), "left factor shape"),
                None => assert_eq!(br, rows, "block rows must match equation rows"),
            }
            match t.right {
                Some(m) => assert_eq!((m.rows(), m.cols()), (bc, cols), "right factor shape"),
                None => assert_eq!(bc, cols, "block cols must match equation cols"),
            }
        }
        for i in 0..rows {
            for j in 0..cols {
                let mut row: Vec<(usize, RingElement)> = Vec::new();
                for t in terms {
                    let (br, bc) = self.blocks[t.block.0];
                    let off = self.offsets[t.block.0];
                    let coeff = t.coeff.unwrap_or_else(|| r.one());
                    let lefts: Vec<(usize, RingElement)> = match t.left {
                        Some(l) => (0..br).map(|a| (a, l.get(i, a))).filter(|x| x.1 .0 != 0).collect(),
                        None => vec![(i, r.one())],
                    };
                    let rights: Vec<(usize, RingElement)> = match t.right {
                        Some(m) => (0..bc).map(|b| (b, m.get(b, j))).filter(|x| x.1 .0 != 0).collect(),
                        None => vec![(j, r.one())],
                    };
                    for &(a, la) in &lefts {
                        let ca = r.mul(coeff, la);
                        for &(b, rb) in &rights {
                            let v = r.mul(ca, rb);
                            if v.0 != 0 {
                                row.push((off + a * bc + b, v));
                            }
                        }
                    }
                }
                row.sort_by_key(|x| x.0);
                let mut merged: Vec<(usize, RingElement)> = Vec::with_capacity(row.len());
                for (v, c) in row {
                    match merged.last_mut() {
                        Some(last) if last.0 == v => last.1 = r.add(last.1, c),
                        _ => merged.push((v, c)),
                    }
                }
                merged.retain(|x| x.1 .0 != 0);
                self.eqs.push(merged);
                self.rhs.push(rhs.map_or(r.zero(), |c| c.get(i, j)));
            }
        }
    }

    /// One scalar equation `Σ c · X[i][j] = rhs` over single entries.
    pub fn add_entry_equation(&mut self, terms: &[(BlockId, usize, usize, RingElement)], rhs: RingElement) {
        let r = &self.ring;
        let mut row: Vec<(usize, RingElement)> = Vec::new();
        for &(b, i, j, c) in terms {
            let (br, bc) = self.blocks[b.0];
            assert!(i < br && j < bc, "entry out of block");
            let v = self.offsets[b.0] + i * bc + j;
            match row.iter_mut().find(|x| x.0 == v) {
                Some(x) => x.1 = r.add(x.1, c),
                None => row.push((v, c)),
            }
        }
        row.retain(|x| x.1 .0 != 0);
        row.sort_by_key(|x| x.0);
        self.eqs.push(row);
        self.rhs.push(rhs);
    }

    fn generators(&self, with_t: bool) -> (usize, Vec<Vec<u64>>) {
        let r = &self.ring;
        let k = r.dim();
        let neq = self.eqs.len();
        let ecols = neq * k;
        let tcols = usize::from(with_t);
        let width = ecols + tcols + self.nvars * k;
        let mut gens = vec![vec![0u64; width]; self.nvars * k];
        let basis: Vec<RingElement> = (0..k).map(|t| r.basis_element(t)).collect();
        for (e, eq) in self.eqs.iter().enumerate() {
            for &(var, a) in eq {
                for t in 0..k {
                    let prod = r.mul(a, basis[t]);
                    r.write_coords(prod, &mut gens[var * k + t][e * k..(e + 1) * k]);
                }
            }
        }
        for (u, g) in gens.iter_mut().enumerate() {
            g[ecols + tcols + u] = 1;
        }
        (width, gens)
    }

    /// Lex-least solution in block order, if one exists.
    pub fn solve(&self) -> Option<Vec<RingMatrix>> {
        let r = &self.ring;
        let k = r.dim();
        let c = r.modulus();
        let ecols = self.eqs.len() * k;
        let (width, gens) = self.generators(true);
        let mut l = Lattice::new(c, width);
        for g in gens {
            l.insert(g);
        }
        let mut tvec = vec![0u64; width];
        for (e, &b) in self.rhs.iter().enumerate() {
            let nb = r.neg(b);
            r.write_coords(nb, &mut tvec[e * k..(e + 1) * k]);
        }
        tvec[ecols] = 1;
        l.insert(tvec);
        let row = l.basis().find(|(j, _)| *j == ecols).map(|(_, p)| p.to_vec())?;
        if row[ecols] != 1 {
            return None;
        }
        let mut v = vec![0u64; width];
        v[ecols + 1..].copy_from_slice(&row[ecols + 1..]);
        l.reduce(&mut v);
        Some(self.unpack(&v[ecols + 1..]))
    }

    fn unpack(&self, x: &[u64]) -> Vec<RingMatrix> {
        let k = self.ring.dim();
        self.blocks
            .iter()
            .zip(&self.offsets)
            .map(|(&(br, bc), &off)| {
                let vals = coords_vec(&self.ring, &x[off * k..(off + br * bc) * k]);
                RingMatrix::from_vec(br, bc, vals).expect("shape")
            })
            .collect()
    }

    /// Additive lattice of the projection of the solution set of the
    /// homogeneous system onto the chosen blocks (coordinates concatenated in
    /// the given order).
    pub fn kernel_projection(&self, blocks: &[BlockId]) -> Lattice {
        let r = &self.ring;
        let k = r.dim();
        let ecols = self.eqs.len() * k;
        let (width, gens) = self.generators(false);
        let mut l = Lattice::new(r.modulus(), width);
        for g in gens {
            l.insert(g);
        }
        let ranges: Vec<(usize, usize)> = blocks
            .iter()
            .map(|b| {
                let (br, bc) = self.blocks[b.0];
                let off = self.offsets[b.0];
                (ecols + off * k, ecols + (off + br * bc) * k)
            })
            .collect();
        let pwidth: usize = ranges.iter().map(|(a, b)| b - a).sum();
        let mut p = Lattice::new(r.modulus(), pwidth);
        for (j, row) in l.basis() {
            if j < ecols {
                continue;
            }
            let mut v = Vec::with_capacity(pwidth);
            for &(a, b) in &ranges {
                v.extend_from_slice(&row[a..b]);
            }
            p.insert(v);
        }
        p
    }

    /// Splits a coordinate vector over the given blocks back into matrices.
    pub fn split_coords(&self, blocks: &[BlockId], coords: &[u64]) -> Vec<RingMatrix> {
        let k = self.ring.dim();
        let mut pos = 0;
        blocks
            .iter()
            .map(|b| {
                let (br, bc) = self.blocks[b.0];
                let n = br * bc * k;
                let vals = coords_vec(&self.ring, &coords[pos..pos + n]);
                pos += n;
                RingMatrix::from_vec(br, bc, vals).expect("shape")
            })
            .collect()
    }
}

/// Coordinates of a list of matrices, concatenated row-major.
pub fn matrices_coords(ring: &Ring, ms: &[&RingMatrix]) -> Vec<u64> {
    let mut out = Vec::new();
    for m in ms {
        out.extend(vec_coords(ring, m.entries()));
    }
    out
}

/// Some `x` with `A·x = b`, lexicographically least.
pub fn solve_linear(ring: &Ring, a: &RingMatrix, b: &[RingElement]) -> Result<Option<Vec<RingElement>>> {
    if a.rows() != b.len() {
        return Err(Error::Dimension(format!(
            "matrix has {} rows, right-hand side has {}",
            a.rows(),
            b.len()
        )));
    }
    let mut sys = LinearSystem::new(ring);
    let x = sys.add_block(a.cols(), 1);
    let rhs = RingMatrix::column_vector(b.to_vec());
    sys.add_equation(a.rows(), 1, &[Term::new(x).left(a)], Some(&rhs));
    Ok(sys.solve().map(|m| m[0].column(0)))
}

/// Columns generating `ker A` as an R-module.
pub fn kernel_generators(ring: &Ring, a: &RingMatrix) -> RingMatrix {
    let mut sys = LinearSystem::new(ring);
    let x = sys.add_block(a.cols(), 1);
    sys.add_equation(a.rows(), 1, &[Term::new(x).left(a)], None);
    let lat = sys.kernel_projection(&[x]);
    let candidates: Vec<Vec<RingElement>> = lat.basis().map(|(_, row)| coords_vec(ring, row)).collect();
    let kept = prune_generators(ring, a.cols(), candidates);
    RingMatrix::from_columns(a.cols(), &kept)
}
