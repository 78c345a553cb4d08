use super::{Ring, RingElement};
use crate::error::{Error, Result};

/// Dense matrix of ring elements, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RingElement>,
}

impl RingMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RingMatrix {
            rows,
            cols,
            data: vec![RingElement(0); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<RingElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RingMatrix { rows, cols, data })
    }

    pub fn from_rows(_ring: &Ring, rows: Vec<Vec<RingElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        RingMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix of integers reduced into the ring (constants).
    pub fn from_ints(ring: &Ring, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        RingMatrix {
            rows,
            cols,
            data: entries.iter().map(|&k| ring.from_int(k)).collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElement) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RingMatrix { rows, cols, data }
    }

    pub fn column_vector(v: Vec<RingElement>) -> Self {
        RingMatrix {
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> RingElement {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<RingElement> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<RingElement> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn columns(&self) -> Vec<Vec<RingElement>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<RingElement>]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i])
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.0 == 0)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        Self::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j)
            } else {
                other.get(i - self.rows, j)
            }
        })
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        Self::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j),
                (false, false) => other.get(i - self.rows, j - self.cols),
                _ => RingElement(0),
            }
        })
    }

    /// Embeds `self` at offset `(r, c)` of a zero matrix of the given shape.
    pub fn placed(&self, rows: usize, cols: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(r + i, c + j, self.get(i, j));
            }
        }
        m
    }

    pub fn submatrix(&self, r: usize, c: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r + i, c + j))
    }
}

impl Ring {
    pub fn mat_mul(&self, a: &RingMatrix, b: &RingMatrix) -> RingMatrix {
        assert_eq!(a.cols, b.rows, "matrix product shape mismatch");
        let mut out = RingMatrix::zeros(a.rows, b.cols);
        for i in 0..a.rows {
            for k in 0..a.cols {
                let x = a.get(i, k);
                if x.0 == 0 {
                    continue;
                }
                for j in 0..b.cols {
                    let y = b.get(k, j);
                    if y.0 != 0 {
                        let v = self.add(out.get(i, j), self.mul(x, y));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mat_vec(&self, a: &RingMatrix, v: &[RingElement]) -> Vec<RingElement> {
        assert_eq!(a.cols, v.len());
        (0..a.rows)
            .map(|i| {
                (0..a.cols).fold(self.zero(), |acc, j| self.add(acc, self.mul(a.get(i, j), v[j])))
            })
            .collect()
    }

    pub fn mat_add(&self, a: &RingMatrix, b: &RingMatrix) -> RingMatrix {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols));
        RingMatrix::from_fn(a.rows, a.cols, |i, j| self.add(a.get(i, j), b.get(i, j)))
    }

    pub fn mat_sub(&self, a: &RingMatrix, b: &RingMatrix) -> RingMatrix {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols));
        RingMatrix::from_fn(a.rows, a.cols, |i, j| self.sub(a.get(i, j), b.get(i, j)))
    }

    pub fn mat_neg(&self, a: &RingMatrix) -> RingMatrix {
        RingMatrix::from_fn(a.rows, a.cols, |i, j| self.neg(a.get(i, j)))
    }

    pub fn mat_scale(&self, s: RingElement, a: &RingMatrix) -> RingMatrix {
        RingMatrix::from_fn(a.rows, a.cols, |i, j| self.mul(s, a.get(i, j)))
    }
}
