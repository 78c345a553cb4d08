//! Subgroups of `(Z/c)^n` kept in Howell echelon form.
//!
//! A Howell basis has one pivot row per pivot column, each pivot entry divides
//! `c`, and the rows with pivot at or after column `j` span every element of
//! the subgroup that vanishes before `j`. Reduction against it therefore gives
//! the lexicographically least representative of a coset, which is what every
//! deterministic tie-break in the crate relies on.

use num_bigint::BigUint;

#[derive(Clone, Debug)]
pub struct Lattice {
    modulus: u64,
    ncols: usize,
    pivots: Vec<Option<Vec<u64>>>,
}

fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

fn to_mod(x: i128, c: u64) -> u64 {
    x.rem_euclid(c as i128) as u64
}

/// `v -= q * p` modulo `c`, starting at column `from`.
fn sub_scaled(v: &mut [u64], p: &[u64], q: u64, c: u64, from: usize) {
    if q == 0 {
        return;
    }
    let nq = (c - q % c) % c;
    for (x, &y) in v[from..].iter_mut().zip(&p[from..]) {
        if y != 0 {
            *x = ((*x as u128 + nq as u128 * y as u128) % c as u128) as u64;
        }
    }
}

fn scaled(p: &[u64], q: u64, c: u64) -> Vec<u64> {
    p.iter()
        .map(|&y| ((q as u128 * y as u128) % c as u128) as u64)
        .collect()
}

impl Lattice {
    pub fn new(modulus: u64, ncols: usize) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Lattice {
            modulus,
            ncols,
            pivots: vec![None; ncols],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn insert(&mut self, v: Vec<u64>) {
        assert_eq!(v.len(), self.ncols);
        let c = self.modulus;
        let mut stack = vec![v];
        while let Some(mut v) = stack.pop() {
            let mut j = 0;
            loop {
                while j < self.ncols && v[j] == 0 {
                    j += 1;
                }
                if j == self.ncols {
                    break;
                }
                let a = v[j];
                if let Some(p) = &self.pivots[j] {
                    if a % p[j] == 0 {
                        sub_scaled(&mut v, p, a / p[j], c, j);
                        continue;
                    }
                }
                let old = self.pivots[j].take();
                let g_old = old.as_ref().map_or(c, |p| p[j]);
                let (g, s, t) = xgcd(g_old as i128, a as i128);
                let g = g as u64;
                let mut q = scaled(&v, to_mod(t, c), c);
                if let Some(p) = &old {
                    let s = to_mod(s, c);
                    for (x, &y) in q.iter_mut().zip(p) {
                        *x = ((*x as u128 + s as u128 * y as u128) % c as u128) as u64;
                    }
                }
                debug_assert_eq!(q[j], g);
                if let Some(mut p) = old {
                    sub_scaled(&mut p, &q, g_old / g, c, j);
                    stack.push(p);
                }
                sub_scaled(&mut v, &q, a / g, c, j);
                stack.push(v);
                stack.push(scaled(&q, c / g, c));
                self.pivots[j] = Some(q);
                break;
            }
        }
    }

    /// Replaces `v` by the least representative of `v + L`.
    pub fn reduce(&self, v: &mut [u64]) {
        let c = self.modulus;
        for j in 0..self.ncols {
            if let Some(p) = &self.pivots[j] {
                let q = v[j] / p[j];
                sub_scaled(v, p, q, c, j);
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn order(&self) -> BigUint {
        let mut n = BigUint::from(1u32);
        for (j, p) in self.pivots.iter().enumerate() {
            if let Some(p) = p {
                n *= BigUint::from(self.modulus / p[j]);
            }
        }
        n
    }

    /// Number of pivot rows.
    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|p| p.is_some()).count()
    }

    /// Pivot rows in column order as `(pivot column, row)`.
    pub fn basis(&self) -> impl Iterator<Item = (usize, &[u64])> {
        self.pivots
            .iter()
            .enumerate()
            .filter_map(|(j, p)| p.as_deref().map(|p| (j, p)))
    }

    /// Additive orders of the basis rows, in `basis()` order.
    pub fn basis_orders(&self) -> Vec<u64> {
        self.basis().map(|(j, p)| self.modulus / p[j]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.iter().all(|p| p.is_none())
    }

    /// Enumerates every element exactly once, or `None` if there are more than `limit`.
    pub fn elements(&self, limit: u64) -> Option<Vec<Vec<u64>>> {
        let mut total: u64 = 1;
        for o in self.basis_orders() {
            total = total.checked_mul(o)?;
            if total > limit {
                return None;
            }
        }
        let rows: Vec<(&[u64], u64)> = self
            .basis()
            .map(|(j, p)| (p, self.modulus / p[j]))
            .collect();
        let mut out = vec![vec![0u64; self.ncols]];
        let c = self.modulus as u128;
        for (p, ord) in rows {
            let mut next = Vec::with_capacity(out.len() * ord as usize);
            for base in &out {
                for k in 0..ord {
                    next.push(
                        base.iter()
                            .zip(p)
                            .map(|(&x, &y)| ((x as u128 + k as u128 * y as u128) % c) as u64)
                            .collect(),
                    );
                }
            }
            out = next;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn span(c: u64, gens: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
        let n = gens[0].len();
        let mut set = BTreeSet::new();
        set.insert(vec![0; n]);
        loop {
            let mut grown = set.clone();
            for x in &set {
                for g in gens {
                    grown.insert(x.iter().zip(g).map(|(a, b)| (a + b) % c).collect());
                }
            }
            if grown.len() == set.len() {
                return set;
            }
            set = grown;
        }
    }

    #[test]
    fn order_and_membership_match_brute_force() {
        let c = 12;
        let gens = vec![vec![4, 6, 0], vec![0, 3, 9], vec![6, 0, 2]];
        let mut l = Lattice::new(c, 3);
        for g in &gens {
            l.insert(g.clone());
        }
        let s = span(c, &gens);
        assert_eq!(l.order(), BigUint::from(s.len()));
        for a in 0..c {
            for b in 0..c {
                for d in 0..c {
                    let v = vec![a, b, d];
                    assert_eq!(l.contains(&v), s.contains(&v));
                }
            }
        }
        let all: BTreeSet<_> = l.elements(10_000).unwrap().into_iter().collect();
        assert_eq!(all, s);
    }

    #[test]
    fn reduce_gives_least_coset_member() {
        let c = 4;
        let gens = vec![vec![2, 1], vec![0, 2]];
        let mut l = Lattice::new(c, 2);
        for g in &gens {
            l.insert(g.clone());
        }
        let s = span(c, &gens);
        for a in 0..c {
            for b in 0..c {
                let v = vec![a, b];
                let least = s
                    .iter()
                    .map(|w| vec![(a + c - w[0]) % c, (b + c - w[1]) % c])
                    .min()
                    .unwrap();
                let mut r = v.clone();
                l.reduce(&mut r);
                assert_eq!(r, least);
            }
        }
    }
}
