//! Diagonalization of presentation matrices over the principal corpus rings.
//!
//! `Z/n` and `F_p[x]/(f)` are quotients of Euclidean domains; lifting entries
//! to integers or polynomials of low degree gives a division with remainder
//! that never wraps around, so Euclid's algorithm runs directly on ring
//! elements.

use super::{Lift, Ring, RingElement, RingMatrix};

pub(crate) fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Quotient and remainder of polynomials over `F_p`; `b` must be nonzero.
pub(crate) fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let b = poly_trim(b.to_vec());
    let mut r = poly_trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    let mut q = vec![0u64; r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let coef = r[r.len() - 1] * lead_inv % p;
        q[k] = coef;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + p * p - coef * bi % p) % p;
        }
        r = poly_trim(r);
    }
    (poly_trim(q), r)
}

pub(crate) fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (poly_trim(a.to_vec()), poly_trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = poly_divrem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p);
        for x in a.iter_mut() {
            *x = *x * inv % p;
        }
    }
    a
}

/// Coefficients of `x^e mod f`, padded to `deg f`.
pub(crate) fn x_power_mod(p: u64, f: &[u64], e: usize) -> Vec<u64> {
    let mut mono = vec![0u64; e + 1];
    mono[e] = 1;
    let (_, mut r) = poly_divrem(&mono, f, p);
    r.resize(f.len() - 1, 0);
    r
}

/// `U · A · V = diag(d)` with `U` invertible; `V` is not tracked since only
/// the column span matters for a presentation.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    /// One entry per row of `A`; rows beyond the column count get 0.
    pub diagonal: Vec<RingElement>,
    pub u: RingMatrix,
    pub u_inv: RingMatrix,
}

fn norm(ring: &Ring, lift: &Lift, a: RingElement) -> Option<u64> {
    if a.0 == 0 {
        return None;
    }
    Some(match lift {
        Lift::Int(_) => a.0 as u64,
        Lift::Poly { .. } => poly_trim(ring.coords(a)).len() as u64 - 1,
    })
}

fn quotient(ring: &Ring, lift: &Lift, a: RingElement, b: RingElement) -> RingElement {
    match lift {
        Lift::Int(_) => RingElement(a.0 / b.0),
        Lift::Poly { p, .. } => {
            let (q, _) = poly_divrem(&ring.coords(a), &ring.coords(b), *p);
            ring.from_coords(&q)
        }
    }
}

/// Generator of the annihilator of a nonzero non-unit `d`.
pub fn annihilator_generator(ring: &Ring, d: RingElement) -> Option<RingElement> {
    let lift = ring.lift()?;
    Some(match lift {
        Lift::Int(n) => {
            let (mut a, mut b) = (d.0 as u64, *n);
            while b != 0 {
                (a, b) = (b, a % b);
            }
            ring.from_int((*n / a) as i64)
        }
        Lift::Poly { p, f } => {
            let g = poly_gcd(&ring.coords(d), f, *p);
            let (q, _) = poly_divrem(f, &g, *p);
            ring.from_coords(&q)
        }
    })
}

/// Diagonalizes `a`; `None` when the ring has no Euclidean lift.
pub fn diagonalize(ring: &Ring, a: &RingMatrix) -> Option<Diagonalization> {
    let lift = ring.lift()?.clone();
    let (g, r) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut u = RingMatrix::identity(ring, g);
    let mut u_inv = RingMatrix::identity(ring, g);

    let row_sub = |m: &mut RingMatrix, u: &mut RingMatrix, u_inv: &mut RingMatrix, i: usize, t: usize, q: RingElement| {
        // row_i -= q row_t
        for j in 0..m.cols() {
            let v = ring.sub(m.get(i, j), ring.mul(q, m.get(t, j)));
            m.set(i, j, v);
        }
        for j in 0..g {
            let v = ring.sub(u.get(i, j), ring.mul(q, u.get(t, j)));
            u.set(i, j, v);
        }
        // u_inv: col_t += q col_i
        for k in 0..g {
            let v = ring.add(u_inv.get(k, t), ring.mul(q, u_inv.get(k, i)));
            u_inv.set(k, t, v);
        }
    };
    let row_swap = |m: &mut RingMatrix, u: &mut RingMatrix, u_inv: &mut RingMatrix, i: usize, t: usize| {
        if i == t {
            return;
        }
        for j in 0..m.cols() {
            let (x, y) = (m.get(i, j), m.get(t, j));
            m.set(i, j, y);
            m.set(t, j, x);
        }
        for j in 0..g {
            let (x, y) = (u.get(i, j), u.get(t, j));
            u.set(i, j, y);
            u.set(t, j, x);
        }
        for k in 0..g {
            let (x, y) = (u_inv.get(k, i), u_inv.get(k, t));
            u_inv.set(k, i, y);
            u_inv.set(k, t, x);
        }
    };
    let col_sub = |m: &mut RingMatrix, j: usize, t: usize, q: RingElement| {
        for i in 0..m.rows() {
            let v = ring.sub(m.get(i, j), ring.mul(q, m.get(i, t)));
            m.set(i, j, v);
        }
    };
    let col_swap = |m: &mut RingMatrix, j: usize, t: usize| {
        if j == t {
            return;
        }
        for i in 0..m.rows() {
            let (x, y) = (m.get(i, j), m.get(i, t));
            m.set(i, j, y);
            m.set(i, t, x);
        }
    };

    let steps = g.min(r);
    for t in 0..steps {
        let best = (t..g)
            .flat_map(|i| (t..r).map(move |j| (i, j)))
            .filter_map(|(i, j)| norm(ring, &lift, m.get(i, j)).map(|n| (n, i, j)))
            .min();
        let Some((_, i0, j0)) = best else { break };
        row_swap(&mut m, &mut u, &mut u_inv, i0, t);
        col_swap(&mut m, j0, t);
        loop {
            let piv = m.get(t, t);
            for i in t + 1..g {
                let q = quotient(ring, &lift, m.get(i, t), piv);
                if q.0 != 0 {
                    row_sub(&mut m, &mut u, &mut u_inv, i, t, q);
                }
            }
            for j in t + 1..r {
                let q = quotient(ring, &lift, m.get(t, j), piv);
                if q.0 != 0 {
                    col_sub(&mut m, j, t, q);
                }
            }
            let rest = (t + 1..g)
                .map(|i| (i, t))
                .chain((t + 1..r).map(|j| (t, j)))
                .filter_map(|(i, j)| norm(ring, &lift, m.get(i, j)).map(|n| (n, i, j)))
                .min();
            match rest {
                None => break,
                Some((_, i, j)) => {
                    if j == t {
                        row_swap(&mut m, &mut u, &mut u_inv, i, t);
                    } else {
                        col_swap(&mut m, j, t);
                    }
                }
            }
        }
    }
    let diagonal = (0..g)
        .map(|i| if i < r { m.get(i, i) } else { ring.zero() })
        .collect();
    debug_assert!((0..g).all(|i| (0..r).all(|j| i == j || m.get(i, j).0 == 0)));
    Some(Diagonalization { diagonal, u, u_inv })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_division() {
        let (q, r) = poly_divrem(&[1, 0, 1], &[1, 1], 2);
        assert_eq!(q, vec![1, 1]);
        assert!(r.is_empty());
        assert_eq!(poly_gcd(&[0, 1], &[0, 0, 1], 2), vec![0, 1]);
        assert_eq!(x_power_mod(2, &[1, 1, 1], 2), vec![1, 1]);
    }

    #[test]
    fn diagonalizes_and_tracks_inverse() {
        let r = Ring::integers_mod(12).unwrap();
        let a = RingMatrix::from_ints(&r, 3, 2, &[4, 6, 2, 8, 6, 3]);
        let d = diagonalize(&r, &a).unwrap();
        let id = RingMatrix::identity(&r, 3);
        assert_eq!(r.mat_mul(&d.u, &d.u_inv), id);
        assert_eq!(r.mat_mul(&d.u_inv, &d.u), id);
        // column spans of U·A and diag agree
        let ua = r.mat_mul(&d.u, &a);
        let diag = RingMatrix::from_fn(3, 2, |i, j| if i == j { d.diagonal[i] } else { r.zero() });
        let s1 = super::super::linsys::r_span(&r, 3, &ua.columns());
        let s2 = super::super::linsys::r_span(&r, 3, &diag.columns());
        assert_eq!(s1.order(), s2.order());
        for col in diag.columns() {
            assert!(s1.contains(&super::super::linsys::vec_coords(&r, &col)));
        }
    }

    #[test]
    fn annihilators() {
        let r = Ring::integers_mod(8).unwrap();
        assert_eq!(annihilator_generator(&r, r.from_int(2)), Some(r.from_int(4)));
        let s = Ring::poly_quotient(2, vec![0, 0, 1]).unwrap();
        let x = s.from_coords(&[0, 1]);
        assert_eq!(annihilator_generator(&s, x), Some(x));
    }
}
