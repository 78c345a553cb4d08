//! Finite commutative coefficient rings.
//!
//! Every supported ring is a free module over `Z/c` (with `c = n` for `Z/n`
//! and `c = p` otherwise) on a small monomial basis. Elements are stored as a
//! packed index whose numeric order is the lexicographic order of the
//! coefficient vector, low-degree coefficient first.

pub mod linsys;
pub mod matrix;
pub mod snf;
pub mod zmod;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub use linsys::{kernel_generators, solve_linear, BlockId, LinearSystem};
pub use matrix::RingMatrix;
pub use zmod::Lattice;

const MAX_CARD: u64 = 1 << 31;
const TABLE_CARD: u64 = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// `Z/n`.
    IntegersMod { n: u64 },
    /// `F_p[x]/(f)` with `f` monic, coefficients low degree first.
    PolyQuotient { p: u64, f: Vec<u64> },
    /// `F_p[x]` or `F_p[x, y]` modulo a monomial ideal given by exponent vectors.
    MonomialQuotient { p: u64, vars: usize, ideal: Vec<Vec<u32>> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZeroGorenstein {
    Yes,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingElement(pub(crate) u32);

impl RingElement {
    pub fn index(self) -> u32 {
        self.0
    }
}

/// Integer or polynomial lift used by the Euclidean diagonalization.
#[derive(Clone, Debug)]
pub(crate) enum Lift {
    Int(u64),
    Poly { p: u64, f: Vec<u64> },
}

struct RingData {
    spec: RingSpec,
    modulus: u64,
    dim: usize,
    card: u64,
    monomials: Vec<Vec<u32>>,
    structure: Vec<Vec<u64>>,
    mul_table: Option<Vec<u32>>,
    units: OnceLock<Vec<bool>>,
    local: OnceLock<bool>,
    flag: ZeroGorenstein,
    lift: Option<Lift>,
}

#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}
impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.name())
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Ring> {
        let (modulus, monomials, structure, flag, lift) = match &spec {
            RingSpec::IntegersMod { n } => {
                if *n < 2 {
                    return Err(Error::InvalidRing(format!("modulus {n} < 2")));
                }
                if *n > MAX_CARD {
                    return Err(Error::InvalidRing(format!("modulus {n} too large")));
                }
                (*n, vec![vec![0]], vec![vec![1]], ZeroGorenstein::Yes, Some(Lift::Int(*n)))
            }
            RingSpec::PolyQuotient { p, f } => {
                if !is_prime(*p) {
                    return Err(Error::InvalidRing(format!("{p} is not prime")));
                }
                if f.len() < 2 || *f.last().unwrap() != 1 {
                    return Err(Error::InvalidRing("f must be monic of degree ≥ 1".into()));
                }
                if f.iter().any(|&a| a >= *p) {
                    return Err(Error::InvalidRing("coefficients of f must lie in [0, p)".into()));
                }
                let d = f.len() - 1;
                let monomials = (0..d as u32).map(|e| vec![e]).collect();
                let mut structure = Vec::with_capacity(d * d);
                for s in 0..d {
                    for t in 0..d {
                        structure.push(snf::x_power_mod(*p, f, s + t));
                    }
                }
                let lift = Lift::Poly { p: *p, f: f.clone() };
                (*p, monomials, structure, ZeroGorenstein::Yes, Some(lift))
            }
            RingSpec::MonomialQuotient { p, vars, ideal } => {
                if !is_prime(*p) {
                    return Err(Error::InvalidRing(format!("{p} is not prime")));
                }
                if !(1..=2).contains(vars) {
                    return Err(Error::InvalidRing("1 or 2 variables supported".into()));
                }
                if ideal.iter().any(|g| g.len() != *vars) {
                    return Err(Error::InvalidRing("exponent vector length ≠ vars".into()));
                }
                let mut bounds = vec![0u32; *vars];
                for (v, b) in bounds.iter_mut().enumerate() {
                    let pure = ideal
                        .iter()
                        .filter(|g| g.iter().enumerate().all(|(w, &e)| w == v || e == 0))
                        .map(|g| g[v])
                        .min();
                    match pure {
                        Some(e) => *b = e,
                        None => {
                            return Err(Error::InvalidRing(format!(
                                "ideal has no pure power of variable {v}; quotient is infinite"
                            )))
                        }
                    }
                }
                let mut monomials = Vec::new();
                let mut e = vec![0u32; *vars];
                loop {
                    if !ideal.iter().any(|g| divides(g, &e)) {
                        monomials.push(e.clone());
                    }
                    let mut v = 0;
                    loop {
                        if v == *vars {
                            break;
                        }
                        e[v] += 1;
                        if e[v] < bounds[v] {
                            break;
                        }
                        e[v] = 0;
                        v += 1;
                    }
                    if v == *vars {
                        break;
                    }
                }
                monomials.sort_by(|a, b| {
                    let da: u32 = a.iter().sum();
                    let db: u32 = b.iter().sum();
                    da.cmp(&db).then_with(|| b.cmp(a))
                });
                let d = monomials.len();
                let mut structure = Vec::with_capacity(d * d);
                for s in 0..d {
                    for t in 0..d {
                        let prod: Vec<u32> =
                            monomials[s].iter().zip(&monomials[t]).map(|(a, b)| a + b).collect();
                        let mut coords = vec![0u64; d];
                        if let Some(i) = monomials.iter().position(|m| *m == prod) {
                            coords[i] = 1;
                        }
                        structure.push(coords);
                    }
                }
                let single = (0..*vars).find(|&v| {
                    monomials
                        .iter()
                        .all(|m| m.iter().enumerate().all(|(w, &x)| w == v || x == 0))
                });
                let (flag, lift) = match single {
                    Some(v) => {
                        let mut f = vec![0u64; d + 1];
                        f[d] = 1;
                        debug_assert!(monomials.iter().enumerate().all(|(i, m)| m[v] == i as u32));
                        (ZeroGorenstein::Yes, Some(Lift::Poly { p: *p, f }))
                    }
                    None => (ZeroGorenstein::Unknown, None),
                };
                (*p, monomials, structure, flag, lift)
            }
        };
        let dim = monomials.len();
        let mut card: u64 = 1;
        for _ in 0..dim {
            card = card
                .checked_mul(modulus)
                .filter(|&c| c <= MAX_CARD)
                .ok_or_else(|| Error::InvalidRing("ring too large".into()))?;
        }
        let mut data = RingData {
            spec,
            modulus,
            dim,
            card,
            monomials,
            structure,
            mul_table: None,
            units: OnceLock::new(),
            local: OnceLock::new(),
            flag,
            lift,
        };
        if card <= TABLE_CARD {
            let ring = Ring(Arc::new(data));
            let mut table = vec![0u32; (card * card) as usize];
            for a in 0..card {
                for b in a..card {
                    let v = ring.mul_slow(RingElement(a as u32), RingElement(b as u32)).0;
                    table[(a * card + b) as usize] = v;
                    table[(b * card + a) as usize] = v;
                }
            }
            data = Arc::try_unwrap(ring.0).ok().expect("unshared");
            data.mul_table = Some(table);
        }
        Ok(Ring(Arc::new(data)))
    }

    pub fn integers_mod(n: u64) -> Result<Ring> {
        Ring::new(RingSpec::IntegersMod { n })
    }

    pub fn poly_quotient(p: u64, f: Vec<u64>) -> Result<Ring> {
        Ring::new(RingSpec::PolyQuotient { p, f })
    }

    pub fn monomial_quotient(p: u64, vars: usize, ideal: Vec<Vec<u32>>) -> Result<Ring> {
        Ring::new(RingSpec::MonomialQuotient { p, vars, ideal })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    /// Characteristic of the prime subring; the additive structure is `(Z/c)^dim`.
    pub fn modulus(&self) -> u64 {
        self.0.modulus
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn cardinality(&self) -> u64 {
        self.0.card
    }

    pub fn zero_gorenstein(&self) -> ZeroGorenstein {
        self.0.flag
    }

    pub(crate) fn lift(&self) -> Option<&Lift> {
        self.0.lift.as_ref()
    }

    pub fn name(&self) -> String {
        match &self.0.spec {
            RingSpec::IntegersMod { n } => format!("Z/{n}"),
            RingSpec::PolyQuotient { p, f } => format!("F_{p}[x]/({})", poly_string(f, "x")),
            RingSpec::MonomialQuotient { p, vars, ideal } => {
                let names = ["x", "y"];
                let gens: Vec<String> = ideal
                    .iter()
                    .map(|g| monomial_string(g, &names[..*vars]))
                    .collect();
                format!("F_{p}[{}]/({})", names[..*vars].join(","), gens.join(","))
            }
        }
    }

    /// The ring `Z/c` acting on the additive group of this ring.
    pub fn prime_subring(&self) -> Ring {
        match &self.0.spec {
            RingSpec::IntegersMod { .. } => self.clone(),
            _ => Ring::integers_mod(self.0.modulus).expect("prime modulus"),
        }
    }

    pub fn zero(&self) -> RingElement {
        RingElement(0)
    }

    pub fn one(&self) -> RingElement {
        self.from_int(1)
    }

    pub fn from_int(&self, k: i64) -> RingElement {
        let mut coords = vec![0u64; self.dim()];
        coords[0] = k.rem_euclid(self.modulus() as i64) as u64;
        self.from_coords(&coords)
    }

    /// Element with the given coefficients on the basis, low degree first.
    pub fn from_coords(&self, coords: &[u64]) -> RingElement {
        let c = self.modulus();
        let mut idx: u64 = 0;
        for t in 0..self.dim() {
            let a = coords.get(t).copied().unwrap_or(0) % c;
            idx = idx * c + a;
        }
        RingElement(idx as u32)
    }

    pub fn coords(&self, e: RingElement) -> Vec<u64> {
        let mut out = vec![0u64; self.dim()];
        self.write_coords(e, &mut out);
        out
    }

    pub fn write_coords(&self, e: RingElement, out: &mut [u64]) {
        let c = self.modulus();
        let mut idx = e.0 as u64;
        for t in (0..self.dim()).rev() {
            out[t] = idx % c;
            idx /= c;
        }
    }

    /// Basis monomials as exponent vectors.
    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.0.monomials
    }

    pub fn basis_element(&self, t: usize) -> RingElement {
        let mut coords = vec![0u64; self.dim()];
        coords[t] = 1;
        self.from_coords(&coords)
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElement> {
        (0..self.0.card as u32).map(RingElement)
    }

    pub fn add(&self, a: RingElement, b: RingElement) -> RingElement {
        if self.dim() == 1 {
            let c = self.modulus();
            return RingElement(((a.0 as u64 + b.0 as u64) % c) as u32);
        }
        let c = self.modulus();
        let (x, y) = (self.coords(a), self.coords(b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(p, q)| (p + q) % c).collect();
        self.from_coords(&s)
    }

    pub fn neg(&self, a: RingElement) -> RingElement {
        let c = self.modulus();
        let x: Vec<u64> = self.coords(a).iter().map(|&p| (c - p) % c).collect();
        self.from_coords(&x)
    }

    pub fn sub(&self, a: RingElement, b: RingElement) -> RingElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: RingElement, b: RingElement) -> RingElement {
        match &self.0.mul_table {
            Some(t) => RingElement(t[(a.0 as u64 * self.0.card + b.0 as u64) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: RingElement, b: RingElement) -> RingElement {
        let d = self.dim();
        let c = self.modulus() as u128;
        let (x, y) = (self.coords(a), self.coords(b));
        let mut out = vec![0u128; d];
        for s in 0..d {
            if x[s] == 0 {
                continue;
            }
            for t in 0..d {
                if y[t] == 0 {
                    continue;
                }
                let w = x[s] as u128 * y[t] as u128 % c;
                for (o, &k) in out.iter_mut().zip(&self.0.structure[s * d + t]) {
                    *o = (*o + w * k as u128) % c;
                }
            }
        }
        let out: Vec<u64> = out.into_iter().map(|v| v as u64).collect();
        self.from_coords(&out)
    }

    pub fn is_zero(&self, a: RingElement) -> bool {
        a.0 == 0
    }

    fn unit_by_rank(&self, a: RingElement) -> bool {
        let d = self.dim();
        let mut l = Lattice::new(self.modulus(), d);
        for t in 0..d {
            l.insert(self.coords(self.mul(a, self.basis_element(t))));
        }
        l.order() == num_bigint::BigUint::from(self.0.card)
    }

    pub fn is_unit(&self, a: RingElement) -> bool {
        if self.0.card <= 1 << 16 {
            let units = self
                .0
                .units
                .get_or_init(|| self.elements().map(|e| self.unit_by_rank(e)).collect());
            units[a.0 as usize]
        } else {
            self.unit_by_rank(a)
        }
    }

    pub fn inverse(&self, a: RingElement) -> Option<RingElement> {
        if !self.is_unit(a) {
            return None;
        }
        let m = RingMatrix::from_rows(self, vec![vec![a]]);
        let x = solve_linear(self, &m, &[self.one()]).ok().flatten()?;
        Some(x[0])
    }

    /// Local means the non-units form an ideal: for every a, a or 1 − a is a unit.
    pub fn is_local(&self) -> bool {
        *self.0.local.get_or_init(|| {
            let one = self.one();
            self.elements()
                .all(|a| self.is_unit(a) || self.is_unit(self.sub(one, a)))
        })
    }

    /// Principal ideal `aR` as an additive lattice.
    pub fn ideal_lattice(&self, a: RingElement) -> Lattice {
        let d = self.dim();
        let mut l = Lattice::new(self.modulus(), d);
        for t in 0..d {
            l.insert(self.coords(self.mul(a, self.basis_element(t))));
        }
        l
    }

    pub fn format(&self, e: RingElement) -> String {
        match self.0.spec {
            RingSpec::IntegersMod { .. } => e.0.to_string(),
            _ => {
                let c: Vec<String> = self.coords(e).iter().map(|x| x.to_string()).collect();
                format!("({})", c.join(","))
            }
        }
    }
}

fn monomial_string(e: &[u32], names: &[&str]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(names)
        .filter(|(&k, _)| k > 0)
        .map(|(&k, n)| if k == 1 { n.to_string() } else { format!("{n}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("")
    }
}

fn poly_string(f: &[u64], var: &str) -> String {
    let mut terms = Vec::new();
    for (k, &a) in f.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        terms.push(match (a, k) {
            (_, 0) => a.to_string(),
            (1, _) => mono,
            _ => format!("{a}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// The rings every suite runs over.
pub fn corpus() -> Vec<Ring> {
    vec![
        Ring::integers_mod(4).unwrap(),
        Ring::poly_quotient(2, vec![0, 0, 1]).unwrap(),
        Ring::poly_quotient(3, vec![0, 0, 1]).unwrap(),
        Ring::monomial_quotient(2, 2, vec![vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinalities() {
        assert_eq!(Ring::integers_mod(4).unwrap().cardinality(), 4);
        assert_eq!(Ring::poly_quotient(2, vec![0, 0, 1]).unwrap().cardinality(), 4);
        let r = Ring::monomial_quotient(2, 2, vec![vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        assert_eq!(r.cardinality(), 8);
        assert_eq!(r.zero_gorenstein(), ZeroGorenstein::Unknown);
        assert_eq!(r.monomials(), &[vec![0, 0], vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(Ring::integers_mod(1).is_err());
        assert!(Ring::poly_quotient(2, vec![1, 0, 2]).is_err());
        assert!(Ring::poly_quotient(4, vec![0, 1]).is_err());
        assert!(Ring::monomial_quotient(2, 2, vec![vec![2, 0], vec![1, 1]]).is_err());
    }

    #[test]
    fn single_variable_monomial_ring_is_flagged() {
        let r = Ring::monomial_quotient(3, 2, vec![vec![3, 0], vec![0, 1]]).unwrap();
        assert_eq!(r.zero_gorenstein(), ZeroGorenstein::Yes);
        assert_eq!(r.cardinality(), 27);
    }

    #[test]
    fn poly_arithmetic() {
        let r = Ring::poly_quotient(2, vec![1, 1, 1]).unwrap();
        let x = r.from_coords(&[0, 1]);
        // x^2 = x + 1 in F_4
        assert_eq!(r.mul(x, x), r.from_coords(&[1, 1]));
        assert!(r.elements().skip(1).all(|a| r.is_unit(a)));
        assert!(r.is_local());
        for a in r.elements().skip(1) {
            assert_eq!(r.mul(a, r.inverse(a).unwrap()), r.one());
        }
    }

    #[test]
    fn locality() {
        assert!(Ring::integers_mod(8).unwrap().is_local());
        assert!(!Ring::integers_mod(6).unwrap().is_local());
        assert!(!Ring::poly_quotient(2, vec![0, 1, 1]).unwrap().is_local());
        for r in corpus() {
            assert!(r.is_local());
        }
    }

    #[test]
    fn ring_axioms_on_small_rings() {
        let mut rings = corpus();
        rings.push(Ring::integers_mod(6).unwrap());
        rings.push(Ring::poly_quotient(2, vec![1, 1, 1]).unwrap());
        for r in rings.iter().filter(|r| r.cardinality() <= 16) {
            for a in r.elements() {
                for b in r.elements() {
                    assert_eq!(r.mul(a, b), r.mul(b, a));
                    assert_eq!(r.add(a, b), r.add(b, a));
                    for c in r.elements() {
                        assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
                        assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
                    }
                }
                assert_eq!(r.mul(a, r.one()), a);
                assert_eq!(r.add(a, r.neg(a)), r.zero());
            }
        }
    }
}
