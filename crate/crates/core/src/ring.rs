//! Finite local rings: the Galois field GF(q), the Galois ring GR(p², r) and
//! the dual numbers GF(q) + eGF(q).
//!
//! Every ring is small (at most a few hundred elements at the default cap), so
//! a [`Ring`] enumerates its elements once and answers all arithmetic through
//! lookup tables. Elements are addressed by [`Elem`], a copyable index into the
//! lexicographic order of canonical coefficient vectors. [`RingElement`] pairs
//! an index with its ring for checked, self-describing arithmetic.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest residue-field order accepted unless a caller raises the cap.
pub const DEFAULT_MAX_ORDER: u32 = 16;

/// Ceiling for any configured cap; tables grow as q⁴.
pub const HARD_MAX_ORDER: u32 = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("{0} is not a prime")]
    CompositeP(u32),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("order {q} exceeds the configured cap {cap}")]
    OrderTooLarge { q: u64, cap: u32 },
    #[error("modulus {0:?} is not a monic polynomial of the requested degree")]
    BadModulus(Vec<u32>),
    #[error("modulus {0:?} is reducible modulo p")]
    ReduciblePolynomial(Vec<u32>),
    #[error("no lift of {0:?} divides x^(q-1) - 1 over Z/p^2")]
    PolynomialNotDividingCyclotomic(Vec<u32>),
    #[error("operands belong to different rings")]
    MixedRings,
    #[error("element is a zero divisor and has no inverse")]
    NotAUnit,
    #[error("operation requires a Galois ring, got {0:?}")]
    WrongRingKind(RingKind),
    #[error("coefficient vector {0:?} is not an element of this ring")]
    InvalidCoefficients(Vec<u32>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingKind {
    GaloisRing,
    DualNumbers,
    Field,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingCounts {
    pub total: usize,
    pub zero_divisors: usize,
    pub units: usize,
}

/// Serializable summary of a constructed ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub p: u32,
    pub r: u32,
    pub q: u32,
    pub kind: RingKind,
    /// Monic modulus, constant term first. Coefficients live in Z/p² for
    /// Galois rings and in Z/p otherwise.
    pub modulus_coeffs: Vec<u32>,
    pub counts: RingCounts,
}

/// Index of an element in its ring's lexicographic element order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u16);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        Elem(i as u16)
    }
}

/// The Teichmüller set {0, 1, ζ, …, ζ^(q−2)} of a Galois ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeichmuellerData {
    pub zeta: Elem,
    pub elements: Vec<Elem>,
}

/// Polynomial arithmetic over Z/m, coefficients stored constant term first.
pub(crate) mod poly {
    pub fn degree(a: &[u32]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    /// Remainder of `a` by the monic polynomial `g`.
    pub fn rem(a: &[u32], g: &[u32], m: u32) -> Vec<u32> {
        let m = m as u64;
        let dg = g.len() - 1;
        let mut r: Vec<u64> = a.iter().map(|&c| c as u64 % m).collect();
        if r.len() <= dg {
            r.resize(dg.max(1), 0);
            return r.into_iter().map(|c| c as u32).collect();
        }
        for i in (dg..r.len()).rev() {
            let lead = r[i];
            if lead == 0 {
                continue;
            }
            for (j, &gj) in g.iter().enumerate() {
                let k = i - dg + j;
                r[k] = (r[k] + m * m - (lead * gj as u64) % m) % m;
            }
        }
        r.truncate(dg.max(1));
        r.into_iter().map(|c| c as u32).collect()
    }

    pub fn mul(a: &[u32], b: &[u32], m: u32) -> Vec<u32> {
        let m = m as u64;
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % m;
            }
        }
        out.into_iter().map(|c| c as u32).collect()
    }

    pub fn mulmod(a: &[u32], b: &[u32], f: &[u32], m: u32) -> Vec<u32> {
        rem(&mul(a, b, m), f, m)
    }

    /// `x^e mod f` over Z/m.
    pub fn x_pow_mod(e: u64, f: &[u32], m: u32) -> Vec<u32> {
        let deg = f.len() - 1;
        let mut result = rem(&[1], f, m);
        let mut base = rem(&[0, 1], f, m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &base, f, m);
            }
            base = mulmod(&base, &base, f, m);
            e >>= 1;
        }
        result.resize(deg.max(1), 0);
        result
    }

    pub fn is_one(a: &[u32]) -> bool {
        a.first() == Some(&1) && a[1..].iter().all(|&c| c == 0)
    }

    /// Monic polynomials of the given degree over GF(p), in increasing order
    /// of the base-p integer whose least significant digit is the constant term.
    pub fn monic_of_degree(p: u32, d: usize) -> impl Iterator<Item = Vec<u32>> {
        let count = (p as u64).pow(d as u32);
        (0..count).map(move |mut n| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push((n % p as u64) as u32);
                n /= p as u64;
            }
            c.push(1);
            c
        })
    }

    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let d = match degree(f) {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        if d == 1 {
            return true;
        }
        for k in 1..=d / 2 {
            for g in monic_of_degree(p, k) {
                if rem(f, &g, p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }

    /// True when `x` generates the multiplicative group of GF(p)[x]/(f).
    pub fn is_primitive(f: &[u32], p: u32) -> bool {
        let d = f.len() - 1;
        let order = (p as u64).pow(d as u32) - 1;
        if !is_one(&x_pow_mod(order, f, p)) {
            return false;
        }
        super::prime_factors(order)
            .into_iter()
            .all(|l| !is_one(&x_pow_mod(order / l, f, p)))
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q = p^r` into `(p, r)`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let factors = prime_factors(q as u64);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0] as u32;
    let mut r = 0;
    let mut n = q;
    while n > 1 {
        n /= p;
        r += 1;
    }
    Some((p, r))
}

/// Lexicographically smallest monic irreducible primitive polynomial of
/// degree `r` over GF(p).
pub fn default_field_modulus(p: u32, r: u32) -> Vec<u32> {
    poly::monic_of_degree(p, r as usize)
        .find(|f| poly::is_irreducible(f, p) && poly::is_primitive(f, p))
        .expect("a primitive polynomial exists for every prime power")
}

/// Lift of `fbar` to Z/p² dividing x^(q−1) − 1. The lift is unique, so the
/// p^r corrections `fbar + p·g` with deg g < r are simply tried in turn.
fn hensel_lift(fbar: &[u32], p: u32) -> Option<Vec<u32>> {
    let r = fbar.len() - 1;
    let m = p * p;
    let q = (p as u64).pow(r as u32);
    poly::monic_of_degree(p, r).find_map(|g| {
        let f: Vec<u32> = fbar
            .iter()
            .zip(&g)
            .enumerate()
            .map(|(i, (&a, &b))| if i == r { 1 } else { (a + p * b) % m })
            .collect();
        poly::is_one(&poly::x_pow_mod(q - 1, &f, m)).then_some(f)
    })
}

/// Configures and constructs a [`Ring`].
#[derive(Debug, Clone)]
pub struct RingBuilder {
    p: u32,
    r: u32,
    kind: RingKind,
    modulus: Option<Vec<u32>>,
    max_order: u32,
    hensel_lift: bool,
}

impl RingBuilder {
    pub fn new(p: u32, r: u32, kind: RingKind) -> Self {
        RingBuilder {
            p,
            r,
            kind,
            modulus: None,
            max_order: DEFAULT_MAX_ORDER,
            hensel_lift: true,
        }
    }

    /// Monic modulus of degree r, constant term first.
    pub fn modulus(mut self, f: &[u32]) -> Self {
        self.modulus = Some(f.to_vec());
        self
    }

    pub fn max_order(mut self, cap: u32) -> Self {
        self.max_order = cap.min(HARD_MAX_ORDER);
        self
    }

    /// When disabled, a Galois ring keeps the supplied modulus as its
    /// presentation instead of replacing it by the lift dividing x^(q−1) − 1.
    /// The result is an isomorphic ring in which ζ is no longer the class of x.
    pub fn hensel_lift(mut self, lift: bool) -> Self {
        self.hensel_lift = lift;
        self
    }

    pub fn build(self) -> Result<Arc<Ring>, RingError> {
        let RingBuilder {
            p,
            r,
            kind,
            modulus,
            max_order,
            hensel_lift: lift,
        } = self;
        if !is_prime(p) {
            return Err(RingError::CompositeP(p));
        }
        if r == 0 {
            return Err(RingError::ZeroRank);
        }
        let q = (p as u64).checked_pow(r).unwrap_or(u64::MAX);
        if q > max_order as u64 {
            return Err(RingError::OrderTooLarge { q, cap: max_order });
        }
        let q = q as u32;
        let coeff_mod = if kind == RingKind::GaloisRing { p * p } else { p };

        let modulus = match modulus {
            None => {
                let fbar = default_field_modulus(p, r);
                if kind == RingKind::GaloisRing {
                    hensel_lift(&fbar, p).ok_or(RingError::PolynomialNotDividingCyclotomic(fbar))?
                } else {
                    fbar
                }
            }
            Some(f) => {
                if f.len() != r as usize + 1 || f[r as usize] != 1 || f.iter().any(|&c| c >= coeff_mod) {
                    return Err(RingError::BadModulus(f));
                }
                let fbar: Vec<u32> = f.iter().map(|&c| c % p).collect();
                if !poly::is_irreducible(&fbar, p) {
                    return Err(RingError::ReduciblePolynomial(f));
                }
                match kind {
                    RingKind::GaloisRing if lift => {
                        let divides = poly::is_one(&poly::x_pow_mod(q as u64 - 1, &f, coeff_mod));
                        if divides {
                            f
                        } else {
                            hensel_lift(&fbar, p).ok_or(RingError::PolynomialNotDividingCyclotomic(f))?
                        }
                    }
                    RingKind::GaloisRing => f,
                    _ => fbar,
                }
            }
        };

        let residue = match kind {
            RingKind::Field => None,
            _ => {
                let fbar: Vec<u32> = modulus.iter().map(|&c| c % p).collect();
                Some(
                    RingBuilder::new(p, r, RingKind::Field)
                        .modulus(&fbar)
                        .max_order(max_order)
                        .build()?,
                )
            }
        };
        Ok(Arc::new(Ring::from_parts(p, r, q, kind, modulus, residue)))
    }
}

/// Builds a ring with the default modulus and cap, or with the given modulus.
pub fn make_ring(p: u32, r: u32, kind: RingKind, modulus: Option<&[u32]>) -> Result<Arc<Ring>, RingError> {
    let mut b = RingBuilder::new(p, r, kind);
    if let Some(f) = modulus {
        b = b.modulus(f);
    }
    b.build()
}

/// A finite local ring with precomputed operation tables.
pub struct Ring {
    descriptor: RingDescriptor,
    coeff_mod: u32,
    width: usize,
    elements: Vec<Vec<u32>>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<Option<u16>>,
    unit: Vec<bool>,
    residue: Option<Arc<Ring>>,
    residue_map: Vec<u16>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring").field("descriptor", &self.descriptor).finish()
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.descriptor == other.descriptor
    }
}

impl Eq for Ring {}

impl Ring {
    fn from_parts(p: u32, r: u32, q: u32, kind: RingKind, modulus: Vec<u32>, residue: Option<Arc<Ring>>) -> Ring {
        let ru = r as usize;
        let (coeff_mod, width) = match kind {
            RingKind::GaloisRing => (p * p, ru),
            RingKind::DualNumbers => (p, 2 * ru),
            RingKind::Field => (p, ru),
        };
        let size = (coeff_mod as usize).pow(width as u32);
        let elements: Vec<Vec<u32>> = (0..size).map(|i| index_to_coeffs(i, coeff_mod, width)).collect();
        let index = |c: &[u32]| coeffs_to_index(c, coeff_mod) as u16;

        let mod_reduced: Vec<u32> = modulus.iter().map(|&c| c % coeff_mod).collect();
        let mul_coeffs = |a: &[u32], b: &[u32]| -> Vec<u32> {
            match kind {
                RingKind::GaloisRing | RingKind::Field => poly::mulmod(a, b, &mod_reduced, coeff_mod),
                RingKind::DualNumbers => {
                    let (a0, a1) = a.split_at(ru);
                    let (b0, b1) = b.split_at(ru);
                    let mut out = poly::mulmod(a0, b0, &mod_reduced, p);
                    let x = poly::mulmod(a0, b1, &mod_reduced, p);
                    let y = poly::mulmod(a1, b0, &mod_reduced, p);
                    out.extend(x.iter().zip(&y).map(|(u, v)| (u + v) % p));
                    out
                }
            }
        };

        let mut add = vec![0u16; size * size];
        let mut mul = vec![0u16; size * size];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate().skip(i) {
                let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| (x + y) % coeff_mod).collect();
                let si = index(&s);
                let pi = index(&mul_coeffs(a, b));
                add[i * size + j] = si;
                add[j * size + i] = si;
                mul[i * size + j] = pi;
                mul[j * size + i] = pi;
            }
        }
        let neg: Vec<u16> = elements
            .iter()
            .map(|a| index(&a.iter().map(|&x| (coeff_mod - x) % coeff_mod).collect::<Vec<_>>()))
            .collect();
        let unit: Vec<bool> = elements
            .iter()
            .map(|a| match kind {
                RingKind::GaloisRing | RingKind::Field => a.iter().any(|&c| c % p != 0),
                RingKind::DualNumbers => a[..ru].iter().any(|&c| c != 0),
            })
            .collect();
        let one = index(&one_coeffs(width)) as usize;
        let inv: Vec<Option<u16>> = (0..size)
            .map(|i| {
                if !unit[i] {
                    return None;
                }
                (0..size).find(|&j| mul[i * size + j] as usize == one).map(|j| j as u16)
            })
            .collect();
        let residue_map: Vec<u16> = match kind {
            RingKind::Field => (0..size as u16).collect(),
            RingKind::GaloisRing => elements
                .iter()
                .map(|a| coeffs_to_index(&a.iter().map(|&c| c % p).collect::<Vec<_>>(), p) as u16)
                .collect(),
            RingKind::DualNumbers => elements.iter().map(|a| coeffs_to_index(&a[..ru], p) as u16).collect(),
        };

        let units = unit.iter().filter(|&&u| u).count();
        let counts = RingCounts {
            total: size,
            zero_divisors: size - units,
            units,
        };
        let q = q as usize;
        debug_assert_eq!(
            (counts.total, counts.zero_divisors),
            if kind == RingKind::Field { (q, 1) } else { (q * q, q) }
        );

        Ring {
            descriptor: RingDescriptor {
                p,
                r,
                q: q as u32,
                kind,
                modulus_coeffs: modulus,
                counts,
            },
            coeff_mod,
            width,
            elements,
            add,
            mul,
            neg,
            inv,
            unit,
            residue,
            residue_map,
        }
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.descriptor
    }

    pub fn kind(&self) -> RingKind {
        self.descriptor.kind
    }

    pub fn p(&self) -> u32 {
        self.descriptor.p
    }

    pub fn r(&self) -> u32 {
        self.descriptor.r
    }

    /// Order of the residue field.
    pub fn q(&self) -> u32 {
        self.descriptor.q
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.len()).map(Elem::from_index)
    }

    pub fn units(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(|&e| self.is_unit(e))
    }

    pub fn zero_divisors(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(|&e| !self.is_unit(e))
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(coeffs_to_index(&one_coeffs(self.width), self.coeff_mod) as u16)
    }

    /// Canonical coefficient vector. Galois rings and fields store r
    /// polynomial coefficients (constant first); dual numbers a + e·b store
    /// the r coefficients of a followed by those of b.
    pub fn coeffs(&self, a: Elem) -> &[u32] {
        &self.elements[a.index()]
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<Elem, RingError> {
        if coeffs.len() != self.width || coeffs.iter().any(|&c| c >= self.coeff_mod) {
            return Err(RingError::InvalidCoefficients(coeffs.to_vec()));
        }
        Ok(Elem(coeffs_to_index(coeffs, self.coeff_mod) as u16))
    }

    /// Image of an integer under Z → R.
    pub fn from_int(&self, n: i64) -> Elem {
        let m = self.coeff_mod as i64;
        let mut c = vec![0u32; self.width];
        c[0] = n.rem_euclid(m) as u32;
        Elem(coeffs_to_index(&c, self.coeff_mod) as u16)
    }

    /// Class of the polynomial variable x. For r = 1 this is a constant.
    pub fn x(&self) -> Elem {
        if self.descriptor.r == 1 {
            // x ≡ −f₀ when f = x + f₀
            return self.neg(self.from_int(self.descriptor.modulus_coeffs[0] as i64));
        }
        let mut c = vec![0u32; self.width];
        c[1] = 1;
        Elem(coeffs_to_index(&c, self.coeff_mod) as u16)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add[a.index() * self.len() + b.index()])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[a.index() * self.len() + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.index()])
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut result = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    #[inline]
    pub fn is_unit(&self, a: Elem) -> bool {
        self.unit[a.index()]
    }

    #[inline]
    pub fn is_zero_divisor(&self, a: Elem) -> bool {
        !self.unit[a.index()]
    }

    pub fn invert(&self, a: Elem) -> Result<Elem, RingError> {
        self.inv[a.index()].map(Elem).ok_or(RingError::NotAUnit)
    }

    #[inline]
    pub(crate) fn inv_unchecked(&self, a: Elem) -> Elem {
        Elem(self.inv[a.index()].expect("unit"))
    }

    /// Multiplicative order of a unit.
    pub fn order(&self, a: Elem) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        let one = self.one();
        let mut x = a;
        let mut k = 1;
        while x != one {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    /// GF(q) for local rings; the field itself for kind = Field.
    pub fn residue_field(self: &Arc<Self>) -> Arc<Ring> {
        match &self.residue {
            Some(f) => Arc::clone(f),
            None => Arc::clone(self),
        }
    }

    /// Reduction modulo the maximal ideal, as an element of [`Ring::residue_field`].
    #[inline]
    pub fn reduce_mod_ideal(&self, g: Elem) -> Elem {
        Elem(self.residue_map[g.index()])
    }

    fn require_galois(&self) -> Result<(), RingError> {
        match self.kind() {
            RingKind::GaloisRing => Ok(()),
            k => Err(RingError::WrongRingKind(k)),
        }
    }

    /// Teichmüller representative g^q of g.
    pub fn teichmuller(&self, g: Elem) -> Result<Elem, RingError> {
        self.require_galois()?;
        Ok(self.pow(g, self.q() as u64))
    }

    pub fn teichmuller_set(&self) -> Result<TeichmuellerData, RingError> {
        self.require_galois()?;
        let q = self.q() as u64;
        let is_teich = |t: Elem| self.pow(t, q) == t;
        let has_full_order = |t: Elem| self.order(t) == Some(q - 1);
        let x = self.x();
        let zeta = if is_teich(x) && has_full_order(x) {
            x
        } else {
            self.elements()
                .find(|&t| is_teich(t) && has_full_order(t))
                .expect("Galois rings contain a Teichmüller generator")
        };
        let mut elements = vec![self.zero(), self.one()];
        let mut t = zeta;
        for _ in 1..q - 1 {
            elements.push(t);
            t = self.mul(t, zeta);
        }
        Ok(TeichmuellerData { zeta, elements })
    }

    /// Unique (a, b) with a, b Teichmüller and g = a + p·b.
    pub fn decompose(&self, g: Elem) -> Result<(Elem, Elem), RingError> {
        let a = self.teichmuller(g)?;
        let p = self.p();
        let diff = self.coeffs(self.sub(g, a));
        let c: Vec<u32> = diff.iter().map(|&d| d / p).collect();
        debug_assert!(diff.iter().all(|&d| d % p == 0));
        let c = self.element(&c)?;
        Ok((a, self.teichmuller(c)?))
    }

    /// The Frobenius automorphism: a + p·b ↦ a^p + p·b^p on Galois rings,
    /// g ↦ g^p on fields, a + e·b ↦ a^p + e·b^p on dual numbers.
    pub fn frobenius(&self, g: Elem) -> Elem {
        let p = self.p() as u64;
        match self.kind() {
            RingKind::Field => self.pow(g, p),
            RingKind::GaloisRing => {
                let (a, b) = self.decompose(g).expect("Galois ring");
                let pe = self.from_int(p as i64);
                self.add(self.pow(a, p), self.mul(pe, self.pow(b, p)))
            }
            RingKind::DualNumbers => {
                let ru = self.r() as usize;
                let field = self.residue.as_ref().expect("dual numbers have a residue field");
                let c = self.coeffs(g);
                let a = field.element(&c[..ru]).expect("residue coefficients");
                let b = field.element(&c[ru..]).expect("residue coefficients");
                let mut out = field.coeffs(field.pow(a, p)).to_vec();
                out.extend_from_slice(field.coeffs(field.pow(b, p)));
                self.element(&out).expect("valid coefficients")
            }
        }
    }

    /// Binds an index to this ring for checked arithmetic.
    pub fn at(&self, a: Elem) -> RingElement<'_> {
        RingElement { ring: self, elem: a }
    }

    pub fn format(&self, a: Elem) -> String {
        let c = self.coeffs(a);
        let ru = self.r() as usize;
        match self.kind() {
            RingKind::DualNumbers => format!("{}+e{}", format_poly(&c[..ru]), format_poly(&c[ru..])),
            _ => format_poly(c),
        }
    }
}

fn format_poly(c: &[u32]) -> String {
    if c.len() == 1 {
        return c[0].to_string();
    }
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| match (i, v) {
            (0, v) => v.to_string(),
            (1, 1) => "x".to_string(),
            (1, v) => format!("{v}x"),
            (i, 1) => format!("x^{i}"),
            (i, v) => format!("{v}x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else if terms.len() == 1 {
        terms[0].clone()
    } else {
        format!("({})", terms.join("+"))
    }
}

fn one_coeffs(width: usize) -> Vec<u32> {
    let mut c = vec![0; width];
    c[0] = 1;
    c
}

fn coeffs_to_index(c: &[u32], m: u32) -> usize {
    c.iter().fold(0usize, |acc, &x| acc * m as usize + x as usize)
}

fn index_to_coeffs(mut i: usize, m: u32, width: usize) -> Vec<u32> {
    let mut c = vec![0u32; width];
    for slot in c.iter_mut().rev() {
        *slot = (i % m as usize) as u32;
        i /= m as usize;
    }
    c
}

/// An element together with the ring it belongs to.
#[derive(Clone, Copy)]
pub struct RingElement<'r> {
    ring: &'r Ring,
    elem: Elem,
}

impl<'r> RingElement<'r> {
    pub fn ring(&self) -> &'r Ring {
        self.ring
    }

    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn coeffs(&self) -> &'r [u32] {
        self.ring.coeffs(self.elem)
    }

    fn same_ring(&self, other: &RingElement<'_>) -> Result<(), RingError> {
        if std::ptr::eq(self.ring, other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::MixedRings)
        }
    }

    pub fn add(&self, other: &RingElement<'_>) -> Result<RingElement<'r>, RingError> {
        self.same_ring(other)?;
        Ok(self.ring.at(self.ring.add(self.elem, other.elem)))
    }

    pub fn mul(&self, other: &RingElement<'_>) -> Result<RingElement<'r>, RingError> {
        self.same_ring(other)?;
        Ok(self.ring.at(self.ring.mul(self.elem, other.elem)))
    }

    pub fn neg(&self) -> RingElement<'r> {
        self.ring.at(self.ring.neg(self.elem))
    }

    pub fn invert(&self) -> Result<RingElement<'r>, RingError> {
        Ok(self.ring.at(self.ring.invert(self.elem)?))
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(self.elem)
    }

    pub fn is_zero_divisor(&self) -> bool {
        self.ring.is_zero_divisor(self.elem)
    }
}

impl PartialEq for RingElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other).is_ok() && self.elem == other.elem
    }
}

impl fmt::Debug for RingElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.format(self.elem))
    }
}

impl fmt::Display for RingElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.format(self.elem))
    }
}
