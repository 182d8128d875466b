//! Complete sets of q + 1 mutually unbiased bases of ℂ^q for q = p^r.
//!
//! Both constructions are the standard ones from the literature:
//!
//! * odd p: besides the computational basis, basis b ∈ GF(q) has vectors
//!   v_m(x) = ω_p^{tr(b·x² + m·x)} / √q, with tr the field trace onto GF(p);
//! * p = 2: basis b ∈ T_r has vectors v_m(x) = i^{tr((b + 2m)·x)} / √q over
//!   the Teichmüller set of GR(4, r), with tr the Galois-ring trace onto Z₄.
//!
//! Every component is a root of unity over √q, so alongside floating-point
//! vectors each basis keeps an exact exponent form and unbiasedness can be
//! checked with zero tolerance in Z[ω].

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::RootSum;
use crate::ring::{is_prime, make_ring, Elem, Ring, RingError, RingKind, DEFAULT_MAX_ORDER};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MubError {
    #[error("no construction for dimension p={p}, r={r}")]
    UnsupportedDimension { p: u32, r: u32 },
    #[error("bases have dimensions {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("bases carry no exact form with a common root order")]
    NotExact,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Root-of-unity form of a basis: component = ω^k / √scale, or 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactBasis {
    pub root_order: u32,
    pub scale: u32,
    pub vectors: Vec<Vec<Option<u32>>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    pub label: usize,
    pub vectors: Vec<Vec<Complex64>>,
    pub exact: Option<ExactBasis>,
}

impl Basis {
    pub fn dimension(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    pub fn from_exact(label: usize, exact: ExactBasis) -> Self {
        let amp = 1.0 / (exact.scale as f64).sqrt();
        let n = exact.root_order as f64;
        let vectors = exact
            .vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|e| match e {
                        Some(k) => Complex64::from_polar(amp, 2.0 * std::f64::consts::PI * *k as f64 / n),
                        None => Complex64::new(0.0, 0.0),
                    })
                    .collect()
            })
            .collect();
        Basis {
            label,
            vectors,
            exact: Some(exact),
        }
    }
}

pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub max_deviation: f64,
}

/// Largest | |⟨u,v⟩| − 1/√q | over u ∈ a, v ∈ b.
pub fn verify_unbiased(a: &Basis, b: &Basis, tol: f64) -> Result<Verdict, MubError> {
    let (da, db) = (a.dimension(), b.dimension());
    if da != db {
        return Err(MubError::DimensionMismatch(da, db));
    }
    let target = 1.0 / (da as f64).sqrt();
    let max_deviation = a
        .vectors
        .iter()
        .flat_map(|u| b.vectors.iter().map(move |v| (inner(u, v).norm() - target).abs()))
        .fold(0.0, f64::max);
    Ok(Verdict {
        pass: max_deviation <= tol,
        max_deviation,
    })
}

/// Largest entry of |G − I| for the Gram matrix G.
pub fn verify_orthonormal(a: &Basis, tol: f64) -> Verdict {
    let mut max_deviation: f64 = 0.0;
    for (i, u) in a.vectors.iter().enumerate() {
        for (j, v) in a.vectors.iter().enumerate() {
            let expected = if i == j { 1.0 } else { 0.0 };
            max_deviation = max_deviation.max((inner(u, v) - expected).norm());
        }
    }
    Verdict {
        pass: max_deviation <= tol && a.vectors.len() == a.dimension(),
        max_deviation,
    }
}

fn exact_inner(u: &[Option<u32>], v: &[Option<u32>], n: u32) -> RootSum {
    let mut s = RootSum::zero(n);
    for (a, b) in u.iter().zip(v) {
        if let (Some(a), Some(b)) = (a, b) {
            s.add_root(*b as i64 - *a as i64, 1);
        }
    }
    s
}

fn exact_pair<'a>(a: &'a Basis, b: &'a Basis) -> Result<(&'a ExactBasis, &'a ExactBasis), MubError> {
    match (&a.exact, &b.exact) {
        (Some(x), Some(y)) if x.root_order == y.root_order => Ok((x, y)),
        _ => Err(MubError::NotExact),
    }
}

/// Exact check that q·|⟨u,v⟩|² = 1 for every cross pair.
pub fn verify_unbiased_exact(a: &Basis, b: &Basis) -> Result<bool, MubError> {
    let (da, db) = (a.dimension(), b.dimension());
    if da != db {
        return Err(MubError::DimensionMismatch(da, db));
    }
    let (x, y) = exact_pair(a, b)?;
    let q = da as i64;
    let denom = x.scale as i64 * y.scale as i64;
    Ok(x.vectors.iter().all(|u| {
        y.vectors
            .iter()
            .all(|v| exact_inner(u, v, x.root_order).norm_sq().scale(q).equals_integer(denom))
    }))
}

/// Exact check that the Gram matrix is the identity.
pub fn verify_orthonormal_exact(a: &Basis) -> Result<bool, MubError> {
    let x = a.exact.as_ref().ok_or(MubError::NotExact)?;
    let s = x.scale as i64;
    Ok(x.vectors.iter().enumerate().all(|(i, u)| {
        x.vectors
            .iter()
            .enumerate()
            .all(|(j, v)| exact_inner(u, v, x.root_order).equals_integer(if i == j { s } else { 0 }))
    }))
}

/// Pairwise verification results. `deviations[i][j]` is the unbiasedness
/// deviation for i ≠ j and the orthonormality deviation on the diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MubReport {
    pub tolerance: f64,
    pub deviations: Vec<Vec<f64>>,
    pub all_orthonormal: bool,
    pub all_unbiased: bool,
    /// Zero-tolerance verdict in Z[ω], when every basis has an exact form.
    pub exact: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MubSet {
    pub q: usize,
    pub bases: Vec<Basis>,
    pub report: MubReport,
}

impl MubSet {
    /// Verifies the given bases and wraps them with their report.
    pub fn from_bases(bases: Vec<Basis>, tol: f64) -> Result<Self, MubError> {
        let q = bases.first().map_or(0, Basis::dimension);
        let k = bases.len();
        let mut deviations = vec![vec![0.0; k]; k];
        let mut all_orthonormal = true;
        let mut all_unbiased = true;
        for i in 0..k {
            let v = verify_orthonormal(&bases[i], tol);
            deviations[i][i] = v.max_deviation;
            all_orthonormal &= v.pass;
            for j in i + 1..k {
                let v = verify_unbiased(&bases[i], &bases[j], tol)?;
                deviations[i][j] = v.max_deviation;
                deviations[j][i] = v.max_deviation;
                all_unbiased &= v.pass;
            }
        }
        let exact = if bases.iter().all(|b| b.exact.is_some()) {
            let mut ok = true;
            for i in 0..k {
                ok &= verify_orthonormal_exact(&bases[i])?;
                for j in i + 1..k {
                    ok &= verify_unbiased_exact(&bases[i], &bases[j])?;
                }
            }
            Some(ok)
        } else {
            None
        };
        Ok(MubSet {
            q,
            bases,
            report: MubReport {
                tolerance: tol,
                deviations,
                all_orthonormal,
                all_unbiased,
                exact,
            },
        })
    }

    pub fn is_complete(&self) -> bool {
        self.bases.len() == self.q + 1 && self.report.all_orthonormal && self.report.all_unbiased
    }
}

/// Field trace GF(q) → GF(p), as an integer mod p.
pub fn field_trace(field: &Ring, x: Elem) -> u32 {
    let t = frobenius_orbit_sum(field, x);
    let c = field.coeffs(t);
    debug_assert!(c[1..].iter().all(|&v| v == 0), "trace lies in the prime field");
    c[0]
}

/// Galois-ring trace GR(p², r) → Z/p², as an integer mod p².
pub fn galois_ring_trace(ring: &Ring, x: Elem) -> u32 {
    let t = frobenius_orbit_sum(ring, x);
    let c = ring.coeffs(t);
    debug_assert!(c[1..].iter().all(|&v| v == 0), "trace lies in Z/p^2");
    c[0]
}

fn frobenius_orbit_sum(ring: &Ring, x: Elem) -> Elem {
    let mut acc = ring.zero();
    let mut y = x;
    for _ in 0..ring.r() {
        acc = ring.add(acc, y);
        y = ring.frobenius(y);
    }
    acc
}

fn computational_basis(q: usize, root_order: u32) -> ExactBasis {
    ExactBasis {
        root_order,
        scale: 1,
        vectors: (0..q)
            .map(|i| (0..q).map(|j| (i == j).then_some(0)).collect())
            .collect(),
    }
}

pub fn build_mub_set(p: u32, r: u32) -> Result<MubSet, MubError> {
    build_mub_set_with_tolerance(p, r, DEFAULT_TOLERANCE)
}

pub fn build_mub_set_with_tolerance(p: u32, r: u32, tol: f64) -> Result<MubSet, MubError> {
    let unsupported = MubError::UnsupportedDimension { p, r };
    if !is_prime(p) || r == 0 {
        return Err(unsupported);
    }
    match (p as u64).checked_pow(r) {
        Some(q) if q <= DEFAULT_MAX_ORDER as u64 => {}
        _ => return Err(unsupported),
    }
    let exact = if p == 2 {
        galois_ring_bases(r)?
    } else {
        odd_field_bases(p, r)?
    };
    let bases = exact
        .into_iter()
        .enumerate()
        .map(|(label, e)| Basis::from_exact(label, e))
        .collect();
    MubSet::from_bases(bases, tol)
}

fn odd_field_bases(p: u32, r: u32) -> Result<Vec<ExactBasis>, MubError> {
    let field = make_ring(p, r, RingKind::Field, None)?;
    let els: Vec<Elem> = field.elements().collect();
    let q = els.len();
    let mut out = vec![computational_basis(q, p)];
    for &b in &els {
        let vectors = els
            .iter()
            .map(|&m| {
                els.iter()
                    .map(|&x| {
                        let quad = field.mul(b, field.mul(x, x));
                        Some(field_trace(&field, field.add(quad, field.mul(m, x))))
                    })
                    .collect()
            })
            .collect();
        out.push(ExactBasis {
            root_order: p,
            scale: q as u32,
            vectors,
        });
    }
    Ok(out)
}

fn galois_ring_bases(r: u32) -> Result<Vec<ExactBasis>, MubError> {
    let ring = make_ring(2, r, RingKind::GaloisRing, None)?;
    let teich = ring.teichmuller_set()?.elements;
    let q = teich.len();
    let two = ring.from_int(2);
    let mut out = vec![computational_basis(q, 4)];
    for &b in &teich {
        let vectors = teich
            .iter()
            .map(|&m| {
                let coeff = ring.add(b, ring.mul(two, m));
                teich
                    .iter()
                    .map(|&x| Some(galois_ring_trace(&ring, ring.mul(coeff, x))))
                    .collect()
            })
            .collect();
        out.push(ExactBasis {
            root_order: 4,
            scale: q as u32,
            vectors,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: Complex64, re: f64, im: f64) -> bool {
        (a.re - re).abs() < 1e-12 && (a.im - im).abs() < 1e-12
    }

    #[test]
    fn qubit_bases() {
        let set = build_mub_set(2, 1).unwrap();
        assert_eq!(set.bases.len(), 3);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let x = &set.bases[1].vectors;
        assert!(approx(x[0][0], h, 0.0) && approx(x[0][1], h, 0.0));
        assert!(approx(x[1][0], h, 0.0) && approx(x[1][1], -h, 0.0));
        let y = &set.bases[2].vectors;
        assert!(approx(y[0][1], 0.0, h));
        assert!(approx(y[1][1], 0.0, -h));
        assert!(set.is_complete());
        assert_eq!(set.report.exact, Some(true));
    }

    #[test]
    fn computational_vs_hadamard_is_exactly_unbiased() {
        let set = build_mub_set(2, 1).unwrap();
        let v = verify_unbiased(&set.bases[0], &set.bases[1], 0.0).unwrap();
        assert!(v.pass);
        assert!(v.max_deviation <= 1e-16);
    }

    #[test]
    fn basis_is_not_unbiased_with_itself() {
        let set = build_mub_set(3, 1).unwrap();
        let v = verify_unbiased(&set.bases[1], &set.bases[1], 1e-9).unwrap();
        assert!(!v.pass);
        assert!(!verify_unbiased_exact(&set.bases[1], &set.bases[1]).unwrap());
    }

    #[test]
    fn orthonormality() {
        let set = build_mub_set(2, 1).unwrap();
        let v = verify_orthonormal(&set.bases[0], 0.0);
        assert!(v.pass && v.max_deviation == 0.0);
        assert!(verify_orthonormal(&set.bases[2], 1e-15).pass);
        let mut scaled = set.bases[1].clone();
        scaled.vectors[0].iter_mut().for_each(|c| *c *= 2.0);
        assert!(!verify_orthonormal(&scaled, 1e-9).pass);
    }

    #[test]
    fn dimension_mismatch() {
        let a = build_mub_set(2, 1).unwrap();
        let b = build_mub_set(3, 1).unwrap();
        assert_eq!(
            verify_unbiased(&a.bases[0], &b.bases[0], 1e-9).unwrap_err(),
            MubError::DimensionMismatch(2, 3)
        );
    }

    #[test]
    fn unsupported_dimensions() {
        assert!(matches!(
            build_mub_set(6, 1),
            Err(MubError::UnsupportedDimension { .. })
        ));
        assert!(matches!(
            build_mub_set(2, 5),
            Err(MubError::UnsupportedDimension { .. })
        ));
    }

    #[test]
    fn traces() {
        let gf4 = make_ring(2, 2, RingKind::Field, None).unwrap();
        let traces: Vec<u32> = gf4.elements().map(|x| field_trace(&gf4, x)).collect();
        // elements in order 0, x, 1, x+1
        assert_eq!(traces, vec![0, 1, 0, 1]);
        let gr = make_ring(2, 2, RingKind::GaloisRing, None).unwrap();
        let t = gr.teichmuller_set().unwrap();
        assert_eq!(galois_ring_trace(&gr, gr.one()), 2);
        // ζ + ζ² = −1 in GR(4, 2)
        assert_eq!(galois_ring_trace(&gr, t.zeta), 3);
    }
}
