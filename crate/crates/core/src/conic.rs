//! Conics Σ_{i≤j} c_ij x̌_i x̌_j = 0 in PH(2, R).
//!
//! Point sets are always found by evaluating the form at every canonical
//! point. The two-chart parametrization of the canonical conic is kept as an
//! independent cross-check.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::classical::is_nondegenerate_conic_image;
use crate::plane::{NeighbourClass, PlaneError, PlaneModel, ProjPoint, Triple};
use crate::ring::{Elem, Ring};

/// Coefficient order used throughout: (c11, c22, c33, c12, c13, c23).
const MONOMIALS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)];

/// Largest ring (by element count) for which properness is decided by
/// searching all of GL(3, R).
const EXACT_SEARCH_MAX_RING: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConicError {
    #[error("at least one conic coefficient must be a unit")]
    AllCoefficientsNonUnit,
    #[error("conic splits into {classes} neighbour classes of sizes {sizes:?}, expected {expected} classes of {q}")]
    NotAProperConic {
        classes: usize,
        sizes: Vec<usize>,
        expected: usize,
        q: usize,
    },
    #[error("conic and plane are defined over different rings")]
    MixedRings,
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

#[derive(Debug, Clone)]
pub struct Conic {
    ring: Arc<Ring>,
    coeffs: [Elem; 6],
}

impl PartialEq for Conic {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.coeffs == other.coeffs
    }
}

impl Conic {
    pub fn new(ring: Arc<Ring>, coeffs: [Elem; 6]) -> Result<Self, ConicError> {
        if !coeffs.iter().any(|&c| ring.is_unit(c)) {
            return Err(ConicError::AllCoefficientsNonUnit);
        }
        Ok(Conic { ring, coeffs })
    }

    /// Integer coefficients mapped through Z → R.
    pub fn from_ints(ring: Arc<Ring>, coeffs: [i64; 6]) -> Result<Self, ConicError> {
        let c = coeffs.map(|n| ring.from_int(n));
        Conic::new(ring, c)
    }

    /// x̌₁x̌₃ − x̌₂² = 0.
    pub fn canonical(ring: Arc<Ring>) -> Self {
        Conic::from_ints(ring, [0, -1, 0, 0, 1, 0]).expect("canonical conic has unit coefficients")
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Elem; 6] {
        &self.coeffs
    }

    pub fn evaluate(&self, x: &Triple) -> Elem {
        let ring = &self.ring;
        MONOMIALS
            .iter()
            .zip(&self.coeffs)
            .fold(ring.zero(), |acc, (&(i, j), &c)| {
                ring.add(acc, ring.mul(c, ring.mul(x[i], x[j])))
            })
    }

    pub fn contains(&self, x: &Triple) -> bool {
        self.evaluate(x) == self.ring.zero()
    }

    /// Human-readable form such as `1·x1x3 + 3·x2^2`.
    pub fn describe(&self) -> String {
        let names = ["x1^2", "x2^2", "x3^2", "x1x2", "x1x3", "x2x3"];
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .zip(names)
            .filter(|(&c, _)| c != self.ring.zero())
            .map(|(&c, n)| format!("{}·{}", self.ring.format(c), n))
            .collect();
        terms.join(" + ")
    }

    fn check_ring(&self, model: &PlaneModel) -> Result<(), ConicError> {
        if self.ring.as_ref() == model.ring().as_ref() {
            Ok(())
        } else {
            Err(ConicError::MixedRings)
        }
    }
}

/// Indices of the plane's points that satisfy the conic's equation.
pub fn conic_points(conic: &Conic, model: &PlaneModel) -> Result<Vec<usize>, ConicError> {
    conic.check_ring(model)?;
    Ok(model
        .points()
        .iter()
        .enumerate()
        .filter(|(_, p)| conic.contains(&p.coords))
        .map(|(i, _)| i)
        .collect())
}

/// The charts σ ↦ (1, σ, σ²) over all of R and δ ↦ (0, δ, 1) over the
/// zero divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicParametrization {
    pub affine: Vec<ProjPoint>,
    pub infinity: Vec<ProjPoint>,
}

pub fn parametrize_canonical(ring: &Ring) -> ConicParametrization {
    let one = ring.one();
    let zero = ring.zero();
    ConicParametrization {
        affine: ring
            .elements()
            .map(|s| ProjPoint {
                coords: [one, s, ring.mul(s, s)],
            })
            .collect(),
        infinity: ring
            .zero_divisors()
            .map(|d| ProjPoint { coords: [zero, d, one] })
            .collect(),
    }
}

/// A conic's point set and its decomposition into neighbour-class traces.
#[derive(Debug, Clone)]
pub struct ConicAnalysis {
    pub conic: Conic,
    pub points: Vec<usize>,
    pub classes: Vec<NeighbourClass>,
    /// PG(2, q) images of the classes, in class order.
    pub classical_image: Vec<ProjPoint>,
}

impl ConicAnalysis {
    pub fn new(conic: Conic, model: &PlaneModel) -> Result<Self, ConicError> {
        let points = conic_points(&conic, model)?;
        let classes = model.traces(&points);
        let classical_image = classes.iter().map(|c| ProjPoint { coords: c.image }).collect();
        Ok(ConicAnalysis {
            conic,
            points,
            classes,
            classical_image,
        })
    }

    /// q(q+1) points in q+1 classes of q whose images form a nondegenerate
    /// conic of PG(2, q).
    pub fn has_proper_signature(&self, model: &PlaneModel) -> Result<bool, ConicError> {
        let q = model.ring().q() as usize;
        if self.points.len() != q * (q + 1)
            || self.classes.len() != q + 1
            || self.classes.iter().any(|c| c.members.len() != q)
        {
            return Ok(false);
        }
        let classical = model.classical_plane()?;
        Ok(is_nondegenerate_conic_image(&self.classical_image, &classical))
    }
}

/// The q + 1 neighbour-class traces of a proper conic, each of size q.
pub fn conic_neighbour_classes<'a>(
    analysis: &'a ConicAnalysis,
    model: &PlaneModel,
) -> Result<&'a [NeighbourClass], ConicError> {
    let q = model.ring().q() as usize;
    let sizes: Vec<usize> = analysis.classes.iter().map(|c| c.members.len()).collect();
    if sizes.len() != q + 1 || sizes.iter().any(|&s| s != q) {
        return Err(ConicError::NotAProperConic {
            classes: sizes.len(),
            sizes,
            expected: q + 1,
            q,
        });
    }
    Ok(&analysis.classes)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionEntry {
    pub first: usize,
    pub second: usize,
    /// Point indices common to both conics, ascending.
    pub common: Vec<usize>,
}

/// Common points of every unordered pair (i < j), ordered by pair.
pub fn pairwise_intersections(conics: &[Conic], model: &PlaneModel) -> Result<Vec<IntersectionEntry>, ConicError> {
    let sets = conics
        .iter()
        .map(|c| conic_points(c, model))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let common = sets[i]
                .iter()
                .copied()
                .filter(|p| sets[j].binary_search(p).is_ok())
                .collect();
            out.push(IntersectionEntry {
                first: i,
                second: j,
                common,
            });
        }
    }
    Ok(out)
}

/// Five proper conics of PH(2, 2) with distinct point sets, as (label, conic).
pub fn five_proper_conics(ring: &Arc<Ring>) -> Vec<(&'static str, Conic)> {
    let specs: [(&str, [i64; 6]); 5] = [
        ("x1x3 - x2^2", [0, -1, 0, 0, 1, 0]),
        ("x1x2 - x3^2", [0, 0, -1, 1, 0, 0]),
        ("x2x3 - x1^2", [-1, 0, 0, 0, 0, 1]),
        ("x1x2 + x3^2", [0, 0, 1, 1, 0, 0]),
        ("x1x2 + x1x3 + x2x3", [0, 0, 0, 1, 1, 1]),
    ];
    specs
        .into_iter()
        .map(|(name, c)| (name, Conic::from_ints(Arc::clone(ring), c).expect("unit coefficient")))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProperVerdict {
    Proper,
    Improper,
    Unknown,
}

/// Decides whether some invertible substitution x = M·y removes a variable.
///
/// Rings with at most four elements are settled by exhausting GL(3, R).
/// Larger rings get a structural verdict: a conic that syntactically misses
/// a variable or lacks the proper-conic point signature is Improper, a unit
/// multiple of the canonical form is Proper, anything else is Unknown.
pub fn is_proper(conic: &Conic, model: &PlaneModel) -> Result<ProperVerdict, ConicError> {
    conic.check_ring(model)?;
    let ring = conic.ring.as_ref();
    if missing_variable(ring, &conic.coeffs) {
        return Ok(ProperVerdict::Improper);
    }
    if ring.len() <= EXACT_SEARCH_MAX_RING {
        return Ok(ProperDecider::new(ring).decide(&conic.coeffs));
    }
    let canonical = Conic::canonical(Arc::clone(&conic.ring));
    let is_canonical_multiple = ring.units().any(|u| {
        canonical
            .coeffs
            .iter()
            .zip(&conic.coeffs)
            .all(|(&a, &b)| ring.mul(u, a) == b)
    });
    if is_canonical_multiple {
        return Ok(ProperVerdict::Proper);
    }
    let analysis = ConicAnalysis::new(conic.clone(), model)?;
    if !analysis.has_proper_signature(model)? {
        return Ok(ProperVerdict::Improper);
    }
    Ok(ProperVerdict::Unknown)
}

fn missing_variable(ring: &Ring, c: &[Elem; 6]) -> bool {
    (0..3).any(|v| {
        MONOMIALS
            .iter()
            .zip(c)
            .all(|(&(i, j), &x)| (i != v && j != v) || x == ring.zero())
    })
}

/// Exhaustive search over GL(3, R) for a small ring R.
pub struct ProperDecider<'r> {
    ring: &'r Ring,
    matrices: Vec<[[Elem; 3]; 3]>,
}

impl<'r> ProperDecider<'r> {
    pub fn new(ring: &'r Ring) -> Self {
        let els: Vec<Elem> = ring.elements().collect();
        let n = els.len();
        let mut matrices = Vec::new();
        let mut digits = [0usize; 9];
        loop {
            let m = [
                [els[digits[0]], els[digits[1]], els[digits[2]]],
                [els[digits[3]], els[digits[4]], els[digits[5]]],
                [els[digits[6]], els[digits[7]], els[digits[8]]],
            ];
            if ring.is_unit(det3(ring, &m)) {
                matrices.push(m);
            }
            let mut k = 8;
            loop {
                digits[k] += 1;
                if digits[k] < n {
                    break;
                }
                digits[k] = 0;
                if k == 0 {
                    return ProperDecider { ring, matrices };
                }
                k -= 1;
            }
        }
    }

    /// Number of invertible matrices searched.
    pub fn group_order(&self) -> usize {
        self.matrices.len()
    }

    pub fn transform(&self, c: &[Elem; 6], m: &[[Elem; 3]; 3]) -> [Elem; 6] {
        let ring = self.ring;
        let mut out = [ring.zero(); 6];
        for (&(i, j), &cij) in MONOMIALS.iter().zip(c) {
            if cij == ring.zero() {
                continue;
            }
            for k in 0..3 {
                for l in 0..3 {
                    let term = ring.mul(cij, ring.mul(m[i][k], m[j][l]));
                    let slot = monomial_slot(k.min(l), k.max(l));
                    out[slot] = ring.add(out[slot], term);
                }
            }
        }
        out
    }

    pub fn decide(&self, c: &[Elem; 6]) -> ProperVerdict {
        let reducible = self
            .matrices
            .iter()
            .any(|m| missing_variable(self.ring, &self.transform(c, m)));
        if reducible {
            ProperVerdict::Improper
        } else {
            ProperVerdict::Proper
        }
    }
}

fn monomial_slot(i: usize, j: usize) -> usize {
    match (i, j) {
        (0, 0) => 0,
        (1, 1) => 1,
        (2, 2) => 2,
        (0, 1) => 3,
        (0, 2) => 4,
        (1, 2) => 5,
        _ => unreachable!("i <= j < 3"),
    }
}

fn det3(ring: &Ring, m: &[[Elem; 3]; 3]) -> Elem {
    let minor = |a: Elem, b: Elem, c: Elem, d: Elem| ring.sub(ring.mul(a, d), ring.mul(b, c));
    let t0 = ring.mul(m[0][0], minor(m[1][1], m[1][2], m[2][1], m[2][2]));
    let t1 = ring.mul(m[0][1], minor(m[1][0], m[1][2], m[2][0], m[2][2]));
    let t2 = ring.mul(m[0][2], minor(m[1][0], m[1][1], m[2][0], m[2][1]));
    ring.add(ring.sub(t0, t1), t2)
}
