//! Cardinality-level correspondence between a complete MUB set of ℂ^q and
//! the neighbour classes of a proper conic in PH(2, q).
//!
//! Basis k is sent to the k-th conic class and vector j of that basis to the
//! j-th point of the class. No intrinsic vector-to-point map is known; the
//! certificate shows that this index-order bijection respects the structure:
//! orthogonal vectors land on neighbour points and unbiased vectors on
//! remote ones.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::classical::is_nondegenerate_conic_image;
use crate::conic::{conic_neighbour_classes, is_proper, ConicAnalysis, ConicError, ProperVerdict};
use crate::mub::{inner, MubSet};
use crate::plane::{PlaneError, PlaneModel};
use crate::ring::RingDescriptor;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CorrespondenceError {
    #[error("MUB set has {bases} bases, a complete set in dimension {q} has {}", q + 1)]
    IncompleteMubSet { bases: usize, q: usize },
    #[error("conic is not proper: {0}")]
    ImproperConic(String),
    #[error("structural check `{check}` failed: {detail}")]
    StructuralMismatch { check: &'static str, detail: String },
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

impl From<ConicError> for CorrespondenceError {
    fn from(e: ConicError) -> Self {
        CorrespondenceError::ImproperConic(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrespondenceCertificate {
    pub q: usize,
    pub ring: RingDescriptor,
    pub conic_coeffs: Vec<Vec<u32>>,
    /// basis label → conic class index.
    pub basis_to_class: Vec<usize>,
    /// vector_to_point[k][j]: plane point index of vector j of basis k.
    pub vector_to_point: Vec<Vec<usize>>,
    pub checks: Vec<CheckResult>,
}

impl CorrespondenceCertificate {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub const CHECK_NAMES: [&str; 5] = [
    "bases_match_classes",
    "vectors_match_points",
    "orthogonal_iff_neighbour",
    "unbiased_iff_remote",
    "modulo_p_collapse",
];

/// Builds the index-order bijection and runs the five structural checks.
/// `tol` bounds the floating inner-product comparisons.
pub fn certify(
    mubs: &MubSet,
    analysis: &ConicAnalysis,
    model: &PlaneModel,
    tol: f64,
) -> Result<CorrespondenceCertificate, CorrespondenceError> {
    let q = model.ring().q() as usize;
    if mubs.q != q || mubs.bases.len() != q + 1 || !mubs.is_complete() {
        return Err(CorrespondenceError::IncompleteMubSet {
            bases: mubs.bases.len(),
            q: mubs.q,
        });
    }
    if is_proper(&analysis.conic, model)? == ProperVerdict::Improper {
        return Err(CorrespondenceError::ImproperConic(analysis.conic.describe()));
    }
    let classes = conic_neighbour_classes(analysis, model)?;

    let basis_to_class: Vec<usize> = (0..mubs.bases.len()).collect();
    let vector_to_point: Vec<Vec<usize>> = mubs
        .bases
        .iter()
        .zip(&basis_to_class)
        .map(|(basis, &k)| classes[k].members.iter().copied().take(basis.vectors.len()).collect())
        .collect();

    let mut checks = Vec::with_capacity(5);
    checks.push(CheckResult {
        name: CHECK_NAMES[0],
        pass: mubs.bases.len() == classes.len(),
        detail: format!("{} bases, {} classes", mubs.bases.len(), classes.len()),
    });

    let sizes_ok = mubs
        .bases
        .iter()
        .zip(&basis_to_class)
        .all(|(b, &k)| b.vectors.len() == classes[k].members.len());
    checks.push(CheckResult {
        name: CHECK_NAMES[1],
        pass: sizes_ok,
        detail: format!("{} vectors per basis, {} points per class", q, classes[0].members.len()),
    });

    // Every ordered pair of distinct vectors, tagged by whether it stays in one basis.
    let flat: Vec<(usize, usize)> = (0..mubs.bases.len())
        .flat_map(|k| (0..mubs.bases[k].vectors.len()).map(move |j| (k, j)))
        .collect();
    let target = 1.0 / (q as f64).sqrt();
    let mut orth_failures = 0usize;
    let mut unbiased_failures = 0usize;
    let mut orth_pairs = 0usize;
    let mut cross_pairs = 0usize;
    for (a, &(ka, ja)) in flat.iter().enumerate() {
        for &(kb, jb) in &flat[a + 1..] {
            let overlap = inner(&mubs.bases[ka].vectors[ja], &mubs.bases[kb].vectors[jb]).norm();
            let pa = vector_to_point[ka][ja];
            let pb = vector_to_point[kb][jb];
            let neighbour = model.neighbour_idx(pa, pb);
            let orthogonal = overlap <= tol;
            let unbiased = (overlap - target).abs() <= tol;
            if orthogonal != neighbour {
                orth_failures += 1;
            }
            if ka == kb {
                orth_pairs += 1;
            } else {
                cross_pairs += 1;
                if unbiased != !neighbour {
                    unbiased_failures += 1;
                }
            }
        }
    }
    checks.push(CheckResult {
        name: CHECK_NAMES[2],
        pass: orth_failures == 0,
        detail: format!("{orth_pairs} in-basis pairs, {orth_failures} mismatches over all pairs"),
    });
    checks.push(CheckResult {
        name: CHECK_NAMES[3],
        pass: unbiased_failures == 0,
        detail: format!("{cross_pairs} cross-basis pairs, {unbiased_failures} mismatches"),
    });

    let classical = model.classical_plane()?;
    let images: Vec<_> = basis_to_class.iter().map(|&k| analysis.classical_image[k]).collect();
    let distinct = images.iter().collect::<HashSet<_>>().len();
    let collapse_ok = distinct == q + 1 && is_nondegenerate_conic_image(&images, &classical);
    checks.push(CheckResult {
        name: CHECK_NAMES[4],
        pass: collapse_ok,
        detail: format!("{distinct} distinct PG(2,{q}) points, no three collinear: {collapse_ok}"),
    });

    if let Some(failed) = checks.iter().find(|c| !c.pass) {
        return Err(CorrespondenceError::StructuralMismatch {
            check: failed.name,
            detail: failed.detail.clone(),
        });
    }

    let ring = model.ring();
    Ok(CorrespondenceCertificate {
        q,
        ring: ring.descriptor().clone(),
        conic_coeffs: analysis
            .conic
            .coeffs()
            .iter()
            .map(|&c| ring.coeffs(c).to_vec())
            .collect(),
        basis_to_class,
        vector_to_point,
        checks,
    })
}
