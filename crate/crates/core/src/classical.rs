//! The classical plane PG(2, q), built as the Hjelmslev plane over GF(q).

use std::collections::HashSet;

use crate::plane::{PlaneError, PlaneModel, ProjPoint};
use crate::ring::{prime_power, RingBuilder, RingKind, DEFAULT_MAX_ORDER};

pub fn enumerate_classical(q: u32) -> Result<PlaneModel, PlaneError> {
    let (p, r) = prime_power(q).ok_or(PlaneError::UnsupportedOrder(q))?;
    if q > DEFAULT_MAX_ORDER {
        return Err(PlaneError::UnsupportedOrder(q));
    }
    let field = RingBuilder::new(p, r, RingKind::Field)
        .build()
        .map_err(|_| PlaneError::UnsupportedOrder(q))?;
    PlaneModel::enumerate(field)
}

/// True iff `points` are q + 1 distinct points of `plane`, no three on a line.
pub fn is_nondegenerate_conic_image(points: &[ProjPoint], plane: &PlaneModel) -> bool {
    let q = plane.ring().q() as usize;
    if points.len() != q + 1 {
        return false;
    }
    let Some(idx) = points
        .iter()
        .map(|p| plane.point_index(p))
        .collect::<Option<Vec<usize>>>()
    else {
        return false;
    };
    if idx.iter().collect::<HashSet<_>>().len() != idx.len() {
        return false;
    }
    (0..plane.lines().len()).all(|l| idx.iter().filter(|&&p| plane.is_incident(l, p)).count() <= 2)
}
