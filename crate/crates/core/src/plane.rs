//! The projective Hjelmslev plane PH(2, R) over a finite local ring R.
//!
//! Points and lines are unit-scaling classes of coordinate triples with at
//! least one unit entry. Each class is stored through its canonical
//! representative: the triple whose leftmost unit coordinate is 1. A point
//! and a line are incident when the dot product of their triples vanishes.
//!
//! Over a field the same code yields the classical plane PG(2, q).

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::ring::{Elem, Ring, DEFAULT_MAX_ORDER};

/// Orders above this are enumerated without a materialized incidence matrix.
pub const MAX_MATERIALIZED_ORDER: u32 = 5;

pub type Triple = [Elem; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error("ring order {q} exceeds the plane cap {cap}")]
    RingTooLarge { q: u32, cap: u32 },
    #[error("{0} is not a supported prime power order")]
    UnsupportedOrder(u32),
    #[error("line is not a canonical line of this plane")]
    LineNotInPlane,
    #[error("point is not a canonical point of this plane")]
    PointNotInPlane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    pub coords: Triple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjLine {
    pub coords: Triple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    Points,
    Lines,
}

/// A set of pairwise neighbour points (or lines) together with its image in
/// PG(2, q). Members are indices into the model's point (or line) list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighbourClass {
    pub members: Vec<usize>,
    pub image: Triple,
}

/// Scales a triple so that its leftmost unit coordinate becomes 1.
/// Returns `None` when no coordinate is a unit.
pub fn canonicalize(ring: &Ring, t: Triple) -> Option<Triple> {
    let u = t.iter().copied().find(|&c| ring.is_unit(c))?;
    let s = ring.inv_unchecked(u);
    Some(t.map(|c| ring.mul(s, c)))
}

pub fn dot(ring: &Ring, a: &Triple, b: &Triple) -> Elem {
    let s = ring.add(ring.mul(a[0], b[0]), ring.mul(a[1], b[1]));
    ring.add(s, ring.mul(a[2], b[2]))
}

/// Dense row-major bit matrix.
#[derive(Debug, Clone)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize) {
        self.bits[r * self.words_per_row + c / 64] |= 1 << (c % 64);
    }

    pub fn row_count(&self, r: usize) -> usize {
        let w = self.words_per_row;
        self.bits[r * w..(r + 1) * w]
            .iter()
            .map(|x| x.count_ones() as usize)
            .sum()
    }
}

/// Enumerated plane over a finite local ring.
#[derive(Debug, Clone)]
pub struct PlaneModel {
    ring: Arc<Ring>,
    field: Arc<Ring>,
    points: Vec<ProjPoint>,
    lines: Vec<ProjLine>,
    index: HashMap<Triple, usize>,
    /// Rows are points, columns are lines.
    incidence: Option<BitMatrix>,
    point_classes: Vec<NeighbourClass>,
    line_classes: Vec<NeighbourClass>,
    point_class_of: Vec<usize>,
    line_class_of: Vec<usize>,
}

impl PlaneModel {
    pub fn enumerate(ring: Arc<Ring>) -> Result<Self, PlaneError> {
        Self::enumerate_with_cap(ring, DEFAULT_MAX_ORDER)
    }

    pub fn enumerate_with_cap(ring: Arc<Ring>, cap: u32) -> Result<Self, PlaneError> {
        let q = ring.q();
        if q > cap {
            return Err(PlaneError::RingTooLarge { q, cap });
        }
        let one = ring.one();
        let mut triples = Vec::new();
        for a in ring.elements() {
            for b in ring.elements() {
                for c in ring.elements() {
                    let t = [a, b, c];
                    if t.iter().copied().find(|&x| ring.is_unit(x)) == Some(one) {
                        triples.push(t);
                    }
                }
            }
        }
        let index: HashMap<Triple, usize> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();

        let incidence = (q <= MAX_MATERIALIZED_ORDER).then(|| {
            let n = triples.len();
            let zero = ring.zero();
            let mut m = BitMatrix::new(n, n);
            for (pi, pt) in triples.iter().enumerate() {
                for (li, lt) in triples.iter().enumerate() {
                    if dot(&ring, lt, pt) == zero {
                        m.set(pi, li);
                    }
                }
            }
            m
        });

        let field = ring.residue_field();
        let image_of = |t: &Triple| -> Triple {
            let reduced = t.map(|c| ring.reduce_mod_ideal(c));
            canonicalize(&field, reduced).expect("canonical triples have a unit coordinate")
        };
        let (classes, class_of) = group_by_image(&triples, image_of);

        Ok(PlaneModel {
            points: triples.iter().map(|&coords| ProjPoint { coords }).collect(),
            lines: triples.iter().map(|&coords| ProjLine { coords }).collect(),
            point_classes: classes.clone(),
            line_classes: classes,
            point_class_of: class_of.clone(),
            line_class_of: class_of,
            ring,
            field,
            index,
            incidence,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn residue_field(&self) -> &Arc<Ring> {
        &self.field
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn incidence_matrix(&self) -> Option<&BitMatrix> {
        self.incidence.as_ref()
    }

    pub fn point_index(&self, p: &ProjPoint) -> Option<usize> {
        self.index.get(&p.coords).copied()
    }

    pub fn line_index(&self, l: &ProjLine) -> Option<usize> {
        self.index.get(&l.coords).copied()
    }

    /// Whether the bilinear form ľ·x̌ vanishes. Independent of the chosen
    /// representatives, so non-canonical triples are accepted.
    pub fn incident(&self, line: &ProjLine, point: &ProjPoint) -> bool {
        dot(&self.ring, &line.coords, &point.coords) == self.ring.zero()
    }

    #[inline]
    pub fn is_incident(&self, line: usize, point: usize) -> bool {
        match &self.incidence {
            Some(m) => m.get(point, line),
            None => self.incident(&self.lines[line], &self.points[point]),
        }
    }

    pub fn points_on_line(&self, line: usize) -> Vec<usize> {
        (0..self.points.len()).filter(|&p| self.is_incident(line, p)).collect()
    }

    pub fn lines_through_point(&self, point: usize) -> Vec<usize> {
        (0..self.lines.len()).filter(|&l| self.is_incident(l, point)).collect()
    }

    /// Image in PG(2, q) under coordinate-wise reduction, canonicalized.
    pub fn epimorphism(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint {
            coords: self.reduce_triple(&p.coords),
        }
    }

    pub fn line_epimorphism(&self, l: &ProjLine) -> ProjLine {
        ProjLine {
            coords: self.reduce_triple(&l.coords),
        }
    }

    fn reduce_triple(&self, t: &Triple) -> Triple {
        let reduced = t.map(|c| self.ring.reduce_mod_ideal(c));
        canonicalize(&self.field, reduced).expect("triple with a unit coordinate")
    }

    /// Neighbour test via equality of residue images.
    pub fn neighbour(&self, a: &ProjPoint, b: &ProjPoint) -> bool {
        self.reduce_triple(&a.coords) == self.reduce_triple(&b.coords)
    }

    pub fn lines_neighbour(&self, a: &ProjLine, b: &ProjLine) -> bool {
        self.reduce_triple(&a.coords) == self.reduce_triple(&b.coords)
    }

    #[inline]
    pub fn neighbour_idx(&self, a: usize, b: usize) -> bool {
        self.point_class_of[a] == self.point_class_of[b]
    }

    pub fn neighbour_classes(&self, kind: ElementKind) -> &[NeighbourClass] {
        match kind {
            ElementKind::Points => &self.point_classes,
            ElementKind::Lines => &self.line_classes,
        }
    }

    /// Index of the neighbour class containing the given point (or line).
    pub fn class_of(&self, kind: ElementKind, index: usize) -> usize {
        match kind {
            ElementKind::Points => self.point_class_of[index],
            ElementKind::Lines => self.line_class_of[index],
        }
    }

    /// Points of `line` grouped into traces of the global neighbour classes,
    /// ordered by class index.
    pub fn line_class_structure(&self, line: &ProjLine) -> Result<Vec<NeighbourClass>, PlaneError> {
        let li = self.line_index(line).ok_or(PlaneError::LineNotInPlane)?;
        Ok(self.traces(&self.points_on_line(li)))
    }

    /// Groups a set of point indices by neighbour class.
    pub fn traces(&self, points: &[usize]) -> Vec<NeighbourClass> {
        let mut by_class: Vec<(usize, Vec<usize>)> = Vec::new();
        for &p in points {
            let c = self.point_class_of[p];
            match by_class.iter_mut().find(|(k, _)| *k == c) {
                Some((_, m)) => m.push(p),
                None => by_class.push((c, vec![p])),
            }
        }
        by_class.sort_by_key(|(k, _)| *k);
        by_class
            .into_iter()
            .map(|(k, mut members)| {
                members.sort_unstable();
                NeighbourClass {
                    members,
                    image: self.point_classes[k].image,
                }
            })
            .collect()
    }

    /// PG(2, q) over the residue field, in the same element order used for
    /// class images; class `i` maps to classical point `i`.
    pub fn classical_plane(&self) -> Result<PlaneModel, PlaneError> {
        PlaneModel::enumerate_with_cap(Arc::clone(&self.field), self.field.q())
    }

    pub fn format_triple(&self, t: &Triple) -> String {
        format_triple(&self.ring, t)
    }
}

pub fn format_triple(ring: &Ring, t: &Triple) -> String {
    let parts: Vec<String> = t.iter().map(|&c| ring.format(c)).collect();
    format!("({})", parts.join(","))
}

/// Partitions triples by image; classes come out in lexicographic image order.
fn group_by_image(triples: &[Triple], image_of: impl Fn(&Triple) -> Triple) -> (Vec<NeighbourClass>, Vec<usize>) {
    let images: Vec<Triple> = triples.iter().map(&image_of).collect();
    let mut distinct = images.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let slot: HashMap<Triple, usize> = distinct.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut classes: Vec<NeighbourClass> = distinct
        .iter()
        .map(|&image| NeighbourClass {
            members: Vec::new(),
            image,
        })
        .collect();
    let class_of: Vec<usize> = images
        .iter()
        .enumerate()
        .map(|(i, img)| {
            let k = slot[img];
            classes[k].members.push(i);
            k
        })
        .collect();
    (classes, class_of)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, RingKind};

    fn z4_plane() -> PlaneModel {
        PlaneModel::enumerate(make_ring(2, 1, RingKind::GaloisRing, None).unwrap()).unwrap()
    }

    fn pt(plane: &PlaneModel, c: [i64; 3]) -> ProjPoint {
        ProjPoint {
            coords: c.map(|x| plane.ring().from_int(x)),
        }
    }

    fn ln(plane: &PlaneModel, c: [i64; 3]) -> ProjLine {
        ProjLine {
            coords: c.map(|x| plane.ring().from_int(x)),
        }
    }

    #[test]
    fn z4_counts() {
        let plane = z4_plane();
        assert_eq!(plane.points().len(), 28);
        assert_eq!(plane.lines().len(), 28);
        for l in 0..28 {
            assert_eq!(plane.points_on_line(l).len(), 6);
        }
    }

    #[test]
    fn z4_incidence_examples() {
        let plane = z4_plane();
        assert!(plane.incident(&ln(&plane, [1, 1, 1]), &pt(&plane, [1, 1, 2])));
        assert!(!plane.incident(&ln(&plane, [1, 0, 0]), &pt(&plane, [1, 0, 0])));
        // representative independence: scale the point by 3
        assert!(plane.incident(&ln(&plane, [1, 1, 1]), &pt(&plane, [3, 3, 2])));
    }

    #[test]
    fn z4_neighbours() {
        let plane = z4_plane();
        assert!(plane.neighbour(&pt(&plane, [1, 0, 0]), &pt(&plane, [1, 2, 0])));
        assert!(!plane.neighbour(&pt(&plane, [1, 0, 0]), &pt(&plane, [1, 1, 0])));
        let classes = plane.neighbour_classes(ElementKind::Points);
        assert_eq!(classes.len(), 7);
        assert!(classes.iter().all(|c| c.members.len() == 4));
        let lines = plane.neighbour_classes(ElementKind::Lines);
        assert_eq!(lines.len(), 7);
    }

    #[test]
    fn z4_epimorphism() {
        let plane = z4_plane();
        let img = plane.epimorphism(&pt(&plane, [1, 2, 0]));
        let f = plane.residue_field();
        assert_eq!(img.coords, [f.one(), f.zero(), f.zero()]);
        for class in plane.neighbour_classes(ElementKind::Points) {
            for &m in &class.members {
                assert_eq!(plane.epimorphism(&plane.points()[m]).coords, class.image);
            }
        }
    }

    #[test]
    fn z4_line_traces() {
        let plane = z4_plane();
        for line in plane.lines() {
            let traces = plane.line_class_structure(line).unwrap();
            assert_eq!(traces.len(), 3);
            assert!(traces.iter().all(|t| t.members.len() == 2));
        }
        let bogus = ProjLine {
            coords: [plane.ring().from_int(2); 3],
        };
        assert_eq!(plane.line_class_structure(&bogus), Err(PlaneError::LineNotInPlane));
    }

    #[test]
    fn z9_counts_and_classes() {
        let plane = PlaneModel::enumerate(make_ring(3, 1, RingKind::GaloisRing, None).unwrap()).unwrap();
        assert_eq!(plane.points().len(), 117);
        let classes = plane.neighbour_classes(ElementKind::Points);
        assert_eq!(classes.len(), 13);
        assert!(classes.iter().all(|c| c.members.len() == 9));
        assert_eq!(plane.classical_plane().unwrap().points().len(), 13);
    }

    #[test]
    fn dual_numbers_plane_has_28_points() {
        // oracle: triples with a unit coordinate divided by the number of unit scalars
        let ring = make_ring(2, 1, RingKind::DualNumbers, None).unwrap();
        let all: Vec<Elem> = ring.elements().collect();
        let mut with_unit = 0;
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    if [a, b, c].iter().any(|&x| ring.is_unit(x)) {
                        with_unit += 1;
                    }
                }
            }
        }
        let units = ring.units().count();
        let plane = PlaneModel::enumerate(ring).unwrap();
        assert_eq!(with_unit / units, 28);
        assert_eq!(plane.points().len(), 28);
    }

    #[test]
    fn cap_is_enforced() {
        let ring = make_ring(2, 2, RingKind::GaloisRing, None).unwrap();
        assert_eq!(
            PlaneModel::enumerate_with_cap(ring, 3).unwrap_err(),
            PlaneError::RingTooLarge { q: 4, cap: 3 }
        );
    }

    #[test]
    fn large_orders_skip_the_matrix() {
        let ring = make_ring(7, 1, RingKind::Field, None).unwrap();
        let plane = PlaneModel::enumerate(ring).unwrap();
        assert!(plane.incidence_matrix().is_none());
        assert_eq!(plane.points().len(), 57);
        assert_eq!(plane.points_on_line(0).len(), 8);
    }
}
