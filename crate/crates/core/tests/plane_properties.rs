use std::collections::BTreeMap;

use hjelmslev_core::classical::enumerate_classical;
use hjelmslev_core::plane::{ElementKind, PlaneModel};
use hjelmslev_core::ring::{make_ring, RingKind};

fn planes(max_q: u32) -> Vec<PlaneModel> {
    let mut out = Vec::new();
    for (p, r) in [(2u32, 1u32), (3, 1), (2, 2)] {
        if p.pow(r) > max_q {
            continue;
        }
        for kind in [RingKind::GaloisRing, RingKind::DualNumbers] {
            out.push(PlaneModel::enumerate(make_ring(p, r, kind, None).unwrap()).unwrap());
        }
    }
    out
}

fn label(m: &PlaneModel) -> String {
    format!("{:?} q={}", m.ring().kind(), m.ring().q())
}

#[test]
fn neighbour_relation_is_an_equivalence() {
    for m in planes(4) {
        let n = m.points().len();
        let neighbours: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).filter(|&b| m.neighbour_idx(a, b)).collect())
            .collect();
        let q = m.ring().q() as usize;
        for a in 0..n {
            assert!(m.neighbour_idx(a, a));
            assert_eq!(neighbours[a].len(), q * q, "{}", label(&m));
            for &b in &neighbours[a] {
                assert!(m.neighbour_idx(b, a));
                for &c in &neighbours[b] {
                    assert!(m.neighbour_idx(a, c), "{}: {a} {b} {c}", label(&m));
                }
            }
        }
    }
}

#[test]
fn coordinate_and_two_lines_criteria_agree() {
    for m in planes(3) {
        let n = m.points().len();
        let through: Vec<Vec<usize>> = (0..n).map(|p| m.lines_through_point(p)).collect();
        for a in 0..n {
            for b in a + 1..n {
                let common = through[a].iter().filter(|l| through[b].contains(l)).count();
                assert_eq!(common >= 2, m.neighbour_idx(a, b), "{}: {a} {b}", label(&m));
            }
        }
    }
}

/// Histogram of |common incident elements| over unordered pairs.
fn meet_histogram(n: usize, incident: impl Fn(usize) -> Vec<usize>) -> BTreeMap<usize, usize> {
    let sets: Vec<Vec<usize>> = (0..n).map(incident).collect();
    let mut hist = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            let k = sets[a].iter().filter(|x| sets[b].contains(x)).count();
            *hist.entry(k).or_insert(0) += 1;
        }
    }
    hist
}

#[test]
fn duality_preserves_statistics() {
    for m in planes(4) {
        let n = m.points().len();
        assert_eq!(n, m.lines().len());
        let q = m.ring().q() as usize;
        for i in 0..n {
            assert_eq!(m.points_on_line(i).len(), q * (q + 1));
            assert_eq!(m.lines_through_point(i).len(), q * (q + 1));
        }
        let point_classes: Vec<usize> = m
            .neighbour_classes(ElementKind::Points)
            .iter()
            .map(|c| c.members.len())
            .collect();
        let line_classes: Vec<usize> = m
            .neighbour_classes(ElementKind::Lines)
            .iter()
            .map(|c| c.members.len())
            .collect();
        assert_eq!(point_classes, line_classes);
        let pairs_of_lines = meet_histogram(n, |l| m.points_on_line(l));
        let pairs_of_points = meet_histogram(n, |p| m.lines_through_point(p));
        assert_eq!(pairs_of_lines, pairs_of_points, "{}", label(&m));
    }
}

#[test]
fn epimorphism_is_functorial() {
    for m in planes(4) {
        let classical = m.classical_plane().unwrap();
        for (li, line) in m.lines().iter().enumerate() {
            let image = m.line_epimorphism(line);
            for p in m.points_on_line(li) {
                assert!(classical.incident(&image, &m.epimorphism(&m.points()[p])));
            }
        }
        for (k, class) in m.neighbour_classes(ElementKind::Points).iter().enumerate() {
            assert_eq!(classical.points()[k].coords, class.image);
            for &p in &class.members {
                assert_eq!(m.epimorphism(&m.points()[p]).coords, class.image);
            }
        }
    }
}

#[test]
fn neighbours_of_a_point_on_its_line() {
    // On every line, each point has exactly q neighbours (itself included),
    // for Galois rings and dual numbers alike.
    for m in planes(4) {
        let q = m.ring().q() as usize;
        for l in 0..m.lines().len() {
            let on = m.points_on_line(l);
            for &a in &on {
                let k = on.iter().filter(|&&b| m.neighbour_idx(a, b)).count();
                assert_eq!(k, q, "{} line {l} point {a}", label(&m));
            }
            let structure = m.line_class_structure(&m.lines()[l]).unwrap();
            assert_eq!(structure.len(), q + 1);
        }
    }
}

#[test]
fn classical_planes_match_closed_forms() {
    for q in [2u32, 3, 4, 5, 7, 8, 9] {
        let pg = enumerate_classical(q).unwrap();
        let q = q as usize;
        let n = q * q + q + 1;
        assert_eq!((pg.points().len(), pg.lines().len()), (n, n));
        for i in 0..n {
            assert_eq!(pg.points_on_line(i).len(), q + 1);
            assert_eq!(pg.lines_through_point(i).len(), q + 1);
        }
        if q <= 5 {
            let hist = meet_histogram(n, |l| pg.points_on_line(l));
            assert_eq!(hist.into_iter().collect::<Vec<_>>(), vec![(1, n * (n - 1) / 2)]);
        }
    }
    assert!(enumerate_classical(6).is_err());
    assert!(enumerate_classical(32).is_err());
}
