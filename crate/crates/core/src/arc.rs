//! k-arcs in ring planes: sets of pairwise remote points with no three on a
//! common line.
//!
//! The search walks the neighbour classes in order and picks at most one
//! point from each, since two points of one class are never remote.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::plane::{ElementKind, PlaneModel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArcError {
    #[error("point index {0} is not in the plane")]
    PointsNotInPlane(usize),
}

/// Outcome of [`max_arc_search`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcSearchResult {
    pub max_size: usize,
    /// Point indices of the first arc of size `max_size` in search order.
    pub witness: Option<Vec<usize>>,
    /// Arcs of size `max_size` met during the search. Exact when exhausted
    /// and no target was set.
    pub census: u64,
    pub exhausted: bool,
    pub nodes_visited: u64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ArcSearchOptions {
    /// Stop at the first arc of this size.
    pub target: Option<usize>,
    pub time_budget: Option<Duration>,
}

pub fn is_arc(points: &[usize], model: &PlaneModel) -> Result<bool, ArcError> {
    let n = model.points().len();
    if let Some(&bad) = points.iter().find(|&&p| p >= n) {
        return Err(ArcError::PointsNotInPlane(bad));
    }
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            if a == b || model.neighbour_idx(a, b) {
                return Ok(false);
            }
        }
    }
    for l in 0..model.lines().len() {
        if points.iter().filter(|&&p| model.is_incident(l, p)).count() >= 3 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn or_with(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn first_common(&self, other: &Bits) -> Option<usize> {
        self.0.iter().zip(&other.0).enumerate().find_map(|(w, (a, b))| {
            let x = a & b;
            (x != 0).then(|| w * 64 + x.trailing_zeros() as usize)
        })
    }
}

struct Search {
    classes: Vec<Vec<usize>>,
    lines_through: Vec<Bits>,
    points_on: Vec<Bits>,
    options: ArcSearchOptions,
    started: Instant,
    best: usize,
    witness: Option<Vec<usize>>,
    census: u64,
    nodes: u64,
    stopped: bool,
}

impl Search {
    fn run(&mut self, depth: usize, chosen: &mut Vec<usize>, blocked: &Bits) {
        if self.stopped {
            return;
        }
        self.nodes += 1;
        if let Some(budget) = self.options.time_budget {
            if self.nodes.is_multiple_of(1024) && self.started.elapsed() > budget {
                self.stopped = true;
                return;
            }
        }
        let size = chosen.len();
        if size > self.best {
            self.best = size;
            self.witness = Some(chosen.clone());
            self.census = 0;
        }
        if self.options.target == Some(size) {
            self.census = 1;
            self.stopped = true;
            return;
        }
        if depth == self.classes.len() {
            // every arc ends at exactly one leaf
            if size == self.best {
                self.census += 1;
            }
            return;
        }
        let remaining = self.classes.len() - depth;
        if size + remaining < self.options.target.unwrap_or(self.best) {
            return;
        }

        for i in 0..self.classes[depth].len() {
            let p = self.classes[depth][i];
            if blocked.get(p) {
                continue;
            }
            let mut next = blocked.clone();
            for &a in chosen.iter() {
                // two remote points span exactly one line
                let line = self.lines_through[a]
                    .first_common(&self.lines_through[p])
                    .expect("remote points are joined by a line");
                next.or_with(&self.points_on[line]);
            }
            chosen.push(p);
            self.run(depth + 1, chosen, &next);
            chosen.pop();
            if self.stopped {
                return;
            }
        }
        self.run(depth + 1, chosen, blocked);
    }
}

/// Deterministic depth-first search for the largest arc.
///
/// Classes are visited in index order, points within a class in plane order,
/// and picking a point is tried before skipping the class. With a target the
/// search stops at the first arc of that size and reports a census of 1.
pub fn max_arc_search(model: &PlaneModel, options: ArcSearchOptions) -> ArcSearchResult {
    let n = model.points().len();
    let classes: Vec<Vec<usize>> = model
        .neighbour_classes(ElementKind::Points)
        .iter()
        .map(|c| c.members.clone())
        .collect();
    let mut lines_through = vec![Bits::new(n); n];
    let mut points_on = vec![Bits::new(n); n];
    for (l, on) in points_on.iter_mut().enumerate() {
        for p in model.points_on_line(l) {
            lines_through[p].set(l);
            on.set(p);
        }
    }
    let mut search = Search {
        classes,
        lines_through,
        points_on,
        options,
        started: Instant::now(),
        best: 0,
        witness: None,
        census: 0,
        nodes: 0,
        stopped: false,
    };
    search.run(0, &mut Vec::new(), &Bits::new(n));
    ArcSearchResult {
        max_size: search.best,
        witness: search.witness.filter(|w| !w.is_empty()),
        census: search.census,
        exhausted: !search.stopped,
        nodes_visited: search.nodes,
    }
}
