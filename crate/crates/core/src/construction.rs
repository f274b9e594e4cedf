//! Ordered and unordered theta-graph construction.
//!
//! The ordered build inserts vertices in a given order and connects each new
//! vertex to the projection-closest previously-inserted vertex in every
//! nonempty cone. Edges are stored undirected because all path-length claims
//! concern undirected shortest paths; provenance keeps the directed view.

use crate::error::{Error, Result};
use crate::geometry::{ConeSystem, Point};
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Relative tolerance under which two projection distances count as a tie.
const TIE_TOL: f64 = 1e-12;

/// A permutation of vertex indices; `order[t]` is inserted at time `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertionOrder(Vec<usize>);

impl InsertionOrder {
    pub fn new(order: Vec<usize>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(Error::InvalidOrder { expected: n });
        }
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::InvalidOrder { expected: n });
            }
            seen[v] = true;
        }
        Ok(Self(order))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// rank[v] = insertion time of vertex v.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.0.len()];
        for (t, &v) in self.0.iter().enumerate() {
            rank[v] = t;
        }
        rank
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    /// (owner vertex, cone index) for edges added by a construction step.
    pub provenance: Option<(usize, u32)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpannerGraph {
    pub points: Vec<Point>,
    pub edges: Vec<Edge>,
}

impl SpannerGraph {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Adjacency lists as (neighbor, weight) pairs.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.points.len()];
        for e in &self.edges {
            adj[e.u].push((e.v, e.weight));
            adj[e.v].push((e.u, e.weight));
        }
        adj
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges
            .iter()
            .any(|e| (e.u, e.v) == (a.min(b), a.max(b)))
    }
}

/// Among `candidates`, the index of the one strictly inside the given cone
/// of `apex` minimizing the bisector projection. Candidates within the
/// angular tolerance of a boundary are not "strictly inside" and are
/// skipped. A projection tie within 1e-12 relative is a surfaced
/// general-position failure, not silently broken.
pub fn closest_in_cone(
    system: &ConeSystem,
    apex: Point,
    candidates: &[(usize, Point)],
    cone: u32,
) -> Result<Option<usize>> {
    let mut best: Option<(usize, f64)> = None;
    for &(idx, p) in candidates {
        match system.cone_index(apex, p) {
            Ok(i) if i == cone => {}
            _ => continue,
        }
        let d = system.bisector_distance(apex, p)?;
        match best {
            None => best = Some((idx, d)),
            Some((bidx, bd)) => {
                if (d - bd).abs() <= TIE_TOL * bd.abs().max(d.abs()) {
                    return Err(Error::AmbiguousClosest(bidx.min(idx), bidx.max(idx)));
                }
                if d < bd {
                    best = Some((idx, d));
                }
            }
        }
    }
    Ok(best.map(|(idx, _)| idx))
}

fn validated(system: &ConeSystem, points: &[Point]) -> Result<()> {
    let report = system.check_general_position(points);
    if report.is_clean() {
        Ok(())
    } else {
        Err(Error::GeneralPositionViolation(report))
    }
}

struct EdgeAccumulator {
    edges: Vec<Edge>,
    seen: HashMap<(usize, usize), usize>,
}

impl EdgeAccumulator {
    fn new() -> Self {
        Self {
            edges: Vec::new(),
            seen: HashMap::new(),
        }
    }

    /// Insert an undirected edge, coalescing duplicates (first provenance
    /// wins).
    fn push(&mut self, a: usize, b: usize, weight: f64, provenance: (usize, u32)) {
        let key = (a.min(b), a.max(b));
        if self.seen.contains_key(&key) {
            return;
        }
        self.seen.insert(key, self.edges.len());
        self.edges.push(Edge {
            u: key.0,
            v: key.1,
            weight,
            provenance: Some(provenance),
        });
    }
}

/// Build the ordered theta-graph: process vertices in insertion order and
/// connect each to the projection-closest previously-inserted vertex in
/// every nonempty cone.
pub fn build_ordered(
    system: &ConeSystem,
    points: &[Point],
    order: &InsertionOrder,
) -> Result<SpannerGraph> {
    if points.is_empty() {
        return Err(Error::TooSmall(1, 0));
    }
    let _ = InsertionOrder::new(order.as_slice().to_vec(), points.len())?;
    validated(system, points)?;

    let mut acc = EdgeAccumulator::new();
    let mut inserted: Vec<(usize, Point)> = Vec::with_capacity(points.len());
    for &u in order.as_slice() {
        for cone in 0..system.m() {
            if let Some(v) = closest_in_cone(system, points[u], &inserted, cone)? {
                acc.push(u, v, points[u].distance(points[v]), (u, cone));
            }
        }
        inserted.push((u, points[u]));
    }
    Ok(SpannerGraph {
        points: points.to_vec(),
        edges: acc.edges,
    })
}

/// Build the unordered theta-graph: every vertex connects to the
/// projection-closest vertex in each of its nonempty cones.
pub fn build_unordered(system: &ConeSystem, points: &[Point]) -> Result<SpannerGraph> {
    if points.is_empty() {
        return Err(Error::TooSmall(1, 0));
    }
    validated(system, points)?;

    let all: Vec<(usize, Point)> = points.iter().copied().enumerate().collect();
    let mut acc = EdgeAccumulator::new();
    for (u, &p) in points.iter().enumerate() {
        let others: Vec<(usize, Point)> = all.iter().copied().filter(|&(i, _)| i != u).collect();
        for cone in 0..system.m() {
            if let Some(v) = closest_in_cone(system, p, &others, cone)? {
                acc.push(u, v, p.distance(points[v]), (u, cone));
            }
        }
    }
    Ok(SpannerGraph {
        points: points.to_vec(),
        edges: acc.edges,
    })
}

/// Seeded uniform jitter of magnitude `radius`, for user-supplied inputs
/// that fail the general-position check. Applied before validation when
/// enabled; default off.
pub fn perturb(points: &[Point], radius: f64, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    points
        .iter()
        .map(|p| {
            let dx = rng.random_range(-radius..=radius);
            let dy = rng.random_range(-radius..=radius);
            Point::new(p.x + dx, p.y + dy)
        })
        .collect()
}
