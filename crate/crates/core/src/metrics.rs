//! Shortest-path distances, spanning-ratio measurement, and the per-pair
//! path-length certificate for 4k+4 cone counts.

use crate::construction::{InsertionOrder, SpannerGraph};
use crate::error::{Error, Result};
use crate::geometry::ConeSystem;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Guard for the quadratic-memory oracle.
const ORACLE_MAX_N: usize = 512;

/// Absolute window inside which stretch maxima count as tied; the witness is
/// the lexicographically smallest pair among them.
const WITNESS_TIE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairStretch {
    pub u: usize,
    pub w: usize,
    pub graph_distance: f64,
    pub euclidean: f64,
    /// None for disconnected pairs.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StretchReport {
    pub max_stretch: f64,
    pub witness: (usize, usize),
    pub disconnected: bool,
    pub per_pair: Option<Vec<PairStretch>>,
}

struct HeapEntry {
    dist: f64,
    vertex: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.dist == other.dist && self.vertex == other.vertex
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on distance; weights are finite and non-negative.
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap()
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

fn dijkstra(adj: &[Vec<(usize, f64)>], source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adj.len()];
    dist[source] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(HeapEntry {
        dist: 0.0,
        vertex: source,
    });
    while let Some(HeapEntry { dist: d, vertex }) = heap.pop() {
        if d > dist[vertex] {
            continue;
        }
        for &(next, weight) in &adj[vertex] {
            let cand = d + weight;
            if cand < dist[next] {
                dist[next] = cand;
                heap.push(HeapEntry {
                    dist: cand,
                    vertex: next,
                });
            }
        }
    }
    dist
}

/// Weighted shortest-path distance over the undirected edges; `None` when
/// `w` is unreachable from `u`.
pub fn shortest_path_distance(graph: &SpannerGraph, u: usize, w: usize) -> Result<Option<f64>> {
    let n = graph.n();
    if u >= n {
        return Err(Error::BadVertex(u, n));
    }
    if w >= n {
        return Err(Error::BadVertex(w, n));
    }
    let d = dijkstra(&graph.adjacency(), u)[w];
    Ok(d.is_finite().then_some(d))
}

fn report_from_distances(
    graph: &SpannerGraph,
    dist: impl Fn(usize, usize) -> f64,
    keep_pairs: bool,
) -> Result<StretchReport> {
    let n = graph.n();
    if n < 2 {
        return Err(Error::TooSmall(2, n));
    }
    let mut disconnected = false;
    let mut max_stretch = f64::NEG_INFINITY;
    let mut pairs = Vec::new();
    for u in 0..n {
        for w in (u + 1)..n {
            let d = dist(u, w);
            let euclid = graph.points[u].distance(graph.points[w]);
            let ratio = if d.is_finite() {
                let r = d / euclid;
                max_stretch = max_stretch.max(r);
                Some(r)
            } else {
                disconnected = true;
                None
            };
            if keep_pairs {
                pairs.push(PairStretch {
                    u,
                    w,
                    graph_distance: d,
                    euclidean: euclid,
                    ratio,
                });
            }
        }
    }
    if !max_stretch.is_finite() {
        // No connected pair at all.
        return Ok(StretchReport {
            max_stretch: f64::NAN,
            witness: (0, 0),
            disconnected: true,
            per_pair: keep_pairs.then_some(pairs),
        });
    }
    // Deterministic witness: lexicographically smallest pair within the tie
    // window of the maximum.
    let mut witness = (0, 0);
    'outer: for u in 0..n {
        for w in (u + 1)..n {
            let d = dist(u, w);
            if !d.is_finite() {
                continue;
            }
            if d / graph.points[u].distance(graph.points[w]) >= max_stretch - WITNESS_TIE_TOL {
                witness = (u, w);
                break 'outer;
            }
        }
    }
    Ok(StretchReport {
        max_stretch,
        witness,
        disconnected,
        per_pair: keep_pairs.then_some(pairs),
    })
}

/// Max over connected pairs of (graph distance / Euclidean distance), via a
/// single-source run from every vertex.
pub fn all_pairs_stretch(graph: &SpannerGraph, keep_pairs: bool) -> Result<StretchReport> {
    let adj = graph.adjacency();
    let table: Vec<Vec<f64>> = (0..graph.n()).map(|s| dijkstra(&adj, s)).collect();
    report_from_distances(graph, |u, w| table[u][w], keep_pairs)
}

/// Same contract as [`all_pairs_stretch`], computed by Floyd-Warshall for
/// cross-validation. Guarded to 512 vertices.
pub fn stretch_oracle(graph: &SpannerGraph, keep_pairs: bool) -> Result<StretchReport> {
    let n = graph.n();
    if n > ORACLE_MAX_N {
        return Err(Error::TooLarge(n, ORACLE_MAX_N));
    }
    let mut dist = vec![vec![f64::INFINITY; n]; n];
    for (v, row) in dist.iter_mut().enumerate() {
        row[v] = 0.0;
    }
    for e in &graph.edges {
        if e.weight < dist[e.u][e.v] {
            dist[e.u][e.v] = e.weight;
            dist[e.v][e.u] = e.weight;
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = dist[i][k];
            if !dik.is_finite() {
                continue;
            }
            for j in 0..n {
                let cand = dik + dist[k][j];
                if cand < dist[i][j] {
                    dist[i][j] = cand;
                }
            }
        }
    }
    report_from_distances(graph, |u, w| dist[u][w], keep_pairs)
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CertificateRow {
    /// Later-inserted endpoint.
    pub u: usize,
    /// Earlier-inserted endpoint.
    pub w: usize,
    pub bound: f64,
    pub delta: f64,
    pub pass: bool,
}

/// Path-length bound factor for a 4k+4 cone count at canonical-triangle
/// angle `alpha`: cos(a)/cos(t/2) + (cos(a) tan(t/2) + sin(a)) / (cos(t/2) - sin(t/2)).
pub fn certificate_bound_factor(theta: f64, alpha: f64) -> f64 {
    let h = theta / 2.0;
    let c = 1.0 / (h.cos() - h.sin());
    alpha.cos() / h.cos() + c * (alpha.cos() * h.tan() + alpha.sin())
}

/// For every ordered pair (u, w) with w inserted before u, check that the
/// graph distance is within the 4k+4 path-length bound at that pair's
/// canonical-triangle angle.
pub fn theorem1_certificate(
    system: &ConeSystem,
    graph: &SpannerGraph,
    order: &InsertionOrder,
) -> Result<Vec<CertificateRow>> {
    if system.m() % 4 != 0 || system.m() < 8 {
        return Err(Error::WrongFamily(system.m()));
    }
    let n = graph.n();
    let rank = order.ranks();
    let adj = graph.adjacency();
    let table: Vec<Vec<f64>> = (0..n).map(|s| dijkstra(&adj, s)).collect();
    let mut rows = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for u in 0..n {
        for w in 0..n {
            if u == w || rank[w] >= rank[u] {
                continue;
            }
            let tri = system.canonical_triangle(graph.points[u], graph.points[w])?;
            let euclid = graph.points[u].distance(graph.points[w]);
            let bound = certificate_bound_factor(system.theta(), tri.alpha) * euclid;
            let delta = table[u][w];
            rows.push(CertificateRow {
                u,
                w,
                bound,
                delta,
                pass: delta.is_finite() && delta <= bound + 1e-9 * euclid,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::Edge;
    use crate::geometry::Point;

    fn graph(points: Vec<Point>, edges: Vec<(usize, usize)>) -> SpannerGraph {
        let e = edges
            .into_iter()
            .map(|(u, v)| Edge {
                u,
                v,
                weight: points[u].distance(points[v]),
                provenance: None,
            })
            .collect();
        SpannerGraph { points, edges: e }
    }

    #[test]
    fn shortest_path_examples() {
        let g = graph(
            vec![Point::new(0.0, 0.0), Point::new(0.0, 1.0)],
            vec![(0, 1)],
        );
        assert_eq!(shortest_path_distance(&g, 0, 1).unwrap(), Some(1.0));

        let g = graph(
            vec![
                Point::new(0.0, 0.0),
                Point::new(0.0, 1.0),
                Point::new(0.0, 2.0),
            ],
            vec![(0, 1), (1, 2)],
        );
        assert_eq!(shortest_path_distance(&g, 0, 2).unwrap(), Some(2.0));

        let g = graph(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.5)], vec![]);
        assert_eq!(shortest_path_distance(&g, 0, 1).unwrap(), None);
        assert!(shortest_path_distance(&g, 0, 7).is_err());
    }

    #[test]
    fn stretch_of_complete_graph_is_one() {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.3),
            Point::new(0.4, 1.2),
        ];
        let g = graph(pts, vec![(0, 1), (0, 2), (1, 2)]);
        let r = all_pairs_stretch(&g, false).unwrap();
        assert!((r.max_stretch - 1.0).abs() < 1e-12);
        assert!(!r.disconnected);
    }

    #[test]
    fn stretch_of_two_hop_path() {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(0.5, 0.4),
            Point::new(1.0, 0.0),
        ];
        let g = graph(pts.clone(), vec![(0, 1), (1, 2)]);
        let r = all_pairs_stretch(&g, true).unwrap();
        let expected = (pts[0].distance(pts[1]) + pts[1].distance(pts[2])) / pts[0].distance(pts[2]);
        assert!((r.max_stretch - expected).abs() < 1e-12);
        assert_eq!(r.witness, (0, 2));
        let table = r.per_pair.unwrap();
        let best = table
            .iter()
            .filter_map(|p| p.ratio)
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((best - r.max_stretch).abs() < 1e-12);
    }

    #[test]
    fn disconnected_pairs_flagged_not_fatal() {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(5.0, 0.2),
        ];
        let g = graph(pts, vec![(0, 1)]);
        let r = all_pairs_stretch(&g, true).unwrap();
        assert!(r.disconnected);
        assert!((r.max_stretch - 1.0).abs() < 1e-12);
        let table = r.per_pair.unwrap();
        assert!(table.iter().any(|p| p.ratio.is_none()));
    }

    #[test]
    fn oracle_agrees_with_dijkstra_on_small_graphs() {
        // Deterministic pseudo-random sparse graphs.
        for seed in 0..20u64 {
            let n = 8 + (seed as usize % 5);
            let pts: Vec<Point> = (0..n)
                .map(|i| {
                    let a = (seed as f64 + 1.0) * 0.77 + i as f64 * 2.399;
                    Point::new(a.cos() * (1.0 + 0.21 * i as f64), a.sin() * (1.4 + 0.11 * i as f64))
                })
                .collect();
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if (i * 7 + j * 13 + seed as usize) % 3 == 0 {
                        edges.push((i, j));
                    }
                }
            }
            let g = graph(pts, edges);
            let a = all_pairs_stretch(&g, false).unwrap();
            let b = stretch_oracle(&g, false).unwrap();
            if a.max_stretch.is_nan() {
                assert!(b.max_stretch.is_nan());
            } else {
                assert!((a.max_stretch - b.max_stretch).abs() < 1e-9);
                assert_eq!(a.witness, b.witness);
            }
            assert_eq!(a.disconnected, b.disconnected);
        }
    }

    #[test]
    fn metric_sanity() {
        let pts: Vec<Point> = (0..9)
            .map(|i| {
                let a = 0.31 + i as f64 * 1.37;
                Point::new(a.cos() * 2.0, a.sin() * (1.0 + 0.2 * i as f64))
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..pts.len() {
            edges.push((i, (i + 1) % pts.len()));
        }
        edges.push((0, 4));
        let g = graph(pts.clone(), edges);
        let adj = g.adjacency();
        let table: Vec<Vec<f64>> = (0..g.n()).map(|s| dijkstra(&adj, s)).collect();
        for u in 0..g.n() {
            for w in 0..g.n() {
                assert!((table[u][w] - table[w][u]).abs() < 1e-12);
                if u != w {
                    assert!(table[u][w] >= pts[u].distance(pts[w]) - 1e-12);
                }
                for v in 0..g.n() {
                    assert!(table[u][w] <= table[u][v] + table[v][w] + 1e-9);
                }
            }
        }
    }

    #[test]
    fn certificate_bound_factor_values() {
        // m=8: alpha = theta/2 gives 1 + 2 sin(t/2)/(cos(t/2) - sin(t/2)) = 1 + sqrt(2);
        // alpha = 0 gives 1/cos(t/2) + tan(t/2)/(cos(t/2)-sin(t/2)).
        let theta = std::f64::consts::FRAC_PI_4;
        let at_half = certificate_bound_factor(theta, theta / 2.0);
        assert!((at_half - 2.414_213_562_4).abs() < 1e-9);
        let h = theta / 2.0;
        let expect0 = 1.0 / h.cos() + h.tan() / (h.cos() - h.sin());
        let at_zero = certificate_bound_factor(theta, 0.0);
        assert!((at_zero - expect0).abs() < 1e-12);
        assert!((at_zero - 1.847_759_065_0).abs() < 1e-9);
    }

    #[test]
    fn certificate_bound_factor_monotone_in_alpha() {
        // Nondecreasing on [0, theta/2] for theta <= pi/4.
        for m in [8u32, 12, 16, 24] {
            let theta = std::f64::consts::TAU / m as f64;
            let mut prev = f64::NEG_INFINITY;
            for i in 0..=200 {
                let alpha = theta / 2.0 * i as f64 / 200.0;
                let f = certificate_bound_factor(theta, alpha);
                assert!(f >= prev - 1e-12, "m={m} alpha={alpha}");
                prev = f;
            }
        }
    }

    #[test]
    fn certificate_trivial_single_edge() {
        let system = ConeSystem::new(8).unwrap();
        let pts = vec![Point::new(0.0, 0.0), Point::new(0.13, 1.0)];
        let order = InsertionOrder::new(vec![1, 0], 2).unwrap();
        let g = crate::construction::build_ordered(&system, &pts, &order).unwrap();
        let rows = theorem1_certificate(&system, &g, &order).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].pass);
        assert_eq!((rows[0].u, rows[0].w), (0, 1));
    }

    #[test]
    fn certificate_rejects_wrong_family() {
        let system = ConeSystem::new(7).unwrap();
        let pts = vec![Point::new(0.0, 0.0), Point::new(0.13, 1.0)];
        let order = InsertionOrder::identity(2);
        let g = SpannerGraph {
            points: pts,
            edges: vec![],
        };
        assert!(matches!(
            theorem1_certificate(&system, &g, &order),
            Err(Error::WrongFamily(7))
        ));
    }
}
