//! Carnot-Caratheodory distances on anisotropic stencil graphs.
//!
//! Grid vertices are joined along stencil offsets; an edge from `p` to
//! `p + v` is priced at `sqrt(w(v))` where `w` is the schedule weight of the
//! cost evaluated at the edge midpoint (catalog models evaluate the frame
//! there; tabulated fields average the endpoint weights). At a finite
//! approximation index every edge is finite, so the graph is the full stencil
//! graph of a genuine Riemannian metric. At index infinity edges with
//! infinite cost are omitted; the remaining graph must join the queried
//! vertices, otherwise a disconnection error is raised.
//!
//! Distances are nondecreasing in the index and dominated by the
//! index-infinity value on the same grid, since the per-direction weights
//! are; both comparisons hold with zero tolerance because the same paths are
//! re-priced with pointwise-larger weights.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Result, SubRiemannianError};
use crate::schedule::{ApproximantIndex, ApproximantSchedule};
use crate::structure::{Cost, HorizontalStructure, SigmaField};

/// Length of the graph edge realized by stencil offset `offset` out of the
/// vertex `flat`, or `None` when the edge is omitted (index infinity only).
#[inline]
fn edge_length(
    structure: &HorizontalStructure,
    schedule: &ApproximantSchedule,
    flat: usize,
    neighbor: usize,
    v: &[f64],
) -> Option<f64> {
    let cost = match structure.sigma_field() {
        SigmaField::Analytic(model) => {
            let grid = structure.grid();
            let p = grid.point(flat);
            let q = grid.point(neighbor);
            let midpoint: Vec<f64> =
                p.iter().zip(q.iter()).map(|(a, b)| 0.5 * (a + b)).collect();
            model.cost_at(&midpoint, v)
        }
        SigmaField::Tabulated { .. } => {
            // Second-order midpoint quadrature is unavailable for tables;
            // average the endpoint costs instead.
            match (structure.cost(flat, v), structure.cost(neighbor, v)) {
                (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(0.5 * (a + b)),
                _ => Cost::Infinite,
            }
        }
    };
    match schedule.weight(cost, schedule.g1(v)) {
        Cost::Finite(w) => Some(w.sqrt()),
        Cost::Infinite => None,
    }
}

#[derive(Copy, Clone, PartialEq)]
struct HeapEntry {
    dist: f64,
    vertex: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .partial_cmp(&self.dist)
            .expect("edge lengths are finite")
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Search {
    dist: Vec<f64>,
    settled: Vec<bool>,
    parent: Vec<usize>,
}

/// Dijkstra over the implicit stencil graph from `source`, stopping once
/// every vertex in `stop_set` settles (empty set explores everything).
fn dijkstra(
    structure: &HorizontalStructure,
    schedule: &ApproximantSchedule,
    source: usize,
    stop_set: &[usize],
) -> Search {
    let grid = structure.grid();
    let n = grid.len();
    let dim = grid.dimension();
    let offsets = grid.stencil();
    let displacements: Vec<Vec<f64>> =
        offsets.iter().map(|offset| grid.displacement(offset)).collect();

    let mut dist = vec![f64::INFINITY; n];
    let mut settled = vec![false; n];
    let mut parent = vec![usize::MAX; n];
    let mut remaining: Vec<usize> = stop_set.to_vec();
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(HeapEntry { dist: 0.0, vertex: source });
    let mut multi = vec![0usize; dim];

    while let Some(HeapEntry { dist: d, vertex: u }) = heap.pop() {
        if settled[u] {
            continue;
        }
        settled[u] = true;
        if !remaining.is_empty() {
            remaining.retain(|&t| t != u);
            if remaining.is_empty() {
                break;
            }
        }
        // Unpack the flat index once per settled vertex.
        let mut rest = u;
        for (axis, &count) in grid.counts().iter().enumerate().rev() {
            multi[axis] = rest % count;
            rest /= count;
        }
        for (offset, v) in offsets.iter().zip(displacements.iter()) {
            let Some(neighbor) = grid.step(&multi, offset) else {
                continue;
            };
            if settled[neighbor] {
                continue;
            }
            let Some(length) = edge_length(structure, schedule, u, neighbor, v) else {
                continue;
            };
            let candidate = d + length;
            if candidate < dist[neighbor] {
                dist[neighbor] = candidate;
                parent[neighbor] = u;
                heap.push(HeapEntry { dist: candidate, vertex: neighbor });
            }
        }
    }
    Search { dist, settled, parent }
}

/// Graph distance between two coordinate points on the grid.
pub fn cc_distance(
    structure: &HorizontalStructure,
    schedule: &ApproximantSchedule,
    p: &[f64],
    q: &[f64],
) -> Result<f64> {
    let grid = structure.grid();
    let a = grid.index_of(p)?;
    let b = grid.index_of(q)?;
    if a == b {
        return Ok(0.0);
    }
    // Canonical source order keeps d(p, q) bitwise equal to d(q, p).
    let (source, target) = if a <= b { (a, b) } else { (b, a) };
    let search = dijkstra(structure, schedule, source, &[target]);
    if search.settled[target] {
        Ok(search.dist[target])
    } else {
        Err(SubRiemannianError::Disconnected { a: source, b: target })
    }
}

/// Distances from one source to many targets sharing a single search.
///
/// Unreachable targets yield `None` (meaningful at index infinity).
pub fn cc_distances_from(
    structure: &HorizontalStructure,
    schedule: &ApproximantSchedule,
    source: &[f64],
    targets: &[Vec<f64>],
) -> Result<Vec<Option<f64>>> {
    let grid = structure.grid();
    let s = grid.index_of(source)?;
    let mut ids = Vec::with_capacity(targets.len());
    for t in targets {
        ids.push(grid.index_of(t)?);
    }
    let search = dijkstra(structure, schedule, s, &ids);
    Ok(ids
        .iter()
        .map(|&t| if search.settled[t] { Some(search.dist[t]) } else { None })
        .collect())
}

/// Shortest path as `(length, vertex ids)`, for geodesic inspection.
pub fn cc_shortest_path(
    structure: &HorizontalStructure,
    schedule: &ApproximantSchedule,
    p: &[f64],
    q: &[f64],
) -> Result<(f64, Vec<usize>)> {
    let grid = structure.grid();
    let source = grid.index_of(p)?;
    let target = grid.index_of(q)?;
    let search = dijkstra(structure, schedule, source, &[target]);
    if !search.settled[target] {
        return Err(SubRiemannianError::Disconnected { a: source, b: target });
    }
    let mut path = vec![target];
    let mut v = target;
    while v != source {
        v = search.parent[v];
        path.push(v);
    }
    path.reverse();
    Ok((search.dist[target], path))
}

/// Whether every edge of a vertex path has finite cost (is horizontal).
pub fn path_uses_only_finite_cost_edges(
    structure: &HorizontalStructure,
    path: &[usize],
) -> bool {
    let grid = structure.grid();
    let infinity = ApproximantSchedule::with_g1_scale(1.0, ApproximantIndex::Infinity)
        .expect("valid schedule");
    path.windows(2).all(|pair| {
        let p = grid.point(pair[0]);
        let q = grid.point(pair[1]);
        let v: Vec<f64> = q.iter().zip(p.iter()).map(|(b, a)| b - a).collect();
        edge_length(structure, &infinity, pair[0], pair[1], &v).is_some()
    })
}

/// All vertices reachable from `source` in the index-infinity graph.
pub fn reachable_at_infinity(
    structure: &HorizontalStructure,
    source: &[f64],
) -> Result<Vec<usize>> {
    let grid = structure.grid();
    let s = grid.index_of(source)?;
    let schedule = ApproximantSchedule::with_g1_scale(1.0, ApproximantIndex::Infinity)?;
    let search = dijkstra(structure, &schedule, s, &[]);
    Ok((0..grid.len()).filter(|&v| search.settled[v]).collect())
}

/// One row of a monotone convergence table.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneRow {
    pub pair: (Vec<f64>, Vec<f64>),
    pub index: ApproximantIndex,
    pub distance: Option<f64>,
}

/// Distances per pair per approximation index with the monotonicity verdict.
#[derive(Debug, Clone)]
pub struct MonotoneReport {
    pub rows: Vec<MonotoneRow>,
    /// Distances nondecreasing along the finite indices, pair by pair.
    pub monotone: bool,
    /// Every finite-index distance at most the index-infinity distance.
    pub dominated: bool,
}

/// Runs the distance solver across approximation indices for each pair.
///
/// Finite indices must be listed in increasing order. Connectivity failures
/// at finite indices propagate as errors; unreachable pairs at index
/// infinity are recorded as absent, which leaves domination vacuous there.
pub fn monotone_convergence_report(
    structure: &HorizontalStructure,
    schedule: &ApproximantSchedule,
    pairs: &[(Vec<f64>, Vec<f64>)],
    indices: &[ApproximantIndex],
) -> Result<MonotoneReport> {
    let mut rows = Vec::with_capacity(pairs.len() * indices.len());
    let mut monotone = true;
    let mut dominated = true;
    for (p, q) in pairs {
        let mut last_finite: Option<f64> = None;
        let mut infinity_value: Option<f64> = None;
        let mut finite_values: Vec<f64> = Vec::new();
        for &index in indices {
            let stage = schedule.with_index(index);
            let distance = match cc_distance(structure, &stage, p, q) {
                Ok(d) => Some(d),
                Err(SubRiemannianError::Disconnected { .. })
                    if index == ApproximantIndex::Infinity =>
                {
                    None
                }
                Err(other) => return Err(other),
            };
            match index {
                ApproximantIndex::Finite(_) => {
                    let d = distance.expect("finite-index graphs are connected");
                    if let Some(prev) = last_finite {
                        if d < prev {
                            monotone = false;
                        }
                    }
                    last_finite = Some(d);
                    finite_values.push(d);
                }
                ApproximantIndex::Infinity => infinity_value = distance,
            }
            rows.push(MonotoneRow { pair: (p.clone(), q.clone()), index, distance });
        }
        if let Some(limit) = infinity_value {
            if finite_values.iter().any(|&d| d > limit) {
                dominated = false;
            }
        }
    }
    Ok(MonotoneReport { rows, monotone, dominated })
}
