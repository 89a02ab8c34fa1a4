//! Length graphs and the shortest-path metrics they induce.
//!
//! A [`LengthGraph`] is an undirected graph with strictly positive edge
//! lengths; the shortest-path closure of a connected graph is a valid
//! [`FiniteMetricSpace`]. This is the discrete substrate carrying every path
//! metric in the toolkit.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{MetricError, Result};
use crate::space::FiniteMetricSpace;

/// Undirected graph with positive edge lengths and optional vertex coordinates.
#[derive(Debug, Clone)]
pub struct LengthGraph {
    n: usize,
    adjacency: Vec<Vec<(usize, f64)>>,
    coordinates: Option<Vec<Vec<f64>>>,
}

impl LengthGraph {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(MetricError::EmptyGraph);
        }
        Ok(LengthGraph { n, adjacency: vec![Vec::new(); n], coordinates: None })
    }

    /// Builds a graph from an edge list `(a, b, length)`.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut graph = Self::new(n)?;
        for &(a, b, length) in edges {
            graph.add_edge(a, b, length)?;
        }
        Ok(graph)
    }

    pub fn add_edge(&mut self, a: usize, b: usize, length: f64) -> Result<()> {
        if a >= self.n {
            return Err(MetricError::EdgeOutOfRange { v: a, n: self.n });
        }
        if b >= self.n {
            return Err(MetricError::EdgeOutOfRange { v: b, n: self.n });
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(MetricError::BadEdgeLength { a, b, length });
        }
        self.adjacency[a].push((b, length));
        self.adjacency[b].push((a, length));
        Ok(())
    }

    /// Attaches `E^k` coordinates to the vertices.
    pub fn with_coordinates(mut self, coordinates: Vec<Vec<f64>>) -> Result<Self> {
        if coordinates.len() != self.n {
            return Err(MetricError::DimensionMismatch { expected: self.n, got: coordinates.len() });
        }
        self.coordinates = Some(coordinates);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coordinates(&self) -> Option<&[Vec<f64>]> {
        self.coordinates.as_deref()
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    pub fn max_edge_length(&self) -> f64 {
        self.adjacency
            .iter()
            .flat_map(|adj| adj.iter().map(|&(_, w)| w))
            .fold(0.0, f64::max)
    }

    /// Single-source shortest-path distances; `None` marks unreachable vertices.
    pub fn dijkstra(&self, source: usize) -> Result<Vec<Option<f64>>> {
        if source >= self.n {
            return Err(MetricError::EdgeOutOfRange { v: source, n: self.n });
        }
        let mut dist: Vec<Option<f64>> = vec![None; self.n];
        let mut heap = BinaryHeap::new();
        dist[source] = Some(0.0);
        heap.push(HeapEntry { dist: 0.0, vertex: source });
        while let Some(HeapEntry { dist: d, vertex: u }) = heap.pop() {
            if let Some(du) = dist[u] {
                if d > du {
                    continue; // stale entry
                }
            }
            for &(v, w) in &self.adjacency[u] {
                let candidate = d + w;
                let improves = match dist[v] {
                    Some(dv) => candidate < dv,
                    None => true,
                };
                if improves {
                    dist[v] = Some(candidate);
                    heap.push(HeapEntry { dist: candidate, vertex: v });
                }
            }
        }
        Ok(dist)
    }

    /// Shortest path from `source` to `target` as `(length, vertex list)`.
    pub fn shortest_path(&self, source: usize, target: usize) -> Result<(f64, Vec<usize>)> {
        if source >= self.n {
            return Err(MetricError::EdgeOutOfRange { v: source, n: self.n });
        }
        if target >= self.n {
            return Err(MetricError::EdgeOutOfRange { v: target, n: self.n });
        }
        let mut dist: Vec<Option<f64>> = vec![None; self.n];
        let mut parent: Vec<usize> = vec![usize::MAX; self.n];
        let mut heap = BinaryHeap::new();
        dist[source] = Some(0.0);
        heap.push(HeapEntry { dist: 0.0, vertex: source });
        while let Some(HeapEntry { dist: d, vertex: u }) = heap.pop() {
            if let Some(du) = dist[u] {
                if d > du {
                    continue;
                }
            }
            if u == target {
                break;
            }
            for &(v, w) in &self.adjacency[u] {
                let candidate = d + w;
                let improves = match dist[v] {
                    Some(dv) => candidate < dv,
                    None => true,
                };
                if improves {
                    dist[v] = Some(candidate);
                    parent[v] = u;
                    heap.push(HeapEntry { dist: candidate, vertex: v });
                }
            }
        }
        let length = dist[target].ok_or(MetricError::Disconnected { a: source, b: target })?;
        let mut path = vec![target];
        let mut v = target;
        while v != source {
            v = parent[v];
            path.push(v);
        }
        path.reverse();
        Ok((length, path))
    }
}

/// All-pairs shortest-path distances of a connected graph as a metric space.
///
/// A disconnected graph is rejected with an error naming a disconnected pair.
pub fn shortest_path_metric(graph: &LengthGraph) -> Result<FiniteMetricSpace> {
    let n = graph.len();
    let mut table = vec![0.0; n * n];
    for source in 0..n {
        let dist = graph.dijkstra(source)?;
        for (target, value) in dist.iter().enumerate() {
            match value {
                Some(d) => table[source * n + target] = *d,
                None => return Err(MetricError::Disconnected { a: source, b: target }),
            }
        }
    }
    // Dijkstra from distinct sources may disagree by an ulp across the
    // diagonal; symmetrize so the table meets the exact-symmetry invariant.
    for i in 0..n {
        for j in (i + 1)..n {
            let d = table[i * n + j].min(table[j * n + i]);
            table[i * n + j] = d;
            table[j * n + i] = d;
        }
    }
    FiniteMetricSpace::from_flat(n, table)
}

#[derive(Copy, Clone, PartialEq)]
struct HeapEntry {
    dist: f64,
    vertex: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on distance; tie-break on vertex id for determinism.
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_graph_distances() {
        let graph = LengthGraph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let space = shortest_path_metric(&graph).unwrap();
        assert_eq!(space.dist(0, 2), 2.0);
    }

    #[test]
    fn long_edge_bypassed() {
        let graph = LengthGraph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 10.0)]).unwrap();
        let space = shortest_path_metric(&graph).unwrap();
        assert_eq!(space.dist(0, 2), 2.0);
    }

    #[test]
    fn four_cycle_opposite_vertices() {
        let graph =
            LengthGraph::from_edges(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)])
                .unwrap();
        let space = shortest_path_metric(&graph).unwrap();
        assert_eq!(space.dist(0, 2), 2.0);
        assert_eq!(space.dist(1, 3), 2.0);
    }

    #[test]
    fn disconnected_pair_named() {
        let graph = LengthGraph::from_edges(3, &[(0, 1, 1.0)]).unwrap();
        let err = shortest_path_metric(&graph).unwrap_err();
        match err {
            MetricError::Disconnected { a, b } => {
                assert!(b == 2 || a == 2);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_nonpositive_edge() {
        let err = LengthGraph::from_edges(2, &[(0, 1, 0.0)]).unwrap_err();
        assert!(matches!(err, MetricError::BadEdgeLength { .. }));
    }

    #[test]
    fn shortest_path_vertices() {
        let graph = LengthGraph::from_edges(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 10.0)])
            .unwrap();
        let (length, path) = graph.shortest_path(0, 3).unwrap();
        assert_eq!(length, 3.0);
        assert_eq!(path, vec![0, 1, 2, 3]);
    }
}
