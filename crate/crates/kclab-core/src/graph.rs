//! Weighted undirected graphs with exact rational edge lengths and their
//! shortest-path metrics.
//!
//! Internally every graph is rescaled by the least common multiple of its edge
//! denominators so that Dijkstra runs over arbitrary-precision integers. The
//! public surface only speaks [`RationalLength`].

use alloc::collections::BinaryHeap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::bitset::BitSet;
use crate::rational::{common_denominator, RationalLength};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {count} vertices")]
    InvalidVertex { vertex: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(usize, usize),
    #[error("edge {0}-{1} has zero length")]
    NonPositiveLength(usize, usize),
    #[error("graph is disconnected: vertex {unreachable} unreachable from {source_vertex}")]
    DisconnectedGraph { source_vertex: usize, unreachable: usize },
    #[error("{labels} labels supplied for {count} vertices")]
    LabelCountMismatch { labels: usize, count: usize },
    #[error("distance matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("distance matrix has nonzero diagonal at {0}")]
    NonZeroDiagonal(usize),
    #[error("distance matrix row {row} has wrong length")]
    RaggedMatrix { row: usize },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub length: RationalLength,
}

/// Undirected graph on dense vertex ids `0..vertex_count`.
///
/// Edges are stored once with `u < v`, sorted by `(u, v)`. Lengths are
/// strictly positive, there are no self-loops and no parallel edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedGraph {
    labels: Vec<Option<String>>,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, RationalLength)>,
    ) -> Result<Self, GraphError> {
        Self::with_labels(vec![None; vertex_count], edges)
    }

    pub fn with_labels(
        labels: Vec<Option<String>>,
        edges: impl IntoIterator<Item = (usize, usize, RationalLength)>,
    ) -> Result<Self, GraphError> {
        let count = labels.len();
        let mut normalized = Vec::new();
        for (a, b, length) in edges {
            for vertex in [a, b] {
                if vertex >= count {
                    return Err(GraphError::InvalidVertex { vertex, count });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if length.is_zero() {
                return Err(GraphError::NonPositiveLength(a, b));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            normalized.push(Edge { u, v, length });
        }
        normalized.sort_by(|x, y| (x.u, x.v).cmp(&(y.u, y.v)));
        if let Some(w) = normalized.windows(2).find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v)) {
            return Err(GraphError::ParallelEdge(w[0].u, w[0].v));
        }
        Ok(Self { labels, edges: normalized })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn label(&self, vertex: usize) -> Option<&str> {
        self.labels.get(vertex).and_then(|l| l.as_deref())
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    /// Neighbour lists with the original rational lengths, ascending by neighbour id.
    pub fn neighbours(&self) -> Vec<Vec<(usize, RationalLength)>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for e in &self.edges {
            adj[e.u].push((e.v, e.length.clone()));
            adj[e.v].push((e.u, e.length.clone()));
        }
        for list in &mut adj {
            list.sort_by_key(|(v, _)| *v);
        }
        adj
    }

    pub fn scaled(&self) -> ScaledGraph {
        ScaledGraph::new(self)
    }
}

/// Result of a single-source query.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Distance {
    Finite(RationalLength),
    Infinite,
}

impl Distance {
    pub fn finite(&self) -> Option<&RationalLength> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

/// Integer-weighted copy of a graph: every length multiplied by `scale`, the
/// lcm of all edge denominators.
#[derive(Clone, Debug)]
pub struct ScaledGraph {
    scale: BigUint,
    adj: Vec<Vec<(usize, BigUint)>>,
}

/// Single-source distances together with a deterministic predecessor tree.
#[derive(Clone, Debug)]
pub struct ShortestPathTree {
    pub dist: Vec<Option<BigUint>>,
    /// Among all predecessors on a shortest path the smallest id is kept.
    pub pred: Vec<Option<usize>>,
}

impl ScaledGraph {
    fn new(graph: &WeightedGraph) -> Self {
        let scale = common_denominator(graph.edges.iter().map(|e| &e.length));
        let mut adj = vec![Vec::new(); graph.vertex_count()];
        for e in &graph.edges {
            let w = e.length.scaled_by(&scale).expect("scale is a common multiple");
            adj[e.u].push((e.v, w.clone()));
            adj[e.v].push((e.u, w));
        }
        for list in &mut adj {
            list.sort_by_key(|(v, _)| *v);
        }
        Self { scale, adj }
    }

    pub fn scale(&self) -> &BigUint {
        &self.scale
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbours(&self, v: usize) -> &[(usize, BigUint)] {
        &self.adj[v]
    }

    pub fn to_rational(&self, scaled: &BigUint) -> RationalLength {
        RationalLength::from_scaled(scaled, &self.scale)
    }

    /// Dijkstra from a set of sources (all at distance zero). Vertices in
    /// `blocked` are never entered unless they are sources themselves.
    pub fn search(&self, sources: &[usize], blocked: Option<&BitSet>) -> ShortestPathTree {
        let n = self.adj.len();
        let mut dist: Vec<Option<BigUint>> = vec![None; n];
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(BigUint::zero());
                heap.push(Reverse((BigUint::zero(), s)));
            }
        }
        while let Some(Reverse((d, u))) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            for (v, w) in &self.adj[u] {
                let v = *v;
                if done[v] || blocked.is_some_and(|b| b.contains(v)) {
                    continue;
                }
                let candidate = &d + w;
                match &dist[v] {
                    Some(current) if *current < candidate => {}
                    Some(current) if *current == candidate => {
                        if pred[v].is_none_or(|p| u < p) {
                            pred[v] = Some(u);
                        }
                    }
                    _ => {
                        dist[v] = Some(candidate.clone());
                        pred[v] = Some(u);
                        heap.push(Reverse((candidate, v)));
                    }
                }
            }
        }
        ShortestPathTree { dist, pred }
    }

    pub fn distances_from(&self, source: usize) -> Vec<Option<BigUint>> {
        self.search(&[source], None).dist
    }
}

fn check_vertex(graph: &WeightedGraph, vertex: usize) -> Result<(), GraphError> {
    if vertex >= graph.vertex_count() {
        Err(GraphError::InvalidVertex { vertex, count: graph.vertex_count() })
    } else {
        Ok(())
    }
}

/// Exact single-source shortest-path distances; unreachable vertices map to
/// [`Distance::Infinite`].
pub fn shortest_paths(graph: &WeightedGraph, source: usize) -> Result<Vec<Distance>, GraphError> {
    shortest_paths_from_set(graph, &[source])
}

/// Distance from every vertex to the nearest member of `sources`.
pub fn shortest_paths_from_set(
    graph: &WeightedGraph,
    sources: &[usize],
) -> Result<Vec<Distance>, GraphError> {
    for &s in sources {
        check_vertex(graph, s)?;
    }
    let scaled = graph.scaled();
    Ok(scaled
        .search(sources, None)
        .dist
        .iter()
        .map(|d| match d {
            Some(d) => Distance::Finite(scaled.to_rational(d)),
            None => Distance::Infinite,
        })
        .collect())
}

/// Dijkstra predecessor tree with ties broken towards the smaller vertex id.
pub fn shortest_path_tree(graph: &WeightedGraph, source: usize) -> Result<Vec<Option<usize>>, GraphError> {
    check_vertex(graph, source)?;
    Ok(graph.scaled().search(&[source], None).pred)
}

/// Cost of a center set evaluated directly on the graph (multi-source
/// Dijkstra), without materialising the full metric.
pub fn graph_cost(graph: &WeightedGraph, centers: &[usize]) -> Result<Distance, GraphError> {
    let dist = shortest_paths_from_set(graph, centers)?;
    let mut worst = RationalLength::zero();
    for d in dist {
        match d {
            Distance::Finite(d) => worst = worst.max(d),
            Distance::Infinite => return Ok(Distance::Infinite),
        }
    }
    Ok(Distance::Finite(worst))
}

/// Finite metric on points `0..len`, stored as integer numerators over a
/// common scale.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Metric {
    len: usize,
    scale: BigUint,
    entries: Vec<BigUint>,
}

impl Metric {
    /// Builds a metric from already-scaled rows (row `u` holds
    /// `dist(u, v) * scale`). Checks symmetry and the zero diagonal.
    pub fn from_scaled_rows(scale: BigUint, rows: Vec<Vec<BigUint>>) -> Result<Self, GraphError> {
        let len = rows.len();
        let mut entries = Vec::with_capacity(len * len);
        for (row, values) in rows.into_iter().enumerate() {
            if values.len() != len {
                return Err(GraphError::RaggedMatrix { row });
            }
            entries.extend(values);
        }
        let metric = Self { len, scale, entries };
        for u in 0..len {
            if !metric.scaled(u, u).is_zero() {
                return Err(GraphError::NonZeroDiagonal(u));
            }
            for v in (u + 1)..len {
                if metric.scaled(u, v) != metric.scaled(v, u) {
                    return Err(GraphError::NotSymmetric(u, v));
                }
            }
        }
        Ok(metric)
    }

    /// Builds a metric from a rational distance function.
    pub fn from_fn(
        len: usize,
        mut dist: impl FnMut(usize, usize) -> RationalLength,
    ) -> Result<Self, GraphError> {
        let values: Vec<RationalLength> =
            (0..len).flat_map(|u| (0..len).map(move |v| (u, v))).map(|(u, v)| dist(u, v)).collect();
        let scale = common_denominator(&values);
        let rows = values
            .chunks(len.max(1))
            .take(len)
            .map(|row| row.iter().map(|d| d.scaled_by(&scale).expect("common multiple")).collect())
            .collect();
        Self::from_scaled_rows(scale, rows)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn scale(&self) -> &BigUint {
        &self.scale
    }

    pub fn scaled(&self, u: usize, v: usize) -> &BigUint {
        &self.entries[u * self.len + v]
    }

    pub fn dist(&self, u: usize, v: usize) -> RationalLength {
        RationalLength::from_scaled(self.scaled(u, v), &self.scale)
    }

    pub fn to_rational(&self, scaled: &BigUint) -> RationalLength {
        RationalLength::from_scaled(scaled, &self.scale)
    }

    /// Largest scaled value that still lies within `radius`; `dist(u, v) <=
    /// radius` iff `scaled(u, v) <= threshold(radius)`.
    pub fn threshold(&self, radius: &RationalLength) -> BigUint {
        radius.floor_scaled(&self.scale)
    }

    /// `B_center(radius)` as a bitset, given a threshold from [`Metric::threshold`].
    pub fn ball(&self, center: usize, threshold: &BigUint) -> BitSet {
        let mut set = BitSet::new(self.len);
        for v in 0..self.len {
            if self.scaled(center, v) <= threshold {
                set.insert(v);
            }
        }
        set
    }

    /// All balls of a common radius, indexed by center.
    pub fn balls(&self, threshold: &BigUint) -> Vec<BitSet> {
        (0..self.len).map(|c| self.ball(c, threshold)).collect()
    }

    /// `0` together with every distinct pairwise distance, ascending, in scaled form.
    pub fn candidate_values(&self) -> Vec<BigUint> {
        let mut values: Vec<BigUint> = Vec::with_capacity(self.len * self.len / 2 + 1);
        values.push(BigUint::zero());
        for u in 0..self.len {
            for v in (u + 1)..self.len {
                values.push(self.scaled(u, v).clone());
            }
        }
        values.sort();
        values.dedup();
        values
    }

    pub fn candidate_radii(&self) -> Vec<RationalLength> {
        self.candidate_values().iter().map(|v| self.to_rational(v)).collect()
    }

    /// First triple `(u, v, w)` with `dist(u, w) > dist(u, v) + dist(v, w)`.
    pub fn triangle_violation(&self) -> Option<(usize, usize, usize)> {
        for u in 0..self.len {
            for v in 0..self.len {
                let uv = self.scaled(u, v);
                for w in 0..self.len {
                    if *self.scaled(u, w) > uv + self.scaled(v, w) {
                        return Some((u, v, w));
                    }
                }
            }
        }
        None
    }

    /// Metric restricted to a subset of points, re-indexed in the given order.
    pub fn restrict(&self, points: &[usize]) -> Metric {
        let rows = points
            .iter()
            .map(|&u| points.iter().map(|&v| self.scaled(u, v).clone()).collect())
            .collect();
        Metric::from_scaled_rows(self.scale.clone(), rows).expect("restriction of a metric")
    }
}

/// All-pairs shortest-path metric of a connected graph.
pub fn metric_of(graph: &WeightedGraph) -> Result<Metric, GraphError> {
    let scaled = graph.scaled();
    let rows = (0..graph.vertex_count())
        .map(|s| metric_row(&scaled, s))
        .collect::<Result<Vec<_>, _>>()?;
    Metric::from_scaled_rows(scaled.scale().clone(), rows)
}

/// One row of [`metric_of`]; split out so callers can compute rows in parallel.
pub fn metric_row(scaled: &ScaledGraph, source: usize) -> Result<Vec<BigUint>, GraphError> {
    scaled
        .distances_from(source)
        .into_iter()
        .enumerate()
        .map(|(v, d)| d.ok_or(GraphError::DisconnectedGraph { source_vertex: source, unreachable: v }))
        .collect()
}
