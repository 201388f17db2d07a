//! Compiles a Grid Tiling with Inequality instance into a planar k-Center
//! instance and translates solutions in both directions.
//!
//! For every cell `(i, j)` the gadget consists of a unit-length cycle
//! `O_ij = (v_1, ..., v_{16n^2+4})`, four connectors `x^1..x^4` and a hub
//! vertex `y`. The element `s_tau = (a, b)` of the cell's set is encoded by
//! four edges from the connectors into the cycle at positions
//! `tau + (q - 1)(4n^2 + 1)`, with lengths slightly below `2n^2` that depend
//! on `a` (for `x^1`, `x^3`) or `b` (for `x^2`, `x^4`). `y` is joined to
//! `v_1, v_{4n^2+2}, v_{8n^2+3}, v_{12n^2+4}` by edges of length `2n^2 + 1`.
//! Horizontal neighbours are linked by a path `P_ij` from `x^2_ij` to
//! `x^4_{i,j+1}`, vertical neighbours by `P'_ij` from `x^3_ij` to
//! `x^1_{i+1,j}`; both have `n + 2` edges of length `1 / (n + 2)`.
//!
//! The grid instance is solvable iff `5 kappa^2` centers reach cost `2n^2`.
//!
//! # Vertex ids
//!
//! Gadgets are laid out row-major, each as `16n^2 + 9` consecutive ids: the
//! cycle positions `1..=16n^2+4`, then `x^1..x^4`, then `y`. After all
//! gadgets come the `n + 1` interior vertices of every `P_ij` (row-major over
//! `i in 1..=kappa, j in 1..kappa`), then those of every `P'_ij` (row-major
//! over `i in 1..kappa, j in 1..=kappa`). Interior vertices are listed from
//! the `x^2` (resp. `x^3`) end.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::graph::{shortest_paths_from_set, Distance, GraphError, WeightedGraph};
use crate::gridtiling::{GtAssignment, GtError, GtInstance};
use crate::kcenter::CenterSet;
use crate::rational::RationalLength;

/// Role of a vertex of the constructed graph. All indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum VertexRole {
    Cycle { i: usize, j: usize, pos: usize },
    Connector { i: usize, j: usize, q: usize },
    Hub { i: usize, j: usize },
    /// Interior vertex `pos` of the horizontal path from `x^2_ij` to `x^4_{i,j+1}`.
    PathP { i: usize, j: usize, pos: usize },
    /// Interior vertex `pos` of the vertical path from `x^3_ij` to `x^1_{i+1,j}`.
    PathPPrime { i: usize, j: usize, pos: usize },
}

impl VertexRole {
    /// Short textual kind as used in label sidecar files.
    pub fn kind(&self) -> &'static str {
        match self {
            VertexRole::Cycle { .. } => "cycle",
            VertexRole::Connector { q: 1, .. } => "x1",
            VertexRole::Connector { q: 2, .. } => "x2",
            VertexRole::Connector { q: 3, .. } => "x3",
            VertexRole::Connector { .. } => "x4",
            VertexRole::Hub { .. } => "y",
            VertexRole::PathP { .. } => "pathP",
            VertexRole::PathPPrime { .. } => "pathPprime",
        }
    }

    pub fn cell(&self) -> (usize, usize) {
        match *self {
            VertexRole::Cycle { i, j, .. }
            | VertexRole::Connector { i, j, .. }
            | VertexRole::Hub { i, j }
            | VertexRole::PathP { i, j, .. }
            | VertexRole::PathPPrime { i, j, .. } => (i, j),
        }
    }

    pub fn position(&self) -> Option<usize> {
        match *self {
            VertexRole::Cycle { pos, .. } | VertexRole::PathP { pos, .. } | VertexRole::PathPPrime { pos, .. } => {
                Some(pos)
            }
            _ => None,
        }
    }

    /// Parses `kind i j [pos]` fields.
    pub fn from_fields(kind: &str, i: usize, j: usize, pos: Option<usize>) -> Option<Self> {
        Some(match (kind, pos) {
            ("cycle", Some(pos)) => VertexRole::Cycle { i, j, pos },
            ("x1", None) => VertexRole::Connector { i, j, q: 1 },
            ("x2", None) => VertexRole::Connector { i, j, q: 2 },
            ("x3", None) => VertexRole::Connector { i, j, q: 3 },
            ("x4", None) => VertexRole::Connector { i, j, q: 4 },
            ("y", None) => VertexRole::Hub { i, j },
            ("pathP", Some(pos)) => VertexRole::PathP { i, j, pos },
            ("pathPprime", Some(pos)) => VertexRole::PathPPrime { i, j, pos },
            _ => return None,
        })
    }

    /// Human-readable vertex label, e.g. `O_1_2_17`, `x3_2_2`, `y_1_1`, `Pp_1_2_3`.
    pub fn label(&self) -> String {
        match *self {
            VertexRole::Cycle { i, j, pos } => format!("O_{i}_{j}_{pos}"),
            VertexRole::Connector { i, j, q } => format!("x{q}_{i}_{j}"),
            VertexRole::Hub { i, j } => format!("y_{i}_{j}"),
            VertexRole::PathP { i, j, pos } => format!("P_{i}_{j}_{pos}"),
            VertexRole::PathPPrime { i, j, pos } => format!("Pp_{i}_{j}_{pos}"),
        }
    }
}

impl fmt::Display for VertexRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.kind(), self.cell().0, self.cell().1)?;
        if let Some(pos) = self.position() {
            write!(f, " {pos}")?;
        }
        Ok(())
    }
}

/// Horizontal or vertical neighbour relation between two cells.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Adjacency {
    /// `(i, j)` and `(i, j + 1)`, joined by `P_ij`; constraint `b <= b'`.
    Right,
    /// `(i, j)` and `(i + 1, j)`, joined by `P'_ij`; constraint `a <= a'`.
    Down,
}

/// Names every vertex of the constructed graph by its role.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabelMap {
    kappa: usize,
    n: usize,
    roles: Vec<VertexRole>,
}

impl LabelMap {
    pub fn new(kappa: usize, n: usize) -> Self {
        let cycle = cycle_len(n);
        let mut roles = Vec::with_capacity(vertex_count(kappa, n));
        for i in 1..=kappa {
            for j in 1..=kappa {
                roles.extend((1..=cycle).map(|pos| VertexRole::Cycle { i, j, pos }));
                roles.extend((1..=4).map(|q| VertexRole::Connector { i, j, q }));
                roles.push(VertexRole::Hub { i, j });
            }
        }
        for i in 1..=kappa {
            for j in 1..kappa {
                roles.extend((1..=n + 1).map(|pos| VertexRole::PathP { i, j, pos }));
            }
        }
        for i in 1..kappa {
            for j in 1..=kappa {
                roles.extend((1..=n + 1).map(|pos| VertexRole::PathPPrime { i, j, pos }));
            }
        }
        Self { kappa, n, roles }
    }

    /// Validates a role list read back from a sidecar file against the fixed layout.
    pub fn from_roles(roles: Vec<VertexRole>) -> Result<Self, ReductionError> {
        let kappa = roles.iter().map(|r| r.cell().0.max(r.cell().1)).max().unwrap_or(0);
        let cycle = roles
            .iter()
            .filter_map(|r| match r {
                VertexRole::Cycle { pos, .. } => Some(*pos),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        let n = (2..=cycle).find(|&n| cycle_len(n) == cycle).ok_or(ReductionError::LabelLayout)?;
        let expected = Self::new(kappa, n);
        if expected.roles != roles {
            return Err(ReductionError::LabelLayout);
        }
        Ok(expected)
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn roles(&self) -> &[VertexRole] {
        &self.roles
    }

    pub fn role(&self, id: usize) -> VertexRole {
        self.roles[id]
    }

    pub fn len(&self) -> usize {
        self.roles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    fn gadget_base(&self, i: usize, j: usize) -> usize {
        ((i - 1) * self.kappa + (j - 1)) * gadget_size(self.n)
    }

    /// Cycle vertex `v_pos`; positions wrap around modulo the cycle length.
    pub fn cycle(&self, i: usize, j: usize, pos: usize) -> usize {
        let len = cycle_len(self.n);
        self.gadget_base(i, j) + (pos - 1) % len
    }

    pub fn connector(&self, i: usize, j: usize, q: usize) -> usize {
        debug_assert!((1..=4).contains(&q));
        self.gadget_base(i, j) + cycle_len(self.n) + q - 1
    }

    pub fn hub(&self, i: usize, j: usize) -> usize {
        self.gadget_base(i, j) + cycle_len(self.n) + 4
    }

    /// All vertex ids of gadget `(i, j)` (cycle, connectors, hub).
    pub fn gadget(&self, i: usize, j: usize) -> core::ops::Range<usize> {
        let base = self.gadget_base(i, j);
        base..base + gadget_size(self.n)
    }

    /// Interior vertices of the path leaving cell `(i, j)` in the given
    /// direction, in order from the `(i, j)` end.
    pub fn path_interior(&self, i: usize, j: usize, dir: Adjacency) -> core::ops::Range<usize> {
        let k = self.kappa;
        let len = self.n + 1;
        let gadgets = k * k * gadget_size(self.n);
        let base = match dir {
            Adjacency::Right => {
                debug_assert!(j < k);
                gadgets + ((i - 1) * (k - 1) + (j - 1)) * len
            }
            Adjacency::Down => {
                debug_assert!(i < k);
                gadgets + k * (k - 1) * len + ((i - 1) * k + (j - 1)) * len
            }
        };
        base..base + len
    }

    /// Full path `u_0, ..., u_{n+2}` including both connector endpoints.
    pub fn path(&self, i: usize, j: usize, dir: Adjacency) -> Vec<usize> {
        let (start, end) = match dir {
            Adjacency::Right => (self.connector(i, j, 2), self.connector(i, j + 1, 4)),
            Adjacency::Down => (self.connector(i, j, 3), self.connector(i + 1, j, 1)),
        };
        let mut path = vec![start];
        path.extend(self.path_interior(i, j, dir));
        path.push(end);
        path
    }

    /// Every connecting path, horizontal ones first.
    pub fn all_paths(&self) -> Vec<(usize, usize, Adjacency)> {
        let k = self.kappa;
        let mut out = Vec::new();
        for i in 1..=k {
            for j in 1..k {
                out.push((i, j, Adjacency::Right));
            }
        }
        for i in 1..k {
            for j in 1..=k {
                out.push((i, j, Adjacency::Down));
            }
        }
        out
    }

    /// The connector and hub vertices `X`, `5 kappa^2` in total.
    pub fn connectors_and_hubs(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(5 * self.kappa * self.kappa);
        for i in 1..=self.kappa {
            for j in 1..=self.kappa {
                out.extend((1..=4).map(|q| self.connector(i, j, q)));
                out.push(self.hub(i, j));
            }
        }
        out
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.kappa).flat_map(move |i| (1..=self.kappa).map(move |j| (i, j)))
    }
}

pub fn cycle_len(n: usize) -> usize {
    16 * n * n + 4
}

/// Offset between consecutive equidistant cycle positions, `4n^2 + 1`.
pub fn quarter(n: usize) -> usize {
    4 * n * n + 1
}

fn gadget_size(n: usize) -> usize {
    cycle_len(n) + 5
}

/// `kappa^2 (16n^2 + 9) + 2 kappa (kappa - 1)(n + 1)`
pub fn vertex_count(kappa: usize, n: usize) -> usize {
    kappa * kappa * gadget_size(n) + 2 * kappa * (kappa - 1) * (n + 1)
}

/// Closed-form edge count for the given set sizes.
pub fn edge_count(kappa: usize, n: usize, total_elements: usize) -> usize {
    kappa * kappa * (cycle_len(n) + 4) + 4 * total_elements + 2 * kappa * (kappa - 1) * (n + 2)
}

/// Lengths of the four element edges for `s = (a, b)`, connectors `x^1..x^4`.
pub fn element_edge_lengths(n: usize, (a, b): (usize, usize)) -> [RationalLength; 4] {
    let den = (n + 1) as u64;
    let two_n2 = (2 * n * n) as u64;
    let (a, b) = (a as u64, b as u64);
    [
        RationalLength::ratio(two_n2 * den - a, den),
        RationalLength::ratio((two_n2 - 1) * den + b, den),
        RationalLength::ratio((two_n2 - 1) * den + a, den),
        RationalLength::ratio(two_n2 * den - b, den),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("invalid grid tiling instance: {0}")]
    InvalidInstance(#[from] GtError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex labels do not follow the fixed layout")]
    LabelLayout,
    #[error("graph has {graph} vertices but labels describe {labels}")]
    SizeMismatch { graph: usize, labels: usize },
    #[error("graph does not encode a grid tiling instance: {0}")]
    NotAReduction(String),
}

/// Structural facts every center set of cost at most `2n^2` must satisfy.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("{got} centers exceed the budget {budget}")]
    TooManyCenters { got: usize, budget: usize },
    #[error("y_{i},{j} is not a center, but it is farther than 2n^2 from every other vertex")]
    MissingYCenter { i: usize, j: usize },
    #[error("cycle O_{i},{j} holds {count} centers instead of exactly four")]
    CycleCenterCountMismatch { i: usize, j: usize, count: usize },
    #[error("centers on cycle O_{i},{j} at positions {positions:?} are not spaced 4n^2+1 apart")]
    NonEquidistantCycleCenters { i: usize, j: usize, positions: [usize; 4] },
    #[error("cycle O_{i},{j} centers start at position {tau}, which matches no element of S_{i},{j}")]
    NoMatchingElement { i: usize, j: usize, tau: usize },
    #[error("vertex {vertex} ({role}) is a center outside the cycles and hubs")]
    StrayCenter { vertex: usize, role: VertexRole },
}

/// The k-Center instance built from a grid tiling instance.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionInstance {
    pub graph: WeightedGraph,
    pub labels: LabelMap,
    /// `5 kappa^2`
    pub k: usize,
    /// `2n^2`
    pub threshold: RationalLength,
    pub source: GtInstance,
}

impl ReductionInstance {
    pub fn kappa(&self) -> usize {
        self.labels.kappa
    }

    pub fn n(&self) -> usize {
        self.labels.n
    }

    /// Rebuilds the instance from a graph and its role labels, recovering the
    /// grid tiling sets from the element edges. Fails unless rebuilding from
    /// the recovered sets reproduces the graph exactly.
    pub fn from_parts(graph: WeightedGraph, labels: LabelMap) -> Result<Self, ReductionError> {
        if graph.vertex_count() != labels.len() {
            return Err(ReductionError::SizeMismatch { graph: graph.vertex_count(), labels: labels.len() });
        }
        let (kappa, n) = (labels.kappa, labels.n);
        let adj = graph.neighbours();
        let den = BigUint::from(n + 1);
        let decode = |len: &RationalLength, q: usize| -> Option<usize> {
            let scaled: u64 = usize::try_from(&len.scaled_by(&den)?).ok()? as u64;
            let (two_n2, d) = ((2 * n * n) as u64, (n + 1) as u64);
            let v = match q {
                1 | 4 => (two_n2 * d).checked_sub(scaled)?,
                _ => scaled.checked_sub((two_n2 - 1) * d)?,
            };
            (1..=n as u64).contains(&v).then_some(v as usize)
        };
        let mut sets = Vec::with_capacity(kappa * kappa);
        for (i, j) in labels.cells() {
            let mut coords: [Vec<(usize, usize)>; 4] = Default::default();
            for q in 1..=4 {
                let offset = (q - 1) * quarter(n);
                for (v, len) in &adj[labels.connector(i, j, q)] {
                    if let VertexRole::Cycle { i: ci, j: cj, pos } = labels.role(*v) {
                        if (ci, cj) != (i, j) || pos <= offset {
                            return Err(ReductionError::NotAReduction(format!("stray edge at x{q}_{i}_{j}")));
                        }
                        let value = decode(len, q)
                            .ok_or_else(|| ReductionError::NotAReduction(format!("bad length {len} at x{q}_{i}_{j}")))?;
                        coords[q - 1].push((pos - offset, value));
                    }
                }
                coords[q - 1].sort();
            }
            let taus: Vec<usize> = coords[0].iter().map(|c| c.0).collect();
            if taus != (1..=taus.len()).collect::<Vec<_>>() || coords.iter().any(|c| c.iter().map(|e| e.0).ne(taus.iter().copied())) {
                return Err(ReductionError::NotAReduction(format!("element edges of cell ({i}, {j}) are misaligned")));
            }
            sets.push(coords[0].iter().zip(&coords[1]).map(|(a, b)| (a.1, b.1)).collect());
        }
        let source = GtInstance::new(kappa, n, sets)?;
        let rebuilt = build_reduction(&source)?;
        if rebuilt.graph != graph {
            return Err(ReductionError::NotAReduction("graph differs from the canonical construction".into()));
        }
        Ok(rebuilt)
    }
}

/// Builds the graph, labels, budget `5 kappa^2` and threshold `2n^2`.
pub fn build_reduction(gt: &GtInstance) -> Result<ReductionInstance, ReductionError> {
    let (kappa, n) = (gt.kappa(), gt.n());
    let labels = LabelMap::new(kappa, n);
    let one = RationalLength::one();
    let hub_edge = RationalLength::from_integer((2 * n * n + 1) as u64);
    let path_edge = RationalLength::ratio(1, (n + 2) as u64);
    let mut edges = Vec::new();

    for (i, j) in labels.cells() {
        for pos in 1..=cycle_len(n) {
            edges.push((labels.cycle(i, j, pos), labels.cycle(i, j, pos + 1), one.clone()));
        }
        for q in 0..4 {
            edges.push((labels.hub(i, j), labels.cycle(i, j, 1 + q * quarter(n)), hub_edge.clone()));
        }
        for (t, &element) in gt.set(i, j).iter().enumerate() {
            let tau = t + 1;
            for (q, length) in element_edge_lengths(n, element).into_iter().enumerate() {
                edges.push((labels.connector(i, j, q + 1), labels.cycle(i, j, tau + q * quarter(n)), length));
            }
        }
    }
    for (i, j, dir) in labels.all_paths() {
        let path = labels.path(i, j, dir);
        for w in path.windows(2) {
            edges.push((w[0], w[1], path_edge.clone()));
        }
    }

    let names = labels.roles.iter().map(|r| Some(r.label())).collect();
    let graph = WeightedGraph::with_labels(names, edges)?;
    debug_assert_eq!(graph.vertex_count(), vertex_count(kappa, n));
    debug_assert!(graph.edge_count() + 6 <= 3 * graph.vertex_count());
    Ok(ReductionInstance {
        graph,
        labels,
        k: 5 * kappa * kappa,
        threshold: RationalLength::from_integer((2 * n * n) as u64),
        source: gt.clone(),
    })
}

/// The four cycle positions that encode element `tau`.
pub fn element_positions(n: usize, tau: usize) -> [usize; 4] {
    let step = quarter(n);
    [tau, tau + step, tau + 2 * step, tau + 3 * step]
}

/// `{v_tau, v_{tau+4n^2+1}, v_{tau+8n^2+2}, v_{tau+12n^2+3}, y}` for every cell.
///
/// Only the pick indices are validated; the assignment need not satisfy the
/// grid constraints, which lets callers build deliberately violating center
/// sets.
pub fn centers_from_assignment(inst: &ReductionInstance, assignment: &GtAssignment) -> Result<CenterSet, GtError> {
    assignment.resolve(&inst.source)?;
    let (kappa, n) = (inst.kappa(), inst.n());
    let labels = &inst.labels;
    let mut centers = Vec::with_capacity(inst.k);
    for (i, j) in labels.cells() {
        let tau = assignment.pick(kappa, i, j);
        centers.extend(element_positions(n, tau).map(|pos| labels.cycle(i, j, pos)));
        centers.push(labels.hub(i, j));
    }
    Ok(CenterSet::new(centers))
}

/// Reads the grid picks back out of a center set of the required shape.
///
/// Checks, in order: the set fits the budget; every `y_ij` is a center; no
/// center lies off the cycles and hubs; every cycle holds exactly four
/// centers; they are spaced `4n^2 + 1` apart; the first one sits at a
/// position `tau` with `s_tau` in the set.
pub fn assignment_from_centers(inst: &ReductionInstance, centers: &CenterSet) -> Result<GtAssignment, StructureError> {
    let (kappa, n) = (inst.kappa(), inst.n());
    let labels = &inst.labels;
    if centers.len() > inst.k {
        return Err(StructureError::TooManyCenters { got: centers.len(), budget: inst.k });
    }
    for (i, j) in labels.cells() {
        if !centers.contains(labels.hub(i, j)) {
            return Err(StructureError::MissingYCenter { i, j });
        }
    }
    let mut per_cycle: Vec<Vec<usize>> = vec![Vec::new(); kappa * kappa];
    let mut stray = None;
    for &c in centers.ids() {
        match labels.role(c) {
            VertexRole::Cycle { i, j, pos } => per_cycle[(i - 1) * kappa + (j - 1)].push(pos),
            VertexRole::Hub { .. } => {}
            role => {
                stray.get_or_insert(StructureError::StrayCenter { vertex: c, role });
            }
        }
    }
    if let Some(err) = stray {
        return Err(err);
    }
    let mut picks = Vec::with_capacity(kappa * kappa);
    for (i, j) in labels.cells() {
        let positions = &mut per_cycle[(i - 1) * kappa + (j - 1)];
        if positions.len() != 4 {
            return Err(StructureError::CycleCenterCountMismatch { i, j, count: positions.len() });
        }
        positions.sort_unstable();
        let found = [positions[0], positions[1], positions[2], positions[3]];
        if found != element_positions(n, found[0]) {
            return Err(StructureError::NonEquidistantCycleCenters { i, j, positions: found });
        }
        let tau = found[0];
        if tau > inst.source.set(i, j).len() {
            return Err(StructureError::NoMatchingElement { i, j, tau });
        }
        picks.push(tau);
    }
    Ok(GtAssignment::new(picks))
}

/// Adjacent cell pairs whose picks violate their inequality.
pub fn violated_constraints(
    inst: &ReductionInstance,
    assignment: &GtAssignment,
) -> Result<Vec<(usize, usize, Adjacency)>, GtError> {
    let pairs = assignment.resolve(&inst.source)?;
    let k = inst.kappa();
    let at = |i: usize, j: usize| pairs[(i - 1) * k + (j - 1)];
    Ok(inst
        .labels
        .all_paths()
        .into_iter()
        .filter(|&(i, j, dir)| match dir {
            Adjacency::Right => at(i, j).1 > at(i, j + 1).1,
            Adjacency::Down => at(i, j).0 > at(i + 1, j).0,
        })
        .collect())
}

/// Evidence that a violated constraint leaves its connecting path uncovered.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GapWitness {
    /// Closest distance between the cycle centers of the two cells.
    pub center_distance: RationalLength,
    /// Vertices of the connecting path (endpoints included) farther than the
    /// threshold from every center.
    pub uncovered: Vec<usize>,
}

/// Examines the path between cell `(i, j)` and its neighbour in `dir` under
/// the centers induced by `assignment`, at radius `inst.threshold`.
pub fn gap_witness(
    inst: &ReductionInstance,
    assignment: &GtAssignment,
    i: usize,
    j: usize,
    dir: Adjacency,
) -> Result<GapWitness, ReductionError> {
    let centers = centers_from_assignment(inst, assignment)?;
    let (kappa, n) = (inst.kappa(), inst.n());
    let labels = &inst.labels;
    let (ni, nj) = match dir {
        Adjacency::Right => (i, j + 1),
        Adjacency::Down => (i + 1, j),
    };
    let own: Vec<usize> = element_positions(n, assignment.pick(kappa, i, j))
        .iter()
        .map(|&p| labels.cycle(i, j, p))
        .collect();
    let from_own = shortest_paths_from_set(&inst.graph, &own)?;
    let center_distance = element_positions(n, assignment.pick(kappa, ni, nj))
        .iter()
        .filter_map(|&p| from_own[labels.cycle(ni, nj, p)].finite().cloned())
        .min()
        .ok_or_else(|| ReductionError::NotAReduction("neighbouring gadgets are disconnected".into()))?;
    let nearest = shortest_paths_from_set(&inst.graph, centers.ids())?;
    let uncovered = labels
        .path(i, j, dir)
        .into_iter()
        .filter(|&v| match &nearest[v] {
            Distance::Finite(d) => *d > inst.threshold,
            Distance::Infinite => true,
        })
        .collect();
    Ok(GapWitness { center_distance, uncovered })
}
