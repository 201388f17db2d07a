//! Builders and validators for the structural properties of the reduction
//! graph: an explicit path decomposition, hub sets for every scale, ball
//! covers bounding the doubling dimension, and the intra-gadget distance
//! bounds.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::bitset::BitSet;
use crate::graph::{metric_of, GraphError, Metric, ScaledGraph, WeightedGraph};
use crate::rational::RationalLength;
use crate::reduction::{cycle_len, Adjacency, ReductionInstance};
use crate::setcover::{CoverProblem, MinimumCover};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureCheckError {
    #[error("scale r must be positive")]
    InvalidScale,
    #[error("hub constant c must be at least 4, got {0}")]
    InvalidConstant(RationalLength),
    #[error("ball has {size} points, above the exact cover cap {cap}")]
    BallTooLarge { size: usize, cap: usize },
    #[error("point {0} out of range")]
    InvalidPoint(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

// ---------------------------------------------------------------------------
// Path decompositions

/// Sequence of bags; each bag is sorted and duplicate-free.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PathDecomposition {
    pub bags: Vec<Vec<usize>>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<Vec<usize>>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        Self { bags }
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PathDecompositionViolation {
    UnknownVertex { bag: usize, vertex: usize },
    /// Condition (a): vertex in no bag.
    VertexNotCovered(usize),
    /// Condition (b): no bag holds both endpoints.
    EdgeNotCovered(usize, usize),
    /// Condition (c): the bags holding the vertex are not consecutive.
    NotContiguous(usize),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathDecompositionReport {
    pub valid: bool,
    pub width: usize,
    pub violations: Vec<PathDecompositionViolation>,
}

/// Checks vertex coverage, edge coverage and contiguity exhaustively.
pub fn validate_path_decomposition(graph: &WeightedGraph, pd: &PathDecomposition) -> PathDecompositionReport {
    let n = graph.vertex_count();
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut violations = Vec::new();
    for (index, bag) in pd.bags.iter().enumerate() {
        for &v in bag {
            match occurrences.get_mut(v) {
                Some(list) => list.push(index),
                None => violations.push(PathDecompositionViolation::UnknownVertex { bag: index, vertex: v }),
            }
        }
    }
    for (v, list) in occurrences.iter().enumerate() {
        if list.is_empty() {
            violations.push(PathDecompositionViolation::VertexNotCovered(v));
        }
    }
    for e in graph.edges() {
        let (a, b) = (&occurrences[e.u], &occurrences[e.v]);
        let (mut i, mut j) = (0, 0);
        let mut shared = false;
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    shared = true;
                    break;
                }
            }
        }
        if !shared {
            violations.push(PathDecompositionViolation::EdgeNotCovered(e.u, e.v));
        }
    }
    for (v, list) in occurrences.iter().enumerate() {
        if let (Some(first), Some(last)) = (list.first(), list.last()) {
            if last - first + 1 != list.len() {
                violations.push(PathDecompositionViolation::NotContiguous(v));
            }
        }
    }
    PathDecompositionReport { valid: violations.is_empty(), width: pd.width(), violations }
}

/// The explicit left-to-right decomposition of the reduction graph.
///
/// With `K_ij = {y_ij, x^1_ij, x^3_ij} ∪ {x^2_i'j : i' <= i} ∪ {x^4_i'j : i' >= i}`
/// and `K'_ij = {x^2_i'j : i' <= i} ∪ {x^4_i',j+1 : i' >= i}`, each column
/// `j` walks `K_1j, ..., K_kj`. Between `K_ij` and `K_i+1,j` the cycle is
/// swept by `K_ij ∪ {v_1, v_t, v_t+1}` and then `P'_ij` by `K_ij ∪ {u_t-1, u_t}`.
/// After the last row the cycle is swept the same way, then the horizontal
/// paths `P_ij` are swept bottom-up by `K'_ij ∪ {u_t-1, u_t}`, each followed by
/// `K'_ij`, before moving to the next column. Bags hold at most `kappa + 7`
/// vertices.
pub fn build_path_decomposition(inst: &ReductionInstance) -> PathDecomposition {
    let (kappa, n) = (inst.kappa(), inst.n());
    let labels = &inst.labels;
    let k_bag = |i: usize, j: usize| -> Vec<usize> {
        let mut bag = vec![labels.hub(i, j), labels.connector(i, j, 1), labels.connector(i, j, 3)];
        bag.extend((1..=i).map(|r| labels.connector(r, j, 2)));
        bag.extend((i..=kappa).map(|r| labels.connector(r, j, 4)));
        bag
    };
    let k_prime = |i: usize, j: usize| -> Vec<usize> {
        let mut bag: Vec<usize> = (1..=i).map(|r| labels.connector(r, j, 2)).collect();
        bag.extend((i..=kappa).map(|r| labels.connector(r, j + 1, 4)));
        bag
    };
    let with = |base: &[usize], extra: &[usize]| -> Vec<usize> {
        let mut bag = base.to_vec();
        bag.extend_from_slice(extra);
        bag
    };
    let mut bags = Vec::new();
    let sweep_path = |bags: &mut Vec<Vec<usize>>, base: &[usize], path: &[usize]| {
        for w in path.windows(2) {
            bags.push(with(base, w));
        }
    };

    for j in 1..=kappa {
        for i in 1..=kappa {
            let base = k_bag(i, j);
            bags.push(base.clone());
            let first = labels.cycle(i, j, 1);
            for tau in 1..cycle_len(n) {
                bags.push(with(&base, &[first, labels.cycle(i, j, tau), labels.cycle(i, j, tau + 1)]));
            }
            if i < kappa {
                sweep_path(&mut bags, &base, &labels.path(i, j, Adjacency::Down));
            } else if j < kappa {
                for r in (1..=kappa).rev() {
                    let prime = k_prime(r, j);
                    sweep_path(&mut bags, &prime, &labels.path(r, j, Adjacency::Right));
                    bags.push(prime);
                }
            }
        }
    }
    PathDecomposition::new(bags)
}

// ---------------------------------------------------------------------------
// Hub sets

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HubRegime {
    /// `r > 8n^2 + 2`: connectors and hubs only.
    Long,
    /// `1 <= r <= 8n^2 + 2`: plus every `floor(r)`-th cycle vertex.
    Medium,
    /// `r < 1`: all gadget vertices plus evenly spaced path vertices.
    Short,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HubSet {
    pub scale: RationalLength,
    pub constant_c: RationalLength,
    pub regime: HubRegime,
    /// Sorted vertex ids.
    pub hubs: Vec<usize>,
}

/// Constructive hub set for scale `r`.
///
/// In the short regime the path spacing is `floor(r (n + 2))` edges, raised
/// to 1 when `r < 1 / (n + 2)` (every path edge is then longer than `r`).
pub fn build_hub_set(inst: &ReductionInstance, r: &RationalLength, c: &RationalLength) -> Result<HubSet, StructureCheckError> {
    if r.is_zero() {
        return Err(StructureCheckError::InvalidScale);
    }
    if *c < RationalLength::from_integer(4) {
        return Err(StructureCheckError::InvalidConstant(c.clone()));
    }
    let n = inst.n();
    let labels = &inst.labels;
    let long = RationalLength::from_integer((8 * n * n + 2) as u64);
    let mut hubs: Vec<usize>;
    let regime = if *r > long {
        hubs = labels.connectors_and_hubs();
        HubRegime::Long
    } else if *r >= RationalLength::one() {
        hubs = labels.connectors_and_hubs();
        let step = usize::try_from(&r.floor()).expect("r <= 8n^2 + 2");
        for (i, j) in labels.cells() {
            hubs.extend((1..=cycle_len(n)).step_by(step).map(|pos| labels.cycle(i, j, pos)));
        }
        HubRegime::Medium
    } else {
        hubs = labels.cells().flat_map(|(i, j)| labels.gadget(i, j)).collect();
        let scaled = r * &RationalLength::from_integer((n + 2) as u64);
        let step = usize::try_from(&scaled.floor()).expect("r < 1").max(1);
        for (i, j, dir) in labels.all_paths() {
            let path = labels.path(i, j, dir);
            hubs.extend(path.iter().step_by(step).copied());
        }
        HubRegime::Short
    };
    hubs.sort_unstable();
    hubs.dedup();
    Ok(HubSet { scale: r.clone(), constant_c: c.clone(), regime, hubs })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HubReport {
    /// Unordered pairs `u < v`, both non-hubs, farther apart than `r`, joined
    /// by a shortest path that avoids every hub.
    pub violations: Vec<(usize, usize)>,
    /// `max_v |hubs ∩ B_v(c r)|`
    pub max_hubs_per_ball: usize,
    pub pairs_checked: usize,
}

/// Hub validation is done by deletion: for a non-hub `u`, distances in the
/// graph without the hubs equal the true distances exactly for those `v`
/// reachable by a hub-free shortest path.
pub fn validate_hub_set(
    graph: &WeightedGraph,
    r: &RationalLength,
    hubs: &[usize],
    c: &RationalLength,
) -> Result<HubReport, StructureCheckError> {
    let metric = metric_of(graph)?;
    validate_hub_set_with_metric(&graph.scaled(), &metric, r, hubs, c)
}

/// [`validate_hub_set`] with a precomputed metric of the same graph.
pub fn validate_hub_set_with_metric(
    scaled: &ScaledGraph,
    metric: &Metric,
    r: &RationalLength,
    hubs: &[usize],
    c: &RationalLength,
) -> Result<HubReport, StructureCheckError> {
    let hub_bits = hub_bitset(metric.len(), hubs)?;
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    for u in 0..metric.len() {
        let (found, checked) = hub_violations_from(scaled, metric, r, &hub_bits, u);
        violations.extend(found);
        pairs_checked += checked;
    }
    Ok(HubReport { violations, max_hubs_per_ball: max_hubs_per_ball(metric, r, c, &hub_bits), pairs_checked })
}

pub fn hub_bitset(len: usize, hubs: &[usize]) -> Result<BitSet, StructureCheckError> {
    let mut bits = BitSet::new(len);
    for &h in hubs {
        if h >= len {
            return Err(StructureCheckError::InvalidPoint(h));
        }
        bits.insert(h);
    }
    Ok(bits)
}

/// Violating partners `v > u` of one source `u`, and the number of pairs
/// examined. Independent per source, so callers may run sources in parallel.
pub fn hub_violations_from(
    scaled: &ScaledGraph,
    metric: &Metric,
    r: &RationalLength,
    hubs: &BitSet,
    u: usize,
) -> (Vec<(usize, usize)>, usize) {
    if hubs.contains(u) {
        return (Vec::new(), 0);
    }
    let threshold = metric.threshold(r);
    let free = scaled.search(&[u], Some(hubs)).dist;
    let same_scale = scaled.scale() == metric.scale();
    let mut found = Vec::new();
    let mut checked = 0;
    for v in (u + 1)..metric.len() {
        let true_dist = metric.scaled(u, v);
        if hubs.contains(v) || true_dist <= &threshold {
            continue;
        }
        checked += 1;
        if let Some(d) = &free[v] {
            let equal = if same_scale {
                d == true_dist
            } else {
                d * metric.scale() == true_dist * scaled.scale()
            };
            if equal {
                found.push((u, v));
            }
        }
    }
    (found, checked)
}

pub fn max_hubs_per_ball(metric: &Metric, r: &RationalLength, c: &RationalLength, hubs: &BitSet) -> usize {
    let t = metric.threshold(&(r * c));
    (0..metric.len()).map(|v| metric.ball(v, &t).count_intersection(hubs)).max().unwrap_or(0)
}

// ---------------------------------------------------------------------------
// Doubling covers

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoverMode {
    Exact,
    Greedy,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverReport {
    pub center: usize,
    pub radius: RationalLength,
    /// `|B_center(2r)|`
    pub ball_size: usize,
    /// Number of radius-`r` balls used to cover `B_center(2r)`.
    pub cover_count: usize,
    /// Whether `cover_count` is a proven minimum.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverConfig {
    /// Largest ball the exact search accepts.
    pub exact_cap: usize,
    /// Search nodes before the exact mode settles for the greedy bound.
    pub node_limit: Option<u64>,
}

impl Default for CoverConfig {
    fn default() -> Self {
        Self { exact_cap: 200, node_limit: Some(2_000_000) }
    }
}

/// Number of radius-`r` balls (centered anywhere) needed to cover
/// `B_center(2r)`.
pub fn ball_cover_number(
    metric: &Metric,
    center: usize,
    r: &RationalLength,
    mode: CoverMode,
    config: &CoverConfig,
) -> Result<CoverReport, StructureCheckError> {
    if r.is_zero() {
        return Err(StructureCheckError::InvalidScale);
    }
    if center >= metric.len() {
        return Err(StructureCheckError::InvalidPoint(center));
    }
    let big = metric.ball(center, &metric.threshold(&(r * &RationalLength::from_integer(2))));
    let members: Vec<usize> = big.iter().collect();
    if mode == CoverMode::Exact && members.len() > config.exact_cap {
        return Err(StructureCheckError::BallTooLarge { size: members.len(), cap: config.exact_cap });
    }
    let t = metric.threshold(r);
    let sets: Vec<BitSet> = (0..metric.len())
        .map(|w| {
            let mut set = BitSet::new(members.len());
            for (idx, &m) in members.iter().enumerate() {
                if metric.scaled(w, m) <= &t {
                    set.insert(idx);
                }
            }
            set
        })
        .filter(|s| !s.is_empty())
        .collect();
    let problem = CoverProblem::new(members.len(), sets);
    let (cover_count, exact) = match mode {
        CoverMode::Greedy => (problem.greedy().expect("every member covers itself").len(), false),
        CoverMode::Exact => match problem.minimum(config.node_limit).0 {
            MinimumCover::Exact(w) => (w.len(), true),
            MinimumCover::UpperBound(w) => (w.len(), false),
            MinimumCover::Impossible => unreachable!("every member covers itself"),
        },
    };
    Ok(CoverReport { center, radius: r.clone(), ball_size: members.len(), cover_count, exact })
}

/// Sample plan for the doubling-cover check: one or two vertices of every
/// role class, crossed with radii at and around the case boundaries
/// `n^2 - 1`, `2n^2 + 1` and `12n^2 + 5`.
pub fn doubling_samples(inst: &ReductionInstance) -> Vec<(usize, RationalLength)> {
    let (kappa, n) = (inst.kappa(), inst.n());
    let labels = &inst.labels;
    let n2 = (n * n) as u64;
    let mut vertices = vec![
        labels.cycle(1, 1, 1),
        labels.cycle(kappa, kappa, 2 * n * n + 1),
        labels.connector(1, 1, 2),
        labels.connector(kappa, 1, 3),
        labels.hub(1, 1),
        labels.hub(kappa, kappa),
    ];
    if kappa > 1 {
        vertices.push(labels.path_interior(1, 1, Adjacency::Right).start + n / 2);
        vertices.push(labels.path_interior(1, kappa, Adjacency::Down).start);
    }
    let radii = [
        RationalLength::ratio(1, (n + 2) as u64),
        RationalLength::ratio(1, 2),
        RationalLength::from_integer(n2 - 1),
        RationalLength::from_integer(2 * n2 + 1),
        RationalLength::from_integer(6 * n2),
        RationalLength::from_integer(12 * n2 + 5),
    ];
    vertices
        .iter()
        .flat_map(|&v| radii.iter().map(move |r| (v, r.clone())))
        .collect()
}

// ---------------------------------------------------------------------------
// Gadget distances

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GadgetDistanceViolation {
    ConnectorPair { i: usize, j: usize, q: usize, q2: usize, dist: RationalLength },
    HubTooClose { i: usize, j: usize, vertex: usize, dist: RationalLength },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GadgetDistanceReport {
    pub lower: RationalLength,
    pub upper: RationalLength,
    pub min_connector_pair: RationalLength,
    pub max_connector_pair: RationalLength,
    /// Smallest distance from any `y_ij` to another vertex.
    pub min_hub_distance: RationalLength,
    pub violations: Vec<GadgetDistanceViolation>,
}

impl GadgetDistanceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `7n^2 - 1 <= dist(x^q, x^q') <= 8n^2 + 2` inside every gadget and
/// that each `y_ij` is farther than `2n^2` from every other vertex.
pub fn check_gadget_distances(inst: &ReductionInstance) -> GadgetDistanceReport {
    let n2 = (inst.n() * inst.n()) as u64;
    let lower = RationalLength::from_integer(7 * n2 - 1);
    let upper = RationalLength::from_integer(8 * n2 + 2);
    let scaled = inst.graph.scaled();
    let labels = &inst.labels;
    let mut violations = Vec::new();
    let mut min_pair: Option<BigUint> = None;
    let mut max_pair: Option<BigUint> = None;
    let mut min_hub: Option<BigUint> = None;
    let (lo, hi) = (lower.floor_scaled(scaled.scale()), upper.floor_scaled(scaled.scale()));
    let hub_limit = inst.threshold.floor_scaled(scaled.scale());
    let exact_lo = lower.scaled_by(scaled.scale()).expect("integer bound");
    debug_assert_eq!(lo, exact_lo);
    for (i, j) in labels.cells() {
        for q in 1..=4 {
            let dist = scaled.distances_from(labels.connector(i, j, q));
            for q2 in (q + 1)..=4 {
                let d = dist[labels.connector(i, j, q2)].clone().expect("gadget is connected");
                if d < lo || d > hi {
                    violations.push(GadgetDistanceViolation::ConnectorPair { i, j, q, q2, dist: scaled.to_rational(&d) });
                }
                min_pair = Some(min_pair.map_or(d.clone(), |m| m.min(d.clone())));
                max_pair = Some(max_pair.map_or(d.clone(), |m| m.max(d)));
            }
        }
        let y = labels.hub(i, j);
        let dist = scaled.distances_from(y);
        for (v, d) in dist.iter().enumerate() {
            if v == y {
                continue;
            }
            let d = d.clone().expect("graph is connected");
            if d <= hub_limit {
                violations.push(GadgetDistanceViolation::HubTooClose { i, j, vertex: v, dist: scaled.to_rational(&d) });
            }
            min_hub = Some(min_hub.map_or(d.clone(), |m| m.min(d)));
        }
    }
    let to_r = |v: Option<BigUint>| v.map(|v| scaled.to_rational(&v)).unwrap_or_default();
    GadgetDistanceReport {
        lower,
        upper,
        min_connector_pair: to_r(min_pair),
        max_connector_pair: to_r(max_pair),
        min_hub_distance: to_r(min_hub),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridtiling::{gen_gt, GtInstance};
    use crate::reduction::build_reduction;

    fn r(n: u64) -> RationalLength {
        RationalLength::from_integer(n)
    }

    #[test]
    fn validator_examples() {
        let triangle = WeightedGraph::new(3, [(0, 1, r(1)), (1, 2, r(1)), (0, 2, r(1))]).unwrap();
        let rep = validate_path_decomposition(&triangle, &PathDecomposition::new(vec![vec![0, 1, 2]]));
        assert!(rep.valid);
        assert_eq!(rep.width, 2);

        let path = WeightedGraph::new(3, [(0, 1, r(1)), (1, 2, r(1))]).unwrap();
        let rep = validate_path_decomposition(&path, &PathDecomposition::new(vec![vec![0, 1], vec![1, 2]]));
        assert!(rep.valid);
        assert_eq!(rep.width, 1);

        let rep = validate_path_decomposition(&path, &PathDecomposition::new(vec![vec![0, 1], vec![2]]));
        assert!(!rep.valid);
        assert_eq!(rep.violations, vec![PathDecompositionViolation::EdgeNotCovered(1, 2)]);

        let rep = validate_path_decomposition(&path, &PathDecomposition::new(vec![vec![0, 1], vec![2], vec![1, 2]]));
        assert_eq!(rep.violations, vec![PathDecompositionViolation::NotContiguous(1)]);

        let rep = validate_path_decomposition(&path, &PathDecomposition::new(vec![vec![0, 1, 7]]));
        assert!(rep.violations.contains(&PathDecompositionViolation::VertexNotCovered(2)));
        assert!(rep.violations.contains(&PathDecompositionViolation::UnknownVertex { bag: 0, vertex: 7 }));
    }

    #[test]
    fn first_bag_for_two_by_two() {
        let inst = build_reduction(&gen_gt(2, 2, 1, true, 3).unwrap()).unwrap();
        let pd = build_path_decomposition(&inst);
        let l = &inst.labels;
        let mut expected = vec![
            l.hub(1, 1),
            l.connector(1, 1, 1),
            l.connector(1, 1, 3),
            l.connector(1, 1, 2),
            l.connector(1, 1, 4),
            l.connector(2, 1, 4),
        ];
        expected.sort_unstable();
        assert_eq!(pd.bags[0], expected);
        assert!(pd.max_bag_size() <= 2 + 7);
        assert!(validate_path_decomposition(&inst.graph, &pd).valid);
    }

    #[test]
    fn single_gadget_decomposition_shape() {
        let inst = build_reduction(&GtInstance::new(1, 2, vec![vec![(1, 1)]]).unwrap()).unwrap();
        let pd = build_path_decomposition(&inst);
        assert_eq!(pd.bags.len(), 1 + 67);
        let rep = validate_path_decomposition(&inst.graph, &pd);
        assert!(rep.valid, "{:?}", rep.violations);
        assert_eq!(rep.width, 1 + 6);
    }

    #[test]
    fn hub_regimes_on_single_gadget() {
        let inst = build_reduction(&GtInstance::new(1, 2, vec![vec![(1, 1)]]).unwrap()).unwrap();
        let four = r(4);
        let long = build_hub_set(&inst, &r(35), &four).unwrap();
        assert_eq!(long.regime, HubRegime::Long);
        assert_eq!(long.hubs.len(), 5);

        let medium = build_hub_set(&inst, &r(5), &four).unwrap();
        assert_eq!(medium.regime, HubRegime::Medium);
        let l = &inst.labels;
        for pos in [1, 6, 11, 16, 66] {
            assert!(medium.hubs.contains(&l.cycle(1, 1, pos)));
        }
        assert!(!medium.hubs.contains(&l.cycle(1, 1, 2)));
        assert_eq!(medium.hubs.len(), 5 + 14);

        assert_eq!(build_hub_set(&inst, &RationalLength::zero(), &four), Err(StructureCheckError::InvalidScale));
        assert!(matches!(build_hub_set(&inst, &r(1), &r(3)), Err(StructureCheckError::InvalidConstant(_))));

        for hubs in [&long, &medium] {
            let rep = validate_hub_set(&inst.graph, &hubs.scale, &hubs.hubs, &four).unwrap();
            assert!(rep.violations.is_empty());
        }
    }

    #[test]
    fn short_scale_hubs_step_along_paths() {
        let inst = build_reduction(&gen_gt(2, 2, 1, true, 1).unwrap()).unwrap();
        let hubs = build_hub_set(&inst, &RationalLength::ratio(1, 2), &r(4)).unwrap();
        assert_eq!(hubs.regime, HubRegime::Short);
        let path = inst.labels.path(1, 1, Adjacency::Right);
        let on_path: Vec<bool> = path.iter().map(|v| hubs.hubs.contains(v)).collect();
        assert_eq!(on_path, vec![true, false, true, false, true]);
    }

    #[test]
    fn trivial_hub_sets() {
        let path = WeightedGraph::new(4, [(0, 1, r(1)), (1, 2, r(1)), (2, 3, r(1))]).unwrap();
        let all: Vec<usize> = (0..4).collect();
        let rep = validate_hub_set(&path, &r(1), &all, &r(4)).unwrap();
        assert!(rep.violations.is_empty());
        assert_eq!(rep.max_hubs_per_ball, 4);
        let rep = validate_hub_set(&path, &r(1), &[], &r(4)).unwrap();
        assert_eq!(rep.violations, vec![(0, 2), (0, 3), (1, 3)]);
        let rep = validate_hub_set(&path, &r(1), &[1], &r(4)).unwrap();
        assert!(rep.violations.is_empty());
        assert_eq!(rep.pairs_checked, 2);
    }

    #[test]
    fn cover_numbers_on_small_metrics() {
        let single = Metric::from_fn(1, |_, _| RationalLength::zero()).unwrap();
        let cfg = CoverConfig::default();
        let rep = ball_cover_number(&single, 0, &r(3), CoverMode::Exact, &cfg).unwrap();
        assert_eq!((rep.cover_count, rep.exact), (1, true));

        let uniform = Metric::from_fn(7, |u, v| r(u64::from(u != v))).unwrap();
        let rep = ball_cover_number(&uniform, 2, &r(1), CoverMode::Exact, &cfg).unwrap();
        assert_eq!((rep.ball_size, rep.cover_count), (7, 1));

        // points 0..=8 on a line, ball of radius 4 around 4 covered by radius-2 balls: 2 suffice (2 and 6).
        let line = Metric::from_fn(9, |u, v| r(u.abs_diff(v) as u64)).unwrap();
        let exact = ball_cover_number(&line, 4, &r(2), CoverMode::Exact, &cfg).unwrap();
        assert_eq!(exact.cover_count, 2);
        let greedy = ball_cover_number(&line, 4, &r(2), CoverMode::Greedy, &cfg).unwrap();
        assert!(greedy.cover_count >= exact.cover_count);

        let capped = CoverConfig { exact_cap: 3, ..CoverConfig::default() };
        assert!(matches!(
            ball_cover_number(&line, 4, &r(2), CoverMode::Exact, &capped),
            Err(StructureCheckError::BallTooLarge { size: 9, cap: 3 })
        ));
    }

    #[test]
    fn gadget_distances_single() {
        let inst = build_reduction(&GtInstance::new(1, 2, vec![vec![(1, 1)]]).unwrap()).unwrap();
        let rep = check_gadget_distances(&inst);
        assert!(rep.passed(), "{:?}", rep.violations);
        assert_eq!(rep.min_hub_distance, r(9));
        assert_eq!((rep.lower.clone(), rep.upper.clone()), (r(27), r(34)));
    }
}
