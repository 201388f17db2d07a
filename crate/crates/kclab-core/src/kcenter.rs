//! k-Center solvers over exact metrics.
//!
//! * [`decide_cover`]: exact decision "do `k` balls of a given radius cover
//!   everything?", by set-cover branch and bound.
//! * [`solve_exact`]: optimum cost, binary search over candidate radii.
//! * [`farthest_first`]: the classical greedy 2-approximation.
//! * [`greedy_net`]: δ-nets in ascending id order.
//! * [`epas_doubling`]: `(1 + ε)`-approximation through nets and brute force,
//!   efficient on metrics of low doubling dimension.
//!
//! Every tie is broken towards the smaller point id, so all results are
//! deterministic.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::bitset::BitSet;
use crate::graph::Metric;
use crate::rational::RationalLength;
use crate::setcover::{CoverProblem, CoverSearch, SearchStats};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KCenterError {
    #[error("center set is empty")]
    EmptyCenterSet,
    #[error("point {point} out of range for a metric on {len} points")]
    InvalidPoint { point: usize, len: usize },
    #[error("k must be at least 1")]
    ZeroK,
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("metric has no points")]
    EmptyMetric,
    #[error("net of size {net_size} exceeds the cap {cap} at radius guess {rho}; epsilon is too small for this instance")]
    BudgetExceeded { net_size: usize, cap: usize, rho: RationalLength },
}

/// Sorted, duplicate-free set of point ids.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CenterSet(Vec<usize>);

impl CenterSet {
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Self(ids)
    }

    pub fn ids(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.0.binary_search(&id).is_ok()
    }
}

impl fmt::Debug for CenterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}

impl fmt::Display for CenterSet {
    /// Comma-separated ids, `-` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for (i, id) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{id}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SolveStatus {
    Sat,
    Unsat,
    Optimal,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::Sat => "SAT",
            SolveStatus::Unsat => "UNSAT",
            SolveStatus::Optimal => "OPTIMAL",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub centers: CenterSet,
    pub cost: RationalLength,
}

impl fmt::Display for SolveOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} cost={} centers={}", self.status, self.cost, self.centers)
    }
}

/// A δ-net: every point lies within δ of a net point and net points are
/// pairwise more than δ apart.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Net {
    pub points: Vec<usize>,
    pub delta: RationalLength,
}

impl Net {
    pub fn is_cover(&self, metric: &Metric) -> bool {
        let t = metric.threshold(&self.delta);
        (0..metric.len()).all(|u| self.points.iter().any(|&p| metric.scaled(u, p) <= &t))
    }

    pub fn is_packing(&self, metric: &Metric) -> bool {
        let t = metric.threshold(&self.delta);
        self.points
            .iter()
            .enumerate()
            .all(|(i, &p)| self.points[i + 1..].iter().all(|&q| metric.scaled(p, q) > &t))
    }
}

fn check_points(metric: &Metric, centers: &CenterSet) -> Result<(), KCenterError> {
    if let Some(&point) = centers.ids().iter().find(|&&c| c >= metric.len()) {
        return Err(KCenterError::InvalidPoint { point, len: metric.len() });
    }
    Ok(())
}

fn scaled_cost(metric: &Metric, centers: &[usize]) -> BigUint {
    (0..metric.len())
        .map(|u| centers.iter().map(|&c| metric.scaled(u, c)).min().expect("nonempty centers"))
        .max()
        .cloned()
        .unwrap_or_default()
}

/// `max_u min_{c in centers} dist(u, c)`, exactly.
pub fn cost(metric: &Metric, centers: &CenterSet) -> Result<RationalLength, KCenterError> {
    if centers.is_empty() {
        return Err(KCenterError::EmptyCenterSet);
    }
    check_points(metric, centers)?;
    Ok(metric.to_rational(&scaled_cost(metric, centers.ids())))
}

fn cover_problem(metric: &Metric, threshold: &BigUint) -> CoverProblem {
    CoverProblem::new(metric.len(), metric.balls(threshold))
}

/// At most `k` centers with cost at most `radius`, or `None` when no such
/// set exists. Exact; see [`crate::setcover`] for the search order.
pub fn decide_cover(metric: &Metric, k: usize, radius: &RationalLength) -> Option<CenterSet> {
    decide_cover_with_stats(metric, k, radius).0
}

pub fn decide_cover_with_stats(metric: &Metric, k: usize, radius: &RationalLength) -> (Option<CenterSet>, SearchStats) {
    decide_scaled(metric, k, &metric.threshold(radius))
}

fn decide_scaled(metric: &Metric, k: usize, threshold: &BigUint) -> (Option<CenterSet>, SearchStats) {
    let (result, stats) = cover_problem(metric, threshold).solve_within(k, None);
    match result {
        CoverSearch::Found(ids) => (Some(CenterSet::new(ids)), stats),
        CoverSearch::Infeasible => (None, stats),
        CoverSearch::LimitReached => unreachable!("no node limit"),
    }
}

/// Optimum k-Center solution. The optimum is always `0` or a pairwise
/// distance, so the smallest feasible candidate is located by binary search.
pub fn solve_exact(metric: &Metric, k: usize) -> Result<SolveOutcome, KCenterError> {
    if k == 0 {
        return Err(KCenterError::ZeroK);
    }
    if metric.is_empty() {
        return Err(KCenterError::EmptyMetric);
    }
    let candidates = metric.candidate_values();
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    let mut best = decide_scaled(metric, k, &candidates[hi]).0.expect("one center covers the diameter");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match decide_scaled(metric, k, &candidates[mid]).0 {
            Some(witness) => {
                best = witness;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    let cost = cost(metric, &best)?;
    debug_assert_eq!(cost, metric.to_rational(&candidates[lo]));
    Ok(SolveOutcome { status: SolveStatus::Optimal, centers: best, cost })
}

/// Farthest-first traversal from point 0: repeatedly add the point farthest
/// from the chosen set (ties to the smaller id) until `k` centers are chosen
/// or every point is at distance zero.
pub fn farthest_first(metric: &Metric, k: usize) -> Result<CenterSet, KCenterError> {
    if k == 0 {
        return Err(KCenterError::ZeroK);
    }
    if metric.is_empty() {
        return Err(KCenterError::EmptyMetric);
    }
    let mut chosen = alloc::vec![0usize];
    let mut nearest: Vec<BigUint> = (0..metric.len()).map(|u| metric.scaled(u, 0).clone()).collect();
    while chosen.len() < k {
        let (far, far_dist) = nearest
            .iter()
            .enumerate()
            .fold((0, &nearest[0]), |acc, (u, d)| if d > acc.1 { (u, d) } else { acc });
        if far_dist == &BigUint::default() {
            break;
        }
        chosen.push(far);
        for (u, d) in nearest.iter_mut().enumerate() {
            let via = metric.scaled(u, far);
            if via < d {
                *d = via.clone();
            }
        }
    }
    Ok(CenterSet::new(chosen))
}

/// Greedy δ-net: scan points by ascending id and keep a point iff it is
/// farther than `delta` from every point kept so far.
pub fn greedy_net(metric: &Metric, delta: &RationalLength) -> Net {
    Net { points: greedy_net_scaled(metric, &metric.threshold(delta)), delta: delta.clone() }
}

fn greedy_net_scaled(metric: &Metric, threshold: &BigUint) -> Vec<usize> {
    let mut points: Vec<usize> = Vec::new();
    for u in 0..metric.len() {
        if points.iter().all(|&p| metric.scaled(u, p) > threshold) {
            points.push(u);
        }
    }
    points
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpasConfig {
    /// Largest net the brute force may enumerate over.
    pub net_cap: usize,
    /// Skip radius guesses below half the farthest-first cost, which are
    /// provably below the optimum.
    pub skip_below_lower_bound: bool,
}

impl Default for EpasConfig {
    fn default() -> Self {
        Self { net_cap: 64, skip_below_lower_bound: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpasOutcome {
    pub outcome: SolveOutcome,
    /// Radius guess at which the solution was accepted.
    pub rho: RationalLength,
    pub net_size: usize,
    /// Largest number of net points inside one radius-`rho` ball around a
    /// returned center. Reported only; the doubling dimension that would
    /// bound it is unknown for an arbitrary input.
    pub max_net_points_per_ball: usize,
    pub guesses_tried: usize,
}

/// `(1 + ε)`-approximate k-Center.
///
/// Radius guesses `rho` run over `0` and the pairwise distances in ascending
/// order. For each guess the greedy `(ε rho / 2)`-net `Y` is computed and all
/// subsets of `Y` with at most `k` points are enumerated (by size, then
/// lexicographically); the first subset with cost at most `(1 + ε) rho` is
/// returned. The result costs at most `(1 + ε)` times the optimum.
pub fn epas_doubling(
    metric: &Metric,
    k: usize,
    epsilon: &RationalLength,
    config: &EpasConfig,
) -> Result<EpasOutcome, KCenterError> {
    epas_doubling_observed(metric, k, epsilon, config, |_| {})
}

/// [`epas_doubling`] that hands every computed net to `observe`.
pub fn epas_doubling_observed(
    metric: &Metric,
    k: usize,
    epsilon: &RationalLength,
    config: &EpasConfig,
    mut observe: impl FnMut(&Net),
) -> Result<EpasOutcome, KCenterError> {
    if k == 0 {
        return Err(KCenterError::ZeroK);
    }
    if epsilon.is_zero() {
        return Err(KCenterError::NonPositiveEpsilon);
    }
    if metric.is_empty() {
        return Err(KCenterError::EmptyMetric);
    }
    let lower_bound = if config.skip_below_lower_bound {
        let greedy = farthest_first(metric, k)?;
        scaled_cost(metric, greedy.ids())
    } else {
        BigUint::default()
    };
    let inflate = &RationalLength::one() + epsilon;
    let mut tried = 0;
    for value in metric.candidate_values() {
        // rho >= greedy / 2  <=>  2 * value >= greedy
        if &value * 2u32 < lower_bound {
            continue;
        }
        tried += 1;
        let rho = metric.to_rational(&value);
        let delta = (epsilon * &rho).half();
        let net = greedy_net(metric, &delta);
        observe(&net);
        if net.points.len() > config.net_cap {
            return Err(KCenterError::BudgetExceeded { net_size: net.points.len(), cap: config.net_cap, rho });
        }
        let accept = metric.threshold(&(&inflate * &rho));
        let balls: Vec<BitSet> = net.points.iter().map(|&p| metric.ball(p, &accept)).collect();
        if let Some(subset) = first_covering_subset(&balls, metric.len(), k) {
            let centers = CenterSet::new(subset.iter().map(|&i| net.points[i]).collect());
            let cost = cost(metric, &centers)?;
            let rho_threshold = metric.threshold(&rho);
            let max_net_points_per_ball = centers
                .ids()
                .iter()
                .map(|&c| net.points.iter().filter(|&&p| metric.scaled(c, p) <= &rho_threshold).count())
                .max()
                .unwrap_or(0);
            return Ok(EpasOutcome {
                outcome: SolveOutcome { status: SolveStatus::Sat, centers, cost },
                rho,
                net_size: net.points.len(),
                max_net_points_per_ball,
                guesses_tried: tried,
            });
        }
    }
    unreachable!("the largest guess is the diameter, which one center covers")
}

/// First subset (by size, then lexicographic) of at most `k` balls whose
/// union is everything.
fn first_covering_subset(balls: &[BitSet], universe: usize, k: usize) -> Option<Vec<usize>> {
    let m = balls.len();
    for size in 1..=k.min(m) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mut union = BitSet::new(universe);
            for &i in &idx {
                union.union_with(&balls[i]);
            }
            if union.count() == universe {
                return Some(idx);
            }
            let mut pos = size;
            let advanced = loop {
                if pos == 0 {
                    break false;
                }
                pos -= 1;
                if idx[pos] < m - size + pos {
                    idx[pos] += 1;
                    for later in pos + 1..size {
                        idx[later] = idx[later - 1] + 1;
                    }
                    break true;
                }
            };
            if !advanced {
                break;
            }
        }
    }
    None
}
