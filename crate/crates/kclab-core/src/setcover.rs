//! Exact set cover by branch and bound.
//!
//! A problem is a universe of elements `0..elements` and a list of candidate
//! sets. The search answers "can at most `budget` candidates cover every
//! element?" and returns the first witness in a fixed deterministic order:
//!
//! * forced choices: an uncovered element with a single remaining candidate
//!   takes that candidate immediately;
//! * pruning: a greedy anticover (uncovered elements no two of which share a
//!   remaining candidate) lower-bounds the number of further sets needed;
//! * branching: on the uncovered element with the fewest remaining
//!   candidates (ties to the smaller id), trying candidates in ascending id.
//!   Once a candidate's branch fails it is excluded from its later siblings.

use alloc::vec::Vec;

use crate::bitset::BitSet;

#[derive(Clone, Debug)]
pub struct CoverProblem {
    elements: usize,
    sets: Vec<BitSet>,
    /// For each element, the candidates containing it.
    covering: Vec<BitSet>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CoverSearch {
    Found(Vec<usize>),
    Infeasible,
    /// The node limit was hit before the question was settled.
    LimitReached,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MinimumCover {
    /// Proven minimum with a witness.
    Exact(Vec<usize>),
    /// Search gave up; the greedy cover is only an upper bound.
    UpperBound(Vec<usize>),
    /// Some element lies in no candidate.
    Impossible,
}

#[derive(Clone, Copy, Default, Debug, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
}

struct State {
    covered: BitSet,
    forbidden: BitSet,
    chosen: Vec<usize>,
    nodes: u64,
    limit: Option<u64>,
}

enum Step {
    Found,
    Fail,
    Limit,
}

impl CoverProblem {
    /// `sets[c]` is the subset of `0..elements` covered by candidate `c`.
    pub fn new(elements: usize, sets: Vec<BitSet>) -> Self {
        let mut covering: Vec<BitSet> = (0..elements).map(|_| BitSet::new(sets.len())).collect();
        for (c, set) in sets.iter().enumerate() {
            debug_assert_eq!(set.len(), elements);
            for e in set.iter() {
                covering[e].insert(c);
            }
        }
        Self { elements, sets, covering }
    }

    pub fn elements(&self) -> usize {
        self.elements
    }

    pub fn candidates(&self) -> usize {
        self.sets.len()
    }

    pub fn set(&self, candidate: usize) -> &BitSet {
        &self.sets[candidate]
    }

    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        let mut covered = BitSet::new(self.elements);
        for &c in chosen {
            covered.union_with(&self.sets[c]);
        }
        covered.count() == self.elements
    }

    /// Decides whether `budget` candidates suffice.
    pub fn solve_within(&self, budget: usize, node_limit: Option<u64>) -> (CoverSearch, SearchStats) {
        let mut state = State {
            covered: BitSet::new(self.elements),
            forbidden: BitSet::new(self.sets.len()),
            chosen: Vec::new(),
            nodes: 0,
            limit: node_limit,
        };
        let result = match self.search(&mut state, budget) {
            Step::Found => CoverSearch::Found(state.chosen.clone()),
            Step::Fail => CoverSearch::Infeasible,
            Step::Limit => CoverSearch::LimitReached,
        };
        (result, SearchStats { nodes: state.nodes })
    }

    /// Repeatedly picks the candidate covering the most uncovered elements
    /// (ties to the smaller id). `None` if some element cannot be covered.
    pub fn greedy(&self) -> Option<Vec<usize>> {
        let mut covered = BitSet::new(self.elements);
        let mut chosen = Vec::new();
        while covered.count() < self.elements {
            let (best, gain) = self
                .sets
                .iter()
                .enumerate()
                .map(|(c, set)| (c, set.count_difference(&covered)))
                .fold((0, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
            if gain == 0 {
                return None;
            }
            covered.union_with(&self.sets[best]);
            chosen.push(best);
        }
        Some(chosen)
    }

    /// Anticover lower bound on the number of sets needed to cover everything.
    pub fn lower_bound(&self) -> usize {
        self.anticover(&BitSet::new(self.elements), &BitSet::new(self.sets.len()))
    }

    /// Minimum cover: iterative deepening from the anticover bound up to the
    /// greedy size, sharing one node budget across all rounds.
    pub fn minimum(&self, node_limit: Option<u64>) -> (MinimumCover, SearchStats) {
        let Some(greedy) = self.greedy() else {
            return (MinimumCover::Impossible, SearchStats::default());
        };
        let mut stats = SearchStats::default();
        let start = self.lower_bound();
        for budget in start..greedy.len() {
            let remaining = node_limit.map(|l| l.saturating_sub(stats.nodes));
            let (result, round) = self.solve_within(budget, remaining);
            stats.nodes += round.nodes;
            match result {
                CoverSearch::Found(witness) => return (MinimumCover::Exact(witness), stats),
                CoverSearch::Infeasible => {}
                CoverSearch::LimitReached => return (MinimumCover::UpperBound(greedy), stats),
            }
        }
        (MinimumCover::Exact(greedy), stats)
    }

    fn allowed(&self, element: usize, forbidden: &BitSet) -> BitSet {
        let mut set = self.covering[element].clone();
        set.difference_with(forbidden);
        set
    }

    fn anticover(&self, covered: &BitSet, forbidden: &BitSet) -> usize {
        let mut order: Vec<(usize, usize)> = (0..self.elements)
            .filter(|&e| !covered.contains(e))
            .map(|e| (self.covering[e].count_difference(forbidden), e))
            .collect();
        order.sort_unstable();
        let mut used = BitSet::new(self.sets.len());
        let mut size = 0;
        for (_, e) in order {
            let allowed = self.allowed(e, forbidden);
            if !allowed.intersects(&used) {
                used.union_with(&allowed);
                size += 1;
            }
        }
        size
    }

    fn choose(&self, state: &mut State, candidate: usize) {
        state.covered.union_with(&self.sets[candidate]);
        state.chosen.push(candidate);
    }

    fn search(&self, state: &mut State, budget: usize) -> Step {
        state.nodes += 1;
        if state.limit.is_some_and(|l| state.nodes > l) {
            return Step::Limit;
        }
        let saved_covered = state.covered.clone();
        let saved_len = state.chosen.len();
        let restore = |state: &mut State| {
            state.covered = saved_covered.clone();
            state.chosen.truncate(saved_len);
        };

        // Forced choices, then pick the branching element.
        let branch_on = loop {
            let mut best: Option<(usize, usize)> = None;
            for e in (0..self.elements).filter(|&e| !state.covered.contains(e)) {
                let count = self.covering[e].count_difference(&state.forbidden);
                if best.is_none_or(|(c, _)| count < c) {
                    best = Some((count, e));
                    if count <= 1 {
                        break;
                    }
                }
            }
            match best {
                None => return Step::Found,
                Some((0, _)) => {
                    restore(state);
                    return Step::Fail;
                }
                Some((1, e)) => {
                    if state.chosen.len() == budget {
                        restore(state);
                        return Step::Fail;
                    }
                    let only = self.allowed(e, &state.forbidden).iter().next().expect("one candidate");
                    self.choose(state, only);
                }
                Some((_, e)) => break e,
            }
        };

        if state.chosen.len() + self.anticover(&state.covered, &state.forbidden) > budget {
            restore(state);
            return Step::Fail;
        }

        let options: Vec<usize> = self.allowed(branch_on, &state.forbidden).iter().collect();
        let mut excluded = Vec::new();
        let mut outcome = Step::Fail;
        for c in options {
            let before = state.covered.clone();
            let len = state.chosen.len();
            self.choose(state, c);
            match self.search(state, budget) {
                Step::Found => return Step::Found,
                Step::Limit => {
                    outcome = Step::Limit;
                    break;
                }
                Step::Fail => {}
            }
            state.covered = before;
            state.chosen.truncate(len);
            state.forbidden.insert(c);
            excluded.push(c);
        }
        for c in excluded {
            state.forbidden.remove(c);
        }
        restore(state);
        outcome
    }
}
