//! Grid Tiling with Inequality.
//!
//! An instance is a `kappa x kappa` grid of nonempty sets of pairs from
//! `[n]^2`. A solution picks one pair per cell so that first coordinates never
//! decrease going down a column and second coordinates never decrease going
//! right along a row.
//!
//! Cells and picks are 1-indexed: cell `(i, j)` with `i, j` in `1..=kappa`,
//! and pick `tau` in `1..=|S_ij|` names the `tau`-th pair of the set in its
//! fixed order.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GtError {
    #[error("kappa must be at least 1")]
    InvalidKappa,
    #[error("n must be at least 2, got {0}")]
    InvalidN(usize),
    #[error("expected {expected} sets, got {got}")]
    WrongSetCount { expected: usize, got: usize },
    #[error("set ({i}, {j}) is empty")]
    EmptySet { i: usize, j: usize },
    #[error("pair ({a}, {b}) in set ({i}, {j}) is outside [{n}]^2")]
    CoordinateOutOfRange { i: usize, j: usize, a: usize, b: usize, n: usize },
    #[error("pair ({a}, {b}) repeated in set ({i}, {j})")]
    DuplicatePair { i: usize, j: usize, a: usize, b: usize },
    #[error("expected {expected} picks, got {got}")]
    PickCountMismatch { expected: usize, got: usize },
    #[error("pick {tau} out of range for set ({i}, {j}) of size {size}")]
    IndexOutOfRange { i: usize, j: usize, tau: usize, size: usize },
    #[error("set size {set_size} infeasible for n = {n} (must be in 1..=n^2)")]
    InfeasibleParams { set_size: usize, n: usize },
}

pub type Pair = (usize, usize);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GtInstance {
    kappa: usize,
    n: usize,
    /// Row-major: cell `(i, j)` lives at `(i - 1) * kappa + (j - 1)`.
    sets: Vec<Vec<Pair>>,
}

impl GtInstance {
    pub fn new(kappa: usize, n: usize, sets: Vec<Vec<Pair>>) -> Result<Self, GtError> {
        if kappa == 0 {
            return Err(GtError::InvalidKappa);
        }
        if n < 2 {
            return Err(GtError::InvalidN(n));
        }
        if sets.len() != kappa * kappa {
            return Err(GtError::WrongSetCount { expected: kappa * kappa, got: sets.len() });
        }
        for (index, set) in sets.iter().enumerate() {
            let (i, j) = (index / kappa + 1, index % kappa + 1);
            if set.is_empty() {
                return Err(GtError::EmptySet { i, j });
            }
            for (pos, &(a, b)) in set.iter().enumerate() {
                if !(1..=n).contains(&a) || !(1..=n).contains(&b) {
                    return Err(GtError::CoordinateOutOfRange { i, j, a, b, n });
                }
                if set[..pos].contains(&(a, b)) {
                    return Err(GtError::DuplicatePair { i, j, a, b });
                }
            }
        }
        Ok(Self { kappa, n, sets })
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&self, i: usize, j: usize) -> &[Pair] {
        &self.sets[self.cell(i, j)]
    }

    /// Sets in row-major order.
    pub fn sets(&self) -> &[Vec<Pair>] {
        &self.sets
    }

    fn cell(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.kappa + (j - 1)
    }

    /// Pair selected by `tau` in cell `(i, j)`.
    pub fn element(&self, i: usize, j: usize, tau: usize) -> Result<Pair, GtError> {
        let set = self.set(i, j);
        tau.checked_sub(1)
            .and_then(|t| set.get(t).copied())
            .ok_or(GtError::IndexOutOfRange { i, j, tau, size: set.len() })
    }
}

/// One 1-based pick `tau` per cell, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GtAssignment {
    picks: Vec<usize>,
}

impl GtAssignment {
    pub fn new(picks: Vec<usize>) -> Self {
        Self { picks }
    }

    /// Same pick for every one of the `kappa^2` cells.
    pub fn uniform(kappa: usize, tau: usize) -> Self {
        Self { picks: vec![tau; kappa * kappa] }
    }

    pub fn picks(&self) -> &[usize] {
        &self.picks
    }

    pub fn pick(&self, kappa: usize, i: usize, j: usize) -> usize {
        self.picks[(i - 1) * kappa + (j - 1)]
    }

    pub fn set_pick(&mut self, kappa: usize, i: usize, j: usize, tau: usize) {
        self.picks[(i - 1) * kappa + (j - 1)] = tau;
    }

    /// Resolve every pick to its pair, validating indices.
    pub fn resolve(&self, instance: &GtInstance) -> Result<Vec<Pair>, GtError> {
        let k = instance.kappa;
        if self.picks.len() != k * k {
            return Err(GtError::PickCountMismatch { expected: k * k, got: self.picks.len() });
        }
        self.picks
            .iter()
            .enumerate()
            .map(|(index, &tau)| instance.element(index / k + 1, index % k + 1, tau))
            .collect()
    }
}

/// Whether the assignment satisfies every row and column inequality.
pub fn check_gt_assignment(instance: &GtInstance, assignment: &GtAssignment) -> Result<bool, GtError> {
    let pairs = assignment.resolve(instance)?;
    let k = instance.kappa;
    let at = |i: usize, j: usize| pairs[(i - 1) * k + (j - 1)];
    for i in 1..=k {
        for j in 1..=k {
            let (a, b) = at(i, j);
            if i < k && a > at(i + 1, j).0 {
                return Ok(false);
            }
            if j < k && b > at(i, j + 1).1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exhaustive search for a solution.
///
/// Cells are filled column-major (`j` outer, `i` inner) with picks tried in
/// ascending `tau`; a partial fill is abandoned as soon as the new cell
/// violates the constraint with its upper or left neighbour. Returns `None`
/// when the instance has no solution.
pub fn solve_gt(instance: &GtInstance) -> Option<GtAssignment> {
    fn fill(instance: &GtInstance, order: &[(usize, usize)], depth: usize, picks: &mut Vec<usize>) -> bool {
        let Some(&(i, j)) = order.get(depth) else {
            return true;
        };
        let k = instance.kappa;
        let chosen = |picks: &[usize], i: usize, j: usize| instance.set(i, j)[picks[(i - 1) * k + (j - 1)] - 1];
        for (t, &(a, b)) in instance.set(i, j).iter().enumerate() {
            if i > 1 && chosen(picks, i - 1, j).0 > a {
                continue;
            }
            if j > 1 && chosen(picks, i, j - 1).1 > b {
                continue;
            }
            picks[(i - 1) * k + (j - 1)] = t + 1;
            if fill(instance, order, depth + 1, picks) {
                return true;
            }
        }
        picks[(i - 1) * k + (j - 1)] = 0;
        false
    }

    let k = instance.kappa;
    let order: Vec<(usize, usize)> = (1..=k).flat_map(|j| (1..=k).map(move |i| (i, j))).collect();
    let mut picks = vec![0; k * k];
    let found = fill(instance, &order, 0, &mut picks).then(|| GtAssignment::new(picks));
    debug_assert!(found
        .as_ref()
        .is_none_or(|a| check_gt_assignment(instance, a) == Ok(true)));
    found
}

/// Deterministic random instance generator.
///
/// With `planted`, a monotone grid of pairs is drawn first (each column's
/// first coordinates and each row's second coordinates are sorted random
/// draws from `[n]`); every set receives its planted pair plus
/// `set_size - 1` further distinct random pairs, and its order is then
/// shuffled. Without `planted`, every set is `set_size` distinct uniform pairs.
pub fn gen_gt(kappa: usize, n: usize, set_size: usize, planted: bool, seed: u64) -> Result<GtInstance, GtError> {
    if kappa == 0 {
        return Err(GtError::InvalidKappa);
    }
    if n < 2 {
        return Err(GtError::InvalidN(n));
    }
    if set_size == 0 || set_size > n * n {
        return Err(GtError::InfeasibleParams { set_size, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sorted_draws = |rng: &mut ChaCha8Rng| {
        let mut values: Vec<usize> = (0..kappa).map(|_| rng.random_range(1..=n)).collect();
        values.sort_unstable();
        values
    };
    let plant: Option<Vec<Pair>> = planted.then(|| {
        // first_coord[j][i] nondecreasing in i; second_coord[i][j] nondecreasing in j.
        let first_coord: Vec<Vec<usize>> = (0..kappa).map(|_| sorted_draws(&mut rng)).collect();
        let second_coord: Vec<Vec<usize>> = (0..kappa).map(|_| sorted_draws(&mut rng)).collect();
        (0..kappa * kappa)
            .map(|cell| {
                let (i, j) = (cell / kappa, cell % kappa);
                (first_coord[j][i], second_coord[i][j])
            })
            .collect()
    });

    let mut sets = Vec::with_capacity(kappa * kappa);
    for cell in 0..kappa * kappa {
        let mut set: Vec<Pair> = Vec::with_capacity(set_size);
        if let Some(plant) = &plant {
            set.push(plant[cell]);
        }
        while set.len() < set_size {
            let pair = (rng.random_range(1..=n), rng.random_range(1..=n));
            if !set.contains(&pair) {
                set.push(pair);
            }
        }
        set.shuffle(&mut rng);
        sets.push(set);
    }
    GtInstance::new(kappa, n, sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Full enumeration of every pick combination, no pruning.
    fn brute_force(instance: &GtInstance) -> bool {
        let sizes: Vec<usize> = instance.sets().iter().map(Vec::len).collect();
        let mut picks = vec![1; sizes.len()];
        loop {
            if check_gt_assignment(instance, &GtAssignment::new(picks.clone())).unwrap() {
                return true;
            }
            let mut carry = 0;
            loop {
                if carry == picks.len() {
                    return false;
                }
                if picks[carry] < sizes[carry] {
                    picks[carry] += 1;
                    break;
                }
                picks[carry] = 1;
                carry += 1;
            }
        }
    }

    fn two_by_two(sets: [&[Pair]; 4]) -> GtInstance {
        GtInstance::new(2, 2, sets.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert_eq!(GtInstance::new(0, 2, vec![]), Err(GtError::InvalidKappa));
        assert_eq!(GtInstance::new(1, 1, vec![vec![(1, 1)]]), Err(GtError::InvalidN(1)));
        assert_eq!(GtInstance::new(1, 2, vec![vec![]]), Err(GtError::EmptySet { i: 1, j: 1 }));
        assert!(matches!(GtInstance::new(1, 2, vec![vec![(3, 1)]]), Err(GtError::CoordinateOutOfRange { .. })));
        assert!(matches!(GtInstance::new(1, 2, vec![vec![(1, 1), (1, 1)]]), Err(GtError::DuplicatePair { .. })));
        assert!(matches!(GtInstance::new(2, 2, vec![vec![(1, 1)]]), Err(GtError::WrongSetCount { .. })));
    }

    #[test]
    fn single_cell_is_unconstrained() {
        let inst = GtInstance::new(1, 3, vec![vec![(3, 1), (2, 2)]]).unwrap();
        assert!(check_gt_assignment(&inst, &GtAssignment::new(vec![2])).unwrap());
        assert_eq!(solve_gt(&inst), Some(GtAssignment::new(vec![1])));
    }

    #[test]
    fn two_by_two_checks() {
        let inst = two_by_two([&[(1, 1), (1, 2)], &[(1, 2), (1, 1)], &[(2, 1)], &[(2, 2)]]);
        // S11 -> (1,1), S12 -> (1,2), S21 -> (2,1), S22 -> (2,2)
        assert!(check_gt_assignment(&inst, &GtAssignment::new(vec![1, 1, 1, 1])).unwrap());
        // S11 -> (1,2), S12 -> (1,1): b = 2 > b' = 1
        assert!(!check_gt_assignment(&inst, &GtAssignment::new(vec![2, 2, 1, 1])).unwrap());
        assert!(matches!(
            check_gt_assignment(&inst, &GtAssignment::new(vec![3, 1, 1, 1])),
            Err(GtError::IndexOutOfRange { i: 1, j: 1, tau: 3, size: 2 })
        ));
    }

    #[test]
    fn curated_verdicts() {
        let unsat = two_by_two([&[(1, 2)], &[(1, 1)], &[(2, 2)], &[(2, 2)]]);
        assert_eq!(solve_gt(&unsat), None);
        let sat = two_by_two([&[(1, 1)], &[(1, 2)], &[(2, 1)], &[(2, 2)]]);
        assert_eq!(solve_gt(&sat), Some(GtAssignment::uniform(2, 1)));
    }

    #[test]
    fn generator_contract() {
        assert!(solve_gt(&gen_gt(2, 2, 1, true, 7).unwrap()).is_some());
        assert!(solve_gt(&gen_gt(1, 3, 2, false, 1).unwrap()).is_some());
        assert_eq!(gen_gt(3, 3, 2, true, 42).unwrap(), gen_gt(3, 3, 2, true, 42).unwrap());
        assert_eq!(gen_gt(2, 2, 5, true, 0), Err(GtError::InfeasibleParams { set_size: 5, n: 2 }));
        let full = gen_gt(1, 2, 4, false, 3).unwrap();
        assert_eq!(full.set(1, 1).len(), 4);
    }

    proptest! {
        #[test]
        fn solver_matches_enumeration(kappa in 1usize..=2, n in 2usize..=3, size in 1usize..=3, planted: bool, seed: u64) {
            let inst = gen_gt(kappa, n, size, planted, seed).unwrap();
            let solved = solve_gt(&inst);
            prop_assert_eq!(solved.is_some(), brute_force(&inst));
            if let Some(a) = solved {
                prop_assert!(check_gt_assignment(&inst, &a).unwrap());
            }
            if planted || kappa == 1 {
                prop_assert!(brute_force(&inst));
            }
        }
    }
}
