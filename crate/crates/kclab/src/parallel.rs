//! Order-preserving data parallelism over scoped threads.
//!
//! The worker count comes from `KCLAB_THREADS` when set to a positive
//! integer, else from the available parallelism. Results never depend on it.

use std::num::NonZeroUsize;
use std::thread;

use kclab_core::graph::{metric_row, ScaledGraph};
use kclab_core::structure::{hub_bitset, hub_violations_from, max_hubs_per_ball, HubReport, StructureCheckError};
use kclab_core::{GraphError, Metric, RationalLength, WeightedGraph};

pub const THREADS_ENV: &str = "KCLAB_THREADS";

pub fn thread_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, NonZeroUsize::get))
}

/// `items.map(f)`, evaluated on up to [`thread_count`] threads; output order
/// matches input order.
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let threads = thread_count().min(items.len()).max(1);
    if threads == 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                s.spawn(move || part.iter().map(f).collect::<Vec<R>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// Same result as [`kclab_core::graph::metric_of`], rows computed in parallel.
pub fn metric_of(graph: &WeightedGraph) -> Result<Metric, GraphError> {
    let scaled = graph.scaled();
    let sources: Vec<usize> = (0..graph.vertex_count()).collect();
    let rows = par_map(&sources, |&s| metric_row(&scaled, s)).into_iter().collect::<Result<Vec<_>, _>>()?;
    Metric::from_scaled_rows(scaled.scale().clone(), rows)
}

/// Same result as [`kclab_core::structure::validate_hub_set_with_metric`].
pub fn validate_hub_set(
    scaled: &ScaledGraph,
    metric: &Metric,
    r: &RationalLength,
    hubs: &[usize],
    c: &RationalLength,
) -> Result<HubReport, StructureCheckError> {
    let bits = hub_bitset(metric.len(), hubs)?;
    let sources: Vec<usize> = (0..metric.len()).collect();
    let per_source = par_map(&sources, |&u| hub_violations_from(scaled, metric, r, &bits, u));
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    for (found, checked) in per_source {
        violations.extend(found);
        pairs_checked += checked;
    }
    Ok(HubReport { violations, max_hubs_per_ball: max_hubs_per_ball(metric, r, c, &bits), pairs_checked })
}
