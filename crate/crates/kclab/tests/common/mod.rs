//! Reference implementations used as oracles by the integration tests.
//! Deliberately naive and written without the library's algorithms.

#![allow(dead_code)]

use kclab_core::{GtInstance, Metric, RationalLength, WeightedGraph};

pub const UNREACHABLE: u64 = u64::MAX;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn to_u64(r: &RationalLength) -> (u64, u64) {
    (u64::try_from(r.numer()).expect("small numerator"), u64::try_from(r.denom()).expect("small denominator"))
}

/// A graph with every length multiplied by the lcm of the denominators.
pub struct IntGraph {
    pub scale: u64,
    pub adj: Vec<Vec<(usize, u64)>>,
}

impl IntGraph {
    pub fn new(graph: &WeightedGraph) -> Self {
        let scale = graph.edges().iter().fold(1u64, |acc, e| {
            let d = to_u64(&e.length).1;
            acc / gcd(acc, d) * d
        });
        let mut adj = vec![Vec::new(); graph.vertex_count()];
        for e in graph.edges() {
            let (p, q) = to_u64(&e.length);
            let w = p * (scale / q);
            adj[e.u].push((e.v, w));
            adj[e.v].push((e.u, w));
        }
        Self { scale, adj }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    /// Multi-source distances by the quadratic array version of Dijkstra.
    pub fn distances(&self, sources: &[usize]) -> Vec<u64> {
        let n = self.adj.len();
        let mut dist = vec![UNREACHABLE; n];
        let mut done = vec![false; n];
        for &s in sources {
            dist[s] = 0;
        }
        loop {
            let mut best = None;
            for v in 0..n {
                if !done[v] && dist[v] != UNREACHABLE && best.is_none_or(|b: usize| dist[v] < dist[b]) {
                    best = Some(v);
                }
            }
            let Some(u) = best else { break };
            done[u] = true;
            for &(v, w) in &self.adj[u] {
                if dist[u] + w < dist[v] {
                    dist[v] = dist[u] + w;
                }
            }
        }
        dist
    }

    /// Integer form of a rational radius at this scale: `d <= r` iff `d <= floor(r * scale)`.
    pub fn radius(&self, r: &RationalLength) -> u64 {
        let (p, q) = to_u64(r);
        p * self.scale / q
    }

    pub fn rational(&self, d: u64) -> RationalLength {
        RationalLength::ratio(d, self.scale)
    }

    pub fn all_pairs(&self) -> Vec<Vec<u64>> {
        (0..self.len()).map(|s| self.distances(&[s])).collect()
    }
}

/// Brute-force grid tiling: tries every combination of picks.
pub fn gt_satisfiable(gt: &GtInstance) -> bool {
    let k = gt.kappa();
    let cells: Vec<(usize, usize)> = (1..=k).flat_map(|i| (1..=k).map(move |j| (i, j))).collect();
    let mut choice = vec![0usize; cells.len()];
    loop {
        let pair = |i: usize, j: usize| gt.set(i, j)[choice[(i - 1) * k + (j - 1)]];
        let ok = cells.iter().all(|&(i, j)| {
            (i == k || pair(i, j).0 <= pair(i + 1, j).0) && (j == k || pair(i, j).1 <= pair(i, j + 1).1)
        });
        if ok {
            return true;
        }
        let mut c = 0;
        loop {
            if c == cells.len() {
                return false;
            }
            choice[c] += 1;
            let (i, j) = cells[c];
            if choice[c] < gt.set(i, j).len() {
                break;
            }
            choice[c] = 0;
            c += 1;
        }
    }
}

/// Every subset of `0..n` with exactly `size` elements, lexicographically.
pub fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

pub fn matrix_cost(d: &[Vec<u64>], centers: &[usize]) -> u64 {
    (0..d.len()).map(|u| centers.iter().map(|&c| d[u][c]).min().unwrap()).max().unwrap()
}

/// Optimal k-center cost by enumerating all subsets of size `min(k, n)`.
pub fn brute_optimum(d: &[Vec<u64>], k: usize) -> u64 {
    subsets(d.len(), k.min(d.len())).iter().map(|s| matrix_cost(d, s)).min().unwrap()
}

/// Metric of an integer matrix whose entries are numerators over `scale`.
pub fn metric_from_matrix(d: &[Vec<u64>], scale: u64) -> Metric {
    Metric::from_fn(d.len(), |u, v| RationalLength::ratio(d[u][v], scale)).unwrap()
}

/// SplitMix64, for test data independent of the library's generator.
pub struct Rng(pub u64);

impl Rng {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }
}

/// Integer L1 distance matrix of planar points.
pub fn l1_matrix(points: &[(u64, u64)]) -> Vec<Vec<u64>> {
    points
        .iter()
        .map(|p| points.iter().map(|q| p.0.abs_diff(q.0) + p.1.abs_diff(q.1)).collect())
        .collect()
}

/// Shortest-path matrix of a random connected graph: a random spanning tree
/// plus extra edges, integer lengths in `1..=max_len`.
pub fn random_graph_matrix(rng: &mut Rng, n: usize, extra: usize, max_len: u64) -> Vec<Vec<u64>> {
    let mut w = vec![vec![UNREACHABLE; n]; n];
    for (v, row) in w.iter_mut().enumerate() {
        row[v] = 0;
    }
    let add = |w: &mut Vec<Vec<u64>>, a: usize, b: usize, len: u64| {
        if a != b && len < w[a][b] {
            w[a][b] = len;
            w[b][a] = len;
        }
    };
    for v in 1..n {
        let u = rng.below(v as u64) as usize;
        let len = rng.range(1, max_len);
        add(&mut w, u, v, len);
    }
    for _ in 0..extra {
        let (a, b) = (rng.below(n as u64) as usize, rng.below(n as u64) as usize);
        let len = rng.range(1, max_len);
        add(&mut w, a, b, len);
    }
    // Floyd-Warshall.
    for m in 0..n {
        for a in 0..n {
            for b in 0..n {
                if w[a][m] != UNREACHABLE && w[m][b] != UNREACHABLE && w[a][m] + w[m][b] < w[a][b] {
                    w[a][b] = w[a][m] + w[m][b];
                }
            }
        }
    }
    w
}
