//! Bernoulli bond percolation on finite graphs.
//!
//! Randomness is counter based: the uniform deviate of edge `e` in trial `t`
//! is the `e`-th 64-bit output of ChaCha8 seeded with `seed` on stream `t`
//! (word position `2e`). An edge is open at `p` iff its deviate is below `p`,
//! so realizations at different `p` are coupled and results do not depend on
//! how trials are spread over threads.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_rational::Ratio;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{build_ball, AdjacencyGraph, CayleyBall};
use crate::error::{Error, Result};
use crate::groupcert::{girth_scan, GeneratingSet, ScanBudget};
use crate::oracle::GroupOracle;
use crate::smallcancel::Presentation;

/// Normal quantile for 95% intervals.
pub const Z95: f64 = 1.96;

/// Largest edge count for exhaustive enumeration.
pub const MAX_EXACT_EDGES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PercGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    root: usize,
    targets: Vec<usize>,
    is_target: Vec<bool>,
    adj_start: Vec<usize>,
    adj: Vec<(usize, usize)>,
}

impl PercGraph {
    /// Edges are kept as given (parallel edges allowed); self-loops are rejected.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>, root: usize, targets: Vec<usize>) -> Result<PercGraph> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertex_count || v >= vertex_count) {
            return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range")));
        }
        if let Some(&(u, _)) = edges.iter().find(|&&(u, v)| u == v) {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        if root >= vertex_count {
            return Err(Error::InvalidGraph(format!("root {root} out of range")));
        }
        let mut is_target = vec![false; vertex_count];
        for &t in &targets {
            if t >= vertex_count {
                return Err(Error::InvalidGraph(format!("target {t} out of range")));
            }
            is_target[t] = true;
        }
        if is_target[root] && vertex_count > 1 {
            return Err(Error::InvalidGraph("root is a target".into()));
        }
        let mut targets = targets;
        targets.sort_unstable();
        targets.dedup();

        let mut degree = vec![0usize; vertex_count + 1];
        for &(u, v) in &edges {
            degree[u + 1] += 1;
            degree[v + 1] += 1;
        }
        for i in 1..=vertex_count {
            degree[i] += degree[i - 1];
        }
        let adj_start = degree.clone();
        let mut fill = degree;
        let mut adj = vec![(0, 0); 2 * edges.len()];
        for (e, &(u, v)) in edges.iter().enumerate() {
            adj[fill[u]] = (v, e);
            fill[u] += 1;
            adj[fill[v]] = (u, e);
            fill[v] += 1;
        }
        Ok(PercGraph {
            vertex_count,
            edges,
            root,
            targets,
            is_target,
            adj_start,
            adj,
        })
    }

    /// The undirected Cayley graph of a ball: an edge and its reverse
    /// `(v, g, ∓, u)` are one bond, self-loops are dropped, the target is the
    /// outer sphere.
    pub fn from_ball(ball: &CayleyBall) -> Result<PercGraph> {
        let mut seen = HashSet::new();
        let mut edges = Vec::new();
        for e in ball.edges() {
            if e.source == e.target {
                continue;
            }
            let key = (e.source.min(e.target), e.source.max(e.target), e.generator);
            if seen.insert(key) {
                edges.push((e.source, e.target));
            }
        }
        PercGraph::new(ball.vertex_count(), edges, 0, ball.sphere(ball.radius()))
    }

    /// Labelled edges are merged with their reverses as in [`PercGraph::from_ball`];
    /// unlabelled edges are kept as parallel bonds.
    pub fn from_adjacency(graph: &AdjacencyGraph) -> Result<PercGraph> {
        let mut seen = HashSet::new();
        let mut edges = Vec::new();
        for e in &graph.edges {
            if e.source == e.target {
                continue;
            }
            if let Some((g, _)) = e.generator {
                if !seen.insert((e.source.min(e.target), e.source.max(e.target), g)) {
                    continue;
                }
            }
            edges.push((e.source, e.target));
        }
        PercGraph::new(graph.vertex_count, edges, graph.root, graph.targets.clone())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    fn neighbours(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[self.adj_start[v]..self.adj_start[v + 1]]
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("p = {p} is outside [0, 1]")));
    }
    Ok(())
}

#[inline]
fn to_unit(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// The uniform deviate of one edge in one trial.
pub fn edge_uniform(seed: u64, trial: u64, edge: usize) -> f64 {
    let mut rng = trial_rng(seed, trial);
    rng.set_word_pos(2 * edge as u128);
    to_unit(rng.next_u64())
}

/// Open edges of one realization (`trial`) at probability `p`.
pub fn sample_open_edges_trial(g: &PercGraph, p: f64, seed: u64, trial: u64) -> Result<Vec<bool>> {
    check_p(p)?;
    let mut rng = trial_rng(seed, trial);
    Ok((0..g.edge_count()).map(|_| to_unit(rng.next_u64()) < p).collect())
}

/// Open edges of trial 0.
pub fn sample_open_edges(g: &PercGraph, p: f64, seed: u64) -> Result<Vec<bool>> {
    sample_open_edges_trial(g, p, seed, 0)
}

/// Component label of every vertex (the least vertex of its component).
pub fn clusters(g: &PercGraph, open: &[bool]) -> Result<Vec<usize>> {
    if open.len() != g.edge_count() {
        return Err(Error::InvalidArgument(format!(
            "mask has {} entries for {} edges",
            open.len(),
            g.edge_count()
        )));
    }
    let mut parent: Vec<usize> = (0..g.vertex_count).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (&(u, v), _) in g.edges.iter().zip(open).filter(|(_, &o)| o) {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        // the smaller index becomes the root, so roots are component minima
        if ru < rv {
            parent[rv] = ru;
        } else if rv < ru {
            parent[ru] = rv;
        }
    }
    Ok((0..g.vertex_count).map(|v| find(&mut parent, v)).collect())
}

const CHUNK: usize = 32;

/// Per-worker scratch: lazily generated deviates and a visited stamp.
struct Sampler {
    seed: u64,
    stamp: u32,
    chunk_stamp: Vec<u32>,
    chunks: Vec<[u64; CHUNK]>,
    visited: Vec<u32>,
    stack: Vec<usize>,
}

impl Sampler {
    fn new(g: &PercGraph, seed: u64) -> Sampler {
        let n_chunks = g.edge_count().div_ceil(CHUNK);
        Sampler {
            seed,
            stamp: 0,
            chunk_stamp: vec![0; n_chunks],
            chunks: vec![[0; CHUNK]; n_chunks],
            visited: vec![0; g.vertex_count],
            stack: Vec::new(),
        }
    }

    fn next_stamp(&mut self) {
        if self.stamp == u32::MAX {
            self.chunk_stamp.fill(0);
            self.visited.fill(0);
            self.stamp = 0;
        }
        self.stamp += 1;
    }

    fn deviate(&mut self, rng: &mut ChaCha8Rng, edge: usize) -> f64 {
        let c = edge / CHUNK;
        if self.chunk_stamp[c] != self.stamp {
            rng.set_word_pos((2 * CHUNK * c) as u128);
            for x in self.chunks[c].iter_mut() {
                *x = rng.next_u64();
            }
            self.chunk_stamp[c] = self.stamp;
        }
        to_unit(self.chunks[c][edge % CHUNK])
    }

    /// Whether the root's open cluster meets the target set in `trial`.
    fn crosses(&mut self, g: &PercGraph, p: f64, trial: u64) -> bool {
        if g.is_target[g.root] {
            return true;
        }
        self.next_stamp();
        let mut rng = trial_rng(self.seed, trial);
        let stamp = self.stamp;
        self.stack.clear();
        self.stack.push(g.root);
        self.visited[g.root] = stamp;
        while let Some(v) = self.stack.pop() {
            for &(w, e) in g.neighbours(v) {
                if self.visited[w] == stamp || self.deviate(&mut rng, e) >= p {
                    continue;
                }
                if g.is_target[w] {
                    return true;
                }
                self.visited[w] = stamp;
                self.stack.push(w);
            }
        }
        false
    }
}

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (phat + z2 / (2.0 * n)) / denom;
    let half = z / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = if successes == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PercCurvePoint {
    pub p: f64,
    pub trials: u64,
    pub crossings: u64,
    pub estimate: f64,
    pub ci95: (f64, f64),
}

impl PercCurvePoint {
    /// Half the Wilson interval width in units of `z`.
    pub fn sigma(&self) -> f64 {
        (self.ci95.1 - self.ci95.0) / (2.0 * Z95)
    }
}

fn crossing_count(g: &PercGraph, p: f64, trials: u64, seed: u64) -> u64 {
    (0..trials)
        .into_par_iter()
        .map_init(|| Sampler::new(g, seed), |s, t| u64::from(s.crosses(g, p, t)))
        .sum()
}

/// Monte Carlo estimate of the probability that the root reaches the target.
pub fn crossing_probability(g: &PercGraph, p: f64, trials: u64, seed: u64) -> Result<PercCurvePoint> {
    check_p(p)?;
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    if g.targets.is_empty() {
        return Err(Error::InvalidGraph("empty target set".into()));
    }
    let crossings = crossing_count(g, p, trials, seed);
    Ok(PercCurvePoint {
        p,
        trials,
        crossings,
        estimate: crossings as f64 / trials as f64,
        ci95: wilson_interval(crossings, trials, Z95),
    })
}

/// `counts[m]` = number of open-edge sets of size `m` that connect root and target.
pub fn crossing_polynomial(g: &PercGraph) -> Result<Vec<u64>> {
    let m = g.edge_count();
    if m > MAX_EXACT_EDGES {
        return Err(Error::InvalidArgument(format!(
            "{m} edges exceeds the exact limit of {MAX_EXACT_EDGES}"
        )));
    }
    if g.targets.is_empty() {
        return Err(Error::InvalidGraph("empty target set".into()));
    }
    let n = g.vertex_count;
    let mut counts = vec![0u64; m + 1];
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    for mask in 0u32..(1u32 << m) {
        seen.fill(false);
        seen[g.root] = true;
        stack.clear();
        stack.push(g.root);
        let mut hit = g.is_target[g.root];
        while let Some(v) = stack.pop() {
            for &(w, e) in g.neighbours(v) {
                if mask >> e & 1 == 1 && !seen[w] {
                    seen[w] = true;
                    hit |= g.is_target[w];
                    stack.push(w);
                }
            }
        }
        if hit {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    Ok(counts)
}

fn eval_polynomial(counts: &[u64], p: f64) -> f64 {
    let m = counts.len() - 1;
    counts
        .iter()
        .enumerate()
        .map(|(k, &c)| c as f64 * p.powi(k as i32) * (1.0 - p).powi((m - k) as i32))
        .sum()
}

/// Exact crossing probability by enumerating all `2^|E|` realizations.
pub fn exact_crossing_small(g: &PercGraph, p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(eval_polynomial(&crossing_polynomial(g)?, p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdMethod {
    Exact,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdEstimate {
    pub p_hat: f64,
    pub target_crossing: f64,
    pub bracket: (f64, f64),
    pub ci95: (f64, f64),
    pub sigma: f64,
    pub trials_per_probe: u64,
    pub seed: u64,
    pub method: ThresholdMethod,
    pub probes: Vec<PercCurvePoint>,
}

/// Width at which Monte Carlo bisection stops.
pub const BRACKET_WIDTH: f64 = 1.0 / 256.0;

/// The `p` at which root-to-target crossing probability reaches `target`.
///
/// Graphs with at most [`MAX_EXACT_EDGES`] edges are solved on the exact
/// polynomial to float precision; larger ones by Monte Carlo bisection on
/// coupled realizations down to [`BRACKET_WIDTH`], with a 95% interval from
/// where the Wilson bounds cross the target.
pub fn threshold_estimate(g: &PercGraph, trials_per_probe: u64, target: f64, seed: u64) -> Result<ThresholdEstimate> {
    if !(0.0..=1.0).contains(&target) {
        return Err(Error::InvalidArgument(format!("target {target} is outside [0, 1]")));
    }
    if trials_per_probe == 0 {
        return Err(Error::InvalidArgument("need at least one trial per probe".into()));
    }
    if g.targets.is_empty() {
        return Err(Error::InvalidGraph("empty target set".into()));
    }
    if g.edge_count() <= MAX_EXACT_EDGES {
        return exact_threshold(g, trials_per_probe, target, seed);
    }

    let mut cache: HashMap<u64, PercCurvePoint> = HashMap::new();
    let mut probe = |p: f64| -> Result<PercCurvePoint> {
        if let Some(pt) = cache.get(&p.to_bits()) {
            return Ok(pt.clone());
        }
        let pt = crossing_probability(g, p, trials_per_probe, seed)?;
        cache.insert(p.to_bits(), pt.clone());
        Ok(pt)
    };
    let (at0, at1) = (probe(0.0)?, probe(1.0)?);
    if target < at0.estimate || target > at1.estimate {
        return Err(Error::InvalidArgument(format!(
            "target {target} is not bracketed by [{}, {}]",
            at0.estimate, at1.estimate
        )));
    }
    // least p (on the dyadic grid) whose statistic reaches the target
    let mut bisect = |stat: &dyn Fn(&PercCurvePoint) -> f64| -> Result<(f64, f64)> {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        while hi - lo > BRACKET_WIDTH {
            let mid = (lo + hi) / 2.0;
            if stat(&probe(mid)?) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok((lo, hi))
    };
    let bracket = bisect(&|pt| pt.estimate)?;
    let upper = bisect(&|pt| pt.ci95.1)?;
    let lower = bisect(&|pt| pt.ci95.0)?;
    let p_hat = (bracket.0 + bracket.1) / 2.0;
    let ci95 = (upper.0.min(bracket.0), lower.1.max(bracket.1));
    let mut probes: Vec<PercCurvePoint> = cache.into_values().collect();
    probes.sort_by(|a, b| a.p.total_cmp(&b.p));
    Ok(ThresholdEstimate {
        p_hat,
        target_crossing: target,
        bracket,
        ci95,
        sigma: (ci95.1 - ci95.0) / (2.0 * Z95),
        trials_per_probe,
        seed,
        method: ThresholdMethod::MonteCarlo,
        probes,
    })
}

fn exact_threshold(g: &PercGraph, trials_per_probe: u64, target: f64, seed: u64) -> Result<ThresholdEstimate> {
    let counts = crossing_polynomial(g)?;
    let f = |p: f64| eval_polynomial(&counts, p);
    if target < f(0.0) || target > f(1.0) {
        return Err(Error::InvalidArgument(format!(
            "target {target} is not bracketed by [{}, {}]",
            f(0.0),
            f(1.0)
        )));
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    if f(lo) >= target {
        hi = lo;
    }
    loop {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p_hat = if (f(hi) - target).abs() <= (target - f(lo)).abs() { hi } else { lo };
    Ok(ThresholdEstimate {
        p_hat,
        target_crossing: target,
        bracket: (lo, hi),
        ci95: (p_hat, p_hat),
        sigma: 0.0,
        trials_per_probe,
        seed,
        method: ThresholdMethod::Exact,
        probes: Vec::new(),
    })
}

/// `1/(2k-1)`, the critical probability of the `2k`-regular tree.
pub fn pc_reference(k: u64) -> Result<Ratio<u64>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(Ratio::new(1, 2 * k - 1))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientComparison {
    pub radius: usize,
    pub k: usize,
    pub group_vertices: usize,
    pub tree_vertices: usize,
    pub group_edges: usize,
    pub tree_edges: usize,
    pub identical_graphs: bool,
    pub group: ThresholdEstimate,
    pub tree: ThresholdEstimate,
    /// `p̂_G - p̂_tree`.
    pub difference: f64,
    pub combined_sigma: f64,
}

impl QuotientComparison {
    /// `p̂_G >= p̂_tree - 2σ`.
    pub fn monotone_within(&self, sigmas: f64) -> bool {
        self.difference >= -sigmas * self.combined_sigma
    }
}

/// Thresholds on the ball of `Cayley(G, gens)` and on the free-group ball of
/// the same rank and radius, with the same seed.
pub fn compare_quotient_vs_tree(
    presentation: Arc<Presentation>,
    gens: &GeneratingSet,
    radius: usize,
    trials: u64,
    seed: u64,
    budget: usize,
) -> Result<QuotientComparison> {
    let oracle = GroupOracle::small_cancellation(presentation)?;
    if let Some(rel) = girth_scan(&oracle, gens, 2, ScanBudget::default())?.shortest_relation {
        return Err(Error::InvalidArgument(format!(
            "generators satisfy the short relation {} (length {})",
            rel.word, rel.length
        )));
    }
    let k = gens.len();
    let group_ball = build_ball(&oracle, gens, radius, budget)?;
    let tree_ball = build_ball(&GroupOracle::free(k)?, &GeneratingSet::standard(k)?, radius, budget)?;
    let group_graph = PercGraph::from_ball(&group_ball)?;
    let tree_graph = PercGraph::from_ball(&tree_ball)?;
    let group = threshold_estimate(&group_graph, trials, 0.5, seed)?;
    let tree = threshold_estimate(&tree_graph, trials, 0.5, seed)?;
    Ok(QuotientComparison {
        radius,
        k,
        group_vertices: group_graph.vertex_count(),
        tree_vertices: tree_graph.vertex_count(),
        group_edges: group_graph.edge_count(),
        tree_edges: tree_graph.edge_count(),
        identical_graphs: group_graph == tree_graph,
        difference: group.p_hat - tree.p_hat,
        combined_sigma: (group.sigma.powi(2) + tree.sigma.powi(2)).sqrt(),
        group,
        tree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn path(n: usize) -> PercGraph {
        PercGraph::new(n + 1, (0..n).map(|i| (i, i + 1)).collect(), 0, vec![n]).unwrap()
    }

    fn parallel() -> PercGraph {
        PercGraph::new(2, vec![(0, 1), (0, 1)], 0, vec![1]).unwrap()
    }

    fn four_cycle() -> PercGraph {
        PercGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)], 0, vec![2]).unwrap()
    }

    /// Independent oracle: explicit product over realizations, BFS per mask.
    fn brute_force(g: &PercGraph, p: f64) -> f64 {
        let m = g.edge_count();
        let mut total = 0.0;
        for mask in 0..(1usize << m) {
            let open: Vec<bool> = (0..m).map(|e| mask >> e & 1 == 1).collect();
            let labels = clusters(g, &open).unwrap();
            if g.targets().iter().any(|&t| labels[t] == labels[g.root()]) {
                let k = mask.count_ones() as i32;
                total += p.powi(k) * (1.0 - p).powi(m as i32 - k);
            }
        }
        total
    }

    #[test]
    fn graph_validation() {
        assert!(PercGraph::new(2, vec![(0, 0)], 0, vec![1]).is_err());
        assert!(PercGraph::new(2, vec![(0, 2)], 0, vec![1]).is_err());
        assert!(PercGraph::new(2, vec![(0, 1)], 0, vec![0]).is_err());
        assert!(PercGraph::new(1, vec![], 0, vec![0]).is_ok());
    }

    #[test]
    fn sampling_extremes() {
        let g = path(50);
        assert!(sample_open_edges(&g, 0.0, 1).unwrap().iter().all(|&o| !o));
        assert!(sample_open_edges(&g, 1.0, 1).unwrap().iter().all(|&o| o));
        assert!(sample_open_edges(&g, 1.5, 1).is_err());

        let big = path(10_000);
        let open = sample_open_edges(&big, 0.5, 3).unwrap();
        let frac = open.iter().filter(|&&o| o).count() as f64 / 10_000.0;
        assert!((frac - 0.5).abs() < 3.0 * 0.005);
    }

    #[test]
    fn counter_based_deviates() {
        let g = path(100);
        let seq = sample_open_edges_trial(&g, 0.3, 9, 4).unwrap();
        for e in [0, 1, 31, 32, 99] {
            assert_eq!(seq[e], edge_uniform(9, 4, e) < 0.3);
        }
    }

    #[test]
    fn cluster_examples() {
        let g = path(2);
        assert_eq!(clusters(&g, &[false, false]).unwrap(), vec![0, 1, 2]);
        assert_eq!(clusters(&g, &[true, true]).unwrap(), vec![0, 0, 0]);
        assert_eq!(clusters(&g, &[true, false]).unwrap(), vec![0, 0, 2]);
        assert!(clusters(&g, &[true]).is_err());
    }

    #[test]
    fn exact_examples() {
        let p = 0.37;
        assert!((exact_crossing_small(&path(1), p).unwrap() - p).abs() < 1e-15);
        assert!((exact_crossing_small(&parallel(), p).unwrap() - (1.0 - (1.0 - p) * (1.0 - p))).abs() < 1e-15);
        assert!((exact_crossing_small(&path(3), 0.5).unwrap() - 0.125).abs() < 1e-15);
        // two disjoint length-2 routes
        let c4 = exact_crossing_small(&four_cycle(), p).unwrap();
        assert!((c4 - (2.0 * p * p - p.powi(4))).abs() < 1e-14);
        for g in [path(1), path(3), parallel(), four_cycle()] {
            for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
                assert!((exact_crossing_small(&g, p).unwrap() - brute_force(&g, p)).abs() < 1e-12);
            }
        }
        assert!(exact_crossing_small(&path(21), 0.5).is_err());
    }

    #[test]
    fn monte_carlo_matches_exact() {
        for g in [path(1), path(3), parallel(), four_cycle()] {
            for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
                let pt = crossing_probability(&g, p, 10_000, 11).unwrap();
                let exact = exact_crossing_small(&g, p).unwrap();
                assert!((pt.estimate - exact).abs() <= 3.0 * pt.sigma() + 1e-12, "p={p} {pt:?} vs {exact}");
            }
        }
        assert_eq!(crossing_probability(&path(5), 1.0, 100, 1).unwrap().estimate, 1.0);
        assert_eq!(crossing_probability(&path(5), 0.0, 100, 1).unwrap().estimate, 0.0);
    }

    #[test]
    fn reproducible_across_pools() {
        let g = path(40);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| crossing_probability(&g, 0.97, 3000, 5).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn thresholds_on_small_graphs() {
        for target in [0.5, 0.3, 0.77] {
            assert_eq!(threshold_estimate(&path(1), 100, target, 0).unwrap().p_hat, target);
        }
        let par = threshold_estimate(&parallel(), 100, 0.5, 0).unwrap();
        assert!((par.p_hat - (1.0 - 0.5f64.sqrt())).abs() < 1e-12);
        assert!(threshold_estimate(&path(1), 100, 1.5, 0).is_err());
    }

    #[test]
    fn monte_carlo_threshold_on_a_long_path() {
        // crossing probability p^25; solves p = 2^{-1/25}
        let g = path(25);
        let est = threshold_estimate(&g, 4000, 0.5, 3).unwrap();
        let truth = 0.5f64.powf(1.0 / 25.0);
        assert_eq!(est.method, ThresholdMethod::MonteCarlo);
        assert!(est.bracket.1 - est.bracket.0 <= BRACKET_WIDTH);
        assert!(est.ci95.0 <= est.p_hat && est.p_hat <= est.ci95.1);
        assert!((est.p_hat - truth).abs() <= 3.0 * est.sigma + BRACKET_WIDTH);
        assert_eq!(est, threshold_estimate(&g, 4000, 0.5, 3).unwrap());
    }

    #[test]
    fn pc_reference_values() {
        assert_eq!(pc_reference(2).unwrap(), Ratio::new(1, 3));
        assert_eq!(pc_reference(3).unwrap(), Ratio::new(1, 5));
        assert_eq!(pc_reference(1).unwrap(), Ratio::from_integer(1));
        assert!(pc_reference(0).is_err());
    }

    fn random_graph() -> impl Strategy<Value = PercGraph> {
        (2usize..9)
            .prop_flat_map(|n| (Just(n), proptest::collection::vec((0..n, 0..n), 1..12)))
            .prop_filter_map("needs an edge", |(n, raw)| {
                let edges: Vec<(usize, usize)> = raw.into_iter().filter(|(u, v)| u != v).collect();
                (!edges.is_empty()).then(|| PercGraph::new(n, edges, 0, vec![n - 1]).unwrap())
            })
    }

    proptest! {
        #[test]
        fn coupled_realizations_are_monotone(g in random_graph(), p1 in 0.0f64..1.0, p2 in 0.0f64..1.0, seed: u64) {
            let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
            for trial in 0..8 {
                let a = sample_open_edges_trial(&g, lo, seed, trial).unwrap();
                let b = sample_open_edges_trial(&g, hi, seed, trial).unwrap();
                prop_assert!(a.iter().zip(&b).all(|(x, y)| !x || *y));
                let mut s = Sampler::new(&g, seed);
                let cross_lo = s.crosses(&g, lo, trial);
                let cross_hi = s.crosses(&g, hi, trial);
                prop_assert!(!cross_lo || cross_hi);
            }
        }

        #[test]
        fn sampler_agrees_with_clusters(g in random_graph(), p in 0.0f64..1.0, seed: u64) {
            let mut s = Sampler::new(&g, seed);
            for trial in 0..8 {
                let open = sample_open_edges_trial(&g, p, seed, trial).unwrap();
                let labels = clusters(&g, &open).unwrap();
                let reached = g.targets().iter().any(|&t| labels[t] == labels[g.root()]);
                prop_assert_eq!(s.crosses(&g, p, trial), reached);
            }
        }

        #[test]
        fn clusters_match_bfs(g in random_graph(), p in 0.0f64..1.0, seed: u64) {
            let open = sample_open_edges(&g, p, seed).unwrap();
            let labels = clusters(&g, &open).unwrap();
            for start in 0..g.vertex_count() {
                let mut seen = vec![false; g.vertex_count()];
                let mut stack = vec![start];
                seen[start] = true;
                while let Some(v) = stack.pop() {
                    for (e, &(a, b)) in g.edges().iter().enumerate() {
                        if !open[e] { continue; }
                        for (x, y) in [(a, b), (b, a)] {
                            if x == v && !seen[y] {
                                seen[y] = true;
                                stack.push(y);
                            }
                        }
                    }
                }
                for w in 0..g.vertex_count() {
                    prop_assert_eq!(seen[w], labels[w] == labels[start]);
                }
            }
        }

        #[test]
        fn exact_matches_brute_force(g in random_graph()) {
            for p in [0.0, 0.5, 1.0, 0.3] {
                prop_assert!((exact_crossing_small(&g, p).unwrap() - brute_force(&g, p)).abs() < 1e-12);
            }
        }
    }
}
