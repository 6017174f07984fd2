//! Greedy maximal-matching hitting sets and the UMHS recovery algorithm.
//!
//! UMHS repeats three steps and returns the union of their outputs:
//! run the greedy matching over a random edge order, prune the result to a
//! minimal hitting set with a random removal order, and merge it into the
//! running union. Each iteration draws from its own seeded stream so the
//! union does not depend on how iterations are scheduled.

use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::hypergraph::{HittingSet, Hypergraph, NodeId};
use crate::ranking::Ranking;
use crate::rng;

/// Default number of UMHS iterations.
pub const DEFAULT_ITERATIONS: usize = 100;

/// Output of the greedy matching: the hitting set and the matched edges.
#[derive(Clone, Debug)]
pub struct GreedyMatching {
    pub set: HittingSet,
    /// Indices of the selected, pairwise disjoint edges.
    pub matching: Vec<usize>,
}

/// Scans the edges in `edge_order`; an edge with no member already chosen
/// contributes all of its members. The chosen edges form a maximal matching
/// and their union is a hitting set of size at most `r * k*`.
pub fn greedy_matching(g: &Hypergraph, edge_order: &[usize]) -> HittingSet {
    greedy_matching_with_edges(g, edge_order).set
}

pub fn greedy_matching_with_edges(g: &Hypergraph, edge_order: &[usize]) -> GreedyMatching {
    let mut set = HittingSet::with_capacity(g.node_count());
    let mut matching = Vec::new();
    for &e in edge_order {
        let members = g.edge(e);
        if members.iter().all(|&v| !set.contains(v)) {
            for &v in members {
                set.insert(v);
            }
            matching.push(e);
        }
    }
    debug_assert!(g.is_hitting_set(&set));
    debug_assert!(is_maximal_matching(g, &matching));
    GreedyMatching { set, matching }
}

/// True iff `matching` lists pairwise disjoint edges and every other edge
/// meets one of them.
pub fn is_maximal_matching(g: &Hypergraph, matching: &[usize]) -> bool {
    let mut covered = vec![false; g.node_count()];
    for &e in matching {
        for &v in g.edge(e) {
            if covered[v] {
                return false;
            }
            covered[v] = true;
        }
    }
    g.edges().all(|e| e.iter().any(|&v| covered[v]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UmhsConfig {
    /// Number of iterations, at least 1.
    pub iterations: usize,
    pub seed: u64,
    pub record_trajectory: bool,
}

impl Default for UmhsConfig {
    fn default() -> Self {
        Self { iterations: DEFAULT_ITERATIONS, seed: 0, record_trajectory: false }
    }
}

impl UmhsConfig {
    pub fn new(iterations: usize, seed: u64) -> Self {
        Self { iterations, seed, record_trajectory: false }
    }

    pub fn with_trajectory(mut self) -> Self {
        self.record_trajectory = true;
        self
    }
}

/// Union size after one iteration, plus the core overlap when a core is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrajectoryPoint {
    /// 1-based iteration index.
    pub iteration: usize,
    pub union_size: usize,
    pub core_hits: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UmhsResult {
    pub union_set: HittingSet,
    /// Size of each iteration's pruned minimal hitting set.
    pub pruned_sizes: Vec<usize>,
    pub trajectory: Option<Vec<TrajectoryPoint>>,
}

/// One greedy run plus pruning, driven by iteration `index`'s stream.
pub fn pruned_greedy_iteration(g: &Hypergraph, seed: u64, index: u64) -> HittingSet {
    let mut rng = rng::stream(seed, rng::domain::UMHS, index);
    let mut edge_order: Vec<usize> = (0..g.edge_count()).collect();
    edge_order.shuffle(&mut rng);
    let greedy = greedy_matching(g, &edge_order);

    let mut removal_order = greedy.to_vec();
    removal_order.shuffle(&mut rng);
    let mut counts = vec![0usize; g.edge_count()];
    for v in greedy.iter() {
        for &e in g.incident_edges(v) {
            counts[e] += 1;
        }
    }
    let mut kept = greedy;
    g.prune_pass(&mut kept, &mut counts, &removal_order);
    debug_assert!(g.is_minimal_hitting_set(&kept));
    kept
}

/// Runs UMHS sequentially.
pub fn umhs(g: &Hypergraph, cfg: &UmhsConfig) -> UmhsResult {
    umhs_with_core(g, cfg, None)
}

/// Runs UMHS, recording core overlap in the trajectory when `core` is given.
pub fn umhs_with_core(g: &Hypergraph, cfg: &UmhsConfig, core: Option<&HittingSet>) -> UmhsResult {
    let iterations = cfg.iterations.max(1);
    let sets = (0..iterations).map(|i| pruned_greedy_iteration(g, cfg.seed, i as u64));
    accumulate(sets, cfg.record_trajectory, core)
}

/// Runs the iterations on the rayon pool. The result is identical to
/// [`umhs_with_core`] for every pool size.
pub fn umhs_parallel(g: &Hypergraph, cfg: &UmhsConfig, core: Option<&HittingSet>) -> UmhsResult {
    let iterations = cfg.iterations.max(1);
    let sets: Vec<HittingSet> =
        (0..iterations).into_par_iter().map(|i| pruned_greedy_iteration(g, cfg.seed, i as u64)).collect();
    accumulate(sets.into_iter(), cfg.record_trajectory, core)
}

fn accumulate(sets: impl Iterator<Item = HittingSet>, record: bool, core: Option<&HittingSet>) -> UmhsResult {
    let mut union_set = HittingSet::new();
    let mut pruned_sizes = Vec::new();
    let mut trajectory = record.then(Vec::new);
    for (i, s) in sets.enumerate() {
        pruned_sizes.push(s.len());
        union_set.union_with(&s);
        if let Some(points) = trajectory.as_mut() {
            points.push(TrajectoryPoint {
                iteration: i + 1,
                union_size: union_set.len(),
                core_hits: core.map(|c| union_set.intersection_len(c)),
            });
        }
    }
    UmhsResult { union_set, pruned_sizes, trajectory }
}

/// Orders the members of `selected` before all other nodes; each block by
/// degree descending, then node index ascending.
///
/// Scores are `max_degree + 1 + degree` for members and `degree` otherwise.
pub fn rank_nodes(g: &Hypergraph, selected: &HittingSet) -> Ranking {
    let degrees = g.degrees();
    let offset = degrees.iter().copied().max().unwrap_or(0) as f64 + 1.0;
    let scores = degrees
        .iter()
        .enumerate()
        .map(|(v, &d)| if selected.contains(v) { offset + d as f64 } else { d as f64 })
        .collect();
    Ranking::from_scores(scores)
}

/// Whether some set of pairwise disjoint edges covers every node of
/// `target`. Exactly these node sets can appear inside a greedy output, so a
/// minimal hitting set is reachable by UMHS iff this holds.
pub fn covered_by_some_matching(g: &Hypergraph, target: &HittingSet) -> bool {
    fn search(g: &Hypergraph, remaining: &mut Vec<NodeId>, used: &mut Vec<bool>) -> bool {
        let Some(&v) = remaining.last() else {
            return true;
        };
        for &e in g.incident_edges(v) {
            let members = g.edge(e);
            if members.iter().any(|&u| used[u]) {
                continue;
            }
            for &u in members {
                used[u] = true;
            }
            let saved = remaining.clone();
            remaining.retain(|&u| !used[u]);
            if search(g, remaining, used) {
                return true;
            }
            *remaining = saved;
            for &u in members {
                used[u] = false;
            }
        }
        false
    }
    if target.iter().any(|v| v >= g.node_count()) {
        return false;
    }
    let mut remaining = target.to_vec();
    let mut used = vec![false; g.node_count()];
    search(g, &mut remaining, &mut used)
}
