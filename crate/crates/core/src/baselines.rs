//! Comparison rankers: degree, clique-graph eigenvector, Z- and
//! H-eigenvector centralities, continuous Borgatti-Everett scores and
//! k-core decomposition.
//!
//! The eigenvector methods use the shifted power iteration
//! `x <- normalize(F(x) + x)`. Its fixed points are exactly the normalized
//! fixed points of `F`, and the shift keeps it from oscillating on
//! bipartite structure. Nodes in no edge are held at zero throughout.

use crate::error::{Error, Result};
use crate::hypergraph::{CliqueGraph, Hypergraph, NodeId};
use crate::ranking::Ranking;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationParams {
    /// Convergence threshold on the L1 distance between iterates.
    pub tolerance: f64,
    pub max_iters: usize,
}

impl Default for IterationParams {
    fn default() -> Self {
        Self { tolerance: 1e-10, max_iters: 10_000 }
    }
}

impl IterationParams {
    pub fn validate(&self) -> Result<()> {
        if self.tolerance.is_nan() || self.tolerance <= 0.0 || self.max_iters == 0 {
            return Err(Error::InvalidParameter(format!(
                "iteration params need tolerance > 0 and max_iters >= 1 (got {}, {})",
                self.tolerance, self.max_iters
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CentralityResult {
    pub ranking: Ranking,
    pub converged: bool,
    pub iterations: usize,
    /// L1 distance between the last two iterates.
    pub residual: f64,
}

impl CentralityResult {
    fn exact(scores: Vec<f64>) -> Self {
        Self { ranking: Ranking::from_scores(scores), converged: true, iterations: 0, residual: 0.0 }
    }
}

#[derive(Clone, Copy)]
enum Norm {
    L1,
    L2,
}

fn normalize(x: &mut [f64], norm: Norm) -> bool {
    let size = match norm {
        Norm::L1 => x.iter().map(|v| v.abs()).sum::<f64>(),
        Norm::L2 => x.iter().map(|v| v * v).sum::<f64>().sqrt(),
    };
    if size > 0.0 && size.is_finite() {
        x.iter_mut().for_each(|v| *v /= size);
        true
    } else {
        false
    }
}

struct PowerOutcome {
    x: Vec<f64>,
    converged: bool,
    iterations: usize,
    residual: f64,
}

/// Shifted power iteration from `start`; `apply` writes `F(x)` into its
/// second argument.
fn power_iterate(
    mut x: Vec<f64>,
    norm: Norm,
    it: &IterationParams,
    mut apply: impl FnMut(&[f64], &mut [f64]),
) -> PowerOutcome {
    let mut next = vec![0.0; x.len()];
    if !normalize(&mut x, norm) {
        return PowerOutcome { x, converged: true, iterations: 0, residual: 0.0 };
    }
    let mut residual = f64::INFINITY;
    for iteration in 1..=it.max_iters {
        apply(&x, &mut next);
        for (n, &v) in next.iter_mut().zip(&x) {
            *n += v;
        }
        normalize(&mut next, norm);
        residual = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if residual < it.tolerance {
            return PowerOutcome { x, converged: true, iterations: iteration, residual };
        }
    }
    log::warn!("power iteration stopped after {} iterations (residual {residual:e})", it.max_iters);
    PowerOutcome { x, converged: false, iterations: it.max_iters, residual }
}

fn clique_apply(w: &CliqueGraph) -> impl Fn(&[f64], &mut [f64]) + '_ {
    move |x, out| {
        for (i, o) in out.iter_mut().enumerate() {
            *o = w.neighbors(i).iter().map(|&(j, wij)| f64::from(wij) * x[j]).sum();
        }
    }
}

fn start_vector(g: &Hypergraph) -> Vec<f64> {
    (0..g.node_count()).map(|v| if g.degree(v) > 0 { 1.0 } else { 0.0 }).collect()
}

/// Ranks nodes by the number of edges containing them.
pub fn degree_ranking(g: &Hypergraph) -> Ranking {
    Ranking::from_scores(g.degrees().into_iter().map(|d| d as f64).collect())
}

/// Eigenvector centrality on the weighted clique graph.
///
/// Each connected component is solved on its own with L1 normalization and
/// then scaled by its share of the total clique-graph weight. Isolated nodes
/// score 0; a graph without edges gets uniform scores.
pub fn clique_eigen_ranking(g: &Hypergraph, it: &IterationParams) -> Result<CentralityResult> {
    it.validate()?;
    let n = g.node_count();
    let w = g.clique_graph();
    let total = w.total_weight();
    if total == 0 {
        return Ok(CentralityResult::exact(vec![if n > 0 { 1.0 / n as f64 } else { 0.0 }; n]));
    }
    let mut scores = vec![0.0; n];
    let mut converged = true;
    let mut iterations = 0;
    let mut residual: f64 = 0.0;
    for comp in w.components() {
        if comp.len() < 2 {
            continue;
        }
        let mut local_of = vec![usize::MAX; n];
        for (l, &v) in comp.iter().enumerate() {
            local_of[v] = l;
        }
        let rows: Vec<Vec<(usize, f64)>> = comp
            .iter()
            .map(|&v| w.neighbors(v).iter().map(|&(u, wt)| (local_of[u], f64::from(wt))).collect())
            .collect();
        let weight: u64 =
            comp.iter().flat_map(|&v| w.neighbors(v)).map(|&(_, wt)| u64::from(wt)).sum::<u64>() / 2;
        let out = power_iterate(vec![1.0; comp.len()], Norm::L1, it, |x, y| {
            for (o, row) in y.iter_mut().zip(&rows) {
                *o = row.iter().map(|&(j, wt)| wt * x[j]).sum();
            }
        });
        let share = weight as f64 / total as f64;
        for (&v, &s) in comp.iter().zip(&out.x) {
            scores[v] = s * share;
        }
        converged &= out.converged;
        iterations = iterations.max(out.iterations);
        residual = residual.max(out.residual);
    }
    Ok(CentralityResult { ranking: Ranking::from_scores(scores), converged, iterations, residual })
}

/// Checks `r`-uniformity (an edgeless graph passes) and returns `r`.
fn require_uniform(g: &Hypergraph) -> Result<Option<usize>> {
    if g.edge_count() == 0 {
        return Ok(None);
    }
    let expected = g.edge(0).len();
    match g.edges().find(|e| e.len() != expected) {
        Some(e) => Err(Error::NotUniform { expected, found: e.len() }),
        None => Ok(Some(expected)),
    }
}

/// Adjacency-tensor apply: `f(x)_i = sum over edges e containing i of the
/// product of x_j for j in e other than i`.
fn tensor_apply(g: &Hypergraph, x: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|o| *o = 0.0);
    for e in g.edges() {
        for (a, &i) in e.iter().enumerate() {
            let prod: f64 = e.iter().enumerate().filter(|&(b, _)| b != a).map(|(_, &j)| x[j]).product();
            out[i] += prod;
        }
    }
}

/// Z-eigenvector centrality: fixed point of `x <- f(x) / |f(x)|_2`.
pub fn z_eigen_ranking(g: &Hypergraph, it: &IterationParams) -> Result<CentralityResult> {
    it.validate()?;
    if require_uniform(g)?.is_none() {
        return Ok(CentralityResult::exact(vec![0.0; g.node_count()]));
    }
    let out = power_iterate(start_vector(g), Norm::L2, it, |x, y| tensor_apply(g, x, y));
    Ok(CentralityResult {
        ranking: Ranking::from_scores(out.x),
        converged: out.converged,
        iterations: out.iterations,
        residual: out.residual,
    })
}

/// H-eigenvector centrality: fixed point of `x <- g(x) / |g(x)|_1` with
/// `g(x)_i = f(x)_i^(1/(r-1))`.
pub fn h_eigen_ranking(g: &Hypergraph, it: &IterationParams) -> Result<CentralityResult> {
    it.validate()?;
    let Some(r) = require_uniform(g)? else {
        return Ok(CentralityResult::exact(vec![0.0; g.node_count()]));
    };
    let exponent = 1.0 / (r - 1) as f64;
    let out = power_iterate(start_vector(g), Norm::L1, it, |x, y| {
        tensor_apply(g, x, y);
        y.iter_mut().for_each(|v| *v = v.powf(exponent));
    });
    Ok(CentralityResult {
        ranking: Ranking::from_scores(out.x),
        converged: out.converged,
        iterations: out.iterations,
        residual: out.residual,
    })
}

/// Continuous Borgatti-Everett core-periphery scores: the nonnegative unit
/// (L2) vector maximizing `sum_{i != j} w_ij c_i c_j`, i.e. the dominant
/// eigenvector of the clique-graph weights, computed over the whole graph.
pub fn borgatti_everett_ranking(g: &Hypergraph, it: &IterationParams) -> Result<CentralityResult> {
    it.validate()?;
    let w = g.clique_graph();
    let out = power_iterate(start_vector(g), Norm::L2, it, clique_apply(&w));
    Ok(CentralityResult {
        ranking: Ranking::from_scores(out.x),
        converged: out.converged,
        iterations: out.iterations,
        residual: out.residual,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct KCore {
    pub core_numbers: Vec<usize>,
    /// Nodes in removal order.
    pub peel_order: Vec<NodeId>,
    /// Running threshold at each removal, aligned with `peel_order`.
    pub thresholds: Vec<usize>,
    pub ranking: Ranking,
}

/// k-core decomposition by peeling a minimum-degree node (ties: lowest
/// index); every edge containing a removed node is removed with it.
pub fn kcore(g: &Hypergraph) -> KCore {
    let n = g.node_count();
    let mut degree = g.degrees();
    let mut alive_edge = vec![true; g.edge_count()];
    let mut queue: std::collections::BTreeSet<(usize, NodeId)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut core_numbers = vec![0; n];
    let mut peel_order = Vec::with_capacity(n);
    let mut thresholds = Vec::with_capacity(n);
    let mut threshold = 0;
    while let Some((d, v)) = queue.pop_first() {
        threshold = threshold.max(d);
        core_numbers[v] = threshold;
        peel_order.push(v);
        thresholds.push(threshold);
        for &e in g.incident_edges(v) {
            if !std::mem::replace(&mut alive_edge[e], false) {
                continue;
            }
            for &u in g.edge(e) {
                if u != v && queue.remove(&(degree[u], u)) {
                    degree[u] -= 1;
                    queue.insert((degree[u], u));
                }
            }
        }
    }
    let scale = g.degrees().into_iter().max().unwrap_or(0) as f64 + 1.0;
    let scores =
        core_numbers.iter().enumerate().map(|(v, &c)| c as f64 * scale + g.degree(v) as f64).collect();
    KCore { core_numbers, peel_order, thresholds, ranking: Ranking::from_scores(scores) }
}

/// Ranking by core number, then degree, then index.
pub fn kcore_ranking(g: &Hypergraph) -> Ranking {
    kcore(g).ranking
}

/// Result wrapper used by callers that treat every baseline uniformly.
pub fn degree_result(g: &Hypergraph) -> CentralityResult {
    CentralityResult::exact(degree_ranking(g).scores().to_vec())
}

pub fn kcore_result(g: &Hypergraph) -> CentralityResult {
    let k = kcore(g);
    CentralityResult { ranking: k.ranking, converged: true, iterations: 0, residual: 0.0 }
}
