//! Instance generators: the core-fringe block model, the tree family with
//! many minimal hitting sets, and plain random hypergraphs for fixtures.

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{HittingSet, Hypergraph, LabeledHypergraph, NodeId};
use crate::rng::{self, CounterUniform};

/// `n choose k` with overflow checking.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by i + 1
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SbmParams {
    pub core_size: usize,
    pub fringe_size: usize,
    pub r: usize,
    pub p: f64,
    pub q: f64,
    pub seed: u64,
}

/// Number of candidate subsets above which generation is refused.
pub const MAX_SBM_SUBSETS: u64 = 1 << 32;

impl SbmParams {
    pub fn node_count(&self) -> usize {
        self.core_size + self.fringe_size
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.core_size == 0 {
            return bad("core size must be at least 1".into());
        }
        if self.r < 2 {
            return bad(format!("uniformity must be at least 2 (got {})", self.r));
        }
        if self.r > self.node_count() {
            return bad(format!("uniformity {} exceeds node count {}", self.r, self.node_count()));
        }
        for (name, x) in [("p", self.p), ("q", self.q)] {
            if !(0.0..=1.0).contains(&x) {
                return bad(format!("{name} = {x} is not a probability"));
            }
        }
        Ok(())
    }

    /// Expected number of hyperedges.
    pub fn expected_edges(&self) -> Result<f64> {
        let (n, c, f, r) =
            (self.node_count() as u64, self.core_size as u64, self.fringe_size as u64, self.r as u64);
        let overflow = || Error::Overflow("subset count");
        let all = binomial(n, r).ok_or_else(overflow)?;
        let core_only = binomial(c, r).ok_or_else(overflow)?;
        let fringe_only = binomial(f, r).ok_or_else(overflow)?;
        Ok(self.p * core_only as f64 + self.q * (all - core_only - fringe_only) as f64)
    }
}

/// Samples the core-fringe model: nodes `0..core_size` form the core, the
/// rest the fringe. Each `r`-subset is drawn independently, with probability
/// `p` if it lies inside the core, `q` if it is mixed, and never if it lies
/// in the fringe. The draw for a subset is keyed by its lexicographic rank.
pub fn sbm_hypergraph(params: &SbmParams) -> Result<LabeledHypergraph> {
    params.validate()?;
    let n = params.node_count();
    let total = binomial(n as u64, params.r as u64).filter(|&t| t <= MAX_SBM_SUBSETS).ok_or_else(|| {
        Error::TooLarge(format!("C({n}, {}) candidate subsets; use fewer nodes or a smaller r", params.r))
    })?;
    let mut uniform = CounterUniform::new(params.seed, rng::domain::SBM);
    let mut edges = Vec::new();
    let mut subset: Vec<NodeId> = (0..params.r).collect();
    let mut rank: u64 = 0;
    loop {
        let core_members = subset.iter().take_while(|&&v| v < params.core_size).count();
        let prob = if core_members == params.r {
            params.p
        } else if core_members > 0 {
            params.q
        } else {
            0.0
        };
        if prob > 0.0 && uniform.at(rank) < prob {
            edges.push(subset.clone());
        }
        rank += 1;
        if !next_combination(&mut subset, n) {
            break;
        }
    }
    debug_assert_eq!(rank, total);
    let graph = Hypergraph::from_canonical(n, edges);
    LabeledHypergraph::new(graph, (0..params.core_size).collect())
}

/// Advances to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeFamilyParams {
    pub b: usize,
    pub r: usize,
}

impl TreeFamilyParams {
    pub fn validate(&self) -> Result<()> {
        if self.b < 2 || self.r < 2 {
            return Err(Error::InvalidParameter(format!(
                "tree family needs b >= 2 and r >= 2 (got b={}, r={})",
                self.b, self.r
            )));
        }
        self.node_count().map(|_| ())
    }

    /// `b (b^r - 1) / (b - 1)`.
    pub fn node_count(&self) -> Result<usize> {
        let overflow = || Error::Overflow("tree family size");
        let mut total: usize = 0;
        let mut level: usize = 1;
        for _ in 0..self.r {
            level = level.checked_mul(self.b).ok_or_else(overflow)?;
            total = total.checked_add(level).ok_or_else(overflow)?;
        }
        Ok(total)
    }

    /// `(r - 1)(b - 1) + b`.
    pub fn k(&self) -> usize {
        (self.r - 1) * (self.b - 1) + self.b
    }
}

/// `b` disjoint complete `b`-ary trees with `r` levels; the hyperedges are
/// the root-to-leaf paths.
///
/// Nodes are numbered level by level: the `b` roots first, then their
/// children, and so on. Within a level, the children of node `i` (level
/// position) sit at positions `i*b .. i*b + b` of the next level.
#[derive(Clone, Debug)]
pub struct TreeFamily {
    pub params: TreeFamilyParams,
    pub graph: Hypergraph,
    pub k: usize,
    /// First node id of each level.
    pub level_offsets: Vec<NodeId>,
}

impl TreeFamily {
    pub fn level_of(&self, v: NodeId) -> usize {
        self.level_offsets.partition_point(|&o| o <= v) - 1
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        let level = self.level_of(v);
        (level > 0).then(|| self.level_offsets[level - 1] + (v - self.level_offsets[level]) / self.params.b)
    }

    pub fn children(&self, v: NodeId) -> Vec<NodeId> {
        let level = self.level_of(v);
        if level + 1 >= self.params.r {
            return Vec::new();
        }
        let first = self.level_offsets[level + 1] + (v - self.level_offsets[level]) * self.params.b;
        (first..first + self.params.b).collect()
    }

    /// The roots followed by every sibling group, each as consecutive ids.
    fn sibling_groups(&self) -> impl Iterator<Item = std::ops::Range<NodeId>> + '_ {
        let b = self.params.b;
        let n = self.graph.node_count();
        (0..n / b).map(move |g| g * b..g * b + b)
    }
}

pub fn tree_family(params: TreeFamilyParams) -> Result<TreeFamily> {
    params.validate()?;
    let (b, r) = (params.b, params.r);
    let n = params.node_count()?;
    let mut level_offsets = Vec::with_capacity(r);
    let mut offset = 0;
    let mut width = b;
    for _ in 0..r {
        level_offsets.push(offset);
        offset += width;
        width = width.saturating_mul(b);
    }
    let leaves = n - level_offsets[r - 1];
    let edges: Vec<Vec<NodeId>> = (0..leaves)
        .map(|leaf| {
            let mut path = vec![0; r];
            let mut pos = leaf;
            for level in (0..r).rev() {
                path[level] = level_offsets[level] + pos;
                pos /= b;
            }
            path
        })
        .collect();
    Ok(TreeFamily { params, graph: Hypergraph::new(n, &edges)?, k: params.k(), level_offsets })
}

/// A consistent labeling: labels `1..=b` forming a bijection on the roots
/// and on every sibling group. Indexed by node.
pub fn random_consistent_labeling(family: &TreeFamily, seed: u64) -> Vec<usize> {
    let mut rng = rng::stream(seed, rng::domain::LABELING, 0);
    let mut labels = vec![0; family.graph.node_count()];
    let mut perm: Vec<usize> = (1..=family.params.b).collect();
    for group in family.sibling_groups() {
        perm.shuffle(&mut rng);
        for (v, &l) in group.zip(&perm) {
            labels[v] = l;
        }
    }
    labels
}

/// Checks that `labels` is a consistent labeling of `family`.
pub fn is_consistent_labeling(family: &TreeFamily, labels: &[usize]) -> bool {
    labels.len() == family.graph.node_count()
        && family.sibling_groups().all(|group| {
            let mut seen: Vec<usize> = labels[group].to_vec();
            seen.sort_unstable();
            seen.iter().copied().eq(1..=family.params.b)
        })
}

/// The hitting set of a labeling: every node not labeled `b` whose strict
/// ancestors are all labeled `b`, together with the leaf whose whole path is
/// labeled `b`.
pub fn labeling_hitting_set(family: &TreeFamily, labels: &[usize]) -> Result<HittingSet> {
    if !is_consistent_labeling(family, labels) {
        return Err(Error::InvalidParameter("labeling is not consistent".into()));
    }
    let b = family.params.b;
    let mut set = HittingSet::with_capacity(family.graph.node_count());
    // walk down the all-b spine, collecting its non-b siblings
    let mut group: Vec<NodeId> = (0..b).collect();
    loop {
        let top = group
            .iter()
            .copied()
            .find(|&v| labels[v] == b)
            .expect("consistent labeling has a b in every group");
        for &v in &group {
            if v != top {
                set.insert(v);
            }
        }
        let children = family.children(top);
        if children.is_empty() {
            set.insert(top);
            break;
        }
        group = children;
    }
    Ok(set)
}

/// Samples a uniformly random consistent labeling and returns its hitting
/// set, of size exactly `(r - 1)(b - 1) + b`.
pub fn consistent_labeling_hitting_set(params: TreeFamilyParams, seed: u64) -> Result<HittingSet> {
    let family = tree_family(params)?;
    let labels = random_consistent_labeling(&family, seed);
    labeling_hitting_set(&family, &labels)
}

/// Random hypergraph with exactly `edge_count` distinct edges; sizes uniform
/// in `[2, min(r_max, n)]`, members uniform without replacement.
pub fn random_hypergraph(n: usize, r_max: usize, edge_count: usize, seed: u64) -> Result<Hypergraph> {
    if edge_count == 0 {
        return Ok(Hypergraph::empty(n));
    }
    let r_max = r_max.min(n);
    if r_max < 2 {
        return Err(Error::InvalidParameter(format!(
            "no edges of size >= 2 fit in {n} nodes with r_max {r_max}"
        )));
    }
    let available = (2..=r_max as u64).try_fold(0u64, |acc, s| acc.checked_add(binomial(n as u64, s)?));
    if available.is_some_and(|a| (edge_count as u64) > a) {
        return Err(Error::InvalidParameter(format!(
            "{edge_count} distinct edges requested but only {} exist",
            available.unwrap_or(u64::MAX)
        )));
    }
    let mut rng = rng::stream(seed, rng::domain::RANDOM_HYPERGRAPH, 0);
    let mut seen: HashSet<Vec<NodeId>> = HashSet::with_capacity(edge_count);
    let mut edges = Vec::with_capacity(edge_count);
    while edges.len() < edge_count {
        let size = rng.gen_range(2..=r_max);
        let mut e = index::sample(&mut rng, n, size).into_vec();
        e.sort_unstable();
        if seen.insert(e.clone()) {
            edges.push(e);
        }
    }
    Hypergraph::new(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{self, OracleLimits};

    fn sbm(core: usize, fringe: usize, r: usize, p: f64, q: f64, seed: u64) -> SbmParams {
        SbmParams { core_size: core, fringe_size: fringe, r, p, q, seed }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(15, 3), Some(455));
        assert_eq!(binomial(10, 3), Some(120));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(67, 33), Some(14_226_520_737_620_288_370));
        assert_eq!(binomial(200, 100), None);
    }

    #[test]
    fn lexicographic_combinations() {
        let mut c = vec![0, 1];
        let mut all = vec![c.clone()];
        while next_combination(&mut c, 4) {
            all.push(c.clone());
        }
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn sbm_degenerate_probabilities() {
        let lg = sbm_hypergraph(&sbm(5, 4, 3, 1.0, 0.0, 1)).unwrap();
        assert_eq!(lg.graph().edge_count(), 10);
        assert!(lg.graph().edges().all(|e| e.iter().all(|&v| v < 5)));
        let lg = sbm_hypergraph(&sbm(5, 4, 3, 0.0, 0.0, 1)).unwrap();
        assert_eq!(lg.graph().edge_count(), 0);
    }

    #[test]
    fn sbm_never_draws_fringe_only_edges() {
        let lg = sbm_hypergraph(&sbm(4, 8, 3, 1.0, 1.0, 9)).unwrap();
        assert!(lg.graph().edges().all(|e| e[0] < 4));
        assert_eq!(lg.graph().edge_count(), 220 - 56);
    }

    #[test]
    fn sbm_is_deterministic_and_seed_sensitive() {
        let a = sbm_hypergraph(&sbm(6, 10, 3, 0.4, 0.1, 5)).unwrap();
        let b = sbm_hypergraph(&sbm(6, 10, 3, 0.4, 0.1, 5)).unwrap();
        let c = sbm_hypergraph(&sbm(6, 10, 3, 0.4, 0.1, 6)).unwrap();
        assert_eq!(a.graph(), b.graph());
        assert_ne!(a.graph(), c.graph());
    }

    #[test]
    fn sbm_edge_count_mean() {
        let seeds = 200;
        let counts: Vec<f64> = (0..seeds)
            .map(|s| sbm_hypergraph(&sbm(5, 10, 3, 0.5, 0.5, s)).unwrap().graph().edge_count() as f64)
            .collect();
        let mean = counts.iter().sum::<f64>() / seeds as f64;
        let expected = 0.5 * (455.0 - 120.0);
        assert_eq!(sbm(5, 10, 3, 0.5, 0.5, 0).expected_edges().unwrap(), expected);
        // Binomial(335, 0.5) standard deviation
        let se = (335.0f64 * 0.25).sqrt() / (seeds as f64).sqrt();
        assert!((mean - expected).abs() <= 3.0 * se, "mean {mean}, expected {expected} +- {}", 3.0 * se);
    }

    #[test]
    fn sbm_rejects_bad_params() {
        assert!(sbm_hypergraph(&sbm(0, 5, 3, 0.5, 0.5, 0)).is_err());
        assert!(sbm_hypergraph(&sbm(2, 0, 3, 0.5, 0.5, 0)).is_err());
        assert!(sbm_hypergraph(&sbm(5, 5, 3, 1.5, 0.5, 0)).is_err());
        assert!(matches!(sbm_hypergraph(&sbm(5000, 5000, 4, 0.5, 0.5, 0)), Err(Error::TooLarge(_))));
    }

    #[test]
    fn tree_family_sizes() {
        for (b, r, nodes, edges, k) in [(2, 3, 14, 8, 4), (2, 2, 6, 4, 3), (3, 2, 12, 9, 5)] {
            let t = tree_family(TreeFamilyParams { b, r }).unwrap();
            assert_eq!(t.graph.node_count(), nodes);
            assert_eq!(t.graph.edge_count(), edges);
            assert_eq!(t.graph.uniformity(), Some(r));
            assert_eq!(t.k, k);
        }
        assert!(tree_family(TreeFamilyParams { b: 1, r: 3 }).is_err());
        assert!(matches!(TreeFamilyParams { b: 1 << 20, r: 8 }.validate(), Err(Error::Overflow(_))));
    }

    #[test]
    fn tree_structure_is_consistent() {
        let t = tree_family(TreeFamilyParams { b: 3, r: 3 }).unwrap();
        for v in 0..t.graph.node_count() {
            for c in t.children(v) {
                assert_eq!(t.parent(c), Some(v));
            }
        }
        for e in t.graph.edges() {
            assert_eq!(t.parent(e[0]), None);
            for w in e.windows(2) {
                assert_eq!(t.parent(w[1]), Some(w[0]));
            }
        }
    }

    #[test]
    fn labeling_sets_are_minimal_and_sized() {
        for params in [
            TreeFamilyParams { b: 2, r: 3 },
            TreeFamilyParams { b: 3, r: 2 },
            TreeFamilyParams { b: 3, r: 4 },
        ] {
            let t = tree_family(params).unwrap();
            for seed in 0..20 {
                let labels = random_consistent_labeling(&t, seed);
                assert!(is_consistent_labeling(&t, &labels));
                let s = labeling_hitting_set(&t, &labels).unwrap();
                assert_eq!(s.len(), params.k());
                assert!(t.graph.is_minimal_hitting_set(&s));
            }
            assert_eq!(
                consistent_labeling_hitting_set(params, 11).unwrap(),
                consistent_labeling_hitting_set(params, 11).unwrap()
            );
        }
    }

    /// Every consistent labeling of the b = 2, r = 2 family.
    fn all_labelings_b2_r2(t: &TreeFamily) -> Vec<Vec<usize>> {
        let groups: Vec<_> = t.sibling_groups().collect();
        (0u32..1 << groups.len())
            .map(|mask| {
                let mut labels = vec![0; t.graph.node_count()];
                for (i, g) in groups.iter().enumerate() {
                    let flip = mask & (1 << i) != 0;
                    labels[g.start] = if flip { 2 } else { 1 };
                    labels[g.start + 1] = if flip { 1 } else { 2 };
                }
                labels
            })
            .collect()
    }

    #[test]
    fn labelings_cover_every_node() {
        let params = TreeFamilyParams { b: 2, r: 2 };
        let t = tree_family(params).unwrap();
        let labelings = all_labelings_b2_r2(&t);
        assert_eq!(labelings.len(), 8);
        let mut union = HittingSet::new();
        for labels in &labelings {
            union.union_with(&labeling_hitting_set(&t, labels).unwrap());
        }
        assert_eq!(union.len(), 6);
        let exact = oracle::union_minimal(&t.graph, t.k, &OracleLimits::default()).unwrap();
        assert_eq!(exact, union);
    }

    #[test]
    fn bad_labeling_rejected() {
        let t = tree_family(TreeFamilyParams { b: 2, r: 2 }).unwrap();
        assert!(labeling_hitting_set(&t, &[1, 1, 1, 2, 1, 2]).is_err());
    }

    #[test]
    fn random_hypergraph_examples() {
        let g = random_hypergraph(5, 2, 10, 3).unwrap();
        assert_eq!(g.edge_count(), 10);
        assert_eq!(g.uniformity(), Some(2));
        assert_eq!(random_hypergraph(5, 3, 0, 3).unwrap().edge_count(), 0);
        assert_eq!(random_hypergraph(9, 4, 30, 8).unwrap(), random_hypergraph(9, 4, 30, 8).unwrap());
        assert!(random_hypergraph(5, 2, 11, 3).is_err());
        let g = random_hypergraph(8, 5, 40, 1).unwrap();
        assert!(g.edges().all(|e| (2..=5).contains(&e.len())));
    }
}
