//! Hypergraph representation and hitting-set predicates.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Dense node index, `0..n` within one [`Hypergraph`].
pub type NodeId = usize;

/// An undirected hypergraph over nodes `0..n`.
///
/// Edges are stored with strictly ascending members, duplicates removed and
/// first-appearance order of the distinct edges preserved. Isolated nodes are
/// part of the node universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<NodeId>>,
    rank: usize,
    incidence: Vec<Vec<usize>>,
}

/// Builds a [`Hypergraph`] from raw node-index sequences.
///
/// Members are sorted and deduplicated within each edge, repeated edges are
/// dropped (first occurrence wins). An edge left with fewer than two distinct
/// members is rejected.
pub fn canonicalize<E: AsRef<[NodeId]>>(raw_edges: &[E], n: usize) -> Result<Hypergraph> {
    Hypergraph::new(n, raw_edges)
}

impl Hypergraph {
    pub fn new<E: AsRef<[NodeId]>>(n: usize, raw_edges: &[E]) -> Result<Self> {
        Self::build(n, raw_edges, 2)
    }

    /// Like [`Hypergraph::new`] but admits single-node edges. Kernelization
    /// produces these when a sunflower core is a singleton.
    pub fn from_kernel_edges<E: AsRef<[NodeId]>>(n: usize, raw_edges: &[E]) -> Result<Self> {
        Self::build(n, raw_edges, 1)
    }

    /// Hypergraph with `n` isolated nodes.
    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new(), rank: 0, incidence: vec![Vec::new(); n] }
    }

    fn build<E: AsRef<[NodeId]>>(n: usize, raw_edges: &[E], min_size: usize) -> Result<Self> {
        let mut seen: HashSet<Vec<NodeId>> = HashSet::with_capacity(raw_edges.len());
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (i, raw) in raw_edges.iter().enumerate() {
            let mut members = raw.as_ref().to_vec();
            if let Some(&node) = members.iter().find(|&&v| v >= n) {
                return Err(Error::NodeOutOfRange { edge: i, node, n });
            }
            members.sort_unstable();
            members.dedup();
            if members.len() < min_size {
                return Err(Error::EdgeTooSmall { edge: i, size: members.len() });
            }
            if seen.insert(members.clone()) {
                edges.push(members);
            }
        }
        Ok(Self::from_canonical(n, edges))
    }

    /// Trusted constructor: members already sorted and distinct, edges unique.
    pub(crate) fn from_canonical(n: usize, edges: Vec<Vec<NodeId>>) -> Self {
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(i);
            }
        }
        let rank = edges.iter().map(Vec::len).max().unwrap_or(0);
        Self { n, edges, rank, incidence }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Maximum edge size, 0 without edges.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edge(&self, i: usize) -> &[NodeId] {
        &self.edges[i]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[NodeId]> + '_ {
        self.edges.iter().map(Vec::as_slice)
    }

    /// Indices of the edges containing `v`.
    pub fn incident_edges(&self, v: NodeId) -> &[usize] {
        &self.incidence[v]
    }

    /// `Some(r)` when every edge has exactly `r` members; `None` for
    /// non-uniform or edgeless hypergraphs.
    pub fn uniformity(&self) -> Option<usize> {
        let first = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == first).then_some(first)
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.incidence[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    pub fn is_hitting_set(&self, s: &HittingSet) -> bool {
        self.first_unhit_edge(s).is_none()
    }

    /// Index of the first edge that `s` does not hit.
    pub fn first_unhit_edge(&self, s: &HittingSet) -> Option<usize> {
        self.edges.iter().position(|e| !e.iter().any(|&v| s.contains(v)))
    }

    /// True iff `s` hits every edge and no member can be dropped.
    pub fn is_minimal_hitting_set(&self, s: &HittingSet) -> bool {
        let Some(counts) = self.hit_counts(s) else {
            return false;
        };
        s.iter().all(|v| v < self.n && self.incidence[v].iter().any(|&e| counts[e] == 1))
    }

    /// Per-edge count of members in `s`, or `None` if some edge is unhit.
    fn hit_counts(&self, s: &HittingSet) -> Option<Vec<usize>> {
        let counts: Vec<usize> =
            self.edges.iter().map(|e| e.iter().filter(|&&v| s.contains(v)).count()).collect();
        counts.iter().all(|&c| c > 0).then_some(counts)
    }

    /// Prunes a hitting set down to a minimal one.
    ///
    /// Nodes are examined in `removal_order`; a node is dropped iff every edge
    /// containing it is still hit by another remaining member. One pass is
    /// already enough: a survivor was the only remaining member of some edge
    /// when examined, and later removals cannot add members back to it. A
    /// confirming pass runs anyway and must remove nothing.
    pub fn prune_to_minimal(&self, s: &HittingSet, removal_order: &[NodeId]) -> Result<HittingSet> {
        if let Some(edge) = self.first_unhit_edge(s) {
            return Err(Error::NotHittingSet { edge, members: self.edges[edge].clone() });
        }
        let order_set: HittingSet = removal_order.iter().copied().collect();
        if order_set.len() != removal_order.len() || &order_set != s {
            return Err(Error::InvalidParameter(
                "removal order must be a permutation of the hitting set".into(),
            ));
        }
        let mut counts = self.hit_counts(s).expect("checked above");
        let mut kept = s.clone();
        loop {
            let removed = self.prune_pass(&mut kept, &mut counts, removal_order);
            if removed == 0 {
                break;
            }
        }
        debug_assert!(self.is_minimal_hitting_set(&kept));
        Ok(kept)
    }

    /// One removal pass; `counts` tracks hits per edge for `kept`.
    pub(crate) fn prune_pass(&self, kept: &mut HittingSet, counts: &mut [usize], order: &[NodeId]) -> usize {
        let mut removed = 0;
        for &v in order {
            if !kept.contains(v) {
                continue;
            }
            let incident = self.incidence.get(v).map(Vec::as_slice).unwrap_or(&[]);
            if incident.iter().all(|&e| counts[e] >= 2) {
                for &e in incident {
                    counts[e] -= 1;
                }
                kept.remove(v);
                removed += 1;
            }
        }
        removed
    }

    /// Weighted clique-graph projection: `w_ij` counts the edges containing
    /// both `i` and `j`.
    pub fn clique_graph(&self) -> CliqueGraph {
        let mut pairs: Vec<(NodeId, NodeId)> = Vec::new();
        for e in &self.edges {
            for (a, &i) in e.iter().enumerate() {
                for &j in &e[a + 1..] {
                    pairs.push((i, j));
                    pairs.push((j, i));
                }
            }
        }
        pairs.sort_unstable();
        let mut adjacency: Vec<Vec<(NodeId, u32)>> = vec![Vec::new(); self.n];
        for (i, j) in pairs {
            let row = &mut adjacency[i];
            match row.last_mut() {
                Some((last, w)) if *last == j => *w += 1,
                _ => row.push((j, 1)),
            }
        }
        CliqueGraph { adjacency }
    }

    /// Keeps exactly the edges of size `r` and re-indexes the nodes that
    /// appear in them (ascending by old index). Returns the sub-hypergraph
    /// and `old_of_new`, mapping each new index to its original node.
    pub fn uniform_subhypergraph(&self, r: usize) -> (Hypergraph, Vec<NodeId>) {
        let kept: Vec<&Vec<NodeId>> = self.edges.iter().filter(|e| e.len() == r).collect();
        let mut present = vec![false; self.n];
        for e in &kept {
            for &v in e.iter() {
                present[v] = true;
            }
        }
        let old_of_new: Vec<NodeId> = (0..self.n).filter(|&v| present[v]).collect();
        let mut new_of_old = vec![usize::MAX; self.n];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old] = new;
        }
        // the remap is monotone, so members stay sorted
        let edges = kept.iter().map(|e| e.iter().map(|&v| new_of_old[v]).collect()).collect();
        (Hypergraph::from_canonical(old_of_new.len(), edges), old_of_new)
    }

    /// Sub-hypergraph on the same node set keeping only the selected edges.
    pub fn retain_edges(&self, mut keep: impl FnMut(&[NodeId]) -> bool) -> Hypergraph {
        let edges = self.edges.iter().filter(|e| keep(e)).cloned().collect();
        Hypergraph::from_canonical(self.n, edges)
    }
}

/// Free-function form of [`Hypergraph::is_hitting_set`].
pub fn is_hitting_set(g: &Hypergraph, s: &HittingSet) -> bool {
    g.is_hitting_set(s)
}

/// Free-function form of [`Hypergraph::is_minimal_hitting_set`].
pub fn is_minimal_hitting_set(g: &Hypergraph, s: &HittingSet) -> bool {
    g.is_minimal_hitting_set(s)
}

/// Free-function form of [`Hypergraph::prune_to_minimal`].
pub fn prune_to_minimal(g: &Hypergraph, s: &HittingSet, removal_order: &[NodeId]) -> Result<HittingSet> {
    g.prune_to_minimal(s, removal_order)
}

/// Sparse symmetric clique-graph weights with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueGraph {
    adjacency: Vec<Vec<(NodeId, u32)>>,
}

impl CliqueGraph {
    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Neighbours of `i` with their weights, ascending by neighbour.
    pub fn neighbors(&self, i: NodeId) -> &[(NodeId, u32)] {
        &self.adjacency[i]
    }

    pub fn weight(&self, i: NodeId, j: NodeId) -> u32 {
        let row = &self.adjacency[i];
        row.binary_search_by_key(&j, |&(k, _)| k).map(|p| row[p].1).unwrap_or(0)
    }

    /// Sum of `w_ij` over unordered pairs `i < j`.
    pub fn total_weight(&self) -> u64 {
        let twice: u64 = self.adjacency.iter().flatten().map(|&(_, w)| u64::from(w)).sum();
        twice / 2
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        let n = self.node_count();
        let mut m = vec![vec![0; n]; n];
        for (i, row) in self.adjacency.iter().enumerate() {
            for &(j, w) in row {
                m[i][j] = w;
            }
        }
        m
    }

    /// Connected components over positive weights, each ascending, ordered by
    /// smallest member. Isolated nodes form singleton components.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut head = 0;
            while head < members.len() {
                let u = members[head];
                head += 1;
                for &(v, _) in &self.adjacency[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

/// A hypergraph with a designated core set that hits every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledHypergraph {
    graph: Hypergraph,
    core: HittingSet,
}

impl LabeledHypergraph {
    pub fn new(graph: Hypergraph, core: HittingSet) -> Result<Self> {
        if let Some(edge) = graph.first_unhit_edge(&core) {
            return Err(Error::NotHittingSet { edge, members: graph.edge(edge).to_vec() });
        }
        if let Some(v) = core.iter().find(|&v| v >= graph.node_count()) {
            return Err(Error::InvalidParameter(format!("core node {v} out of range")));
        }
        Ok(Self { graph, core })
    }

    /// Drops the edges not hit by `core` instead of failing. Returns the
    /// labeled hypergraph and the number of dropped edges.
    pub fn dropping_unhit(graph: Hypergraph, core: HittingSet) -> Result<(Self, usize)> {
        let before = graph.edge_count();
        let kept = graph.retain_edges(|e| e.iter().any(|&v| core.contains(v)));
        let dropped = before - kept.edge_count();
        Ok((Self::new(kept, core)?, dropped))
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn core(&self) -> &HittingSet {
        &self.core
    }

    pub fn into_parts(self) -> (Hypergraph, HittingSet) {
        (self.graph, self.core)
    }
}

/// A set of nodes with constant-time membership.
///
/// Equality, hashing and ordering depend only on the members. Sets order by
/// size first, then lexicographically by ascending members.
#[derive(Clone, Default)]
pub struct HittingSet {
    bits: FixedBitSet,
}

impl HittingSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Self { bits: FixedBitSet::with_capacity(n) }
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.bits.contains(v)
    }

    /// Returns true if `v` was not already present.
    pub fn insert(&mut self, v: NodeId) -> bool {
        if v >= self.bits.len() {
            self.bits.grow(v + 1);
        }
        !self.bits.put(v)
    }

    /// Returns true if `v` was present.
    pub fn remove(&mut self, v: NodeId) -> bool {
        if v >= self.bits.len() || !self.bits.contains(v) {
            return false;
        }
        self.bits.set(v, false);
        true
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<NodeId> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &HittingSet) {
        if other.bits.len() > self.bits.len() {
            self.bits.grow(other.bits.len());
        }
        self.bits.union_with(&other.bits);
    }

    pub fn intersection_len(&self, other: &HittingSet) -> usize {
        self.bits.intersection_count(&other.bits)
    }

    pub fn is_subset(&self, other: &HittingSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

impl PartialEq for HittingSet {
    fn eq(&self, other: &Self) -> bool {
        self.iter().eq(other.iter())
    }
}

impl Eq for HittingSet {}

impl Hash for HittingSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for v in self.iter() {
            v.hash(state);
        }
    }
}

impl Ord for HittingSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for HittingSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for HittingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<NodeId> for HittingSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        let mut s = HittingSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<const N: usize> From<[NodeId; N]> for HittingSet {
    fn from(nodes: [NodeId; N]) -> Self {
        nodes.into_iter().collect()
    }
}
