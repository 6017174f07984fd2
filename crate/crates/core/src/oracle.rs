//! Exact small-instance machinery.
//!
//! Everything here is exponential in the worst case and guarded by
//! [`OracleLimits`]: node sets are packed into 128-bit masks, so instances
//! are capped at 128 nodes regardless of the configured limit.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::hypergraph::{HittingSet, Hypergraph, LabeledHypergraph, NodeId};

/// Hard cap imposed by the mask width.
pub const MASK_BITS: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_nodes: usize,
    pub max_k: usize,
    pub time_budget: Duration,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self { max_nodes: 64, max_k: 12, time_budget: Duration::from_secs(60) }
    }
}

impl OracleLimits {
    pub fn validate(&self) -> Result<()> {
        if self.max_nodes == 0 || self.max_k == 0 || self.time_budget.is_zero() {
            return Err(Error::InvalidParameter("oracle limits must all be positive".into()));
        }
        Ok(())
    }

    fn check_nodes(&self, g: &Hypergraph) -> Result<()> {
        self.validate()?;
        let n = g.node_count();
        if n > self.max_nodes || n > MASK_BITS {
            return Err(Error::TooLarge(format!("{n} nodes (limit {})", self.max_nodes.min(MASK_BITS))));
        }
        Ok(())
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k > self.max_k {
            return Err(Error::TooLarge(format!("k = {k} (limit {})", self.max_k)));
        }
        Ok(())
    }
}

struct Budget {
    start: Instant,
    limit: Duration,
    ticks: u32,
}

impl Budget {
    fn new(limit: Duration) -> Self {
        // the first call already checks the clock
        Self { start: Instant::now(), limit, ticks: 1023 }
    }

    fn exhausted(&mut self) -> bool {
        self.ticks = self.ticks.wrapping_add(1);
        self.ticks.is_multiple_of(1024) && self.start.elapsed() > self.limit
    }

    fn elapsed_ms(&self) -> u128 {
        self.start.elapsed().as_millis()
    }
}

type Mask = u128;

fn bit(v: NodeId) -> Mask {
    1 << v
}

fn edge_masks(g: &Hypergraph) -> Vec<Mask> {
    g.edges().map(|e| e.iter().fold(0, |m, &v| m | bit(v))).collect()
}

fn mask_to_set(mut m: Mask) -> HittingSet {
    let mut s = HittingSet::new();
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        s.insert(v);
        m &= m - 1;
    }
    s
}

fn mask_of(s: &HittingSet) -> Mask {
    s.iter().fold(0, |m, v| m | bit(v))
}

/// Size of a greedily built family of pairwise disjoint masks, smallest
/// first. Any hitting set needs at least this many nodes.
fn packing_bound(masks: &[Mask]) -> usize {
    let mut sorted: Vec<Mask> = masks.to_vec();
    sorted.sort_by_key(|m| m.count_ones());
    let mut used: Mask = 0;
    let mut count = 0;
    for m in sorted {
        if m & used == 0 {
            used |= m;
            count += 1;
        }
    }
    count
}

/// `r! * (k - 1)^r`: more than this many sets of size at most `r` always
/// contain a `k`-sunflower.
pub fn sigma(r: usize, k: usize) -> Result<u64> {
    if r == 0 || k == 0 {
        return Err(Error::InvalidParameter(format!("sigma needs r >= 1 and k >= 1 (got r={r}, k={k})")));
    }
    let overflow = || Error::Overflow("sigma(r, k)");
    let mut factorial: u64 = 1;
    for i in 2..=r as u64 {
        factorial = factorial.checked_mul(i).ok_or_else(overflow)?;
    }
    let base = (k - 1) as u64;
    let exp = u32::try_from(r).map_err(|_| overflow())?;
    let power = base.checked_pow(exp).ok_or_else(overflow)?;
    factorial.checked_mul(power).ok_or_else(overflow)
}

/// Sets whose pairwise intersections all equal `core`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sunflower {
    /// Indices into the edge list the sunflower was found in.
    pub petals: Vec<usize>,
    /// Common intersection, ascending. May be empty.
    pub core: Vec<NodeId>,
}

impl Sunflower {
    /// Checks the sunflower conditions against the edge list.
    pub fn is_valid(&self, edges: &[Vec<NodeId>]) -> bool {
        let core: HashSet<NodeId> = self.core.iter().copied().collect();
        let mut seen_outside: HashSet<NodeId> = HashSet::new();
        for &p in &self.petals {
            let petal: HashSet<NodeId> = edges[p].iter().copied().collect();
            if !core.is_subset(&petal) {
                return false;
            }
            for v in petal.difference(&core) {
                if !seen_outside.insert(*v) {
                    return false;
                }
            }
        }
        let distinct: HashSet<usize> = self.petals.iter().copied().collect();
        distinct.len() == self.petals.len()
    }
}

/// Finds a `k`-sunflower by the constructive Erdős–Rado recursion.
///
/// Takes a maximal pairwise-disjoint family in input order; with at least `k`
/// members it is a sunflower with empty core. Otherwise every edge meets the
/// family, so recurse on the link of the family's most frequent element
/// (ties: smallest node). Always succeeds when the edges are distinct and
/// more than `sigma(r, k)` of them are given; may return `None` otherwise.
pub fn find_sunflower(edges: &[Vec<NodeId>], k: usize) -> Option<Sunflower> {
    if k == 0 {
        return None;
    }
    let items: Vec<(usize, Vec<NodeId>)> = edges.iter().cloned().enumerate().collect();
    let mut petals = sunflower_petals(&items, k)?;
    petals.sort_unstable();
    let mut core: Vec<NodeId> = edges[petals[0]].clone();
    for &p in &petals[1..] {
        core.retain(|v| edges[p].contains(v));
    }
    let found = Sunflower { petals, core };
    debug_assert!(found.is_valid(edges));
    Some(found)
}

fn sunflower_petals(items: &[(usize, Vec<NodeId>)], k: usize) -> Option<Vec<usize>> {
    let mut used: HashSet<NodeId> = HashSet::new();
    let mut family: Vec<usize> = Vec::new();
    for (idx, set) in items {
        if set.iter().all(|v| !used.contains(v)) {
            used.extend(set.iter().copied());
            family.push(*idx);
            if family.len() == k {
                return Some(family);
            }
        }
    }
    let mut freq: HashMap<NodeId, usize> = HashMap::new();
    for (_, set) in items {
        for v in set {
            if used.contains(v) {
                *freq.entry(*v).or_default() += 1;
            }
        }
    }
    let (&x, _) = freq.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))?;
    let link: Vec<(usize, Vec<NodeId>)> = items
        .iter()
        .filter(|(_, set)| set.contains(&x))
        .map(|(idx, set)| (*idx, set.iter().copied().filter(|&v| v != x).collect()))
        .collect();
    sunflower_petals(&link, k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelPhase {
    pub petals: Vec<Vec<NodeId>>,
    pub core: Vec<NodeId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelOutcome {
    /// The edge count dropped to at most `sigma(r, k + 1)`.
    Complete,
    /// An empty-core sunflower was found: `k + 1` pairwise disjoint edges, so
    /// no hitting set of size at most `k` exists.
    NoSmallHittingSet,
    /// The time budget ran out; the kernel is valid but may be large.
    Incomplete,
}

#[derive(Clone, Debug)]
pub struct KernelReport {
    pub kernel: Hypergraph,
    pub phases: usize,
    pub replaced: Vec<KernelPhase>,
    pub outcome: KernelOutcome,
    /// `sigma(r, k + 1)` for the input rank.
    pub threshold: u64,
}

/// Sunflower kernelization for hitting sets of size at most `k`.
///
/// While more than `sigma(r, k + 1)` edges remain, a `(k + 1)`-sunflower's
/// petals are replaced by its core. A set of at most `k` nodes avoiding the
/// core misses some petal, so the hitting sets (and minimal hitting sets) of
/// size at most `k` are unchanged. Resulting duplicate edges are merged and
/// the kernel may contain single-node edges.
pub fn kernelize(g: &Hypergraph, k: usize, limits: &OracleLimits) -> Result<KernelReport> {
    limits.validate()?;
    if k == 0 {
        return Err(Error::InvalidParameter("kernelize needs k >= 1".into()));
    }
    limits.check_k(k)?;
    let r = g.rank().max(1);
    let threshold = sigma(r, k + 1)?;
    let mut edges: Vec<Vec<NodeId>> = g.edges().map(<[NodeId]>::to_vec).collect();
    let mut present: HashSet<Vec<NodeId>> = edges.iter().cloned().collect();
    let mut replaced = Vec::new();
    let mut outcome = KernelOutcome::Complete;
    let start = Instant::now();

    while edges.len() as u64 > threshold {
        if start.elapsed() > limits.time_budget {
            outcome = KernelOutcome::Incomplete;
            break;
        }
        let flower = find_sunflower(&edges, k + 1)
            .expect("more than sigma(r, k + 1) distinct edges always contain a (k + 1)-sunflower");
        if flower.core.is_empty() {
            outcome = KernelOutcome::NoSmallHittingSet;
            break;
        }
        let petals: Vec<Vec<NodeId>> = flower.petals.iter().map(|&p| edges[p].clone()).collect();
        for &p in flower.petals.iter().rev() {
            present.remove(&edges[p]);
            edges.remove(p);
        }
        if present.insert(flower.core.clone()) {
            edges.push(flower.core.clone());
        }
        replaced.push(KernelPhase { petals, core: flower.core });
    }

    let phases = replaced.len();
    Ok(KernelReport {
        kernel: Hypergraph::from_kernel_edges(g.node_count(), &edges)?,
        phases,
        replaced,
        outcome,
        threshold,
    })
}

/// Minimum hitting set size by branch and bound.
///
/// Branches on the smallest uncovered edge, members by ascending degree; in
/// the i-th branch the earlier members are excluded. Lower bound: a greedy
/// disjoint packing of the uncovered edges. The incumbent starts from a
/// pruned greedy solution.
pub fn min_hitting_set_size(g: &Hypergraph, limits: &OracleLimits) -> Result<usize> {
    min_hitting_set(g, limits).map(|s| s.len())
}

/// A minimum hitting set (see [`min_hitting_set_size`]).
pub fn min_hitting_set(g: &Hypergraph, limits: &OracleLimits) -> Result<HittingSet> {
    limits.check_nodes(g)?;
    if g.edge_count() == 0 {
        return Ok(HittingSet::new());
    }
    let masks = edge_masks(g);
    let degrees = g.degrees();

    let order: Vec<usize> = (0..g.edge_count()).collect();
    let greedy = crate::recovery::greedy_matching(g, &order);
    let incumbent = g.prune_to_minimal(&greedy, &greedy.to_vec())?;

    let mut search = MinSearch {
        degrees: &degrees,
        best: mask_of(&incumbent),
        best_size: incumbent.len(),
        budget: Budget::new(limits.time_budget),
        root_lower: packing_bound(&masks),
    };
    if search.root_lower < search.best_size {
        search.branch(&masks, 0, 0)?;
    }
    Ok(mask_to_set(search.best))
}

struct MinSearch<'a> {
    degrees: &'a [usize],
    best: Mask,
    best_size: usize,
    budget: Budget,
    root_lower: usize,
}

impl MinSearch<'_> {
    /// `uncovered` holds the still-unhit edges restricted to allowed nodes.
    fn branch(&mut self, uncovered: &[Mask], chosen: Mask, size: usize) -> Result<()> {
        if self.budget.exhausted() {
            return Err(Error::BudgetExceeded {
                elapsed_ms: self.budget.elapsed_ms(),
                lower: self.root_lower,
                upper: self.best_size,
            });
        }
        let Some(&pivot) = uncovered.iter().min_by_key(|m| m.count_ones()) else {
            if size < self.best_size {
                self.best = chosen;
                self.best_size = size;
            }
            return Ok(());
        };
        if size + packing_bound(uncovered) >= self.best_size {
            return Ok(());
        }
        let mut members = Vec::with_capacity(pivot.count_ones() as usize);
        let mut m = pivot;
        while m != 0 {
            members.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        members.sort_by_key(|&v| (self.degrees[v], v));

        let mut excluded: Mask = 0;
        for v in members {
            let mut next = Vec::with_capacity(uncovered.len());
            let mut feasible = true;
            for &e in uncovered {
                if e & bit(v) != 0 {
                    continue;
                }
                let restricted = e & !excluded;
                if restricted == 0 {
                    feasible = false;
                    break;
                }
                next.push(restricted);
            }
            if feasible {
                self.branch(&next, chosen | bit(v), size + 1)?;
            }
            excluded |= bit(v);
        }
        Ok(())
    }
}

/// All minimal hitting sets of size at most `k`, ordered by size and then
/// lexicographically.
///
/// Branches on an uncovered edge, choosing each member in turn and
/// excluding the earlier ones, so every hitting set of size at most `k` is
/// visited once. A chosen node whose private edges are all gone can never
/// regain one, which prunes non-minimal branches early.
pub fn enumerate_minimal_hitting_sets(
    g: &Hypergraph,
    k: usize,
    limits: &OracleLimits,
) -> Result<Vec<HittingSet>> {
    limits.check_nodes(g)?;
    limits.check_k(k)?;
    if g.edge_count() == 0 {
        return Ok(vec![HittingSet::new()]);
    }
    let masks = edge_masks(g);
    let mut search =
        Enumeration { all: &masks, k, found: Vec::new(), budget: Budget::new(limits.time_budget) };
    search.branch(&masks, 0, 0)?;
    let mut sets: Vec<HittingSet> = search.found.into_iter().map(mask_to_set).collect();
    sets.sort();
    debug_assert!(sets.iter().all(|s| g.is_minimal_hitting_set(s)));
    Ok(sets)
}

struct Enumeration<'a> {
    all: &'a [Mask],
    k: usize,
    found: Vec<Mask>,
    budget: Budget,
}

impl Enumeration<'_> {
    fn has_private_edges(&self, chosen: Mask) -> bool {
        let mut m = chosen;
        while m != 0 {
            let v = bit(m.trailing_zeros() as usize);
            if !self.all.iter().any(|&e| e & chosen == v) {
                return false;
            }
            m &= m - 1;
        }
        true
    }

    fn branch(&mut self, uncovered: &[Mask], chosen: Mask, size: usize) -> Result<()> {
        if self.budget.exhausted() {
            return Err(Error::EnumerationBudget {
                elapsed_ms: self.budget.elapsed_ms(),
                found: self.found.len(),
            });
        }
        if size > 0 && !self.has_private_edges(chosen) {
            return Ok(());
        }
        let Some(&pivot) = uncovered.iter().min_by_key(|m| m.count_ones()) else {
            self.found.push(chosen);
            return Ok(());
        };
        if size + packing_bound(uncovered) > self.k {
            return Ok(());
        }
        let mut excluded: Mask = 0;
        let mut m = pivot;
        while m != 0 {
            let v = bit(m.trailing_zeros() as usize);
            m &= m - 1;
            let mut next = Vec::with_capacity(uncovered.len());
            let mut feasible = true;
            for &e in uncovered {
                if e & v != 0 {
                    continue;
                }
                let restricted = e & !excluded;
                if restricted == 0 {
                    feasible = false;
                    break;
                }
                next.push(restricted);
            }
            if feasible {
                self.branch(&next, chosen | v, size + 1)?;
            }
            excluded |= v;
        }
        Ok(())
    }
}

/// `U(k)`: the union of all minimal hitting sets of size at most `k`.
pub fn union_minimal(g: &Hypergraph, k: usize, limits: &OracleLimits) -> Result<HittingSet> {
    let mut union = HittingSet::new();
    for s in enumerate_minimal_hitting_sets(g, k, limits)? {
        union.union_with(&s);
    }
    Ok(union)
}

/// Independence number via the complement identity `alpha = n - k*`.
pub fn independence_number(g: &Hypergraph, limits: &OracleLimits) -> Result<usize> {
    Ok(g.node_count() - min_hitting_set_size(g, limits)?)
}

/// Independence number by direct search over node subsets that contain no
/// whole edge. Independent of the hitting set machinery.
pub fn independence_number_exhaustive(g: &Hypergraph, limits: &OracleLimits) -> Result<usize> {
    limits.check_nodes(g)?;
    let n = g.node_count();
    let masks = edge_masks(g);
    let mut by_max: Vec<Vec<Mask>> = vec![Vec::new(); n];
    for &m in &masks {
        by_max[MASK_BITS - 1 - m.leading_zeros() as usize].push(m);
    }
    let mut search = IndependentSearch { by_max, n, best: 0, budget: Budget::new(limits.time_budget) };
    search.extend(0, 0, 0)?;
    Ok(search.best)
}

struct IndependentSearch {
    /// Edges grouped by their largest member.
    by_max: Vec<Vec<Mask>>,
    n: usize,
    best: usize,
    budget: Budget,
}

impl IndependentSearch {
    fn extend(&mut self, next: usize, set: Mask, size: usize) -> Result<()> {
        if self.budget.exhausted() {
            return Err(Error::BudgetExceeded {
                elapsed_ms: self.budget.elapsed_ms(),
                lower: self.best,
                upper: self.n,
            });
        }
        self.best = self.best.max(size);
        for v in next..self.n {
            if size + (self.n - v) <= self.best {
                break;
            }
            let with_v = set | bit(v);
            // only edges whose largest member is v can become fully contained
            if self.by_max[v].iter().all(|&e| e & with_v != e) {
                self.extend(v + 1, with_v, size + 1)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    /// Core nodes on an edge whose other members all lie outside the core.
    pub outside: Vec<NodeId>,
    /// Core nodes all of whose edges lie inside the core.
    pub interior: Vec<NodeId>,
    /// Core nodes `u` on an edge `e` whose other members are interior and
    /// such that the core minus `e \ {u}` still hits every edge.
    pub interior_adjacent: Vec<NodeId>,
    /// Core nodes on an edge whose other members are all interior, without
    /// the hitting condition above.
    pub interior_adjacent_literal: Vec<NodeId>,
    /// `U(|C|)`.
    pub union: HittingSet,
    /// Nodes in `outside` or `interior_adjacent` missing from the union.
    pub violations: Vec<NodeId>,
    /// Nodes in `interior_adjacent_literal` missing from the union.
    pub literal_violations: Vec<NodeId>,
}

impl MembershipReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Identifies core nodes that must belong to `U(|C|)` even when the core is
/// not minimal, and checks them against the exact union.
///
/// A node `u` qualifies when some edge through it has all other members
/// outside the core: pruning the core never removes `u`. It also qualifies
/// when some edge `e` through it has all other members interior to the core
/// and removing `e \ {u}` leaves a hitting set; pruning that smaller set
/// keeps `u` for the same reason. Without the hitting condition the claim
/// can fail (edges `{u, a, b}` and `{a, b}` with core `{u, a, b}`), so those
/// nodes are reported separately in `interior_adjacent_literal`.
pub fn check_membership_lemmas(lg: &LabeledHypergraph, limits: &OracleLimits) -> Result<MembershipReport> {
    let g = lg.graph();
    let core = lg.core();
    if core.is_empty() {
        return Err(Error::EmptyCore);
    }
    let union = union_minimal(g, core.len(), limits)?;

    let interior: Vec<NodeId> = core
        .iter()
        .filter(|&v| g.incident_edges(v).iter().all(|&e| g.edge(e).iter().all(|&w| core.contains(w))))
        .collect();
    let is_interior: HashSet<NodeId> = interior.iter().copied().collect();

    let mut outside = Vec::new();
    let mut interior_adjacent = Vec::new();
    let mut interior_adjacent_literal = Vec::new();
    for u in core.iter() {
        let edges = g.incident_edges(u);
        if edges.iter().any(|&e| g.edge(e).iter().all(|&w| w == u || !core.contains(w))) {
            outside.push(u);
        }
        let mut literal = false;
        let mut proven = false;
        for &e in edges {
            let others: Vec<NodeId> = g.edge(e).iter().copied().filter(|&w| w != u).collect();
            if others.is_empty() || !others.iter().all(|w| is_interior.contains(w)) {
                continue;
            }
            literal = true;
            let mut reduced = core.clone();
            for &w in &others {
                reduced.remove(w);
            }
            if g.is_hitting_set(&reduced) {
                proven = true;
                break;
            }
        }
        if literal {
            interior_adjacent_literal.push(u);
        }
        if proven {
            interior_adjacent.push(u);
        }
    }

    let mut flagged: Vec<NodeId> = outside.iter().chain(&interior_adjacent).copied().collect();
    flagged.sort_unstable();
    flagged.dedup();
    let violations = flagged.into_iter().filter(|&v| !union.contains(v)).collect();
    let literal_violations =
        interior_adjacent_literal.iter().copied().filter(|&v| !union.contains(v)).collect();

    Ok(MembershipReport {
        outside,
        interior,
        interior_adjacent,
        interior_adjacent_literal,
        union,
        violations,
        literal_violations,
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn hs<const N: usize>(nodes: [NodeId; N]) -> HittingSet {
        HittingSet::from(nodes)
    }

    fn limits() -> OracleLimits {
        OracleLimits::default()
    }

    /// Naive oracle: every subset of size at most `k`, filtered by the
    /// minimality predicate.
    fn naive_minimal(g: &Hypergraph, k: usize) -> Vec<HittingSet> {
        let n = g.node_count();
        let mut out: Vec<HittingSet> = (0u32..1 << n)
            .filter(|m| m.count_ones() as usize <= k)
            .map(|m| (0..n).filter(|&v| m & (1 << v) != 0).collect::<HittingSet>())
            .filter(|s| g.is_minimal_hitting_set(s))
            .collect();
        out.sort();
        out
    }

    fn naive_min_size(g: &Hypergraph) -> usize {
        let n = g.node_count();
        (0u32..1 << n)
            .map(|m| (0..n).filter(|&v| m & (1 << v) != 0).collect::<HittingSet>())
            .filter(|s| g.is_hitting_set(s))
            .map(|s| s.len())
            .min()
            .unwrap()
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(3, 2).unwrap(), 6);
        assert_eq!(sigma(2, 3).unwrap(), 8);
        assert_eq!(sigma(3, 4).unwrap(), 162);
        for r in 1..8 {
            assert_eq!(sigma(r, 1).unwrap(), 0);
        }
        assert!(matches!(sigma(40, 3), Err(Error::Overflow(_))));
        assert!(sigma(0, 3).is_err());
    }

    #[test]
    fn sunflower_examples() {
        let f = find_sunflower(&[vec![1, 2], vec![1, 3], vec![1, 4]], 3).unwrap();
        assert_eq!(f.core, vec![1]);
        assert_eq!(f.petals, vec![0, 1, 2]);

        let f = find_sunflower(&[vec![1, 2], vec![3, 4], vec![5, 6]], 3).unwrap();
        assert!(f.core.is_empty());
        assert_eq!(f.petals.len(), 3);

        assert!(find_sunflower(&[vec![1, 2], vec![2, 3], vec![1, 3]], 3).is_none());
    }

    #[test]
    fn triangle_has_no_3_sunflower_by_exhaustion() {
        // the only 3-subset is the whole family; check it directly
        let edges = vec![vec![1, 2], vec![2, 3], vec![1, 3]];
        let candidate = Sunflower { petals: vec![0, 1, 2], core: vec![] };
        assert!(!candidate.is_valid(&edges));
        for c in [1, 2, 3] {
            assert!(!Sunflower { petals: vec![0, 1, 2], core: vec![c] }.is_valid(&edges));
        }
    }

    #[test]
    fn kernelize_small_graph_is_untouched() {
        let g = Hypergraph::new(5, &[vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let rep = kernelize(&g, 2, &limits()).unwrap();
        assert_eq!(rep.phases, 0);
        assert_eq!(rep.kernel, g);
        assert_eq!(rep.outcome, KernelOutcome::Complete);
    }

    #[test]
    fn kernelize_detects_disjoint_edges() {
        // k = 1: sigma(2, 2) = 2; three disjoint pairs give an empty-core sunflower
        let g = Hypergraph::new(6, &[vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        let rep = kernelize(&g, 1, &limits()).unwrap();
        assert_eq!(rep.outcome, KernelOutcome::NoSmallHittingSet);
        assert!(enumerate_minimal_hitting_sets(&g, 1, &limits()).unwrap().is_empty());
    }

    #[test]
    fn kernelize_replaces_star_by_centre() {
        // a star of 5 pairs around node 0, k = 2: sigma(2, 3) = 8 is not
        // exceeded, so add more spokes
        let edges: Vec<Vec<usize>> = (1..12).map(|i| vec![0, i]).collect();
        let g = Hypergraph::new(12, &edges).unwrap();
        let rep = kernelize(&g, 2, &limits()).unwrap();
        assert!(rep.phases >= 1);
        assert_eq!(rep.outcome, KernelOutcome::Complete);
        assert!(rep.kernel.edges().any(|e| e == [0]));
        assert!(rep.kernel.edge_count() as u64 <= rep.threshold);
        assert_eq!(
            enumerate_minimal_hitting_sets(&g, 2, &limits()).unwrap(),
            enumerate_minimal_hitting_sets(&rep.kernel, 2, &limits()).unwrap()
        );
    }

    #[test]
    fn min_hitting_set_examples() {
        let g = Hypergraph::new(5, &[vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        assert_eq!(min_hitting_set_size(&g, &limits()).unwrap(), 1);
        let g = Hypergraph::new(9, &[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]).unwrap();
        assert_eq!(min_hitting_set_size(&g, &limits()).unwrap(), 3);
        assert_eq!(min_hitting_set_size(&Hypergraph::empty(3), &limits()).unwrap(), 0);
    }

    #[test]
    fn singleton_edges_are_forced() {
        let g = Hypergraph::from_kernel_edges(4, &[vec![1], vec![0, 2], vec![2, 3], vec![1, 3]]).unwrap();
        let s = min_hitting_set(&g, &limits()).unwrap();
        assert!(s.contains(1));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn enumeration_examples() {
        let g = Hypergraph::new(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(
            enumerate_minimal_hitting_sets(&g, 1, &limits()).unwrap(),
            vec![hs([0]), hs([1]), hs([2])]
        );

        let path = Hypergraph::new(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(enumerate_minimal_hitting_sets(&path, 2, &limits()).unwrap(), vec![hs([1]), hs([0, 2])]);
        assert_eq!(enumerate_minimal_hitting_sets(&path, 1, &limits()).unwrap(), vec![hs([1])]);
        assert_eq!(naive_minimal(&path, 2), vec![hs([1]), hs([0, 2])]);

        assert_eq!(union_minimal(&path, 2, &limits()).unwrap(), hs([0, 1, 2]));
        assert_eq!(union_minimal(&path, 1, &limits()).unwrap(), hs([1]));
    }

    #[test]
    fn independence_examples() {
        let g = Hypergraph::new(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(independence_number(&g, &limits()).unwrap(), 2);
        assert_eq!(independence_number_exhaustive(&g, &limits()).unwrap(), 2);
        let e = Hypergraph::empty(6);
        assert_eq!(independence_number(&e, &limits()).unwrap(), 6);
        assert_eq!(independence_number_exhaustive(&e, &limits()).unwrap(), 6);
    }

    #[test]
    fn limits_are_enforced() {
        let g = Hypergraph::empty(70);
        assert!(matches!(min_hitting_set_size(&g, &limits()), Err(Error::TooLarge(_))));
        let small = Hypergraph::new(3, &[vec![0, 1, 2]]).unwrap();
        assert!(matches!(enumerate_minimal_hitting_sets(&small, 20, &limits()), Err(Error::TooLarge(_))));
        let zero = OracleLimits { max_k: 0, ..limits() };
        assert!(zero.validate().is_err());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        // many overlapping edges on 40 nodes and a tiny budget
        let edges: Vec<Vec<usize>> = (0..40)
            .flat_map(|i| (i + 1..40).filter(move |j| (i * 7 + j * 3) % 5 != 0).map(move |j| vec![i, j]))
            .collect();
        let g = Hypergraph::new(40, &edges).unwrap();
        let tight = OracleLimits { time_budget: Duration::from_nanos(1), ..limits() };
        assert!(matches!(
            enumerate_minimal_hitting_sets(&g, 12, &tight),
            Err(Error::EnumerationBudget { .. })
        ));
        assert!(matches!(min_hitting_set_size(&g, &tight), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn membership_examples() {
        let g = Hypergraph::new(3, &[vec![0, 1, 2]]).unwrap();
        let lg = LabeledHypergraph::new(g, hs([0])).unwrap();
        let rep = check_membership_lemmas(&lg, &limits()).unwrap();
        assert_eq!(rep.outside, vec![0]);
        assert!(rep.union.contains(0));
        assert!(rep.holds());

        let g = Hypergraph::new(4, &[vec![0, 1, 2], vec![1, 2, 3], vec![0, 2, 3]]).unwrap();
        let lg = LabeledHypergraph::new(g, hs([0, 1, 2])).unwrap();
        let rep = check_membership_lemmas(&lg, &limits()).unwrap();
        assert!(rep.interior.is_empty());
        assert!(rep.interior_adjacent.is_empty());
        assert!(rep.holds());
    }

    #[test]
    fn interior_premise_needs_the_hitting_condition() {
        // u = 0 sits on {0,1,2} whose other members are interior, yet every
        // hitting set through 0 also contains 1 or 2, which alone suffice
        let g = Hypergraph::new(3, &[vec![0, 1, 2], vec![1, 2]]).unwrap();
        let lg = LabeledHypergraph::new(g, hs([0, 1, 2])).unwrap();
        let rep = check_membership_lemmas(&lg, &limits()).unwrap();
        assert_eq!(rep.interior, vec![0, 1, 2]);
        assert!(rep.interior_adjacent_literal.contains(&0));
        assert!(!rep.interior_adjacent.contains(&0));
        assert_eq!(rep.union, hs([1, 2]));
        assert_eq!(rep.literal_violations, vec![0]);
        assert!(rep.holds());
    }

    #[test]
    fn whole_node_set_as_core() {
        let g = Hypergraph::new(5, &[vec![0, 1], vec![1, 2, 3], vec![3, 4], vec![0, 4]]).unwrap();
        let lg = LabeledHypergraph::new(g, hs([0, 1, 2, 3, 4])).unwrap();
        let rep = check_membership_lemmas(&lg, &limits()).unwrap();
        assert_eq!(rep.interior, vec![0, 1, 2, 3, 4]);
        assert!(rep.holds());
        for v in &rep.interior_adjacent {
            assert!(rep.union.contains(*v));
        }
    }

    fn arb_small_hypergraph(max_n: usize, max_r: usize) -> impl Strategy<Value = Hypergraph> {
        (3usize..=max_n).prop_flat_map(move |n| {
            proptest::collection::vec(proptest::collection::vec(0..n, 2..=max_r), 0..14)
                .prop_filter_map("edge too small", move |raw| Hypergraph::new(n, &raw).ok())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn enumeration_matches_naive(g in arb_small_hypergraph(10, 4), k in 0usize..5) {
            let fast = enumerate_minimal_hitting_sets(&g, k, &limits()).unwrap();
            prop_assert_eq!(fast, naive_minimal(&g, k));
        }

        #[test]
        fn min_size_matches_naive(g in arb_small_hypergraph(11, 4)) {
            let k = min_hitting_set_size(&g, &limits()).unwrap();
            prop_assert_eq!(k, naive_min_size(&g));
            prop_assert_eq!(independence_number_exhaustive(&g, &limits()).unwrap() + k, g.node_count());
        }

        #[test]
        fn kernelize_preserves_small_minimal_sets(g in arb_small_hypergraph(9, 3), k in 1usize..3) {
            let report = kernelize(&g, k, &limits()).unwrap();
            let before = enumerate_minimal_hitting_sets(&g, k, &limits()).unwrap();
            match report.outcome {
                KernelOutcome::Complete => {
                    prop_assert!(report.kernel.edge_count() as u64 <= report.threshold);
                    prop_assert_eq!(enumerate_minimal_hitting_sets(&report.kernel, k, &limits()).unwrap(), before);
                }
                KernelOutcome::NoSmallHittingSet => prop_assert!(before.is_empty()),
                KernelOutcome::Incomplete => prop_assert!(false, "budget ran out"),
            }
        }

        #[test]
        fn union_of_small_minimal_sets_is_bounded(g in arb_small_hypergraph(10, 3), slack in 0usize..2) {
            let k = min_hitting_set_size(&g, &limits()).unwrap() + slack;
            let r = g.rank() as u64;
            let bound = r * (1..=r).product::<u64>() * (k as u64).pow(r as u32);
            prop_assert!(union_minimal(&g, k, &limits()).unwrap().len() as u64 <= bound);
        }

        #[test]
        fn sunflower_always_found_above_sigma(n in 4usize..9, r in 1usize..4, k in 2usize..4, seed in any::<u64>()) {
            let all: Vec<Vec<usize>> = all_subsets_up_to(n, r);
            let threshold = sigma(r, k).unwrap() as usize;
            prop_assume!(all.len() > threshold);
            // a deterministic pseudo-random selection of threshold + 1 distinct sets
            let mut picked = all.clone();
            let mut state = seed | 1;
            for i in (1..picked.len()).rev() {
                state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                picked.swap(i, (state % (i as u64 + 1)) as usize);
            }
            picked.truncate(threshold + 1);
            let flower = find_sunflower(&picked, k);
            prop_assert!(flower.is_some());
            let flower = flower.unwrap();
            prop_assert_eq!(flower.petals.len(), k);
            prop_assert!(flower.is_valid(&picked));
        }
    }

    fn all_subsets_up_to(n: usize, r: usize) -> Vec<Vec<usize>> {
        (1u32..1 << n)
            .filter(|m| m.count_ones() as usize <= r)
            .map(|m| (0..n).filter(|&v| m & (1 << v) != 0).collect())
            .collect()
    }
}
