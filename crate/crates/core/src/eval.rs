//! Scoring rankings against a planted core.

use crate::error::{Error, Result};
use crate::hypergraph::{HittingSet, Hypergraph};
use crate::ranking::Ranking;
use crate::recovery::{umhs_with_core, UmhsConfig};

/// Precision and recall after each ranking prefix.
#[derive(Clone, Debug, PartialEq)]
pub struct PrCurve {
    /// `(recall, precision)` for prefixes of length `1..=n`.
    pub points: Vec<(f64, f64)>,
    pub positives: usize,
}

impl PrCurve {
    pub fn new(ranking: &Ranking, core: &HittingSet) -> Result<Self> {
        if core.is_empty() {
            return Err(Error::EmptyCore);
        }
        let positives = core.len();
        let mut hits = 0usize;
        let points = ranking
            .order()
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                if core.contains(v) {
                    hits += 1;
                }
                (hits as f64 / positives as f64, hits as f64 / (i + 1) as f64)
            })
            .collect();
        Ok(Self { points, positives })
    }

    /// Precision after the first `k` nodes.
    pub fn precision_at(&self, k: usize) -> Option<f64> {
        k.checked_sub(1).and_then(|i| self.points.get(i)).map(|&(_, p)| p)
    }
}

/// Fraction of the top `|C|` ranked nodes that lie in `C`.
pub fn precision_at_core_size(ranking: &Ranking, core: &HittingSet) -> Result<f64> {
    if core.is_empty() {
        return Err(Error::EmptyCore);
    }
    let hits = ranking.top(core.len()).iter().filter(|&&v| core.contains(v)).count();
    Ok(hits as f64 / core.len() as f64)
}

/// Average precision: the mean, over core nodes in ranked order, of the
/// precision at the prefix ending on that node. Core nodes missing from the
/// ranking contribute zero.
pub fn auprc(ranking: &Ranking, core: &HittingSet) -> Result<(f64, PrCurve)> {
    let curve = PrCurve::new(ranking, core)?;
    let mut sum = 0.0;
    let mut previous_recall = 0.0;
    for &(recall, precision) in &curve.points {
        if recall > previous_recall {
            sum += precision;
            previous_recall = recall;
        }
    }
    Ok((sum / curve.positives as f64, curve))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord {
    pub iteration: usize,
    pub union_size: usize,
    /// `|S ∩ C| / |C|`; 1 for an empty core.
    pub recovered_fraction: f64,
}

/// One record per UMHS iteration up to `n_max`.
pub fn sweep(g: &Hypergraph, core: &HittingSet, n_max: usize, seed: u64) -> Vec<SweepRecord> {
    let cfg = UmhsConfig::new(n_max.max(1), seed).with_trajectory();
    let result = umhs_with_core(g, &cfg, Some(core));
    result
        .trajectory
        .unwrap_or_default()
        .into_iter()
        .map(|p| SweepRecord {
            iteration: p.iteration,
            union_size: p.union_size,
            recovered_fraction: match p.core_hits {
                Some(h) if !core.is_empty() => h as f64 / core.len() as f64,
                _ => 1.0,
            },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::NodeId;
    use crate::recovery::pruned_greedy_iteration;

    fn ranking(order: &[NodeId]) -> Ranking {
        let n = order.len();
        let mut scores = vec![0.0; n];
        for (pos, &v) in order.iter().enumerate() {
            scores[v] = (n - pos) as f64;
        }
        Ranking::from_scores(scores)
    }

    fn hs(nodes: &[NodeId]) -> HittingSet {
        nodes.iter().copied().collect()
    }

    #[test]
    fn precision_examples() {
        assert_eq!(precision_at_core_size(&ranking(&[0, 1, 2, 3]), &hs(&[0, 1])).unwrap(), 1.0);
        assert_eq!(precision_at_core_size(&ranking(&[2, 3, 4, 0, 1]), &hs(&[0, 1])).unwrap(), 0.0);
        assert_eq!(precision_at_core_size(&ranking(&[0, 2, 1, 3]), &hs(&[0, 1])).unwrap(), 0.5);
        assert!(matches!(
            precision_at_core_size(&ranking(&[0, 1]), &HittingSet::new()),
            Err(Error::EmptyCore)
        ));
    }

    #[test]
    fn auprc_examples() {
        assert_eq!(auprc(&ranking(&[0, 1, 2, 3]), &hs(&[0, 1])).unwrap().0, 1.0);
        let (ap, curve) = auprc(&ranking(&[0, 2, 1, 3]), &hs(&[0, 1])).unwrap();
        assert!((ap - 5.0 / 6.0).abs() < 1e-12);
        assert_eq!(curve.points.last().unwrap().0, 1.0);
        assert_eq!(auprc(&ranking(&[3, 1, 0, 2]), &hs(&[0, 1, 2, 3])).unwrap().0, 1.0);
        assert!(auprc(&ranking(&[0]), &HittingSet::new()).is_err());
    }

    fn permutations(n: usize) -> Vec<Vec<NodeId>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Stepwise integral of the PR curve: sum of recall increments times
    /// precision, computed from scratch.
    fn integrate(order: &[NodeId], core: &[bool]) -> f64 {
        let positives = core.iter().filter(|&&c| c).count() as f64;
        let mut area = 0.0;
        let mut prev_recall = 0.0;
        for k in 1..=order.len() {
            let hits = order[..k].iter().filter(|&&v| core[v]).count() as f64;
            let recall = hits / positives;
            area += (recall - prev_recall) * (hits / k as f64);
            prev_recall = recall;
        }
        area
    }

    #[test]
    fn auprc_matches_exhaustive_integration() {
        for n in 1..=7 {
            let perms = permutations(n);
            for mask in 1u32..1 << n {
                let member: Vec<bool> = (0..n).map(|v| mask & (1 << v) != 0).collect();
                let core: HittingSet = (0..n).filter(|&v| member[v]).collect();
                for order in &perms {
                    let r = ranking(order);
                    let (ap, curve) = auprc(&r, &core).unwrap();
                    assert!((ap - integrate(order, &member)).abs() < 1e-12);
                    assert!((0.0..=1.0).contains(&ap));
                    let p = precision_at_core_size(&r, &core).unwrap();
                    assert_eq!(curve.precision_at(core.len()), Some(p));
                    assert!(curve.points.windows(2).all(|w| w[0].0 <= w[1].0));
                }
            }
        }
    }

    #[test]
    fn sweep_examples() {
        let g = Hypergraph::new(6, &[vec![0, 1, 2], vec![2, 3], vec![3, 4, 5], vec![1, 5]]).unwrap();
        let core = hs(&[1, 3]);
        let one = sweep(&g, &core, 1, 4);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].union_size, pruned_greedy_iteration(&g, 4, 0).len());

        let many = sweep(&g, &core, 40, 4);
        assert_eq!(many.len(), 40);
        assert!(many.windows(2).all(|w| w[0].union_size <= w[1].union_size));
        assert!(many.last().unwrap().recovered_fraction >= many[0].recovered_fraction);
        assert_eq!(many, sweep(&g, &core, 40, 4));
        assert_eq!(many[0], one[0]);
    }
}
