use crate::hypergraph::NodeId;

/// A total order over nodes, best first, with a score per node.
///
/// Scores are indexed by node. The order lists nodes by descending score,
/// ties broken by ascending node index, so a top-k cut on the scores
/// reproduces the order.
#[derive(Clone, Debug, PartialEq)]
pub struct Ranking {
    order: Vec<NodeId>,
    scores: Vec<f64>,
}

impl Ranking {
    pub fn from_scores(scores: Vec<f64>) -> Self {
        let mut order: Vec<NodeId> = (0..scores.len()).collect();
        order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
        Self { order, scores }
    }

    /// Nodes, best first.
    pub fn order(&self) -> &[NodeId] {
        &self.order
    }

    /// Scores indexed by node.
    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn top(&self, k: usize) -> &[NodeId] {
        &self.order[..k.min(self.order.len())]
    }

    /// Maps a ranking over re-indexed nodes back to original ids.
    pub fn map_nodes(&self, old_of_new: &[NodeId]) -> Vec<NodeId> {
        self.order.iter().map(|&v| old_of_new[v]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_break_by_index() {
        let r = Ranking::from_scores(vec![1.0, 3.0, 1.0, 3.0, 0.0]);
        assert_eq!(r.order(), &[1, 3, 0, 2, 4]);
        assert_eq!(r.top(2), &[1, 3]);
        assert_eq!(r.top(10).len(), 5);
    }

    #[test]
    fn order_is_permutation() {
        let r = Ranking::from_scores(vec![0.5; 7]);
        let mut o = r.order().to_vec();
        o.sort_unstable();
        assert_eq!(o, (0..7).collect::<Vec<_>>());
    }
}
