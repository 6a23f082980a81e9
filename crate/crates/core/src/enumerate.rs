//! Path and cut-set enumeration.
//!
//! All families are emitted in [`EdgeSet`]'s shortlex order, e.g.
//! `{e1}, {e1,e2}, {e1,e3}, {e2,e3}, {e1,e2,e3}`.

use serde::Serialize;

use crate::budget::Budget;
use crate::edgeset::EdgeSet;
use crate::error::Result;
use crate::flow::max_flow;
use crate::network::Network;

/// Every simple directed source-terminal path, as edge sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathSet {
    paths: Vec<EdgeSet>,
}

impl PathSet {
    pub fn paths(&self) -> &[EdgeSet] {
        &self.paths
    }

    /// Number of paths, `g`.
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

pub fn enumerate_paths(net: &Network) -> PathSet {
    fn walk(
        net: &Network,
        node: usize,
        on_path: &mut [bool],
        edges: EdgeSet,
        out: &mut Vec<EdgeSet>,
    ) {
        if node == net.terminal() {
            out.push(edges);
            return;
        }
        on_path[node] = true;
        for &j in net.out_edges(node) {
            let head = net.edge(j).1;
            if !on_path[head] {
                let mut next = edges;
                next.insert(j);
                walk(net, head, on_path, next, out);
            }
        }
        on_path[node] = false;
    }

    let mut paths = Vec::new();
    let mut on_path = vec![false; net.node_count()];
    walk(net, net.source(), &mut on_path, EdgeSet::EMPTY, &mut paths);
    paths.sort_unstable();
    PathSet { paths }
}

/// The cut-set families `K ⊇ L ⊇ M` of a network.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutFamily {
    edge_count: usize,
    min_cut: usize,
    all_cuts: Vec<EdgeSet>,
    minimal_cuts: Vec<EdgeSet>,
    minimum_cuts: Vec<EdgeSet>,
}

impl CutFamily {
    /// `K`: every edge subset whose removal disconnects source and terminal.
    pub fn all_cuts(&self) -> &[EdgeSet] {
        &self.all_cuts
    }

    /// `L`: cut-sets with no proper subset that is a cut-set.
    pub fn minimal_cuts(&self) -> &[EdgeSet] {
        &self.minimal_cuts
    }

    /// `M`: cut-sets of the minimum size `m`.
    pub fn minimum_cuts(&self) -> &[EdgeSet] {
        &self.minimum_cuts
    }

    /// `m`, the minimum cut size.
    pub fn min_cut(&self) -> usize {
        self.min_cut
    }

    /// `k = |K|`.
    pub fn count(&self) -> usize {
        self.all_cuts.len()
    }

    /// Number of edges `n` of the network the family was built from.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_cut(&self, set: EdgeSet) -> bool {
        self.all_cuts.binary_search(&set).is_ok()
    }
}

/// Scans all `2^n` edge subsets, keeping those whose removal leaves no
/// surviving source-terminal path.
pub fn enumerate_cutsets(net: &Network, budget: Budget) -> Result<CutFamily> {
    let n = net.edge_count();
    budget.check_states(n)?;
    let full = net.all_edges();

    let mut all_cuts: Vec<EdgeSet> = EdgeSet::all_subsets(n)
        .filter(|&cut| !net.connects(full.difference(cut)))
        .collect();
    all_cuts.sort_unstable();

    let is_cut = |set: EdgeSet| all_cuts.binary_search(&set).is_ok();
    let minimal_cuts: Vec<EdgeSet> = all_cuts
        .iter()
        .copied()
        .filter(|&cut| cut.iter().all(|j| !is_cut(cut.difference(EdgeSet::singleton(j)))))
        .collect();

    let min_cut = min_cut_size(net);
    let minimum_cuts = all_cuts
        .iter()
        .copied()
        .filter(|cut| cut.len() == min_cut)
        .collect();

    Ok(CutFamily {
        edge_count: n,
        min_cut,
        all_cuts,
        minimal_cuts,
        minimum_cuts,
    })
}

/// `m` via unit-capacity max-flow, without enumerating cut-sets.
pub fn min_cut_size(net: &Network) -> usize {
    max_flow(net, net.all_edges()) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[usize]) -> EdgeSet {
        // one-based labels
        labels.iter().map(|l| l - 1).collect()
    }

    fn n1() -> Network {
        Network::new(3, vec![(0, 1), (1, 2), (1, 2)], 0, 2).unwrap()
    }

    fn n2() -> Network {
        Network::new(3, vec![(0, 1), (0, 1), (1, 2), (1, 2)], 0, 2).unwrap()
    }

    fn n4() -> Network {
        Network::new(5, vec![(0, 2), (0, 1), (1, 3), (2, 3), (2, 4), (3, 4)], 0, 4).unwrap()
    }

    fn single() -> Network {
        Network::new(2, vec![(0, 1)], 0, 1).unwrap()
    }

    #[test]
    fn paths_of_n1() {
        let paths = enumerate_paths(&n1());
        assert_eq!(paths.paths(), &[set(&[1, 2]), set(&[1, 3])]);
        assert_eq!(paths.len(), 2);
    }

    #[test]
    fn paths_of_n4() {
        let paths = enumerate_paths(&n4());
        let expected = [set(&[1, 5]), set(&[1, 4, 6]), set(&[2, 3, 6])];
        assert_eq!(paths.paths(), expected.as_slice());
    }

    #[test]
    fn paths_of_single_edge() {
        assert_eq!(enumerate_paths(&single()).paths(), &[set(&[1])]);
    }

    #[test]
    fn paths_skip_dead_ends() {
        let net = Network::new(4, vec![(0, 1), (1, 3), (1, 2)], 0, 3).unwrap();
        assert_eq!(enumerate_paths(&net).paths(), &[set(&[1, 2])]);
    }

    #[test]
    fn cut_families_of_n1() {
        let cuts = enumerate_cutsets(&n1(), Budget::default()).unwrap();
        assert_eq!(
            cuts.all_cuts(),
            &[set(&[1]), set(&[1, 2]), set(&[1, 3]), set(&[2, 3]), set(&[1, 2, 3])]
        );
        assert_eq!(cuts.minimal_cuts(), &[set(&[1]), set(&[2, 3])]);
        assert_eq!(cuts.minimum_cuts(), &[set(&[1])]);
        assert_eq!(cuts.min_cut(), 1);
        assert_eq!(cuts.count(), 5);
    }

    #[test]
    fn cut_families_of_n2() {
        let cuts = enumerate_cutsets(&n2(), Budget::default()).unwrap();
        assert_eq!(cuts.minimal_cuts(), &[set(&[1, 2]), set(&[3, 4])]);
        assert_eq!(cuts.minimum_cuts(), cuts.minimal_cuts());
        assert_eq!(cuts.min_cut(), 2);
        assert_eq!(cuts.count(), 7);
    }

    #[test]
    fn cut_families_of_single_edge() {
        let cuts = enumerate_cutsets(&single(), Budget::default()).unwrap();
        assert_eq!(cuts.all_cuts(), &[set(&[1])]);
        assert_eq!(cuts.minimal_cuts(), &[set(&[1])]);
        assert_eq!(cuts.minimum_cuts(), &[set(&[1])]);
        assert_eq!(cuts.min_cut(), 1);
    }

    #[test]
    fn min_cut_sizes() {
        assert_eq!(min_cut_size(&n1()), 1);
        assert_eq!(min_cut_size(&single()), 1);
        let n6 = Network::new(4, vec![(0, 1), (0, 3), (0, 2), (1, 3), (2, 3)], 0, 3).unwrap();
        assert_eq!(min_cut_size(&n6), 3);
    }

    #[test]
    fn budget_exceeded() {
        let err = enumerate_cutsets(&n2(), Budget::new(8)).unwrap_err();
        assert!(err.is_budget());
        assert!(enumerate_cutsets(&n2(), Budget::new(16)).is_ok());
    }
}
