//! Unit-capacity s-t max-flow by augmenting paths.
//!
//! Every surviving edge carries capacity one, so the flow on an edge is a
//! single bit and the whole flow fits an [`EdgeSet`]. Each round searches
//! the residual network breadth-first (forward along unused surviving
//! edges, backward along used ones) and flips the edges of the path found.

use crate::edgeset::EdgeSet;
use crate::network::Network;

/// Reusable scratch space for repeated max-flow evaluations on one network.
pub struct UnitFlow<'a> {
    net: &'a Network,
    // For each node: the edge used to reach it and whether it was traversed
    // forward. `None` means unvisited.
    parent: Vec<Option<(usize, bool)>>,
    queue: Vec<usize>,
}

impl<'a> UnitFlow<'a> {
    pub fn new(net: &'a Network) -> Self {
        UnitFlow {
            net,
            parent: vec![None; net.node_count()],
            queue: Vec::with_capacity(net.node_count()),
        }
    }

    /// Max-flow value from source to terminal through `surviving` edges.
    pub fn max_flow(&mut self, surviving: EdgeSet) -> u32 {
        self.max_flow_with_edges(surviving).0
    }

    /// Max-flow value together with the set of edges carrying flow.
    pub fn max_flow_with_edges(&mut self, surviving: EdgeSet) -> (u32, EdgeSet) {
        let net = self.net;
        let (s, t) = (net.source(), net.terminal());
        let mut used = EdgeSet::EMPTY;
        let mut value = 0;
        loop {
            self.parent.iter_mut().for_each(|p| *p = None);
            self.queue.clear();
            // Sentinel so the source counts as visited.
            self.parent[s] = Some((usize::MAX, true));
            self.queue.push(s);
            let mut head = 0;
            while head < self.queue.len() && self.parent[t].is_none() {
                let v = self.queue[head];
                head += 1;
                for &j in net.out_edges(v) {
                    let w = net.edge(j).1;
                    if surviving.contains(j) && !used.contains(j) && self.parent[w].is_none() {
                        self.parent[w] = Some((j, true));
                        self.queue.push(w);
                    }
                }
                for &j in net.in_edges(v) {
                    let w = net.edge(j).0;
                    if used.contains(j) && self.parent[w].is_none() {
                        self.parent[w] = Some((j, false));
                        self.queue.push(w);
                    }
                }
            }
            if self.parent[t].is_none() {
                return (value, used);
            }
            let mut v = t;
            while v != s {
                let (j, forward) = self.parent[v].expect("path node has a parent");
                if forward {
                    used.insert(j);
                    v = net.edge(j).0;
                } else {
                    used.remove(j);
                    v = net.edge(j).1;
                }
            }
            value += 1;
        }
    }
}

/// One-shot convenience wrapper around [`UnitFlow`].
pub fn max_flow(net: &Network, surviving: EdgeSet) -> u32 {
    UnitFlow::new(net).max_flow(surviving)
}
