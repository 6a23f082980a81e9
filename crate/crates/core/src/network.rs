//! Directed acyclic source-terminal networks.

use std::collections::BinaryHeap;
use std::cmp::Reverse;

use crate::edgeset::{EdgeSet, MAX_EDGES};
use crate::error::{Error, Result};

/// A validated directed acyclic multigraph with a designated source and
/// terminal. Edges are identified by their index, so parallel edges are
/// distinct links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    source: usize,
    terminal: usize,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
    // (edge, compact tail, compact head) ordered so that every edge appears
    // after all edges entering its tail.
    sweep: Vec<(usize, u8, u8)>,
    compact_source: u8,
    compact_terminal: u8,
}

impl Network {
    pub fn new(
        node_count: usize,
        edges: Vec<(usize, usize)>,
        source: usize,
        terminal: usize,
    ) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::NoNodes);
        }
        let in_range = |index: usize| {
            if index < node_count {
                Ok(())
            } else {
                Err(Error::NodeOutOfRange { index, node_count })
            }
        };
        in_range(source)?;
        in_range(terminal)?;
        for &(tail, head) in &edges {
            in_range(tail)?;
            in_range(head)?;
        }
        if source == terminal {
            return Err(Error::SourceEqualsTerminal(source));
        }
        if edges.len() > MAX_EDGES {
            return Err(Error::TooManyEdges {
                edges: edges.len(),
                max: MAX_EDGES,
            });
        }

        let mut out_edges = vec![Vec::new(); node_count];
        let mut in_edges = vec![Vec::new(); node_count];
        let mut indegree = vec![0usize; node_count];
        for (j, &(tail, head)) in edges.iter().enumerate() {
            out_edges[tail].push(j);
            in_edges[head].push(j);
            indegree[head] += 1;
        }

        // Kahn's algorithm, smallest ready node first for a stable order.
        let mut ready: BinaryHeap<Reverse<usize>> = (0..node_count)
            .filter(|&v| indegree[v] == 0)
            .map(Reverse)
            .collect();
        let mut order = Vec::with_capacity(node_count);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for &j in &out_edges[v] {
                let head = edges[j].1;
                indegree[head] -= 1;
                if indegree[head] == 0 {
                    ready.push(Reverse(head));
                }
            }
        }
        if order.len() != node_count {
            return Err(Error::CyclicGraph);
        }

        // At most 2 * 63 + 2 distinct nodes touch an edge or are terminals,
        // so compact ids fit a u128 reachability mask.
        let mut compact = vec![u8::MAX; node_count];
        let mut next = 0u8;
        let mut assign = |v: usize, compact: &mut Vec<u8>| {
            if compact[v] == u8::MAX {
                compact[v] = next;
                next += 1;
            }
        };
        assign(source, &mut compact);
        assign(terminal, &mut compact);
        let mut sweep = Vec::with_capacity(edges.len());
        for &v in &order {
            for &j in &out_edges[v] {
                let head = edges[j].1;
                assign(v, &mut compact);
                assign(head, &mut compact);
                sweep.push((j, compact[v], compact[head]));
            }
        }

        let net = Network {
            node_count,
            compact_source: compact[source],
            compact_terminal: compact[terminal],
            edges,
            source,
            terminal,
            out_edges,
            in_edges,
            sweep,
        };
        if !net.connects(net.all_edges()) {
            return Err(Error::NotConnected { source_node: source, terminal });
        }
        Ok(net)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn terminal(&self) -> usize {
        self.terminal
    }

    /// `(tail, head)` of edge `j`.
    pub fn edge(&self, j: usize) -> (usize, usize) {
        self.edges[j]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Indices of edges leaving `node`, ascending.
    pub fn out_edges(&self, node: usize) -> &[usize] {
        &self.out_edges[node]
    }

    /// Indices of edges entering `node`, ascending.
    pub fn in_edges(&self, node: usize) -> &[usize] {
        &self.in_edges[node]
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    /// Whether the terminal is reachable from the source using only the
    /// `surviving` edges. One pass over the edges in topological order.
    pub fn connects(&self, surviving: EdgeSet) -> bool {
        let mut reached: u128 = 1 << self.compact_source;
        for &(j, tail, head) in &self.sweep {
            if surviving.contains(j) && reached >> tail & 1 == 1 {
                reached |= 1 << head;
            }
        }
        reached >> self.compact_terminal & 1 == 1
    }

    /// A copy of this network with one more edge appended (index `n`).
    pub fn with_edge(&self, tail: usize, head: usize) -> Result<Network> {
        let mut edges = self.edges.clone();
        edges.push((tail, head));
        Network::new(self.node_count, edges, self.source, self.terminal)
    }
}
