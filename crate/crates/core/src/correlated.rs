//! Block-correlated link outages.
//!
//! The edge set is partitioned into blocks. Each block independently flips
//! a coin with bias `rho`: on heads all of its links share one outage draw,
//! on tails its links are drawn independently. Every draw has outage
//! probability `p`.

use crate::edgeset::EdgeSet;
use crate::enumerate::CutFamily;
use crate::error::{Error, Result};
use crate::poly::Poly2;
use crate::ring::Ring;

/// Disjoint nonempty blocks covering every edge exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationPartition {
    edge_count: usize,
    blocks: Vec<EdgeSet>,
}

impl CorrelationPartition {
    pub fn new(edge_count: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut covered = EdgeSet::EMPTY;
        let mut sets = Vec::with_capacity(blocks.len());
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::PartitionMismatch(format!("block {b} is empty")));
            }
            let mut set = EdgeSet::EMPTY;
            for &j in block {
                if j >= edge_count {
                    return Err(Error::PartitionMismatch(format!(
                        "block {b} names edge {j} but the network has {edge_count} edges"
                    )));
                }
                if set.contains(j) || covered.contains(j) {
                    return Err(Error::PartitionMismatch(format!("edge {j} appears twice")));
                }
                set.insert(j);
            }
            covered = covered.union(set);
            sets.push(set);
        }
        let missing = EdgeSet::full(edge_count).difference(covered);
        if let Some(j) = missing.iter().next() {
            return Err(Error::PartitionMismatch(format!("edge {j} is in no block")));
        }
        Ok(CorrelationPartition {
            edge_count,
            blocks: sets,
        })
    }

    /// Every edge in its own block; equivalent to independent links.
    pub fn singletons(edge_count: usize) -> Self {
        CorrelationPartition {
            edge_count,
            blocks: (0..edge_count).map(EdgeSet::singleton).collect(),
        }
    }

    pub fn blocks(&self) -> &[EdgeSet] {
        &self.blocks
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Probability that exactly the edges of `outage` are down.
    pub fn state_probability<T: Ring>(&self, outage: EdgeSet, p: &T, rho: &T) -> T {
        self.blocks.iter().fold(T::one(), |acc, &block| {
            let y = block.intersection(outage).len();
            acc * block_weight(block.len(), y, p, rho)
        })
    }
}

/// Probability that a particular `outages`-subset of a block of `size`
/// links is down while the rest of the block is up.
pub fn block_outage_weight<T: Ring>(size: usize, outages: usize, p: &T, rho: &T) -> Result<T> {
    if outages > size {
        return Err(Error::InvalidCount { size, outages });
    }
    Ok(block_weight(size, outages, p, rho))
}

fn block_weight<T: Ring>(size: usize, outages: usize, p: &T, rho: &T) -> T {
    if size == 0 {
        return T::one();
    }
    let independent = rho.complement();
    if outages == 0 {
        rho.clone() * p.complement() + independent * p.complement().pow(size)
    } else if outages == size {
        rho.clone() * p.clone() + independent * p.pow(size)
    } else {
        independent * p.pow(outages) * p.complement().pow(size - outages)
    }
}

fn check_partition(cuts: &CutFamily, partition: &CorrelationPartition) -> Result<()> {
    if cuts.edge_count() == partition.edge_count() {
        Ok(())
    } else {
        Err(Error::PartitionMismatch(format!(
            "partition covers {} edges but the network has {}",
            partition.edge_count(),
            cuts.edge_count()
        )))
    }
}

/// `Σ_{C ∈ K} Π_i p_o(|B_i|, |C ∩ B_i|)`.
pub fn correlated_outage<T: Ring>(
    cuts: &CutFamily,
    partition: &CorrelationPartition,
    p: &T,
    rho: &T,
) -> Result<T> {
    check_partition(cuts, partition)?;
    Ok(cuts.all_cuts().iter().fold(T::zero(), |acc, &cut| {
        acc + partition.state_probability(cut, p, rho)
    }))
}

/// The correlated outage probability as an exact polynomial in `p` and `rho`.
pub fn correlated_outage_poly(cuts: &CutFamily, partition: &CorrelationPartition) -> Result<Poly2> {
    correlated_outage(cuts, partition, &Poly2::p(), &Poly2::rho())
}
