//! Capacity polynomials and ergodic network capacity.
//!
//! Every surviving link carries one unit, so the instantaneous capacity is
//! the unit-capacity max-flow of the residual network and takes values in
//! `0..=m`. `C_i(p)` is the probability that it equals `i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::budget::Budget;
use crate::edgeset::EdgeSet;
use crate::enumerate::min_cut_size;
use crate::error::{Error, Result};
use crate::flow::{max_flow, UnitFlow};
use crate::network::Network;
use crate::poly::{binomial, Poly};
use crate::ring::Ring;

/// Max-flow through the `surviving` edges.
pub fn instantaneous_capacity(net: &Network, surviving: EdgeSet) -> u32 {
    max_flow(net, surviving)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacitySpectrum {
    min_cut: usize,
    c_polys: Vec<Poly>,
    ergodic: Poly,
}

#[derive(Serialize)]
struct SpectrumJson {
    m: usize,
    #[serde(rename = "C")]
    c: Vec<Vec<String>>,
    ergodic: Vec<String>,
}

impl CapacitySpectrum {
    fn from_polys(c_polys: Vec<Poly>) -> Self {
        let ergodic = ergodic_capacity(&c_polys);
        CapacitySpectrum {
            min_cut: c_polys.len() - 1,
            c_polys,
            ergodic,
        }
    }

    pub fn min_cut(&self) -> usize {
        self.min_cut
    }

    /// `C_0(p), ..., C_m(p)`.
    pub fn c_polys(&self) -> &[Poly] {
        &self.c_polys
    }

    /// `E[C](p) = Σ i C_i(p)`.
    pub fn ergodic(&self) -> &Poly {
        &self.ergodic
    }

    /// `{"m": .., "C": [[coeff strings], ..], "ergodic": [coeff strings]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SpectrumJson {
            m: self.min_cut,
            c: self.c_polys.iter().map(Poly::to_coeff_strings).collect(),
            ergodic: self.ergodic.to_coeff_strings(),
        })
        .expect("spectrum serializes")
    }
}

/// `Σ i C_i` over any ring.
pub fn ergodic_capacity<T: Ring>(distribution: &[T]) -> T {
    distribution
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (i, c)| acc + T::from_int(i as i64) * c.clone())
}

/// Distribution of the instantaneous capacity under an arbitrary link-state
/// law: `weight(outage)` is the probability that exactly `outage` is down.
/// Entry `i` of the result is `Pr[C = i]`, for `i` in `0..=m`.
pub fn capacity_distribution<T: Ring>(
    net: &Network,
    budget: Budget,
    weight: impl Fn(EdgeSet) -> T,
) -> Result<Vec<T>> {
    let n = net.edge_count();
    budget.check_states(n)?;
    let full = net.all_edges();
    let mut flow = UnitFlow::new(net);
    let mut dist = vec![T::zero(); min_cut_size(net) + 1];
    for outage in EdgeSet::all_subsets(n) {
        let c = flow.max_flow(full.difference(outage)) as usize;
        dist[c] = dist[c].clone() + weight(outage);
    }
    Ok(dist)
}

/// Exact `C_i(p)` for a common link outage probability, by visiting every
/// link state.
pub fn capacity_spectrum(net: &Network, budget: Budget) -> Result<CapacitySpectrum> {
    let n = net.edge_count();
    budget.check_states(n)?;
    let full = net.all_edges();
    let mut flow = UnitFlow::new(net);
    let m = min_cut_size(net);
    // tally[i][k]: states with capacity i and k links down
    let mut tally = vec![vec![0u64; n + 1]; m + 1];
    for outage in EdgeSet::all_subsets(n) {
        let c = flow.max_flow(full.difference(outage)) as usize;
        tally[c][outage.len()] += 1;
    }
    let weights: Vec<Poly> = (0..=n).map(|k| Poly::state_weight(k, n)).collect();
    let c_polys = tally
        .iter()
        .map(|row| {
            row.iter()
                .zip(&weights)
                .filter(|(&count, _)| count > 0)
                .fold(Poly::zero(), |acc, (&count, w)| {
                    acc + w.scale(&BigRational::from_integer(BigInt::from(count)))
                })
        })
        .collect();
    Ok(CapacitySpectrum::from_polys(c_polys))
}

/// `q(i, c, p)`: probability that at least `i` of `c` links are up.
pub fn at_least_up(i: usize, c: usize) -> Poly {
    (i..=c).fold(Poly::zero(), |acc, j| {
        acc + Poly::state_weight(c - j, c).scale(&BigRational::from_integer(binomial(c, j)))
    })
}

/// `C_i(p) = Π_{C ∈ L} q(i, |C|, p) - Π_{C ∈ L} q(i+1, |C|, p)`, valid when
/// the minimal cut-sets are pairwise disjoint.
pub fn capacity_spectrum_disjoint(minimal: &[EdgeSet]) -> Result<CapacitySpectrum> {
    let mut seen = EdgeSet::EMPTY;
    for cut in minimal {
        if !seen.is_disjoint(*cut) {
            return Err(Error::CutsNotDisjoint);
        }
        seen = seen.union(*cut);
    }
    let m = minimal
        .iter()
        .map(|c| c.len())
        .min()
        .ok_or_else(|| Error::InvalidConfig("no minimal cut-sets".into()))?;
    let every_cut_has = |i: usize| {
        minimal
            .iter()
            .fold(Poly::one(), |acc, cut| acc * at_least_up(i, cut.len()))
    };
    let levels: Vec<Poly> = (0..=m + 1).map(every_cut_has).collect();
    let c_polys = levels.windows(2).map(|w| &w[0] - &w[1]).collect();
    Ok(CapacitySpectrum::from_polys(c_polys))
}
