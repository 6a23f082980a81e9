//! Network outage probability.
//!
//! Three independent routes to the same quantity:
//!
//! * [`outage_by_paths`]: one minus the probability that some path survives,
//!   by inclusion-exclusion over the paths;
//! * [`outage_by_cuts`]: the probability that some minimal cut is fully in
//!   outage, by inclusion-exclusion over the minimal cuts;
//! * [`outage_by_reliability_sum`]: the sum over cut-sets of the disjoint
//!   events "exactly this set is in outage".
//!
//! Each is generic over [`Ring`], so the same code evaluates with `f64`,
//! exact rationals, or symbolically with [`Poly`].
//!
//! The inclusion-exclusion sums merge terms whose index unions coincide
//! before multiplying out probabilities. That collapses the `2^g` subsets
//! onto at most `2^n` distinct unions without changing the value.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::budget::Budget;
use crate::edgeset::EdgeSet;
use crate::enumerate::{CutFamily, PathSet};
use crate::error::{Error, Result};
use crate::link::LinkOutageVector;
use crate::poly::Poly;
use crate::ring::Ring;

/// Cut-set counts by size: `coeffs[i]` is `A_i`, the number of cut-sets
/// with `i` edges, for `i` in `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutEnumerator {
    coeffs: Vec<u64>,
}

impl CutEnumerator {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Number of edges `n`.
    pub fn edge_count(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Total number of cut-sets `k`.
    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// `A(x)` as a polynomial.
    pub fn to_poly(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .map(|&a| BigRational::from_integer(BigInt::from(a)))
                .collect(),
        )
    }
}

pub fn cut_enumerator(cuts: &CutFamily) -> CutEnumerator {
    let mut coeffs = vec![0u64; cuts.edge_count() + 1];
    for cut in cuts.all_cuts() {
        coeffs[cut.len()] += 1;
    }
    CutEnumerator { coeffs }
}

/// `O(p) = Σ A_i p^i (1-p)^(n-i)` for a common link outage probability.
pub fn outage_polynomial(cuts: &CutFamily) -> Poly {
    outage_polynomial_from_enumerator(&cut_enumerator(cuts))
}

pub fn outage_polynomial_from_enumerator(enumerator: &CutEnumerator) -> Poly {
    let n = enumerator.edge_count();
    enumerator
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .fold(Poly::zero(), |acc, (i, &a)| {
            acc + Poly::state_weight(i, n).scale(&BigRational::from_integer(a.into()))
        })
}

/// Signed inclusion-exclusion multiplicities keyed by index union:
/// `Σ_{S ≠ ∅} (-1)^{|S|+1} [∪S = u]` for every union `u`.
fn union_multiplicities(sets: &[EdgeSet]) -> BTreeMap<EdgeSet, i64> {
    let mut acc: BTreeMap<EdgeSet, i64> = BTreeMap::new();
    for &set in sets {
        let mut next = acc.clone();
        for (&union, &c) in &acc {
            *next.entry(union.union(set)).or_insert(0) -= c;
        }
        *next.entry(set).or_insert(0) += 1;
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    acc
}

fn product_over<T: Ring>(set: EdgeSet, factor: impl Fn(usize) -> T) -> T {
    set.iter().fold(T::one(), |acc, j| acc * factor(j))
}

fn check_len<T>(probs: &LinkOutageVector<T>, n: usize) -> Result<()> {
    if probs.len() == n {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            expected: n,
            actual: probs.len(),
        })
    }
}

/// `1 - Pr[some path survives]` with independent links.
pub fn outage_by_paths<T: Ring>(
    paths: &PathSet,
    probs: &LinkOutageVector<T>,
    budget: Budget,
) -> Result<T> {
    if !budget.allows_power_set(paths.len()) {
        return Err(Error::PathBudgetExceeded {
            paths: paths.len(),
            budget: budget.terms(),
        });
    }
    if let Some(max) = paths.paths().iter().map(|p| p.iter().max()).max().flatten() {
        if max >= probs.len() {
            return Err(Error::LengthMismatch {
                expected: max + 1,
                actual: probs.len(),
            });
        }
    }
    let survive = |j: usize| probs.get(j).complement();
    let union_prob = union_multiplicities(paths.paths())
        .into_iter()
        .fold(T::zero(), |acc, (union, c)| {
            acc + T::from_int(c) * product_over(union, survive)
        });
    Ok(T::one() - union_prob)
}

/// `Pr[some minimal cut is entirely in outage]` with independent links.
///
/// Every cut-set contains a minimal one, so the union over `L` equals the
/// union over all of `K`.
pub fn outage_by_cuts<T: Ring>(
    cuts: &CutFamily,
    probs: &LinkOutageVector<T>,
    budget: Budget,
) -> Result<T> {
    check_len(probs, cuts.edge_count())?;
    let minimal = cuts.minimal_cuts();
    if !budget.allows_power_set(minimal.len()) {
        return Err(Error::CutBudgetExceeded {
            cuts: minimal.len(),
            budget: budget.terms(),
        });
    }
    let fail = |j: usize| probs.get(j).clone();
    Ok(union_multiplicities(minimal)
        .into_iter()
        .fold(T::zero(), |acc, (union, c)| {
            acc + T::from_int(c) * product_over(union, fail)
        }))
}

/// `Σ_{C ∈ K} Π_{j ∈ C} p_j Π_{j ∉ C} (1 - p_j)`.
pub fn outage_by_reliability_sum<T: Ring>(
    cuts: &CutFamily,
    probs: &LinkOutageVector<T>,
) -> Result<T> {
    let n = cuts.edge_count();
    check_len(probs, n)?;
    Ok(cuts.all_cuts().iter().fold(T::zero(), |acc, &cut| {
        let down = product_over(cut, |j| probs.get(j).clone());
        let up = product_over(cut.complement(n), |j| probs.get(j).complement());
        acc + down * up
    }))
}

/// Closed-form bounds on `O(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutageBounds {
    /// `A(p) = Σ A_i p^i`.
    pub upper_a: Poly,
    /// `Σ_{C ∈ L} p^{|C|}`.
    pub upper_minimal: Poly,
    /// `A_m p^m (1-p)^(n-m)`.
    pub lower: Poly,
}

pub fn outage_bounds(enumerator: &CutEnumerator, minimal: &[EdgeSet]) -> OutageBounds {
    let n = enumerator.edge_count();
    let upper_a = enumerator.to_poly();
    let upper_minimal = minimal.iter().fold(Poly::zero(), |acc, cut| {
        acc + Poly::monomial(BigRational::from_int(1), cut.len())
    });
    let summary = asymptotic_summary(enumerator);
    let lower = Poly::state_weight(summary.diversity_order, n)
        .scale(&BigRational::from_integer(summary.coding_gain.into()));
    OutageBounds {
        upper_a,
        upper_minimal,
        lower,
    }
}

/// High-SNR behaviour `O(p) ~ α p^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AsymptoticSummary {
    pub diversity_order: usize,
    pub coding_gain: u64,
}

pub fn asymptotic_summary(enumerator: &CutEnumerator) -> AsymptoticSummary {
    let (diversity_order, &coding_gain) = enumerator
        .coeffs()
        .iter()
        .enumerate()
        .find(|(_, &a)| a > 0)
        .expect("the full edge set is always a cut-set");
    AsymptoticSummary {
        diversity_order,
        coding_gain,
    }
}
