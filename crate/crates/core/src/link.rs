//! Per-link outage probabilities.

use std::fmt::Display;

use crate::error::{Error, Result};
use crate::network::Network;
use crate::poly::Poly;
use crate::ring::Ring;

/// One outage probability per edge, `probs[j]` for edge `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkOutageVector<T = f64> {
    probs: Vec<T>,
}

impl<T: Ring + PartialOrd + Display> LinkOutageVector<T> {
    pub fn new(net: &Network, probs: Vec<T>) -> Result<Self> {
        if probs.len() != net.edge_count() {
            return Err(Error::LengthMismatch {
                expected: net.edge_count(),
                actual: probs.len(),
            });
        }
        for (index, p) in probs.iter().enumerate() {
            // NaN fails both comparisons.
            if !(*p >= T::zero() && *p <= T::one()) {
                return Err(Error::InvalidProbability {
                    index,
                    value: p.to_string(),
                });
            }
        }
        Ok(LinkOutageVector { probs })
    }

    pub fn uniform(net: &Network, p: T) -> Result<Self> {
        Self::new(net, vec![p; net.edge_count()])
    }
}

impl LinkOutageVector<f64> {
    /// Maps per-link mean SNRs through the Rayleigh outage formula.
    pub fn from_mean_snr(net: &Network, snr: &[f64]) -> Result<Self> {
        let probs = snr
            .iter()
            .map(|&g| rayleigh_outage_prob(g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(net, probs)
    }
}

impl LinkOutageVector<Poly> {
    /// Every link at the symbolic probability `p`. Evaluating an outage
    /// formula over this vector yields the outage polynomial itself.
    pub fn symbolic(net: &Network) -> Self {
        LinkOutageVector {
            probs: vec![Poly::p(); net.edge_count()],
        }
    }
}

impl<T> LinkOutageVector<T> {
    pub fn as_slice(&self) -> &[T] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn get(&self, j: usize) -> &T {
        &self.probs[j]
    }
}

/// Outage probability of a Rayleigh-faded link with mean SNR `mean_snr`
/// (linear scale, normalized to the outage threshold): `1 - exp(-1/γ)`.
pub fn rayleigh_outage_prob(mean_snr: f64) -> Result<f64> {
    if mean_snr.is_nan() || mean_snr <= 0.0 {
        return Err(Error::NonPositiveSnr(mean_snr));
    }
    Ok(-(-1.0 / mean_snr).exp_m1())
}
