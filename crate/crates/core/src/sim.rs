//! Monte Carlo residual-graph simulator.
//!
//! Each trial draws a link-state pattern, removes the links in outage and
//! records the unit-capacity max-flow of what survives. Capacity zero is a
//! network outage.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`) seeded with
//! `seed_from_u64(seed)`. Trials are split into `shards` contiguous groups;
//! shard `k` uses stream `k` of that generator, so a report depends only on
//! `(seed, trials, shards, model)`. Within a trial, draws are consumed in
//! edge order for independent links, and block by block for the correlated
//! model: one `rho` coin, then either one shared outage draw or one draw per
//! member edge in ascending index order. A Bernoulli(`q`) draw is
//! `u < q` with `u` uniform on `[0, 1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::correlated::CorrelationPartition;
use crate::edgeset::EdgeSet;
use crate::enumerate::min_cut_size;
use crate::error::{Error, Result};
use crate::flow::UnitFlow;
use crate::link::rayleigh_outage_prob;
use crate::network::Network;

#[derive(Debug, Clone, PartialEq)]
pub enum LinkModel {
    /// Every link independently in outage with the same probability.
    Uniform(f64),
    /// Independent links with per-link outage probabilities.
    Heterogeneous(Vec<f64>),
    /// Independent Rayleigh links given by per-link mean SNR.
    MeanSnr(Vec<f64>),
    /// Block-correlated links with a common outage probability.
    Correlated {
        p: f64,
        rho: f64,
        partition: CorrelationPartition,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    pub model: LinkModel,
    pub shards: usize,
}

impl SimConfig {
    pub fn new(model: LinkModel, trials: u64, seed: u64) -> Self {
        SimConfig {
            trials,
            seed,
            model,
            shards: 1,
        }
    }

    pub fn with_shards(mut self, shards: usize) -> Self {
        self.shards = shards;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub outage_estimate: f64,
    pub outage_stderr: f64,
    /// Trial counts for capacity `0..=m`.
    pub capacity_histogram: Vec<u64>,
    pub ergodic_estimate: f64,
    pub ergodic_stderr: f64,
    pub trials: u64,
    pub seed: u64,
    pub shards: usize,
}

impl SimReport {
    pub const CSV_HEADER: &'static str =
        "trials,seed,shards,outage_estimate,outage_stderr,ergodic_estimate,ergodic_stderr,capacity_histogram";

    /// One CSV row matching [`Self::CSV_HEADER`]; the histogram is a
    /// `;`-separated list.
    pub fn to_csv_row(&self) -> String {
        let hist: Vec<String> = self.capacity_histogram.iter().map(u64::to_string).collect();
        format!(
            "{},{},{},{:e},{:e},{:e},{:e},{}",
            self.trials,
            self.seed,
            self.shards,
            self.outage_estimate,
            self.outage_stderr,
            self.ergodic_estimate,
            self.ergodic_stderr,
            hist.join(";")
        )
    }
}

/// Standardized distance of an estimate from a reference value. A zero
/// standard error gives 0 on exact agreement and infinity otherwise.
pub fn z_score(estimate: f64, stderr: f64, exact: f64) -> f64 {
    let diff = estimate - exact;
    if stderr > 0.0 {
        diff / stderr
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY.copysign(diff)
    }
}

enum Sampler {
    Independent(Vec<f64>),
    Correlated {
        p: f64,
        rho: f64,
        blocks: Vec<EdgeSet>,
    },
}

impl Sampler {
    fn from_model(net: &Network, model: &LinkModel) -> Result<Self> {
        let n = net.edge_count();
        let check_prob = |what: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(v)
            } else {
                Err(Error::InvalidConfig(format!("{what} {v} outside [0, 1]")))
            }
        };
        let check_len = |len: usize| {
            if len == n {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!(
                    "expected {n} per-link values, got {len}"
                )))
            }
        };
        Ok(match model {
            LinkModel::Uniform(p) => Sampler::Independent(vec![check_prob("p", *p)?; n]),
            LinkModel::Heterogeneous(probs) => {
                check_len(probs.len())?;
                let probs = probs
                    .iter()
                    .map(|&p| check_prob("link probability", p))
                    .collect::<Result<_>>()?;
                Sampler::Independent(probs)
            }
            LinkModel::MeanSnr(snr) => {
                check_len(snr.len())?;
                let probs = snr
                    .iter()
                    .map(|&g| rayleigh_outage_prob(g).map_err(|e| Error::InvalidConfig(e.to_string())))
                    .collect::<Result<_>>()?;
                Sampler::Independent(probs)
            }
            LinkModel::Correlated { p, rho, partition } => {
                if partition.edge_count() != n {
                    return Err(Error::InvalidConfig(format!(
                        "partition covers {} edges, network has {n}",
                        partition.edge_count()
                    )));
                }
                Sampler::Correlated {
                    p: check_prob("p", *p)?,
                    rho: check_prob("rho", *rho)?,
                    blocks: partition.blocks().to_vec(),
                }
            }
        })
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> EdgeSet {
        let mut outage = EdgeSet::EMPTY;
        match self {
            Sampler::Independent(probs) => {
                for (j, &p) in probs.iter().enumerate() {
                    if rng.random::<f64>() < p {
                        outage.insert(j);
                    }
                }
            }
            Sampler::Correlated { p, rho, blocks } => {
                for &block in blocks {
                    if rng.random::<f64>() < *rho {
                        if rng.random::<f64>() < *p {
                            outage = outage.union(block);
                        }
                    } else {
                        for j in block {
                            if rng.random::<f64>() < *p {
                                outage.insert(j);
                            }
                        }
                    }
                }
            }
        }
        outage
    }
}

struct Tally {
    histogram: Vec<u64>,
    sum: u64,
    sum_sq: u64,
}

fn run_shard(net: &Network, sampler: &Sampler, seed: u64, shard: usize, trials: u64, levels: usize) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard as u64);
    let mut flow = UnitFlow::new(net);
    let full = net.all_edges();
    let mut tally = Tally {
        histogram: vec![0; levels],
        sum: 0,
        sum_sq: 0,
    };
    for _ in 0..trials {
        let outage = sampler.draw(&mut rng);
        let c = flow.max_flow(full.difference(outage)) as u64;
        tally.histogram[c as usize] += 1;
        tally.sum += c;
        tally.sum_sq += c * c;
    }
    tally
}

pub fn simulate(net: &Network, cfg: &SimConfig) -> Result<SimReport> {
    if cfg.trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    if cfg.shards == 0 {
        return Err(Error::InvalidConfig("shards must be at least 1".into()));
    }
    let sampler = Sampler::from_model(net, &cfg.model)?;
    let levels = min_cut_size(net) + 1;
    let shards = cfg.shards as u64;
    let tallies: Vec<Tally> = (0..cfg.shards)
        .into_par_iter()
        .map(|k| {
            let k64 = k as u64;
            let trials = cfg.trials / shards + u64::from(k64 < cfg.trials % shards);
            run_shard(net, &sampler, cfg.seed, k, trials, levels)
        })
        .collect();

    let mut histogram = vec![0u64; levels];
    let (mut sum, mut sum_sq) = (0u64, 0u64);
    for t in &tallies {
        for (h, c) in histogram.iter_mut().zip(&t.histogram) {
            *h += c;
        }
        sum += t.sum;
        sum_sq += t.sum_sq;
    }

    let n = cfg.trials as f64;
    let outage = histogram[0] as f64 / n;
    let mean = sum as f64 / n;
    let variance = if cfg.trials > 1 {
        ((sum_sq as f64 - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(SimReport {
        outage_estimate: outage,
        outage_stderr: (outage * (1.0 - outage) / n).sqrt(),
        capacity_histogram: histogram,
        ergodic_estimate: mean,
        ergodic_stderr: (variance / n).sqrt(),
        trials: cfg.trials,
        seed: cfg.seed,
        shards: cfg.shards,
    })
}
