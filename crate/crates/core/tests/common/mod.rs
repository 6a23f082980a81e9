//! Fixture loading and brute-force oracles shared by the integration tests.
//!
//! The oracles work straight from the edge list and deliberately share no
//! code with the library's sweep, flow or enumeration routines.

#![allow(dead_code)]

use std::path::PathBuf;

use netoutage::io::parse_network_json;
use netoutage::Network;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

pub const FIXTURES: [&str; 6] = ["n1", "n2", "n3", "n4", "n5", "n6"];

pub fn fixture_path(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(file)
}

pub fn fixture(name: &str) -> Network {
    let text = std::fs::read_to_string(fixture_path(&format!("{name}.json"))).expect("fixture exists");
    parse_network_json(&text).expect("fixture is valid")
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Whether `t` is reachable from `s` using only edges whose bit is set in `up`.
pub fn reaches(net: &Network, up: u64) -> bool {
    let mut seen = vec![false; net.node_count()];
    let mut stack = vec![net.source()];
    seen[net.source()] = true;
    while let Some(v) = stack.pop() {
        if v == net.terminal() {
            return true;
        }
        for (j, &(a, b)) in net.edges().iter().enumerate() {
            if a == v && up >> j & 1 == 1 && !seen[b] {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    false
}

pub fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Masks of every cut-set, found by testing all `2^n` subsets, in
/// ascending mask order.
pub fn brute_cuts(net: &Network) -> Vec<u64> {
    let full = full_mask(net.edge_count());
    (0..=full).filter(|&c| !reaches(net, full & !c)).collect()
}

/// Sorts masks shortlex: fewer members first, then by the ascending
/// member lists compared lexicographically.
pub fn shortlex(mut masks: Vec<u64>) -> Vec<u64> {
    let members = |m: u64| -> Vec<u32> { (0..64).filter(|j| m >> j & 1 == 1).collect() };
    masks.sort_by_key(|&m| (m.count_ones(), members(m)));
    masks
}

/// `Σ_states Pr[state] · 1{disconnected}` over all `2^n` link states.
pub fn brute_outage_f64(net: &Network, probs: &[f64]) -> f64 {
    let full = full_mask(net.edge_count());
    let mut total = 0.0;
    for down in 0..=full {
        if !reaches(net, full & !down) {
            total += state_weight_f64(probs, down);
        }
    }
    total
}

pub fn state_weight_f64(probs: &[f64], down: u64) -> f64 {
    probs
        .iter()
        .enumerate()
        .map(|(j, &p)| if down >> j & 1 == 1 { p } else { 1.0 - p })
        .product()
}

pub fn brute_outage_exact(net: &Network, probs: &[BigRational]) -> BigRational {
    let full = full_mask(net.edge_count());
    let mut total = BigRational::zero();
    for down in 0..=full {
        if !reaches(net, full & !down) {
            let mut w = BigRational::one();
            for (j, p) in probs.iter().enumerate() {
                w *= if down >> j & 1 == 1 { p.clone() } else { BigRational::one() - p };
            }
            total += w;
        }
    }
    total
}

/// Every simple s-t path as an edge mask, by plain DFS over the edge list.
pub fn brute_paths(net: &Network) -> Vec<u64> {
    fn go(net: &Network, v: usize, used: u64, visited: &mut Vec<bool>, out: &mut Vec<u64>) {
        if v == net.terminal() {
            out.push(used);
            return;
        }
        for (j, &(a, b)) in net.edges().iter().enumerate() {
            if a == v && !visited[b] {
                visited[b] = true;
                go(net, b, used | 1 << j, visited, out);
                visited[b] = false;
            }
        }
    }
    let mut visited = vec![false; net.node_count()];
    visited[net.source()] = true;
    let mut out = Vec::new();
    go(net, net.source(), 0, &mut visited, &mut out);
    out
}

/// Largest number of pairwise edge-disjoint paths among `paths` that lie
/// inside `up`, by exhaustive search.
pub fn max_disjoint_paths(paths: &[u64], up: u64) -> usize {
    fn go(paths: &[u64], used: u64) -> usize {
        match paths.split_first() {
            None => 0,
            Some((&first, rest)) => {
                let skip = go(rest, used);
                if first & used == 0 {
                    skip.max(1 + go(rest, used | first))
                } else {
                    skip
                }
            }
        }
    }
    let inside: Vec<u64> = paths.iter().copied().filter(|&p| p & !up == 0).collect();
    go(&inside, 0)
}

/// Random DAG with source 0 and terminal `nodes - 1`. Edges always point
/// from a lower to a higher node index; parallel edges are allowed. If the
/// drawn edges leave the terminal unreachable, a direct source-terminal
/// edge is appended.
pub fn arb_dag(max_nodes: usize, max_edges: usize) -> impl Strategy<Value = Network> {
    (2..=max_nodes)
        .prop_flat_map(move |k| {
            let edge = (0..k, 0..k).prop_filter_map("self loop", |(a, b)| {
                (a != b).then(|| (a.min(b), a.max(b)))
            });
            (Just(k), prop::collection::vec(edge, 1..max_edges))
        })
        .prop_map(|(k, mut edges)| {
            let s = 0;
            let t = k - 1;
            match Network::new(k, edges.clone(), s, t) {
                Ok(net) => net,
                Err(_) => {
                    edges.push((s, t));
                    Network::new(k, edges, s, t).expect("direct edge connects")
                }
            }
        })
}
