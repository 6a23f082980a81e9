mod common;

use std::collections::BTreeMap;

use common::*;
use netoutage::capacity::{capacity_spectrum, ergodic_capacity};
use netoutage::correlated::{correlated_outage, correlated_outage_poly, CorrelationPartition};
use netoutage::enumerate::{enumerate_cutsets, enumerate_paths, min_cut_size};
use netoutage::io::{network_to_json, parse_network_dot, parse_network_json};
use netoutage::link::rayleigh_outage_prob;
use netoutage::outage::{
    asymptotic_summary, cut_enumerator, outage_bounds, outage_by_cuts, outage_by_paths,
    outage_by_reliability_sum, outage_polynomial,
};
use netoutage::ring::Ring;
use netoutage::{Budget, EdgeSet, LinkOutageVector, Network, Poly, Poly2};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn masks(sets: &[EdgeSet]) -> Vec<u64> {
    sets.iter().map(|s| s.mask()).collect()
}

fn cuts_of(net: &Network) -> netoutage::enumerate::CutFamily {
    enumerate_cutsets(net, Budget::default()).unwrap()
}

/// Random partition of `0..n`: each edge picks a block label.
fn arb_dag_with_partition() -> impl Strategy<Value = (Network, CorrelationPartition)> {
    arb_dag(6, 10).prop_flat_map(|net| {
        let n = net.edge_count();
        (Just(net), prop::collection::vec(0..n, n))
    })
    .prop_map(|(net, labels)| {
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (j, label) in labels.into_iter().enumerate() {
            blocks.entry(label).or_default().push(j);
        }
        let blocks: Vec<Vec<usize>> = blocks.into_values().collect();
        let partition = CorrelationPartition::new(net.edge_count(), &blocks).unwrap();
        (net, partition)
    })
}

/// Independent cycle check: depth-first search with three colours.
fn has_cycle(nodes: usize, edges: &[(usize, usize)]) -> bool {
    fn visit(v: usize, edges: &[(usize, usize)], colour: &mut [u8]) -> bool {
        colour[v] = 1;
        for &(a, b) in edges {
            if a == v && (colour[b] == 1 || (colour[b] == 0 && visit(b, edges, colour))) {
                return true;
            }
        }
        colour[v] = 2;
        false
    }
    let mut colour = vec![0u8; nodes];
    (0..nodes).any(|v| colour[v] == 0 && visit(v, edges, &mut colour))
}

fn to_dot(net: &Network) -> String {
    let mut s = format!(
        "digraph g {{\n  graph [source={}, terminal={}, nodes={}];\n",
        net.source(),
        net.terminal(),
        net.node_count()
    );
    for &(a, b) in net.edges() {
        s.push_str(&format!("  {a} -> {b};\n"));
    }
    s.push_str("}\n");
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn edge_index_round_trip(net in arb_dag(7, 12)) {
        let rebuilt = Network::new(net.node_count(), net.edges().to_vec(), net.source(), net.terminal()).unwrap();
        for j in 0..net.edge_count() {
            prop_assert_eq!(rebuilt.edge(j), net.edges()[j]);
        }
    }

    #[test]
    fn accepts_exactly_the_acyclic_graphs(
        k in 2usize..7,
        raw in prop::collection::vec((0usize..7, 0usize..7), 0..10),
    ) {
        let mut edges: Vec<(usize, usize)> = raw.into_iter().map(|(a, b)| (a % k, b % k)).collect();
        edges.push((0, k - 1));
        let result = Network::new(k, edges.clone(), 0, k - 1);
        if has_cycle(k, &edges) {
            prop_assert_eq!(result, Err(netoutage::Error::CyclicGraph));
        } else {
            prop_assert!(result.is_ok());
        }
    }

    #[test]
    fn json_and_dot_agree(net in arb_dag(7, 12)) {
        prop_assert_eq!(&parse_network_json(&network_to_json(&net)).unwrap(), &net);
        prop_assert_eq!(&parse_network_dot(&to_dot(&net)).unwrap(), &net);
    }

    #[test]
    fn rayleigh_strictly_decreasing(g in 0.05f64..1e5, step in 1e-6f64..10.0) {
        let h = g * (1.0 + step);
        prop_assert!(rayleigh_outage_prob(g).unwrap() > rayleigh_outage_prob(h).unwrap());
    }

    #[test]
    fn cut_duality(net in arb_dag(6, 12)) {
        let cuts = cuts_of(&net);
        prop_assert_eq!(masks(cuts.all_cuts()), shortlex(brute_cuts(&net)));
        for c in 0..=full_mask(net.edge_count()) {
            prop_assert_eq!(cuts.is_cut(EdgeSet::from_mask(c)), !reaches(&net, full_mask(net.edge_count()) & !c));
        }
    }

    #[test]
    fn minimal_and_minimum_families(net in arb_dag(6, 12)) {
        let cuts = cuts_of(&net);
        let all = brute_cuts(&net);
        let minimal: Vec<u64> = all
            .iter()
            .copied()
            .filter(|&c| !all.iter().any(|&d| d != c && d & !c == 0))
            .collect();
        prop_assert_eq!(masks(cuts.minimal_cuts()), shortlex(minimal.clone()));
        let m = minimal.iter().map(|c| c.count_ones()).min().unwrap();
        let minimum: Vec<u64> = minimal.into_iter().filter(|c| c.count_ones() == m).collect();
        prop_assert_eq!(masks(cuts.minimum_cuts()), shortlex(minimum.clone()));
        prop_assert_eq!(cuts.min_cut(), m as usize);
        let a = cut_enumerator(&cuts);
        prop_assert_eq!(a.coeff(m as usize), minimum.len() as u64);
        prop_assert_eq!(a.total(), all.len() as u64);
    }

    #[test]
    fn menger(net in arb_dag(6, 12)) {
        let paths = brute_paths(&net);
        prop_assert_eq!(masks(enumerate_paths(&net).paths()), shortlex(paths.clone()));
        prop_assert_eq!(min_cut_size(&net), max_disjoint_paths(&paths, full_mask(net.edge_count())));
    }

    #[test]
    fn diversity_is_min_cut(net in arb_dag(6, 12)) {
        let cuts = cuts_of(&net);
        let s = asymptotic_summary(&cut_enumerator(&cuts));
        prop_assert_eq!(s.diversity_order, min_cut_size(&net));
        prop_assert_eq!(s.coding_gain, cuts.minimum_cuts().len() as u64);
        let o = outage_polynomial(&cuts);
        let (d, alpha) = o.lowest_term().unwrap();
        prop_assert_eq!(d, s.diversity_order);
        prop_assert_eq!(alpha.clone(), BigRational::from_int(s.coding_gain as i64));
    }

    #[test]
    fn augmenting_with_direct_edge_adds_one(net in arb_dag(6, 10)) {
        let m = min_cut_size(&net);
        let more = net.with_edge(net.source(), net.terminal()).unwrap();
        prop_assert_eq!(min_cut_size(&more), m + 1);
        let d = asymptotic_summary(&cut_enumerator(&cuts_of(&more))).diversity_order;
        prop_assert_eq!(d, m + 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_methods_agree_with_brute_force(
        net in arb_dag(6, 11),
        raw in prop::collection::vec(prop::collection::vec(0u32..=1000, 11), 20),
    ) {
        let n = net.edge_count();
        let paths = enumerate_paths(&net);
        let cuts = cuts_of(&net);
        // Parallel edges can multiply paths past the default 2^20 guard; the
        // union-merged sum stays cheap, so lift the guard here.
        let budget = Budget::new(u64::MAX);
        for draw in &raw {
            let f: Vec<f64> = draw[..n].iter().map(|&k| k as f64 / 1000.0).collect();
            let exact: Vec<BigRational> = draw[..n].iter().map(|&k| rat(k as i64, 1000)).collect();

            let oracle = brute_outage_f64(&net, &f);
            let lf = LinkOutageVector::new(&net, f.clone()).unwrap();
            for v in [
                outage_by_paths(&paths, &lf, budget).unwrap(),
                outage_by_cuts(&cuts, &lf, budget).unwrap(),
                outage_by_reliability_sum(&cuts, &lf).unwrap(),
            ] {
                prop_assert!((v - oracle).abs() <= 1e-12, "{} vs {}", v, oracle);
            }

            let oracle = brute_outage_exact(&net, &exact);
            let lq = LinkOutageVector::new(&net, exact).unwrap();
            prop_assert_eq!(outage_by_paths(&paths, &lq, budget).unwrap(), oracle.clone());
            prop_assert_eq!(outage_by_cuts(&cuts, &lq, budget).unwrap(), oracle.clone());
            prop_assert_eq!(outage_by_reliability_sum(&cuts, &lq).unwrap(), oracle);
        }
    }

    #[test]
    fn symbolic_methods_give_the_polynomial(net in arb_dag(6, 10)) {
        let cuts = cuts_of(&net);
        let o = outage_polynomial(&cuts);
        let sym = LinkOutageVector::<Poly>::symbolic(&net);
        let budget = Budget::new(u64::MAX);
        prop_assert_eq!(&outage_by_paths(&enumerate_paths(&net), &sym, budget).unwrap(), &o);
        prop_assert_eq!(&outage_by_cuts(&cuts, &sym, budget).unwrap(), &o);
        prop_assert_eq!(&outage_by_reliability_sum(&cuts, &sym).unwrap(), &o);
    }

    #[test]
    fn uniform_polynomial_matches_brute_force(net in arb_dag(6, 10), k in 0i64..=100) {
        let p = rat(k, 100);
        let o = outage_polynomial(&cuts_of(&net));
        prop_assert_eq!(o.eval_exact(&p), brute_outage_exact(&net, &vec![p.clone(); net.edge_count()]));
    }

    #[test]
    fn enumerator_substitution_identity(net in arb_dag(6, 11)) {
        // Σ A_i p^i (1-p)^(n-i) = (1-p)^n A(p/(1-p)); both sides have degree
        // at most n, so agreement at n+1 distinct points is formal identity.
        let n = net.edge_count();
        let cuts = cuts_of(&net);
        let a = cut_enumerator(&cuts).to_poly();
        let o = outage_polynomial(&cuts);
        prop_assert!(o.degree().unwrap() <= n);
        for k in 0..=n as i64 {
            let p = rat(k, n as i64 + 2);
            let q = BigRational::one() - &p;
            let rhs = Ring::pow(&q, n) * a.eval_exact(&(&p / &q));
            prop_assert_eq!(o.eval_exact(&p), rhs);
        }
    }

    #[test]
    fn boundary_monotonicity_and_limit(net in arb_dag(6, 10)) {
        let cuts = cuts_of(&net);
        let o = outage_polynomial(&cuts);
        prop_assert!(o.eval_exact(&BigRational::zero()).is_zero());
        prop_assert!(o.eval_exact(&BigRational::one()).is_one());
        let mut prev = BigRational::zero();
        for k in 0..=1000 {
            let v = o.eval_exact(&rat(k, 1000));
            prop_assert!(v >= prev);
            prev = v;
        }
        // O(p)/(A_m p^m) = 1 + O(p) with a constant below 2^n, so at
        // p = 1e-7 the ratio is within 1e-3 of 1 for n <= 10.
        let a = cut_enumerator(&cuts);
        let m = min_cut_size(&net);
        let p = rat(1, 10_000_000);
        let ratio = o.eval_exact(&p) / (BigRational::from_int(a.coeff(m) as i64) * Ring::pow(&p, m));
        prop_assert!((ratio - BigRational::one()).abs() <= rat(1, 1000));
    }

    #[test]
    fn bounds_bracket_outage(net in arb_dag(6, 10)) {
        let cuts = cuts_of(&net);
        let o = outage_polynomial(&cuts);
        let b = outage_bounds(&cut_enumerator(&cuts), cuts.minimal_cuts());
        let one = BigRational::one();
        for k in 0..=200 {
            let p = rat(k, 200);
            let v = o.eval_exact(&p);
            prop_assert!(b.lower.eval_exact(&p) <= v);
            prop_assert!(v <= b.upper_a.eval_exact(&p).min(one.clone()));
            prop_assert!(v <= b.upper_minimal.eval_exact(&p).min(one.clone()));
        }
    }

    #[test]
    fn spectrum_properties(net in arb_dag(6, 9)) {
        let n = net.edge_count();
        let spectrum = capacity_spectrum(&net, Budget::default()).unwrap();
        let m = min_cut_size(&net);
        prop_assert_eq!(spectrum.min_cut(), m);
        let total = spectrum.c_polys().iter().fold(Poly::zero(), |acc, c| acc + c.clone());
        prop_assert_eq!(total, Poly::one());
        prop_assert_eq!(&spectrum.c_polys()[0], &outage_polynomial(&cuts_of(&net)));
        prop_assert_eq!(&ergodic_capacity(spectrum.c_polys()), spectrum.ergodic());

        // Second accumulation: capacity per state from disjoint-path search.
        let paths = brute_paths(&net);
        let full = full_mask(n);
        let mut tally = vec![vec![0i64; n + 1]; m + 1];
        for down in 0..=full {
            tally[max_disjoint_paths(&paths, full & !down)][down.count_ones() as usize] += 1;
        }
        for (i, row) in tally.iter().enumerate() {
            let expected = row.iter().enumerate().fold(Poly::zero(), |acc, (k, &count)| {
                acc + Poly::state_weight(k, n).scale(&BigRational::from_int(count))
            });
            prop_assert_eq!(&spectrum.c_polys()[i], &expected);
        }

        let e = spectrum.ergodic();
        let cap = BigRational::from_int(m as i64);
        let mut prev = e.eval_exact(&BigRational::zero());
        prop_assert_eq!(prev.clone(), cap.clone());
        for k in 1..=1000 {
            let v = e.eval_exact(&rat(k, 1000));
            prop_assert!(v <= prev);
            prop_assert!(v <= cap);
            prev = v;
        }
    }

    #[test]
    fn correlated_weights_normalize((net, partition) in arb_dag_with_partition()) {
        let n = net.edge_count();
        let grid = [rat(0, 1), rat(1, 3), rat(1, 2), rat(9, 10), rat(1, 1)];
        for p in &grid {
            for rho in &grid {
                let total = EdgeSet::all_subsets(n)
                    .fold(BigRational::zero(), |acc, s| acc + partition.state_probability(s, p, rho));
                prop_assert!(total.is_one());
            }
        }
    }

    #[test]
    fn correlated_limits_and_agreement((net, partition) in arb_dag_with_partition(), pk in 0i64..=20, rk in 0i64..=20) {
        let cuts = cuts_of(&net);
        let o = outage_polynomial(&cuts);
        let sym = correlated_outage_poly(&cuts, &partition).unwrap();
        prop_assert_eq!(&sym.at_rho(&BigRational::zero()), &o);
        let singles = correlated_outage_poly(&cuts, &CorrelationPartition::singletons(net.edge_count())).unwrap();
        prop_assert_eq!(singles, Poly2::from(o));

        let (p, rho) = (rat(pk, 20), rat(rk, 20));
        let numeric = correlated_outage(&cuts, &partition, &p, &rho).unwrap();
        prop_assert_eq!(sym.eval_exact(&p, &rho), numeric.clone());

        // Oracle: sum the state law over every disconnecting state.
        let full = full_mask(net.edge_count());
        let oracle = (0..=full)
            .filter(|&down| !reaches(&net, full & !down))
            .fold(BigRational::zero(), |acc, down| {
                acc + partition.state_probability(EdgeSet::from_mask(down), &p, &rho)
            });
        prop_assert_eq!(numeric, oracle);
    }
}

#[test]
fn n2_correlated_outage_grows_with_rho() {
    let net = fixture("n2");
    let cuts = cuts_of(&net);
    let partition = CorrelationPartition::new(4, &[vec![0, 1], vec![2, 3]]).unwrap();
    let sym = correlated_outage_poly(&cuts, &partition).unwrap();
    for pk in 1..100 {
        let p = rat(pk, 100);
        let mut prev = BigRational::zero();
        for rk in 0..=100 {
            let v = sym.eval_exact(&p, &rat(rk, 100));
            assert!(v >= prev, "p = {p}, rho = {rk}/100");
            prev = v;
        }
    }
}
