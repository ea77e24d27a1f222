mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use cycmod::connectivity::is_3_connected;
use cycmod::generators::random_3_connected_cubic;
use cycmod::graph::Graph;
use cycmod::oracle::for_each_path;
use cycmod::theta_decomp::{
    census, chains, crossing, decompose, kgood_search, lemma53_detect, longest_special_chain,
    precedes, shortest_theta, ThetaHost,
};

/// Minimum total length of three internally disjoint `u`–`v` paths, at most one of them an edge.
pub fn brute_theta(g: &Graph, u: usize, v: usize) -> Option<usize> {
    let mut paths: Vec<(usize, u64, Vec<usize>)> = Vec::new();
    for_each_path(g, u, v, |p| {
        let mask = p[1..p.len() - 1].iter().fold(0u64, |m, &x| m | 1 << x);
        paths.push((p.len() - 1, mask, p.to_vec()));
        true
    });
    paths.sort();
    let mut best: Option<usize> = None;
    for a in 0..paths.len() {
        for b in a + 1..paths.len() {
            if paths[a].1 & paths[b].1 != 0 || (paths[a].0 == 1 && paths[b].0 == 1) {
                continue;
            }
            for c in b + 1..paths.len() {
                let total = paths[a].0 + paths[b].0 + paths[c].0;
                if best.is_some_and(|x| total >= x) {
                    break;
                }
                if paths[c].1 & (paths[a].1 | paths[b].1) == 0 {
                    best = Some(total);
                }
            }
        }
    }
    best
}

/// Random host with ladder gadgets on leg 0 and crosses elsewhere.
fn random_host(length: usize, seed: u64) -> ThetaHost {
    let mut rng = common::rng(seed);
    let mut pairs = Vec::new();
    let mut singles = Vec::new();
    let mut p = 1;
    while p < length {
        if p + 1 < length && rng.gen_bool(0.5) {
            pairs.push((p, p + 1));
            p += 2;
        } else {
            singles.push(p);
            p += 1;
        }
    }
    singles.shuffle(&mut rng);
    let mut gadgets = Vec::new();
    for (a, b) in pairs {
        match singles.pop() {
            Some(r) => gadgets.push([(0, a), (0, b), (0, r)]),
            None => singles.extend([a, b]),
        }
    }
    let crosses: Vec<usize> = singles;
    gadgets.extend(crosses.iter().map(|&x| [(0, x), (1, x), (2, x)]));
    let rungs = (1..length)
        .filter(|p| !crosses.contains(p))
        .map(|p| (1, 2, p))
        .collect();
    ThetaHost {
        length,
        gadgets,
        rungs,
        ..Default::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shortest_theta_matches_brute_force(n in 2usize..13, extra in 0usize..8, seed: u64) {
        let g = common::random_connected(n, extra, seed);
        let mut rng = common::rng(seed ^ 3);
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        prop_assume!(u != v);
        let brute = brute_theta(&g, u, v);
        match shortest_theta(&g, u, v) {
            Ok(t) => {
                prop_assert!(t.violations(Some(&g)).is_empty());
                prop_assert_eq!((t.u, t.v), (u, v));
                prop_assert_eq!(Some(t.total_length()), brute);
            }
            Err(_) => prop_assert_eq!(brute, None),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn decompositions_of_random_cubic_graphs(half in 2usize..16, seed: u64) {
        let mut rng = common::rng(seed);
        let g = random_3_connected_cubic(2 * half, &mut rng);
        let n = g.vertex_count();
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        prop_assume!(u != v);
        let d = decompose(&g, u, v).unwrap();
        prop_assert!(d.violations().is_empty(), "{:?}", d.violations());
        let covered: BTreeSet<usize> = d.plus.iter().chain(&d.rest).copied().collect();
        prop_assert_eq!(covered.len(), n);
        for k in 1..4 {
            let r = lemma53_detect(&d, k);
            if let Some(c) = &r.certificate {
                prop_assert!(c.validate(Some(&g)).valid);
                prop_assert!(c.witness.level() >= k);
            }
            let c = census(&d, k);
            prop_assert_eq!(c.cases.len(), 4);
        }
    }

    #[test]
    fn search_certificates_validate(half in 2usize..14, k in 1usize..4, seed: u64) {
        let g = random_3_connected_cubic(2 * half, &mut common::rng(seed));
        let s = kgood_search(&g, k).unwrap();
        if let Some(c) = &s.certificate {
            prop_assert!(c.validate(Some(&g)).valid);
            prop_assert!(c.witness.level() >= k);
            prop_assert!(s.source.is_some());
        }
    }

    #[test]
    fn theta_order_on_planted_hosts(length in 6usize..30, seed: u64) {
        let host = random_host(length, seed);
        let Ok(g) = host.build() else { return Ok(()) };
        prop_assume!(is_3_connected(&g));
        let d = decompose(&g, 0, 1).unwrap();
        prop_assert!(d.violations().is_empty(), "{:?}", d.violations());
        let iso = d.isolated_components();
        for &a in &iso {
            prop_assert!(!precedes(&d, a, a));
            for &b in &iso {
                if precedes(&d, a, b) {
                    prop_assert!(!precedes(&d, b, a));
                    prop_assert!(!crossing(&d, a, b) && !crossing(&d, b, a));
                    for &c in &iso {
                        if precedes(&d, b, c) {
                            prop_assert!(precedes(&d, a, c));
                        }
                    }
                }
            }
        }
        for ch in chains(&d) {
            for w in ch.components.windows(2) {
                prop_assert!(precedes(&d, w[0], w[1]));
            }
        }
        let special = longest_special_chain(&d);
        for w in special.windows(2) {
            prop_assert!(precedes(&d, w[0], w[1]));
        }
        prop_assert!(special.iter().all(|&c| d.components[c].two_connected));
    }
}
