mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;

use cycmod::graph::Graph;
use cycmod::necklaces::{
    detect_k_close, kclose_to_necklace, kgood_realize, max_k_close_connectors, random_kclose_pair,
    random_theta_necklace, random_wiggly_necklace, realize_residue_theta, realize_residue_wiggly,
    KGoodCertificate, KGoodWitness, ThetaNecklace,
};
use cycmod::oracle::xy_path_lengths;

/// Residues of lengths of cycles running once around the necklace, from the
/// `w₁`–`w₂` path lengths inside each θ-graph.
fn around_residues(neck: &ThetaNecklace, k: usize) -> BTreeSet<usize> {
    let mut reach: BTreeSet<usize> = [0].into();
    for (j, th) in neck.thetas.iter().enumerate() {
        let vs = th.vertices();
        let idx = |v: usize| vs.binary_search(&v).unwrap();
        let edges: Vec<(usize, usize)> = th
            .edges()
            .into_iter()
            .map(|(a, b)| (idx(a), idx(b)))
            .collect();
        let local = Graph::from_edges(vs.len(), &edges).unwrap();
        let (w1, w2) = neck.attachments(j);
        let routes: BTreeSet<usize> = xy_path_lengths(&local, idx(w1), idx(w2))
            .into_keys()
            .collect();
        let conn = neck.connectors[j].len() - 1;
        reach = reach
            .iter()
            .flat_map(|r| routes.iter().map(move |l| (r + l + conn) % k))
            .collect();
    }
    reach
}

/// Largest set of pairwise disjoint connectors of length 1 or 2 from `h1` to `h2`.
fn brute_connectors(g: &Graph, h1: &[usize], h2: &[usize]) -> usize {
    let mut cands: Vec<Vec<usize>> = Vec::new();
    for &a in h1 {
        for &b in g.neighbors(a) {
            if h2.contains(&b) {
                cands.push(vec![a, b]);
            } else if !h1.contains(&b) {
                for &c in g.neighbors(b) {
                    if h2.contains(&c) {
                        cands.push(vec![a, b, c]);
                    }
                }
            }
        }
    }
    fn go(cands: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
        let Some((first, rest)) = cands.split_first() else {
            return 0;
        };
        let mut best = go(rest, used);
        if first.iter().all(|&v| !used[v]) {
            first.iter().for_each(|&v| used[v] = true);
            best = best.max(1 + go(rest, used));
            first.iter().for_each(|&v| used[v] = false);
        }
        best
    }
    go(&cands, &mut vec![false; g.vertex_count()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theta_realizations_hit_every_residue(small: bool, i in 1usize..3, seed: u64) {
        let k: usize = if small { 3 } else { 5 };
        let (g, neck) = random_theta_necklace(3 * k.pow(4), i, 4, 3, &mut common::rng(seed));
        prop_assert!(neck.validate(Some(&g)).valid);
        let reach = around_residues(&neck, k);
        for m in 0..k {
            let r = realize_residue_theta(&neck, m, k).unwrap();
            prop_assert!(g.check_cycle(&r.cycle).is_ok());
            prop_assert_eq!(r.cycle.len() % k, m);
            prop_assert!(reach.contains(&m));
        }
    }

    #[test]
    fn even_moduli_reach_a_whole_parity_class(half in 1usize..4, seed: u64) {
        let k = 2 * half;
        let (_, neck) = random_theta_necklace(3 * k.pow(4), 1, 5, 3, &mut common::rng(seed));
        let scheme: BTreeSet<usize> = neck.scheme_residues(k).unwrap().into_iter().collect();
        let reach = around_residues(&neck, k);
        prop_assert!(scheme.is_subset(&reach));
        let even: BTreeSet<usize> = (0..k).step_by(2).collect();
        let odd: BTreeSet<usize> = (1..k).step_by(2).collect();
        prop_assert!(even.is_subset(&scheme) || odd.is_subset(&scheme), "{:?}", scheme);
    }

    #[test]
    fn wiggly_realizations_hit_every_residue(k in prop::sample::select(vec![1usize, 3, 5, 7]), plain in 0usize..5, seed: u64) {
        let (g, neck) = random_wiggly_necklace(2 * k, plain, &mut common::rng(seed));
        prop_assert!(neck.validate(Some(&g)).valid);
        for m in 0..k {
            let r = realize_residue_wiggly(&neck, m, k).unwrap();
            prop_assert!(g.check_cycle(&r.cycle).is_ok());
            prop_assert_eq!(r.cycle.len() % k, m);
        }
    }

    #[test]
    fn kclose_pairs_give_theta_necklaces(t in 1usize..4, share in 0u32..=10, seed: u64) {
        let (g, pair) = random_kclose_pair(18 * t * t, 6, f64::from(share) / 10.0, &mut common::rng(seed));
        prop_assert!(pair.validate(Some(&g)).valid);
        let neck = kclose_to_necklace(&g, &pair, t).unwrap();
        prop_assert_eq!(neck.len(), t);
        prop_assert!(neck.i == 1 || neck.i == 2);
        prop_assert!(neck.validate(Some(&g)).valid);
        let cert = KGoodCertificate { k: t, witness: KGoodWitness::Theta(neck) };
        prop_assert!(cert.validate(Some(&g)).valid);
    }

    #[test]
    fn kgood_realizations_are_verified(k in prop::sample::select(vec![1usize, 3]), seed: u64) {
        let (g, neck) = random_wiggly_necklace(2 * k, 2, &mut common::rng(seed));
        let cert = KGoodCertificate { k: 2 * k, witness: KGoodWitness::Wiggly(neck) };
        for m in 0..k {
            let r = kgood_realize(&g, &cert, m, k).unwrap();
            prop_assert!(r.guaranteed);
            prop_assert!(g.check_cycle(&r.cycle).is_ok());
            prop_assert_eq!(r.cycle.len() % k, m);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn close_connector_flow_is_maximum(n in 4usize..13, p in 15u32..60, seed: u64) {
        let g = common::random_graph(n, p, seed);
        let mut vs: Vec<usize> = (0..n).collect();
        let mut rng = common::rng(seed ^ 7);
        vs.shuffle(&mut rng);
        let a = n / 3;
        let (h1, rest) = vs.split_at(a.max(1));
        let (h2, _) = rest.split_at((n / 3).max(1));
        let found = max_k_close_connectors(&g, h1, h2).unwrap();
        prop_assert_eq!(found.len(), brute_connectors(&g, h1, h2));
        let mut used = BTreeSet::new();
        for c in &found {
            prop_assert!(g.check_path(c).is_ok());
            prop_assert!(c.len() == 2 || c.len() == 3);
            prop_assert!(h1.contains(&c[0]) && h2.contains(&c[c.len() - 1]));
            for &v in c {
                prop_assert!(used.insert(v));
            }
        }
        let k = found.len();
        prop_assert!(detect_k_close(&g, h1, h2, k).unwrap().is_some());
        prop_assert!(detect_k_close(&g, h1, h2, k + 1).unwrap().is_none());
    }
}
