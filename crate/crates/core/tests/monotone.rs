mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;

use cycmod::graph::{edge_key, path_edges, Graph};
use cycmod::monotone::{erdos_szekeres, longest_monotone, path_system, Direction};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn every_small_permutation_has_a_monotone_run() {
    for n in 1..=7 {
        let perms = permutations(n);
        for r in 1..=n + 1 {
            for s in 1..=n + 1 {
                if (r - 1) * (s - 1) >= n {
                    continue;
                }
                for p in &perms {
                    let w = erdos_szekeres(p, r, s).unwrap();
                    assert!(w.is_valid_for(p));
                    let want = if w.direction == Direction::Increasing {
                        r
                    } else {
                        s
                    };
                    assert_eq!(w.indices.len(), want);
                }
            }
        }
    }
}

/// Minimum total length over pairings of `terminals` whose tree paths are edge-disjoint.
fn brute_min_pairing(tree: &Graph, terminals: &[usize]) -> Option<usize> {
    fn go(tree: &Graph, rest: &[usize], used: &mut BTreeSet<(usize, usize)>) -> Option<usize> {
        let Some((&a, tail)) = rest.split_first() else {
            return Some(0);
        };
        let mut best: Option<usize> = None;
        for (i, &b) in tail.iter().enumerate() {
            let p = tree.shortest_path(a, b).unwrap();
            let es = path_edges(&p)
                .into_iter()
                .map(|(x, y)| edge_key(x, y))
                .collect::<Vec<_>>();
            if es.iter().any(|e| used.contains(e)) {
                continue;
            }
            used.extend(es.iter().copied());
            let mut left = tail.to_vec();
            left.remove(i);
            if let Some(v) = go(tree, &left, used) {
                best = Some(best.map_or(v + es.len(), |b: usize| b.min(v + es.len())));
            }
            for e in &es {
                used.remove(e);
            }
        }
        best
    }
    go(tree, terminals, &mut BTreeSet::new())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn larger_permutations_have_runs(n in 1usize..40, r in 1usize..8, s in 1usize..8, seed: u64) {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut common::rng(seed));
        let res = erdos_szekeres(&p, r, s);
        if (r - 1) * (s - 1) < n {
            let w = res.unwrap();
            prop_assert!(w.is_valid_for(&p));
        }
        let inc = longest_monotone(&p, Direction::Increasing);
        let dec = longest_monotone(&p, Direction::Decreasing);
        prop_assert!(inc.is_valid_for(&p) && dec.is_valid_for(&p));
        prop_assert!(inc.indices.len() * dec.indices.len() >= n);
    }

    #[test]
    fn tree_path_systems_are_minimal(n in 2usize..11, pairs in 1usize..4, seed: u64) {
        let tree = common::random_tree(n, 3, seed);
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(&mut common::rng(seed ^ 1));
        let terminals: Vec<usize> = vs.into_iter().take((2 * pairs).min(n / 2 * 2)).collect();
        let paths = path_system(&tree, &terminals).unwrap();
        let mut ends = BTreeSet::new();
        let mut used = BTreeSet::new();
        for p in &paths {
            prop_assert!(tree.check_path(p).is_ok());
            ends.insert(p[0]);
            ends.insert(p[p.len() - 1]);
            for (x, y) in path_edges(p) {
                prop_assert!(used.insert(edge_key(x, y)));
            }
        }
        prop_assert_eq!(ends, terminals.iter().copied().collect::<BTreeSet<_>>());
        let total: usize = paths.iter().map(|p| p.len() - 1).sum();
        prop_assert_eq!(Some(total), brute_min_pairing(&tree, &terminals));
    }
}
