mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::Rng;

use cycmod::generators::random_3_connected_cubic;
use cycmod::graph::Graph;
use cycmod::oracle::for_each_path;
use cycmod::path_pairs::{
    find_pair_diff12, four_exception_hypotheses, nonseparating_induced_cycle,
    random_four_exception_instance, random_three_exception_instance, three_exception_hypotheses,
};

fn path_lengths(g: &Graph, x: usize, y: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for_each_path(g, x, y, |p| {
        out.insert(p.len() - 1);
        true
    });
    out
}

fn exhaustive_has_pair(g: &Graph, x: usize, y: usize) -> bool {
    let ls = path_lengths(g, x, y);
    ls.iter()
        .any(|l| ls.contains(&(l + 1)) || ls.contains(&(l + 2)))
}

fn check_pair(g: &Graph, x: usize, y: usize) -> Result<(), TestCaseError> {
    let pair = find_pair_diff12(g, x, y).unwrap();
    prop_assert_eq!(pair.is_some(), exhaustive_has_pair(g, x, y));
    if let Some(p) = pair {
        prop_assert!(p.validate(g).is_ok());
        prop_assert!(p.difference == 1 || p.difference == 2);
        prop_assert_eq!(p.long.len() - p.short.len(), p.difference);
        for q in [&p.short, &p.long] {
            prop_assert_eq!((q[0], q[q.len() - 1]), (x, y));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn three_exceptions_always_give_a_pair(half in 2usize..5, subdivisions in 0usize..4, seed: u64) {
        let (g, x, y) = random_three_exception_instance(2 * half, subdivisions, &mut common::rng(seed));
        prop_assert!(g.vertex_count() <= 12);
        prop_assert!(three_exception_hypotheses(&g, x, y).is_empty());
        prop_assert!(find_pair_diff12(&g, x, y).unwrap().is_some());
        check_pair(&g, x, y)?;
    }

    #[test]
    fn four_exceptions_give_a_pair_when_far_apart(half in 2usize..5, seed: u64) {
        let (g, d2) = random_four_exception_instance(2 * half, &mut common::rng(seed));
        for (x1, x2) in [(d2[0], d2[1]), (d2[0], d2[2]), (d2[1], d2[3])] {
            if four_exception_hypotheses(&g, x1, x2).is_empty() {
                prop_assert!(find_pair_diff12(&g, x1, x2).unwrap().is_some());
            }
            check_pair(&g, x1, x2)?;
        }
    }

    #[test]
    fn nonseparating_induced_cycles(half in 2usize..9, seed: u64) {
        let mut rng = common::rng(seed);
        let g = random_3_connected_cubic(2 * half, &mut rng);
        let edges = g.edges();
        let (s, t) = edges[rng.gen_range(0..edges.len())];
        let others: Vec<usize> = (0..g.vertex_count()).filter(|&v| v != s && v != t).collect();
        let r = others[rng.gen_range(0..others.len())];
        let c = nonseparating_induced_cycle(&g, s, t, r).unwrap();
        prop_assert!(g.check_cycle(&c).is_ok());
        prop_assert!(!c.contains(&r));
        let on: BTreeSet<usize> = c.iter().copied().collect();
        prop_assert!(on.contains(&s) && on.contains(&t));
        let chords = g.edges().into_iter().filter(|(a, b)| on.contains(a) && on.contains(b)).count();
        prop_assert_eq!(chords, c.len());
        let rest: Vec<usize> = (0..g.vertex_count()).filter(|v| !on.contains(v)).collect();
        let (h, _) = g.induced_subgraph(&rest);
        prop_assert!(h.is_connected());
    }
}
