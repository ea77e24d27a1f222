mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;

use cycmod::chords::{
    chord_bound, max_special_path_brute_force, path_with_chords, path_with_special_edges,
    random_chord_instance, reduce, RewriteKind, SpecialEdgeInstance,
};
use cycmod::error::Error;
use cycmod::generators::random_2_connected_subcubic;
use cycmod::graph::Graph;

fn special_instance(max_n: usize, share: usize, seed: u64) -> SpecialEdgeInstance {
    let mut rng = common::rng(seed);
    let g = random_2_connected_subcubic(max_n, &mut rng);
    let mut edges = g.edges();
    edges.shuffle(&mut rng);
    let count = (edges.len() * share).div_ceil(100).max(1);
    SpecialEdgeInstance::new(g, edges[..count].to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn chord_paths_at_the_bound(k in 1usize..5, extra in 0usize..30, seed: u64) {
        let inst = random_chord_instance(chord_bound(k), extra, &mut common::rng(seed));
        let p = path_with_chords(&inst, k).unwrap();
        prop_assert!(p.guaranteed);
        let count = inst.validate(&p).unwrap();
        prop_assert_eq!(count, p.chord_count());
        prop_assert!(count >= k);
    }

    #[test]
    fn chord_paths_below_the_bound_still_validate(k in 1usize..5, chords in 0usize..20, seed: u64) {
        let inst = random_chord_instance(chords, 3, &mut common::rng(seed));
        if let Ok(p) = path_with_chords(&inst, k) {
            prop_assert!(inst.validate(&p).unwrap() >= k);
        }
    }

    #[test]
    fn special_paths_are_sound(max_n in 4usize..40, share in 10usize..100, k in 1usize..5, seed: u64) {
        let inst = special_instance(max_n, share, seed);
        match path_with_special_edges(&inst, k) {
            Ok(p) => {
                prop_assert!(inst.graph.check_path(&p.path).is_ok());
                prop_assert_eq!(inst.count(&p.path), p.special_count);
                prop_assert!(p.special_count >= k);
            }
            Err(Error::NotFound(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn rewrites_never_raise_the_optimum(max_n in 4usize..15, share in 10usize..80, seed: u64) {
        let inst = special_instance(max_n, share, seed);
        let mut before = max_special_path_brute_force(&inst.graph, &inst.special).0;
        for step in reduce(&inst) {
            let after = max_special_path_brute_force(&step.graph, &step.special).0;
            prop_assert!(after <= before);
            if step.kind != RewriteKind::DeleteEdge {
                prop_assert_eq!(after, before, "{:?} changed the optimum", step.kind);
            }
            before = after;
        }
    }

    #[test]
    fn lifted_paths_keep_their_special_edges(max_n in 4usize..20, share in 10usize..80, seed: u64) {
        let inst = special_instance(max_n, share, seed);
        let steps = reduce(&inst);
        let Some(last) = steps.last() else { return Ok(()) };
        let (best, mut p) = max_special_path_brute_force(&last.graph, &last.special);
        for (i, step) in steps.iter().enumerate().rev() {
            p = step.lift(&p);
            let prev: &Graph = if i == 0 { &inst.graph } else { &steps[i - 1].graph };
            prop_assert!(prev.check_path(&p).is_ok());
        }
        prop_assert!(inst.count(&p) >= best);
    }
}
