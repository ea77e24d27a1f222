use proptest::prelude::*;

use cycmod::connectivity::{is_2_connected, is_3_connected};
use cycmod::counterexamples::{
    build_counterexample, building_block, classify_div3_cycles, tensor_join, BlockCase, Verdict,
};
use cycmod::oracle::xy_path_lengths;

#[test]
fn classification_is_complete_for_short_ladders() {
    for case in [BlockCase::H1, BlockCase::H2, BlockCase::H3] {
        let b = building_block(case).unwrap();
        assert!(xy_path_lengths(&b.graph, b.x, b.y)
            .keys()
            .all(|l| l % 3 != 0));
        for n in 1..=2 {
            let j = tensor_join(&b.graph, b.x, b.y, &b.graph, b.x, b.y, n).unwrap();
            assert!(j.graph.is_cubic() && is_2_connected(&j.graph) && !is_3_connected(&j.graph));
            let c = classify_div3_cycles(&j, None).unwrap();
            let through: usize = c.through.values().sum();
            assert_eq!(
                c.inside[0] + c.inside[1] + through,
                c.total,
                "{case:?}, N = {n}"
            );
            assert_eq!(c.inside[0], c.inside[1]);
            for &(p1, p2) in c.through.keys() {
                assert!(b.xy_lengths.contains(&p1) && b.xy_lengths.contains(&p2));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn counterexamples_avoid_their_residue(k3 in 4usize..9, m3 in 0usize..9, min_n in 1usize..200) {
        let k = 3 * k3;
        let m = 3 * (m3 % k3);
        let r = build_counterexample(m, k, min_n).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Certified);
        prop_assert!(r.graph.is_cubic());
        prop_assert!(is_2_connected(&r.graph));
        prop_assert!(r.graph.vertex_count() >= min_n);
        prop_assert!(!r.residues.contains(&m));
        prop_assert!(r.residues.iter().any(|&x| x % 3 == 0 && x != m));
    }
}
