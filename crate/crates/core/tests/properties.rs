//! Randomized invariants over generated graphs: matroid rank axioms, the
//! counting identities of the graph layer, and parser round-trips.

use proptest::prelude::*;

use rigidpack_core::graph::{EdgeSet, Graph};
use rigidpack_core::matroid_union::circuit_rank;
use rigidpack_core::rigidity::rigidity_rank;

/// A labeled simple graph on up to 9 vertices, as (n, edge mask over the
/// lexicographic pair list).
fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..=9).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let count = pairs.len();
        proptest::collection::vec(any::<bool>(), count).prop_map(move |keep| {
            let edges: Vec<_> = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(&e, _)| e)
                .collect();
            Graph::new(n, edges).unwrap()
        })
    })
}

fn arb_graph_and_masks() -> impl Strategy<Value = (Graph, u64, u64)> {
    arb_graph().prop_flat_map(|g| {
        let m = g.edge_count() as u32;
        let bound = 1u64 << m;
        (Just(g), 0..bound.max(1), 0..bound.max(1))
    })
}

fn subset(g: &Graph, mask: u64) -> EdgeSet {
    (0..g.edge_count())
        .filter(|&e| mask >> e & 1 == 1)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rigidity_rank_axioms((g, mask_a, mask_b) in arb_graph_and_masks()) {
        let a = subset(&g, mask_a);
        let b = subset(&g, mask_b);
        let ra = rigidity_rank(&g, &a);
        let rb = rigidity_rank(&g, &b);
        prop_assert!(ra <= a.len());
        if a.is_subset(&b) {
            prop_assert!(ra <= rb);
        }
        let r_union = rigidity_rank(&g, &a.union(&b));
        let r_inter = rigidity_rank(&g, &a.intersection(&b));
        prop_assert!(ra + rb >= r_union + r_inter, "submodularity");
    }

    #[test]
    fn circuit_rank_axioms((g, mask_a, mask_b) in arb_graph_and_masks()) {
        let a = subset(&g, mask_a);
        let b = subset(&g, mask_b);
        let ra = circuit_rank(&g, &a);
        let rb = circuit_rank(&g, &b);
        prop_assert!(ra <= a.len());
        if a.is_subset(&b) {
            prop_assert!(ra <= rb);
        }
        prop_assert!(
            ra + rb >= circuit_rank(&g, &a.union(&b)) + circuit_rank(&g, &a.intersection(&b))
        );
    }

    #[test]
    fn serialize_parse_round_trip(g in arb_graph()) {
        let text = g.serialize();
        let back = Graph::parse_edge_list(&text).unwrap();
        prop_assert_eq!(back.serialize(), text);
    }

    #[test]
    fn component_degree_sum((g, mask, _) in arb_graph_and_masks()) {
        let f = subset(&g, mask);
        let parts = g.components(&f);
        let mut total = 0usize;
        for part in parts.parts() {
            for &v in part {
                total += f
                    .iter()
                    .filter(|&e| {
                        let (a, b) = g.endpoints(e);
                        a == v || b == v
                    })
                    .count();
            }
        }
        prop_assert_eq!(total, 2 * f.len());

        // One part iff a BFS over f reaches every vertex.
        let n = g.vertex_count();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            for e in f.iter() {
                let (a, b) = g.endpoints(e);
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        prop_assert_eq!(parts.count() == 1, seen.iter().all(|&s| s));
    }
}
