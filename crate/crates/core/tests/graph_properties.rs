use lsplab::graph::{
    are_isomorphic, bits, canonical_form, clique_subdivide, from_graph6, k_stretch, odd_subdivide, to_graph6, BaseKind,
    FkDescriptor, Graph, StretchNodes,
};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut it = bits.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(i, j).unwrap();
                    }
                }
            }
            g
        })
    })
}

fn graph_and_node(max_n: usize) -> impl Strategy<Value = (Graph, usize)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), 0..n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn complement_is_an_involution(g in graph_strategy(9)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn graph6_round_trips(g in graph_strategy(12)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn destroy_removes_closed_neighborhood((g, v) in graph_and_node(9)) {
        let (h, map) = g.destroy(v).unwrap();
        let closed = g.neighbors_mask(v) | 1 << v;
        let kept: Vec<usize> = (0..g.n()).filter(|w| closed >> w & 1 == 0).collect();
        prop_assert_eq!(&map, &kept);
        prop_assert_eq!(h.n(), kept.len());
        for (i, &a) in map.iter().enumerate() {
            for (j, &b) in map.iter().enumerate() {
                prop_assert_eq!(h.has_edge(i, j), i != j && g.has_edge(a, b));
            }
        }
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph_strategy(7), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.permute(&perm);
        prop_assert!(are_isomorphic(&g, &h));
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn stretch_degrees((g, v) in graph_and_node(7), split in any::<u64>()) {
        let nb: Vec<usize> = g.neighbors(v);
        prop_assume!(!nb.is_empty());
        // each neighbor goes to A1, A2 or both; A1 ∩ A2 kept to at most one node
        let mut a1 = Vec::new();
        let mut a2 = Vec::new();
        let mut shared = false;
        for (i, &w) in nb.iter().enumerate() {
            match (split >> (2 * i)) & 3 {
                0 | 1 => a1.push(w),
                2 => a2.push(w),
                _ if !shared => {
                    a1.push(w);
                    a2.push(w);
                    shared = true;
                }
                _ => a2.push(w),
            }
        }
        prop_assume!(!a1.is_empty() && !a2.is_empty());
        let s = k_stretch(&g, v, &a1, &a2).unwrap();
        let nodes = StretchNodes::for_graph(g.n());
        prop_assert_eq!(s.n(), g.n() + 2);
        prop_assert_eq!(s.degree(nodes.u), 2);
        prop_assert_eq!(s.degree(nodes.v1), a1.len() + 1);
        prop_assert_eq!(s.degree(nodes.v2), a2.len() + 1);
        prop_assert_eq!(s.edge_count(), g.edge_count() - nb.len() + a1.len() + a2.len() + 2);
    }

    #[test]
    fn two_node_clique_subdivision_is_odd_subdivision((g, v) in graph_and_node(8)) {
        let nb = g.neighbors(v);
        prop_assume!(!nb.is_empty());
        let e = (v, nb[0]);
        let a = clique_subdivide(&g, &[e.0, e.1], e).unwrap();
        let b = odd_subdivide(&g, e, 3).unwrap();
        prop_assert!(are_isomorphic(&a, &b));
    }
}

#[test]
fn odd_central_cycle_count_is_odd() {
    for k in 2..=6 {
        for d in FkDescriptor::enumerate(k, BaseKind::OddHole).into_iter().filter(|d| d.hub_degree() >= 2) {
            assert_eq!(d.odd_central_cycles().unwrap() % 2, 1, "{d:?}");
            let g = d.to_graph().unwrap();
            assert_eq!(bits(g.neighbors_mask(0)).count(), d.hub_degree());
        }
    }
}
