use lsplab::graph::{are_isomorphic, FkDescriptor};
use lsplab::reduction::{reduce_to_base, replay, ReductionTrace};
use proptest::prelude::*;

fn odd_count(d: &FkDescriptor) -> usize {
    d.odd_central_cycles().unwrap()
}

fn descriptor(max_k: usize) -> impl Strategy<Value = FkDescriptor> {
    (2..=max_k).prop_flat_map(|k| {
        let m = 2 * k + 1;
        proptest::collection::btree_set(1..=m, 3..=2 * k)
            .prop_map(move |hub| FkDescriptor::new(k, hub.into_iter().collect(), lsplab::graph::BaseKind::OddHole).unwrap())
    })
}

fn check_steps(t: &ReductionTrace) -> Result<(), TestCaseError> {
    for s in &t.steps {
        prop_assert!(2 * s.after.k + s.after.hub_degree() < 2 * s.before.k + s.before.hub_degree());
        prop_assert_eq!(odd_count(&s.before) % 2, 1);
        prop_assert_eq!(odd_count(&s.after) % 2, 1);
        prop_assert!(odd_count(&s.after) >= 3);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_sound(d in descriptor(8)) {
        prop_assume!(odd_count(&d) >= 3);
        let t = reduce_to_base(&d).unwrap();
        check_steps(&t)?;
        let last = t.steps.last().map(|s| s.after.clone()).unwrap_or_else(|| d.clone());
        prop_assert_eq!(last.k, 2);
        let rebuilt = replay(&t).unwrap();
        prop_assert!(are_isomorphic(&rebuilt, &d.to_graph().unwrap()));
    }
}
