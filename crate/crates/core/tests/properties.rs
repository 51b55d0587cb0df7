mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slidetok::instances::{
    enumerate_trees, gen_random_tree, gen_random_yes_instance, prufer_decode, random_independent_set,
};
use slidetok::oracle::{all_independent_sets, oracle_decide, oracle_rigid};
use slidetok::{
    compute_rigid_set, decide, evacuate_subtree, evacuation_audit, is_rigid_in_subtree, plan,
    verify_plan, IndependentSet, Instance, SubtreeRef, Tree,
};

#[test]
fn small_trees_agree_with_the_oracle() {
    let report = common::sweep(6, true);
    assert_eq!(report.trees, 1 + 1 + 3 + 16 + 125 + 1296);
    assert!(report.decide_mismatches.is_empty(), "{:?}", &report.decide_mismatches[..1]);
    assert!(report.rigid_mismatches.is_empty(), "{:?}", &report.rigid_mismatches[..1]);
    assert!(report.free_vertex_violations.is_empty());
    assert!(report.removal_violations.is_empty());
    assert!(report.plan_failures.is_empty(), "{:?}", &report.plan_failures[..1]);
    assert!(report.free_vertex_checks > 0 && report.removal_checks > 0);
}

#[test]
fn every_tree_has_a_safe_leaf() {
    for n in 2..=7 {
        for t in enumerate_trees(n).unwrap() {
            let v = t.find_safe_leaf().unwrap();
            assert!(t.is_safe_leaf(v));
            assert!((0..v).all(|w| !t.is_safe_leaf(w)));
        }
    }
    for seed in 0..1000 {
        let n = 2 + (seed as usize * 37) % 499;
        let t = gen_random_tree(n, seed);
        assert!(t.is_safe_leaf(t.find_safe_leaf().unwrap()), "n={n} seed={seed}");
    }
}

#[test]
fn subtrees_split_the_tree_at_each_edge() {
    for seed in 0..50 {
        let t = gen_random_tree(60, seed);
        for (u, v) in t.edges() {
            let mut a = t.subtree_vertices(SubtreeRef::new(u, v)).unwrap();
            let b = t.subtree_vertices(SubtreeRef::new(v, u)).unwrap();
            assert!(a.contains(&u) && !a.contains(&v));
            a.extend(b);
            a.sort_unstable();
            assert_eq!(a, (0..60).collect::<Vec<_>>());
        }
    }
}

#[test]
fn distance_is_a_tree_metric() {
    for t in enumerate_trees(6).unwrap() {
        for a in 0..6 {
            assert_eq!(t.distance(a, a).unwrap(), 0);
            for b in 0..6 {
                let d = t.distance(a, b).unwrap();
                assert_eq!(d, t.distance(b, a).unwrap());
                assert_eq!(d == 1, t.has_edge(a, b));
                for c in 0..6 {
                    assert!(d <= t.distance(a, c).unwrap() + t.distance(c, b).unwrap());
                }
            }
        }
    }
}

#[test]
fn subtree_rigidity_needs_only_the_subtree() {
    // tokens outside T_v^u never change whether v is rigid there
    let t = Tree::new(7, &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (5, 6)]).unwrap();
    let inner = IndependentSet::new(&t, [2]).unwrap();
    let outer = IndependentSet::new(&t, [2, 4, 6]).unwrap();
    let s = SubtreeRef::new(2, 1);
    assert_eq!(
        is_rigid_in_subtree(&t, &inner, s).unwrap(),
        is_rigid_in_subtree(&t, &outer, s).unwrap()
    );
}

#[test]
fn random_yes_instances_plan_within_bound() {
    for seed in 0..300 {
        let n = 2 + (seed as usize * 13) % 120;
        let k = 1 + (seed as usize) % (n / 3 + 1);
        let inst = gen_random_yes_instance(n, k, seed).unwrap();
        let len = common::check_plan(&inst, None).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        let back = common::check_plan(&inst.swapped(), None).unwrap();
        assert!(len <= 4 * n * n && back <= 4 * n * n);
    }
}

#[test]
fn planner_reaches_the_same_intermediate_configuration_from_both_ends() {
    for seed in 0..100 {
        let inst = gen_random_yes_instance(40, 6, seed).unwrap();
        let there = plan(&inst).unwrap();
        let back = plan(&inst.swapped()).unwrap();
        assert_eq!(there.intermediate_star, back.intermediate_star);
        let total: usize = there.stats.settle_costs.iter().map(|c| c.forward + c.backward).sum();
        assert_eq!(total, there.plan.len());
    }
}

#[test]
fn evacuations_stay_within_subtree_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    for seed in 0..400 {
        let n = rng.gen_range(2..80);
        let t = gen_random_tree(n, seed);
        let k = rng.gen_range(1..=n / 2);
        let Some(i) = random_independent_set(&t, k, &mut rng) else {
            continue;
        };
        for root in i.iter() {
            for p in t.neighbors(root) {
                let s = SubtreeRef::new(root, p);
                if is_rigid_in_subtree(&t, &i, s).unwrap() {
                    continue;
                }
                let size = t.subtree_vertices(s).unwrap().len();
                let (moves, after) = evacuate_subtree(&t, &i, s).unwrap();
                assert!(moves.len() <= size);
                assert!(!after.contains(root));
                assert_eq!(after.len(), i.len());
                // tokens outside the subtree are untouched
                let inside = t.subtree_vertices(s).unwrap();
                for v in i.iter().filter(|v| !inside.contains(v)) {
                    assert!(after.contains(v));
                }
                done += 1;
            }
        }
    }
    assert!(done > 100);
    assert_eq!(evacuation_audit().overruns, 0);
}

fn tree_and_sets() -> impl Strategy<Value = (Tree, IndependentSet, IndependentSet)> {
    (2usize..=9)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(0..n, n - 2), any::<u64>()))
        .prop_map(|(n, code, seed)| {
            let t = prufer_decode(n, &code).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = rng.gen_range(0..=n / 2);
            let a = random_independent_set(&t, k, &mut rng).unwrap_or_else(IndependentSet::empty);
            let b = random_independent_set(&t, a.len(), &mut rng).unwrap_or_else(|| a.clone());
            (t, a, b)
        })
}

proptest! {
    #[test]
    fn decision_matches_the_oracle((t, a, b) in tree_and_sets()) {
        let inst = Instance::from_sets(t.clone(), a.clone(), b.clone()).unwrap();
        let verdict = decide(&inst).is_yes();
        prop_assert_eq!(verdict, oracle_decide(&inst, 16).unwrap());
        prop_assert_eq!(verdict, decide(&inst.swapped()).is_yes());
        prop_assert_eq!(compute_rigid_set(&t, &a).unwrap().rigid, oracle_rigid(&t, &a, 16).unwrap());
        if verdict {
            let trace = plan(&inst).unwrap();
            prop_assert!(verify_plan(&inst, &trace.plan).is_ok());
        }
    }

    #[test]
    fn rigid_tokens_are_a_subset_and_forest_avoids_them((t, a, _b) in tree_and_sets()) {
        let rigid = compute_rigid_set(&t, &a).unwrap().rigid;
        prop_assert!(rigid.iter().all(|v| a.contains(v)));
        let forest = slidetok::forest_after_deletion(&t, &rigid);
        for v in rigid.iter() {
            prop_assert_eq!(forest.component_of(v), None);
            for w in t.neighbors(v) {
                prop_assert_eq!(forest.component_of(w), None);
            }
        }
        let covered: usize = forest.components.iter().map(Vec::len).sum();
        prop_assert_eq!(covered + forest.deleted.len(), t.len());
    }
}

#[test]
fn independent_set_counts() {
    assert_eq!(all_independent_sets(&Tree::path(7), 16).unwrap().len(), 34);
}
