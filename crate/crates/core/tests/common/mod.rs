//! Exhaustive cross-check of the linear-time procedures against the
//! brute-force configuration graph, over every labeled tree up to a size.

#![allow(dead_code)]

use std::panic::{catch_unwind, AssertUnwindSafe};

use rayon::prelude::*;
use slidetok::instances::enumerate_trees;
use slidetok::oracle::StateSpace;
use slidetok::{
    compute_rigid_set, decide, is_rigid_in_subtree, plan, verify_plan, Certificate, Instance,
    SubtreeRef, Tree,
};

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub trees: usize,
    pub configurations: usize,
    pub pairs: usize,
    pub yes_pairs: usize,
    pub decide_mismatches: Vec<String>,
    pub rigid_mismatches: Vec<String>,
    pub free_vertex_checks: usize,
    pub free_vertex_violations: Vec<String>,
    pub removal_checks: usize,
    pub removal_violations: Vec<String>,
    pub plan_failures: Vec<String>,
}

impl SweepReport {
    fn merge(mut self, other: SweepReport) -> SweepReport {
        self.trees += other.trees;
        self.configurations += other.configurations;
        self.pairs += other.pairs;
        self.yes_pairs += other.yes_pairs;
        self.free_vertex_checks += other.free_vertex_checks;
        self.removal_checks += other.removal_checks;
        self.decide_mismatches.extend(other.decide_mismatches);
        self.rigid_mismatches.extend(other.rigid_mismatches);
        self.free_vertex_violations.extend(other.free_vertex_violations);
        self.removal_violations.extend(other.removal_violations);
        self.plan_failures.extend(other.plan_failures);
        self
    }
}

/// Checks one yes-instance plan: it verifies, respects the quadratic bound,
/// is no shorter than the true distance, and never leaves the forest.
pub fn check_plan(inst: &Instance, shortest: Option<usize>) -> Result<usize, String> {
    let n = inst.tree().len();
    let trace = catch_unwind(AssertUnwindSafe(|| plan(inst)))
        .map_err(|_| "planner panicked".to_string())?
        .map_err(|e| format!("planner error: {e}"))?;
    let len = trace.plan.len();
    verify_plan(inst, &trace.plan).map_err(|v| v.to_string())?;
    if len > 4 * n * n {
        return Err(format!("{len} moves exceeds 4n^2"));
    }
    if let Some(d) = shortest {
        if len < d {
            return Err(format!("{len} moves beats the shortest distance {d}"));
        }
    }
    let Certificate::Feasible { forest, .. } = decide(inst).certificate else {
        return Err("planned a no-instance".into());
    };
    for m in &trace.plan.moves {
        let (a, b) = (forest.component_of(m.from), forest.component_of(m.to));
        if a.is_none() || a != b {
            return Err(format!("move {m} leaves its forest component"));
        }
    }
    Ok(len)
}

fn sweep_tree(t: &Tree, with_plans: bool) -> SweepReport {
    let n = t.len();
    let mut report = SweepReport {
        trees: 1,
        ..SweepReport::default()
    };
    for size in 0..=n {
        let space = StateSpace::build(t, size, n).expect("small tree");
        if space.is_empty() {
            break;
        }
        let states: Vec<_> = space.states().collect();
        report.configurations += states.len();
        let rigid: Vec<_> = (0..states.len()).map(|k| space.rigid_of(k)).collect();

        for (a, i) in states.iter().enumerate() {
            let ours = compute_rigid_set(t, i).unwrap().rigid;
            if ours != rigid[a] {
                report
                    .rigid_mismatches
                    .push(format!("{t:?} I={i}: got {ours}, oracle {}", rigid[a]));
            }

            if rigid[a].is_empty() {
                for v in (0..n).filter(|&v| !i.contains(v)) {
                    report.free_vertex_checks += 1;
                    let stuck = t
                        .neighbors(v)
                        .filter(|&w| {
                            i.contains(w) && is_rigid_in_subtree(t, i, SubtreeRef::new(w, v)).unwrap()
                        })
                        .count();
                    if stuck > 1 {
                        report
                            .free_vertex_violations
                            .push(format!("{t:?} I={i}: {stuck} rigid subtrees meet at {v}"));
                    }
                }
            }

            for x in i.iter().filter(|&x| !rigid[a].contains(x)) {
                report.removal_checks += 1;
                let smaller = i.without(x);
                let after = compute_rigid_set(t, &smaller).unwrap().rigid;
                if after != rigid[a] {
                    report.removal_violations.push(format!(
                        "{t:?} I={i} x={x}: {} before, {after} after",
                        rigid[a]
                    ));
                }
            }

            let dist = with_plans.then(|| space.distances_from(a));
            for (b, j) in states.iter().enumerate() {
                report.pairs += 1;
                let inst = Instance::from_sets(t.clone(), i.clone(), j.clone()).unwrap();
                let truth = space.class_of(a) == space.class_of(b);
                let verdict = decide(&inst).is_yes();
                if verdict != truth {
                    report
                        .decide_mismatches
                        .push(format!("{t:?} {i} -> {j}: decide {verdict}, oracle {truth}"));
                }
                if truth {
                    report.yes_pairs += 1;
                    if let Some(dist) = &dist {
                        if let Err(e) = check_plan(&inst, dist[b]) {
                            report.plan_failures.push(format!("{t:?} {i} -> {j}: {e}"));
                        }
                    }
                }
            }
        }
    }
    report
}

/// Runs the full cross-check over every labeled tree on `1..=max_n`
/// vertices.
pub fn sweep(max_n: usize, with_plans: bool) -> SweepReport {
    (1..=max_n)
        .map(|n| {
            let trees: Vec<Tree> = enumerate_trees(n).unwrap().collect();
            trees
                .par_iter()
                .map(|t| sweep_tree(t, with_plans))
                .reduce(SweepReport::default, SweepReport::merge)
        })
        .fold(SweepReport::default(), SweepReport::merge)
}
