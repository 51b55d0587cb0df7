//! Explicit slide sequences for yes-instances.
//!
//! Inside each tree of the forest every token is movable. Both endpoint
//! configurations are driven to a common configuration `I*` by repeatedly
//! pulling a closest token onto the smallest safe leaf `v`, then discarding
//! `v`, its neighbor `u` and the leaves hanging off `u`. What is left depends
//! only on the tree, so the two passes settle tokens on the same leaves and
//! meet. The answer is the forward pass followed by the reversed backward
//! pass, at most `2n` slides per settled leaf and pass.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::decision::{decide, Certificate};
use crate::error::{Error, Result};
use crate::independence::{reverse_plan, IndependentSet, Instance, Move, Plan, TokenBoard};
use crate::rigidity::{compute_rigid_set, eliminate, rigidity_below};
use crate::tree::{SubtreeRef, Tree};

static EVACUATIONS: AtomicUsize = AtomicUsize::new(0);
static EVACUATION_OVERRUNS: AtomicUsize = AtomicUsize::new(0);

/// Process-wide tally of subtree evacuations and of those that emitted more
/// slides than their subtree has vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvacuationAudit {
    pub calls: usize,
    pub overruns: usize,
}

pub fn evacuation_audit() -> EvacuationAudit {
    EvacuationAudit {
        calls: EVACUATIONS.load(Ordering::Relaxed),
        overruns: EVACUATION_OVERRUNS.load(Ordering::Relaxed),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvacuationRecord {
    pub moves: usize,
    pub subtree_size: usize,
}

/// Slides spent settling one leaf, in each pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SettleCost {
    pub leaf: usize,
    pub forward: usize,
    pub backward: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PlanStats {
    pub moves: usize,
    pub forward_moves: usize,
    pub backward_moves: usize,
    pub settle_costs: Vec<SettleCost>,
    pub evacuations: Vec<EvacuationRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanTrace {
    pub plan: Plan,
    /// The common configuration reached by both passes, one entry per
    /// forest component (ids in the input tree).
    pub intermediate_star: Vec<IndependentSet>,
    pub stats: PlanStats,
}

/// Builds a valid slide sequence from start to target.
pub fn plan(inst: &Instance) -> Result<PlanTrace> {
    let decision = decide(inst);
    let Certificate::Feasible { forest, counts, .. } = decision.certificate else {
        return Err(Error::NotFeasible(decision.certificate.to_string()));
    };
    let t = inst.tree();
    let mut moves = Vec::new();
    let mut stats = PlanStats::default();
    let mut stars = Vec::with_capacity(forest.len());

    for (j, verts) in forest.components.iter().enumerate() {
        if counts[j] == 0 {
            stars.push(IndependentSet::empty());
            continue;
        }
        let (component, map) = forest.component_tree(t, j);
        let localize = |set: &IndependentSet| {
            IndependentSet::from_sorted_unchecked(
                set.iter()
                    .filter_map(|v| verts.binary_search(&v).ok())
                    .collect(),
            )
        };
        let forward = settle(&component, &localize(inst.start()))?;
        let backward = settle(&component, &localize(inst.target()))?;

        let mut star_fwd: Vec<usize> = forward.settled.clone();
        let mut star_bwd: Vec<usize> = backward.settled.clone();
        star_fwd.sort_unstable();
        star_bwd.sort_unstable();
        assert_eq!(star_fwd, star_bwd, "forward and backward passes diverged");

        let to_global = |m: &Move| Move::new(map[m.from], map[m.to]);
        moves.extend(forward.moves.iter().map(to_global));
        let back = reverse_plan(&Plan::new(backward.moves.iter().map(to_global).collect()));
        moves.extend(back.moves);

        stats.forward_moves += forward.moves.len();
        stats.backward_moves += backward.moves.len();
        for (k, &leaf) in forward.settled.iter().enumerate() {
            stats.settle_costs.push(SettleCost {
                leaf: map[leaf],
                forward: forward.costs[k],
                backward: backward.costs[k],
            });
        }
        stats.evacuations.extend(forward.evacuations);
        stats.evacuations.extend(backward.evacuations);
        stars.push(IndependentSet::from_sorted_unchecked(
            star_fwd.into_iter().map(|v| map[v]).collect(),
        ));
    }

    stats.moves = moves.len();
    Ok(PlanTrace {
        plan: Plan::new(moves),
        intermediate_star: stars,
        stats,
    })
}

struct Settlement {
    moves: Vec<Move>,
    settled: Vec<usize>,
    costs: Vec<usize>,
    evacuations: Vec<EvacuationRecord>,
}

/// One pass: settle every token of `tokens` on a safe leaf, shrinking the
/// tree after each one. All tokens must be movable in `tree`.
fn settle(tree: &Tree, tokens: &IndependentSet) -> Result<Settlement> {
    let mut out = Settlement {
        moves: Vec::new(),
        settled: Vec::new(),
        costs: Vec::new(),
        evacuations: Vec::new(),
    };
    let mut current = tree.clone();
    let mut map: Vec<usize> = (0..tree.len()).collect();
    let mut set = tokens.clone();

    while !set.is_empty() {
        if current.len() < 2 {
            return Err(Error::NotFeasible(format!(
                "token on {} is rigid",
                map[set.members()[0]]
            )));
        }
        let v = current.find_safe_leaf()?;
        let mut board = TokenBoard::new(&current, &set);
        let mut local = Vec::new();
        route_on_board(&current, &mut board, v, &mut local, &mut out.evacuations)?;
        out.costs.push(local.len());
        out.settled.push(map[v]);
        out.moves
            .extend(local.iter().map(|m| Move::new(map[m.from], map[m.to])));

        let remaining = board.to_set().without(v);
        let u = current.neighbor(v, 0);
        let heavy = current
            .neighbors(u)
            .find(|&w| current.degree(w) > 1);
        let Some(w) = heavy else {
            if !remaining.is_empty() {
                return Err(Error::NotFeasible(format!(
                    "token on {} is stranded on a leaf next to {}",
                    map[remaining.members()[0]],
                    map[u]
                )));
            }
            break;
        };
        let mut keep = current.subtree_vertices(SubtreeRef::new(w, u))?;
        keep.sort_unstable();
        let mut next_set = Vec::with_capacity(remaining.len());
        for x in remaining.iter() {
            match keep.binary_search(&x) {
                Ok(local_id) => next_set.push(local_id),
                Err(_) => {
                    return Err(Error::NotFeasible(format!(
                        "token on {} is stranded on a leaf next to {}",
                        map[x], map[u]
                    )))
                }
            }
        }
        let (shrunk, sub_map) = current.induced(&keep)?;
        map = sub_map.into_iter().map(|x| map[x]).collect();
        current = shrunk;
        set = IndependentSet::from_sorted_unchecked(next_set);
    }
    Ok(out)
}

/// Slides one closest token onto the safe leaf `v`.
///
/// Every token of `i` must be movable in `t`. Returns the slides and the
/// resulting configuration; the plan is empty when `v` already holds a token.
pub fn route_token_to_leaf(t: &Tree, i: &IndependentSet, v: usize) -> Result<(Plan, IndependentSet)> {
    t.check_vertex(v)?;
    if i.is_empty() {
        return Err(Error::NoTokens);
    }
    let report = compute_rigid_set(t, i)?;
    if let Some(r) = report.rigid.iter().next() {
        return Err(Error::NotFeasible(format!("token on {r} is rigid")));
    }
    let mut board = TokenBoard::new(t, i);
    let mut moves = Vec::new();
    route_on_board(t, &mut board, v, &mut moves, &mut Vec::new())?;
    Ok((Plan::new(moves), board.to_set()))
}

fn route_on_board(
    t: &Tree,
    board: &mut TokenBoard<'_>,
    v: usize,
    moves: &mut Vec<Move>,
    log: &mut Vec<EvacuationRecord>,
) -> Result<()> {
    if !t.is_safe_leaf(v) {
        return Err(Error::NotSafeLeaf(v));
    }
    if board.is_occupied(v) {
        return Ok(());
    }
    let (dist, parent) = t.bfs(v);
    let closest = (0..t.len())
        .filter(|&x| board.is_occupied(x))
        .min_by_key(|&x| (dist[x], x))
        .ok_or(Error::NoTokens)?;
    // the path vertex next to the closest tokens
    let gate = parent[closest];
    let candidates: Vec<usize> = t
        .neighbors(gate)
        .filter(|&x| board.is_occupied(x))
        .collect();

    let mut stuck = candidates
        .iter()
        .copied()
        .filter(|&x| rigid_below_on_board(t, board, SubtreeRef::new(x, gate)));
    let chosen = match (stuck.next(), stuck.next()) {
        (Some(a), Some(b)) => {
            return Err(Error::NotFeasible(format!(
                "tokens on {a} and {b} both block {gate}; some token is rigid"
            )))
        }
        (Some(a), None) => a,
        (None, _) => candidates[0],
    };

    for &other in candidates.iter().filter(|&&x| x != chosen) {
        evacuate_on_board(t, board, SubtreeRef::new(other, gate), moves, log)?;
    }
    let mut at = chosen;
    let mut next = gate;
    loop {
        let m = Move::new(at, next);
        board.slide(m)?;
        moves.push(m);
        if next == v {
            break;
        }
        at = next;
        next = parent[next];
    }
    Ok(())
}

fn rigid_below_on_board(t: &Tree, board: &TokenBoard<'_>, s: SubtreeRef) -> bool {
    let (sub, map) = t.subtree_unchecked(s);
    let mut tokens: Vec<bool> = map.iter().map(|&x| board.is_occupied(x)).collect();
    eliminate(&sub, &mut tokens);
    tokens[0]
}

/// Moves the token off `s.root` using only slides inside the subtree,
/// never touching tokens outside it. Emits at most `|subtree|` slides.
pub fn evacuate_subtree(t: &Tree, i: &IndependentSet, s: SubtreeRef) -> Result<(Plan, IndependentSet)> {
    t.check_subtree(s)?;
    for v in i.iter() {
        t.check_vertex(v)?;
    }
    let mut board = TokenBoard::new(t, i);
    let mut moves = Vec::new();
    evacuate_on_board(t, &mut board, s, &mut moves, &mut Vec::new())?;
    Ok((Plan::new(moves), board.to_set()))
}

fn evacuate_on_board(
    t: &Tree,
    board: &mut TokenBoard<'_>,
    s: SubtreeRef,
    moves: &mut Vec<Move>,
    log: &mut Vec<EvacuationRecord>,
) -> Result<()> {
    t.check_subtree(s)?;
    if !board.is_occupied(s.root) {
        return Err(Error::NoTokenAtRoot(s.root));
    }
    // local ids are a preorder from the root: children have larger ids and
    // appear in ascending order of their original ids
    let (sub, map) = t.subtree_unchecked(s);
    let tokens: Vec<bool> = map.iter().map(|&x| board.is_occupied(x)).collect();
    let rigid = rigidity_below(&sub, &tokens);
    if rigid[0] {
        return Err(Error::RootIsRigid(s.root));
    }

    let before = moves.len();
    enum Step {
        Expand(usize),
        Slide(usize, usize),
    }
    let mut stack = vec![Step::Expand(0)];
    while let Some(step) = stack.pop() {
        match step {
            Step::Expand(x) => {
                let escape = sub
                    .neighbors(x)
                    .filter(|&y| y > x)
                    .find(|&y| {
                        sub.neighbors(y)
                            .all(|g| g < y || !tokens[g] || !rigid[g])
                    })
                    .ok_or(Error::RootIsRigid(map[x]))?;
                stack.push(Step::Slide(x, escape));
                let blockers: Vec<usize> = sub
                    .neighbors(escape)
                    .filter(|&g| g > escape && tokens[g])
                    .collect();
                stack.extend(blockers.into_iter().rev().map(Step::Expand));
            }
            Step::Slide(x, y) => {
                let m = Move::new(map[x], map[y]);
                board.slide(m)?;
                moves.push(m);
            }
        }
    }

    let record = EvacuationRecord {
        moves: moves.len() - before,
        subtree_size: sub.len(),
    };
    EVACUATIONS.fetch_add(1, Ordering::Relaxed);
    if record.moves > record.subtree_size {
        EVACUATION_OVERRUNS.fetch_add(1, Ordering::Relaxed);
    }
    log.push(record);
    Ok(())
}
