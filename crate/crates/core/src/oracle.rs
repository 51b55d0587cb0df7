//! Ground truth by exhaustive search over the reconfiguration graph.
//!
//! States are vertex bitmasks, a canonical form for unlabeled tokens. Only
//! meant for small trees: the vertex cap defaults to 16 and can be raised to
//! at most 64.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::independence::{IndependentSet, Instance};
use crate::tree::Tree;

pub const DEFAULT_CAP: usize = 16;
const HARD_CAP: usize = 64;

type Mask = u64;

fn check_cap(t: &Tree, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_CAP);
    if t.len() > cap {
        return Err(Error::TooLarge { n: t.len(), cap });
    }
    Ok(())
}

fn neighbor_masks(t: &Tree) -> Vec<Mask> {
    (0..t.len())
        .map(|v| t.neighbors(v).fold(0, |m, w| m | (1 << w)))
        .collect()
}

fn to_mask(i: &IndependentSet) -> Mask {
    i.iter().fold(0, |m, v| m | (1 << v))
}

fn to_set(mask: Mask) -> IndependentSet {
    let mut members = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        members.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    IndependentSet::from_sorted_unchecked(members)
}

/// Every configuration one slide away from `state`.
fn successors(t: &Tree, nbr: &[Mask], state: Mask, out: &mut Vec<Mask>) {
    out.clear();
    let mut tokens = state;
    while tokens != 0 {
        let u = tokens.trailing_zeros() as usize;
        tokens &= tokens - 1;
        let others = state & !(1 << u);
        for w in t.neighbors(u) {
            if state & (1 << w) == 0 && nbr[w] & others == 0 {
                out.push(others | (1 << w));
            }
        }
    }
}

/// Breadth-first distances from `source` over the configurations it reaches.
fn bfs(t: &Tree, source: Mask) -> HashMap<Mask, usize> {
    let nbr = neighbor_masks(t);
    let mut dist = HashMap::from([(source, 0usize)]);
    let mut queue = VecDeque::from([source]);
    let mut next = Vec::new();
    while let Some(s) = queue.pop_front() {
        let d = dist[&s];
        successors(t, &nbr, s, &mut next);
        for &x in &next {
            dist.entry(x).or_insert_with(|| {
                queue.push_back(x);
                d + 1
            });
        }
    }
    dist
}

/// All configurations reachable from `i`, including `i` itself.
pub fn oracle_reachable(t: &Tree, i: &IndependentSet, cap: usize) -> Result<BTreeSet<IndependentSet>> {
    check_cap(t, cap)?;
    Ok(bfs(t, to_mask(i)).into_keys().map(to_set).collect())
}

pub fn oracle_decide(inst: &Instance, cap: usize) -> Result<bool> {
    Ok(oracle_shortest(inst, cap)?.is_some())
}

/// Tokens that stay put in every reachable configuration.
pub fn oracle_rigid(t: &Tree, i: &IndependentSet, cap: usize) -> Result<IndependentSet> {
    check_cap(t, cap)?;
    let common = bfs(t, to_mask(i)).into_keys().fold(to_mask(i), |acc, s| acc & s);
    Ok(to_set(common))
}

/// Fewest slides from start to target, or `None` when unreachable.
pub fn oracle_shortest(inst: &Instance, cap: usize) -> Result<Option<usize>> {
    check_cap(inst.tree(), cap)?;
    if inst.start().len() != inst.target().len() {
        return Ok(None);
    }
    Ok(bfs(inst.tree(), to_mask(inst.start()))
        .get(&to_mask(inst.target()))
        .copied())
}

/// The full reconfiguration graph for one token count: every independent
/// set of that size, the single-slide edges between them, and a
/// reachability class per state.
#[derive(Debug, Clone)]
pub struct StateSpace {
    pub size: usize,
    states: Vec<Mask>,
    index: HashMap<Mask, usize>,
    edges: Vec<Vec<usize>>,
    class: Vec<usize>,
}

impl StateSpace {
    pub fn build(t: &Tree, size: usize, cap: usize) -> Result<Self> {
        check_cap(t, cap)?;
        let nbr = neighbor_masks(t);
        let mut states = Vec::new();
        enumerate_independent(&nbr, size, 0, 0, &mut states);
        states.sort_unstable();
        let index: HashMap<Mask, usize> = states.iter().enumerate().map(|(k, &s)| (s, k)).collect();

        let mut buf = Vec::new();
        let edges: Vec<Vec<usize>> = states
            .iter()
            .map(|&s| {
                successors(t, &nbr, s, &mut buf);
                let mut adj: Vec<usize> = buf.iter().map(|x| index[x]).collect();
                adj.sort_unstable();
                adj
            })
            .collect();

        let mut class = vec![usize::MAX; states.len()];
        let mut next_class = 0;
        for seed in 0..states.len() {
            if class[seed] != usize::MAX {
                continue;
            }
            class[seed] = next_class;
            let mut stack = vec![seed];
            while let Some(s) = stack.pop() {
                for &x in &edges[s] {
                    if class[x] == usize::MAX {
                        class[x] = next_class;
                        stack.push(x);
                    }
                }
            }
            next_class += 1;
        }
        Ok(StateSpace {
            size,
            states,
            index,
            edges,
            class,
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, k: usize) -> IndependentSet {
        to_set(self.states[k])
    }

    pub fn states(&self) -> impl Iterator<Item = IndependentSet> + '_ {
        self.states.iter().map(|&s| to_set(s))
    }

    pub fn index_of(&self, i: &IndependentSet) -> Option<usize> {
        self.index.get(&to_mask(i)).copied()
    }

    pub fn neighbors(&self, k: usize) -> &[usize] {
        &self.edges[k]
    }

    /// Reachability class id; two states are mutually reachable iff their
    /// classes agree.
    pub fn class_of(&self, k: usize) -> usize {
        self.class[k]
    }

    /// Slide distances from state `k` to every state (`None` if unreachable).
    pub fn distances_from(&self, k: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.states.len()];
        dist[k] = Some(0);
        let mut queue = VecDeque::from([k]);
        while let Some(s) = queue.pop_front() {
            let d = dist[s].unwrap();
            for &x in &self.edges[s] {
                if dist[x].is_none() {
                    dist[x] = Some(d + 1);
                    queue.push_back(x);
                }
            }
        }
        dist
    }

    /// Tokens of state `k` shared by every state in its class.
    pub fn rigid_of(&self, k: usize) -> IndependentSet {
        let c = self.class[k];
        let common = (0..self.states.len())
            .filter(|&s| self.class[s] == c)
            .fold(self.states[k], |acc, s| acc & self.states[s]);
        to_set(common)
    }
}

fn enumerate_independent(nbr: &[Mask], size: usize, from: usize, chosen: Mask, out: &mut Vec<Mask>) {
    if chosen.count_ones() as usize == size {
        out.push(chosen);
        return;
    }
    for v in from..nbr.len() {
        if nbr[v] & chosen == 0 {
            enumerate_independent(nbr, size, v + 1, chosen | (1 << v), out);
        }
    }
}

/// Every independent set of `t`, smallest first, then lexicographic by mask.
pub fn all_independent_sets(t: &Tree, cap: usize) -> Result<Vec<IndependentSet>> {
    check_cap(t, cap)?;
    let nbr = neighbor_masks(t);
    let mut out = Vec::new();
    for size in 0..=t.len() {
        let mut level = Vec::new();
        enumerate_independent(&nbr, size, 0, 0, &mut level);
        if level.is_empty() {
            break;
        }
        level.sort_unstable();
        out.extend(level.into_iter().map(to_set));
    }
    Ok(out)
}
