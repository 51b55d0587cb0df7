//! Rigid tokens.
//!
//! A token is rigid when it sits on the same vertex in every configuration
//! reachable from the current one. The rigid set is found by elimination:
//! a token with a neighbor `w` whose only token-neighbor is that token can
//! slide to `w` right away, so it is movable; dropping it never changes the
//! status of the others, so drop it and repeat. What survives is rigid.

use crate::error::{Error, Result};
use crate::independence::IndependentSet;
use crate::tree::{SubtreeRef, Tree};

/// Split of a configuration into rigid and movable tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidReport {
    pub rigid: IndependentSet,
    pub movable: IndependentSet,
}

/// Runs the elimination in place. On return `tokens` holds only the rigid
/// tokens. Returns the number of adjacency entries scanned.
pub(crate) fn eliminate(t: &Tree, tokens: &mut [bool]) -> usize {
    let n = t.len();
    assert!(n <= u32::MAX as usize, "vertex ids must fit in 32 bits");
    let mut work = 0usize;
    // per vertex: how many token neighbors are still in play, and the xor of
    // their ids, which names the last one once the count drops to one
    // gathered per vertex so the adjacency is streamed in order and only the
    // byte-sized token mask is read out of order
    let mut watch: Vec<(u32, u32)> = (0..n)
        .map(|w| {
            work += t.degree(w);
            t.neighbors(w)
                .filter(|&x| tokens[x])
                .fold((0, 0), |(count, xor), x| (count + 1, xor ^ x as u32))
        })
        .collect();

    // seeds are the sole token neighbors of vertices that see exactly one
    // token; mark them in one sweep, enqueue them smallest first in another
    let mut seed = vec![false; n];
    for &(count, last) in &watch {
        work += 1;
        if count == 1 {
            seed[last as usize] = true;
        }
    }
    // a token leaves `tokens` when it is queued
    let mut queue: Vec<u32> = Vec::new();
    for u in 0..n {
        if seed[u] {
            tokens[u] = false;
            queue.push(u as u32);
        }
    }

    let mut head = 0;
    while head < queue.len() {
        let u = queue[head] as usize;
        head += 1;
        work += t.degree(u);
        for w in t.neighbors(u) {
            let entry = &mut watch[w];
            entry.0 -= 1;
            entry.1 ^= u as u32;
            if entry.0 == 1 {
                let last = entry.1 as usize;
                if tokens[last] {
                    tokens[last] = false;
                    queue.push(last as u32);
                }
            }
        }
    }
    work
}

fn validated_mask(t: &Tree, i: &IndependentSet) -> Result<Vec<bool>> {
    for v in i.iter() {
        t.check_vertex(v)?;
    }
    let mask = i.mask(t.len());
    for u in i.iter() {
        if let Some(w) = t.neighbors(u).find(|&w| mask[w]) {
            return Err(Error::NotIndependent(u.min(w), u.max(w)));
        }
    }
    Ok(mask)
}

/// Rigid tokens of a set already known to be independent in `t`.
pub(crate) fn rigid_set_unchecked(t: &Tree, i: &IndependentSet) -> IndependentSet {
    let mut tokens = i.mask(t.len());
    eliminate(t, &mut tokens);
    IndependentSet::from_mask(&tokens)
}

/// Rigid and movable tokens of `i` in `t`, in linear time.
pub fn compute_rigid_set(t: &Tree, i: &IndependentSet) -> Result<RigidReport> {
    rigid_set_with_work(t, i).map(|(report, _)| report)
}

/// Like [`compute_rigid_set`], also returning how many adjacency entries the
/// elimination scanned. The count never exceeds `6 * n`.
pub fn rigid_set_with_work(t: &Tree, i: &IndependentSet) -> Result<(RigidReport, usize)> {
    let mut tokens = validated_mask(t, i)?;
    let work = eliminate(t, &mut tokens);
    let rigid = IndependentSet::from_mask(&tokens);
    let movable = i.difference(&rigid);
    Ok((RigidReport { rigid, movable }, work))
}

/// Whether the token on `s.root` is rigid when only the subtree `T_v^u`
/// and the tokens inside it are considered. Costs `O(|T_v^u| log |i|)`.
pub fn is_rigid_in_subtree(t: &Tree, i: &IndependentSet, s: SubtreeRef) -> Result<bool> {
    t.check_subtree(s)?;
    if !i.contains(s.root) {
        return Err(Error::NoTokenAtRoot(s.root));
    }
    let (sub, map) = t.subtree_unchecked(s);
    let mut tokens: Vec<bool> = map.iter().map(|&v| i.contains(v)).collect();
    eliminate(&sub, &mut tokens);
    Ok(tokens[0])
}

/// For a tree labeled in preorder from root `0` (as produced by
/// [`Tree::subtree`]), reports for every vertex `x` whether its token is
/// rigid within the subtree hanging below `x`. Vertices without a token map
/// to `false`.
///
/// This evaluates the recursive characterization bottom-up: `x` is rigid
/// below itself iff every child `c` has a child `g` whose token is rigid
/// below `g`. A childless token vertex is rigid.
pub(crate) fn rigidity_below(sub: &Tree, tokens: &[bool]) -> Vec<bool> {
    let n = sub.len();
    let mut rigid = vec![false; n];
    for x in (0..n).rev() {
        if !tokens[x] {
            continue;
        }
        rigid[x] = sub
            .neighbors(x)
            .filter(|&c| c > x)
            .all(|c| sub.neighbors(c).any(|g| g > c && tokens[g] && rigid[g]));
    }
    rigid
}

/// The forest left after deleting the closed neighborhoods of rigid tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestDecomposition {
    /// Deleted vertices, ascending.
    pub deleted: Vec<usize>,
    /// Vertex sets of the remaining trees, each ascending, ordered by their
    /// smallest vertex.
    pub components: Vec<Vec<usize>>,
    label: Vec<u32>,
}

const DELETED: u32 = u32::MAX;
const UNSEEN: u32 = u32::MAX - 1;

impl ForestDecomposition {
    /// Index of the component containing `v`, or `None` when `v` was deleted.
    pub fn component_of(&self, v: usize) -> Option<usize> {
        match self.label.get(v) {
            Some(&id) if id != DELETED => Some(id as usize),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Token count of `set` in every component.
    pub fn token_counts(&self, set: &IndependentSet) -> Vec<usize> {
        let mut counts = vec![0; self.components.len()];
        for v in set.iter() {
            if let Some(j) = self.component_of(v) {
                counts[j] += 1;
            }
        }
        counts
    }

    /// Component `j` as a standalone tree with order-preserving local ids.
    pub fn component_tree(&self, t: &Tree, j: usize) -> (Tree, Vec<usize>) {
        t.induced(&self.components[j])
            .expect("forest components are connected")
    }
}

/// Deletes `N[rigid]` and splits what remains into connected components.
pub fn forest_after_deletion(t: &Tree, rigid: &IndependentSet) -> ForestDecomposition {
    let n = t.len();
    assert!(n < UNSEEN as usize, "vertex ids must fit in 32 bits");
    let mut label = vec![UNSEEN; n];
    for r in rigid.iter() {
        label[r] = DELETED;
        for w in t.neighbors(r) {
            label[w] = DELETED;
        }
    }
    let deleted: Vec<usize> = (0..n).filter(|&v| label[v] == DELETED).collect();

    // breadth-first, so the next vertex to expand never waits on the
    // current one's memory loads
    let mut count = 0u32;
    let mut queue: Vec<u32> = Vec::with_capacity(n - deleted.len());
    for s in 0..n {
        if label[s] != UNSEEN {
            continue;
        }
        label[s] = count;
        let mut head = queue.len();
        queue.push(s as u32);
        while head < queue.len() {
            let v = queue[head] as usize;
            head += 1;
            if let Some(&ahead) = queue.get(head + 8) {
                t.prefetch_neighbors(ahead as usize);
            }
            for w in t.neighbors(v) {
                if label[w] == UNSEEN {
                    label[w] = count;
                    queue.push(w as u32);
                }
            }
        }
        count += 1;
    }
    // an ascending scan keeps every component sorted
    let mut components = vec![Vec::new(); count as usize];
    for (v, &id) in label.iter().enumerate() {
        if id != DELETED {
            components[id as usize].push(v);
        }
    }
    ForestDecomposition {
        deleted,
        components,
        label,
    }
}
