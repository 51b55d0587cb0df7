//! Instance generators: the quadratic path family, Prüfer-coded random and
//! exhaustive labeled trees, and random token configurations.
//!
//! Randomness comes from a seeded ChaCha8 stream, so output is stable across
//! platforms and releases of this crate.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decision::decide;
use crate::error::{Error, Result};
use crate::independence::{IndependentSet, Instance, Move, TokenBoard};
use crate::tree::Tree;

/// Largest `n` accepted by [`enumerate_trees`] (`8^6 = 262144` trees).
pub const MAX_ENUMERATION: usize = 8;

/// Decodes a Prüfer sequence of length `n - 2` into its labeled tree.
pub fn prufer_decode(n: usize, code: &[usize]) -> Result<Tree> {
    if n < 2 {
        if !code.is_empty() {
            return Err(Error::NotATree(format!("Prüfer code for {n} vertices must be empty")));
        }
        return Ok(Tree::from_edges_unchecked(n, &[]));
    }
    if code.len() != n - 2 {
        return Err(Error::NotATree(format!(
            "Prüfer code for {n} vertices needs {} entries, got {}",
            n - 2,
            code.len()
        )));
    }
    let mut degree = vec![1usize; n];
    for &x in code {
        if x >= n {
            return Err(Error::InvalidVertex { vertex: x, n });
        }
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = (0..n).find(|&v| degree[v] == 1).unwrap();
    let mut leaf = ptr;
    for &x in code {
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Ok(Tree::from_edges_unchecked(n, &edges))
}

/// The Prüfer sequence of `t` (inverse of [`prufer_decode`]).
pub fn prufer_encode(t: &Tree) -> Vec<usize> {
    let n = t.len();
    if n < 3 {
        return Vec::new();
    }
    // parents when rooted at n - 1
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![n - 1];
    let mut seen = vec![false; n];
    seen[n - 1] = true;
    while let Some(v) = stack.pop() {
        for w in t.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut code = Vec::with_capacity(n - 2);
    let mut ptr = (0..n).find(|&v| degree[v] == 1).unwrap();
    let mut leaf = ptr;
    for _ in 0..n - 2 {
        let next = parent[leaf];
        code.push(next);
        degree[next] -= 1;
        if degree[next] == 1 && next < ptr {
            leaf = next;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    code
}

/// Every labeled tree on `n` vertices, once each, in lexicographic order of
/// Prüfer codes.
pub fn enumerate_trees(n: usize) -> Result<TreeEnumeration> {
    if n == 0 || n > MAX_ENUMERATION {
        return Err(Error::TooLarge {
            n,
            cap: MAX_ENUMERATION,
        });
    }
    Ok(TreeEnumeration {
        n,
        code: vec![0; n.saturating_sub(2)],
        done: false,
    })
}

/// Number of labeled trees on `n` vertices, `n^(n-2)`.
pub fn labeled_tree_count(n: usize) -> usize {
    match n {
        0 => 0,
        1 => 1,
        _ => n.pow((n - 2) as u32),
    }
}

#[derive(Debug, Clone)]
pub struct TreeEnumeration {
    n: usize,
    code: Vec<usize>,
    done: bool,
}

impl Iterator for TreeEnumeration {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.done {
            return None;
        }
        let tree = prufer_decode(self.n, &self.code).expect("codes stay in range");
        // odometer, last digit fastest
        self.done = true;
        for digit in self.code.iter_mut().rev() {
            *digit += 1;
            if *digit < self.n {
                self.done = false;
                break;
            }
            *digit = 0;
        }
        Some(tree)
    }
}

/// The path on `8k` vertices with tokens on `0, 2, ..., 2k-2` and target
/// `6k+1, 6k+3, ..., 8k-1`. Every token must travel `6k+1` edges.
pub fn gen_path_family(k: usize) -> Result<Instance> {
    if k == 0 {
        return Err(Error::InvalidK(k));
    }
    let n = 8 * k;
    let start = (0..k).map(|j| 2 * j);
    let target = (0..k).map(|j| 6 * k + 1 + 2 * j);
    Instance::new(Tree::path(n), start, target)
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_tree(n: usize, rng: &mut impl Rng) -> Tree {
    if n < 2 {
        return Tree::from_edges_unchecked(n, &[]);
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(n, &code).expect("random code is in range")
}

/// A uniformly random labeled tree on `n` vertices.
pub fn gen_random_tree(n: usize, seed: u64) -> Tree {
    random_tree(n, &mut rng_for(seed))
}

/// A maximum independent set, taking vertices greedily from the leaves up.
pub fn maximum_independent_set(t: &Tree) -> IndependentSet {
    let n = t.len();
    if n == 0 {
        return IndependentSet::empty();
    }
    let (_, parent) = t.bfs(0);
    let mut order = Vec::with_capacity(n);
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        order.extend(t.neighbors(v).filter(|&w| parent[w] == v && w != 0));
    }
    let mut taken = vec![false; n];
    let mut child_taken = vec![false; n];
    for &v in order.iter().rev() {
        if !child_taken[v] {
            taken[v] = true;
            if v != 0 {
                child_taken[parent[v]] = true;
            }
        }
    }
    IndependentSet::from_mask(&taken)
}

/// A random independent set of exactly `k` vertices, or `None` if the tree
/// has none that large.
pub fn random_independent_set(t: &Tree, k: usize, rng: &mut impl Rng) -> Option<IndependentSet> {
    let n = t.len();
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..16 {
        order.shuffle(rng);
        let mut blocked = vec![false; n];
        let mut chosen = Vec::with_capacity(k);
        for &v in &order {
            if chosen.len() == k {
                break;
            }
            if !blocked[v] {
                chosen.push(v);
                blocked[v] = true;
                for w in t.neighbors(v) {
                    blocked[w] = true;
                }
            }
        }
        if chosen.len() == k {
            chosen.sort_unstable();
            return Some(IndependentSet::from_sorted_unchecked(chosen));
        }
    }
    // Greedy keeps falling short near the independence number; fall back to
    // a random k-subset of a maximum independent set.
    let best = maximum_independent_set(t);
    if best.len() < k {
        return None;
    }
    let mut chosen: Vec<usize> = best.into_vec();
    chosen.shuffle(rng);
    chosen.truncate(k);
    chosen.sort_unstable();
    Some(IndependentSet::from_sorted_unchecked(chosen))
}

/// A random tree with two independently sampled `k`-token configurations.
pub fn gen_random_instance(n: usize, k: usize, seed: u64) -> Result<Instance> {
    let mut rng = rng_for(seed);
    random_instance(n, k, &mut rng)
}

fn random_instance(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let tree = random_tree(n, rng);
    let start = random_independent_set(&tree, k, rng).ok_or(Error::Infeasible { n, k })?;
    let target = random_independent_set(&tree, k, rng).ok_or(Error::Infeasible { n, k })?;
    Instance::from_sets(tree, start, target)
}

/// Applies up to `steps` random legal slides to `set`.
pub fn random_walk(t: &Tree, set: &IndependentSet, steps: usize, rng: &mut impl Rng) -> IndependentSet {
    if set.is_empty() {
        return set.clone();
    }
    let mut board = TokenBoard::new(t, set);
    let mut tokens = set.members().to_vec();
    let mut done = 0;
    for _ in 0..steps.saturating_mul(20) {
        if done == steps {
            break;
        }
        let slot = rng.gen_range(0..tokens.len());
        let from = tokens[slot];
        let degree = t.degree(from);
        if degree == 0 {
            continue;
        }
        let to = t.neighbor(from, rng.gen_range(0..degree));
        if board.slide(Move::new(from, to)).is_ok() {
            tokens[slot] = to;
            done += 1;
        }
    }
    board.to_set()
}

/// A random yes-instance: two sampled configurations when they happen to
/// be mutually reachable, otherwise the start and a random walk from it.
pub fn gen_random_yes_instance(n: usize, k: usize, seed: u64) -> Result<Instance> {
    let mut rng = rng_for(seed);
    let inst = random_instance(n, k, &mut rng)?;
    if decide(&inst).is_yes() {
        return Ok(inst);
    }
    let target = random_walk(inst.tree(), inst.start(), 4 * n, &mut rng);
    let start = inst.start().clone();
    Instance::from_sets(inst.tree().clone(), start, target)
}

/// What `gen` can produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSpec {
    PathFamily { k: usize },
    RandomTree { n: usize, seed: u64 },
    ExhaustiveTrees { n: usize },
    RandomInstance { n: usize, tokens: usize, seed: u64 },
}

impl GeneratorSpec {
    /// Generated instances in order. Bare trees come with empty token sets.
    pub fn instances(self) -> Result<Box<dyn Iterator<Item = Instance>>> {
        let bare = |t: Tree| Instance::from_sets(t, IndependentSet::empty(), IndependentSet::empty());
        Ok(match self {
            GeneratorSpec::PathFamily { k } => Box::new(std::iter::once(gen_path_family(k)?)),
            GeneratorSpec::RandomTree { n, seed } => {
                Box::new(std::iter::once(bare(gen_random_tree(n, seed))?))
            }
            GeneratorSpec::ExhaustiveTrees { n } => {
                Box::new(enumerate_trees(n)?.map(move |t| bare(t).expect("empty sets are valid")))
            }
            GeneratorSpec::RandomInstance { n, tokens, seed } => {
                Box::new(std::iter::once(gen_random_instance(n, tokens, seed)?))
            }
        })
    }
}
