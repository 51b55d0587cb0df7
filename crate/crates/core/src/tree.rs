//! Immutable trees on vertices `0..n`.
//!
//! Adjacency is stored in compressed-row form with every neighbor list sorted
//! ascending, so iteration order (and with it every tie-break downstream) is a
//! function of the labels alone. All traversals use explicit stacks or queues;
//! paths with millions of vertices are routine inputs.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Largest supported vertex count. Ids and adjacency offsets are stored in
/// 32 bits, which halves the memory traffic of every traversal.
pub const MAX_VERTICES: usize = (u32::MAX / 2) as usize;

/// A tree on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tree {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

/// The neighbors of one vertex, in ascending order.
#[derive(Debug, Clone)]
pub struct Neighbors<'a> {
    ids: std::slice::Iter<'a, u32>,
}

impl Iterator for Neighbors<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        self.ids.next().map(|&w| w as usize)
    }

    #[inline]
    fn size_hint(&self) -> (usize, Option<usize>) {
        self.ids.size_hint()
    }
}

impl DoubleEndedIterator for Neighbors<'_> {
    #[inline]
    fn next_back(&mut self) -> Option<usize> {
        self.ids.next_back().map(|&w| w as usize)
    }
}

impl ExactSizeIterator for Neighbors<'_> {}
impl std::iter::FusedIterator for Neighbors<'_> {}

/// The subtree `T_v^u`: `root` and everything below it when the tree hangs
/// from `excluded_parent`. The parent itself is not part of the subtree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubtreeRef {
    pub root: usize,
    pub excluded_parent: usize,
}

impl SubtreeRef {
    pub fn new(root: usize, excluded_parent: usize) -> Self {
        SubtreeRef {
            root,
            excluded_parent,
        }
    }
}

impl std::fmt::Debug for Tree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Tree")
            .field("n", &self.len())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Builds a tree from an edge list, rejecting anything that is not a tree.
pub fn build_tree(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
    Tree::new(n, edges)
}

impl Tree {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        if n > MAX_VERTICES {
            return Err(Error::NotATree(format!("{n} vertices exceeds the supported {MAX_VERTICES}")));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::InvalidVertex { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::NotATree(format!("self-loop at {u}")));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let expected = n.saturating_sub(1);
        if normalized.len() != expected {
            return Err(Error::NotATree(format!(
                "{} edges on {n} vertices, expected {expected}",
                normalized.len()
            )));
        }
        let tree = Tree::from_edges_unchecked(n, &normalized);
        if n > 0 {
            let reached = tree.bfs_order(0).len();
            if reached != n {
                return Err(Error::NotATree(format!(
                    "disconnected: only {reached} of {n} vertices reachable from 0"
                )));
            }
        }
        Ok(tree)
    }

    /// Builds the adjacency structure without validating tree-ness.
    pub(crate) fn from_edges_unchecked(n: usize, edges: &[(usize, usize)]) -> Tree {
        assert!(n <= MAX_VERTICES, "vertex ids must fit in 32 bits");
        let mut offsets = vec![0u32; n + 1];
        for &(u, v) in edges {
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; offsets[n] as usize];
        for &(u, v) in edges {
            targets[fill[u] as usize] = v as u32;
            fill[u] += 1;
            targets[fill[v] as usize] = u as u32;
            fill[v] += 1;
        }
        for v in 0..n {
            targets[offsets[v] as usize..offsets[v + 1] as usize].sort_unstable();
        }
        Tree { offsets, targets }
    }

    pub fn single_vertex() -> Tree {
        Tree::from_edges_unchecked(1, &[])
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Tree {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Tree::from_edges_unchecked(n, &edges)
    }

    /// A star with center `0` and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Tree {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Tree::from_edges_unchecked(leaves + 1, &edges)
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    fn adjacency(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> Neighbors<'_> {
        Neighbors {
            ids: self.adjacency(v).iter(),
        }
    }

    /// Hints that the adjacency list of `v` is about to be read.
    #[inline]
    pub(crate) fn prefetch_neighbors(&self, v: usize) {
        #[cfg(target_arch = "x86_64")]
        {
            let p = self.targets.as_ptr().wrapping_add(self.offsets[v] as usize);
            // SAFETY: prefetching is a hint and never faults, even on a
            // dangling address
            unsafe { std::arch::x86_64::_mm_prefetch(p as *const i8, std::arch::x86_64::_MM_HINT_T0) };
        }
        #[cfg(not(target_arch = "x86_64"))]
        let _ = v;
    }

    /// The `k`-th smallest neighbor of `v`.
    #[inline]
    pub fn neighbor(&self, v: usize, k: usize) -> usize {
        self.adjacency(v)[k] as usize
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        (self.offsets[v + 1] - self.offsets[v]) as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.len() && v < self.len() && self.adjacency(u).binary_search(&(v as u32)).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.len() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.len(),
            })
        }
    }

    pub(crate) fn check_subtree(&self, s: SubtreeRef) -> Result<()> {
        self.check_vertex(s.root)?;
        self.check_vertex(s.excluded_parent)?;
        if !self.has_edge(s.root, s.excluded_parent) {
            return Err(Error::NotAdjacent(s.root, s.excluded_parent));
        }
        Ok(())
    }

    fn bfs_order(&self, source: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut order = vec![source];
        seen[source] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        order
    }

    /// Breadth-first distances and parents from `source`.
    pub(crate) fn bfs(&self, source: usize) -> (Vec<usize>, Vec<usize>) {
        let n = self.len();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::from([source]);
        dist[source] = 0;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        (dist, parent)
    }

    /// Vertices of `T_v^u` in depth-first preorder, root first.
    pub fn subtree_vertices(&self, s: SubtreeRef) -> Result<Vec<usize>> {
        self.check_subtree(s)?;
        Ok(self.subtree_preorder(s).into_iter().map(|(v, _)| v).collect())
    }

    /// Preorder of `T_v^u` paired with each vertex's parent (the root's
    /// parent is the excluded vertex). Cost is linear in the subtree size.
    pub(crate) fn subtree_preorder(&self, s: SubtreeRef) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut stack = vec![(s.root, s.excluded_parent)];
        while let Some((v, p)) = stack.pop() {
            out.push((v, p));
            for w in self.neighbors(v).rev() {
                if w != p {
                    stack.push((w, v));
                }
            }
        }
        out
    }

    /// Materializes `T_v^u` as its own tree. Local ids follow the preorder of
    /// [`Tree::subtree_vertices`], so the root is local vertex `0`. The second
    /// value maps local ids back to ids in `self`.
    pub fn subtree(&self, s: SubtreeRef) -> Result<(Tree, Vec<usize>)> {
        self.check_subtree(s)?;
        Ok(self.subtree_unchecked(s))
    }

    pub(crate) fn subtree_unchecked(&self, s: SubtreeRef) -> (Tree, Vec<usize>) {
        let order = self.subtree_preorder(s);
        let mut edges = Vec::with_capacity(order.len().saturating_sub(1));
        let mut map = Vec::with_capacity(order.len());
        // A parent always precedes its children in preorder; the stack of
        // open ancestors gives the parent's local id without a global map.
        let mut open: Vec<(usize, usize)> = Vec::new();
        for (local, &(v, p)) in order.iter().enumerate() {
            map.push(v);
            while let Some(&(g, _)) = open.last() {
                if g == p {
                    break;
                }
                open.pop();
            }
            if let Some(&(_, pl)) = open.last() {
                edges.push((pl, local));
            }
            open.push((v, local));
        }
        (Tree::from_edges_unchecked(order.len(), &edges), map)
    }

    /// The subgraph induced by `vertices`, which must be sorted, distinct and
    /// connected. Local ids preserve the relative order of the original ids.
    pub fn induced(&self, vertices: &[usize]) -> Result<(Tree, Vec<usize>)> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotATree("induced vertex list must be sorted and distinct".into()));
        }
        let mut edges = Vec::with_capacity(vertices.len().saturating_sub(1));
        for (lu, &u) in vertices.iter().enumerate() {
            for v in self.neighbors(u) {
                if v > u {
                    if let Ok(lv) = vertices.binary_search(&v) {
                        edges.push((lu, lv));
                    }
                }
            }
        }
        if edges.len() + 1 != vertices.len() && !vertices.is_empty() {
            return Err(Error::NotATree("induced vertex set is disconnected".into()));
        }
        Ok((Tree::from_edges_unchecked(vertices.len(), &edges), vertices.to_vec()))
    }

    /// Number of edges on the unique `v`-`w` path.
    pub fn distance(&self, v: usize, w: usize) -> Result<usize> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        if v == w {
            return Ok(0);
        }
        let mut stack = vec![(v, usize::MAX, 0usize)];
        while let Some((x, p, d)) = stack.pop() {
            if x == w {
                return Ok(d);
            }
            for y in self.neighbors(x) {
                if y != p {
                    stack.push((y, x, d + 1));
                }
            }
        }
        unreachable!("trees are connected")
    }

    /// A leaf is safe when its unique neighbor has at most one neighbor of
    /// degree greater than one.
    pub fn is_safe_leaf(&self, v: usize) -> bool {
        if v >= self.len() || self.degree(v) != 1 {
            return false;
        }
        let u = self.neighbor(v, 0);
        self.neighbors(u).filter(|&w| self.degree(w) > 1).count() <= 1
    }

    /// The smallest-id safe leaf. Every tree with at least two vertices has one.
    pub fn find_safe_leaf(&self) -> Result<usize> {
        let n = self.len();
        if n < 2 {
            return Err(Error::TooSmall(n));
        }
        let heavy: Vec<usize> = (0..n)
            .map(|u| self.neighbors(u).filter(|&w| self.degree(w) > 1).count())
            .collect();
        let leaf = (0..n)
            .find(|&v| self.degree(v) == 1 && heavy[self.neighbor(v, 0)] <= 1)
            .expect("every tree with two or more vertices has a safe leaf");
        Ok(leaf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spider() -> Tree {
        // center 0, legs 0-1-2, 0-3-4, 0-5-6
        Tree::new(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap()
    }

    #[test]
    fn builds_small_trees() {
        let p3 = build_tree(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.len(), 3);
        assert_eq!(p3.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let single = build_tree(1, &[]).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single.edge_count(), 0);
        assert!(build_tree(0, &[]).unwrap().is_empty());
    }

    #[test]
    fn rejects_non_trees() {
        assert!(matches!(
            build_tree(3, &[(0, 1), (1, 2), (0, 2)]),
            Err(Error::NotATree(_))
        ));
        assert!(matches!(build_tree(4, &[(0, 1), (2, 3), (0, 1)]), Err(Error::DuplicateEdge(0, 1))));
        assert!(matches!(build_tree(4, &[(0, 1), (1, 0), (2, 3)]), Err(Error::DuplicateEdge(0, 1))));
        assert!(matches!(
            build_tree(3, &[(0, 1), (1, 3)]),
            Err(Error::InvalidVertex { vertex: 3, n: 3 })
        ));
        assert!(matches!(build_tree(4, &[(0, 1), (2, 3), (3, 2)]), Err(Error::DuplicateEdge(2, 3))));
        // right edge count, but a cycle plus an isolated vertex
        assert!(matches!(
            build_tree(4, &[(0, 1), (1, 2), (2, 0)]),
            Err(Error::NotATree(_))
        ));
        assert!(matches!(build_tree(2, &[(1, 1)]), Err(Error::NotATree(_))));
        assert!(matches!(build_tree(0, &[(0, 0)]), Err(Error::InvalidVertex { .. })));
    }

    #[test]
    fn subtree_views() {
        let p3 = Tree::path(3);
        assert_eq!(p3.subtree_vertices(SubtreeRef::new(0, 1)).unwrap(), vec![0]);
        assert_eq!(p3.subtree_vertices(SubtreeRef::new(2, 1)).unwrap(), vec![2]);
        assert_eq!(p3.subtree_vertices(SubtreeRef::new(1, 0)).unwrap(), vec![1, 2]);
        let star = Tree::star(3);
        assert_eq!(star.subtree_vertices(SubtreeRef::new(0, 1)).unwrap(), vec![0, 2, 3]);
        assert!(matches!(
            p3.subtree_vertices(SubtreeRef::new(0, 2)),
            Err(Error::NotAdjacent(0, 2))
        ));
    }

    #[test]
    fn materialized_subtree_keeps_shape() {
        let t = spider();
        let (sub, map) = t.subtree(SubtreeRef::new(0, 1)).unwrap();
        assert_eq!(map, vec![0, 3, 4, 5, 6]);
        let global: Vec<_> = sub.edges().map(|(a, b)| (map[a], map[b])).collect();
        let mut global_sorted: Vec<_> = global.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        global_sorted.sort();
        assert_eq!(global_sorted, vec![(0, 3), (0, 5), (3, 4), (5, 6)]);
    }

    #[test]
    fn induced_preserves_order() {
        let t = spider();
        let (sub, map) = t.induced(&[0, 1, 2, 5]).unwrap();
        assert_eq!(map, vec![0, 1, 2, 5]);
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (1, 2)]);
        assert!(t.induced(&[2, 4]).is_err());
    }

    #[test]
    fn distances() {
        let p5 = Tree::path(5);
        assert_eq!(p5.distance(0, 4).unwrap(), 4);
        assert_eq!(p5.distance(3, 3).unwrap(), 0);
        assert_eq!(Tree::star(3).distance(1, 2).unwrap(), 2);
        assert!(matches!(p5.distance(0, 9), Err(Error::InvalidVertex { .. })));
    }

    #[test]
    fn safe_leaves() {
        assert_eq!(Tree::path(3).find_safe_leaf().unwrap(), 0);
        assert_eq!(Tree::path(2).find_safe_leaf().unwrap(), 0);
        let s = spider();
        let leaf = s.find_safe_leaf().unwrap();
        assert!([2, 4, 6].contains(&leaf));
        assert_eq!(leaf, 2);
        // P5 plus a pendant 5 on the middle vertex
        let t = Tree::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).unwrap();
        assert!(!t.is_safe_leaf(5));
        assert_eq!(t.find_safe_leaf().unwrap(), 0);
        assert!(matches!(Tree::single_vertex().find_safe_leaf(), Err(Error::TooSmall(1))));
    }

    #[test]
    fn deep_path_traversals_do_not_recurse() {
        let n = 1 << 20;
        let t = Tree::path(n);
        assert_eq!(t.distance(0, n - 1).unwrap(), n - 1);
        assert_eq!(t.subtree_vertices(SubtreeRef::new(1, 0)).unwrap().len(), n - 1);
    }
}
