//! Token configurations and the slide relation.
//!
//! Tokens are unlabeled: a configuration is just the sorted set of occupied
//! vertices, and a [`Move`] names an edge, never a token.

use std::fmt;

use crate::error::{Error, Result};
use crate::tree::Tree;

/// A set of pairwise non-adjacent vertices, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndependentSet {
    members: Vec<usize>,
}

impl IndependentSet {
    /// Validates `vertices` against `tree`. Order does not matter.
    pub fn new(tree: &Tree, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = vertices.into_iter().collect();
        members.sort_unstable();
        for &v in &members {
            tree.check_vertex(v)?;
        }
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        let set = IndependentSet { members };
        set.check_independent(tree)?;
        Ok(set)
    }

    pub fn empty() -> Self {
        IndependentSet::default()
    }

    /// Wraps an already sorted, already independent vertex list.
    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        IndependentSet { members }
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        IndependentSet {
            members: (0..mask.len()).filter(|&v| mask[v]).collect(),
        }
    }

    fn check_independent(&self, tree: &Tree) -> Result<()> {
        for &u in &self.members {
            for w in tree.neighbors(u) {
                if w > u && self.contains(w) {
                    return Err(Error::NotIndependent(u, w));
                }
            }
        }
        Ok(())
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// Membership bitmap over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.members {
            mask[v] = true;
        }
        mask
    }

    /// This set with `v` removed (removal keeps independence).
    pub fn without(&self, v: usize) -> Self {
        IndependentSet {
            members: self.members.iter().copied().filter(|&x| x != v).collect(),
        }
    }

    /// Members that are also in `other`.
    pub fn intersection(&self, other: &IndependentSet) -> Self {
        IndependentSet {
            members: self.iter().filter(|&v| other.contains(v)).collect(),
        }
    }

    /// Members that are not in `other`.
    pub fn difference(&self, other: &IndependentSet) -> Self {
        IndependentSet {
            members: self.iter().filter(|&v| !other.contains(v)).collect(),
        }
    }
}

impl fmt::Display for IndependentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Slide the token on `from` along the edge to `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub from: usize,
    pub to: usize,
}

impl Move {
    pub fn new(from: usize, to: usize) -> Self {
        Move { from, to }
    }

    pub fn reversed(self) -> Self {
        Move {
            from: self.to,
            to: self.from,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.from, self.to)
    }
}

impl From<(usize, usize)> for Move {
    fn from((from, to): (usize, usize)) -> Self {
        Move { from, to }
    }
}

/// An ordered list of slides. A plan with `m` moves describes a
/// reconfiguration sequence of `m + 1` independent sets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Plan {
    pub moves: Vec<Move>,
}

impl Plan {
    pub fn new(moves: Vec<Move>) -> Self {
        Plan { moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn sequence_length(&self) -> usize {
        self.moves.len() + 1
    }
}

impl FromIterator<Move> for Plan {
    fn from_iter<I: IntoIterator<Item = Move>>(iter: I) -> Self {
        Plan {
            moves: iter.into_iter().collect(),
        }
    }
}

/// Reverses a plan: if `p` takes `A` to `B`, the result takes `B` to `A`.
pub fn reverse_plan(p: &Plan) -> Plan {
    p.moves.iter().rev().map(|m| m.reversed()).collect()
}

/// A tree with a start and a target configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    tree: Tree,
    start: IndependentSet,
    target: IndependentSet,
}

impl Instance {
    pub fn new(
        tree: Tree,
        start: impl IntoIterator<Item = usize>,
        target: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let start = IndependentSet::new(&tree, start)?;
        let target = IndependentSet::new(&tree, target)?;
        Ok(Instance { tree, start, target })
    }

    /// Builds an instance from sets that were validated against `tree`.
    pub fn from_sets(tree: Tree, start: IndependentSet, target: IndependentSet) -> Result<Self> {
        for set in [&start, &target] {
            for v in set.iter() {
                tree.check_vertex(v)?;
            }
            set.check_independent(&tree)?;
        }
        Ok(Instance { tree, start, target })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn start(&self) -> &IndependentSet {
        &self.start
    }

    pub fn target(&self) -> &IndependentSet {
        &self.target
    }

    /// The same tree with start and target exchanged.
    pub fn swapped(&self) -> Instance {
        Instance {
            tree: self.tree.clone(),
            start: self.target.clone(),
            target: self.start.clone(),
        }
    }
}

/// Mutable token placement used to replay and build plans in `O(1)` per
/// slide (plus the degree of the destination).
#[derive(Debug, Clone)]
pub struct TokenBoard<'t> {
    tree: &'t Tree,
    occupied: Vec<bool>,
}

impl<'t> TokenBoard<'t> {
    pub fn new(tree: &'t Tree, set: &IndependentSet) -> Self {
        TokenBoard {
            tree,
            occupied: set.mask(tree.len()),
        }
    }

    pub fn is_occupied(&self, v: usize) -> bool {
        self.occupied[v]
    }

    pub fn check(&self, m: Move) -> Result<()> {
        let t = self.tree;
        t.check_vertex(m.from)?;
        t.check_vertex(m.to)?;
        if !self.occupied[m.from] {
            return Err(Error::NoTokenAtSource(m.from));
        }
        if self.occupied[m.to] {
            return Err(Error::DestinationOccupied(m.to));
        }
        if !t.has_edge(m.from, m.to) {
            return Err(Error::NotAnEdge(m.from, m.to));
        }
        if let Some(blocker) = t
            .neighbors(m.to)
            .find(|&x| x != m.from && self.occupied[x])
        {
            return Err(Error::IndependenceViolated { to: m.to, blocker });
        }
        Ok(())
    }

    pub fn slide(&mut self, m: Move) -> Result<()> {
        self.check(m)?;
        self.occupied[m.from] = false;
        self.occupied[m.to] = true;
        Ok(())
    }

    pub fn to_set(&self) -> IndependentSet {
        IndependentSet::from_mask(&self.occupied)
    }
}

/// Applies one slide, returning the new configuration.
pub fn apply_move(t: &Tree, i: &IndependentSet, m: Move) -> Result<IndependentSet> {
    let mut board = TokenBoard::new(t, i);
    board.slide(m)?;
    Ok(board.to_set())
}

/// Why a plan failed to validate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationReason {
    IllegalMove(Error),
    /// Every move was legal but the final configuration is not the target.
    EndsAwayFromTarget(IndependentSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Index of the failing move; equals the plan length for
    /// [`ViolationReason::EndsAwayFromTarget`].
    pub index: usize,
    pub reason: ViolationReason,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.reason {
            ViolationReason::IllegalMove(e) => write!(f, "violation at move {}: {e}", self.index),
            ViolationReason::EndsAwayFromTarget(reached) => write!(
                f,
                "violation at move {}: plan ends at {reached}, not the target",
                self.index
            ),
        }
    }
}

/// Replays `p` from the instance start and checks that every step is a
/// legal slide and that the last configuration is the target.
pub fn verify_plan(inst: &Instance, p: &Plan) -> std::result::Result<(), Violation> {
    let mut board = TokenBoard::new(inst.tree(), inst.start());
    for (index, &m) in p.moves.iter().enumerate() {
        board.slide(m).map_err(|e| Violation {
            index,
            reason: ViolationReason::IllegalMove(e),
        })?;
    }
    let reached = board.to_set();
    if &reached != inst.target() {
        return Err(Violation {
            index: p.len(),
            reason: ViolationReason::EndsAwayFromTarget(reached),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(t: &Tree, v: &[usize]) -> IndependentSet {
        IndependentSet::new(t, v.iter().copied()).unwrap()
    }

    fn plan(moves: &[(usize, usize)]) -> Plan {
        moves.iter().map(|&m| Move::from(m)).collect()
    }

    #[test]
    fn independent_set_validation() {
        let p3 = Tree::path(3);
        assert_eq!(set(&p3, &[2, 0]).members(), &[0, 2]);
        assert_eq!(IndependentSet::new(&p3, [0, 1]), Err(Error::NotIndependent(0, 1)));
        assert_eq!(IndependentSet::new(&p3, [0, 0]), Err(Error::DuplicateVertex(0)));
        assert!(matches!(IndependentSet::new(&p3, [5]), Err(Error::InvalidVertex { .. })));
    }

    #[test]
    fn apply_move_cases() {
        let p3 = Tree::path(3);
        assert_eq!(apply_move(&p3, &set(&p3, &[0]), Move::new(0, 1)).unwrap(), set(&p3, &[1]));
        assert_eq!(
            apply_move(&p3, &set(&p3, &[0, 2]), Move::new(0, 1)),
            Err(Error::IndependenceViolated { to: 1, blocker: 2 })
        );
        let p4 = Tree::path(4);
        assert_eq!(
            apply_move(&p4, &set(&p4, &[0, 2]), Move::new(2, 3)).unwrap(),
            set(&p4, &[0, 3])
        );
        assert_eq!(
            apply_move(&p4, &set(&p4, &[0, 2]), Move::new(1, 0)),
            Err(Error::NoTokenAtSource(1))
        );
        assert_eq!(
            apply_move(&p4, &set(&p4, &[0, 3]), Move::new(0, 3)),
            Err(Error::DestinationOccupied(3))
        );
        assert_eq!(
            apply_move(&p4, &set(&p4, &[0]), Move::new(0, 2)),
            Err(Error::NotAnEdge(0, 2))
        );
    }

    #[test]
    fn verify_plan_cases() {
        let p4 = Tree::path(4);
        let inst = Instance::new(p4.clone(), [0, 2], [1, 3]).unwrap();
        assert_eq!(verify_plan(&inst, &plan(&[(2, 3), (0, 1)])), Ok(()));
        let err = verify_plan(&inst, &plan(&[(0, 1), (2, 3)])).unwrap_err();
        assert_eq!(err.index, 0);
        assert_eq!(
            err.reason,
            ViolationReason::IllegalMove(Error::IndependenceViolated { to: 1, blocker: 2 })
        );
        let short = verify_plan(&inst, &plan(&[(2, 3)])).unwrap_err();
        assert_eq!(short.index, 1);
        assert!(matches!(short.reason, ViolationReason::EndsAwayFromTarget(_)));

        let same = Instance::new(p4, [1, 3], [1, 3]).unwrap();
        assert_eq!(verify_plan(&same, &Plan::default()), Ok(()));
    }

    #[test]
    fn reversing_plans() {
        assert_eq!(reverse_plan(&plan(&[(2, 3), (0, 1)])), plan(&[(1, 0), (3, 2)]));
        assert_eq!(reverse_plan(&Plan::default()), Plan::default());
        assert_eq!(reverse_plan(&plan(&[(0, 1)])), plan(&[(1, 0)]));

        let inst = Instance::new(Tree::path(4), [0, 2], [1, 3]).unwrap();
        let p = plan(&[(2, 3), (0, 1)]);
        assert_eq!(verify_plan(&inst.swapped(), &reverse_plan(&p)), Ok(()));
    }

    #[test]
    fn slides_preserve_size() {
        let t = Tree::star(4);
        let i = set(&t, &[1, 2]);
        let j = apply_move(&t, &set(&t, &[1]), Move::new(1, 0)).unwrap();
        assert_eq!(j.len(), 1);
        assert_eq!(i.len(), 2);
    }
}
