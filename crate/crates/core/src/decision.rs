//! The linear-time yes/no procedure, with a certificate naming the stage
//! that settled the answer.

use std::fmt;

use crate::independence::{IndependentSet, Instance};
use crate::rigidity::{forest_after_deletion, rigid_set_unchecked, ForestDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

impl Verdict {
    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Start and target hold different numbers of tokens.
    SizeMismatch { start: usize, target: usize },
    /// The rigid tokens differ; rigid tokens never move.
    RigidMismatch {
        start: IndependentSet,
        target: IndependentSet,
    },
    /// Some tree of the forest holds different token counts.
    ComponentCountMismatch {
        component: usize,
        start: usize,
        target: usize,
    },
    /// Every component balances; the forest and per-component counts
    /// are what the planner works from.
    Feasible {
        rigid: IndependentSet,
        forest: ForestDecomposition,
        counts: Vec<usize>,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::SizeMismatch { .. } => "size-mismatch",
            Certificate::RigidMismatch { .. } => "rigid-mismatch",
            Certificate::ComponentCountMismatch { .. } => "component-count-mismatch",
            Certificate::Feasible { .. } => "feasible",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::SizeMismatch { start, target } => {
                write!(f, "size-mismatch: start has {start} tokens, target has {target}")
            }
            Certificate::RigidMismatch { start, target } => {
                write!(f, "rigid-mismatch: rigid tokens {start} in start, {target} in target")
            }
            Certificate::ComponentCountMismatch {
                component,
                start,
                target,
            } => write!(
                f,
                "component-count-mismatch: component {component} holds {start} start tokens and {target} target tokens"
            ),
            Certificate::Feasible { rigid, forest, .. } => write!(
                f,
                "feasible: {} rigid tokens {rigid}, {} components",
                rigid.len(),
                forest.len()
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub certificate: Certificate,
}

impl Decision {
    fn no(certificate: Certificate) -> Self {
        Decision {
            verdict: Verdict::No,
            certificate,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.verdict.is_yes()
    }
}

/// Decides whether the start configuration can be slid into the target.
///
/// Runs in `O(n)`: compare sizes, compare rigid sets, then compare token
/// counts per tree of the forest left after deleting `N[R]`.
pub fn decide(inst: &Instance) -> Decision {
    let (t, start, target) = (inst.tree(), inst.start(), inst.target());
    if start.len() != target.len() {
        return Decision::no(Certificate::SizeMismatch {
            start: start.len(),
            target: target.len(),
        });
    }
    let rigid_start = rigid_set_unchecked(t, start);
    let rigid_target = rigid_set_unchecked(t, target);
    if rigid_start != rigid_target {
        return Decision::no(Certificate::RigidMismatch {
            start: rigid_start,
            target: rigid_target,
        });
    }
    let forest = forest_after_deletion(t, &rigid_start);
    let counts_start = forest.token_counts(start);
    let counts_target = forest.token_counts(target);
    if let Some(j) = (0..forest.len()).find(|&j| counts_start[j] != counts_target[j]) {
        return Decision::no(Certificate::ComponentCountMismatch {
            component: j,
            start: counts_start[j],
            target: counts_target[j],
        });
    }
    Decision {
        verdict: Verdict::Yes,
        certificate: Certificate::Feasible {
            rigid: rigid_start,
            forest,
            counts: counts_start,
        },
    }
}
