//! Sliding tokens on trees.
//!
//! A configuration is an independent set of a tree; a move slides one token
//! along an edge onto a free vertex that has no other token next to it.
//! [`decide`] answers reachability in linear time and [`plan`] produces an
//! explicit slide sequence of quadratic length for every yes-instance.
//! The [`oracle`] module is a brute-force search over the configuration
//! graph of small trees, used to cross-check both.

pub mod decision;
pub mod error;
pub mod independence;
pub mod instances;
pub mod io;
pub mod oracle;
pub mod planner;
pub mod rigidity;
pub mod tree;

pub use decision::{decide, Certificate, Decision, Verdict};
pub use error::{Error, Result};
pub use independence::{
    apply_move, reverse_plan, verify_plan, IndependentSet, Instance, Move, Plan, TokenBoard,
    Violation, ViolationReason,
};
pub use instances::{gen_path_family, gen_random_instance, gen_random_tree, GeneratorSpec};
pub use io::{emit_dot, emit_instance, emit_plan, parse_instance, parse_plan, InstanceDocument, PlanDocument};
pub use oracle::{oracle_decide, oracle_reachable, oracle_rigid, oracle_shortest};
pub use planner::{
    evacuate_subtree, evacuation_audit, plan, route_token_to_leaf, EvacuationAudit,
    EvacuationRecord, PlanStats, PlanTrace,
};
pub use rigidity::{compute_rigid_set, forest_after_deletion, is_rigid_in_subtree, ForestDecomposition, RigidReport};
pub use tree::{build_tree, SubtreeRef, Tree};
