//! Shared fixtures for the criterion benchmarks.

use slidetok::instances::{gen_path_family, gen_random_instance, gen_random_yes_instance};
use slidetok::{Instance, Tree};

/// Vertex counts for the decision benchmarks; doubling steps so the
/// per-vertex cost is easy to read off.
pub const DECIDE_SIZES: [usize; 5] = [1 << 14, 1 << 15, 1 << 16, 1 << 17, 1 << 18];

/// Plans are quadratic in the worst case, so these stay small.
pub const PLAN_SIZES: [usize; 4] = [250, 500, 1000, 2000];

pub const SEED: u64 = 0x5eed;

/// Random tree with `n / 8` tokens on each side. Usually a no-instance
/// settled at the rigid-set comparison.
pub fn random_pair(n: usize) -> Instance {
    gen_random_instance(n, (n / 8).max(1), SEED ^ n as u64).expect("n / 8 tokens always fit")
}

/// Random yes-instance reached from the start by a random walk, so every
/// stage of the decision runs.
pub fn reachable_pair(n: usize) -> Instance {
    gen_random_yes_instance(n, (n / 8).max(1), SEED ^ n as u64).expect("n / 8 tokens always fit")
}

/// Start equals target: rigid sets, forest and counts all run in full.
pub fn identical_pair(n: usize) -> Instance {
    let inst = random_pair(n);
    Instance::from_sets(inst.tree().clone(), inst.start().clone(), inst.start().clone()).unwrap()
}

/// Path with every other vertex occupied, shifted by one in the target.
pub fn alternating_path(n: usize) -> Instance {
    let n = n & !1;
    Instance::new(Tree::path(n), (0..n).step_by(2), (1..n).step_by(2)).unwrap()
}

/// The quadratic path family on `8k` vertices.
pub fn path_family(k: usize) -> Instance {
    gen_path_family(k).expect("k >= 1")
}
