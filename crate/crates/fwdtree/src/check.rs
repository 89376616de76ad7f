//! The full invariant suite on one tree, as run by `fwdtree check`.

use std::fmt;

use fwdtree_core::inverse::{invert_fast, verify_inverse_triple};
use fwdtree_core::minor::{det_minor, upper_triangularize};
use fwdtree_core::oracle::det_oracle;
use fwdtree_core::structure::{check_forward_matrix, check_minor, check_triangularized};
use fwdtree_core::tree::validate_indexing;
use fwdtree_core::{FwdAdjMatrix, Tree};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub name: &'static str,
    #[serde(flatten)]
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub n: usize,
    pub outcomes: Vec<Outcome>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| !matches!(o.status, Status::Fail(_)))
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            match &o.status {
                Status::Pass => writeln!(f, "PASS {}", o.name)?,
                Status::Fail(why) => writeln!(f, "FAIL {}: {why}", o.name)?,
                Status::Skip(why) => writeln!(f, "SKIP {}: {why}", o.name)?,
            }
        }
        Ok(())
    }
}

/// Size limits for the quadratic and worse checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckLimits {
    /// Dense `A`, the oracle inverse and the cofactor inverse.
    pub dense: usize,
    /// Every minor, with oracle determinants.
    pub minors: usize,
}

impl Default for CheckLimits {
    fn default() -> Self {
        CheckLimits { dense: 300, minors: 60 }
    }
}

fn first<T: fmt::Display>(items: &[T]) -> String {
    match items {
        [] => String::new(),
        [one] => one.to_string(),
        [head, rest @ ..] => format!("{head} (and {} more)", rest.len()),
    }
}

fn gated(n: usize, limit: usize, name: &'static str, run: impl FnOnce() -> Status) -> Outcome {
    let status = if n > limit {
        Status::Skip(format!("N = {n} exceeds the limit {limit}"))
    } else {
        run()
    };
    Outcome { name, status }
}

fn tree_checks(tree: &Tree) -> Status {
    let n = tree.n();
    for k in 1..=n {
        let parents: Vec<usize> = (0..k)
            .filter(|&i| tree.forward_adjacent(i, k).unwrap_or(false))
            .collect();
        if parents.len() != 1 {
            return Status::Fail(format!("node {k} has forward-adjacent predecessors {parents:?}"));
        }
        let closure = tree.forward_closure(k).expect("index in range");
        for m in 1..=n {
            let in_closure = closure.binary_search(&m).is_ok();
            let on_path = tree.root_path(m).expect("index in range").contains(k);
            if in_closure != on_path {
                return Status::Fail(format!("closure of {k} and root path of {m} disagree"));
            }
        }
    }
    Status::Pass
}

fn minor_checks(tree: &Tree, a: &FwdAdjMatrix) -> Status {
    for j in 2..=tree.n() {
        for i in 1..j {
            let m = match a.minor(j, i) {
                Ok(m) => m,
                Err(e) => return Status::Fail(format!("M_{{{j},{i}}}: {e}")),
            };
            let v = check_minor(&m, a);
            if !v.is_empty() {
                return Status::Fail(format!("M_{{{j},{i}}}: {}", first(&v)));
            }
            let trace = match upper_triangularize(&m, a, tree) {
                Ok(t) => t,
                Err(e) => return Status::Fail(format!("M_{{{j},{i}}}: {e}")),
            };
            let v = check_triangularized(&trace);
            if !v.is_empty() {
                return Status::Fail(format!("reduced M_{{{j},{i}}}: {}", first(&v)));
            }
            let oracle = match det_oracle(&m.to_dense()) {
                Ok(d) => d,
                Err(e) => return Status::Fail(format!("oracle on M_{{{j},{i}}}: {e}")),
            };
            let rotated = det_oracle(&trace.rotated.to_dense());
            if rotated != Ok(trace.sign as i128 * oracle) {
                return Status::Fail(format!(
                    "rotating M_{{{j},{i}}} gave determinant {rotated:?}, expected {} * {oracle}",
                    trace.sign
                ));
            }
            match det_minor(a, tree, j, i) {
                Ok(d) if d as i128 == oracle => {}
                Ok(d) => return Status::Fail(format!("|M_{{{j},{i}}}| = {d}, oracle gives {oracle}")),
                Err(e) => return Status::Fail(format!("M_{{{j},{i}}}: {e}")),
            }
        }
    }
    Status::Pass
}

pub fn check_tree(tree: &Tree, limits: CheckLimits) -> CheckReport {
    let n = tree.n();
    let a = FwdAdjMatrix::from_tree(tree);
    let mut outcomes = Vec::new();

    let report = validate_indexing(tree.rooted());
    outcomes.push(Outcome {
        name: "forward numbering",
        status: if report.is_pass() {
            Status::Pass
        } else {
            Status::Fail(format!("parent/child pairs out of order: {:?}", report.violations))
        },
    });

    outcomes.push(gated(n, limits.dense, "single parent and closure consistency", || tree_checks(tree)));

    outcomes.push(gated(n, limits.dense, "shape of A", || {
        let v = check_forward_matrix(&a);
        if v.is_empty() {
            Status::Pass
        } else {
            Status::Fail(first(&v))
        }
    }));

    outcomes.push(gated(n, limits.dense, "det(A) = 1", || match det_oracle(&a.to_dense()) {
        Ok(1) => Status::Pass,
        Ok(d) => Status::Fail(format!("oracle determinant is {d}")),
        Err(e) => Status::Fail(e.to_string()),
    }));

    outcomes.push(Outcome {
        name: "ones in inverse = total depth",
        status: {
            let ones = invert_fast(tree).ones();
            if ones == tree.total_depth() {
                Status::Pass
            } else {
                Status::Fail(format!("{ones} ones, total depth {}", tree.total_depth()))
            }
        },
    });

    outcomes.push(gated(n, limits.dense, "three inverses agree, A * inv = I", || {
        let r = verify_inverse_triple(tree);
        if r.is_ok() {
            Status::Pass
        } else {
            Status::Fail(format!("{r:?}"))
        }
    }));

    outcomes.push(gated(n, limits.minors, "minor structure and determinants", || minor_checks(tree, &a)));

    CheckReport { n, outcomes }
}
