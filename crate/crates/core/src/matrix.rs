//! The forward adjacency matrix `A` and its column algebra.
//!
//! Column `j` of `A` is `X_j - X_p` where `p` is the parent of `j` and
//! `X_0` is the null vector, so the whole matrix is stored as one parent
//! index per column. Indices in this module are 1-based.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::dense::IntMatrix;
use crate::tree::Tree;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    IndexOutOfRange { index: usize, max: usize },
    PreconditionViolated(String),
    /// An arithmetic cross-check inside a construction did not hold.
    VerificationFailed(String),
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::IndexOutOfRange { index, max } => {
                write!(f, "matrix index {index} out of range 1..={max}")
            }
            MatrixError::PreconditionViolated(msg) => write!(f, "precondition violated: {msg}"),
            MatrixError::VerificationFailed(msg) => write!(f, "verification failed: {msg}"),
        }
    }
}

impl core::error::Error for MatrixError {}

/// `C_j = X_j - X_base`; `base == 0` means the `-1` entry is absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnPair {
    pub column: usize,
    pub base: usize,
}

/// A set of columns of `A` whose sum is `X_j - X_base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnSum {
    pub i: usize,
    pub j: usize,
    /// Ascending, ends with `j`.
    pub columns: Vec<usize>,
    /// `i` when `i` is forward connected to `j`, otherwise the last root
    /// path node below `i` (possibly the datum).
    pub base: usize,
}

impl ColumnSum {
    pub fn is_connected(&self) -> bool {
        self.base == self.i
    }

    /// Columns strictly between `i` and `j`.
    pub fn interior(&self) -> &[usize] {
        &self.columns[..self.columns.len() - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FwdAdjMatrix {
    // base[j - 1] is the parent of node j
    base: Vec<usize>,
}

impl FwdAdjMatrix {
    pub fn from_tree(tree: &Tree) -> Self {
        FwdAdjMatrix {
            base: (1..=tree.n()).map(|k| tree.parent(k).unwrap()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    /// `j'` of column `j`, 0 for the datum. Panics outside `1..=N`.
    pub(crate) fn base_of(&self, j: usize) -> usize {
        self.base[j - 1]
    }

    fn check(&self, k: usize) -> Result<(), MatrixError> {
        if k == 0 || k > self.dim() {
            Err(MatrixError::IndexOutOfRange { index: k, max: self.dim() })
        } else {
            Ok(())
        }
    }

    /// Entry `A(i, j)`. Panics outside `1..=N`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        assert!(
            (1..=self.dim()).contains(&i) && (1..=self.dim()).contains(&j),
            "index ({i}, {j}) out of range"
        );
        if i == j {
            1
        } else if self.base[j - 1] == i {
            -1
        } else {
            0
        }
    }

    /// The decomposition `C_j = X_j - X_j'`.
    pub fn column(&self, j: usize) -> Result<ColumnPair, MatrixError> {
        self.check(j)?;
        Ok(ColumnPair { column: j, base: self.base[j - 1] })
    }

    pub fn columns(&self) -> impl Iterator<Item = ColumnPair> + '_ {
        self.base
            .iter()
            .enumerate()
            .map(|(idx, &base)| ColumnPair { column: idx + 1, base })
    }

    /// `(row, col, value)` in column-major order, 1-based.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.columns().flat_map(|c| {
            let off = (c.base != 0).then_some((c.base, c.column, -1));
            off.into_iter().chain([(c.column, c.column, 1)])
        })
    }

    pub fn nnz(&self) -> usize {
        self.dim() + self.base.iter().filter(|&&b| b != 0).count()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.dim(), self.dim());
        for (r, c, v) in self.nonzeros() {
            m.set(r - 1, c - 1, v);
        }
        m
    }

    /// Columns along the root path of `j` above `i`, plus `j` itself.
    ///
    /// Their sum is `X_j - X_i` when `i` is forward connected to `j`, and
    /// `X_j - X_i'` with `i' < i` otherwise. The column set comes from a
    /// parent walk; the sum is then checked by adding the columns.
    pub fn route_column_sum(&self, i: usize, j: usize) -> Result<ColumnSum, MatrixError> {
        self.check(j)?;
        if i > self.dim() {
            return Err(MatrixError::IndexOutOfRange { index: i, max: self.dim() });
        }
        if i >= j {
            return Err(MatrixError::PreconditionViolated(alloc::format!(
                "route_column_sum needs i < j, got i={i}, j={j}"
            )));
        }
        let mut columns = Vec::new();
        let mut cur = j;
        while cur > i {
            columns.push(cur);
            cur = self.base[cur - 1];
        }
        columns.reverse();
        let base = cur;

        let mut sum: Vec<(usize, i64)> = Vec::new();
        for &c in &columns {
            for (r, v) in [(c, 1), (self.base[c - 1], -1)] {
                if r == 0 {
                    continue;
                }
                match sum.iter_mut().find(|e| e.0 == r) {
                    Some(e) => e.1 += v,
                    None => sum.push((r, v)),
                }
            }
            sum.retain(|e| e.1 != 0);
        }
        sum.sort_unstable();
        let expected: &[(usize, i64)] = if base == 0 { &[(j, 1)] } else { &[(base, -1), (j, 1)] };
        if sum != expected {
            return Err(MatrixError::VerificationFailed(alloc::format!(
                "columns {columns:?} do not sum to X_{j} - X_{base}"
            )));
        }
        Ok(ColumnSum { i, j, columns, base })
    }
}

/// Branch-node matrix of a graph on nodes `0..nodes`: one row per node, one
/// column per edge `(u, v)` equal to `X_max - X_min`, columns ordered by
/// `(max, min)`. For a tree with the datum row dropped this is `A`.
pub fn branch_matrix(nodes: usize, edges: &[(usize, usize)]) -> IntMatrix {
    let mut edges: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable_by_key(|&(u, v)| (v, u));
    let mut m = IntMatrix::zeros(nodes, edges.len());
    for (col, &(u, v)) in edges.iter().enumerate() {
        m.set(v, col, 1);
        m.set(u, col, -1);
    }
    m
}

/// [`branch_matrix`] of the closed loop `0 -> 1 -> ... -> len-1 -> 0`. The
/// loop's columns sum to zero with alternating signs, so the matrix is
/// singular.
pub fn cycle_branch_matrix(len: usize) -> IntMatrix {
    assert!(len >= 3, "a cycle needs at least three nodes");
    let mut edges: Vec<(usize, usize)> = (1..len).map(|v| (v - 1, v)).collect();
    edges.push((0, len - 1));
    branch_matrix(len, &edges)
}

/// Node-indexed analogue of `A` for an arbitrary graph numbered `0..=N`:
/// column `k` is `X_k` minus every `X_i` with `i < k` adjacent to `k`
/// (`X_0` null). This is upper-triangular with unit diagonal whatever the
/// edges, so loops never make it singular; [`cycle_branch_matrix`] is the
/// construction that exhibits the singularity.
pub fn node_column_matrix(n: usize, edges: &[(usize, usize)]) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for &(u, v) in edges {
        let (lo, hi) = (u.min(v), u.max(v));
        if lo != 0 && lo != hi {
            m.set(lo - 1, hi - 1, -1);
        }
    }
    m
}
