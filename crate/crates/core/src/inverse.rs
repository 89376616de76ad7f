//! `A⁻¹` as a 0/1 path matrix, computed from the tree and from cofactors,
//! plus the three-way cross-check against the elimination oracle.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dense::IntMatrix;
use crate::matrix::{FwdAdjMatrix, MatrixError};
use crate::minor::det_minor;
use crate::oracle::invert_oracle;
use crate::tree::Tree;

/// Inclusive span of consecutive column indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Run {
    pub start: usize,
    pub end: usize,
}

impl Run {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Upper-triangular 0/1 matrix. Row `k` holds the columns where it is 1, as
/// maximal sorted runs, so equality of two values is entrywise equality.
/// Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathMatrix {
    rows: Vec<Vec<Run>>,
}

fn push_col(runs: &mut Vec<Run>, col: usize) {
    match runs.last_mut() {
        Some(last) if last.end + 1 == col => last.end = col,
        Some(last) if last.end >= col => panic!("columns must be pushed in increasing order"),
        _ => runs.push(Run { start: col, end: col }),
    }
}

impl PathMatrix {
    /// `columns[j - 1]` lists the rows holding a 1 in column `j`, ascending.
    pub fn from_columns(columns: &[Vec<usize>]) -> Self {
        let mut rows = vec![Vec::new(); columns.len()];
        for (idx, col) in columns.iter().enumerate() {
            for &i in col {
                push_col(&mut rows[i - 1], idx + 1);
            }
        }
        PathMatrix { rows }
    }

    /// Fails with the first (1-based) position whose entry is not 0 or 1.
    pub fn from_dense(m: &IntMatrix) -> Result<Self, (usize, usize)> {
        assert!(m.is_square());
        let mut rows = vec![Vec::new(); m.rows()];
        for (r, runs) in rows.iter_mut().enumerate() {
            for (c, &v) in m.row(r).iter().enumerate() {
                match v {
                    0 => {}
                    1 => push_col(runs, c + 1),
                    _ => return Err((r + 1, c + 1)),
                }
            }
        }
        Ok(PathMatrix { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn row_runs(&self, k: usize) -> &[Run] {
        &self.rows[k - 1]
    }

    /// Columns with a 1 in row `k`.
    pub fn row(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[k - 1].iter().flat_map(|r| r.start..=r.end)
    }

    /// Rows with a 1 in column `j`.
    pub fn column(&self, j: usize) -> Vec<usize> {
        (1..=self.dim()).filter(|&i| self.get(i, j) == 1).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        let runs = &self.rows[i - 1];
        let idx = runs.partition_point(|r| r.end < j);
        (idx < runs.len() && runs[idx].start <= j) as i64
    }

    /// Number of 1 entries.
    pub fn ones(&self) -> u64 {
        self.rows.iter().flatten().map(|r| r.len() as u64).sum()
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(idx, runs)| runs.first().is_none_or(|r| r.start > idx))
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.dim(), self.dim());
        for k in 1..=self.dim() {
            for c in self.row(k) {
                m.set(k - 1, c - 1, 1);
            }
        }
        m
    }

    /// 1-based positions where the two matrices differ.
    pub fn mismatches(&self, other: &PathMatrix) -> Vec<(usize, usize)> {
        assert_eq!(self.dim(), other.dim());
        let mut out = Vec::new();
        for k in 1..=self.dim() {
            if self.rows[k - 1] == other.rows[k - 1] {
                continue;
            }
            let a: Vec<usize> = self.row(k).collect();
            let b: Vec<usize> = other.row(k).collect();
            let (mut p, mut q) = (0, 0);
            while p < a.len() || q < b.len() {
                match (a.get(p), b.get(q)) {
                    (Some(x), Some(y)) if x == y => {
                        p += 1;
                        q += 1;
                    }
                    (Some(&x), Some(&y)) if x < y => {
                        out.push((k, x));
                        p += 1;
                    }
                    (Some(&x), None) => {
                        out.push((k, x));
                        p += 1;
                    }
                    (_, Some(&y)) => {
                        out.push((k, y));
                        q += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InverseError {
    Matrix(MatrixError),
    /// A cofactor evaluated to something other than 0 or 1.
    EntryOutOfDomain { i: usize, j: usize, value: i64 },
}

impl fmt::Display for InverseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InverseError::Matrix(e) => e.fmt(f),
            InverseError::EntryOutOfDomain { i, j, value } => {
                write!(f, "cofactor entry ({i}, {j}) is {value}, expected 0 or 1")
            }
        }
    }
}

impl core::error::Error for InverseError {}

impl From<MatrixError> for InverseError {
    fn from(e: MatrixError) -> Self {
        InverseError::Matrix(e)
    }
}

/// `A⁻¹` straight from the tree: row `k` is the subtree of `k`, built
/// bottom-up as `{k}` joined with the rows of its children. Work and
/// storage are bounded by the number of ones (ancestor pairs).
pub fn invert_fast(tree: &Tree) -> PathMatrix {
    let n = tree.n();
    let mut rows: Vec<Vec<Run>> = vec![Vec::new(); n];
    let mut scratch: Vec<Run> = Vec::new();
    for k in (1..=n).rev() {
        scratch.clear();
        for &c in tree.children(k) {
            scratch.extend_from_slice(&rows[c - 1]);
        }
        scratch.sort_unstable();
        let mut merged = Vec::with_capacity(scratch.len().min(4) + 1);
        merged.push(Run { start: k, end: k });
        for r in &scratch {
            let last = merged.last_mut().unwrap();
            if last.end + 1 == r.start {
                last.end = r.end;
            } else {
                merged.push(*r);
            }
        }
        rows[k - 1] = merged;
    }
    PathMatrix { rows }
}

/// Column `j` of `A⁻¹` from cofactors: rows `i < j` with
/// `(-1)^(i+j) |M_{j,i}| = 1`, then `j` itself. Below the diagonal is zero
/// because `A⁻¹` is upper-triangular with unit diagonal.
pub fn cofactor_column(a: &FwdAdjMatrix, tree: &Tree, j: usize) -> Result<Vec<usize>, InverseError> {
    let mut rows = Vec::new();
    for i in 1..j {
        let det = det_minor(a, tree, j, i)?;
        let value = if (i + j).is_multiple_of(2) { det } else { -det };
        match value {
            0 => {}
            1 => rows.push(i),
            _ => return Err(InverseError::EntryOutOfDomain { i, j, value }),
        }
    }
    rows.push(j);
    Ok(rows)
}

/// `A⁻¹ = cofactor(A)ᵀ`, every super-diagonal minor triangularized.
pub fn invert_cofactor(a: &FwdAdjMatrix, tree: &Tree) -> Result<PathMatrix, InverseError> {
    let columns = (1..=a.dim())
        .map(|j| cofactor_column(a, tree, j))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PathMatrix::from_columns(&columns))
}

/// Outcome of [`verify_inverse_triple`]. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TripleReport {
    pub n: usize,
    pub ones: u64,
    /// fast vs cofactor
    pub cofactor_mismatches: Vec<(usize, usize)>,
    /// fast vs oracle
    pub oracle_mismatches: Vec<(usize, usize)>,
    pub oracle_denominator: Option<i128>,
    /// entries of `A * A⁻¹` that differ from the identity
    pub right_product_mismatches: Vec<(usize, usize)>,
    /// entries of `A⁻¹ * A` that differ from the identity
    pub left_product_mismatches: Vec<(usize, usize)>,
    pub failures: Vec<String>,
}

impl TripleReport {
    pub fn is_ok(&self) -> bool {
        self.cofactor_mismatches.is_empty()
            && self.oracle_mismatches.is_empty()
            && self.oracle_denominator == Some(1)
            && self.right_product_mismatches.is_empty()
            && self.left_product_mismatches.is_empty()
            && self.failures.is_empty()
    }
}

fn one_based(v: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    v.into_iter().map(|(r, c)| (r + 1, c + 1)).collect()
}

/// Runs all three inversions and the exact products, collecting every
/// disagreement instead of stopping at the first.
pub fn verify_inverse_triple(tree: &Tree) -> TripleReport {
    let a = FwdAdjMatrix::from_tree(tree);
    let fast = invert_fast(tree);
    let mut report = TripleReport { n: tree.n(), ones: fast.ones(), ..Default::default() };

    if fast.ones() != tree.total_depth() {
        report.failures.push(format!(
            "fast inverse has {} ones, the tree has {} ancestor pairs",
            fast.ones(),
            tree.total_depth()
        ));
    }

    match invert_cofactor(&a, tree) {
        Ok(cof) => report.cofactor_mismatches = fast.mismatches(&cof),
        Err(e) => report.failures.push(format!("cofactor: {e}")),
    }

    let dense_a = a.to_dense();
    let dense_inv = fast.to_dense();
    match invert_oracle(&dense_a) {
        Ok(exact) => {
            report.oracle_denominator = Some(exact.denominator());
            match exact.to_int_matrix() {
                Some(m) => report.oracle_mismatches = one_based(m.diff(&dense_inv)),
                None => report
                    .failures
                    .push(format!("oracle: inverse is not integral (denominator {})", exact.denominator())),
            }
        }
        Err(e) => report.failures.push(format!("oracle: {e}")),
    }

    let identity = IntMatrix::identity(tree.n());
    let right = dense_a.mul(&dense_inv).expect("square matrices of equal size");
    let left = dense_inv.mul(&dense_a).expect("square matrices of equal size");
    report.right_product_mismatches = one_based(right.diff(&identity));
    report.left_product_mismatches = one_based(left.diff(&identity));
    report
}
