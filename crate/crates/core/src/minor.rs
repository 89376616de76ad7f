//! Minors `M_{j,i}` of `A` (row `j` and column `i` deleted, `i < j`) and
//! the column manipulations that bring them to upper-triangular form.
//!
//! The layout of a minor splits into four regions. Writing `[p]` for 1 when
//! `p` holds and 0 otherwise:
//!
//! ```text
//! M(x, y) = A(x + [x >= j], y + [y >= i])
//! ```
//!
//! so columns `y < i` and `y >= j` keep their unit diagonal, the middle
//! columns `i <= y < j - 1` carry their unit entry on the sub-diagonal, and
//! the critical column `j - 1` lost its unit entry and is `-X_{j'}`.
//!
//! [`upper_triangularize`] moves the critical column to position `i` (that
//! is `j - i - 1` adjacent interchanges, shifting the middle columns right
//! onto the diagonal) and then adds the route columns to it. What is left
//! on the diagonal at `(i, i)` is `-1` when `i` is forward connected to `j`
//! and `0` otherwise.

use alloc::format;
use alloc::vec::Vec;
use arrayvec::ArrayVec;

use crate::dense::IntMatrix;
use crate::matrix::{FwdAdjMatrix, MatrixError};
use crate::tree::Tree;

/// A column with at most two nonzeros, as `(row, value)` sorted by row.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseColumn(ArrayVec<(usize, i64), 2>);

impl SparseColumn {
    /// Fails when more than two entries are nonzero.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, i64)>) -> Option<Self> {
        let mut col = ArrayVec::new();
        for e in entries.into_iter().filter(|e| e.1 != 0) {
            col.try_push(e).ok()?;
        }
        col.sort_unstable_by_key(|e: &(usize, i64)| e.0);
        Some(SparseColumn(col))
    }

    pub fn entries(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn get(&self, row: usize) -> i64 {
        self.0.iter().find(|e| e.0 == row).map_or(0, |e| e.1)
    }

    /// Largest row holding a nonzero.
    pub fn lowest(&self) -> Option<usize> {
        self.0.last().map(|e| e.0)
    }
}

/// Square matrix stored column by column. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnMatrix {
    cols: Vec<SparseColumn>,
}

impl ColumnMatrix {
    pub fn from_columns(cols: Vec<SparseColumn>) -> Self {
        ColumnMatrix { cols }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, y: usize) -> &SparseColumn {
        &self.cols[y - 1]
    }

    pub fn columns(&self) -> impl Iterator<Item = (usize, &SparseColumn)> + '_ {
        self.cols.iter().enumerate().map(|(idx, c)| (idx + 1, c))
    }

    pub fn get(&self, x: usize, y: usize) -> i64 {
        assert!((1..=self.dim()).contains(&x), "row {x} out of range");
        self.column(y).get(x)
    }

    /// No nonzero below the diagonal in any column.
    pub fn is_upper_triangular(&self) -> bool {
        self.columns().all(|(y, c)| c.lowest().is_none_or(|x| x <= y))
    }

    pub fn diagonal(&self) -> impl Iterator<Item = i64> + '_ {
        self.columns().map(|(y, c)| c.get(y))
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.dim(), self.dim());
        for (y, c) in self.columns() {
            for &(x, v) in c.entries() {
                m.set(x - 1, y - 1, v);
            }
        }
        m
    }
}

/// `M_{j,i}`: `A` with row `j` and column `i` removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorMatrix {
    pub parent_dim: usize,
    pub row: usize,
    pub col: usize,
    pub body: ColumnMatrix,
}

impl MinorMatrix {
    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    pub fn get(&self, x: usize, y: usize) -> i64 {
        self.body.get(x, y)
    }

    pub fn to_dense(&self) -> IntMatrix {
        self.body.to_dense()
    }
}

impl FwdAdjMatrix {
    /// Builds `M_{j,i}` for `i < j` straight from the column pairs.
    pub fn minor(&self, j: usize, i: usize) -> Result<MinorMatrix, MatrixError> {
        let n = self.dim();
        for k in [i, j] {
            if k == 0 || k > n {
                return Err(MatrixError::IndexOutOfRange { index: k, max: n });
            }
        }
        if i >= j {
            return Err(MatrixError::PreconditionViolated(format!(
                "minor needs column i < row j, got j={j}, i={i}"
            )));
        }
        let cols = (1..n)
            .map(|y| {
                let src = self.column(if y < i { y } else { y + 1 }).unwrap();
                let entries = [(src.column, 1), (src.base, -1)]
                    .into_iter()
                    .filter(|&(r, _)| r != 0 && r != j)
                    .map(|(r, v)| (if r > j { r - 1 } else { r }, v));
                SparseColumn::from_entries(entries).unwrap()
            })
            .collect();
        Ok(MinorMatrix {
            parent_dim: n,
            row: j,
            col: i,
            body: ColumnMatrix::from_columns(cols),
        })
    }
}

/// Every intermediate of the triangularization of one minor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularizationTrace {
    pub row: usize,
    pub col: usize,
    /// The critical column moved to position `col`.
    pub rotated: ColumnMatrix,
    pub interchanges: usize,
    /// `(-1)^interchanges`.
    pub sign: i64,
    /// Positions in `rotated` added onto column `col`, ascending.
    pub added: Vec<usize>,
    /// The single row left in column `col` after the additions (0: none).
    pub base: usize,
    /// Entry `(col, col)` of `triangular`: -1 or 0.
    pub diagonal: i64,
    pub triangular: ColumnMatrix,
}

impl TriangularizationTrace {
    /// `sign * prod(diag(triangular))`, i.e. `|M_{j,i}|`.
    pub fn determinant(&self) -> i64 {
        self.sign * self.triangular.diagonal().product::<i64>()
    }
}

/// Rotates the critical column into position `i`, then adds the columns
/// named by [`FwdAdjMatrix::route_column_sum`] to it.
///
/// Fails if the result is not upper-triangular with unit diagonal away from
/// `(i, i)`, or if the diagonal entry disagrees with the tree's
/// connectivity.
pub fn upper_triangularize(
    minor: &MinorMatrix,
    a: &FwdAdjMatrix,
    tree: &Tree,
) -> Result<TriangularizationTrace, MatrixError> {
    let (j, i) = (minor.row, minor.col);
    if minor.parent_dim != a.dim() || a.dim() != tree.n() || i >= j {
        return Err(MatrixError::PreconditionViolated(format!(
            "minor M_{{{j},{i}}} of a {}x{} matrix does not belong to this tree",
            minor.parent_dim, minor.parent_dim
        )));
    }
    let m = &minor.body;
    let rotated: Vec<SparseColumn> = (1..=m.dim())
        .map(|k| {
            let src = match k {
                k if k < i || k >= j => k,
                k if k == i => j - 1,
                k => k - 1,
            };
            m.column(src).clone()
        })
        .collect();
    let interchanges = j - i - 1;

    let route = a.route_column_sum(i, j)?;
    let added = route.interior().to_vec();
    let mut acc: Vec<(usize, i64)> = rotated[i - 1].entries().to_vec();
    for &k in added.iter().rev() {
        for &(x, v) in rotated[k - 1].entries() {
            match acc.iter_mut().find(|e| e.0 == x) {
                Some(e) => e.1 += v,
                None => acc.push((x, v)),
            }
        }
        acc.retain(|e| e.1 != 0);
    }
    let reduced = SparseColumn::from_entries(acc.iter().copied()).ok_or_else(|| {
        MatrixError::VerificationFailed(format!("column {i} of M_{{{j},{i}}} did not collapse"))
    })?;
    let base = match reduced.entries() {
        [] => 0,
        [(x, -1)] => *x,
        other => {
            return Err(MatrixError::VerificationFailed(format!(
                "column {i} of M_{{{j},{i}}} reduced to {other:?}, expected a single -1"
            )))
        }
    };
    if base != route.base {
        return Err(MatrixError::VerificationFailed(format!(
            "column {i} of M_{{{j},{i}}} reduced to -X_{base}, route ends at {}",
            route.base
        )));
    }

    let mut triangular = rotated.clone();
    triangular[i - 1] = reduced;
    let triangular = ColumnMatrix::from_columns(triangular);
    if !triangular.is_upper_triangular() {
        return Err(MatrixError::VerificationFailed(format!(
            "M_{{{j},{i}}} is not upper-triangular after the additions"
        )));
    }
    if let Some((y, d)) = triangular
        .diagonal()
        .enumerate()
        .map(|(idx, d)| (idx + 1, d))
        .find(|&(y, d)| y != i && d != 1)
    {
        return Err(MatrixError::VerificationFailed(format!(
            "diagonal entry ({y}, {y}) of the reduced M_{{{j},{i}}} is {d}"
        )));
    }
    let diagonal = triangular.get(i, i);
    let connected = tree
        .forward_connected(i, j)
        .map_err(|e| MatrixError::PreconditionViolated(format!("{e}")))?;
    if diagonal != if connected { -1 } else { 0 } {
        return Err(MatrixError::VerificationFailed(format!(
            "diagonal ({i}, {i}) is {diagonal} but forward_connected({i}, {j}) = {connected}"
        )));
    }

    Ok(TriangularizationTrace {
        row: j,
        col: i,
        rotated: ColumnMatrix::from_columns(rotated),
        interchanges,
        sign: if interchanges % 2 == 0 { 1 } else { -1 },
        added,
        base,
        diagonal,
        triangular,
    })
}

/// Column `k` of the rotated `M_{j,i}`, read straight off `A` through the
/// region map instead of a materialized minor.
fn rotated_column(a: &FwdAdjMatrix, j: usize, i: usize, k: usize) -> ArrayVec<(usize, i64), 2> {
    let c = match k {
        k if k < i => k,
        k if k == i => j,
        k if k < j => k,
        k => k + 1,
    };
    let mut col = ArrayVec::new();
    for (r, v) in [(a.base_of(c), -1), (c, 1)] {
        if r != 0 && r != j {
            col.push((if r > j { r - 1 } else { r }, v));
        }
    }
    col
}

/// The triangularization of [`upper_triangularize`] carried out on a view
/// of `A`: no minor is built and nothing is allocated. Every column is
/// still checked for upper-triangular shape and unit diagonal, and the
/// route additions are performed one column at a time.
///
/// Returns `sign * d_i`.
pub fn reduced_determinant(a: &FwdAdjMatrix, tree: &Tree, j: usize, i: usize) -> Result<i64, MatrixError> {
    let n = a.dim();
    for k in [i, j] {
        if k == 0 || k > n {
            return Err(MatrixError::IndexOutOfRange { index: k, max: n });
        }
    }
    if i >= j || tree.n() != n {
        return Err(MatrixError::PreconditionViolated(format!(
            "no minor M_{{{j},{i}}} of this {n}x{n} matrix"
        )));
    }
    let row_of = |r: usize| if r > j { r - 1 } else { r };
    for k in (1..n).filter(|&k| k != i) {
        let c = if k < j { k } else { k + 1 };
        let b = a.base_of(c);
        let off_ok = b == 0 || b == j || row_of(b) < k;
        if row_of(c) != k || !off_ok {
            return Err(MatrixError::VerificationFailed(format!(
                "column {k} of the rotated M_{{{j},{i}}} is {:?}, expected a unit diagonal",
                rotated_column(a, j, i, k)
            )));
        }
    }

    let mut acc: ArrayVec<(usize, i64), 4> = rotated_column(a, j, i, i).into_iter().collect();
    let mut cur = a.base_of(j);
    while cur > i {
        for (x, v) in rotated_column(a, j, i, cur) {
            match acc.iter_mut().find(|e| e.0 == x) {
                Some(e) => e.1 += v,
                None => acc.try_push((x, v)).map_err(|_| {
                    MatrixError::VerificationFailed(format!("column {i} of M_{{{j},{i}}} did not collapse"))
                })?,
            }
        }
        acc.retain(|e| e.1 != 0);
        cur = a.base_of(cur);
    }
    let diagonal = match acc.as_slice() {
        [] => 0,
        [(x, -1)] if *x == i => -1,
        [(x, -1)] if *x < i => 0,
        other => {
            return Err(MatrixError::VerificationFailed(format!(
                "column {i} of M_{{{j},{i}}} reduced to {other:?}"
            )))
        }
    };
    let connected = tree
        .forward_connected(i, j)
        .map_err(|e| MatrixError::PreconditionViolated(format!("{e}")))?;
    if diagonal != if connected { -1 } else { 0 } {
        return Err(MatrixError::VerificationFailed(format!(
            "diagonal ({i}, {i}) is {diagonal} but forward_connected({i}, {j}) = {connected}"
        )));
    }
    let sign = if (j - i - 1).is_multiple_of(2) { 1 } else { -1 };
    Ok(sign * diagonal)
}

/// `|M_{j,i}|` for `i < j`, computed from the triangularization and checked
/// against the closed form `(-1)^(i-j)` if connected, else 0.
pub fn det_minor(a: &FwdAdjMatrix, tree: &Tree, j: usize, i: usize) -> Result<i64, MatrixError> {
    let det = reduced_determinant(a, tree, j, i)?;
    let connected = tree.forward_connected(i, j).unwrap_or(false);
    let closed = if !connected {
        0
    } else if (j - i).is_multiple_of(2) {
        1
    } else {
        -1
    };
    if det != closed {
        return Err(MatrixError::VerificationFailed(format!(
            "|M_{{{j},{i}}}| = {det} from the triangularization, closed form gives {closed}"
        )));
    }
    Ok(det)
}
