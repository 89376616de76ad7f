//! Entrywise checks of the shapes `A`, `M_{j,i}` and the triangularized
//! minor are supposed to have. Each check returns every violation found.

use alloc::vec::Vec;
use core::fmt;

use crate::matrix::FwdAdjMatrix;
use crate::minor::{MinorMatrix, TriangularizationTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// `A` has no entry below the diagonal and ones on it.
    ForwardUpperTriangular,
    /// Column `j` of `A` is `+1` at `j` and `-1` at its parent, nothing else.
    ForwardColumnShape,
    /// Columns left of `i` and from `j` on keep a unit diagonal with nothing
    /// below.
    MinorOuterColumns,
    /// Middle columns `i <= y < j - 1` have a unit sub-diagonal with nothing
    /// below it.
    MinorMiddleSubDiagonal,
    /// Middle column `y` equals `X_{y+1} - X_{(y+1)'}` after the row shift.
    MinorMiddleShift,
    /// The critical column `j - 1` is `-X_{j'}`.
    MinorCriticalColumn,
    /// The reduced minor is upper-triangular.
    ReducedUpperTriangular,
    /// The reduced minor has 1 on the diagonal except `(i, i)`, which is -1
    /// or 0.
    ReducedDiagonal,
}

/// One failing entry, 1-based within the matrix being checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureViolation {
    pub rule: Rule,
    pub row: usize,
    pub col: usize,
    pub found: i64,
    pub expected: i64,
}

impl fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}: entry ({}, {}) is {}, expected {}",
            self.rule, self.row, self.col, self.found, self.expected
        )
    }
}

fn compare(out: &mut Vec<StructureViolation>, rule: Rule, row: usize, col: usize, found: i64, expected: i64) {
    if found != expected {
        out.push(StructureViolation { rule, row, col, found, expected });
    }
}

/// Walks every entry of `A` and checks it against the parent of its column.
pub fn check_forward_matrix(a: &FwdAdjMatrix) -> Vec<StructureViolation> {
    let n = a.dim();
    let mut out = Vec::new();
    for col in a.columns() {
        let j = col.column;
        for r in 1..=n {
            let v = a.get(r, j);
            if r > j {
                compare(&mut out, Rule::ForwardUpperTriangular, r, j, v, 0);
            } else if r == j {
                compare(&mut out, Rule::ForwardUpperTriangular, r, j, v, 1);
            } else {
                let expected = if col.base == r && r != 0 { -1 } else { 0 };
                compare(&mut out, Rule::ForwardColumnShape, r, j, v, expected);
            }
        }
        if col.base >= j {
            out.push(StructureViolation {
                rule: Rule::ForwardColumnShape,
                row: col.base,
                col: j,
                found: -1,
                expected: 0,
            });
        }
    }
    out
}

/// Checks every entry of `M_{j,i}` region by region against `a`.
pub fn check_minor(m: &MinorMatrix, a: &FwdAdjMatrix) -> Vec<StructureViolation> {
    let (j, i) = (m.row, m.col);
    let d = m.dim();
    let mut out = Vec::new();
    // row of M holding A's row r, if any
    let shift = |r: usize| -> Option<usize> {
        match r {
            0 => None,
            r if r == j => None,
            r if r > j => Some(r - 1),
            r => Some(r),
        }
    };
    for y in 1..=d {
        if y < i || y >= j {
            for x in y..=d {
                let v = m.get(x, y);
                compare(&mut out, Rule::MinorOuterColumns, x, y, v, (x == y) as i64);
            }
        } else if y < j - 1 {
            for x in y + 1..=d {
                let v = m.get(x, y);
                compare(&mut out, Rule::MinorMiddleSubDiagonal, x, y, v, (x == y + 1) as i64);
            }
            let src = a.column(y + 1).expect("middle column inside A");
            for x in 1..=d {
                let mut expected = 0;
                if shift(src.column) == Some(x) {
                    expected += 1;
                }
                if shift(src.base) == Some(x) {
                    expected -= 1;
                }
                compare(&mut out, Rule::MinorMiddleShift, x, y, m.get(x, y), expected);
            }
        } else {
            let base = a.column(j).expect("critical column inside A").base;
            for x in 1..=d {
                let expected = if base != 0 && x == base { -1 } else { 0 };
                compare(&mut out, Rule::MinorCriticalColumn, x, y, m.get(x, y), expected);
            }
        }
    }
    out
}

/// Upper-triangularity and the diagonal of the reduced minor.
pub fn check_triangularized(trace: &TriangularizationTrace) -> Vec<StructureViolation> {
    let t = &trace.triangular;
    let mut out = Vec::new();
    for (y, column) in t.columns() {
        for &(x, v) in column.entries() {
            if x > y {
                compare(&mut out, Rule::ReducedUpperTriangular, x, y, v, 0);
            }
        }
        let diag = column.get(y);
        if y == trace.col {
            if diag != -1 && diag != 0 {
                out.push(StructureViolation {
                    rule: Rule::ReducedDiagonal,
                    row: y,
                    col: y,
                    found: diag,
                    expected: trace.diagonal,
                });
            }
        } else {
            compare(&mut out, Rule::ReducedDiagonal, y, y, diag, 1);
        }
    }
    out
}
