//! Exact determinants and inverses of arbitrary square integer matrices.
//!
//! This is the ground truth the tree-specific code is tested against, so it
//! uses nothing from the rest of the crate except [`IntMatrix`].
//!
//! Elimination is fraction-free. The forward phase only applies unimodular
//! integer row operations (subtract an integer multiple of the pivot row,
//! or swap), repeating Euclid-style until everything below the pivot is
//! zero; rows with a zero in the pivot column are never touched. That
//! leaves `U * M = T` with `T` upper-triangular and `det U = ±1`. The
//! inverse is then `adj(T) * U / det(T)`, where `det(T) * T⁻¹ * U` is
//! integral and is recovered by back-substitution with exact divisions.
//! All arithmetic is checked `i128`; overflow is reported, never wrapped.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dense::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleError {
    NotSquare { rows: usize, cols: usize },
    SingularMatrix,
    Overflow,
    /// A division that must be exact left a remainder.
    InexactDivision,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            OracleError::SingularMatrix => write!(f, "matrix is singular"),
            OracleError::Overflow => write!(f, "integer overflow during exact elimination"),
            OracleError::InexactDivision => write!(f, "exact division left a remainder"),
        }
    }
}

impl core::error::Error for OracleError {}

/// `numerators / denominator`, with `denominator >= 1` and the fraction
/// reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    numerators: Vec<i128>,
    denominator: i128,
}

impl ExactMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn denominator(&self) -> i128 {
        self.denominator
    }

    /// 0-based.
    pub fn numerator(&self, r: usize, c: usize) -> i128 {
        self.numerators[r * self.n + c]
    }

    /// The matrix itself when it is integral and fits `i64`.
    pub fn to_int_matrix(&self) -> Option<IntMatrix> {
        if self.denominator != 1 {
            return None;
        }
        let mut m = IntMatrix::zeros(self.n, self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                m.set(r, c, i64::try_from(self.numerator(r, c)).ok()?);
            }
        }
        Some(m)
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

type Rows = Vec<Vec<i128>>;

fn load(m: &IntMatrix, augment: bool) -> Result<Rows, OracleError> {
    if !m.is_square() {
        return Err(OracleError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let width = if augment { 2 * n } else { n };
    Ok((0..n)
        .map(|r| {
            let mut row = vec![0i128; width];
            for (dst, &v) in row.iter_mut().zip(m.row(r)) {
                *dst = v as i128;
            }
            if augment {
                row[n + r] = 1;
            }
            row
        })
        .collect())
}

/// `dst -= q * src` over `from..`.
fn sub_scaled(dst: &mut [i128], src: &[i128], q: i128, from: usize) -> Result<(), OracleError> {
    for (d, &s) in dst[from..].iter_mut().zip(&src[from..]) {
        if s != 0 {
            let t = s.checked_mul(q).ok_or(OracleError::Overflow)?;
            *d = d.checked_sub(t).ok_or(OracleError::Overflow)?;
        }
    }
    Ok(())
}

/// Reduces the leading `n` columns to upper-triangular form. Returns the
/// permutation sign, or `None` if a pivot column is all zero.
fn triangularize(rows: &mut Rows, n: usize) -> Result<Option<i128>, OracleError> {
    let mut sign = 1i128;
    for k in 0..n {
        loop {
            let pivot = (k..n)
                .filter(|&r| rows[r][k] != 0)
                .min_by_key(|&r| rows[r][k].unsigned_abs());
            let Some(p) = pivot else {
                return Ok(None);
            };
            if p != k {
                rows.swap(p, k);
                sign = -sign;
            }
            let (head, tail) = rows.split_at_mut(k + 1);
            let pivot_row = &head[k];
            let mut clean = true;
            for row in tail.iter_mut().filter(|row| row[k] != 0) {
                let q = row[k] / pivot_row[k];
                sub_scaled(row, pivot_row, q, k)?;
                clean &= row[k] == 0;
            }
            if clean {
                break;
            }
        }
    }
    Ok(Some(sign))
}

/// Exact determinant.
pub fn det_oracle(m: &IntMatrix) -> Result<i128, OracleError> {
    let mut rows = load(m, false)?;
    let n = rows.len();
    let Some(sign) = triangularize(&mut rows, n)? else {
        return Ok(0);
    };
    (0..n).try_fold(sign, |acc, k| acc.checked_mul(rows[k][k]).ok_or(OracleError::Overflow))
}

/// Exact inverse as a reduced fraction.
pub fn invert_oracle(m: &IntMatrix) -> Result<ExactMatrix, OracleError> {
    let mut rows = load(m, true)?;
    let n = rows.len();
    if triangularize(&mut rows, n)?.is_none() {
        return Err(OracleError::SingularMatrix);
    }
    let det_t = (0..n).try_fold(1i128, |acc, k| acc.checked_mul(rows[k][k]).ok_or(OracleError::Overflow))?;

    // solved[k] = row k of det(T) * T⁻¹ * U
    let mut solved: Vec<Vec<i128>> = vec![Vec::new(); n];
    for k in (0..n).rev() {
        let mut acc: Vec<i128> = rows[k][n..]
            .iter()
            .map(|&u| u.checked_mul(det_t).ok_or(OracleError::Overflow))
            .collect::<Result<_, _>>()?;
        for l in k + 1..n {
            let t = rows[k][l];
            if t != 0 {
                sub_scaled(&mut acc, &solved[l], t, 0)?;
            }
        }
        let pivot = rows[k][k];
        for v in acc.iter_mut() {
            if *v % pivot != 0 {
                return Err(OracleError::InexactDivision);
            }
            *v /= pivot;
        }
        solved[k] = acc;
    }

    let mut numerators: Vec<i128> = solved.into_iter().flatten().collect();
    let mut denominator = det_t;
    if denominator < 0 {
        denominator = denominator.checked_neg().ok_or(OracleError::Overflow)?;
        for v in numerators.iter_mut() {
            *v = v.checked_neg().ok_or(OracleError::Overflow)?;
        }
    }
    let g = numerators.iter().fold(denominator, |g, &v| gcd(g, v));
    if g > 1 {
        denominator /= g;
        for v in numerators.iter_mut() {
            *v /= g;
        }
    }
    Ok(ExactMatrix { n, numerators, denominator })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Leibniz expansion over all permutations; only for tiny matrices.
    fn leibniz(m: &IntMatrix) -> i128 {
        fn perms(k: usize, used: &mut Vec<bool>, acc: &mut Vec<usize>, m: &IntMatrix, out: &mut i128) {
            let n = m.rows();
            if k == n {
                let inversions = (0..n)
                    .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                    .filter(|&(a, b)| acc[a] > acc[b])
                    .count();
                let prod: i128 = (0..n).map(|r| m.get(r, acc[r]) as i128).product();
                *out += if inversions % 2 == 0 { prod } else { -prod };
                return;
            }
            for c in 0..n {
                if !used[c] {
                    used[c] = true;
                    acc.push(c);
                    perms(k + 1, used, acc, m, out);
                    acc.pop();
                    used[c] = false;
                }
            }
        }
        let mut out = 0;
        perms(0, &mut vec![false; m.rows()], &mut Vec::new(), m, &mut out);
        out
    }

    #[test]
    fn two_by_two_inverse() {
        let inv = invert_oracle(&mat(&[&[1, -1], &[0, 1]])).unwrap();
        assert_eq!(inv.denominator(), 1);
        assert_eq!(inv.to_int_matrix().unwrap(), mat(&[&[1, 1], &[0, 1]]));
    }

    #[test]
    fn identity_and_rational_inverse() {
        assert_eq!(det_oracle(&IntMatrix::identity(7)).unwrap(), 1);
        let inv = invert_oracle(&mat(&[&[2, 1], &[1, 3]])).unwrap();
        assert_eq!(inv.denominator(), 5);
        assert_eq!(
            [inv.numerator(0, 0), inv.numerator(0, 1), inv.numerator(1, 0), inv.numerator(1, 1)],
            [3, -1, -1, 2]
        );
        let half = invert_oracle(&mat(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!((half.denominator(), half.numerator(0, 0)), (2, 1));
        assert!(half.to_int_matrix().is_none());
    }

    #[test]
    fn singular_and_shape_errors() {
        let tri = mat(&[&[-1, -1, 0], &[1, 0, -1], &[0, 1, 1]]);
        assert_eq!(det_oracle(&tri).unwrap(), 0);
        assert_eq!(invert_oracle(&tri), Err(OracleError::SingularMatrix));
        assert_eq!(
            det_oracle(&IntMatrix::zeros(2, 3)),
            Err(OracleError::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn overflow_is_reported() {
        let big = i64::MAX;
        let m = mat(&[&[big, 0, 0], &[0, big, 0], &[0, 0, big]]);
        assert_eq!(det_oracle(&m), Err(OracleError::Overflow));
    }

    proptest! {
        #[test]
        fn det_matches_leibniz(n in 1usize..6, raw in prop::collection::vec(-4i64..=4, 36)) {
            let rows: Vec<Vec<i64>> = (0..n).map(|r| raw[r * 6..r * 6 + n].to_vec()).collect();
            let m = IntMatrix::from_rows(&rows).unwrap();
            prop_assert_eq!(det_oracle(&m).unwrap(), leibniz(&m));
        }

        #[test]
        fn inverse_times_matrix_is_identity(n in 1usize..6, raw in prop::collection::vec(-3i64..=3, 36)) {
            let rows: Vec<Vec<i64>> = (0..n).map(|r| raw[r * 6..r * 6 + n].to_vec()).collect();
            let m = IntMatrix::from_rows(&rows).unwrap();
            match invert_oracle(&m) {
                Err(OracleError::SingularMatrix) => prop_assert_eq!(leibniz(&m), 0),
                Err(e) => prop_assert!(false, "unexpected {e}"),
                Ok(inv) => {
                    prop_assert_eq!(leibniz(&m).abs() % inv.denominator(), 0);
                    for r in 0..n {
                        for c in 0..n {
                            let s: i128 = (0..n).map(|k| m.get(r, k) as i128 * inv.numerator(k, c)).sum();
                            prop_assert_eq!(s, if r == c { inv.denominator() } else { 0 });
                        }
                    }
                }
            }
        }
    }
}
