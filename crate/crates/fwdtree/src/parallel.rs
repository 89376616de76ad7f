//! Cofactor inversion spread over a rayon pool.

use fwdtree_core::inverse::cofactor_column;
use fwdtree_core::{FwdAdjMatrix, InverseError, PathMatrix, Tree};
use rayon::prelude::*;

/// Same result as [`fwdtree_core::inverse::invert_cofactor`]; columns are
/// evaluated independently and reassembled in order, so the output does
/// not depend on the thread count.
pub fn invert_cofactor_parallel(a: &FwdAdjMatrix, tree: &Tree) -> Result<PathMatrix, InverseError> {
    let columns = (1..=a.dim())
        .into_par_iter()
        .map(|j| cofactor_column(a, tree, j))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PathMatrix::from_columns(&columns))
}
