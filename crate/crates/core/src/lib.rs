//! Forward adjacency matrices of rooted trees and their inverses.
//!
//! A rooted tree over nodes `0..=N` whose labels strictly increase along
//! every walk away from the datum node `0` defines an `N x N` matrix `A`:
//! unit diagonal, `-1` at `(parent, child)`, zero elsewhere. Its inverse is
//! the 0/1 node-to-datum path matrix: `A⁻¹(i, j) = 1` exactly when `i` lies
//! on the root path of `j`.
//!
//! This crate computes that inverse three ways and keeps them honest
//! against each other:
//!
//! * [`inverse::invert_fast`] reads the inverse directly off the tree,
//! * [`inverse::invert_cofactor`] evaluates every super-diagonal minor by
//!   rotating the minor's critical column into place and adding the route
//!   columns to it ([`minor::upper_triangularize`]),
//! * [`oracle::invert_oracle`] runs exact integer elimination on the dense
//!   matrix and knows nothing about trees.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, generators
//! and the command line live in the `fwdtree` crate.
//!
//! ```
//! use fwdtree_core::{inverse, FwdAdjMatrix, Tree};
//!
//! // 0 - 1 - 2, with 3 hanging off 1
//! let tree = Tree::from_parents(&[0, 1, 1]).unwrap();
//! let a = FwdAdjMatrix::from_tree(&tree);
//! assert_eq!(a.get(1, 2), -1);
//! assert_eq!(a.get(1, 3), -1);
//!
//! let inv = inverse::invert_fast(&tree);
//! assert_eq!(inv.get(1, 3), 1);
//! assert_eq!(inv.get(2, 3), 0);
//! ```

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod dense;
pub mod inverse;
pub mod matrix;
pub mod minor;
pub mod oracle;
pub mod structure;
pub mod tree;

pub use dense::IntMatrix;
pub use inverse::{InverseError, PathMatrix, TripleReport};
pub use matrix::{ColumnPair, ColumnSum, FwdAdjMatrix, MatrixError};
pub use minor::{ColumnMatrix, MinorMatrix, SparseColumn, TriangularizationTrace};
pub use oracle::{ExactMatrix, OracleError};
pub use structure::{Rule, StructureViolation};
pub use tree::{
    IndexingReport, NumberingStrategy, RawGraph, Relabeling, RootedTree, Route, Tree, TreeError,
};
