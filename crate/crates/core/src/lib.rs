//! Numerical laboratory for joint k-numerical ranges of operator tuples.
//!
//! For an m-tuple `A = (A_1, …, A_m)` of n×n matrices the joint k-numerical
//! range is the set of trace tuples `(tr(A_1 P), …, tr(A_m P))` over rank-k
//! orthogonal projections `P`. Everything in this crate is built on one fact:
//! the support function of its convex hull in a real direction `u` is the sum
//! of the k largest eigenvalues of `Σ u_j A_j`.
//!
//! Module map:
//!
//! - [`linalg`]: dense complex matrices, a Hermitian eigensolver, splitting and
//!   commutator defects.
//! - [`model`]: operator tuples, real forms, affine maps, direct sums and the
//!   finite-head-plus-diagonal-tail operator model.
//! - [`range`]: support values, boundary points, inner sampling, outer hulls.
//! - [`geometry`]: hulls, membership, Hausdorff gaps and the convexity probe.
//! - [`polyhedral`]: polyhedrality detection and conical points.
//! - [`structure`]: reducing subspaces, joint diagonalization, commuting
//!   normal certification and joint eigenvalue subset sums.
//! - [`essential`]: essential ranges, closure hulls and the closedness probe.
//! - [`cli`]: the file formats and the `jnr` command-line front end.

pub mod cli;
pub mod error;
pub mod essential;
pub mod geometry;
pub mod linalg;
pub mod model;
pub mod polyhedral;
pub mod range;
pub mod structure;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenDecomposition, C64};
pub use model::{AffineMap, HermitianTuple, MatrixTuple, OperatorSpec, Provenance, RangePoint, TailGenerator};
