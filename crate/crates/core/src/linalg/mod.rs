//! Sparse exact linear algebra and the quotient `Z/B` of a cell.

mod echelon;
mod quotient;
mod sparse;

pub use echelon::{cokernel_constraints, nullspace_basis, rank, row_reduce, solve, EchelonForm};
pub use quotient::{normalize_first, quotient_space, CoboundarySystem, QuotientResult};
pub use sparse::{axpy, dot, from_dense, lookup, normalize, scale, to_dense, SparseMatrix, SparseVec};
