//! Exact arithmetic and dense linear algebra over prime fields.

mod field;
mod matrix;
mod space;

pub use field::{fq_add, fq_inv, fq_mul, fq_neg, FieldSpec};
pub use matrix::{
    mat_mul, nullspace_basis, rank, row_reduce, solve_particular, support, weight, FqMatrix,
    FqVector, RowReduced,
};
pub(crate) use space::checked_pow;
pub use space::{Shift, Space};
