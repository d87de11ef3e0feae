//! Arithmetic and dense linear algebra over `GF(p^e)`.

mod field;
mod matrix;

pub use field::{is_prime, Field, FieldElem, FieldSpec, MAX_EXTENSION_DEGREE};
pub(crate) use matrix::{axpy, free_columns};
pub use matrix::{Echelon, Matrix};
