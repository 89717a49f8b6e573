//! Exact dense linear algebra over GF(p) and the rationals.

pub mod field;
pub mod matrix;

pub use field::{Field, FieldTag, PrimeField, Rationals};
pub use matrix::{induced_map, quotient_basis, Matrix};
