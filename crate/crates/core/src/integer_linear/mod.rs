//! Exact linear algebra over the integers.

mod abelian;
mod matrix;
mod smith;

pub use abelian::{FgAbGroup, Homomorphism, Invariants, Simplified};
pub use matrix::{IntMatrix, JsonInt, JsonRows};
pub use smith::{integer_kernel, smith_normal_form, Smith};
