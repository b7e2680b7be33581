//! The ASM graph on alternating sign matrices.
//!
//! This crate builds the directed graph on `A_n` induced by rectangular
//! moves on corner sum matrices, and uses it to
//!
//! * decide ASM (Bruhat) order with a certificate either way: a
//!   subtraction-free Laurent expression for `x^A - x^B` when `A ≤ B`, or a
//!   totally nonnegative matrix on which `x^A - x^B` is negative otherwise;
//! * compute the bigrassmannian statistic β by three independent formulas;
//! * compute the signed bigrassmannian polynomial `B_n(q)` four ways,
//!   including a q-weighted Dodgson condensation.
//!
//! All indices in the public API are 1-based.

pub mod asm;
pub mod bigrassmannian;
pub mod enumerate;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod suite;
pub mod symbolic;
pub mod tnn;

pub use asm::{validate_asm, Asm, CornerSum, Permutation};
pub use error::{Error, Limit, Result};
