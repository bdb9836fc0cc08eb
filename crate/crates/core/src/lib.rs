//! Exact computations with special degeneration data of metacyclic covers
//! of the projective line in characteristic `p`.
//!
//! The crate is `no_std` (with `alloc`). Enable the `std` feature for
//! `std::error::Error` implementations.

#![no_std]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod ff;
pub mod linalg;
pub mod cartier;
pub mod cover;
pub mod degen;
pub mod invariants;
pub mod poly;
pub mod tree;

pub use ff::{embed, field_make, kth_root, Embedding, Field, FieldElement, FieldError};
pub use linalg::Matrix;
pub use poly::{binom_mod_p, coeff, product_of_linear_powers, Polynomial};
