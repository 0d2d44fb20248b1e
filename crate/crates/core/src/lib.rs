//! Executable forms of the uniform generation identities for finite simple
//! groups: exact arithmetic in GF(p^k), alternating group factorizations,
//! SL(d,q) Bruhat machinery, classical form identities and the finite
//! combinatorics of subgroup covers.
//!
//! Every factorization returns a [`witness::Witness`] whose letters multiply
//! back to the target; the tests re-multiply every witness they see.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cover;
pub mod error;
pub mod field;
pub mod forms;
pub mod matrix;
pub mod perm;
pub mod witness;

pub use error::{Error, Result};
pub use field::{Elt, Field};
pub use matrix::Mat;
pub use perm::Perm;
pub use witness::{Tag, Witness};
