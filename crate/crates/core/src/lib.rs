//! Exact verification of adapted pairs and Weierstrass sections for truncated
//! parabolic subalgebras of the simple Lie algebras of types B, C and D.
//!
//! Everything is computed over the rationals. Roots live in ε-coordinates,
//! Cartan elements are coordinate vectors `c_i = ε_i(h)`, and weights are
//! rational vectors in the same basis.

#![no_std]

extern crate alloc;

pub mod adapted;
pub mod cascade;
pub mod characters;
mod error;
pub mod liealg;
pub mod linalg;
pub mod parabolic;
pub mod rootsys;

pub use error::Error;
pub use linalg::Q;
pub use rootsys::{Family, Root, RootSystem};

pub type Result<T> = core::result::Result<T, Error>;
