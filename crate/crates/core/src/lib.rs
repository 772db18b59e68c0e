//! Exact computation of generic transitivity degrees for simple algebraic
//! group actions on flag varieties `G/P_i` and for Levi actions on
//! nilradicals, together with the root-system, parabolic, quiver and
//! tensor-product machinery behind those numbers.
//!
//! Everything is computed in exact integer or rational arithmetic; no
//! floating point appears anywhere in the crate.

pub mod error;
pub mod gtd;
pub mod parabolic;
pub mod quiver;
pub mod rootsys;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use rootsys::{LieType, Root, Series, Weight};
