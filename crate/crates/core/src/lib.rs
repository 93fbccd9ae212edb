//! Exact-arithmetic laboratory for projective differential invariants of
//! parametrized varieties.

pub mod catalog;
pub mod clifford;
pub mod defects;
pub mod error;
pub mod exact;
pub mod jets;
pub mod matspaces;
pub mod osc;

pub use error::{Error, Result};
