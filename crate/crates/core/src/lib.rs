//! Exact and numerical tools for the split real form of g2, its three real
//! flag manifolds, invariant metrics on them, and the homogeneous Ricci flow
//! on the flag manifold associated with the short simple root.

pub mod error;
pub mod exactfield;
pub mod flags;
pub mod flow;
pub mod g2core;
pub mod metrics;
pub mod ricci;
pub mod sampling;
pub mod verify;

pub use error::{G2Error, Result};
pub use exactfield::QF13;
pub use g2core::{FlagId, G2Element, KVector};
