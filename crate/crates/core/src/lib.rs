//! Convex hulls of coadjoint orbits of the classical compact groups.
//!
//! Computes the invariants r₀(λ) and r(λ) (least r with 0 in, resp. the whole
//! orbitope equal to, the union of hulls of r orbit points), the degree d₁ of
//! the first invariant polynomial, and membership in the associated cones.

pub mod charalg;
pub mod error;
pub mod invariants;
pub mod lp;
pub mod polygeom;
pub mod rational;
pub mod rootkit;

pub use error::{Error, Result};
pub use rational::Q;
pub use rootkit::{RootSystem, Series, Weight};

/// Engine version; cached results are keyed on it.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
