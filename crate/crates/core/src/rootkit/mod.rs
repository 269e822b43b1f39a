//! Classical root systems, Weyl group actions and Levi subsystems.

mod levi;
mod system;
mod weight;
mod weyl;

pub use levi::{Component, LeviSubsystem, Projection};
pub use system::{RootSystem, Series};
pub use weight::Weight;
pub use weyl::DEFAULT_ORBIT_CAP;
