//! Exact convex geometry on Weyl orbits.

mod extreme;
mod hull;
mod search;

pub use extreme::extreme_points_e;
pub use hull::{caratheodory_reduce, dominance_contains, kostant_contains, zero_in_conv, ZeroCertificate, ZeroInConv};
pub use search::{min_zero_subset, min_zero_subset_from, SearchOptions, SubsetOutcome, SubsetSearch};
