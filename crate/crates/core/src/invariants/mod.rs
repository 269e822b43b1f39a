//! The invariants r₀, r, d₁ and b₁, cone membership and the closed-form tables.

mod bound;
mod cones;
mod degree;
pub mod hive;
mod r0;
mod rinv;
mod tables;

pub use bound::{default_q_set, BoundResult, LowerBound, LrCertificate, R0Options, Status, Subsystem, TensorCertificate, TranscriptEntry};
pub use cones::{check_r2_criterion, in_cone_ar, in_cone_cr, R2Report, Tri};
pub use degree::{b1, d1, invariant_degrees, invariant_degrees_until_first, verify_degree_bound, DegreeCheck, DegreeBoundReport, B1};
pub use r0::r0;
pub use rinv::r_invariant;
pub use tables::{
    euclid_sum, second_weight_formula, CertificateSize, spin6_zero_set, su_fundamental, verify_reference_tables, Family, TableOptions, TableRow, TablesReport, ThirdWeightForms,
    ThirdWeightRow, WeylGap,
};
