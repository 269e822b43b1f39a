use serde::{Deserialize, Serialize};

use super::bound::{BoundResult, R0Options, Status};
use super::r0::r0;
use super::rinv::r_invariant;
use crate::error::Result;
use crate::rootkit::{RootSystem, Weight};

/// Three-valued answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

fn at_most(res: &BoundResult, r: usize) -> Tri {
    match res.value {
        Some(v) if v <= r => Tri::Yes,
        Some(_) if res.status != Status::UpperBoundOnly => Tri::No,
        None if res.status != Status::UpperBoundOnly && res.unknown_above.is_some_and(|u| r <= u) => Tri::No,
        _ => Tri::Unknown,
    }
}

/// λ ∈ 𝔄_r, i.e. r₀(λ) ≤ r.
pub fn in_cone_ar(rs: &RootSystem, lambda: &Weight, r: usize, opts: &R0Options) -> Result<Tri> {
    Ok(at_most(&r0(rs, lambda, opts)?, r))
}

/// λ ∈ 𝔆_r, i.e. r(λ) ≤ r.
pub fn in_cone_cr(rs: &RootSystem, lambda: &Weight, r: usize, opts: &R0Options) -> Result<Tri> {
    Ok(at_most(&r_invariant(rs, lambda, opts)?, r))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct R2Report {
    pub system: String,
    pub weight: String,
    /// Equal pairings with all simple roots of equal length.
    pub condition: bool,
    pub r: Option<usize>,
    pub status: Status,
    pub agree: bool,
}

/// Compares the equal-pairing condition with r(λ) = 2.
pub fn check_r2_criterion(rs: &RootSystem, lambda: &Weight, opts: &R0Options) -> Result<R2Report> {
    let res = r_invariant(rs, lambda, opts)?;
    let l = rs.rank();
    // (λ|α_i) = λ_i·(α_i|α_i)/2, so compare λ_i across nodes of equal length.
    let condition = (0..l).all(|i| (0..l).all(|j| rs.simple_root_norm(i) != rs.simple_root_norm(j) || lambda.fund()[i] == lambda.fund()[j]));
    let agree = res.value.map(|v| (v == 2) == condition).unwrap_or(false);
    Ok(R2Report { system: rs.label(), weight: lambda.to_string(), condition, r: res.value, status: res.status, agree })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn cone_membership() {
        let o = R0Options::default();
        assert_eq!(in_cone_ar(&rs("A4"), &w("1,0,0,0"), 4, &o).unwrap(), Tri::No);
        assert_eq!(in_cone_ar(&rs("A4"), &w("1,0,0,0"), 5, &o).unwrap(), Tri::Yes);
        assert_eq!(in_cone_cr(&rs("A2"), &w("1,0"), 3, &o).unwrap(), Tri::Yes);
        assert_eq!(in_cone_ar(&rs("A2"), &w("0,0"), 1, &o).unwrap(), Tri::Yes);
        assert_eq!(in_cone_cr(&rs("A2"), &w("0,0"), 1, &o).unwrap(), Tri::Yes);
        let restricted = R0Options { q_set: Some(vec![1]), ..Default::default() };
        assert_eq!(in_cone_ar(&rs("D5"), &w("0,0,0,0,1"), 3, &restricted).unwrap(), Tri::Unknown);
    }

    #[test]
    fn r2_condition_examples() {
        let o = R0Options::default();
        let b = check_r2_criterion(&rs("B2"), &w("1,1"), &o).unwrap();
        assert!(b.condition && b.agree);
        let a = check_r2_criterion(&rs("A2"), &w("1,0"), &o).unwrap();
        assert!(!a.condition && a.agree && a.r == Some(3));
        let a1 = check_r2_criterion(&rs("A1"), &w("1"), &o).unwrap();
        assert!(a1.condition && a1.agree);
    }
}
