use serde::{Deserialize, Serialize};

use super::bound::R0Options;
use super::r0::r0;
use crate::charalg::{symmetric_power_characters, trivial_multiplicity, SymmetricPowers};
use crate::error::{Error, Result};
use crate::rootkit::{RootSystem, Weight};

fn integral_dominant(rs: &RootSystem, lambda: &Weight) -> Result<Vec<i64>> {
    rs.check(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    lambda.to_ints()
}

/// dim (S^d V_λ)^K for d = 0..=d_max.
pub fn invariant_degrees(rs: &RootSystem, lambda: &[i64], d_max: usize, cap: usize) -> Result<Vec<u128>> {
    symmetric_power_characters(rs, lambda, d_max, cap)?.iter().map(|c| trivial_multiplicity(rs, c)).collect()
}

/// dim (S^d V_λ)^K for d = 1, 2, … up to the first nonzero value or d_max.
pub fn invariant_degrees_until_first(rs: &RootSystem, lambda: &Weight, d_max: usize, cap: usize) -> Result<Vec<u128>> {
    let l = integral_dominant(rs, lambda)?;
    if d_max == 0 {
        return Err(Error::Precondition("d_max must be at least 1".into()));
    }
    let mut sp = SymmetricPowers::new(rs, &l, cap)?;
    let mut dims = Vec::new();
    for _ in 1..=d_max {
        let m = trivial_multiplicity(rs, sp.advance()?)?;
        dims.push(m);
        if m > 0 {
            break;
        }
    }
    Ok(dims)
}

/// Least d in 1..=d_max with an invariant of degree d on V_λ.
pub fn d1(rs: &RootSystem, lambda: &Weight, d_max: usize, cap: usize) -> Result<Option<usize>> {
    let dims = invariant_degrees_until_first(rs, lambda, d_max, cap)?;
    Ok(dims.iter().position(|&m| m > 0).map(|i| i + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct B1 {
    pub value: Option<usize>,
    /// The q attaining the value.
    pub q: Option<u32>,
    pub d_max: usize,
    pub q_max: u32,
}

/// Least b ≤ d_max with C[V_{qλ}]_b^K ≠ 0 for some q ≤ q_max. A bounded search.
pub fn b1(rs: &RootSystem, lambda: &Weight, d_max: usize, q_max: u32, cap: usize) -> Result<B1> {
    let l = integral_dominant(rs, lambda)?;
    if lambda.is_zero() {
        return Err(Error::Precondition("b1 needs λ ≠ 0".into()));
    }
    let mut best: Option<(usize, u32)> = None;
    for qq in 1..=q_max {
        let bound = best.map_or(d_max, |(b, _)| b - 1);
        if bound == 0 {
            break;
        }
        let w = Weight::from_ints(&l.iter().map(|x| x * qq as i64).collect::<Vec<_>>());
        if let Some(d) = d1(rs, &w, bound, cap)? {
            best = Some((d, qq));
        }
    }
    Ok(B1 { value: best.map(|b| b.0), q: best.map(|b| b.1), d_max, q_max })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub q: u32,
    pub d1: Option<usize>,
    pub holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBoundReport {
    pub system: String,
    pub weight: String,
    pub r0: Option<usize>,
    pub checks: Vec<DegreeCheck>,
    pub b1: Option<usize>,
    pub b1_holds: Option<bool>,
    pub violations: Vec<String>,
}

impl DegreeBoundReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks r₀(λ) ≤ d₁(qλ) for q in `q_range` and b₁(λ) ≥ r₀(λ).
pub fn verify_degree_bound(rs: &RootSystem, lambda: &Weight, q_range: std::ops::RangeInclusive<u32>, d_max: usize, opts: &R0Options) -> Result<DegreeBoundReport> {
    let l = integral_dominant(rs, lambda)?;
    if lambda.is_zero() {
        return Err(Error::Precondition("the degree bound is checked for λ ≠ 0".into()));
    }
    let r = r0(rs, lambda, opts)?.value;
    let mut checks = Vec::new();
    let mut violations = Vec::new();
    for qq in q_range.clone() {
        let w = Weight::from_ints(&l.iter().map(|x| x * qq as i64).collect::<Vec<_>>());
        let d = d1(rs, &w, d_max, opts.character_cap)?;
        let holds = match (r, d) {
            (Some(r), Some(d)) => Some(r <= d),
            _ => None,
        };
        if holds == Some(false) {
            violations.push(format!("r0 = {} > d1({}·λ) = {}", r.unwrap(), qq, d.unwrap()));
        }
        checks.push(DegreeCheck { q: qq, d1: d, holds });
    }
    let b = checks.iter().filter_map(|c| c.d1).min();
    let b1_holds = match (r, b) {
        (Some(r), Some(b)) => Some(b >= r),
        _ => None,
    };
    if b1_holds == Some(false) {
        violations.push(format!("b1 = {} < r0 = {}", b.unwrap(), r.unwrap()));
    }
    Ok(DegreeBoundReport { system: rs.label(), weight: lambda.to_string(), r0: r, checks, b1: b, b1_holds, violations })
}
