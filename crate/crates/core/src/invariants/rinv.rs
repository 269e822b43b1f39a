use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::bound::{BoundResult, LowerBound, R0Options, Status, Subsystem, TranscriptEntry};
use super::r0::r0;
use crate::error::{Error, Result};
use crate::polygeom::ZeroCertificate;
use crate::rational::q;
use crate::rootkit::{RootSystem, Weight};

/// r(λ) = max of r₀(λ|Π̂) over connected Π̂ ⊆ Π, the empty set giving 1.
pub fn r_invariant(rs: &RootSystem, lambda: &Weight, opts: &R0Options) -> Result<BoundResult> {
    rs.check(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let mut terms = Vec::new();
    for nodes in rs.connected_subdiagrams().into_iter().filter(|s| !s.is_empty()) {
        let ls = rs.levi_subsystem(&nodes)?;
        let proj = rs.project_weight(&ls, lambda)?;
        let (component, weight) = proj.components.into_iter().next().expect("connected sub-diagram");
        terms.push((nodes, component.root_system(), weight));
    }
    let mut keys: Vec<(String, String)> = terms.iter().map(|(_, s, w)| (s.label(), w.to_string())).collect();
    keys.sort();
    keys.dedup();
    let systems: FxHashMap<String, RootSystem> = terms.iter().map(|(_, s, _)| (s.label(), s.clone())).collect();
    let solved: Vec<((String, String), BoundResult)> = keys
        .into_par_iter()
        .map(|(label, w)| {
            let weight: Weight = w.parse()?;
            let res = r0(&systems[&label], &weight, opts)?;
            Ok(((label, w), res))
        })
        .collect::<Result<_>>()?;
    let memo: FxHashMap<(String, String), BoundResult> = solved.into_iter().collect();

    let mut out = BoundResult::new(1, Status::Exact, LowerBound::ZeroWeight);
    out.weyl_certificate = Some(ZeroCertificate { points: vec![Weight::zero(rs.rank())], coefficients: vec![q(1)] });
    out.subsystem = Some(Subsystem { nodes: vec![], system: rs.label(), weight: Weight::zero(rs.rank()).to_string() });
    let mut unknown = false;
    for (nodes, sys, w) in &terms {
        let res = &memo[&(sys.label(), w.to_string())];
        out.transcript.push(TranscriptEntry::Component { nodes: nodes.clone(), system: sys.label(), weight: w.to_string(), value: res.value, status: res.status });
        let Some(v) = res.value else {
            unknown = true;
            continue;
        };
        let cur = out.value.unwrap_or(0);
        if v > cur {
            out.value = Some(v);
            out.status = res.status;
            out.lower_bound = res.lower_bound.clone();
            out.weyl_bound = res.weyl_bound;
            out.weyl_certificate = res.weyl_certificate.clone();
            out.tensor_certificate = res.tensor_certificate.clone();
            out.lr_certificate = res.lr_certificate.clone();
            out.subsystem = Some(Subsystem { nodes: nodes.clone(), system: sys.label(), weight: w.to_string() });
        } else if v == cur {
            out.status = out.status.weakest(res.status);
        }
    }
    if unknown {
        out.status = Status::UpperBoundOnly;
        out.unknown_above = out.value;
        out.value = None;
    }
    if let Some(v) = out.value {
        assert!(v <= rs.rank() + 1, "r(λ) ≤ ℓ+1");
        assert_eq!(v == 1, lambda.is_zero(), "r(λ) = 1 exactly for λ = 0");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(label: &str, w: &str) -> BoundResult {
        r_invariant(&label.parse().unwrap(), &w.parse().unwrap(), &R0Options::default()).unwrap()
    }

    #[test]
    fn fundamental_weights() {
        assert_eq!(r("A3", "1,0,0").value, Some(4));
        assert_eq!(r("A3", "0,1,0").value, Some(3));
        assert_eq!(r("C2", "0,1").value, Some(2));
        assert_eq!(r("B3", "1,0,0").value, Some(3));
        let spin = r("D5", "0,0,0,0,1");
        assert_eq!((spin.value, spin.status), (Some(5), Status::Exact));
        assert_eq!(spin.subsystem.unwrap().system, "A4");
    }

    #[test]
    fn zero_and_rank_bound() {
        assert_eq!(r("A2", "0,0").value, Some(1));
        assert_eq!(r("A1", "1").value, Some(2));
        assert_eq!(r("A2", "1,0").value, Some(3));
    }
}
