use num_traits::ToPrimitive;

use super::bound::{default_q_set, BoundResult, LowerBound, LrCertificate, R0Options, Status, TensorCertificate, TranscriptEntry};
use super::hive::{clr_chain, partition_of, verify_chain};
use crate::charalg::invariant_dim_tensor_power_int;
use crate::error::{Error, Result};
use crate::polygeom::{min_zero_subset_from, SearchOptions, SubsetOutcome, ZeroCertificate};
use crate::rational::{fmt_q, primitive_integer, q, qr, Q};
use crate::rootkit::{RootSystem, Series, Weight};

/// Least r with 0 ∈ C_r(Kλ).
pub fn r0(rs: &RootSystem, lambda: &Weight, opts: &R0Options) -> Result<BoundResult> {
    rs.check(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    if rs.series() == Series::D && rs.rank() == 3 {
        return r0_via_a3(rs, lambda, opts);
    }
    let res = if lambda.is_zero() {
        let mut res = BoundResult::new(1, Status::Exact, LowerBound::ZeroWeight);
        res.weyl_certificate = Some(ZeroCertificate { points: vec![lambda.clone()], coefficients: vec![q(1)] });
        res
    } else if rs.is_self_dual(lambda) {
        let mut res = BoundResult::new(2, Status::Exact, LowerBound::NonZero);
        res.weyl_certificate = Some(ZeroCertificate { points: vec![lambda.clone(), lambda.scale(&q(-1))], coefficients: vec![qr(1, 2), qr(1, 2)] });
        res.weyl_bound = Some(2);
        res
    } else {
        let r_max = opts.r_max.unwrap_or(rs.rank() + 1).max(3);
        let mut res = BoundResult::new(0, Status::UpperBoundOnly, LowerBound::NotSelfDual);
        res.value = None;
        let search_opts = SearchOptions { orbit_cap: opts.orbit_cap, parallel: opts.parallel };
        match min_zero_subset_from(rs, lambda, 3, r_max, &search_opts) {
            Ok(s) => {
                res.transcript.push(TranscriptEntry::WeylSearch { sizes_tried: s.sizes_tried.clone(), found: s.size(), orbit_size: s.orbit_size, nodes: s.nodes });
                if let SubsetOutcome::Found(c) = s.outcome {
                    res.weyl_bound = Some(c.len());
                    res.weyl_certificate = Some(c);
                }
            }
            Err(e @ Error::OrbitCap { .. }) => res.transcript.push(TranscriptEntry::WeylSearchAborted { error: e.to_string() }),
            Err(e) => return Err(e),
        }
        let prim = primitive(lambda)?;
        if rs.series() == Series::A {
            type_a(rs, &prim, r_max, &mut res);
        } else {
            tensor_scan(rs, &prim, r_max, opts, &mut res);
        }
        res
    };
    check_soundness(rs, lambda, &res)?;
    Ok(res)
}

fn primitive(lambda: &Weight) -> Result<Vec<i64>> {
    primitive_integer(lambda.fund()).iter().map(|x| x.to_i64().ok_or(Error::Overflow("weight coordinate"))).collect()
}

fn spectrum(c: &[i64]) -> Vec<Q> {
    partition_of(&c.iter().map(|&x| q(x)).collect::<Vec<_>>())
}

/// Weyl bound first, then the exact hive test downwards from r_W − 1.
fn type_a(rs: &RootSystem, prim: &[i64], r_max: usize, res: &mut BoundResult) {
    // r0(λ) = r0(λ*); the hive is cheaper on the smaller partition.
    let dual = rs.dual_int(prim);
    let size = |c: &[i64]| spectrum(c).iter().sum::<Q>();
    let chosen = if size(&dual) < size(prim) { dual } else { prim.to_vec() };
    let system = rs.label();
    let test = |r: usize, res: &mut BoundResult| -> bool {
        let spectra = vec![spectrum(&chosen); r];
        let chain = clr_chain(&spectra);
        res.transcript.push(TranscriptEntry::Hive { system: system.clone(), r, feasible: chain.is_some() });
        if let Some(inner) = &chain {
            res.lr_certificate = Some(LrCertificate {
                system: system.clone(),
                weight: Weight::from_ints(&chosen).to_string(),
                r,
                partial_sums: inner.iter().map(|v| v.iter().map(fmt_q).collect()).collect(),
            });
        }
        chain.is_some()
    };
    res.status = Status::Exact;
    match res.weyl_bound {
        Some(rw) => {
            let mut value = rw;
            res.lower_bound = LowerBound::NotSelfDual;
            let mut r = rw - 1;
            while r >= 3 {
                if !test(r, res) {
                    res.lower_bound = LowerBound::LrInfeasible { r };
                    break;
                }
                value = r;
                r -= 1;
            }
            res.value = Some(value);
        }
        None => {
            for r in 3..=r_max {
                if test(r, res) {
                    res.value = Some(r);
                    res.lower_bound = if r == 3 { LowerBound::NotSelfDual } else { LowerBound::LrInfeasible { r: r - 1 } };
                    return;
                }
            }
            res.unknown_above = Some(r_max);
            res.lower_bound = LowerBound::LrInfeasible { r: r_max };
        }
    }
}

/// Least q ≥ 1 with r·q·λ in the root lattice.
fn q_base(rs: &RootSystem, prim: &[i64], r: usize) -> u32 {
    (1u32..)
        .find(|&k| rs.in_root_lattice(&prim.iter().map(|x| x * (r as i64) * k as i64).collect::<Vec<_>>()))
        .expect("the weight lattice modulo the root lattice is finite")
}

/// Ascending tensor tests below the Weyl bound.
fn tensor_scan(rs: &RootSystem, prim: &[i64], r_max: usize, opts: &R0Options, res: &mut BoundResult) {
    let default = default_q_set(rs.series());
    let q_set = opts.q_set.clone().unwrap_or_else(|| default.clone());
    let saturated = q_set == default;
    let upper = res.weyl_bound.unwrap_or(r_max + 1);
    let mut failures: Vec<u32> = Vec::new();
    let mut complete = true;
    for r in 3..upper {
        let qb = q_base(rs, prim, r);
        failures.clear();
        for &k in &q_set {
            let qq = qb * k;
            let mu: Vec<i64> = prim.iter().map(|x| x * qq as i64).collect();
            match invariant_dim_tensor_power_int(rs, &mu, r, opts.character_cap) {
                Ok(d) => {
                    res.transcript.push(TranscriptEntry::Tensor { r, q: qq, dimension: Some(d), error: None });
                    if d > 0 {
                        res.value = Some(r);
                        res.tensor_certificate = Some(TensorCertificate { weight: Weight::from_ints(prim).to_string(), q: qq, r, dimension: d });
                        if r == 3 {
                            res.status = Status::Exact;
                            res.lower_bound = LowerBound::NotSelfDual;
                        } else {
                            res.status = if saturated && complete { Status::ExactAssumingSaturationFactor } else { Status::UpperBoundOnly };
                            res.lower_bound = LowerBound::TensorFailure { r: r - 1, q: last_failures(res, r - 1) };
                        }
                        return;
                    }
                    failures.push(qq);
                }
                Err(e) => {
                    complete = false;
                    res.transcript.push(TranscriptEntry::Tensor { r, q: qq, dimension: None, error: Some(e.to_string()) });
                }
            }
        }
    }
    match res.weyl_bound {
        Some(3) => {
            res.value = Some(3);
            res.status = Status::Exact;
            res.lower_bound = LowerBound::NotSelfDual;
        }
        Some(rw) => {
            res.value = Some(rw);
            res.status = if saturated && complete { Status::ExactAssumingSaturationFactor } else { Status::UpperBoundOnly };
            res.lower_bound = LowerBound::TensorFailure { r: rw - 1, q: failures };
        }
        None => {
            res.unknown_above = Some(r_max);
            res.status = Status::UpperBoundOnly;
            res.lower_bound = LowerBound::TensorFailure { r: r_max, q: failures };
        }
    }
}

fn last_failures(res: &BoundResult, r: usize) -> Vec<u32> {
    res.transcript
        .iter()
        .filter_map(|t| match t {
            TranscriptEntry::Tensor { r: s, q, dimension: Some(0), .. } if *s == r => Some(*q),
            _ => None,
        })
        .collect()
}

/// D₃ ≅ A₃: the central D₃ node is the middle A₃ node.
fn r0_via_a3(rs: &RootSystem, lambda: &Weight, opts: &R0Options) -> Result<BoundResult> {
    let perm = |w: &Weight| -> Weight {
        let f = w.fund();
        Weight::new(vec![f[1].clone(), f[0].clone(), f[2].clone()])
    };
    let a3 = RootSystem::new(Series::A, 3)?;
    let mut res = r0(&a3, &perm(lambda), opts)?;
    res.transcript.insert(0, TranscriptEntry::Isomorphism { from: rs.label(), to: a3.label(), weight: perm(lambda).to_string() });
    if let Some(c) = &mut res.weyl_certificate {
        c.points = c.points.iter().map(perm).collect();
    }
    check_soundness(rs, lambda, &res)?;
    Ok(res)
}

/// The soundness chain checked on every result.
fn check_soundness(rs: &RootSystem, lambda: &Weight, res: &BoundResult) -> Result<()> {
    let fail = |m: &str| Err(Error::Precondition(format!("unsound r0 result for {lambda}: {m}")));
    if res.status == Status::Exact && res.value.is_some() && res.weyl_certificate.is_none() && res.tensor_certificate.is_none() && res.lr_certificate.is_none() {
        return fail("exact value without a certificate");
    }
    let Some(v) = res.value else {
        return Ok(());
    };
    if let Some(c) = &res.weyl_certificate {
        c.verify(rs)?;
        if rs.dominant_representative(&c.points[0]).0 != *lambda {
            return fail("certificate lies in another orbit");
        }
        if c.len() < v {
            return fail("Weyl certificate smaller than the value");
        }
    }
    if let Some(t) = &res.tensor_certificate {
        if t.dimension == 0 || t.r < v {
            return fail("tensor certificate does not bound the value");
        }
    }
    if let Some(l) = &res.lr_certificate {
        let sys: RootSystem = l.system.parse()?;
        let w: Weight = l.weight.parse()?;
        let spectra = vec![partition_of(w.fund()); l.r];
        let inner: Vec<Vec<Q>> = l.partial_sums.iter().map(|v| v.iter().map(|s| crate::rational::parse_q(s)).collect::<Result<_>>()).collect::<Result<_>>()?;
        if sys.series() != Series::A || l.r < v || !verify_chain(&spectra, &inner) {
            return fail("hive chain does not verify");
        }
    }
    if !lambda.is_zero() && (v == 2) != rs.is_self_dual(lambda) {
        return fail("value 2 must match self-duality");
    }
    if (v == 1) != lambda.is_zero() {
        return fail("value 1 must match λ = 0");
    }
    Ok(())
}
