use std::collections::BTreeMap;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::character::{character_int, weyl_dim_int, WeightCharacter, Wt};
use crate::error::{Error, Result};
use crate::rootkit::{RootSystem, Weight};

/// Reflects x (already shifted by ρ) into the dominant chamber. Returns the
/// dominant point and the sign, or `None` when x lies on a wall.
fn to_chamber(rs: &RootSystem, x: &mut Wt) -> Option<i8> {
    let mut sign = 1i8;
    while let Some(i) = x.iter().position(|&c| c < 0) {
        let ci = x[i];
        for (c, a) in x.iter_mut().zip(rs.simple_root_fund(i)) {
            *c -= ci * a;
        }
        sign = -sign;
    }
    if x.contains(&0) {
        None
    } else {
        Some(sign)
    }
}

/// Brauer–Klimyk step: Σ_ν m_ν V_ν ⊗ V, where `weights` lists every weight
/// of V with multiplicity. Components failing `keep` are dropped.
fn klimyk_step<F>(rs: &RootSystem, current: &BTreeMap<Wt, u128>, weights: &[(Wt, u128)], keep: F) -> Result<BTreeMap<Wt, u128>>
where
    F: Fn(&Wt) -> bool + Sync,
{
    let entries: Vec<(&Wt, &u128)> = current.iter().collect();
    let acc = entries
        .par_iter()
        .fold(FxHashMap::<Wt, i128>::default, |mut acc, (nu, m)| {
            for (beta, mb) in weights {
                let mut x: Wt = nu.iter().zip(beta).map(|(a, b)| a + b + 1).collect();
                let Some(sign) = to_chamber(rs, &mut x) else {
                    continue;
                };
                for c in x.iter_mut() {
                    *c -= 1;
                }
                if !keep(&x) {
                    continue;
                }
                let term = (**m as i128) * (*mb as i128);
                *acc.entry(x).or_insert(0) += if sign > 0 { term } else { -term };
            }
            acc
        })
        .reduce(FxHashMap::default, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut out = BTreeMap::new();
    for (k, v) in acc {
        if v < 0 {
            return Err(Error::Precondition(format!("negative Klimyk multiplicity at {k:?}")));
        }
        if v > 0 {
            out.insert(k, v as u128);
        }
    }
    Ok(out)
}

/// V_λ ⊗ V_μ by the Brauer–Klimyk rule, iterating over the weights of the
/// smaller factor.
pub fn tensor_decompose(rs: &RootSystem, lambda: &Weight, mu: &Weight, cap: usize) -> Result<super::IrrDecomposition> {
    let mut l = ints_dominant(rs, lambda)?;
    let mut m = ints_dominant(rs, mu)?;
    if weyl_dim_int(rs, &l) < weyl_dim_int(rs, &m) {
        std::mem::swap(&mut l, &mut m);
    }
    tensor_decompose_int(rs, &l, &m, cap)
}

pub fn tensor_decompose_int(rs: &RootSystem, lambda: &[i64], mu: &[i64], cap: usize) -> Result<super::IrrDecomposition> {
    let weights = character_int(rs, mu, cap)?.full(rs, cap)?;
    let start = BTreeMap::from([(lambda.to_vec(), 1u128)]);
    let components = klimyk_step(rs, &start, &weights, |_| true)?;
    Ok(super::IrrDecomposition { components })
}

fn ints_dominant(rs: &RootSystem, w: &Weight) -> Result<Wt> {
    rs.check(w)?;
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.to_string()));
    }
    w.to_ints()
}

/// Product of two W-invariant characters.
pub fn multiply(rs: &RootSystem, a: &WeightCharacter, b: &WeightCharacter, cap: usize) -> Result<WeightCharacter> {
    let (small, large) = if a.dominant_len() <= b.dominant_len() { (a, b) } else { (b, a) };
    let full = small.full(rs, cap)?;
    multiply_full(rs, &full, large)
}

/// Product of a character given by all its weights and one given on
/// dominant weights.
pub(crate) fn multiply_full(rs: &RootSystem, full: &[(Wt, u128)], large: &WeightCharacter) -> Result<WeightCharacter> {
    let mut targets: Vec<Wt> = large
        .dominant
        .keys()
        .flat_map(|d| full.iter().map(move |(w, _)| rs.dominant_int(&d.iter().zip(w).map(|(x, y)| x + y).collect::<Wt>())))
        .collect();
    targets.sort();
    targets.dedup();
    let out: Result<Vec<(Wt, u128)>> = targets
        .into_par_iter()
        .map(|nu| {
            let mut s: u128 = 0;
            for (w, m) in full {
                let diff: Wt = nu.iter().zip(w).map(|(x, y)| x - y).collect();
                let n = large.mult(rs, &diff);
                if n > 0 {
                    s = m.checked_mul(n).and_then(|t| s.checked_add(t)).ok_or(Error::Overflow("character product"))?;
                }
            }
            Ok((nu, s))
        })
        .collect();
    Ok(WeightCharacter::from_dominant(out?.into_iter().filter(|(_, m)| *m > 0).collect()))
}

/// Decomposes a character by repeatedly removing the character of its
/// highest remaining weight.
pub fn decompose_character(rs: &RootSystem, ch: &WeightCharacter, cap: usize) -> Result<super::IrrDecomposition> {
    let rho = vec![1i64; rs.rank()];
    let mut rest: FxHashMap<Wt, i128> = ch.dominant.iter().map(|(k, v)| (k.clone(), *v as i128)).collect();
    let mut components = BTreeMap::new();
    loop {
        rest.retain(|_, v| *v != 0);
        let Some(top) = rest.keys().max_by(|a, b| rs.inner_int(a, &rho).cmp(&rs.inner_int(b, &rho)).then_with(|| a.cmp(b))).cloned() else {
            break;
        };
        let m = rest[&top];
        if m < 0 {
            return Err(Error::Precondition("character is not a non-negative combination of irreducibles".into()));
        }
        components.insert(top.clone(), m as u128);
        for (w, k) in character_int(rs, &top, cap)?.dominant {
            *rest.entry(w).or_insert(0) -= m * k as i128;
        }
    }
    Ok(super::IrrDecomposition { components })
}

/// Decomposition of V^{⊗k} where `weights` are all weights of V, keeping only
/// components of squared norm at most `bound(k)`.
fn tensor_power_pruned<F>(rs: &RootSystem, hw: &[i64], weights: &[(Wt, u128)], k: usize, bound: F) -> Result<BTreeMap<Wt, u128>>
where
    F: Fn(usize) -> i128,
{
    let mut cur = BTreeMap::from([(vec![0i64; rs.rank()], 1u128)]);
    for step in 1..=k {
        let limit = bound(step);
        let keep = |x: &Wt| (rs.inner_int(x, x) as i128) <= limit;
        cur = if step == 1 {
            BTreeMap::from([(hw.to_vec(), 1u128)]).into_iter().filter(|(x, _)| keep(x)).collect()
        } else {
            klimyk_step(rs, &cur, weights, keep)?
        };
    }
    Ok(cur)
}

/// dim (V_{qλ}^{⊗r})^K.
///
/// The r factors are split as a + b with a ≥ b and the invariants counted as
/// Σ_ν m_ν(V^{⊗a}) m_{ν*}(V^{⊗b}). A component after k factors is dropped
/// when its norm exceeds (r − k)|qλ|, since each further factor moves the
/// highest weight by at most |qλ|.
pub fn invariant_dim_tensor_power(rs: &RootSystem, lambda: &Weight, r: usize, q: u32, cap: usize) -> Result<u128> {
    let l = ints_dominant(rs, lambda)?;
    if r == 0 || q == 0 {
        return Err(Error::Precondition("r and q must be positive".into()));
    }
    let mu: Wt = l.iter().map(|x| x * q as i64).collect();
    invariant_dim_tensor_power_int(rs, &mu, r, cap)
}

pub fn invariant_dim_tensor_power_int(rs: &RootSystem, mu: &[i64], r: usize, cap: usize) -> Result<u128> {
    if mu.iter().all(|&x| x == 0) {
        return Ok(1);
    }
    let total: Wt = mu.iter().map(|x| x * r as i64).collect();
    if !rs.in_root_lattice(&total) {
        return Ok(0);
    }
    if r == 1 {
        return Ok(0);
    }
    let weights = character_int(rs, mu, cap)?.full(rs, cap)?;
    let n2 = rs.inner_int(mu, mu) as i128;
    let bound = |k: usize| ((r - k) as i128).pow(2) * n2;
    let a = r.div_ceil(2);
    let b = r - a;
    let left = tensor_power_pruned(rs, mu, &weights, a, bound)?;
    let right = if b == a { left.clone() } else { tensor_power_pruned(rs, mu, &weights, b, bound)? };
    let mut s: u128 = 0;
    for (nu, m) in &left {
        if let Some(n) = right.get(&rs.dual_int(nu)) {
            s = m.checked_mul(*n).and_then(|t| s.checked_add(t)).ok_or(Error::Overflow("invariant count"))?;
        }
    }
    Ok(s)
}

/// Plain left-to-right iteration without splitting or pruning.
pub fn invariant_dim_tensor_power_naive(rs: &RootSystem, mu: &[i64], r: usize, cap: usize) -> Result<u128> {
    let weights = character_int(rs, mu, cap)?.full(rs, cap)?;
    let mut cur = BTreeMap::from([(mu.to_vec(), 1u128)]);
    for _ in 1..r {
        cur = klimyk_step(rs, &cur, &weights, |_| true)?;
    }
    Ok(cur.get(&vec![0; rs.rank()]).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::super::DEFAULT_CHARACTER_CAP as CAP;
    use super::*;

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    #[test]
    fn clebsch_gordan_and_small_products() {
        let a1 = rs("A1");
        let d = tensor_decompose(&a1, &w(&[1]), &w(&[1]), CAP).unwrap();
        assert_eq!(d.components, BTreeMap::from([(vec![0], 1), (vec![2], 1)]));

        let a2 = rs("A2");
        let d = tensor_decompose(&a2, &w(&[1, 0]), &w(&[0, 1]), CAP).unwrap();
        assert_eq!(d.components, BTreeMap::from([(vec![0, 0], 1), (vec![1, 1], 1)]));
        assert_eq!(d.dimension(&a2), 9);

        let d = tensor_decompose(&a2, &w(&[2, 1]), &w(&[0, 0]), CAP).unwrap();
        assert_eq!(d.components, BTreeMap::from([(vec![2, 1], 1)]));
    }

    #[test]
    fn klimyk_matches_character_products() {
        let cases = [("A2", vec![1, 1], vec![1, 1]), ("B2", vec![1, 1], vec![0, 1]), ("C3", vec![0, 1, 0], vec![1, 0, 0]), ("D4", vec![0, 0, 1, 0], vec![0, 0, 0, 1])];
        for (label, a, b) in cases {
            let r = rs(label);
            let k = tensor_decompose_int(&r, &a, &b, CAP).unwrap();
            let prod = multiply(&r, &character_int(&r, &a, CAP).unwrap(), &character_int(&r, &b, CAP).unwrap(), CAP).unwrap();
            assert_eq!(k, decompose_character(&r, &prod, CAP).unwrap(), "{label}");
            assert_eq!(k.dimension(&r), weyl_dim_int(&r, &a) * weyl_dim_int(&r, &b));
        }
    }

    #[test]
    fn invariants_of_small_powers() {
        let a2 = rs("A2");
        assert_eq!(invariant_dim_tensor_power(&a2, &w(&[1, 0]), 3, 1, CAP).unwrap(), 1);
        assert_eq!(invariant_dim_tensor_power(&a2, &w(&[1, 0]), 2, 1, CAP).unwrap(), 0);
        assert_eq!(invariant_dim_tensor_power(&rs("A1"), &w(&[1]), 2, 1, CAP).unwrap(), 1);
        // (C²)^{⊗4} has a 2-dimensional invariant space.
        assert_eq!(invariant_dim_tensor_power(&rs("A1"), &w(&[1]), 4, 1, CAP).unwrap(), 2);
    }

    #[test]
    fn split_and_pruned_count_matches_naive_iteration() {
        for (label, mu, r) in [("A2", vec![1, 1], 4), ("A3", vec![1, 0, 0], 4), ("B2", vec![0, 1], 5), ("D5", vec![0, 0, 0, 0, 2], 4), ("A2", vec![2, 0], 3)] {
            let sys = rs(label);
            assert_eq!(
                invariant_dim_tensor_power_int(&sys, &mu, r, CAP).unwrap(),
                invariant_dim_tensor_power_naive(&sys, &mu, r, CAP).unwrap(),
                "{label} {mu:?} r={r}"
            );
        }
    }

    #[test]
    fn duality_preserves_invariant_dimension() {
        let a3 = rs("A3");
        for r in 2..=5 {
            let x = invariant_dim_tensor_power_int(&a3, &[2, 1, 0], r, CAP).unwrap();
            let y = invariant_dim_tensor_power_int(&a3, &[0, 1, 2], r, CAP).unwrap();
            assert_eq!(x, y, "r={r}");
        }
    }
}
