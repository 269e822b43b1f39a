use crate::error::{Error, Result};
use crate::rootkit::{RootSystem, Weight};

/// The points ν_{λ,Π̂} over all Π̂ ⊆ Π, duplicates merged (the first subset in
/// size-then-lexicographic order is kept). These are the extreme points of
/// 𝔱₊ ∩ Conv(Wλ).
pub fn extreme_points_e(rs: &RootSystem, lambda: &Weight) -> Result<Vec<(Vec<usize>, Weight)>> {
    rs.check(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let l = rs.rank();
    let mut subsets: Vec<Vec<usize>> = (0u32..(1 << l))
        .map(|m| (0..l).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut out: Vec<(Vec<usize>, Weight)> = Vec::new();
    for s in subsets {
        let ls = rs.levi_subsystem(&s)?;
        let nu = rs.project_weight(&ls, lambda)?.central;
        if !out.iter().any(|(_, w)| *w == nu) {
            out.push((s, nu));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygeom::{kostant_contains, zero_in_conv};
    use crate::rational::{q, qr, Q};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_weight_has_one_point() {
        let rs: RootSystem = "B3".parse().unwrap();
        let e = extreme_points_e(&rs, &Weight::zero(3)).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e[0].1.is_zero());
    }

    #[test]
    fn a2_varpi1() {
        let rs: RootSystem = "A2".parse().unwrap();
        let e = extreme_points_e(&rs, &rs.fundamental(0)).unwrap();
        let pts: Vec<&Weight> = e.iter().map(|(_, w)| w).collect();
        assert!(pts.contains(&&rs.fundamental(0)));
        assert!(pts.contains(&&Weight::zero(2)));
        assert!(pts.contains(&&Weight::new(vec![q(0), qr(1, 2)])));
        // Π̂ = {2} leaves ϖ₁ unchanged and merges with Π̂ = ∅.
        assert_eq!(e.len(), 3);
    }

    #[test]
    fn points_are_dominant_and_inside_the_polytope() {
        for (label, w) in [("A3", vec![1, 0, 2]), ("B3", vec![1, 1, 1]), ("D4", vec![0, 1, 0, 2])] {
            let rs: RootSystem = label.parse().unwrap();
            let l = Weight::from_ints(&w);
            for (_, nu) in extreme_points_e(&rs, &l).unwrap() {
                assert!(nu.is_dominant());
                assert!(kostant_contains(&rs, &l, &nu).unwrap());
            }
        }
    }

    /// Dominant points of Conv(Wλ) lie in the hull of E(λ).
    #[test]
    fn hull_of_e_covers_dominant_part_by_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (label, w) in [("A2", vec![2, 1]), ("B2", vec![1, 2]), ("A3", vec![1, 1, 0])] {
            let rs: RootSystem = label.parse().unwrap();
            let l = Weight::from_ints(&w);
            let e: Vec<Weight> = extreme_points_e(&rs, &l).unwrap().into_iter().map(|(_, w)| w).collect();
            let orbit = rs.weyl_orbit(&l, 1000).unwrap();
            for _ in 0..20 {
                let mut acc = Weight::zero(rs.rank());
                let mut total = 0i64;
                for p in &orbit {
                    let c: i64 = rng.gen_range(0..4);
                    total += c;
                    acc = acc.add(&p.scale(&q(c)));
                }
                if total == 0 {
                    continue;
                }
                let mu = rs.dominant_representative(&acc.scale(&Q::new(1.into(), total.into()))).0;
                let shifted: Vec<Vec<Q>> = e.iter().map(|p| p.sub(&mu).fund().to_vec()).collect();
                assert!(zero_in_conv(&shifted).unwrap().is_inside(), "{label} {mu}");
            }
        }
    }
}
