use rustc_hash::FxHashMap;

use super::character::{character_int, WeightCharacter, Wt};
use super::tensor::multiply_full;
use crate::error::{Error, Result};
use crate::rootkit::{RootSystem, Weight};

/// Characters of S⁰V, S¹V, … produced one degree at a time by the
/// Adams/Newton recursion d·S^d = Σ_{k=1..d} ψ^k(V)·S^{d−k}.
pub struct SymmetricPowers<'a> {
    rs: &'a RootSystem,
    weights: Vec<(Wt, u128)>,
    powers: Vec<WeightCharacter>,
    cap: usize,
}

impl<'a> SymmetricPowers<'a> {
    pub fn new(rs: &'a RootSystem, lambda: &[i64], cap: usize) -> Result<Self> {
        let weights = character_int(rs, lambda, cap)?.full(rs, cap)?;
        let one = WeightCharacter::from_dominant(FxHashMap::from_iter([(vec![0; rs.rank()], 1u128)]));
        Ok(SymmetricPowers { rs, weights, powers: vec![one], cap })
    }

    /// Characters computed so far, S⁰ first.
    pub fn powers(&self) -> &[WeightCharacter] {
        &self.powers
    }

    /// Computes the next symmetric power and returns it.
    pub fn advance(&mut self) -> Result<&WeightCharacter> {
        let n = self.powers.len();
        let mut acc: FxHashMap<Wt, u128> = FxHashMap::default();
        for k in 1..=n {
            let psi: Vec<(Wt, u128)> = self.weights.iter().map(|(w, m)| (w.iter().map(|x| x * k as i64).collect(), *m)).collect();
            let prod = multiply_full(self.rs, &psi, &self.powers[n - k])?;
            for (w, m) in prod.dominant {
                let e = acc.entry(w).or_insert(0);
                *e = e.checked_add(m).ok_or(Error::Overflow("symmetric power"))?;
            }
        }
        let mut next = FxHashMap::default();
        for (w, m) in acc {
            if m % n as u128 != 0 {
                return Err(Error::Precondition("Newton recursion is not integral".into()));
            }
            next.insert(w, m / n as u128);
        }
        if next.len() > self.cap {
            return Err(Error::CharacterCap { cap: self.cap });
        }
        self.powers.push(WeightCharacter::from_dominant(next));
        Ok(&self.powers[n])
    }
}

/// Characters of S⁰V, …, S^dV.
pub fn symmetric_power_characters(rs: &RootSystem, lambda: &[i64], d: usize, cap: usize) -> Result<Vec<WeightCharacter>> {
    let mut sp = SymmetricPowers::new(rs, lambda, cap)?;
    for _ in 0..d {
        sp.advance()?;
    }
    Ok(sp.powers)
}

/// Multiplicity of the trivial module in a character: Σ_w det(w) N(wρ − ρ).
pub fn trivial_multiplicity(rs: &RootSystem, ch: &WeightCharacter) -> Result<u128> {
    let rho = vec![1i64; rs.rank()];
    let orbit = rs.weyl_orbit_int(&rho, usize::MAX)?;
    let mut s: i128 = 0;
    for (p, depth) in orbit {
        let x: Wt = p.iter().map(|c| c - 1).collect();
        let n = ch.mult(rs, &x) as i128;
        s += if depth % 2 == 0 { n } else { -n };
    }
    u128::try_from(s).map_err(|_| Error::Precondition("negative trivial multiplicity".into()))
}

/// dim (S^d V_λ)^K.
pub fn symmetric_power_invariant_dim(rs: &RootSystem, lambda: &Weight, d: usize, cap: usize) -> Result<u128> {
    rs.check(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let l = lambda.to_ints()?;
    let chars = symmetric_power_characters(rs, &l, d, cap)?;
    trivial_multiplicity(rs, &chars[d])
}

#[cfg(test)]
mod tests {
    use super::super::{character::weyl_dim_int, decompose_character, DEFAULT_CHARACTER_CAP as CAP};
    use super::*;

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    fn binom(n: u128, k: u128) -> u128 {
        (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn binary_forms() {
        let a1 = rs("A1");
        let dims = |l: i64| -> Vec<u128> {
            let chars = symmetric_power_characters(&a1, &[l], 6, CAP).unwrap();
            chars.iter().map(|c| trivial_multiplicity(&a1, c).unwrap()).collect()
        };
        assert_eq!(dims(2), vec![1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(dims(3), vec![1, 0, 0, 0, 1, 0, 0]);
        assert_eq!(dims(1), vec![1, 0, 0, 0, 0, 0, 0]);
        // Binary quartics: invariants of degrees 2 and 3.
        assert_eq!(dims(4), vec![1, 0, 1, 1, 1, 1, 2]);
    }

    #[test]
    fn adjoint_has_quadratic_invariant() {
        let a2 = rs("A2");
        assert_eq!(symmetric_power_invariant_dim(&a2, &Weight::from_ints(&[1, 1]), 1, CAP).unwrap(), 0);
        assert_eq!(symmetric_power_invariant_dim(&a2, &Weight::from_ints(&[1, 1]), 2, CAP).unwrap(), 1);
        // Ternary cubics: first invariant in degree 4.
        let d: Vec<u128> = symmetric_power_characters(&a2, &[3, 0], 4, CAP).unwrap().iter().map(|c| trivial_multiplicity(&a2, c).unwrap()).collect();
        assert_eq!(d, vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn symmetric_power_dimensions_are_binomial() {
        for (label, l, d) in [("A2", vec![1, 0], 4), ("B2", vec![0, 1], 3), ("C3", vec![1, 0, 0], 3), ("A3", vec![0, 1, 0], 3)] {
            let r = rs(label);
            let n = weyl_dim_int(&r, &l);
            let chars = symmetric_power_characters(&r, &l, d, CAP).unwrap();
            for (k, ch) in chars.iter().enumerate() {
                let dec = decompose_character(&r, ch, CAP).unwrap();
                assert_eq!(dec.dimension(&r), binom(n + k as u128 - 1, k as u128), "{label} S^{k}");
            }
        }
    }

    #[test]
    fn alternation_agrees_with_decomposition() {
        let r = rs("B2");
        let chars = symmetric_power_characters(&r, &[1, 1], 3, CAP).unwrap();
        for ch in &chars {
            let dec = decompose_character(&r, ch, CAP).unwrap();
            assert_eq!(trivial_multiplicity(&r, ch).unwrap(), dec.multiplicity(&[0, 0]));
        }
    }
}
