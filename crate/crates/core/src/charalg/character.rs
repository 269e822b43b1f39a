use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::rootkit::{RootSystem, Weight};

/// Integral weight in fundamental coordinates.
pub type Wt = Vec<i64>;

/// Default bound on the number of weight entries in a character.
pub const DEFAULT_CHARACTER_CAP: usize = 10_000_000;

/// A W-invariant weight multiplicity function, stored on dominant weights.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightCharacter {
    pub(crate) dominant: FxHashMap<Wt, u128>,
}

/// Multiplicities of irreducible components, keyed by highest weight.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct IrrDecomposition {
    pub components: BTreeMap<Wt, u128>,
}

impl IrrDecomposition {
    pub fn dimension(&self, rs: &RootSystem) -> u128 {
        self.components.iter().map(|(w, m)| m * weyl_dim_int(rs, w)).sum()
    }

    pub fn multiplicity(&self, w: &[i64]) -> u128 {
        self.components.get(w).copied().unwrap_or(0)
    }
}

impl WeightCharacter {
    pub fn from_dominant(dominant: FxHashMap<Wt, u128>) -> Self {
        WeightCharacter { dominant }
    }

    /// Multiplicity of an arbitrary weight.
    pub fn mult(&self, rs: &RootSystem, w: &[i64]) -> u128 {
        self.dominant.get(&rs.dominant_int(w)).copied().unwrap_or(0)
    }

    pub fn dominant_support(&self) -> impl Iterator<Item = (&Wt, &u128)> {
        self.dominant.iter()
    }

    pub fn dominant_len(&self) -> usize {
        self.dominant.len()
    }

    /// Every weight with its multiplicity, in sorted order.
    pub fn full(&self, rs: &RootSystem, cap: usize) -> Result<Vec<(Wt, u128)>> {
        let mut out = Vec::new();
        let mut keys: Vec<&Wt> = self.dominant.keys().collect();
        keys.sort();
        for d in keys {
            let m = self.dominant[d];
            for (p, _) in rs.weyl_orbit_int(d, cap)? {
                out.push((p, m));
                if out.len() > cap {
                    return Err(Error::CharacterCap { cap });
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Σ multiplicity over all weights.
    pub fn dimension(&self, rs: &RootSystem) -> u128 {
        self.dominant.iter().map(|(w, m)| m * orbit_size(rs, w)).sum()
    }

    /// JSON-friendly map from weight text to multiplicity (dominant part).
    pub fn to_map(&self) -> BTreeMap<String, u128> {
        self.dominant
            .iter()
            .map(|(w, m)| (Weight::from_ints(w).to_string(), *m))
            .collect()
    }
}

/// |W·μ| for dominant μ, from the stabilizer generated by the simple
/// reflections fixing μ.
pub fn orbit_size(rs: &RootSystem, mu: &[i64]) -> u128 {
    let zeros: Vec<usize> = (0..rs.rank()).filter(|&i| mu[i] == 0).collect();
    let ls = rs.levi_subsystem(&zeros).expect("valid nodes");
    let stab: u128 = ls.components().iter().map(|c| c.root_system().weyl_order()).product();
    rs.weyl_order() / stab
}

/// Weyl dimension formula Π (λ+ρ|α)/(ρ|α) over positive roots.
pub fn weyl_dim(rs: &RootSystem, lambda: &Weight) -> Result<u128> {
    rs.check(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let c = lambda.to_ints()?;
    Ok(weyl_dim_int(rs, &c))
}

pub fn weyl_dim_int(rs: &RootSystem, c: &[i64]) -> u128 {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for a in rs.positive_roots_fund() {
        // (μ|α^∨)-style pairing through the Gram matrix.
        let lr: Vec<i64> = c.iter().map(|x| x + 1).collect();
        let rho = vec![1i64; c.len()];
        num *= rs.inner_int(&lr, &a);
        den *= rs.inner_int(&rho, &a);
    }
    let q = Q::new(num, den);
    assert!(q.is_integer(), "Weyl dimension must be an integer");
    q.to_integer().to_u128().expect("dimension fits in u128")
}

/// Dominant weights μ ≤ λ, i.e. λ − μ a non-negative integer combination of
/// positive roots. Connected under subtraction of positive roots.
pub fn dominant_weights_below(rs: &RootSystem, lambda: &[i64], cap: usize) -> Result<Vec<Wt>> {
    let roots = rs.positive_roots_fund();
    let mut seen: FxHashSet<Wt> = FxHashSet::default();
    let mut stack = vec![lambda.to_vec()];
    seen.insert(lambda.to_vec());
    while let Some(mu) = stack.pop() {
        for a in &roots {
            let nu: Wt = mu.iter().zip(a).map(|(x, y)| x - y).collect();
            if nu.iter().all(|&x| x >= 0) && seen.insert(nu.clone()) {
                if seen.len() > cap {
                    return Err(Error::CharacterCap { cap });
                }
                stack.push(nu);
            }
        }
    }
    let mut out: Vec<Wt> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Freudenthal's recursion on dominant weights.
pub fn dominant_character(rs: &RootSystem, lambda: &Weight, cap: usize) -> Result<WeightCharacter> {
    rs.check(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let c = lambda.to_ints()?;
    character_int(rs, &c, cap)
}

pub fn character_int(rs: &RootSystem, lambda: &[i64], cap: usize) -> Result<WeightCharacter> {
    let roots = rs.positive_roots_fund();
    let mut doms = dominant_weights_below(rs, lambda, cap)?;
    let rho = vec![1i64; lambda.len()];
    let height = |w: &Wt| rs.inner_int(w, &rho);
    doms.sort_by(|a, b| height(b).cmp(&height(a)).then_with(|| a.cmp(b)));
    let shifted = |w: &[i64]| -> Wt { w.iter().map(|x| x + 1).collect() };
    let lr = shifted(lambda);
    let norm_lr = rs.inner_int(&lr, &lr) as i128;

    let mut mult: FxHashMap<Wt, u128> = FxHashMap::default();
    mult.insert(lambda.to_vec(), 1);
    for mu in doms.iter().skip(1) {
        let mr = shifted(mu);
        let denom = norm_lr - rs.inner_int(&mr, &mr) as i128;
        assert!(denom > 0, "Freudenthal denominator must be positive below the highest weight");
        let mut acc: i128 = 0;
        for a in &roots {
            let mut nu: Wt = mu.clone();
            loop {
                for (x, y) in nu.iter_mut().zip(a) {
                    *x += y;
                }
                let Some(&m) = mult.get(&rs.dominant_int(&nu)) else {
                    break;
                };
                acc += 2 * rs.inner_int(&nu, a) as i128 * m as i128;
            }
        }
        assert!(acc % denom == 0, "Freudenthal quotient must be integral");
        let m = acc / denom;
        if m > 0 {
            mult.insert(mu.clone(), m as u128);
        }
    }
    Ok(WeightCharacter { dominant: mult })
}
