use std::collections::VecDeque;

use num_traits::{Signed, Zero};
use rustc_hash::FxHashSet;

use super::{RootSystem, Series, Weight};
use crate::error::{Error, Result};
use crate::rational::{q, Q};

/// Default bound on orbit sizes.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

impl RootSystem {
    /// Simple reflection s_i in fundamental coordinates.
    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let ci = w.fund()[i].clone();
        if ci.is_zero() {
            return w.clone();
        }
        let fund = w
            .fund()
            .iter()
            .zip(self.simple_root_fund(i))
            .map(|(c, a)| c - &ci * q(*a))
            .collect();
        Weight::new(fund)
    }

    pub fn reflect_int(&self, i: usize, c: &[i64]) -> Vec<i64> {
        let ci = c[i];
        c.iter().zip(self.simple_root_fund(i)).map(|(x, a)| x - ci * a).collect()
    }

    /// Reflects into the dominant chamber. Applying the returned word
    /// left to right (first letter first) to `w` gives the representative.
    pub fn dominant_representative(&self, w: &Weight) -> (Weight, Vec<usize>) {
        let mut cur = w.clone();
        let mut word = Vec::new();
        while let Some(i) = cur.fund().iter().position(|c| c.is_negative()) {
            cur = self.reflect(i, &cur);
            word.push(i);
        }
        (cur, word)
    }

    pub fn dominant_int(&self, c: &[i64]) -> Vec<i64> {
        let mut cur = c.to_vec();
        while let Some(i) = cur.iter().position(|&x| x < 0) {
            cur = self.reflect_int(i, &cur);
        }
        cur
    }

    /// Applies a word of simple reflections, first letter first.
    pub fn apply_word(&self, word: &[usize], w: &Weight) -> Weight {
        word.iter().fold(w.clone(), |acc, &i| self.reflect(i, &acc))
    }

    /// The Weyl orbit of `w`, in breadth-first order from `w`.
    pub fn weyl_orbit(&self, w: &Weight, cap: usize) -> Result<Vec<Weight>> {
        self.check(w)?;
        let mut seen = FxHashSet::default();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back(w.clone());
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank() {
                if x.fund()[i].is_zero() {
                    continue;
                }
                let y = self.reflect(i, &x);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::OrbitCap { cap });
                    }
                    queue.push_back(y);
                }
            }
            out.push(x);
        }
        Ok(out)
    }

    /// Integer version of [`Self::weyl_orbit`] in fundamental coordinates,
    /// with the BFS depth of each point (its parity is that of a shortest word).
    pub fn weyl_orbit_int(&self, c: &[i64], cap: usize) -> Result<Vec<(Vec<i64>, u32)>> {
        let mut seen = FxHashSet::default();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(c.to_vec());
        queue.push_back((c.to_vec(), 0u32));
        while let Some((x, d)) = queue.pop_front() {
            for i in 0..self.rank() {
                if x[i] == 0 {
                    continue;
                }
                let y = self.reflect_int(i, &x);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::OrbitCap { cap });
                    }
                    seen.insert(y.clone());
                    queue.push_back((y, d + 1));
                }
            }
            out.push((x, d));
        }
        Ok(out)
    }

    /// λ* = −w₀λ.
    pub fn dual_weight(&self, w: &Weight) -> Weight {
        let mut f = w.fund().to_vec();
        match self.series() {
            Series::A => f.reverse(),
            Series::D if self.rank() % 2 == 1 => {
                let l = f.len();
                f.swap(l - 2, l - 1);
            }
            _ => {}
        }
        Weight::new(f)
    }

    pub fn dual_int(&self, c: &[i64]) -> Vec<i64> {
        let w = self.dual_weight(&Weight::from_ints(c));
        w.to_ints().expect("integral")
    }

    pub fn is_self_dual(&self, w: &Weight) -> bool {
        self.dual_weight(w) == *w
    }

    /// Whether `w` lies in the root lattice (integral combination of simple roots).
    pub fn in_root_lattice(&self, c: &[i64]) -> bool {
        // Solve Cᵀ-style: w = Σ k_i α_i, α_i = row i of the Cartan matrix.
        let l = self.rank();
        let cq: Vec<Vec<Q>> = (0..l).map(|j| (0..l).map(|i| q(self.cartan()[i][j])).collect()).collect();
        let inv = crate::rational::invert(&cq).expect("Cartan matrix is invertible");
        (0..l).all(|i| {
            let k: Q = (0..l).map(|j| &inv[i][j] * q(c[j])).sum();
            k.is_integer()
        })
    }
}
