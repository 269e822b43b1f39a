use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Weight;
use crate::error::{Error, Result};
use crate::rational::{dot, invert, q, qr, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
        };
        f.write_str(s)
    }
}

/// A classical root system in its Bourbaki realization.
///
/// Type A_ℓ lives in the zero-sum hyperplane of Q^{ℓ+1}; B, C and D in Q^ℓ.
/// Indices are 0-based internally; node `i` is α_{i+1} in the usual labels.
#[derive(Debug, Clone)]
pub struct RootSystem {
    series: Series,
    rank: usize,
    simple: Vec<Vec<i64>>,
    positive: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    fundamental: Vec<Vec<Q>>,
    /// Gram matrix (ϖ_i|ϖ_j) scaled by `gram_scale` to integers.
    gram: Vec<Vec<i64>>,
    gram_scale: i64,
    /// `amb_denom · ϖ_j` is an integer vector for every j.
    amb_denom: i64,
    fund_scaled: Vec<Vec<i64>>,
    rho: Weight,
}

impl RootSystem {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let min = match series {
            Series::A => 1,
            Series::B | Series::C => 2,
            Series::D => 3,
        };
        if rank < min {
            return Err(Error::Config(
                format!("{series}{rank}"),
                format!("series {series} needs rank at least {min}"),
            ));
        }
        let l = rank;
        let dim = if series == Series::A { l + 1 } else { l };
        let e = |i: usize| {
            let mut v = vec![0i64; dim];
            v[i] = 1;
            v
        };
        let add = |a: &[i64], b: &[i64], s: i64| a.iter().zip(b).map(|(x, y)| x + s * y).collect::<Vec<_>>();

        let mut simple: Vec<Vec<i64>> = (0..l - 1).map(|i| add(&e(i), &e(i + 1), -1)).collect();
        match series {
            Series::A => simple.push(add(&e(l - 1), &e(l), -1)),
            Series::B => simple.push(e(l - 1)),
            Series::C => simple.push(add(&e(l - 1), &e(l - 1), 1)),
            Series::D => simple.push(add(&e(l - 2), &e(l - 1), 1)),
        }

        let mut positive = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                positive.push(add(&e(i), &e(j), -1));
                if series != Series::A {
                    positive.push(add(&e(i), &e(j), 1));
                }
            }
            match series {
                Series::B => positive.push(e(i)),
                Series::C => positive.push(add(&e(i), &e(i), 1)),
                _ => {}
            }
        }

        let idot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
        let cartan: Vec<Vec<i64>> = simple
            .iter()
            .map(|ai| simple.iter().map(|aj| 2 * idot(ai, aj) / idot(aj, aj)).collect())
            .collect();

        let cq: Vec<Vec<Q>> = cartan.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let cinv = invert(&cq).expect("Cartan matrix is invertible");
        let fundamental: Vec<Vec<Q>> = (0..l)
            .map(|i| {
                (0..dim)
                    .map(|k| (0..l).map(|j| &cinv[i][j] * q(simple[j][k])).sum())
                    .collect()
            })
            .collect();

        let amb_denom = fundamental
            .iter()
            .flatten()
            .fold(num_bigint::BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        let amb_denom: i64 = amb_denom.try_into().expect("small denominator");
        let fund_scaled = fundamental
            .iter()
            .map(|v| v.iter().map(|x| (x * q(amb_denom)).to_integer().try_into().unwrap()).collect())
            .collect();

        let gq: Vec<Vec<Q>> = fundamental
            .iter()
            .map(|a| fundamental.iter().map(|b| dot(a, b)).collect())
            .collect();
        let gram_scale = gq
            .iter()
            .flatten()
            .fold(num_bigint::BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        let gram = gq
            .iter()
            .map(|r| r.iter().map(|x| (x * Q::from_integer(gram_scale.clone())).to_integer().try_into().unwrap()).collect())
            .collect();
        let gram_scale: i64 = gram_scale.try_into().expect("small Gram denominator");

        let mut rs = RootSystem {
            series,
            rank,
            simple,
            positive,
            cartan,
            fundamental,
            gram,
            gram_scale,
            amb_denom,
            fund_scaled,
            rho: Weight::zero(0),
        };
        rs.rho = Weight::new(vec![Q::one(); l]);
        Ok(rs)
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the ambient coordinate space.
    pub fn ambient_dim(&self) -> usize {
        self.simple[0].len()
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Simple roots as ambient integer vectors.
    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple
    }

    /// Positive roots as ambient integer vectors.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// Positive roots in fundamental-weight coordinates.
    pub fn positive_roots_fund(&self) -> Vec<Vec<i64>> {
        self.positive
            .iter()
            .map(|a| {
                self.simple
                    .iter()
                    .map(|s| 2 * a.iter().zip(s).map(|(x, y)| x * y).sum::<i64>() / s.iter().map(|x| x * x).sum::<i64>())
                    .collect()
            })
            .collect()
    }

    pub fn fundamental_weights(&self) -> &[Vec<Q>] {
        &self.fundamental
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn fundamental(&self, j: usize) -> Weight {
        let mut v = vec![Q::zero(); self.rank];
        v[j] = Q::one();
        Weight::new(v)
    }

    pub fn weyl_order(&self) -> u128 {
        let l = self.rank as u128;
        let fact = |n: u128| (1..=n).product::<u128>();
        match self.series {
            Series::A => fact(l + 1),
            Series::B | Series::C => (1u128 << l) * fact(l),
            Series::D => (1u128 << (l - 1)) * fact(l),
        }
    }

    /// The pairing (|) on ambient coordinates.
    pub fn pairing(&self, x: &[Q], y: &[Q]) -> Q {
        dot(x, y)
    }

    pub fn inner(&self, a: &Weight, b: &Weight) -> Q {
        dot(&self.to_ambient(a), &self.to_ambient(b))
    }

    /// Integer Gram matrix of the fundamental weights and its scale.
    pub fn gram_int(&self) -> (&[Vec<i64>], i64) {
        (&self.gram, self.gram_scale)
    }

    /// Scaled inner product `gram_scale · (a|b)` of integral fundamental vectors.
    pub fn inner_int(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                s += x * y * self.gram[i][j];
            }
        }
        s
    }

    pub fn to_ambient(&self, w: &Weight) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.ambient_dim()];
        for (c, f) in w.fund().iter().zip(&self.fundamental) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(f) {
                *o += c * x;
            }
        }
        out
    }

    /// Ambient coordinates of an integral weight, multiplied by [`Self::ambient_denominator`].
    pub fn to_ambient_scaled(&self, fund: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.ambient_dim()];
        for (c, f) in fund.iter().zip(&self.fund_scaled) {
            if *c == 0 {
                continue;
            }
            for (o, x) in out.iter_mut().zip(f) {
                *o += c * x;
            }
        }
        out
    }

    pub fn ambient_denominator(&self) -> i64 {
        self.amb_denom
    }

    /// Fundamental coordinates c_i = 2(x|α_i)/(α_i|α_i). The input must lie in
    /// the span of the roots (the zero-sum hyperplane for type A).
    pub fn from_ambient(&self, x: &[Q]) -> Result<Weight> {
        if x.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), got: x.len() });
        }
        if self.series == Series::A && !x.iter().sum::<Q>().is_zero() {
            return Err(Error::Precondition("type A ambient vectors must have zero coordinate sum".into()));
        }
        let fund = self
            .simple
            .iter()
            .map(|a| {
                let n: i64 = a.iter().map(|v| v * v).sum();
                let p: Q = x.iter().zip(a).map(|(xi, ai)| xi * q(*ai)).sum();
                p * qr(2, n)
            })
            .collect();
        Ok(Weight::new(fund))
    }

    /// Simple root α_i in fundamental coordinates (row i of the Cartan matrix).
    pub fn simple_root_fund(&self, i: usize) -> &[i64] {
        &self.cartan[i]
    }

    /// Checks a weight has the right length.
    pub fn check(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: w.rank() });
        }
        Ok(())
    }

    /// Action of the longest element w₀ on ambient coordinates.
    pub fn w0_ambient(&self, x: &[Q]) -> Vec<Q> {
        match self.series {
            Series::A => x.iter().rev().cloned().collect(),
            Series::D if self.rank % 2 == 1 => {
                let mut v: Vec<Q> = x.iter().map(|t| -t).collect();
                let l = v.len() - 1;
                v[l] = x[l].clone();
                v
            }
            _ => x.iter().map(|t| -t).collect(),
        }
    }

    /// Whether w₀ = −1.
    pub fn w0_is_minus_one(&self) -> bool {
        match self.series {
            Series::A => self.rank == 1,
            Series::B | Series::C => true,
            Series::D => self.rank % 2 == 0,
        }
    }

    /// Adjacency in the Dynkin diagram.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    /// (α_i|α_i) for the simple roots.
    pub fn simple_root_norm(&self, i: usize) -> i64 {
        self.simple[i].iter().map(|x| x * x).sum()
    }
}

impl FromStr for RootSystem {
    type Err = Error;

    /// Parses labels like "A3" or "d5".
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid root system '{s}', expected e.g. A3 or D5"));
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        RootSystem::new(series, rank)
    }
}
