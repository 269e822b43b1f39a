use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{solve_standard, Standard};
use crate::rational::{dot, fmt_q, invert, q, Q};
use crate::rootkit::{RootSystem, Weight, DEFAULT_ORBIT_CAP};

/// Outcome of a zero-in-hull test.
#[derive(Debug, Clone, PartialEq)]
pub enum ZeroInConv {
    /// Convex weights, one per input point, with Σ c_i p_i = 0. The support
    /// is affinely independent.
    Inside { coefficients: Vec<Q> },
    /// A functional h with h·p > 0 for every input point.
    Outside { separator: Vec<Q> },
}

impl ZeroInConv {
    pub fn is_inside(&self) -> bool {
        matches!(self, ZeroInConv::Inside { .. })
    }
}

/// A convex combination of distinct orbit points equal to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroCertificate {
    pub points: Vec<Weight>,
    pub coefficients: Vec<Q>,
}

#[derive(Serialize, Deserialize)]
struct CertEntry {
    weight: Weight,
    coefficient: String,
}

impl Serialize for ZeroCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<CertEntry> = self
            .points
            .iter()
            .zip(&self.coefficients)
            .map(|(p, c)| CertEntry { weight: p.clone(), coefficient: fmt_q(c) })
            .collect();
        entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZeroCertificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<CertEntry>::deserialize(d)?;
        let mut points = Vec::new();
        let mut coefficients = Vec::new();
        for e in entries {
            points.push(e.weight);
            coefficients.push(crate::rational::parse_q(&e.coefficient).map_err(serde::de::Error::custom)?);
        }
        Ok(ZeroCertificate { points, coefficients })
    }
}

impl ZeroCertificate {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Exact check of every certificate invariant.
    pub fn verify(&self, rs: &RootSystem) -> Result<()> {
        let fail = |m: &str| Err(Error::Precondition(format!("invalid zero certificate: {m}")));
        if self.points.is_empty() || self.points.len() != self.coefficients.len() {
            return fail("length mismatch");
        }
        if self.coefficients.iter().any(|c| !c.is_positive()) {
            return fail("non-positive coefficient");
        }
        if self.coefficients.iter().sum::<Q>() != Q::one() {
            return fail("coefficients do not sum to 1");
        }
        for p in &self.points {
            rs.check(p)?;
        }
        for i in 0..rs.rank() {
            let s: Q = self.points.iter().zip(&self.coefficients).map(|(p, c)| &p.fund()[i] * c).sum();
            if !s.is_zero() {
                return fail("combination is not zero");
            }
        }
        for (i, a) in self.points.iter().enumerate() {
            if self.points[..i].contains(a) {
                return fail("repeated point");
            }
        }
        let dom = rs.dominant_representative(&self.points[0]).0;
        if self.points.iter().any(|p| rs.dominant_representative(p).0 != dom) {
            return fail("points lie in different Weyl orbits");
        }
        Ok(())
    }
}

fn check_dims(points: &[Vec<Q>]) -> Result<usize> {
    let Some(first) = points.first() else {
        return Err(Error::Precondition("empty point list".into()));
    };
    let d = first.len();
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: p.len() });
    }
    Ok(d)
}

/// Decides 0 ∈ Conv(points) exactly.
pub fn zero_in_conv(points: &[Vec<Q>]) -> Result<ZeroInConv> {
    let d = check_dims(points)?;
    // Rows: the d coordinates, then Σ c = 1.
    let mut a: Vec<Vec<Q>> = (0..d).map(|k| points.iter().map(|p| p[k].clone()).collect()).collect();
    a.push(vec![Q::one(); points.len()]);
    let mut b = vec![Q::zero(); d];
    b.push(Q::one());
    Ok(match solve_standard(&a, &b) {
        Standard::Feasible(c) => ZeroInConv::Inside { coefficients: c },
        Standard::Infeasible(y) => {
            // h·p_i + t ≥ 0 and t < 0, so h·p_i > 0.
            let separator = y[..d].to_vec();
            debug_assert!(points.iter().all(|p| dot(&separator, p).is_positive()));
            ZeroInConv::Outside { separator }
        }
    })
}

/// A sub-list of at most dim(aff span)+1 points whose hull contains `target`,
/// with the convex weights.
pub fn caratheodory_reduce(target: &[Q], points: &[Vec<Q>]) -> Result<Vec<(usize, Q)>> {
    let d = check_dims(points)?;
    if target.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: target.len() });
    }
    let shifted: Vec<Vec<Q>> = points
        .iter()
        .map(|p| p.iter().zip(target).map(|(x, t)| x - t).collect())
        .collect();
    match zero_in_conv(&shifted)? {
        ZeroInConv::Inside { coefficients } => Ok(coefficients
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()),
        ZeroInConv::Outside { .. } => Err(Error::Precondition("target lies outside the convex hull".into())),
    }
}

/// Whether μ ∈ Conv(Wλ). Decided both by an LP over the orbit and by the
/// dominance order; the two must agree.
pub fn kostant_contains(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<bool> {
    rs.check(lambda)?;
    rs.check(mu)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let by_order = dominance_contains(rs, lambda, mu);
    let orbit = rs.weyl_orbit(lambda, DEFAULT_ORBIT_CAP)?;
    let shifted: Vec<Vec<Q>> = orbit.iter().map(|p| p.sub(mu).fund().to_vec()).collect();
    let by_lp = zero_in_conv(&shifted)?.is_inside();
    assert_eq!(by_order, by_lp, "Kostant membership tests disagree for λ={lambda}, μ={mu}");
    Ok(by_lp)
}

/// λ − dom(μ) is a non-negative rational combination of simple roots.
pub fn dominance_contains(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> bool {
    let dom = rs.dominant_representative(mu).0;
    let diff = lambda.sub(&dom);
    let l = rs.rank();
    // diff = Σ k_i α_i with α_i = row i of the Cartan matrix.
    let ct: Vec<Vec<Q>> = (0..l).map(|j| (0..l).map(|i| q(rs.cartan()[i][j])).collect()).collect();
    let inv = invert(&ct).expect("Cartan matrix is invertible");
    (0..l).all(|i| {
        let k: Q = (0..l).map(|j| &inv[i][j] * &diff.fund()[j]).sum();
        !k.is_negative()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Q>> {
        v.iter().map(|p| p.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn antipodal_pair() {
        match zero_in_conv(&pts(&[&[1, 2], &[-1, -2]])).unwrap() {
            ZeroInConv::Inside { coefficients } => assert_eq!(coefficients, vec![qr(1, 2), qr(1, 2)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn a2_triangle_and_its_edges() {
        let rs: RootSystem = "A2".parse().unwrap();
        let orbit = rs.weyl_orbit(&rs.fundamental(0), DEFAULT_ORBIT_CAP).unwrap();
        let p: Vec<Vec<Q>> = orbit.iter().map(|w| w.fund().to_vec()).collect();
        assert!(zero_in_conv(&p).unwrap().is_inside());
        for skip in 0..3 {
            let two: Vec<Vec<Q>> = (0..3).filter(|&i| i != skip).map(|i| p[i].clone()).collect();
            match zero_in_conv(&two).unwrap() {
                ZeroInConv::Outside { separator } => {
                    assert!(two.iter().all(|x| dot(&separator, x).is_positive()))
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(matches!(
            zero_in_conv(&[vec![q(1)], vec![q(1), q(2)]]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(zero_in_conv(&[]).is_err());
    }

    #[test]
    fn caratheodory_examples() {
        let p = pts(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert_eq!(caratheodory_reduce(&[q(0), q(1)], &p).unwrap(), vec![(1, q(1))]);
        let sub = caratheodory_reduce(&[q(0), q(0)], &p).unwrap();
        assert_eq!(sub.len(), 3);
        let b2 = pts(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let sub = caratheodory_reduce(&[q(0), q(0)], &b2).unwrap();
        assert_eq!(sub.len(), 2);
        let (i, j) = (sub[0].0, sub[1].0);
        assert!(b2[i].iter().zip(&b2[j]).all(|(x, y)| x == &-y));
        assert!(caratheodory_reduce(&[q(2), q(0)], &b2).is_err());
    }

    #[test]
    fn kostant_examples() {
        for label in ["A2", "B2", "C3", "D4"] {
            let rs: RootSystem = label.parse().unwrap();
            let l = rs.rho().clone();
            assert!(kostant_contains(&rs, &l, &l).unwrap());
            assert!(kostant_contains(&rs, &l, &Weight::zero(rs.rank())).unwrap());
            assert!(!kostant_contains(&rs, &l, &l.scale(&q(2))).unwrap());
        }
        let a2: RootSystem = "A2".parse().unwrap();
        // ϖ₁+ϖ₂ contains 0 and the roots but not 2ϖ₁.
        let l = Weight::from_ints(&[1, 1]);
        assert!(kostant_contains(&a2, &l, &Weight::from_ints(&[2, -1])).unwrap());
        assert!(!kostant_contains(&a2, &l, &Weight::from_ints(&[2, 0])).unwrap());
        assert!(kostant_contains(&a2, &l, &Weight::new(vec![qr(1, 2), qr(1, 2)])).unwrap());
    }

    #[test]
    fn certificate_checks() {
        let rs: RootSystem = "B2".parse().unwrap();
        let good = ZeroCertificate {
            points: vec![Weight::from_ints(&[1, 0]), Weight::from_ints(&[-1, 0])],
            coefficients: vec![qr(1, 2), qr(1, 2)],
        };
        good.verify(&rs).unwrap();
        let json = serde_json::to_string(&good).unwrap();
        assert_eq!(json, r#"[{"weight":"1,0","coefficient":"1/2"},{"weight":"-1,0","coefficient":"1/2"}]"#);
        assert_eq!(serde_json::from_str::<ZeroCertificate>(&json).unwrap(), good);
        let mixed = ZeroCertificate {
            points: vec![Weight::from_ints(&[2, 0]), Weight::from_ints(&[-2, 0]), Weight::from_ints(&[0, 0])],
            coefficients: vec![qr(1, 4), qr(1, 4), qr(1, 2)],
        };
        assert!(mixed.verify(&rs).is_err());
        let unbalanced = ZeroCertificate {
            points: good.points.clone(),
            coefficients: vec![qr(1, 3), qr(2, 3)],
        };
        assert!(unbalanced.verify(&rs).is_err());
    }
}
