//! Exact rational feasibility via phase-1 simplex with Bland's rule.
//!
//! Every answer carries a certificate that is re-checked in `BigRational`
//! arithmetic before it is returned: a non-negative solution for feasible
//! systems, a Farkas vector for infeasible ones. The tableau first runs over
//! `Ratio<i128>` with checked arithmetic and restarts over `BigRational` on
//! overflow.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::rational::Q;

/// Outcome of `A x = b, x ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum Standard {
    /// A solution `x ≥ 0`; its support is a set of linearly independent columns.
    Feasible(Vec<Q>),
    /// A Farkas vector `y` with `Aᵀy ≥ 0` and `bᵀy < 0`.
    Infeasible(Vec<Q>),
}

/// Outcome of `M x ≤ b` with `x` free.
#[derive(Debug, Clone, PartialEq)]
pub enum Inequalities {
    Feasible(Vec<Q>),
    /// `y ≥ 0` with `Mᵀy = 0` and `bᵀy < 0`.
    Infeasible(Vec<Q>),
}

#[derive(Debug)]
struct Overflow;

trait Scalar: Clone {
    fn zero_s() -> Self;
    fn one_s() -> Self;
    fn from_q(x: &Q) -> Option<Self>;
    fn to_q(&self) -> Q;
    fn is_zero_s(&self) -> bool;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
    fn cmp(&self, o: &Self) -> Ordering;
}

type R128 = Ratio<i128>;

impl Scalar for R128 {
    fn zero_s() -> Self {
        Zero::zero()
    }
    fn one_s() -> Self {
        One::one()
    }
    fn from_q(x: &Q) -> Option<Self> {
        Some(R128::new(x.numer().to_i128()?, x.denom().to_i128()?))
    }
    fn to_q(&self) -> Q {
        Q::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn is_zero_s(&self) -> bool {
        *self.numer() == 0
    }
    fn is_pos(&self) -> bool {
        *self.numer() > 0
    }
    fn is_neg(&self) -> bool {
        *self.numer() < 0
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
    fn cmp(&self, o: &Self) -> Ordering {
        Ord::cmp(self, o)
    }
}

impl Scalar for Q {
    fn zero_s() -> Self {
        Zero::zero()
    }
    fn one_s() -> Self {
        One::one()
    }
    fn from_q(x: &Q) -> Option<Self> {
        Some(x.clone())
    }
    fn to_q(&self) -> Q {
        self.clone()
    }
    fn is_zero_s(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn cmp(&self, o: &Self) -> Ordering {
        Ord::cmp(self, o)
    }
}

/// Dense phase-1 tableau. Columns: `n` structural, then `m` artificial, then rhs.
struct Tableau<S> {
    m: usize,
    n: usize,
    width: usize,
    rows: Vec<S>,
    obj: Vec<S>,
    basis: Vec<usize>,
}

impl<S: Scalar> Tableau<S> {
    fn new(a: &[Vec<Q>], b: &[Q]) -> Result<Self, Overflow> {
        let m = b.len();
        let n = a.first().map_or(0, |r| r.len());
        let width = n + m + 1;
        let mut rows = vec![S::zero_s(); m * width];
        let mut obj = vec![S::zero_s(); width];
        for i in 0..m {
            let flip = b[i].is_negative();
            let row = &mut rows[i * width..(i + 1) * width];
            for j in 0..n {
                if !Zero::is_zero(&a[i][j]) {
                    let v = if flip { -&a[i][j] } else { a[i][j].clone() };
                    row[j] = S::from_q(&v).ok_or(Overflow)?;
                }
            }
            row[n + i] = S::one_s();
            let rhs = if flip { -&b[i] } else { b[i].clone() };
            row[width - 1] = S::from_q(&rhs).ok_or(Overflow)?;
            for j in 0..n {
                obj[j] = obj[j].sub(&row[j]).ok_or(Overflow)?;
            }
            obj[width - 1] = obj[width - 1].sub(&row[width - 1]).ok_or(Overflow)?;
        }
        Ok(Tableau { m, n, width, rows, obj, basis: (n..n + m).collect() })
    }

    fn at(&self, i: usize, j: usize) -> &S {
        &self.rows[i * self.width + j]
    }

    fn pivot(&mut self, p: usize, q: usize) -> Result<(), Overflow> {
        let w = self.width;
        let piv = self.at(p, q).clone();
        let mut nz = Vec::new();
        for j in 0..w {
            let x = &mut self.rows[p * w + j];
            if !x.is_zero_s() {
                *x = x.div(&piv).ok_or(Overflow)?;
                nz.push(j);
            }
        }
        let prow: Vec<(usize, S)> = nz.iter().map(|&j| (j, self.rows[p * w + j].clone())).collect();
        for i in 0..self.m {
            if i == p {
                continue;
            }
            let f = self.rows[i * w + q].clone();
            if f.is_zero_s() {
                continue;
            }
            let row = &mut self.rows[i * w..(i + 1) * w];
            for (j, v) in &prow {
                row[*j] = row[*j].sub(&f.mul(v).ok_or(Overflow)?).ok_or(Overflow)?;
            }
        }
        let f = self.obj[q].clone();
        if !f.is_zero_s() {
            for (j, v) in &prow {
                self.obj[*j] = self.obj[*j].sub(&f.mul(v).ok_or(Overflow)?).ok_or(Overflow)?;
            }
        }
        self.basis[p] = q;
        Ok(())
    }

    /// Runs Bland's rule to optimality of the phase-1 objective.
    fn run(&mut self) -> Result<(), Overflow> {
        let rhs = self.width - 1;
        loop {
            let Some(q) = (0..rhs).find(|&j| self.obj[j].is_neg()) else {
                return Ok(());
            };
            let mut best: Option<(usize, S)> = None;
            for i in 0..self.m {
                let a = self.at(i, q);
                if !a.is_pos() {
                    continue;
                }
                let ratio = self.at(i, rhs).div(a).ok_or(Overflow)?;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => match ratio.cmp(br) {
                        Ordering::Less => true,
                        Ordering::Equal => self.basis[i] < self.basis[*bi],
                        Ordering::Greater => false,
                    },
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            // Phase 1 is bounded below, so some row always qualifies.
            let (p, _) = best.expect("phase-1 objective is bounded");
            self.pivot(p, q)?;
        }
    }
}

fn solve_with<S: Scalar>(a: &[Vec<Q>], b: &[Q]) -> Result<Standard, Overflow> {
    let mut t = Tableau::<S>::new(a, b)?;
    t.run()?;
    let rhs = t.width - 1;
    if t.obj[rhs].is_zero_s() {
        let mut x = vec![Q::zero(); t.n];
        for (i, &j) in t.basis.iter().enumerate() {
            if j < t.n {
                x[j] = t.at(i, rhs).to_q();
            }
        }
        Ok(Standard::Feasible(x))
    } else {
        // π_i = 1 - d_{art_i}; y = -π, undoing the row flips.
        let y = (0..t.m)
            .map(|i| {
                let pi = Q::one() - t.obj[t.n + i].to_q();
                if b[i].is_negative() {
                    pi
                } else {
                    -pi
                }
            })
            .collect();
        Ok(Standard::Infeasible(y))
    }
}

/// Decides `A x = b, x ≥ 0` exactly.
pub fn solve_standard(a: &[Vec<Q>], b: &[Q]) -> Standard {
    let n = a.first().map_or(0, |r| r.len());
    assert!(a.iter().all(|r| r.len() == n), "ragged constraint matrix");
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let out = match solve_with::<R128>(a, b) {
        Ok(out) => out,
        Err(Overflow) => solve_with::<Q>(a, b).expect("BigRational never overflows"),
    };
    debug_assert!(verify_standard(a, b, &out));
    if !verify_standard(a, b, &out) {
        panic!("simplex produced an invalid certificate");
    }
    out
}

/// Integer convenience wrapper around [`solve_standard`].
pub fn solve_standard_int(a: &[Vec<i64>], b: &[i64]) -> Standard {
    let aq: Vec<Vec<Q>> = a
        .iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
        .collect();
    let bq: Vec<Q> = b.iter().map(|&x| Q::from_integer(x.into())).collect();
    solve_standard(&aq, &bq)
}

/// Exact check of a standard-form certificate.
pub fn verify_standard(a: &[Vec<Q>], b: &[Q], out: &Standard) -> bool {
    let n = a.first().map_or(0, |r| r.len());
    match out {
        Standard::Feasible(x) => {
            x.len() == n
                && x.iter().all(|v| !v.is_negative())
                && a.iter().zip(b).all(|(row, bi)| {
                    row.iter().zip(x).map(|(p, q)| p * q).sum::<Q>() == *bi
                })
        }
        Standard::Infeasible(y) => {
            y.len() == b.len()
                && (0..n).all(|j| {
                    !a.iter().zip(y).map(|(row, yi)| &row[j] * yi).sum::<Q>().is_negative()
                })
                && b.iter().zip(y).map(|(bi, yi)| bi * yi).sum::<Q>().is_negative()
        }
    }
}

/// Decides `M x ≤ b` for free `x` through the Farkas system
/// `Mᵀy = 0, bᵀy = -1, y ≥ 0`, which has one row per variable.
pub fn solve_inequalities(m: &[Vec<Q>], b: &[Q]) -> Inequalities {
    let rows = m.len();
    let nvars = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<Q>> = (0..nvars)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect();
    a.push(b.to_vec());
    let mut rhs = vec![Q::zero(); nvars];
    rhs.push(-Q::one());
    let out = match solve_standard(&a, &rhs) {
        Standard::Feasible(y) => Inequalities::Infeasible(y),
        Standard::Infeasible(u) => {
            // Aᵀu ≥ 0 and -u_last < 0: M w + s b ≥ 0 with s > 0, so x = -w/s.
            let s = u[nvars].clone();
            debug_assert!(s.is_positive());
            Inequalities::Feasible(u[..nvars].iter().map(|w| -w / &s).collect())
        }
    };
    assert!(verify_inequalities(m, b, &out), "invalid inequality certificate");
    out
}

pub fn verify_inequalities(m: &[Vec<Q>], b: &[Q], out: &Inequalities) -> bool {
    match out {
        Inequalities::Feasible(x) => m
            .iter()
            .zip(b)
            .all(|(row, bi)| row.iter().zip(x).map(|(p, q)| p * q).sum::<Q>() <= *bi),
        Inequalities::Infeasible(y) => {
            let nvars = m.first().map_or(0, |r| r.len());
            y.iter().all(|v| !v.is_negative())
                && (0..nvars).all(|j| m.iter().zip(y).map(|(row, yi)| &row[j] * yi).sum::<Q>().is_zero_s())
                && b.iter().zip(y).map(|(bi, yi)| bi * yi).sum::<Q>().is_negative()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};
    use proptest::prelude::*;

    fn qm(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn simple_feasible_system() {
        let a = qm(&[&[1, 1, 1], &[1, -1, 0]]);
        let b = vec![q(1), q(0)];
        match solve_standard(&a, &b) {
            Standard::Feasible(x) => {
                assert_eq!(&x[0], &x[1]);
                assert_eq!(&x[0] + &x[1] + &x[2], q(1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_system_gives_farkas_vector() {
        // x + y = -1 with x, y ≥ 0.
        let a = qm(&[&[1, 1]]);
        let b = vec![q(-1)];
        let out = solve_standard(&a, &b);
        assert!(matches!(out, Standard::Infeasible(_)));
        assert!(verify_standard(&a, &b, &out));
    }

    #[test]
    fn degenerate_redundant_rows() {
        let a = qm(&[&[1, 2], &[2, 4], &[1, 2]]);
        let b = vec![q(2), q(4), q(2)];
        assert!(matches!(solve_standard(&a, &b), Standard::Feasible(_)));
    }

    #[test]
    fn inequalities_with_free_variables() {
        // x ≤ 1, -x ≤ -3 is empty; x ≤ 1, -x ≤ 2 is not.
        let m = qm(&[&[1], &[-1]]);
        assert!(matches!(solve_inequalities(&m, &[q(1), q(-3)]), Inequalities::Infeasible(_)));
        match solve_inequalities(&m, &[q(1), q(2)]) {
            Inequalities::Feasible(x) => assert!(x[0] <= q(1) && x[0] >= q(-2)),
            other => panic!("{other:?}"),
        }
        // x - y ≤ -1/2, y - x ≤ 0 is empty.
        let m = qm(&[&[1, -1], &[-1, 1]]);
        assert!(matches!(solve_inequalities(&m, &[qr(-1, 2), q(0)]), Inequalities::Infeasible(_)));
    }

    #[test]
    fn overflow_falls_back_to_bigrational() {
        let big = i64::MAX / 3;
        let a = qm(&[&[big, big - 1, 1], &[1, 1, 1], &[big - 7, 3, big]]);
        let b = vec![q(big), q(1), q(big / 2)];
        let out = solve_standard(&a, &b);
        assert!(verify_standard(&a, &b, &out));
    }

    proptest! {
        #[test]
        fn certificates_always_verify(
            rows in prop::collection::vec(prop::collection::vec(-4i64..5, 5), 1..5),
            rhs in prop::collection::vec(-6i64..7, 5),
        ) {
            let b: Vec<Q> = rhs[..rows.len()].iter().map(|&x| q(x)).collect();
            let a: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            let out = solve_standard(&a, &b);
            prop_assert!(verify_standard(&a, &b, &out));
        }
    }
}
