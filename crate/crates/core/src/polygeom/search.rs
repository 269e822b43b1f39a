//! Smallest subsets of a Weyl orbit whose convex hull contains zero.
//!
//! The first point is fixed to λ. After each choice the remaining candidates
//! are split into orbits of the pointwise stabilizer H of the chosen points,
//! and only one representative per orbit is tried. H-orbits are recognised
//! through a canonical form on ambient coordinates, so H is never built.
//!
//! A minimal set S with 0 ∈ Conv(S) carries a unique linear relation with all
//! coefficients positive, so every proper subset of S is linearly
//! independent. This drives two prunings: partial choices must stay
//! independent, and the last point must be a negative combination of the
//! others.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::hull::{zero_in_conv, ZeroCertificate, ZeroInConv};
use crate::error::{Error, Result};
use crate::lp::{solve_standard_int, Standard};
use crate::rational::{invert, primitive_integer, q, Q};
use crate::rootkit::{RootSystem, Series, Weight, DEFAULT_ORBIT_CAP};

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub orbit_cap: usize,
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { orbit_cap: DEFAULT_ORBIT_CAP, parallel: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SubsetOutcome {
    Found(ZeroCertificate),
    /// No subset of size ≤ r_max exists.
    NoneUpTo(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubsetSearch {
    pub outcome: SubsetOutcome,
    pub orbit_size: usize,
    /// Sizes searched exhaustively, in order.
    pub sizes_tried: Vec<usize>,
    pub nodes: u64,
}

impl SubsetSearch {
    pub fn size(&self) -> Option<usize> {
        match &self.outcome {
            SubsetOutcome::Found(c) => Some(c.len()),
            SubsetOutcome::NoneUpTo(_) => None,
        }
    }
}

/// Smallest r ≤ r_max with a zero certificate of size r in Wλ.
pub fn min_zero_subset(rs: &RootSystem, lambda: &Weight, r_max: usize) -> Result<SubsetSearch> {
    min_zero_subset_from(rs, lambda, 2, r_max, &SearchOptions::default())
}

/// As [`min_zero_subset`], starting at `r_min`. The caller asserts that no
/// certificate smaller than `r_min` exists.
pub fn min_zero_subset_from(
    rs: &RootSystem,
    lambda: &Weight,
    r_min: usize,
    r_max: usize,
    opts: &SearchOptions,
) -> Result<SubsetSearch> {
    rs.check(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    if lambda.is_zero() {
        return Err(Error::Precondition("zero subsets are searched for λ ≠ 0 only".into()));
    }
    if r_max < 2 {
        return Err(Error::Precondition("r_max must be at least 2".into()));
    }
    let prim = primitive_integer(lambda.fund());
    let ints: Vec<i64> = prim
        .iter()
        .map(|x| x.to_i64().ok_or(Error::Overflow("weight coordinate")))
        .collect::<Result<_>>()?;
    // λ = factor · prim.
    let factor = &lambda.fund().iter().zip(&prim).find(|(_, p)| !p.is_zero()).map(|(l, p)| l / Q::from_integer(p.clone())).unwrap();

    let ctx = Ctx::new(rs, &ints, opts.orbit_cap)?;
    let mut sizes_tried = Vec::new();
    for r in r_min.max(2)..=r_max {
        if let Some(found) = ctx.search(r, opts.parallel) {
            let cert = ctx.certificate(&found, factor);
            cert.verify(rs).expect("search produced an invalid certificate");
            return Ok(SubsetSearch {
                outcome: SubsetOutcome::Found(cert),
                orbit_size: ctx.pts.len(),
                sizes_tried,
                nodes: ctx.nodes.load(Ordering::Relaxed),
            });
        }
        sizes_tried.push(r);
    }
    Ok(SubsetSearch {
        outcome: SubsetOutcome::NoneUpTo(r_max),
        orbit_size: ctx.pts.len(),
        sizes_tried,
        nodes: ctx.nodes.load(Ordering::Relaxed),
    })
}

struct Ctx<'a> {
    series: Series,
    rank: usize,
    pts: Vec<Vec<i64>>,
    amb: Vec<Vec<i64>>,
    nodes: AtomicU64,
    _rs: &'a RootSystem,
}

impl<'a> Ctx<'a> {
    fn new(rs: &'a RootSystem, lambda: &[i64], cap: usize) -> Result<Self> {
        let mut pts: Vec<Vec<i64>> = rs.weyl_orbit_int(lambda, cap)?.into_iter().map(|(p, _)| p).collect();
        pts.sort_by(|a, b| b.cmp(a));
        let pos = pts.iter().position(|p| p == lambda).expect("λ is in its orbit");
        let l = pts.remove(pos);
        pts.insert(0, l);
        let amb = pts.iter().map(|p| rs.to_ambient_scaled(p)).collect();
        Ok(Ctx { series: rs.series(), rank: rs.rank(), pts, amb, nodes: AtomicU64::new(0), _rs: rs })
    }

    fn search(&self, r: usize, parallel: bool) -> Option<Vec<usize>> {
        let mut basis = Echelon::default();
        basis.insert(&self.pts[0]);
        let cand: Vec<usize> = (1..self.pts.len()).collect();
        if r == 2 {
            return self.last_level(&[0], &cand);
        }
        if !self.cone_feasible(&[0], &cand) {
            return None;
        }
        let orbits = self.h_orbits(&[0], &cand);
        let branch = |i: usize| {
            let x = orbits[i][0];
            let mut b = basis.clone();
            if !b.insert(&self.pts[x]) {
                return None;
            }
            let next = self.next_candidates(&orbits[i..], x, &b, r - 2);
            self.descend(&mut vec![0, x], &b, &next, r)
        };
        if parallel {
            (0..orbits.len()).into_par_iter().find_map_first(branch)
        } else {
            (0..orbits.len()).find_map(branch)
        }
    }

    fn descend(&self, chosen: &mut Vec<usize>, basis: &Echelon, cand: &[usize], r: usize) -> Option<Vec<usize>> {
        self.nodes.fetch_add(1, Ordering::Relaxed);
        let need = r - chosen.len();
        if need == 1 {
            return self.last_level(chosen, cand);
        }
        if cand.len() < need || !self.cone_feasible(chosen, cand) {
            return None;
        }
        let orbits = self.h_orbits(chosen, cand);
        for i in 0..orbits.len() {
            let x = orbits[i][0];
            let mut b = basis.clone();
            if !b.insert(&self.pts[x]) {
                continue;
            }
            let next = self.next_candidates(&orbits[i..], x, &b, need - 1);
            chosen.push(x);
            if let Some(found) = self.descend(chosen, &b, &next, r) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }

    /// Union of the remaining orbits minus `x`. While two or more points are
    /// still to come, points in the span of the chosen ones are dropped.
    fn next_candidates(&self, orbits: &[Vec<usize>], x: usize, basis: &Echelon, still: usize) -> Vec<usize> {
        let mut next: Vec<usize> = orbits
            .iter()
            .flatten()
            .copied()
            .filter(|&y| y != x && (still < 2 || basis.independent(&self.pts[y])))
            .collect();
        next.sort_unstable();
        next
    }

    fn last_level(&self, chosen: &[usize], cand: &[usize]) -> Option<Vec<usize>> {
        let solver = SpanSolver::new(chosen.iter().map(|&i| &self.pts[i]).collect());
        for orbit in self.h_orbits(chosen, cand) {
            let x = orbit[0];
            if solver.negative_combination(&self.pts[x]) {
                let mut out = chosen.to_vec();
                out.push(x);
                return Some(out);
            }
        }
        None
    }

    /// Is there a relation Σ a_i p_i + Σ b_j c_j = 0 with a_i ≥ 1 on the
    /// chosen points and b_j ≥ 0 on the candidates?
    fn cone_feasible(&self, chosen: &[usize], cand: &[usize]) -> bool {
        let cols: Vec<&Vec<i64>> = chosen.iter().chain(cand).map(|&i| &self.pts[i]).collect();
        let a: Vec<Vec<i64>> = (0..self.rank).map(|k| cols.iter().map(|p| p[k]).collect()).collect();
        let b: Vec<i64> = (0..self.rank).map(|k| -chosen.iter().map(|&i| self.pts[i][k]).sum::<i64>()).collect();
        matches!(solve_standard_int(&a, &b), Standard::Feasible(_))
    }

    /// Orbits of the pointwise stabilizer of `chosen` on `cand`, ordered by
    /// first appearance, each listed in candidate order.
    fn h_orbits(&self, chosen: &[usize], cand: &[usize]) -> Vec<Vec<usize>> {
        let classes = self.classes(chosen);
        let mut index: FxHashMap<Vec<i64>, usize> = FxHashMap::default();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for &c in cand {
            let key = self.canonical(&classes, &self.amb[c]);
            match index.get(&key) {
                Some(&k) => out[k].push(c),
                None => {
                    index.insert(key, out.len());
                    out.push(vec![c]);
                }
            }
        }
        out
    }

    /// Coordinates grouped by their values on the chosen points. Signed
    /// series pair each colour t with −t, recording the orientation.
    fn classes(&self, chosen: &[usize]) -> Classes {
        let dim = self.amb[0].len();
        let mut map: FxHashMap<Vec<i64>, usize> = FxHashMap::default();
        let mut groups: Vec<(Vec<i64>, Vec<(usize, i64)>)> = Vec::new();
        let mut zero = Vec::new();
        let signed = self.series != Series::A;
        for c in 0..dim {
            let t: Vec<i64> = chosen.iter().map(|&p| self.amb[p][c]).collect();
            if signed && t.iter().all(|&v| v == 0) {
                zero.push(c);
                continue;
            }
            let flip = signed && t.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0);
            let (key, sign) = if flip { (t.iter().map(|v| -v).collect(), -1) } else { (t, 1) };
            let k = *map.entry(key.clone()).or_insert_with(|| {
                groups.push((key, Vec::new()));
                groups.len() - 1
            });
            groups[k].1.push((c, sign));
        }
        groups.sort_by(|a, b| a.0.cmp(&b.0));
        Classes { groups: groups.into_iter().map(|(_, g)| g).collect(), zero }
    }

    fn canonical(&self, classes: &Classes, x: &[i64]) -> Vec<i64> {
        let mut key = Vec::with_capacity(x.len() + 1);
        for g in &classes.groups {
            let start = key.len();
            key.extend(g.iter().map(|&(c, s)| s * x[c]));
            key[start..].sort_unstable();
        }
        let start = key.len();
        key.extend(classes.zero.iter().map(|&c| x[c].abs()));
        key[start..].sort_unstable();
        if self.series == Series::D && !classes.zero.is_empty() && classes.zero.iter().all(|&c| x[c] != 0) {
            let negatives = classes.zero.iter().filter(|&&c| x[c] < 0).count();
            key.push((negatives % 2) as i64);
        }
        key
    }

    fn certificate(&self, idx: &[usize], factor: &Q) -> ZeroCertificate {
        let mut idx = idx.to_vec();
        idx.sort_unstable();
        let points: Vec<Vec<Q>> = idx.iter().map(|&i| self.pts[i].iter().map(|&x| q(x)).collect()).collect();
        let ZeroInConv::Inside { coefficients } = zero_in_conv(&points).expect("dimensions agree") else {
            panic!("accepted subset does not contain zero");
        };
        ZeroCertificate {
            points: points.into_iter().map(|p| Weight::new(p).scale(factor)).collect(),
            coefficients,
        }
    }
}

struct Classes {
    groups: Vec<Vec<(usize, i64)>>,
    zero: Vec<usize>,
}

/// Fraction-free row echelon form over the integers.
#[derive(Clone, Default)]
struct Echelon {
    rows: Vec<(usize, Vec<i128>)>,
}

impl Echelon {
    fn reduce(&self, v: &[i64]) -> Vec<i128> {
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (p, row) in &self.rows {
            if v[*p] == 0 {
                continue;
            }
            let (a, b) = (row[*p], v[*p]);
            for (x, y) in v.iter_mut().zip(row) {
                *x = *x * a - y * b;
            }
            let g = v.iter().fold(0i128, |g, x| g.gcd(x));
            if g > 1 {
                v.iter_mut().for_each(|x| *x /= g);
            }
        }
        v
    }

    fn independent(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().any(|&x| x != 0)
    }

    fn insert(&mut self, v: &[i64]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|&x| x != 0) {
            Some(p) => {
                self.rows.push((p, r));
                true
            }
            None => false,
        }
    }
}

/// Solves v = Σ a_i p_i for linearly independent p_i.
struct SpanSolver<'a> {
    pts: Vec<&'a Vec<i64>>,
    cols: Vec<usize>,
    /// `denom · M⁻¹` for the square submatrix on `cols`.
    adj: Option<Vec<Vec<i128>>>,
    inv: Vec<Vec<Q>>,
    denom: i128,
}

impl<'a> SpanSolver<'a> {
    fn new(pts: Vec<&'a Vec<i64>>) -> Self {
        let k = pts.len();
        let dim = pts[0].len();
        let mut cols = Vec::new();
        let mut ech = Echelon::default();
        // Independent columns of the k × dim matrix = independent rows of its transpose.
        for c in 0..dim {
            let col: Vec<i64> = pts.iter().map(|p| p[c]).collect();
            if ech.insert(&col) {
                cols.push(c);
                if cols.len() == k {
                    break;
                }
            }
        }
        assert_eq!(cols.len(), k, "chosen points must be independent");
        let m: Vec<Vec<Q>> = cols.iter().map(|&c| pts.iter().map(|p| q(p[c])).collect()).collect();
        let inv = invert(&m).expect("independent columns");
        let denom_big = inv.iter().flatten().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        let denom = denom_big.to_i128().unwrap_or(0);
        let adj = if denom == 0 {
            None
        } else {
            inv.iter()
                .map(|row| row.iter().map(|x| (x * Q::from_integer(denom_big.clone())).to_integer().to_i128()).collect::<Option<Vec<_>>>())
                .collect::<Option<Vec<_>>>()
        };
        SpanSolver { pts, cols, adj, inv, denom }
    }

    /// Whether v = Σ a_i p_i with every a_i < 0.
    fn negative_combination(&self, v: &[i64]) -> bool {
        if let Some(adj) = &self.adj {
            if let Some(ans) = self.fast(adj, v) {
                return ans;
            }
        }
        let a: Vec<Q> = self.inv.iter().map(|row| row.iter().zip(&self.cols).map(|(x, &c)| x * q(v[c])).sum()).collect();
        if a.iter().any(|x| !x.is_negative()) {
            return false;
        }
        (0..v.len()).all(|c| a.iter().zip(&self.pts).map(|(x, p)| x * q(p[c])).sum::<Q>() == q(v[c]))
    }

    fn fast(&self, adj: &[Vec<i128>], v: &[i64]) -> Option<bool> {
        let mut a = Vec::with_capacity(adj.len());
        for row in adj {
            let mut s: i128 = 0;
            for (x, &c) in row.iter().zip(&self.cols) {
                s = s.checked_add(x.checked_mul(v[c] as i128)?)?;
            }
            if s >= 0 {
                return Some(false);
            }
            a.push(s);
        }
        for c in 0..v.len() {
            let mut s: i128 = 0;
            for (x, p) in a.iter().zip(&self.pts) {
                s = s.checked_add(x.checked_mul(p[c] as i128)?)?;
            }
            if s != self.denom.checked_mul(v[c] as i128)? {
                return Some(false);
            }
        }
        Some(true)
    }
}
