//! Real Littlewood–Richardson cone of SU_n through Knutson–Tao hives.
//!
//! A hive of size n is a function h on the vertices (a, b), 0 ≤ b ≤ a ≤ n, of
//! a triangle. For the triple (α, β, γ) the boundary is fixed: h(a, 0) are
//! the partial sums of α, h(n, b) = |α| + partial sums of β and h(a, a) the
//! partial sums of γ. On every unit rhombus the sum at the obtuse vertices is
//! at least the sum at the acute ones. A real hive exists iff the Hermitian
//! spectra satisfy γ ∈ spec(α ⊞ β). By saturation, for integral data this is
//! also equivalent to c^γ_{αβ} ≠ 0.
//!
//! 0 ∈ Kλ_1 + … + Kλ_r is tested by chaining r−2 hives through intermediate
//! spectra ν_k, ending at the spectrum of −A_r shifted to the right trace.

use num_traits::{Signed, Zero};

use crate::lp::{solve_inequalities, Inequalities};
use crate::rational::Q;

/// Affine expression Σ coef·x_var + constant.
#[derive(Clone, Debug, Default)]
struct Affine {
    terms: Vec<(usize, Q)>,
    constant: Q,
}

impl Affine {
    fn constant(c: Q) -> Self {
        Affine { terms: vec![], constant: c }
    }

    fn var(i: usize) -> Self {
        Affine { terms: vec![(i, Q::from_integer(1.into()))], constant: Q::zero() }
    }
}

struct System {
    nvars: usize,
    /// Each entry e encodes e ≥ 0.
    constraints: Vec<Affine>,
}

impl System {
    fn new_var(&mut self) -> usize {
        self.nvars += 1;
        self.nvars - 1
    }

    /// lhs1 + lhs2 − rhs1 − rhs2 ≥ 0.
    fn rhombus(&mut self, pos: [&Affine; 2], neg: [&Affine; 2]) {
        let mut e = Affine::default();
        for a in pos {
            e.terms.extend(a.terms.iter().cloned());
            e.constant += &a.constant;
        }
        for a in neg {
            e.terms.extend(a.terms.iter().map(|(i, c)| (*i, -c)));
            e.constant -= &a.constant;
        }
        // Merge repeated variables.
        e.terms.sort_by_key(|t| t.0);
        let mut merged: Vec<(usize, Q)> = Vec::new();
        for (i, c) in e.terms {
            match merged.last_mut() {
                Some((j, d)) if *j == i => *d += c,
                _ => merged.push((i, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        if merged.is_empty() && !e.constant.is_negative() {
            return;
        }
        self.constraints.push(Affine { terms: merged, constant: e.constant });
    }

    /// Adds a hive with the given boundary expressions. `left[a]` = h(a,0),
    /// `bottom[b]` = h(n,b), `right[a]` = h(a,a).
    fn hive(&mut self, left: &[Affine], bottom: &[Affine], right: &[Affine]) {
        let n = left.len() - 1;
        let mut h: Vec<Vec<Affine>> = (0..=n).map(|a| vec![Affine::default(); a + 1]).collect();
        for a in 0..=n {
            for b in 0..=a {
                h[a][b] = if b == 0 {
                    left[a].clone()
                } else if a == n {
                    bottom[b].clone()
                } else if a == b {
                    right[a].clone()
                } else {
                    Affine::var(self.new_var())
                };
            }
        }
        for a in 0..n {
            for b in 0..=a {
                // Shared edge (a+1,b)–(a+1,b+1).
                if a + 2 <= n {
                    self.rhombus([&h[a + 1][b], &h[a + 1][b + 1]], [&h[a][b], &h[a + 2][b + 1]]);
                }
                // Shared edge (a,b)–(a+1,b+1).
                if b < a {
                    self.rhombus([&h[a][b], &h[a + 1][b + 1]], [&h[a + 1][b], &h[a][b + 1]]);
                }
                // Shared edge (a,b)–(a+1,b).
                if b >= 1 {
                    self.rhombus([&h[a][b], &h[a + 1][b]], [&h[a + 1][b + 1], &h[a][b - 1]]);
                }
            }
        }
    }

    fn solve(&self) -> Inequalities {
        // e ≥ 0  ⟺  −Σ coef·x ≤ constant.
        let m: Vec<Vec<Q>> = self
            .constraints
            .iter()
            .map(|e| {
                let mut row = vec![Q::zero(); self.nvars];
                for (i, c) in &e.terms {
                    row[*i] -= c;
                }
                row
            })
            .collect();
        let b: Vec<Q> = self.constraints.iter().map(|e| e.constant.clone()).collect();
        if self.nvars == 0 {
            return if b.iter().all(|x| !x.is_negative()) {
                Inequalities::Feasible(vec![])
            } else {
                let y = b.iter().map(|x| if x.is_negative() { Q::from_integer(1.into()) } else { Q::zero() }).collect();
                Inequalities::Infeasible(y)
            };
        }
        solve_inequalities(&m, &b)
    }
}

fn partial_sums(v: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero()];
    for x in v {
        let last = out.last().unwrap().clone();
        out.push(last + x);
    }
    out
}

/// Whether γ ∈ spec(α ⊞ β) for weakly decreasing real spectra of length n.
pub fn horn_triple(alpha: &[Q], beta: &[Q], gamma: &[Q]) -> bool {
    let n = alpha.len();
    assert!(beta.len() == n && gamma.len() == n, "spectra must have equal length");
    let sa = partial_sums(alpha);
    let sb = partial_sums(beta);
    let sc = partial_sums(gamma);
    if sc[n] != &sa[n] + &sb[n] {
        return false;
    }
    let mut sys = System { nvars: 0, constraints: vec![] };
    let left: Vec<Affine> = sa.iter().cloned().map(Affine::constant).collect();
    let bottom: Vec<Affine> = sb.iter().map(|x| Affine::constant(&sa[n] + x)).collect();
    let right: Vec<Affine> = sc.iter().cloned().map(Affine::constant).collect();
    sys.hive(&left, &bottom, &right);
    matches!(sys.solve(), Inequalities::Feasible(_))
}

/// Whether 0 ∈ Kλ_1 + … + Kλ_r in SU_n, for spectra given as weakly
/// decreasing vectors (any trace). Decided by an exact LP whose answer
/// carries a verified certificate either way.
pub fn clr_contains(spectra: &[Vec<Q>]) -> bool {
    clr_chain(spectra).is_some()
}

/// Spectrum that A_1+…+A_{r−1} must have: shift − reverse(λ_r).
fn chain_target(spectra: &[Vec<Q>]) -> Vec<Q> {
    let n = spectra[0].len();
    let total: Q = spectra.iter().flatten().sum();
    let shift = &total / Q::from_integer((n as i64).into());
    let last = &spectra[spectra.len() - 1];
    (0..n).map(|i| &shift - &last[n - 1 - i]).collect()
}

/// Like [`clr_contains`], returning on success the spectra ν_1, …, ν_{r−3}
/// of the partial sums A_1+A_2, …, A_1+…+A_{r−2}.
pub fn clr_chain(spectra: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let r = spectra.len();
    assert!(r >= 1);
    let n = spectra[0].len();
    let target = chain_target(spectra);
    if r == 1 {
        return spectra[0].iter().all(|x| *x == spectra[0][0]).then(Vec::new);
    }
    if r == 2 {
        return (spectra[0] == target).then(Vec::new);
    }
    let mut sys = System { nvars: 0, constraints: vec![] };
    let mut prev: Vec<Affine> = partial_sums(&spectra[0]).into_iter().map(Affine::constant).collect();
    let mut inner: Vec<Vec<Affine>> = Vec::new();
    for k in 1..r - 1 {
        let beta = &spectra[k];
        let prev_total = prev[n].clone();
        let bottom: Vec<Affine> = partial_sums(beta)
            .into_iter()
            .map(|x| {
                let mut e = prev_total.clone();
                e.constant += x;
                e
            })
            .collect();
        let next: Vec<Affine> = if k == r - 2 {
            partial_sums(&target).into_iter().map(Affine::constant).collect()
        } else {
            let mut v = vec![Affine::constant(Q::zero())];
            for _ in 1..n {
                v.push(Affine::var(sys.new_var()));
            }
            let mut end = prev_total.clone();
            end.constant += beta.iter().sum::<Q>();
            v.push(end);
            // The intermediate spectrum is weakly decreasing.
            for a in 1..n {
                sys.rhombus([&v[a], &v[a]], [&v[a - 1], &v[a + 1]]);
            }
            inner.push(v.clone());
            v
        };
        sys.hive(&prev, &bottom, &next);
        prev = next;
    }
    let Inequalities::Feasible(x) = sys.solve() else {
        return None;
    };
    let eval = |e: &Affine| -> Q { e.terms.iter().map(|(i, c)| c * &x[*i]).sum::<Q>() + &e.constant };
    Some(
        inner
            .iter()
            .map(|v| {
                let s: Vec<Q> = v.iter().map(eval).collect();
                (0..n).map(|i| &s[i + 1] - &s[i]).collect()
            })
            .collect(),
    )
}

/// Re-checks a chain returned by [`clr_chain`] one Horn triple at a time.
pub fn verify_chain(spectra: &[Vec<Q>], inner: &[Vec<Q>]) -> bool {
    let r = spectra.len();
    if r < 3 {
        return clr_chain(spectra).is_some();
    }
    if inner.len() != r - 3 {
        return false;
    }
    let target = chain_target(spectra);
    let mut prev = spectra[0].clone();
    for k in 1..r - 1 {
        let next = if k == r - 2 { target.clone() } else { inner[k - 1].clone() };
        if next.windows(2).any(|w| w[0] < w[1]) || !horn_triple(&prev, &spectra[k], &next) {
            return false;
        }
        prev = next;
    }
    true
}

/// Weakly decreasing spectrum of an SU_n weight given in fundamental coordinates.
pub fn partition_of(fund: &[Q]) -> Vec<Q> {
    let n = fund.len() + 1;
    let mut out = vec![Q::zero(); n];
    for i in (0..n - 1).rev() {
        out[i] = &out[i + 1] + &fund[i];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn v(x: &[i64]) -> Vec<Q> {
        x.iter().map(|&t| q(t)).collect()
    }

    #[test]
    fn rank_one_interval() {
        // γ₁ ∈ [max(α₁+β₂, α₂+β₁), α₁+β₁].
        let (a, b) = (v(&[3, 1]), v(&[2, 0]));
        for g1 in 0..=8 {
            let g = v(&[g1, 6 - g1]);
            let expect = (3..=5).contains(&g1);
            assert_eq!(horn_triple(&a, &b, &g), expect, "γ₁ = {g1}");
        }
    }

    #[test]
    fn pieri_cases_in_rank_two() {
        // V(1,0,0) ⊗ V(1,0,0) = V(2,0,0) ⊕ V(1,1,0).
        let a = v(&[1, 0, 0]);
        assert!(horn_triple(&a, &a, &v(&[2, 0, 0])));
        assert!(horn_triple(&a, &a, &v(&[1, 1, 0])));
        assert!(!horn_triple(&a, &a, &v(&[1, 0, 1])));
        // Adjoint ⊗ adjoint of SU3 contains (3,2,1) and (4,2,0) but not (5,1,0).
        let ad = v(&[2, 1, 0]);
        assert!(horn_triple(&ad, &ad, &v(&[3, 2, 1])));
        assert!(horn_triple(&ad, &ad, &v(&[4, 2, 0])));
        assert!(!horn_triple(&ad, &ad, &v(&[5, 1, 0])));
    }

    #[test]
    fn defining_representation_needs_n_copies() {
        for n in 2..=5usize {
            let mut l = vec![q(0); n];
            l[0] = q(1);
            for r in 1..=n + 1 {
                let got = clr_contains(&vec![l.clone(); r]);
                assert_eq!(got, r >= n, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn chains_verify_triple_by_triple() {
        let l = v(&[1, 0, 0, 0, 0]);
        let spectra = vec![l.clone(); 5];
        let inner = clr_chain(&spectra).unwrap();
        assert_eq!(inner.len(), 2);
        assert!(verify_chain(&spectra, &inner));
        let mut bad = inner.clone();
        bad[0] = v(&[5, 0, 0, 0, 0]);
        assert!(!verify_chain(&spectra, &bad));
        assert!(clr_chain(&vec![l; 4]).is_none());
    }

    /// Partitions of `total` with at most `rows` parts, each at most `max`.
    fn partitions(total: i64, rows: usize, max: i64) -> Vec<Vec<i64>> {
        if rows == 0 {
            return if total == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for first in (0..=max.min(total)).rev() {
            for mut rest in partitions(total - first, rows - 1, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn horn_triples_match_klimyk_multiplicities() {
        use crate::charalg::{tensor_decompose_int, DEFAULT_CHARACTER_CAP};
        use crate::rootkit::RootSystem;
        for n in [3usize, 4] {
            let rs: RootSystem = format!("A{}", n - 1).parse().unwrap();
            let small: Vec<Vec<i64>> = (0..=4).flat_map(|t| partitions(t, n, 2)).filter(|p| p[n - 1] == 0).collect();
            for a in &small {
                for b in &small {
                    let fund = |p: &[i64]| -> Vec<i64> { (0..n - 1).map(|i| p[i] - p[i + 1]).collect() };
                    let dec = tensor_decompose_int(&rs, &fund(a), &fund(b), DEFAULT_CHARACTER_CAP).unwrap();
                    let size = a.iter().sum::<i64>() + b.iter().sum::<i64>();
                    for g in partitions(size, n, size) {
                        let mult = dec.multiplicity(&fund(&g));
                        let horn = horn_triple(&v(a), &v(b), &v(&g));
                        assert_eq!(horn, mult > 0, "{a:?} ⊗ {b:?} → {g:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn partitions_from_fundamental_coordinates() {
        assert_eq!(partition_of(&v(&[1, 0, 2])), v(&[3, 2, 2, 0]));
    }
}
