use std::str::FromStr;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::bound::{BoundResult, R0Options, Status};
use super::r0::r0;
use super::rinv::r_invariant;
use crate::error::{Error, Result};
use crate::polygeom::ZeroCertificate;
use crate::rational::qr;
use crate::rootkit::{RootSystem, Series, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// r₀ at fundamental weights of SU_n.
    Su,
    /// r₀ at the half-spin weights of Spin(2ℓ), ℓ odd.
    Spin,
    /// r at fundamental weights of every series.
    R,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "su" => Ok(Family::Su),
            "spin" => Ok(Family::Spin),
            "r" => Ok(Family::R),
            _ => Err(Error::Parse(format!("unknown table family '{s}', expected su, spin or r"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TableOptions {
    pub families: Vec<Family>,
    /// SU_n tables run for n up to this bound.
    pub su_max_n: usize,
    /// r tables for SU_{ℓ+1} run for ℓ up to this bound.
    pub r_su_max_rank: usize,
    pub r_bc_max_rank: usize,
    pub r_d_ranks: Vec<usize>,
    pub r0: R0Options,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions { families: vec![Family::Su, Family::Spin, Family::R], su_max_n: 9, r_su_max_rank: 6, r_bc_max_rank: 4, r_d_ranks: vec![4, 5], r0: R0Options::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub table: String,
    pub system: String,
    pub weight: String,
    pub expected: usize,
    pub computed: Option<usize>,
    pub status: Status,
    pub weyl_bound: Option<usize>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThirdWeightRow {
    pub n: usize,
    pub computed: Option<usize>,
    pub ceiling: usize,
    pub case_formula: usize,
}

/// The two displayed forms for r₀(ϖ₃) at n ≡ 1, 2 mod 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThirdWeightForms {
    pub rows: Vec<ThirdWeightRow>,
    pub ceiling_matches: bool,
    pub case_formula_matches: bool,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylGap {
    pub system: String,
    pub weight: String,
    pub weyl_bound: usize,
    pub value: usize,
    pub status: Status,
}

/// Size of the Weyl certificate behind each computed value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateSize {
    pub invariant: String,
    pub system: String,
    pub weight: String,
    pub value: Option<usize>,
    pub certificate_len: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TablesReport {
    pub rows: Vec<TableRow>,
    pub third_weight: Option<ThirdWeightForms>,
    pub spin_certificate: Option<bool>,
    pub weyl_gaps: Vec<WeylGap>,
    pub certificate_sizes: Vec<CertificateSize>,
    pub passed: bool,
}

impl TablesReport {
    pub fn failures(&self) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(|r| !r.pass)
    }
}

/// Σ q_k over the Euclidean algorithm for (n, j).
pub fn euclid_sum(n: usize, j: usize) -> usize {
    let (mut a, mut b, mut s) = (n, j, 0);
    while b > 0 {
        s += a / b;
        (a, b) = (b, a % b);
    }
    s
}

/// n/2 for even n, (n+3)/2 for odd n.
pub fn second_weight_formula(n: usize) -> usize {
    if n % 2 == 0 {
        n / 2
    } else {
        (n + 3) / 2
    }
}

/// ϖ_j of SU_n.
pub fn su_fundamental(n: usize, j: usize) -> (RootSystem, Weight) {
    let rs = RootSystem::new(Series::A, n - 1).expect("n ≥ 2");
    let w = rs.fundamental(j - 1);
    (rs, w)
}

/// The four spin weights summing to zero for Spin(6), in fundamental
/// coordinates of D₃.
pub fn spin6_zero_set(rs: &RootSystem) -> Result<ZeroCertificate> {
    let h = |s: [i64; 3]| s.map(|x| qr(x, 2)).to_vec();
    let pts = [h([1, 1, 1]), h([-1, -1, 1]), h([-1, 1, -1]), h([1, -1, -1])];
    let points = pts.iter().map(|p| rs.from_ambient(p)).collect::<Result<Vec<_>>>()?;
    Ok(ZeroCertificate { points, coefficients: vec![qr(1, 4); 4] })
}

type Key = (String, String);

fn key(rs: &RootSystem, w: &Weight) -> Key {
    (rs.label(), w.to_string())
}

/// Recomputes every fundamental-weight value in scope and diffs it against
/// the closed forms.
pub fn verify_reference_tables(opts: &TableOptions) -> Result<TablesReport> {
    let fams = &opts.families;
    // (table, system, weight, expected, uses r rather than r0)
    let mut jobs: Vec<(String, RootSystem, Weight, usize, bool)> = Vec::new();
    if fams.contains(&Family::Su) {
        for n in 2..=opts.su_max_n {
            let (rs, w) = su_fundamental(n, 1);
            jobs.push(("su-varpi1".into(), rs, w, n, false));
        }
        for n in 4..=opts.su_max_n {
            let (rs, w) = su_fundamental(n, 2);
            jobs.push(("su-varpi2".into(), rs, w, second_weight_formula(n), false));
        }
        for n in 2..=opts.su_max_n {
            for j in (1..=n / 2).filter(|j| n % j == 0) {
                let (rs, w) = su_fundamental(n, j);
                jobs.push(("su-divisible".into(), rs, w, n / j, false));
            }
        }
        for n in 2..=opts.su_max_n {
            for j in 1..n {
                let (rs, w) = su_fundamental(n, j);
                jobs.push(("su-euclid".into(), rs, w, euclid_sum(n, j), false));
            }
        }
    }
    if fams.contains(&Family::Spin) {
        for l in [3usize, 5] {
            let rs = RootSystem::new(Series::D, l)?;
            for j in [l - 2, l - 1] {
                jobs.push(("spin".into(), rs.clone(), rs.fundamental(j), 4, false));
            }
        }
    }
    if fams.contains(&Family::R) {
        for l in 1..=opts.r_su_max_rank {
            let rs = RootSystem::new(Series::A, l)?;
            for j in 1..=l {
                let jj = j.min(l + 1 - j);
                jobs.push(("r-su".into(), rs.clone(), rs.fundamental(j - 1), (l + 1) - (jj - 1), true));
            }
        }
        for series in [Series::B, Series::C] {
            for l in 2..=opts.r_bc_max_rank {
                let rs = RootSystem::new(series, l)?;
                for j in 1..=l / 2 {
                    jobs.push(("r-bc".into(), rs.clone(), rs.fundamental(j - 1), l - (j - 1), true));
                    if l - j != j {
                        jobs.push(("r-bc-mirror".into(), rs.clone(), rs.fundamental(l - j - 1), l - (j - 1), true));
                    }
                }
                jobs.push(("r-bc".into(), rs.clone(), rs.fundamental(l - 1), 2, true));
            }
        }
        for &l in &opts.r_d_ranks {
            let rs = RootSystem::new(Series::D, l)?;
            for j in 1..=l / 2 {
                jobs.push(("r-d".into(), rs.clone(), rs.fundamental(j - 1), l - (j - 1), true));
                if l - j != j {
                    jobs.push(("r-d-mirror".into(), rs.clone(), rs.fundamental(l - j - 1), l - (j - 1), true));
                }
            }
            jobs.push(("r-d".into(), rs.clone(), rs.fundamental(l - 1), l, true));
        }
    }

    let mut unique: Vec<(RootSystem, Weight, bool)> = Vec::new();
    let mut seen = rustc_hash::FxHashSet::default();
    for (_, rs, w, _, is_r) in &jobs {
        if seen.insert((key(rs, w), *is_r)) {
            unique.push((rs.clone(), w.clone(), *is_r));
        }
    }
    let results: Vec<((Key, bool), BoundResult)> = unique
        .into_par_iter()
        .map(|(rs, w, is_r)| {
            let res = if is_r { r_invariant(&rs, &w, &opts.r0)? } else { r0(&rs, &w, &opts.r0)? };
            Ok(((key(&rs, &w), is_r), res))
        })
        .collect::<Result<_>>()?;
    let memo: FxHashMap<(Key, bool), BoundResult> = results.into_iter().collect();

    let mut rows = Vec::new();
    for (table, rs, w, expected, is_r) in &jobs {
        let res = &memo[&(key(rs, w), *is_r)];
        rows.push(TableRow {
            table: table.clone(),
            system: rs.label(),
            weight: w.to_string(),
            expected: *expected,
            computed: res.value,
            status: res.status,
            weyl_bound: res.weyl_bound,
            pass: res.value == Some(*expected),
        });
    }

    let mut weyl_gaps: Vec<WeylGap> = memo
        .iter()
        .filter(|((_, is_r), res)| !is_r && res.weyl_gap())
        .map(|(((system, weight), _), res)| WeylGap { system: system.clone(), weight: weight.clone(), weyl_bound: res.weyl_bound.unwrap(), value: res.value.unwrap(), status: res.status })
        .collect();
    weyl_gaps.sort_by(|a, b| (a.system.len(), &a.system, &a.weight).cmp(&(b.system.len(), &b.system, &b.weight)));

    let mut certificate_sizes: Vec<CertificateSize> = memo
        .iter()
        .map(|(((system, weight), is_r), res)| CertificateSize {
            invariant: if *is_r { "r" } else { "r0" }.into(),
            system: system.clone(),
            weight: weight.clone(),
            value: res.value,
            certificate_len: res.weyl_certificate.as_ref().map(|c| c.len()),
        })
        .collect();
    certificate_sizes.sort_by(|a, b| (&a.invariant, a.system.len(), &a.system, &a.weight).cmp(&(&b.invariant, b.system.len(), &b.system, &b.weight)));

    let third_weight = fams.contains(&Family::Su).then(|| {
        let rows: Vec<ThirdWeightRow> = (4..=opts.su_max_n)
            .filter(|n| n % 3 != 0)
            .map(|n| {
                let (rs, w) = su_fundamental(n, 3);
                ThirdWeightRow { n, computed: memo[&(key(&rs, &w), false)].value, ceiling: n.div_ceil(3), case_formula: n / 3 + 3 }
            })
            .collect();
        let ceiling_matches = rows.iter().all(|r| r.computed == Some(r.ceiling));
        let case_formula_matches = rows.iter().all(|r| r.computed == Some(r.case_formula));
        let verdict = match (ceiling_matches, case_formula_matches) {
            (true, false) => "the ceiling form ⌈n/3⌉ matches".to_string(),
            (false, true) => "the case formula q+3 matches".to_string(),
            (true, true) => "both forms match".to_string(),
            (false, false) => {
                let agree: Vec<String> = rows.iter().filter(|r| r.computed == Some(r.case_formula)).map(|r| r.n.to_string()).collect();
                format!("neither form matches uniformly; q+3 agrees only for n ∈ {{{}}}, ⌈n/3⌉ nowhere", agree.join(","))
            }
        };
        ThirdWeightForms { rows, ceiling_matches, case_formula_matches, verdict }
    });

    let spin_certificate = if fams.contains(&Family::Spin) {
        let d3 = RootSystem::new(Series::D, 3)?;
        let m = spin6_zero_set(&d3)?;
        Some(m.verify(&d3).is_ok() && m.len() == 4)
    } else {
        None
    };

    let passed = rows.iter().all(|r| r.pass)
        && third_weight.as_ref().is_none_or(|t| t.ceiling_matches != t.case_formula_matches)
        && spin_certificate != Some(false);
    Ok(TablesReport { rows, third_weight, spin_certificate, weyl_gaps, certificate_sizes, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclid_sums() {
        assert_eq!(euclid_sum(7, 3), 5);
        assert_eq!(euclid_sum(5, 3), 4);
        assert_eq!(euclid_sum(9, 3), 3);
        assert_eq!(euclid_sum(6, 1), 6);
        assert_eq!(euclid_sum(8, 3), 5);
    }

    #[test]
    fn spin6_set_is_a_certificate() {
        let d3 = RootSystem::new(Series::D, 3).unwrap();
        let m = spin6_zero_set(&d3).unwrap();
        m.verify(&d3).unwrap();
        assert_eq!(d3.dominant_representative(&m.points[0]).0, d3.fundamental(2));
    }

    #[test]
    fn small_su_tables() {
        let opts = TableOptions { families: vec![Family::Su], su_max_n: 6, ..Default::default() };
        let rep = verify_reference_tables(&opts).unwrap();
        assert!(rep.rows.iter().all(|r| r.pass), "{:?}", rep.failures().collect::<Vec<_>>());
        let t = rep.third_weight.unwrap();
        assert_eq!(t.rows.iter().map(|r| r.computed).collect::<Vec<_>>(), vec![Some(4), Some(4)]);
        assert!(t.case_formula_matches && !t.ceiling_matches);
        assert!(rep.weyl_gaps.is_empty());
    }
}
