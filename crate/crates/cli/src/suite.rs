//! The regression suite behind `verify-paper`: one check per acceptance
//! criterion, each returning a pass/fail line with detail.

use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use anyhow::{anyhow, Result};
use orbitope::charalg::{
    character_int, decompose_character, dominant_character, invariant_dim_tensor_power, multiply, symmetric_power_characters, tensor_decompose_int, weyl_dim, weyl_dim_int,
    DEFAULT_CHARACTER_CAP as CAP,
};
use orbitope::invariants::{
    check_r2_criterion, in_cone_ar, r0, verify_degree_bound, verify_reference_tables, BoundResult, R0Options, Status, TableOptions, TablesReport, Tri,
};
use orbitope::polygeom::caratheodory_reduce;
use orbitope::rational::{q, qr, Q};
use orbitope::rootkit::DEFAULT_ORBIT_CAP;
use orbitope::{RootSystem, Weight};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!("criterion {:>2} {} {}: {}", self.id, if self.passed { "PASS" } else { "FAIL" }, self.title, self.detail)
    }
}

/// System, weight, value, Weyl certificate size.
type AuditRow = (String, String, Option<usize>, Option<usize>);

/// Shared state: the reference tables are computed once, and every bound
/// computed by a check is recorded for the certificate-size audit.
pub struct SuiteContext {
    pub opts: R0Options,
    tables: OnceLock<std::result::Result<TablesReport, String>>,
    audit: Mutex<Vec<AuditRow>>,
}

impl SuiteContext {
    pub fn new(opts: R0Options) -> Self {
        SuiteContext { opts, tables: OnceLock::new(), audit: Mutex::new(Vec::new()) }
    }

    pub fn tables(&self) -> Result<&TablesReport> {
        self.tables
            .get_or_init(|| verify_reference_tables(&TableOptions { r0: self.opts.clone(), ..Default::default() }).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| anyhow!("reference tables: {e}"))
    }

    fn record(&self, rs: &RootSystem, w: &Weight, res: &BoundResult) {
        self.audit.lock().expect("audit lock").push((rs.label(), w.to_string(), res.value, res.weyl_certificate.as_ref().map(|c| c.len())));
    }

    fn r0(&self, rs: &RootSystem, w: &Weight) -> Result<BoundResult> {
        let res = r0(rs, w, &self.opts)?;
        self.record(rs, w, &res);
        Ok(res)
    }
}

fn sys(label: &str) -> RootSystem {
    label.parse().expect("valid label")
}

fn random_weight(rng: &mut ChaCha8Rng, rank: usize, max: i64, nonzero: bool) -> Weight {
    loop {
        let c: Vec<i64> = (0..rank).map(|_| rng.gen_range(0..=max)).collect();
        if !nonzero || c.iter().any(|&x| x != 0) {
            return Weight::from_ints(&c);
        }
    }
}

/// Every integral dominant weight with coordinates ≤ max, zero excluded.
fn grid(rank: usize, max: i64) -> Vec<Weight> {
    let side = (max + 1) as usize;
    (1..side.pow(rank as u32))
        .map(|mut n| {
            let c: Vec<i64> = (0..rank)
                .map(|_| {
                    let d = (n % side) as i64;
                    n /= side;
                    d
                })
                .collect();
            Weight::from_ints(&c)
        })
        .collect()
}

fn outcome(id: u8, title: &'static str, r: Result<(bool, String)>) -> Outcome {
    match r {
        Ok((passed, detail)) => Outcome { id, title, passed, detail },
        Err(e) => Outcome { id, title, passed: false, detail: format!("error: {e:#}") },
    }
}

fn table_rows(ctx: &SuiteContext, table: &str, keep: impl Fn(&str, &str) -> bool) -> Result<(bool, String)> {
    let rep = ctx.tables()?;
    let rows: Vec<_> = rep.rows.iter().filter(|r| r.table == table && keep(&r.system, &r.weight)).collect();
    let bad: Vec<String> = rows.iter().filter(|r| !r.pass).map(|r| format!("{} ({}) expected {} got {:?}", r.system, r.weight, r.expected, r.computed)).collect();
    if rows.is_empty() {
        return Ok((false, format!("no {table} rows")));
    }
    Ok((bad.is_empty(), if bad.is_empty() { format!("{} rows match", rows.len()) } else { format!("{} of {} rows differ: {}", bad.len(), rows.len(), bad.join("; ")) }))
}

pub fn criterion_1(ctx: &SuiteContext) -> Outcome {
    outcome(1, "r0(ϖ1, SU_n) = n for n = 2..8", (|| {
        let mut bad = Vec::new();
        let mut slowest = Duration::ZERO;
        for n in 2..=8usize {
            let rs = RootSystem::new(orbitope::Series::A, n - 1)?;
            let w = rs.fundamental(0);
            let t = Instant::now();
            let res = ctx.r0(&rs, &w)?;
            let el = t.elapsed();
            slowest = slowest.max(el);
            if res.value != Some(n) || el >= Duration::from_secs(30) {
                bad.push(format!("n={n}: {:?} in {:.1}s", res.value, el.as_secs_f64()));
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { format!("7 cases, slowest {:.2}s", slowest.as_secs_f64()) } else { bad.join("; ") }))
    })())
}

pub fn criterion_2(ctx: &SuiteContext) -> Outcome {
    outcome(2, "r0(ϖ2, SU_n) for n = 4..9", table_rows(ctx, "su-varpi2", |_, _| true))
}

pub fn criterion_3(ctx: &SuiteContext) -> Outcome {
    // (j, k): ϖ_j of SU_{jk}.
    let cases = [(2usize, 3usize), (3, 2), (2, 4), (3, 3), (4, 2)];
    outcome(3, "r0(ϖ_j, SU_jk) = k", (|| {
        let rep = ctx.tables()?;
        let mut bad = Vec::new();
        for (j, k) in cases {
            let (rs, w) = orbitope::invariants::su_fundamental(j * k, j);
            let row = rep.rows.iter().find(|r| r.table == "su-divisible" && r.system == rs.label() && r.weight == w.to_string());
            match row {
                Some(r) if r.computed == Some(k) => {}
                Some(r) => bad.push(format!("SU{} ϖ{j}: expected {k} got {:?}", j * k, r.computed)),
                None => bad.push(format!("SU{} ϖ{j}: missing", j * k)),
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { format!("{} cases match", cases.len()) } else { bad.join("; ") }))
    })())
}

pub fn criterion_4(ctx: &SuiteContext) -> Outcome {
    outcome(4, "Euclidean-algorithm sums and the ϖ3 forms", (|| {
        let (rows_ok, detail) = table_rows(ctx, "su-euclid", |_, _| true)?;
        let tw = ctx.tables()?.third_weight.clone().ok_or_else(|| anyhow!("no ϖ3 comparison"))?;
        let forms_ok = tw.ceiling_matches != tw.case_formula_matches;
        let computed: Vec<String> = tw.rows.iter().map(|r| format!("n={}: {:?} vs ⌈n/3⌉={} q+3={}", r.n, r.computed, r.ceiling, r.case_formula)).collect();
        Ok((rows_ok && forms_ok, format!("{detail}; ϖ3: {}; {}", tw.verdict, computed.join(", "))))
    })())
}

pub fn criterion_5(ctx: &SuiteContext) -> Outcome {
    outcome(5, "half-spin weights of D5 and the D3 zero set", (|| {
        let (rows_ok, detail) = table_rows(ctx, "spin", |_, _| true)?;
        let cert = ctx.tables()?.spin_certificate == Some(true);
        Ok((rows_ok && cert, format!("{detail}; D3 four-point set verifies: {cert}")))
    })())
}

pub fn criterion_6(ctx: &SuiteContext) -> Outcome {
    outcome(6, "r0 = 2 when w0 = −1", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut bad = Vec::new();
        let mut n = 0;
        for label in ["B2", "B3", "C2", "C3", "D4"] {
            let rs = sys(label);
            for _ in 0..20 {
                let w = random_weight(&mut rng, rs.rank(), 2, true);
                let res = ctx.r0(&rs, &w)?;
                // Independent route: V_λ ⊗ V_λ has an invariant.
                let pair = invariant_dim_tensor_power(&rs, &w, 2, 1, CAP)?;
                n += 1;
                if res.value != Some(2) || res.status != Status::Exact || pair == 0 {
                    bad.push(format!("{label} ({w}): {:?}, (V⊗V)^K dim {pair}", res.value));
                }
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { format!("{n} weights, all 2 with an invariant in V⊗V") } else { bad.join("; ") }))
    })())
}

pub fn criterion_7(ctx: &SuiteContext) -> Outcome {
    outcome(7, "r(ϖ_j) tables for SU, B, C, D", (|| {
        let mut ok = true;
        let mut parts = Vec::new();
        for t in ["r-su", "r-bc", "r-bc-mirror", "r-d", "r-d-mirror"] {
            let (p, d) = table_rows(ctx, t, |_, _| true)?;
            ok &= p;
            parts.push(format!("{t}: {d}"));
        }
        Ok((ok, parts.join("; ")))
    })())
}

pub fn criterion_8(_ctx: &SuiteContext) -> Outcome {
    outcome(8, "Carathéodory decompositions over ≤ ℓ+1 orbit points", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut bad = Vec::new();
        let mut largest = 0;
        for (label, w) in [("A2", "1,1"), ("B2", "1,1"), ("A3", "0,1,0")] {
            let rs = sys(label);
            let lambda: Weight = w.parse()?;
            let orbit: Vec<Vec<Q>> = rs.weyl_orbit(&lambda, DEFAULT_ORBIT_CAP)?.iter().map(|p| p.fund().to_vec()).collect();
            for _ in 0..100 {
                let k = rng.gen_range(1..=orbit.len());
                let picks: Vec<usize> = rand::seq::index::sample(&mut rng, orbit.len(), k).into_vec();
                let raw: Vec<i64> = picks.iter().map(|_| rng.gen_range(1..=9)).collect();
                let total: i64 = raw.iter().sum();
                let mut target = vec![q(0); rs.rank()];
                for (&i, &c) in picks.iter().zip(&raw) {
                    for (t, x) in target.iter_mut().zip(&orbit[i]) {
                        *t += x * qr(c, total);
                    }
                }
                let dec = caratheodory_reduce(&target, &orbit)?;
                largest = largest.max(dec.len());
                let mut back = vec![q(0); rs.rank()];
                for (i, c) in &dec {
                    for (b, x) in back.iter_mut().zip(&orbit[*i]) {
                        *b += x * c;
                    }
                }
                let sum: Q = dec.iter().map(|(_, c)| c.clone()).sum();
                let positive = dec.iter().all(|(_, c)| *c > q(0));
                if dec.len() > rs.rank() + 1 || back != target || sum != q(1) || !positive {
                    bad.push(format!("{label} ({w}): {} points", dec.len()));
                }
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { format!("300 points, largest support {largest}") } else { bad.join("; ") }))
    })())
}

pub fn criterion_9(ctx: &SuiteContext) -> Outcome {
    outcome(9, "r0(λ) ≤ d1(qλ) and b1(λ) ≥ r0(λ)", (|| {
        let mut checked = 0;
        let mut violations = Vec::new();
        for label in ["A1", "A2", "B2"] {
            let rs = sys(label);
            for w in grid(rs.rank(), 2) {
                let rep = verify_degree_bound(&rs, &w, 1..=3, 8, &ctx.opts)?;
                checked += rep.checks.iter().filter(|c| c.holds.is_some()).count() + rep.b1_holds.map_or(0, |_| 1);
                violations.extend(rep.violations.iter().map(|v| format!("{label} ({w}): {v}")));
            }
        }
        Ok((violations.is_empty() && checked > 0, if violations.is_empty() { format!("{checked} inequalities checked") } else { violations.join("; ") }))
    })())
}

pub fn criterion_10(ctx: &SuiteContext) -> Outcome {
    outcome(10, "equal-pairing condition iff r(λ) = 2", (|| {
        let mut n = 0;
        let mut twos = 0;
        let mut bad = Vec::new();
        for label in ["A2", "A3", "B2", "B3"] {
            let rs = sys(label);
            for w in grid(rs.rank(), 3) {
                let rep = check_r2_criterion(&rs, &w, &ctx.opts)?;
                n += 1;
                twos += usize::from(rep.r == Some(2));
                if !rep.agree {
                    bad.push(format!("{label} ({w}): condition {} but r = {:?}", rep.condition, rep.r));
                }
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { format!("{n} weights agree, {twos} with r = 2") } else { bad.join("; ") }))
    })())
}

pub fn criterion_11(_ctx: &SuiteContext) -> Outcome {
    outcome(11, "Klimyk, Freudenthal and symmetric-power oracles agree", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let labels = ["A1", "A2", "A3", "B2", "B3", "C3", "D4"];
        let mut bad = Vec::new();
        let mut pairs = 0;
        while pairs < 50 {
            let rs = sys(labels.choose(&mut rng).expect("nonempty"));
            let a = random_weight(&mut rng, rs.rank(), 2, false);
            let b = random_weight(&mut rng, rs.rank(), 2, false);
            let (ai, bi) = (a.to_ints()?, b.to_ints()?);
            if weyl_dim_int(&rs, &ai) > 200 || weyl_dim_int(&rs, &bi) > 200 {
                continue;
            }
            pairs += 1;
            let klimyk = tensor_decompose_int(&rs, &ai, &bi, CAP)?;
            let product = decompose_character(&rs, &multiply(&rs, &character_int(&rs, &ai, CAP)?, &character_int(&rs, &bi, CAP)?, CAP)?, CAP)?;
            if klimyk != product {
                bad.push(format!("{} ({a})⊗({b})", rs.label()));
            }
        }
        for _ in 0..100 {
            let rs = sys(labels.choose(&mut rng).expect("nonempty"));
            let w = random_weight(&mut rng, rs.rank(), 3, false);
            let mass = dominant_character(&rs, &w, CAP)?.dimension(&rs);
            if mass != weyl_dim(&rs, &w)? {
                bad.push(format!("{} ({w}): mass {mass}", rs.label()));
            }
        }
        let mut sym = 0;
        while sym < 30 {
            let rs = sys(labels.choose(&mut rng).expect("nonempty"));
            let w = random_weight(&mut rng, rs.rank(), 2, true).to_ints()?;
            let dim = weyl_dim_int(&rs, &w);
            if dim > 40 {
                continue;
            }
            sym += 1;
            let d = rng.gen_range(1..=4usize);
            let s = symmetric_power_characters(&rs, &w, d, CAP)?;
            let total = decompose_character(&rs, &s[d], CAP)?.dimension(&rs);
            // binomial(dim+d−1, d), built up exactly.
            let binom = (1..=d as u128).fold(1u128, |acc, i| acc * (dim + i - 1) / i);
            if total != binom {
                bad.push(format!("{} S^{d}({w:?}): {total} vs {binom}", rs.label()));
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { "50 tensor pairs, 100 masses, 30 symmetric powers".to_string() } else { bad.join("; ") }))
    })())
}

pub fn criterion_12(ctx: &SuiteContext) -> Outcome {
    outcome(12, "certificate sizes, scale invariance, convexity of 𝔄3", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut bad = Vec::new();
        let systems = ["A2", "A3", "A4", "B2", "C3"];
        for _ in 0..20 {
            let rs = sys(systems.choose(&mut rng).expect("nonempty"));
            let w = random_weight(&mut rng, rs.rank(), 2, true);
            let k = rng.gen_range(2..=4i64);
            let a = ctx.r0(&rs, &w)?;
            let b = ctx.r0(&rs, &w.scale(&q(k)))?;
            if (a.value, a.status) != (b.value, b.status) {
                bad.push(format!("{} ({w}) ×{k}: {:?} vs {:?}", rs.label(), a.value, b.value));
            }
        }
        let a2 = sys("A2");
        let mut pairs = 0;
        while pairs < 20 {
            let l = random_weight(&mut rng, 2, 4, true);
            let m = random_weight(&mut rng, 2, 4, true);
            if in_cone_ar(&a2, &l, 3, &ctx.opts)? != Tri::Yes || in_cone_ar(&a2, &m, 3, &ctx.opts)? != Tri::Yes {
                continue;
            }
            pairs += 1;
            let mid = l.add(&m).scale(&qr(1, 2));
            let res = ctx.r0(&a2, &mid)?;
            if !matches!(res.value, Some(v) if v <= 3) || res.status == Status::UpperBoundOnly {
                bad.push(format!("midpoint of ({l}) and ({m}) has r0 {:?}", res.value));
            }
        }
        // Tables plus everything the other checks computed so far.
        let mut audited = 0;
        for c in &ctx.tables()?.certificate_sizes {
            audited += 1;
            if let Some(v) = c.value {
                if c.certificate_len.is_none_or(|n| n < v) {
                    bad.push(format!("{} {} ({}): certificate {:?} < {v}", c.invariant, c.system, c.weight, c.certificate_len));
                }
            }
        }
        for (s, w, v, len) in ctx.audit.lock().expect("audit lock").iter() {
            audited += 1;
            if let Some(v) = v {
                if len.is_none_or(|n| n < *v) {
                    bad.push(format!("{s} ({w}): certificate {len:?} < {v}"));
                }
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { format!("20 scalings, 20 midpoints, {audited} certificates audited") } else { bad.join("; ") }))
    })())
}

pub const CRITERIA: [fn(&SuiteContext) -> Outcome; 12] =
    [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12];

/// Runs every criterion in order; the audit in the last one covers the rest.
pub fn run_suite(ctx: &SuiteContext) -> Vec<Outcome> {
    CRITERIA.iter().map(|c| c(ctx)).collect()
}
