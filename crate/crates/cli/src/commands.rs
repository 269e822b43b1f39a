use anyhow::{bail, Result};
use orbitope::charalg::DEFAULT_CHARACTER_CAP;
use orbitope::invariants::{b1, invariant_degrees_until_first, r0, r_invariant, verify_reference_tables, Family, Status, TableOptions};
use orbitope::{RootSystem, Weight};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cache::{Cache, ResultRecord};
use crate::config::{integral_weight, parse_system, parse_weight, RunConfig};
use crate::report::{status_name, Input, Report, FAILED, UNKNOWN};
use crate::suite::{run_suite, SuiteContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    R0,
    R,
    D1,
}

impl std::str::FromStr for Which {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r0" => Ok(Which::R0),
            "r" => Ok(Which::R),
            "d1" => Ok(Which::D1),
            _ => bail!("unknown scan target '{s}', expected r0, r or d1"),
        }
    }
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::R0 => "r0",
            Which::R => "r",
            Which::D1 => "d1",
        }
    }
}

/// Runs commands against one configuration and an optional cache.
pub struct Engine {
    pub cfg: RunConfig,
    cache: Option<Cache>,
}

impl Engine {
    pub fn new(cfg: RunConfig) -> Result<Engine> {
        cfg.validate()?;
        let cache = cfg.cache.as_deref().map(Cache::open).transpose()?;
        Ok(Engine { cfg, cache })
    }

    pub fn cache(&self) -> Option<&Cache> {
        self.cache.as_ref()
    }

    fn cached(&self, key: String, operation: &str, compute: impl FnOnce() -> Result<Report>) -> Result<Report> {
        if let Some(v) = self.cache.as_ref().and_then(|c| c.get(&key)) {
            if let Ok(r) = serde_json::from_value::<Report>(v) {
                return Ok(r);
            }
        }
        let rep = compute()?;
        if let Some(c) = &self.cache {
            c.put(ResultRecord::new(key, operation, serde_json::to_value(&rep)?))?;
        }
        Ok(rep)
    }

    fn input(&self, op: &str, rs: &RootSystem, w: &Weight) -> Input {
        let mut i = Input::new(op);
        i.system = Some(rs.label());
        i.weight = Some(w.to_string());
        i
    }

    pub fn r0(&self, system: &str, weight: &str) -> Result<Report> {
        let rs = parse_system(system)?;
        let w = parse_weight(&rs, weight)?;
        self.r0_at(&rs, &w)
    }

    fn r0_at(&self, rs: &RootSystem, w: &Weight) -> Result<Report> {
        let key = format!("r0|{}|{}|{}", rs.label(), w, self.cfg.fingerprint());
        self.cached(key, "r0", || {
            let res = r0(rs, w, &self.cfg.r0_options())?;
            let mut i = self.input("r0", rs, w);
            i.r_max = self.cfg.r_max;
            i.q_set = self.cfg.q_set.clone();
            Ok(Report::from_bound(i, &res))
        })
    }

    pub fn r(&self, system: &str, weight: &str) -> Result<Report> {
        let rs = parse_system(system)?;
        let w = parse_weight(&rs, weight)?;
        self.r_at(&rs, &w)
    }

    fn r_at(&self, rs: &RootSystem, w: &Weight) -> Result<Report> {
        let key = format!("r|{}|{}|{}", rs.label(), w, self.cfg.fingerprint());
        self.cached(key, "r", || {
            let res = r_invariant(rs, w, &self.cfg.r0_options())?;
            let mut i = self.input("r", rs, w);
            i.r_max = self.cfg.r_max;
            i.q_set = self.cfg.q_set.clone();
            Ok(Report::from_bound(i, &res))
        })
    }

    pub fn d1(&self, system: &str, weight: &str) -> Result<Report> {
        let rs = parse_system(system)?;
        let w = integral_weight(&rs, weight)?;
        self.d1_at(&rs, &w)
    }

    fn d1_at(&self, rs: &RootSystem, w: &Weight) -> Result<Report> {
        let d_max = self.cfg.d_max;
        let key = format!("d1|{}|{}|dmax={d_max}", rs.label(), w);
        self.cached(key, "d1", || {
            let dims = invariant_degrees_until_first(rs, w, d_max, DEFAULT_CHARACTER_CAP)?;
            let value = dims.iter().position(|&m| m > 0).map(|i| i + 1);
            let mut i = self.input("d1", rs, w);
            i.d_max = Some(d_max);
            let transcript = dims.iter().enumerate().map(|(k, m)| json!({"step": "degree", "d": k + 1, "invariants": m})).collect();
            Ok(Report {
                input: i,
                value: json!(value),
                status: if value.is_some() { status_name(Status::Exact) } else { UNKNOWN.into() },
                certificates: json!({ "invariant_dimension": value.map(|d| dims[d - 1]) }),
                transcript,
            })
        })
    }

    pub fn b1(&self, system: &str, weight: &str, q_max: u32) -> Result<Report> {
        let rs = parse_system(system)?;
        let w = integral_weight(&rs, weight)?;
        if w.is_zero() {
            bail!("b1 needs a nonzero weight");
        }
        if q_max == 0 {
            bail!("--qmax must be at least 1");
        }
        let d_max = self.cfg.d_max;
        let key = format!("b1|{}|{}|dmax={d_max};qmax={q_max}", rs.label(), w);
        self.cached(key, "b1", || {
            let b = b1(&rs, &w, d_max, q_max, DEFAULT_CHARACTER_CAP)?;
            let mut i = self.input("b1", &rs, &w);
            i.d_max = Some(d_max);
            i.q_max = Some(q_max);
            Ok(Report {
                input: i,
                value: json!(b.value),
                status: if b.value.is_some() { status_name(Status::Exact) } else { UNKNOWN.into() },
                certificates: json!({ "q": b.q }),
                transcript: vec![],
            })
        })
    }

    /// Every dominant integral weight with coordinates ≤ max_coeff, first
    /// coordinate varying fastest.
    pub fn scan(&self, system: &str, max_coeff: u32, which: Which) -> Result<Report> {
        let rs = parse_system(system)?;
        let l = rs.rank();
        let side = max_coeff as usize + 1;
        let size = (0..l).try_fold(1usize, |acc, _| acc.checked_mul(side)).filter(|&n| n <= self.cfg.grid_cap);
        let Some(size) = size else {
            bail!("scan grid ({side}^{l} points) exceeds the cap of {}; lower max_coeff or raise --grid-cap", self.cfg.grid_cap);
        };
        let grid: Vec<Weight> = (0..size)
            .map(|mut n| {
                let c: Vec<i64> = (0..l)
                    .map(|_| {
                        let d = (n % side) as i64;
                        n /= side;
                        d
                    })
                    .collect();
                Weight::from_ints(&c)
            })
            .collect();
        let reports: Vec<Report> = grid
            .par_iter()
            .map(|w| match which {
                Which::R0 => self.r0_at(&rs, w),
                Which::R => self.r_at(&rs, w),
                Which::D1 => self.d1_at(&rs, w),
            })
            .collect::<Result<_>>()?;
        let rows: Vec<Value> = grid.iter().zip(&reports).map(|(w, r)| json!({"weight": w.to_string(), "value": r.value, "status": r.status})).collect();
        let weakness = |s: &str| [status_name(Status::Exact), status_name(Status::ExactAssumingSaturationFactor), status_name(Status::UpperBoundOnly)].iter().position(|x| x == s).unwrap_or(3);
        let status = reports.iter().map(|r| r.status.clone()).max_by_key(|s| weakness(s)).unwrap_or_else(|| status_name(Status::Exact));
        let mut i = Input::new("scan");
        i.system = Some(rs.label());
        i.max_coeff = Some(max_coeff);
        i.which = Some(which.name().into());
        match which {
            Which::D1 => i.d_max = Some(self.cfg.d_max),
            _ => {
                i.r_max = self.cfg.r_max;
                i.q_set = self.cfg.q_set.clone();
            }
        }
        Ok(Report { input: i, value: Value::Array(rows), status, certificates: json!({}), transcript: vec![] })
    }

    /// The reference tables for one family, or the full acceptance suite.
    pub fn verify_paper(&self, table_only: Option<&str>) -> Result<Report> {
        let mut i = Input::new("verify-paper");
        i.r_max = self.cfg.r_max;
        i.q_set = self.cfg.q_set.clone();
        if let Some(fam) = table_only {
            let family: Family = fam.parse()?;
            i.table_only = Some(fam.to_string());
            let opts = TableOptions { families: vec![family], r0: self.cfg.r0_options(), ..Default::default() };
            let rep = verify_reference_tables(&opts)?;
            let unsettled = rep.rows.iter().any(|r| r.computed.is_none() || r.status == Status::UpperBoundOnly);
            let settled_failure = rep.rows.iter().any(|r| !r.pass && r.computed.is_some() && r.status != Status::UpperBoundOnly)
                || rep.third_weight.as_ref().is_some_and(|t| t.ceiling_matches == t.case_formula_matches)
                || rep.spin_certificate == Some(false);
            let status = if settled_failure {
                FAILED.to_string()
            } else if unsettled {
                UNKNOWN.to_string()
            } else {
                status_name(Status::Exact)
            };
            let rows = rep
                .rows
                .iter()
                .map(|r| json!({"table": r.table, "system": r.system, "weight": r.weight, "expected": r.expected, "computed": r.computed, "status": r.status, "pass": r.pass}))
                .collect();
            return Ok(Report {
                input: i,
                value: Value::Array(rows),
                status,
                certificates: json!({"third_weight": rep.third_weight, "spin_certificate": rep.spin_certificate, "weyl_gaps": rep.weyl_gaps}),
                transcript: vec![],
            });
        }
        let ctx = SuiteContext::new(self.cfg.r0_options());
        let outcomes = run_suite(&ctx);
        let status = if outcomes.iter().all(|o| o.passed) { status_name(Status::Exact) } else { FAILED.to_string() };
        let rows = outcomes.iter().map(|o| json!({"criterion": o.id, "title": o.title, "pass": o.passed, "detail": o.detail})).collect();
        Ok(Report { input: i, value: Value::Array(rows), status, certificates: json!({}), transcript: vec![] })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Format;

    fn engine() -> Engine {
        Engine::new(RunConfig::default()).unwrap()
    }

    #[test]
    fn documented_examples() {
        let e = engine();
        let r = e.r0("A4", "1,0,0,0").unwrap();
        assert_eq!((r.value.clone(), r.status.as_str(), r.exit_code()), (json!(5), "exact", 0));
        assert_eq!(e.r("D5", "0,0,0,0,1").unwrap().value, json!(5));
        assert_eq!(e.r0("A2", "0,0").unwrap().value, json!(1));
        assert!(e.r0("A2", "1,0,0").is_err());
    }

    #[test]
    fn scans() {
        let e = engine();
        let s = e.scan("A2", 1, Which::R0).unwrap();
        let got: Vec<(String, Value)> = s.value.as_array().unwrap().iter().map(|r| (r["weight"].as_str().unwrap().to_string(), r["value"].clone())).collect();
        let want = [("0,0", 1), ("1,0", 3), ("0,1", 3), ("1,1", 2)].map(|(w, v)| (w.to_string(), json!(v)));
        assert_eq!(got, want);
        let b = e.scan("B2", 1, Which::R0).unwrap();
        assert!(b.value.as_array().unwrap().iter().skip(1).all(|r| r["value"] == json!(2)));
        let d = e.scan("A1", 2, Which::D1).unwrap();
        let vals: Vec<Value> = d.value.as_array().unwrap().iter().map(|r| r["value"].clone()).collect();
        assert_eq!(vals, vec![json!(1), Value::Null, json!(2)]);
        let small = Engine::new(RunConfig { grid_cap: 3, ..Default::default() }).unwrap();
        assert!(small.scan("A2", 1, Which::R0).is_err());
    }

    #[test]
    fn restricted_q_set_is_unknown_for_spin() {
        let e = Engine::new(RunConfig { q_set: Some(vec![1]), format: Format::Json, ..Default::default() }).unwrap();
        let r = e.r0("D5", "0,0,0,0,1").unwrap();
        assert_eq!(r.exit_code(), 2);
        let t = e.verify_paper(Some("spin")).unwrap();
        assert_eq!(t.exit_code(), 2);
    }

    #[test]
    fn warm_cache_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = RunConfig { cache: Some(dir.path().join("j.jsonl")), ..Default::default() };
        let cold = Engine::new(cfg.clone()).unwrap().scan("A2", 2, Which::R).unwrap();
        let warm_engine = Engine::new(cfg).unwrap();
        assert_eq!(warm_engine.cache().unwrap().len(), 9);
        let warm = warm_engine.scan("A2", 2, Which::R).unwrap();
        assert_eq!(cold.to_json(), warm.to_json());
        assert_eq!(cold.to_table(), warm.to_table());
    }

    #[test]
    fn reports_round_trip() {
        let e = engine();
        for rep in [e.r0("A3", "0,1,0").unwrap(), e.r("B3", "1,0,0").unwrap(), e.d1("A2", "3,0").unwrap(), e.b1("A1", "1", 3).unwrap()] {
            let back: Report = serde_json::from_str(&rep.to_json()).unwrap();
            assert_eq!(back, rep);
        }
    }
}
