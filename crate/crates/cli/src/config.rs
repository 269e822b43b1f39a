use anyhow::{bail, Context, Result};
use orbitope::invariants::R0Options;
use orbitope::{RootSystem, Weight};

/// Largest grid a scan will enumerate unless raised.
pub const DEFAULT_GRID_CAP: usize = 4096;
pub const DEFAULT_D_MAX: usize = 8;
pub const DEFAULT_Q_MAX: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

/// Validated settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub r_max: Option<usize>,
    pub d_max: usize,
    pub q_set: Option<Vec<u32>>,
    pub threads: Option<usize>,
    pub cache: Option<std::path::PathBuf>,
    pub format: Format,
    pub grid_cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { r_max: None, d_max: DEFAULT_D_MAX, q_set: None, threads: None, cache: None, format: Format::Table, grid_cap: DEFAULT_GRID_CAP }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.r_max == Some(0) {
            bail!("--rmax must be at least 1");
        }
        if self.d_max == 0 {
            bail!("--dmax must be at least 1");
        }
        if let Some(qs) = &self.q_set {
            if qs.is_empty() || qs.contains(&0) {
                bail!("--qset must list positive integers, e.g. 1,2");
            }
        }
        if self.threads == Some(0) {
            bail!("--threads must be at least 1");
        }
        if self.grid_cap == 0 {
            bail!("--grid-cap must be at least 1");
        }
        Ok(())
    }

    pub fn r0_options(&self) -> R0Options {
        R0Options { r_max: self.r_max, q_set: self.q_set.clone(), ..Default::default() }
    }

    /// Option fields that change results, in canonical text form.
    pub fn fingerprint(&self) -> String {
        let qs = self.q_set.as_ref().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        format!("rmax={};qset={}", self.r_max.map_or("-".into(), |r| r.to_string()), qs.unwrap_or_else(|| "-".into()))
    }
}

pub fn parse_q_set(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>().with_context(|| format!("bad --qset entry '{t}', expected positive integers like 1,2")))
        .collect()
}

pub fn parse_system(s: &str) -> Result<RootSystem> {
    s.parse().with_context(|| format!("bad root system '{s}', expected a series letter and rank such as A3 or D5"))
}

/// Parses a weight and checks it against the system before any work starts.
pub fn parse_weight(rs: &RootSystem, s: &str) -> Result<Weight> {
    let w: Weight = s.parse().with_context(|| format!("bad weight '{s}', expected comma-separated rationals such as 1,0,3/2"))?;
    if w.rank() != rs.rank() {
        bail!("weight '{s}' has {} coordinates but {} has rank {}", w.rank(), rs.label(), rs.rank());
    }
    if !w.is_dominant() {
        bail!("weight '{s}' is not dominant: every fundamental coordinate must be ≥ 0");
    }
    Ok(w)
}

pub fn integral_weight(rs: &RootSystem, s: &str) -> Result<Weight> {
    let w = parse_weight(rs, s)?;
    if !w.is_integral() {
        bail!("weight '{s}' must be integral for this command");
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        let rs = parse_system("A2").unwrap();
        assert!(parse_system("Q3").is_err());
        assert!(parse_weight(&rs, "1,0,0").is_err());
        assert!(parse_weight(&rs, "-1,0").is_err());
        assert!(parse_weight(&rs, "1/2,0").is_ok());
        assert!(integral_weight(&rs, "1/2,0").is_err());
        assert!(parse_q_set("1,x").is_err());
        assert_eq!(parse_q_set("1, 2").unwrap(), vec![1, 2]);
        let bad = RunConfig { q_set: Some(vec![0]), ..Default::default() };
        assert!(bad.validate().is_err());
        assert!(RunConfig::default().validate().is_ok());
    }

    #[test]
    fn fingerprint_tracks_overrides() {
        let a = RunConfig::default();
        let b = RunConfig { q_set: Some(vec![1]), ..Default::default() };
        let c = RunConfig { format: Format::Json, ..Default::default() };
        assert_ne!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.fingerprint(), c.fingerprint());
    }
}
