use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use orbitope_cli::config::{parse_q_set, DEFAULT_D_MAX, DEFAULT_GRID_CAP, DEFAULT_Q_MAX};
use orbitope_cli::{Engine, Format, Report, RunConfig, Which};

#[derive(Parser)]
#[command(name = "orbitope", version, about = "Partial convex hulls of coadjoint orbits: r0, r, d1 and b1")]
struct Cli {
    /// Print the JSON report instead of a table.
    #[arg(long, global = true, env = "ORBITOPE_JSON")]
    json: bool,
    /// Largest r searched (default ℓ+1).
    #[arg(long, global = true, env = "ORBITOPE_RMAX")]
    rmax: Option<usize>,
    /// Largest symmetric-power degree for d1 and b1.
    #[arg(long, global = true, env = "ORBITOPE_DMAX", default_value_t = DEFAULT_D_MAX)]
    dmax: usize,
    /// Scalings tried in the tensor test, e.g. 1,2.
    #[arg(long, global = true, env = "ORBITOPE_QSET")]
    qset: Option<String>,
    #[arg(long, global = true, env = "ORBITOPE_THREADS")]
    threads: Option<usize>,
    /// JSON-lines result journal.
    #[arg(long, global = true, env = "ORBITOPE_CACHE")]
    cache: Option<PathBuf>,
    /// Largest number of grid points a scan may visit.
    #[arg(long, global = true, env = "ORBITOPE_GRID_CAP", default_value_t = DEFAULT_GRID_CAP)]
    grid_cap: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Least r with 0 in the hull of r points of the orbit.
    R0 { system: String, weight: String },
    /// Least r with the r-point partial hull convex.
    R { system: String, weight: String },
    /// Lowest degree of an invariant polynomial on V_λ.
    D1 { system: String, weight: String },
    /// Least d1(qλ) over q ≤ qmax.
    B1 {
        system: String,
        weight: String,
        #[arg(long, env = "ORBITOPE_QMAX", default_value_t = DEFAULT_Q_MAX)]
        qmax: u32,
    },
    /// Every dominant integral weight with coordinates ≤ max_coeff.
    Scan { system: String, max_coeff: u32, which: Which },
    /// Reference tables and the acceptance checks, as a pass/fail matrix.
    VerifyPaper {
        /// Only the tables of one family: su, spin or r.
        #[arg(long)]
        table_only: Option<String>,
    },
}

fn run(cli: Cli) -> Result<Report> {
    let cfg = RunConfig {
        r_max: cli.rmax,
        d_max: cli.dmax,
        q_set: cli.qset.as_deref().map(parse_q_set).transpose()?,
        threads: cli.threads,
        cache: cli.cache,
        format: if cli.json { Format::Json } else { Format::Table },
        grid_cap: cli.grid_cap,
    };
    let engine = Engine::new(cfg)?;
    let dispatch = || match cli.cmd {
        Cmd::R0 { system, weight } => engine.r0(&system, &weight),
        Cmd::R { system, weight } => engine.r(&system, &weight),
        Cmd::D1 { system, weight } => engine.d1(&system, &weight),
        Cmd::B1 { system, weight, qmax } => engine.b1(&system, &weight, qmax),
        Cmd::Scan { system, max_coeff, which } => engine.scan(&system, max_coeff, which),
        Cmd::VerifyPaper { table_only } => engine.verify_paper(table_only.as_deref()),
    };
    match engine.cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build()?.install(dispatch),
        None => dispatch(),
    }
}

/// Exit code, standard output and standard error for one invocation.
fn execute<I, T>(args: I) -> (u8, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if e.use_stderr() => return (1, String::new(), e.render().to_string()),
        Err(e) => return (0, e.render().to_string(), String::new()),
    };
    let json = cli.json;
    match run(cli) {
        Ok(rep) => {
            let text = if json { rep.to_json() + "\n" } else { rep.to_table() };
            (rep.exit_code() as u8, text, String::new())
        }
        Err(e) => (1, String::new(), format!("error: {e:#}\n")),
    }
}

fn main() -> ExitCode {
    let (code, out, err) = execute(std::env::args_os());
    // A closed pipe is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    let _ = std::io::stderr().lock().write_all(err.as_bytes());
    ExitCode::from(code)
}

#[cfg(test)]
mod tests {
    use std::sync::Mutex;

    use serde_json::Value;

    use super::*;

    /// Serializes tests that touch ORBITOPE_* variables.
    static ENV: Mutex<()> = Mutex::new(());

    fn orbitope(args: &[&str]) -> (u8, String, String) {
        execute(std::iter::once("orbitope").chain(args.iter().copied()))
    }

    fn schema() -> Value {
        serde_json::from_str(include_str!("../../../docs/report-schema.json")).unwrap()
    }

    /// Checks the top-level shape and the enumerated fields against the schema.
    fn conforms(report: &Value, schema: &Value) {
        let props = schema["properties"].as_object().unwrap();
        let obj = report.as_object().unwrap();
        for k in schema["required"].as_array().unwrap() {
            assert!(obj.contains_key(k.as_str().unwrap()), "missing {k}");
        }
        assert!(obj.keys().all(|k| props.contains_key(k)));
        assert!(props["status"]["enum"].as_array().unwrap().contains(&report["status"]));
        let input = &props["input"]["properties"];
        assert!(input["operation"]["enum"].as_array().unwrap().contains(&report["input"]["operation"]));
        assert!(report["input"].as_object().unwrap().keys().all(|k| input.get(k).is_some()));
        let steps = props["transcript"]["items"]["properties"]["step"]["enum"].as_array().unwrap();
        for t in report["transcript"].as_array().unwrap() {
            assert!(steps.contains(&t["step"]), "{t}");
        }
        assert!(matches!(report["value"], Value::Null | Value::Number(_) | Value::Array(_)));
    }

    #[test]
    fn exit_codes_follow_the_convention() {
        let _g = ENV.lock().unwrap();
        let (code, out, _) = orbitope(&["r0", "A4", "1,0,0,0"]);
        assert_eq!(code, 0);
        assert!(out.lines().any(|l| l.split_whitespace().eq(["value", "5"])));
        assert_eq!(orbitope(&["--qset", "1", "r0", "D5", "0,0,0,0,1"]).0, 2);
        let (code, _, err) = orbitope(&["r0", "A2", "1,0,0"]);
        assert_eq!(code, 1);
        assert!(err.contains("rank 2"));
        assert_eq!(orbitope(&["d1", "A1", "1"]).0, 2);
        assert_eq!(orbitope(&["--qset", "0", "r0", "A1", "1"]).0, 1);
        assert_eq!(orbitope(&["frobnicate"]).0, 1);
        assert_eq!(orbitope(&["--threads", "2", "r", "A3", "0,1,0"]).0, 0);
    }

    #[test]
    fn json_reports_match_the_schema() {
        let _g = ENV.lock().unwrap();
        let s = schema();
        for args in [
            vec!["r0", "A3", "1,0,0"],
            vec!["r", "D5", "0,0,0,0,1"],
            vec!["r0", "B2", "1/2,1"],
            vec!["d1", "A2", "3,0"],
            vec!["b1", "A1", "1"],
            vec!["scan", "A2", "1", "r0"],
            vec!["verify-paper", "--table-only", "spin"],
        ] {
            let (code, out, _) = orbitope(&[&["--json"], args.as_slice()].concat());
            assert_eq!(code, 0, "{args:?}");
            let v: Value = serde_json::from_str(&out).unwrap();
            conforms(&v, &s);
            let back: Report = serde_json::from_value(v.clone()).unwrap();
            assert_eq!(serde_json::to_value(&back).unwrap(), v);
        }
    }

    #[test]
    fn environment_overrides_flags() {
        let _g = ENV.lock().unwrap();
        std::env::set_var("ORBITOPE_QSET", "1");
        std::env::set_var("ORBITOPE_JSON", "true");
        let (code, out, _) = orbitope(&["r0", "D5", "0,0,0,0,1"]);
        std::env::remove_var("ORBITOPE_QSET");
        std::env::remove_var("ORBITOPE_JSON");
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["input"]["q_set"], serde_json::json!([1]));
        assert_eq!(v["status"], "upper-bound-only");
    }

    #[test]
    fn warm_cache_reruns_are_byte_identical() {
        let _g = ENV.lock().unwrap();
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("journal.jsonl");
        let cache = cache.to_str().unwrap();
        for args in [vec!["scan", "A3", "1", "r"], vec!["--json", "r0", "A5", "0,0,1,0,0"], vec!["d1", "A2", "2,0"]] {
            let full = [&["--cache", cache], args.as_slice()].concat();
            let cold = orbitope(&full);
            let lines = std::fs::read_to_string(cache).unwrap().lines().count();
            let warm = orbitope(&full);
            assert_eq!(cold, warm, "{args:?}");
            assert_eq!(std::fs::read_to_string(cache).unwrap().lines().count(), lines, "warm run appended records");
        }
    }

    #[test]
    fn scan_grid_cap_is_enforced() {
        let _g = ENV.lock().unwrap();
        let (code, _, err) = orbitope(&["--grid-cap", "10", "scan", "A3", "2", "r0"]);
        assert_eq!(code, 1);
        assert!(err.contains("cap of 10"));
    }
}
