use std::fmt::Write as _;

use orbitope::invariants::{BoundResult, Status};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// What was asked. Absent fields do not apply to the operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Input {
    pub operation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_set: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_coeff: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub which: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_only: Option<String>,
}

impl Input {
    pub fn new(operation: &str) -> Self {
        Input { operation: operation.to_string(), system: None, weight: None, r_max: None, q_set: None, d_max: None, q_max: None, max_coeff: None, which: None, table_only: None }
    }
}

/// Report status: a [`Status`] name, or "unknown" when no value is certified.
pub const UNKNOWN: &str = "unknown";
pub const FAILED: &str = "failed";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: Input,
    pub value: Value,
    pub status: String,
    pub certificates: Value,
    pub transcript: Vec<Value>,
}

pub fn status_name(s: Status) -> String {
    s.to_string()
}

impl Report {
    pub fn from_bound(input: Input, res: &BoundResult) -> Self {
        let status = if res.value.is_some() { status_name(res.status) } else { UNKNOWN.to_string() };
        let certificates = json!({
            "lower_bound": res.lower_bound,
            "weyl_bound": res.weyl_bound,
            "unknown_above": res.unknown_above,
            "weyl": res.weyl_certificate,
            "tensor": res.tensor_certificate,
            "lr": res.lr_certificate,
            "subsystem": res.subsystem,
        });
        let transcript = res.transcript.iter().map(|t| serde_json::to_value(t).expect("transcript serializes")).collect();
        Report { input, value: json!(res.value), status, certificates, transcript }
    }

    /// 0 when settled, 2 for unknown or upper-bound-only, 1 for a failed check.
    pub fn exit_code(&self) -> i32 {
        match self.status.as_str() {
            FAILED => 1,
            UNKNOWN => 2,
            s if s == status_name(Status::UpperBoundOnly) => 2,
            _ => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let i = &self.input;
        let mut kv: Vec<(&str, String)> = vec![("operation", i.operation.clone())];
        let opt = |x: &Option<String>| x.clone();
        for (k, v) in [
            ("system", opt(&i.system)),
            ("weight", opt(&i.weight)),
            ("r_max", i.r_max.map(|x| x.to_string())),
            ("q_set", i.q_set.as_ref().map(|q| q.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))),
            ("d_max", i.d_max.map(|x| x.to_string())),
            ("q_max", i.q_max.map(|x| x.to_string())),
            ("max_coeff", i.max_coeff.map(|x| x.to_string())),
            ("which", opt(&i.which)),
            ("table_only", opt(&i.table_only)),
        ] {
            if let Some(v) = v {
                kv.push((k, v));
            }
        }
        if let Value::Array(rows) = &self.value {
            kv.push(("status", self.status.clone()));
            let width = kv.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in &kv {
                let _ = writeln!(out, "{k:<width$}  {v}");
            }
            out.push('\n');
            out.push_str(&rows_table(rows));
            return out;
        }
        kv.push(("value", show(&self.value)));
        kv.push(("status", self.status.clone()));
        if let Value::Object(m) = &self.certificates {
            for (k, v) in m {
                if v.is_null() {
                    continue;
                }
                let text = match v {
                    Value::Array(a) if k == "weyl" => format!("{} points: {}", a.len(), a.iter().map(|e| format!("{}·({})", show(&e["coefficient"]), show(&e["weight"]))).collect::<Vec<_>>().join(" + ")),
                    _ => show(v),
                };
                kv.push((k.as_str(), text));
            }
        }
        let width = kv.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &kv {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        if !self.transcript.is_empty() {
            let _ = writeln!(out, "transcript");
            for t in &self.transcript {
                let _ = writeln!(out, "  {}", show(t));
            }
        }
        out
    }
}

fn show(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        _ => v.to_string(),
    }
}

/// Renders an array of flat objects as aligned columns, keeping key order.
fn rows_table(rows: &[Value]) -> String {
    let Some(Value::Object(first)) = rows.first() else {
        return "(no rows)\n".into();
    };
    let cols: Vec<&String> = first.keys().collect();
    let cells: Vec<Vec<String>> = rows.iter().map(|r| cols.iter().map(|c| show(&r[c.as_str()])).collect()).collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |vals: Vec<&str>| {
        let mut s = vals.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect::<Vec<_>>().join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(cols.iter().map(|c| c.as_str()).collect());
    for r in &cells {
        out.push_str(&line(r.iter().map(|s| s.as_str()).collect()));
    }
    out
}
