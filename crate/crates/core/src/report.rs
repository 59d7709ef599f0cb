//! Report envelopes and trajectory CSV.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::dynamics::Trajectory;
use crate::symmetry::check::CheckOptions;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Process exit code: 0 for pass, 2 for a failed check.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 2,
        }
    }
}

/// Result of one command: a JSON report plus an optional CSV artifact.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub report: Value,
    pub csv: Option<String>,
}

impl Outcome {
    pub fn new(command: &str, model: &str, opts: &CheckOptions, status: Status, body: Value) -> Self {
        let mut map = Map::new();
        map.insert("schema".into(), json!(SCHEMA_VERSION));
        map.insert("command".into(), json!(command));
        map.insert("model".into(), json!(model));
        map.insert("seed".into(), json!(opts.seed));
        map.insert("points".into(), json!(opts.points));
        map.insert("tolerances".into(), json!(opts.tol));
        map.insert("box".into(), json!(opts.bx));
        map.insert("status".into(), json!(status));
        if let Value::Object(extra) = body {
            map.extend(extra);
        }
        Self { status, report: Value::Object(map), csv: None }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// CSV with header `t,x1..xn,v1..vn,charge_*`.
pub fn trajectory_csv(traj: &Trajectory, charges: &[(String, Vec<f64>)]) -> String {
    let n = traj.n;
    let mut header = vec!["t".to_string()];
    header.extend((1..=n).map(|i| format!("x{i}")));
    header.extend((1..=n).map(|i| format!("v{i}")));
    header.extend(charges.iter().map(|(label, _)| format!("charge_{label}")));
    let mut out = header.join(",");
    out.push('\n');
    for (k, p) in traj.samples.iter().enumerate() {
        let row: Vec<String> =
            p.iter().copied().chain(charges.iter().map(|(_, c)| c[k])).map(|x| format!("{x:e}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
