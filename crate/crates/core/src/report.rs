//! Versioned JSON run reports with sorted keys and an input digest.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::builders::Workbench;
use crate::error::{Error, Result};
use crate::verify::SuiteResult;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AlgebraMeta {
    pub label: String,
    pub p: u32,
    pub k: u32,
    pub q: u32,
    /// Matrix size of the realisation, when there is one.
    pub n: Option<usize>,
    pub dims: Vec<usize>,
    pub total_dim: usize,
    pub group_order: usize,
}

impl AlgebraMeta {
    pub fn of(w: &Workbench) -> Self {
        let f = w.algebra.field();
        AlgebraMeta {
            label: w.algebra.label().to_string(),
            p: f.p(),
            k: f.k(),
            q: f.q(),
            n: w.algebra.realisation().map(|r| r.size()),
            dims: w.algebra.dims().to_vec(),
            total_dim: w.algebra.total_dim(),
            group_order: w.group.order(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteStatus {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub algebra: AlgebraMeta,
    pub result: Value,
    pub suites: Vec<SuiteStatus>,
    /// Wall-clock seconds per phase. Left out of the JSON unless set, so
    /// that reports stay bit-identical between runs.
    pub timings: Option<BTreeMap<String, f64>>,
}

/// SHA-256 over the canonical JSON of the algebra, the group generators and
/// the command arguments.
pub fn input_digest(w: &Workbench, args: &Value) -> Result<String> {
    let canonical = json!({
        "algebra": serde_json::to_value(w.algebra.to_file())?,
        "group": serde_json::to_value(w.group.to_file())?,
        "args": args,
    });
    Ok(hex::encode(Sha256::digest(serde_json::to_string(&canonical)?.as_bytes())))
}

impl RunReport {
    pub fn new(command: &str, w: &Workbench, args: &Value, result: Value) -> Result<Self> {
        Ok(RunReport {
            command: command.to_string(),
            input_digest: input_digest(w, args)?,
            algebra: AlgebraMeta::of(w),
            result,
            suites: Vec::new(),
            timings: None,
        })
    }

    pub fn from_suites(command: &str, w: &Workbench, args: &Value, results: &[SuiteResult]) -> Result<Self> {
        let mut r = RunReport::new(command, w, args, serde_json::to_value(results)?)?;
        r.suites = results.iter().map(|s| SuiteStatus { name: s.suite.name().to_string(), passed: s.passed }).collect();
        Ok(r)
    }

    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn to_value(&self) -> Result<Value> {
        let mut v = json!({
            "reportVersion": REPORT_VERSION,
            "command": self.command,
            "inputDigest": self.input_digest,
            "algebra": serde_json::to_value(&self.algebra)?,
            "result": self.result,
            "suites": serde_json::to_value(&self.suites)?,
        });
        if let Some(t) = &self.timings {
            v["timings"] = serde_json::to_value(t)?;
        }
        Ok(v)
    }

    /// Pretty JSON; object keys come out sorted.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_value()?)?)
    }
}

/// Runs `f` on a dedicated pool of `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Usage(format!("cannot start thread pool: {e}")))?;
    Ok(pool.install(f))
}
