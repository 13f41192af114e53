//! State files, the three-strategy comparison and its renderings.
//!
//! A state file is a JSON array of records whose entries are decimal strings
//! (plain JSON numbers are accepted too):
//!
//! ```text
//! [{"name":"rho1","a":"0.027180","b":"0.000224","c":"0.027327","d":"0.945269","eps":"0.141651","delta":"0"}]
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::discord::{ali_candidate, discord_given_conditional_entropy};
use crate::entropy::LogBase;
use crate::error::{DiscordError, Result};
use crate::optimizer::{minimize_povm3, minimize_projective, SearchConfig};
use crate::qstate::XState;

/// The three benchmark states, bundled.
pub const BENCHMARKS_JSON: &str = include_str!("../data/benchmarks.json");

pub const CSV_HEADER: [&str; 14] = [
    "name",
    "delta3_min",
    "delta2_min",
    "delta2",
    "diff3",
    "diff2",
    "mu1",
    "mu2",
    "mu3",
    "psi",
    "theta",
    "phi",
    "base",
    "seed",
];

#[derive(Debug, Clone, PartialEq)]
pub struct NamedState {
    pub name: String,
    pub state: XState<f64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Decimal {
    Text(String),
    Number(f64),
}

impl Decimal {
    fn value(&self, field: &str) -> std::result::Result<f64, String> {
        match self {
            Decimal::Number(x) => Ok(*x),
            Decimal::Text(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|e| format!("field `{field}`: `{s}` is not a decimal number ({e})")),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateRecord {
    name: String,
    a: Decimal,
    b: Decimal,
    c: Decimal,
    d: Decimal,
    eps: Decimal,
    delta: Decimal,
}

fn record_error(name: &str, source: DiscordError) -> DiscordError {
    DiscordError::Record {
        name: name.to_string(),
        source: Box::new(source),
    }
}

/// Parses and validates a state file, preserving record order.
pub fn parse_state_file(text: &str) -> Result<Vec<NamedState>> {
    let records: Vec<StateRecord> =
        serde_json::from_str(text).map_err(|e| DiscordError::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(records.len());
    for r in records {
        if !seen.insert(r.name.clone()) {
            return Err(record_error(
                &r.name,
                DiscordError::Domain("duplicate record name".into()),
            ));
        }
        let fields = [
            ("a", &r.a),
            ("b", &r.b),
            ("c", &r.c),
            ("d", &r.d),
            ("eps", &r.eps),
            ("delta", &r.delta),
        ];
        let mut v = [0.0; 6];
        for (slot, (field, dec)) in v.iter_mut().zip(fields) {
            *slot = dec
                .value(field)
                .map_err(|msg| record_error(&r.name, DiscordError::Domain(msg)))?;
        }
        let state = XState::from_entries(v[0], v[1], v[2], v[3], v[4], v[5])
            .map_err(|e| record_error(&r.name, e))?;
        out.push(NamedState {
            name: r.name,
            state,
        });
    }
    Ok(out)
}

pub fn benchmark_states() -> Vec<NamedState> {
    parse_state_file(BENCHMARKS_JSON).expect("bundled benchmarks are valid")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub name: String,
    pub delta3_min: f64,
    pub delta2_min: f64,
    pub delta2: f64,
    /// δ₃,min − δ₂
    pub diff3: f64,
    /// δ₂,min − δ₂
    pub diff2: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub mu3: f64,
    pub psi: f64,
    pub theta: f64,
    pub phi: f64,
    /// Unit vector of the optimal projective measurement.
    pub direction: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscordReport {
    pub base: LogBase,
    pub config: SearchConfig,
    pub rows: Vec<ReportRow>,
}

fn compute_row(named: &NamedState, cfg: &SearchConfig, base: LogBase) -> Result<ReportRow> {
    let s = &named.state;
    let delta2 = ali_candidate(s, base).value;

    let proj = minimize_projective(s, cfg, base)?;
    let delta2_min =
        discord_given_conditional_entropy(s, proj.best_value, proj.witness, base).value;

    let povm = minimize_povm3(s, cfg, base)?;
    let delta3_min =
        discord_given_conditional_entropy(s, povm.best_value, povm.witness, base).value;

    let mu = povm.best_weights().expect("POVM witness").mu();
    let euler = povm.best_euler().expect("POVM witness");
    Ok(ReportRow {
        name: named.name.clone(),
        delta3_min,
        delta2_min,
        delta2,
        diff3: delta3_min - delta2,
        diff2: delta2_min - delta2,
        mu1: mu[0],
        mu2: mu[1],
        mu3: mu[2],
        psi: euler.psi(),
        theta: euler.theta(),
        phi: euler.phi(),
        direction: proj.best_direction().expect("projective witness"),
    })
}

/// Computes δ₃,min, δ₂,min and δ₂ for every state, concurrently, in input order.
pub fn run_report(
    states: &[NamedState],
    cfg: &SearchConfig,
    base: LogBase,
) -> Result<DiscordReport> {
    cfg.validate()?;
    let rows = states
        .par_iter()
        .map(|s| compute_row(s, cfg, base).map_err(|e| record_error(&s.name, e)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DiscordReport {
        base,
        config: *cfg,
        rows,
    })
}

impl DiscordReport {
    fn header_line(&self) -> String {
        let c = &self.config;
        format!(
            "# base={} seed={} samples={} refine_starts={} refine_iters={} refine_tol={:e} angle_grid={}",
            self.base,
            c.seed,
            c.n_global_samples,
            c.n_refine_starts,
            c.n_refine_iters,
            c.refine_tol,
            c.angle_grid
        )
    }

    /// Fixed-width text: discord values, then differences and witness weights.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.header_line());
        let _ = writeln!(
            out,
            "{:<10} {:>12} {:>12} {:>12}",
            "state", "delta3_min", "delta2_min", "delta2"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<10} {:>12.6} {:>12.6} {:>12.6}",
                r.name, r.delta3_min, r.delta2_min, r.delta2
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<10} {:>14} {:>14}   {:>8} {:>8} {:>8}",
            "state", "diff3", "diff2", "mu1", "mu2", "mu3"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<10} {:>14.4e} {:>14.4e}   {:>8.4} {:>8.4} {:>8.4}",
                r.name, r.diff3, r.diff2, r.mu1, r.mu2, r.mu3
            );
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| DiscordError::Output(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| DiscordError::Parse {
            line: e.line(),
            msg: e.to_string(),
        })
    }

    pub fn to_csv(&self) -> Result<String> {
        let err = |e: csv::Error| DiscordError::Output(e.to_string());
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).map_err(err)?;
        for r in &self.rows {
            let nums = [
                r.delta3_min,
                r.delta2_min,
                r.delta2,
                r.diff3,
                r.diff2,
                r.mu1,
                r.mu2,
                r.mu3,
                r.psi,
                r.theta,
                r.phi,
            ];
            let mut rec = vec![r.name.clone()];
            rec.extend(nums.iter().map(|x| x.to_string()));
            rec.push(self.base.to_string());
            rec.push(self.config.seed.to_string());
            w.write_record(&rec).map_err(err)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| DiscordError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| DiscordError::Output(e.to_string()))
    }
}
