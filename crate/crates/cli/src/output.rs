use std::fs;
use std::io::{self, Write};

use serde_json::{json, Value};

use weylop::oracle::suites::CheckReport;
use weylop::oracle::ErmakovSolution;
use weylop::solvers::RecurrenceTable;
use weylop::weyl::{NormalPoly, WeylOp};

use crate::{Cli, Format};

pub const SCHEMA_VERSION: u32 = 1;

/// CSV rows, header first.
pub type Rows = Vec<Vec<String>>;

pub struct Outcome {
    pub result: Value,
    pub rows: Option<Rows>,
    /// False when a verification step failed; the result is still written.
    pub passed: bool,
}

impl Outcome {
    pub fn weyl(op: &WeylOp) -> Self {
        let mut rows = vec![vec!["m".into(), "n".into(), "coeff".into()]];
        rows.extend(op.iter().map(|(k, c)| vec![k.m.to_string(), k.n.to_string(), c.to_string()]));
        Self { result: serde_json::to_value(op).expect("serializable"), rows: Some(rows), passed: true }
    }

    pub fn normal(poly: &NormalPoly) -> Self {
        let mut rows = vec![vec!["a".into(), "b".into(), "coeff".into()]];
        rows.extend(poly.iter().map(|(k, c)| vec![k.a.to_string(), k.b.to_string(), c.to_string()]));
        Self { result: serde_json::to_value(poly).expect("serializable"), rows: Some(rows), passed: true }
    }
}

pub fn table_rows(t: &RecurrenceTable) -> Rows {
    let width = t.entries.keys().map(Vec::len).max().unwrap_or(0);
    let mut head: Vec<String> = (0..width).map(|i| format!("i{i}")).collect();
    head.push("coeff".into());
    let mut rows = vec![head];
    for (k, v) in &t.entries {
        let mut row: Vec<String> = k.iter().map(i64::to_string).collect();
        row.push(v.to_string());
        rows.push(row);
    }
    rows
}

pub fn check_rows(checks: &[CheckReport]) -> Rows {
    let mut rows = vec![vec!["check".into(), "status".into(), "residual".into()]];
    for c in checks {
        let status = serde_json::to_value(c.status).expect("serializable");
        rows.push(vec![
            c.check.clone(),
            status.as_str().unwrap_or_default().to_string(),
            c.residual.map(|r| format!("{r:e}")).unwrap_or_default(),
        ]);
    }
    rows
}

pub fn ermakov_rows(s: &ErmakovSolution) -> Rows {
    let mut rows = vec![vec!["t".into(), "rho".into(), "rhodot".into(), "tau".into()]];
    for i in 0..s.t_grid.len() {
        rows.push(vec![s.t_grid[i].to_string(), s.rho[i].to_string(), s.rhodot[i].to_string(), s.tau[i].to_string()]);
    }
    rows
}

fn render(cli: &Cli, outcome: &Outcome) -> io::Result<String> {
    match cli.format {
        Format::Json => {
            let doc = json!({
                "header": {
                    "tool": "weylop",
                    "version": env!("CARGO_PKG_VERSION"),
                    "schema_version": SCHEMA_VERSION,
                    "run_config": cli,
                },
                "result": outcome.result,
            });
            let mut s = serde_json::to_string_pretty(&doc).map_err(io::Error::other)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let rows = outcome
                .rows
                .as_ref()
                .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "no CSV form for this command"))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.write_record(row).map_err(io::Error::other)?;
            }
            let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
            let s = String::from_utf8(bytes).map_err(io::Error::other)?;
            Ok(s)
        }
    }
}

pub fn emit(cli: &Cli, outcome: &Outcome) -> io::Result<()> {
    let text = render(cli, outcome)?;
    match &cli.output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}
