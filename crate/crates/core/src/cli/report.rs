//! Report documents, command execution and rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::spec::{Command, CommandSpec, OutputFormat, SweepParam, SweepSpec};
use crate::analysis::{
    cascade_report, hybrid_analysis, privacy_amplification, reproduce_with, security_report, Claim,
    SecurityReport,
};
use crate::attacks::EveStrategy;
use crate::error::{Error, Result};
use crate::protocols::{run_records, summarize, sift, SessionConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EveSummary {
    pub accuracy_sifted: Option<f64>,
    pub accuracy_blocked: Option<f64>,
    /// `P(X = x | Z = z)` as `[z][x]`.
    pub channel_table: Option<[[f64; 2]; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinalKeySummary {
    pub length: usize,
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Output of one command. Every key is always present; keys that do not
/// apply to the command are `null` (or empty for `claims`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub command: Command,
    pub config: CommandSpec,
    pub counts: Option<BTreeMap<String, u64>>,
    pub qber: Option<f64>,
    pub sifted_length: Option<usize>,
    pub abort: Option<bool>,
    pub eve: Option<EveSummary>,
    pub final_key: Option<FinalKeySummary>,
    pub analysis: Option<SecurityReport>,
    pub claims: Vec<Claim>,
    pub sweep: Option<SweepTable>,
}

impl ReportDocument {
    fn empty(spec: &CommandSpec) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: spec.command,
            config: spec.clone(),
            counts: None,
            qber: None,
            sifted_length: None,
            abort: None,
            eve: None,
            final_key: None,
            analysis: None,
            claims: Vec::new(),
            sweep: None,
        }
    }
}

fn strategy(spec: &CommandSpec) -> Result<EveStrategy> {
    EveStrategy::resolve(spec.protocol, spec.attack, spec.f)
}

fn simulate(spec: &CommandSpec, doc: &mut ReportDocument) -> Result<()> {
    let cfg = SessionConfig {
        protocol: spec.protocol,
        rounds: spec.rounds,
        strategy: strategy(spec)?,
        cascade_n: spec.n,
        seed: spec.seed,
        sample_fraction: spec.sample_fraction,
        abort_threshold: spec.abort_threshold,
        security_parameter: spec.s,
    };
    let records = run_records(&cfg)?;
    let stats = summarize(&cfg, &records)?;
    doc.counts = Some(stats.counts.clone());
    doc.qber = stats.qber;
    doc.sifted_length = Some(stats.sifted_length);
    doc.abort = Some(stats.abort);
    doc.eve = Some(EveSummary {
        accuracy_sifted: stats.eve_accuracy_sifted,
        accuracy_blocked: stats.eve_accuracy_blocked,
        channel_table: stats.channel_table,
    });
    // Closed-form rates exist for the one-way interferometric protocols only.
    doc.analysis = security_report(cfg.protocol, &cfg.strategy, cfg.cascade_n, spec.s).ok();
    if let Some(report) = &doc.analysis {
        let key = sift(&records);
        if !stats.abort && report.r_s > 0.0 && !key.is_empty() {
            if let Ok(k) = privacy_amplification(&key, report.r_s.min(1.0), spec.seed) {
                doc.final_key = Some(FinalKeySummary {
                    length: k.bits.len(),
                    rate: k.rate,
                });
            }
        }
    }
    Ok(())
}

fn grid(sweep: &SweepSpec) -> Result<Vec<f64>> {
    if sweep.steps == 0 {
        return Err(Error::InvalidParameter("sweep needs at least one step".into()));
    }
    if !(sweep.from.is_finite() && sweep.to.is_finite()) {
        return Err(Error::InvalidParameter("sweep bounds must be finite".into()));
    }
    let span = sweep.to - sweep.from;
    let last = (sweep.steps - 1).max(1) as f64;
    Ok((0..sweep.steps)
        .map(|i| sweep.from + span * i as f64 / last)
        .collect())
}

fn sweep(spec: &CommandSpec, doc: &mut ReportDocument) -> Result<()> {
    let sweep = spec
        .sweep
        .ok_or_else(|| Error::InvalidParameter("sweep parameters missing".into()))?;
    let xs = grid(&sweep)?;
    let (columns, rows): (&[&str], Vec<Vec<f64>>) = match sweep.param {
        SweepParam::F => (
            &["f", "e", "I_AB", "I_AE"],
            xs.iter()
                .map(|&f| hybrid_analysis(f).map(|p| vec![p.f, p.e, p.i_ab, p.i_ae]))
                .collect::<Result<_>>()?,
        ),
        SweepParam::N => (
            &["n", "D", "p_c", "r0"],
            xs.iter()
                .map(|&x| {
                    if x < 0.5 {
                        return Err(Error::InvalidParameter("cascade length must be at least 1".into()));
                    }
                    let r = cascade_report(x.round() as usize)?;
                    Ok(vec![r.n as f64, r.distance, r.p_c, r.r0])
                })
                .collect::<Result<_>>()?,
        ),
        SweepParam::S => {
            let s_strategy = strategy(spec)?;
            (
                &["s", "r"],
                xs.iter()
                    .map(|&s| {
                        let r = security_report(spec.protocol, &s_strategy, spec.n, s)?;
                        Ok(vec![s, r.r_s])
                    })
                    .collect::<Result<_>>()?,
            )
        }
    };
    doc.sweep = Some(SweepTable {
        columns: columns.iter().map(|c| c.to_string()).collect(),
        rows,
    });
    Ok(())
}

/// Executes `spec`; the exit code is 1 when a gating claim fails.
pub fn run_command(spec: &CommandSpec) -> Result<(i32, ReportDocument)> {
    let mut doc = ReportDocument::empty(spec);
    let mut code = 0;
    match spec.command {
        Command::Simulate => simulate(spec, &mut doc)?,
        Command::Analyze => {
            doc.analysis = Some(security_report(spec.protocol, &strategy(spec)?, spec.n, spec.s)?);
        }
        Command::Reproduce => {
            doc.claims = reproduce_with(spec.rounds, spec.seed)?;
            if doc.claims.iter().any(|c| c.gating && !c.pass) {
                code = 1;
            }
        }
        Command::Sweep => sweep(spec, &mut doc)?,
    }
    Ok((code, doc))
}

fn num(x: f64) -> String {
    format!("{x}")
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "null".into(), num)
}

/// Flat `(key, value)` view of the scalar fields.
fn scalars(doc: &ReportDocument) -> Vec<(String, String)> {
    let mut out = vec![
        ("version".into(), doc.version.clone()),
        ("command".into(), doc.command.to_string()),
        ("protocol".into(), doc.config.protocol.to_string()),
        ("attack".into(), doc.config.attack.to_string()),
        ("seed".into(), doc.config.seed.to_string()),
    ];
    if let Some(counts) = &doc.counts {
        out.push(("rounds".into(), doc.config.rounds.to_string()));
        for (k, v) in counts {
            out.push((format!("count.{k}"), v.to_string()));
        }
        out.push(("qber".into(), opt(doc.qber)));
        out.push(("sifted_length".into(), doc.sifted_length.unwrap_or(0).to_string()));
        out.push(("abort".into(), doc.abort.unwrap_or(false).to_string()));
    }
    if let Some(eve) = &doc.eve {
        out.push(("eve.accuracy_sifted".into(), opt(eve.accuracy_sifted)));
        out.push(("eve.accuracy_blocked".into(), opt(eve.accuracy_blocked)));
    }
    if let Some(k) = &doc.final_key {
        out.push(("final_key.length".into(), k.length.to_string()));
        out.push(("final_key.rate".into(), num(k.rate)));
    }
    if let Some(a) = &doc.analysis {
        let v = serde_json::to_value(a).expect("plain struct");
        if let serde_json::Value::Object(map) = v {
            for (k, v) in map {
                out.push((format!("analysis.{k}"), v.to_string()));
            }
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render(doc: &ReportDocument, format: OutputFormat) -> Result<String> {
    let mut out = String::new();
    match format {
        OutputFormat::Json => {
            out = serde_json::to_string_pretty(doc)
                .map_err(|e| Error::InvalidParameter(e.to_string()))?;
            out.push('\n');
        }
        OutputFormat::Csv => {
            if let Some(t) = &doc.sweep {
                writeln!(out, "{}", t.columns.join(",")).expect("string write");
                for row in &t.rows {
                    let cells: Vec<String> = row.iter().map(|x| num(*x)).collect();
                    writeln!(out, "{}", cells.join(",")).expect("string write");
                }
            } else if !doc.claims.is_empty() {
                writeln!(out, "id,provenance,expected,computed,tolerance,pass,gating,note").expect("string write");
                for c in &doc.claims {
                    let prov = serde_json::to_value(c.provenance).expect("enum");
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{},{}",
                        c.id,
                        prov.as_str().unwrap_or(""),
                        num(c.expected),
                        num(c.computed),
                        num(c.tolerance),
                        c.pass,
                        c.gating,
                        csv_field(&c.note)
                    )
                    .expect("string write");
                }
            } else {
                writeln!(out, "key,value").expect("string write");
                for (k, v) in scalars(doc) {
                    writeln!(out, "{},{}", k, csv_field(&v)).expect("string write");
                }
            }
        }
        OutputFormat::Table => {
            if let Some(t) = &doc.sweep {
                let head: Vec<String> = t.columns.iter().map(|c| format!("{c:>14}")).collect();
                writeln!(out, "{}", head.join(" ")).expect("string write");
                for row in &t.rows {
                    let cells: Vec<String> = row.iter().map(|x| format!("{x:>14.8}")).collect();
                    writeln!(out, "{}", cells.join(" ")).expect("string write");
                }
            } else if !doc.claims.is_empty() {
                writeln!(out, "{:<42} {:>14} {:>14} {:>10}  result", "claim", "expected", "computed", "tol")
                    .expect("string write");
                for c in &doc.claims {
                    let verdict = match (c.pass, c.gating) {
                        (true, _) => "PASS",
                        (false, true) => "FAIL",
                        (false, false) => "info",
                    };
                    writeln!(
                        out,
                        "{:<42} {:>14.9} {:>14.9} {:>10.1e}  {verdict}",
                        c.id, c.expected, c.computed, c.tolerance
                    )
                    .expect("string write");
                }
            } else {
                for (k, v) in scalars(doc) {
                    writeln!(out, "{k:<28} {v}").expect("string write");
                }
            }
        }
    }
    Ok(out)
}
