use std::fmt::Write as _;

use super::{AuditReport, Status};
use crate::error::{Error, Result};

/// Renders a report as `"json"` or `"text"`.
pub fn render_report(report: &AuditReport, format: &str) -> Result<String> {
    match format {
        "json" => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            Ok(s)
        }
        "text" => Ok(render_text(report)),
        other => Err(Error::UnknownFormat(other.to_string())),
    }
}

fn render_text(report: &AuditReport) -> String {
    let mut out = String::new();
    writeln!(out, "jacring {} audit, seed {}", report.engine_version, report.seed).unwrap();
    if report.claims.is_empty() {
        return out;
    }
    let timed = report.claims.iter().any(|c| c.millis.is_some());
    let id_w = report.claims.iter().map(|c| c.id.len()).max().unwrap_or(0).max(5);
    let status_w = report.claims.iter().map(|c| c.status.name().len()).max().unwrap_or(0).max(6);
    write!(out, "{:<id_w$}  {:>5}  {:<9}  {:<status_w$}", "claim", "genus", "preset", "status").unwrap();
    if timed {
        out.push_str("  millis");
    }
    out.truncate(out.trim_end().len());
    out.push('\n');
    for c in &report.claims {
        let preset = c.preset.map_or("-", |p| p.name());
        write!(out, "{:<id_w$}  {:>5}  {:<9}  {:<status_w$}", c.id, c.genus, preset, c.status.name()).unwrap();
        if let Some(ms) = c.millis {
            write!(out, "  {ms:>6}").unwrap();
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
    }
    let summary = [Status::Verified, Status::RefutedInModel, Status::NotModeled, Status::Skipped, Status::Error]
        .iter()
        .filter_map(|s| {
            let n = report.count(*s);
            (n > 0).then(|| format!("{n} {}", s.name()))
        })
        .collect::<Vec<_>>()
        .join(", ");
    writeln!(out, "\n{summary}").unwrap();
    for c in report.claims.iter().filter(|c| c.status != Status::Verified) {
        let Some(w) = &c.witness else { continue };
        let preset = c.preset.map_or(String::new(), |p| format!(", {}", p.name()));
        writeln!(out, "\n{} (g={}{preset}): {}", c.id, c.genus, c.status.name()).unwrap();
        let body = serde_json::to_string_pretty(w).expect("witness serializes");
        for line in body.lines() {
            writeln!(out, "    {line}").unwrap();
        }
    }
    out
}
