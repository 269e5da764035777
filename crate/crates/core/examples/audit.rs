//! Runs every claim at genus 1 and 2 under both presets and prints the text report.

use jacring::audit::{render_report, run_audit, AuditOptions};

fn main() -> jacring::Result<()> {
    let opts = AuditOptions { seed: 7, timings: true, ..AuditOptions::default() };
    let report = run_audit(&opts)?;
    print!("{}", render_report(&report, "text")?);
    Ok(())
}
