//! Executable checks of the stated identities, with a machine-readable verdict report.
//!
//! Every claim runs at each requested genus (and each preset when the claim
//! depends on one). Unary laws are checked on the whole monomial basis; bilinear
//! laws on all basis pairs for `g <= 2` and on seeded random classes above.

mod checks;
mod registry;
mod report;

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gpb::{GpbContext, Preset};

pub use registry::{claims, find_claim, Claim, STATEMENTS};
pub use report::render_report;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    RefutedInModel,
    NotModeled,
    /// Not run: out of budget.
    Skipped,
    /// The engine itself failed; never counts as verified.
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::RefutedInModel => "refuted-in-model",
            Status::NotModeled => "not-modeled",
            Status::Skipped => "skipped",
            Status::Error => "error",
        }
    }
}

/// One claim evaluated at one genus and preset.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimRecord {
    pub id: String,
    pub paper_ref: String,
    pub quote: String,
    pub genus: usize,
    /// `None` for claims that do not depend on a preset.
    pub preset: Option<Preset>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    /// Wall time, recorded only when timings are requested.
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub engine_version: String,
    pub seed: u64,
    pub claims: Vec<ClaimRecord>,
}

impl AuditReport {
    pub fn empty(seed: u64) -> Self {
        AuditReport {
            engine_version: ENGINE_VERSION.to_string(),
            seed,
            claims: Vec::new(),
        }
    }

    pub fn count(&self, status: Status) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }

    pub fn records<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a ClaimRecord> {
        self.claims.iter().filter(move |c| c.id == id)
    }
}

#[derive(Clone, Debug)]
pub struct AuditOptions {
    pub genera: Vec<usize>,
    pub presets: Vec<Preset>,
    /// Claim ids to run; `None` runs all.
    pub claims: Option<Vec<String>>,
    pub seed: u64,
    /// Random classes (or pairs, triples) drawn per sampled law.
    pub samples: usize,
    /// Claims working on `P × P` are skipped above this genus.
    pub product_genus_limit: Option<usize>,
    /// Per-claim wall-time cap; exceeding it marks the claim skipped.
    pub time_budget: Option<Duration>,
    pub timings: bool,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            genera: vec![1, 2],
            presets: Preset::ALL.to_vec(),
            claims: None,
            seed: 0,
            samples: 24,
            product_genus_limit: None,
            time_budget: None,
            timings: false,
        }
    }
}

struct Job {
    claim: &'static Claim,
    genus: usize,
    preset: Option<Preset>,
}

/// Runs the selected claims. Jobs run in parallel; the report order is fixed
/// (claim registry order, then genus, then preset).
pub fn run_audit(opts: &AuditOptions) -> Result<AuditReport> {
    let selected: Vec<&'static Claim> = match &opts.claims {
        None => claims().iter().collect(),
        Some(ids) => {
            for id in ids {
                find_claim(id).ok_or_else(|| Error::UnknownClaim(id.clone()))?;
            }
            claims().iter().filter(|c| ids.iter().any(|i| i == c.id)).collect()
        }
    };
    let mut genera = opts.genera.clone();
    genera.sort_unstable();
    genera.dedup();
    for &g in &genera {
        if g == 0 || g > crate::jacobian::MAX_GENUS {
            return Err(Error::Range(format!(
                "audit genus {g} outside 1..={}",
                crate::jacobian::MAX_GENUS
            )));
        }
    }
    let mut presets = opts.presets.clone();
    presets.sort_by_key(|p| Preset::ALL.iter().position(|q| q == p));
    presets.dedup();

    let contexts = genera
        .iter()
        .map(|&g| GpbContext::new(g))
        .collect::<Result<Vec<_>>>()?;

    let mut jobs = Vec::new();
    for claim in selected {
        for &g in &genera {
            if claim.per_preset {
                for &p in &presets {
                    jobs.push(Job { claim, genus: g, preset: Some(p) });
                }
            } else {
                jobs.push(Job { claim, genus: g, preset: None });
            }
        }
    }

    let claims = jobs
        .par_iter()
        .map(|job| {
            let ctx = &contexts[genera.iter().position(|&g| g == job.genus).expect("genus")];
            run_job(job, ctx, opts)
        })
        .collect();
    Ok(AuditReport {
        engine_version: ENGINE_VERSION.to_string(),
        seed: opts.seed,
        claims,
    })
}

fn run_job(job: &Job, ctx: &GpbContext, opts: &AuditOptions) -> ClaimRecord {
    let start = Instant::now();
    let skip_product = job.claim.uses_product_space
        && opts.product_genus_limit.is_some_and(|limit| job.genus > limit);
    let outcome = if skip_product {
        checks::Outcome::skipped(format!(
            "P × P checks are limited to genus <= {}",
            opts.product_genus_limit.unwrap_or_default()
        ))
    } else {
        let mut check = checks::Check::new(ctx, job.preset, opts, job.claim.id);
        checks::run(job.claim, &mut check)
    };
    ClaimRecord {
        id: job.claim.id.to_string(),
        paper_ref: job.claim.paper_ref.to_string(),
        quote: job.claim.quote.to_string(),
        genus: job.genus,
        preset: job.preset,
        status: outcome.status,
        witness: outcome.witness,
        millis: opts.timings.then(|| start.elapsed().as_millis() as u64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn registry_matches_statement_list() {
        let registered: BTreeSet<&str> = claims().iter().map(|c| c.id).collect();
        let listed: BTreeSet<&str> = STATEMENTS.iter().flat_map(|s| s.claims.iter().copied()).collect();
        let unlisted: Vec<_> = registered.difference(&listed).collect();
        let missing: Vec<_> = listed.difference(&registered).collect();
        assert!(unlisted.is_empty(), "claims with no statement: {unlisted:?}");
        assert!(missing.is_empty(), "statements naming unknown claims: {missing:?}");
        for s in STATEMENTS {
            assert!(!s.claims.is_empty(), "{} has no claim", s.label);
        }
        assert_eq!(registered.len(), claims().len(), "duplicate claim ids");
    }

    #[test]
    fn unknown_claims_and_genera_are_rejected() {
        let opts = AuditOptions {
            claims: Some(vec!["no-such-claim".into()]),
            ..AuditOptions::default()
        };
        assert!(matches!(run_audit(&opts), Err(Error::UnknownClaim(_))));
        let opts = AuditOptions {
            genera: vec![0],
            ..AuditOptions::default()
        };
        assert!(matches!(run_audit(&opts), Err(Error::Range(_))));
    }

    #[test]
    fn product_space_budget_skips() {
        let opts = AuditOptions {
            genera: vec![2],
            claims: Some(vec!["ext-poincare-class".into(), "poincare-formula".into()]),
            product_genus_limit: Some(1),
            ..AuditOptions::default()
        };
        let report = run_audit(&opts).unwrap();
        let status: Vec<_> = report.claims.iter().map(|c| (c.id.as_str(), c.status)).collect();
        assert_eq!(
            status,
            vec![("poincare-formula", Status::Verified), ("ext-poincare-class", Status::Skipped)]
        );
    }

    #[test]
    fn reports_are_reproducible() {
        let opts = AuditOptions {
            genera: vec![1, 3],
            claims: Some(vec!["fourier-exchange-J".into(), "pontryagin-compat-P".into()]),
            seed: 11,
            samples: 4,
            ..AuditOptions::default()
        };
        let a = render_report(&run_audit(&opts).unwrap(), "json").unwrap();
        let b = render_report(&run_audit(&opts).unwrap(), "json").unwrap();
        assert_eq!(a, b);
    }
}
