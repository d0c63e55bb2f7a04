//! Seeded trial runner shared by `check` and `suite`: fans trials across
//! workers, collects one record per trial, and derives the exit code from
//! the aggregated verdicts.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use opconvex_core::error::{Error, Result};
use opconvex_core::functions::{ScalarFunction, WeightFunction};
use opconvex_core::interval::Interval;
use opconvex_core::linalg::ToleranceConfig;
use opconvex_core::oracles::{ExtraParams, InequalityId, Oracle};
use opconvex_core::samplers::SeedSpec;
use opconvex_core::witness::WitnessFile;

pub const SCHEMA_VERSION: u32 = 1;

/// Exit-code contract: CI keys off these values.
pub mod exit_code {
    pub const OK: i32 = 0;
    pub const CERTIFIED_VIOLATION: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NUMERICAL: i32 = 3;
    pub const ONLY_HYPOTHESIS_VIOLATIONS: i32 = 4;
}

/// One JSON line per trial.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialRecord {
    pub schema_version: u32,
    pub job_id: String,
    pub inequality: InequalityId,
    pub trial: u64,
    pub seed: SeedSpec,
    /// Absent when the trial was skipped on a hypothesis violation.
    pub gap: Option<f64>,
    pub holds: Option<bool>,
    pub certified_violation: bool,
    /// "ok" or the name of the failed hypothesis.
    pub hypothesis_status: String,
    pub wall_time: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_path: Option<String>,
}

/// Aggregated verdicts of one job.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct JobSummary {
    pub trials: u64,
    pub held: u64,
    pub failed: u64,
    pub skipped: u64,
    pub min_gap: Option<f64>,
    pub max_violation: f64,
    pub certified: u64,
}

impl JobSummary {
    fn absorb(&mut self, record: &TrialRecord) {
        self.trials += 1;
        match (record.gap, record.holds) {
            (Some(gap), Some(holds)) => {
                if holds {
                    self.held += 1;
                } else {
                    self.failed += 1;
                }
                self.min_gap = Some(self.min_gap.map_or(gap, |g| g.min(gap)));
                if -gap > self.max_violation {
                    self.max_violation = -gap;
                }
                if record.certified_violation {
                    self.certified += 1;
                }
            }
            _ => self.skipped += 1,
        }
    }
}

/// A resolved job: the oracle plus how to drive it.
#[derive(Debug, Clone)]
pub struct Job {
    pub id: String,
    pub oracle: Oracle<f64>,
    pub dims: Vec<usize>,
    pub trials: u64,
    pub master_seed: u64,
    pub extra: ExtraParams<f64>,
}

/// Runs every trial of a job (in parallel, deterministically: per-trial seeds
/// are pure functions of the master seed and results are ordered by trial).
pub fn run_job(job: &Job, witness_dir: Option<&Path>) -> Result<(Vec<TrialRecord>, JobSummary)> {
    if job.trials == 0 {
        return Err(Error::Usage("trials must be >= 1".into()));
    }
    if job.dims.is_empty() || job.dims.contains(&0) {
        return Err(Error::Usage("dims must be non-empty and all >= 1".into()));
    }
    let records: Vec<TrialRecord> = (0..job.trials)
        .into_par_iter()
        .map(|trial| run_trial(job, trial, witness_dir))
        .collect::<Result<Vec<_>>>()?;

    let mut summary = JobSummary::default();
    for r in &records {
        summary.absorb(r);
    }
    Ok((records, summary))
}

fn run_trial(job: &Job, trial: u64, witness_dir: Option<&Path>) -> Result<TrialRecord> {
    let seed = SeedSpec::new(job.master_seed, trial);
    let mut rng = seed.rng();
    let dim = job.dims[(trial as usize) % job.dims.len()];
    let input = job.oracle.sample_input(dim, &job.extra, &mut rng)?;
    // spot-check structured operand invariants on every hundredth trial
    if trial % 100 == 0 {
        validate_input(&input)?;
    }
    match job.oracle.run(&input) {
        Ok(mut outcome) => {
            outcome.seed = Some(seed);
            let mut witness_path = None;
            if let Some(dir) = witness_dir {
                if !outcome.holds {
                    let path: PathBuf =
                        dir.join(format!("{}-trial{:06}.json", job.id, trial));
                    WitnessFile::from_outcome(&outcome, &job.oracle.spectrum, &job.oracle.tol)
                        .save(&path)?;
                    witness_path = Some(path.display().to_string());
                }
            }
            Ok(TrialRecord {
                schema_version: SCHEMA_VERSION,
                job_id: job.id.clone(),
                inequality: job.oracle.inequality,
                trial,
                seed,
                gap: Some(outcome.gap),
                holds: Some(outcome.holds),
                certified_violation: outcome.certified_violation(),
                hypothesis_status: "ok".into(),
                wall_time: outcome.wall_time,
                witness_path,
            })
        }
        Err(Error::HypothesisViolation(name)) => Ok(TrialRecord {
            schema_version: SCHEMA_VERSION,
            job_id: job.id.clone(),
            inequality: job.oracle.inequality,
            trial,
            seed,
            gap: None,
            holds: None,
            certified_violation: false,
            hypothesis_status: name,
            wall_time: 0.0,
            witness_path: None,
        }),
        Err(e) => Err(e),
    }
}

fn validate_input(input: &opconvex_core::oracles::OracleInput<f64>) -> Result<()> {
    use opconvex_core::oracles::OracleInput;
    match input {
        OracleInput::HansenPedersen { pair, .. } => pair.validate(),
        OracleInput::Resolution { resolution } => resolution.validate(),
        OracleInput::Cdj { map, .. } => map.validate(),
        _ => Ok(()),
    }
}

/// Exit code for a batch of checks. Chaotic-mean verdicts are exploration
/// data and never flip the code.
pub fn exit_for_summary(inequality: InequalityId, summary: &JobSummary) -> i32 {
    if inequality.is_exploratory() {
        return exit_code::OK;
    }
    if summary.certified > 0 {
        exit_code::CERTIFIED_VIOLATION
    } else if summary.held == 0 && summary.failed == 0 && summary.skipped > 0 {
        exit_code::ONLY_HYPOTHESIS_VIOLATIONS
    } else {
        exit_code::OK
    }
}

pub fn exit_for_error(e: &Error) -> i32 {
    match e {
        Error::EigenFailure { .. } | Error::Numerical(_) | Error::Singular { .. } => {
            exit_code::NUMERICAL
        }
        _ => exit_code::USAGE,
    }
}

/// Builds an oracle from CLI-level string specs.
#[allow(clippy::too_many_arguments)]
pub fn build_oracle(
    inequality: &str,
    f_spec: Option<&str>,
    h_spec: Option<&str>,
    p: f64,
    k_lo: f64,
    k_hi: f64,
    atol: f64,
    rtol: f64,
) -> Result<Oracle<f64>> {
    let inequality: InequalityId = inequality.parse()?;
    let k = Interval::closed(k_lo, k_hi)?;
    let f = match f_spec {
        Some(spec) => Some(ScalarFunction::parse(spec, k)?),
        None => None,
    };
    let h = match h_spec {
        Some(spec) => Some(WeightFunction::parse(spec)?),
        None => None,
    };
    let tol = ToleranceConfig::new(atol, rtol)?;
    Oracle::new(inequality, f, h, p, k, tol)
}

/// Serializes records as JSON lines, sorted by (job, trial).
pub fn render_jsonl(records: &[TrialRecord]) -> Result<String> {
    let mut sorted: Vec<&TrialRecord> = records.iter().collect();
    sorted.sort_by(|a, b| (&a.job_id, a.trial).cmp(&(&b.job_id, b.trial)));
    let mut out = String::new();
    for r in sorted {
        out.push_str(&serde_json::to_string(r).map_err(|e| Error::Parse(e.to_string()))?);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(ineq: &str, f: Option<&str>, h: Option<&str>, trials: u64) -> Job {
        Job {
            id: format!("test-{ineq}"),
            oracle: build_oracle(ineq, f, h, 1.0, 0.0, 10.0, 1e-9, 1e-8).unwrap(),
            dims: vec![2, 3],
            trials,
            master_seed: 42,
            extra: ExtraParams::default(),
        }
    }

    #[test]
    fn definition_job_runs_and_holds() {
        let job = job("definition", Some("power:s=1.5"), Some("identity"), 50);
        let (records, summary) = run_job(&job, None).unwrap();
        assert_eq!(records.len(), 50);
        assert_eq!(summary.held, 50);
        assert_eq!(exit_for_summary(job.oracle.inequality, &summary), exit_code::OK);
    }

    #[test]
    fn records_are_deterministic() {
        let job = job("jensen", Some("power:s=1.5"), Some("identity"), 20);
        let (r1, _) = run_job(&job, None).unwrap();
        let (r2, _) = run_job(&job, None).unwrap();
        for (a, b) in r1.iter().zip(&r2) {
            assert_eq!(a.gap, b.gap);
            assert_eq!(a.trial, b.trial);
        }
    }

    #[test]
    fn unknown_names_are_usage_errors() {
        assert!(build_oracle("frobnicate", None, None, 1.0, 0.0, 10.0, 1e-9, 1e-8).is_err());
        assert!(
            build_oracle("definition", Some("gauss"), Some("identity"), 1.0, 0.0, 10.0, 1e-9, 1e-8)
                .is_err()
        );
    }

    #[test]
    fn hypothesis_violations_become_skips() {
        // reciprocal h fails the half-condition required by the contraction form
        let job = job("contraction", Some("power:s=1.5"), Some("recip"), 5);
        let (records, summary) = run_job(&job, None).unwrap();
        assert_eq!(summary.skipped, 5);
        assert!(records.iter().all(|r| r.hypothesis_status.contains("half-condition")));
        assert_eq!(
            exit_for_summary(job.oracle.inequality, &summary),
            exit_code::ONLY_HYPOTHESIS_VIOLATIONS
        );
    }
}
