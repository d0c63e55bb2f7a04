//! Declarative suite runner: a TOML job list in, JSONL records and a CSV
//! summary out, byte-identical across re-runs with the same master seed.

use std::path::Path;

use serde::Deserialize;

use opconvex_core::error::{Error, Result};
use opconvex_core::oracles::ExtraParams;

use crate::runner::{
    build_oracle, exit_code, exit_for_summary, run_job, Job, JobSummary, TrialRecord,
};

/// One job as written in the config file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub id: String,
    pub inequality: String,
    #[serde(default)]
    pub f: Option<String>,
    #[serde(default)]
    pub h: Option<String>,
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default = "default_dims")]
    pub dims: Vec<usize>,
    /// Spectral interval as `[lo, hi]`.
    #[serde(default = "default_k")]
    pub k: [f64; 2],
    pub trials: u64,
    /// Per-job master seed; defaults to `master_seed + job index`.
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default = "default_atol")]
    pub atol: f64,
    #[serde(default = "default_rtol")]
    pub rtol: f64,
    /// Family size for Jensen / index sets / resolutions.
    #[serde(default = "default_k_terms")]
    pub k_terms: usize,
    #[serde(default = "default_m_kraus")]
    pub m_kraus: usize,
    #[serde(default)]
    pub rank: Option<usize>,
    #[serde(default = "default_p_hi")]
    pub p_hi: f64,
    #[serde(default = "default_p_small")]
    pub p_small: f64,
    #[serde(default)]
    pub isometry: bool,
    #[serde(default)]
    pub transpose_twist: bool,
    /// Exploration jobs never affect the exit code.
    #[serde(default)]
    pub explore: bool,
}

fn default_p() -> f64 {
    1.0
}
fn default_dims() -> Vec<usize> {
    vec![2, 3]
}
fn default_k() -> [f64; 2] {
    [0.0, 10.0]
}
fn default_atol() -> f64 {
    1e-9
}
fn default_rtol() -> f64 {
    1e-8
}
fn default_k_terms() -> usize {
    4
}
fn default_m_kraus() -> usize {
    3
}
fn default_p_hi() -> f64 {
    2.0
}
fn default_p_small() -> f64 {
    1e-2
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub jobs: Vec<JobConfig>,
}

impl SuiteConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let config: SuiteConfig =
            toml::from_str(text).map_err(|e| Error::Parse(format!("suite config: {e}")))?;
        if config.jobs.is_empty() {
            return Err(Error::Parse("suite config has an empty job list".into()));
        }
        let mut ids = std::collections::HashSet::new();
        for job in &config.jobs {
            if job.trials == 0 {
                return Err(Error::Parse(format!("job {:?}: trials must be >= 1", job.id)));
            }
            if !ids.insert(&job.id) {
                return Err(Error::Parse(format!("duplicate job id {:?}", job.id)));
            }
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

impl JobConfig {
    pub fn resolve(&self, index: usize, master_seed: u64) -> Result<Job> {
        let oracle = build_oracle(
            &self.inequality,
            self.f.as_deref(),
            self.h.as_deref(),
            self.p,
            self.k[0],
            self.k[1],
            self.atol,
            self.rtol,
        )?;
        let extra = ExtraParams::<f64> {
            k: self.k_terms,
            m_kraus: self.m_kraus,
            rank: self.rank,
            p_hi: self.p_hi,
            p_small: self.p_small,
            isometry: self.isometry,
            transpose_twist: self.transpose_twist,
        };
        Ok(Job {
            id: self.id.clone(),
            oracle,
            dims: self.dims.clone(),
            trials: self.trials,
            master_seed: self.seed.unwrap_or(master_seed.wrapping_add(index as u64)),
            extra,
        })
    }
}

/// One executed job with its summary.
#[derive(Debug, Clone)]
pub struct SuiteJobResult {
    pub config: JobConfig,
    pub summary: JobSummary,
    pub exploratory: bool,
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub results: Vec<SuiteJobResult>,
    pub records: Vec<TrialRecord>,
}

impl SuiteResult {
    pub fn exit_code(&self) -> i32 {
        for r in &self.results {
            if r.exploratory {
                continue;
            }
            let ineq = r
                .config
                .inequality
                .parse()
                .expect("validated at resolve time");
            if exit_for_summary(ineq, &r.summary) == exit_code::CERTIFIED_VIOLATION {
                return exit_code::CERTIFIED_VIOLATION;
            }
        }
        exit_code::OK
    }

    /// CSV summary, one row per job, byte-deterministic under a fixed seed.
    pub fn render_csv(&self) -> String {
        let mut out = String::from(
            "job_id,inequality,f,h,p,dims,trials,held,failed,skipped,min_gap,max_violation\n",
        );
        for r in &self.results {
            let dims = r
                .config
                .dims
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(";");
            let min_gap =
                r.summary.min_gap.map(|g| format!("{g:e}")).unwrap_or_else(|| "nan".into());
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{:e}\n",
                r.config.id,
                r.config.inequality,
                r.config.f.as_deref().unwrap_or(""),
                r.config.h.as_deref().unwrap_or(""),
                r.config.p,
                dims,
                r.summary.trials,
                r.summary.held,
                r.summary.failed,
                r.summary.skipped,
                min_gap,
                r.summary.max_violation,
            ));
        }
        out
    }
}

/// Runs every job of the suite. Jobs execute in declaration order; trial
/// records come back sorted by (job, trial).
pub fn run_suite(
    config: &SuiteConfig,
    master_seed: u64,
    witness_dir: Option<&Path>,
) -> Result<SuiteResult> {
    let mut results = Vec::with_capacity(config.jobs.len());
    let mut records = Vec::new();
    for (index, job_config) in config.jobs.iter().enumerate() {
        let job = job_config.resolve(index, master_seed)?;
        let exploratory = job_config.explore || job.oracle.inequality.is_exploratory();
        let (mut job_records, summary) = run_job(&job, witness_dir)?;
        records.append(&mut job_records);
        results.push(SuiteJobResult { config: job_config.clone(), summary, exploratory });
    }
    Ok(SuiteResult { results, records })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINI: &str = r#"
[[jobs]]
id = "def"
inequality = "definition"
f = "power:s=1.5"
h = "identity"
trials = 10

[[jobs]]
id = "mean"
inequality = "power_mean_monotone"
p = 1.0
p_hi = 2.0
trials = 5
"#;

    #[test]
    fn parse_and_run_mini_suite() {
        let config = SuiteConfig::parse(MINI).unwrap();
        let result = run_suite(&config, 7, None).unwrap();
        assert_eq!(result.results.len(), 2);
        assert_eq!(result.exit_code(), exit_code::OK);
        let csv = result.render_csv();
        assert!(csv.starts_with("job_id,"));
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn suite_is_byte_reproducible() {
        let config = SuiteConfig::parse(MINI).unwrap();
        let a = run_suite(&config, 7, None).unwrap().render_csv();
        let b = run_suite(&config, 7, None).unwrap().render_csv();
        assert_eq!(a, b);
        let c = run_suite(&config, 8, None).unwrap().render_csv();
        assert_ne!(a, c, "a different master seed must change the samples");
    }

    #[test]
    fn empty_job_list_is_rejected() {
        assert!(SuiteConfig::parse("jobs = []").is_err());
        assert!(SuiteConfig::parse("").is_err());
    }

    #[test]
    fn malformed_config_names_the_field() {
        let err = SuiteConfig::parse("[[jobs]]\nid = 3\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("id") || msg.contains("line"), "diagnostic: {msg}");
    }
}
