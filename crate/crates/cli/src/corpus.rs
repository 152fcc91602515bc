//! Built-in corpus with golden summaries.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use regpow::invariants::{analyze, CertificateKind, CheckStatus, InvariantReport};
use regpow::kernel::{Field, PrimeField, Rationals};
use regpow::rees::rees_presentation;
use regpow::ExtInt;

use crate::commands::{load_ideal, options};
use crate::error::CliResult;
use crate::job::{FieldSpec, JobSpec};

pub struct CorpusJob {
    pub name: &'static str,
    pub job: &'static str,
    pub golden: &'static str,
}

pub const CORPUS: &[CorpusJob] = &[
    CorpusJob {
        name: "four_generators",
        job: include_str!("../corpus/four_generators.job"),
        golden: include_str!("../corpus/four_generators.golden.json"),
    },
    CorpusJob {
        name: "seven_generators",
        job: include_str!("../corpus/seven_generators.job"),
        golden: include_str!("../corpus/seven_generators.golden.json"),
    },
    CorpusJob {
        name: "gorenstein_rees",
        job: include_str!("../corpus/gorenstein_rees.job"),
        golden: include_str!("../corpus/gorenstein_rees.golden.json"),
    },
    CorpusJob {
        name: "maximal_ideal",
        job: include_str!("../corpus/maximal_ideal.job"),
        golden: include_str!("../corpus/maximal_ideal.golden.json"),
    },
];

/// The values compared against a golden file.
#[derive(Debug, Serialize)]
pub struct Summary {
    pub d: i64,
    pub a_star: Vec<ExtInt>,
    pub reg: Vec<ExtInt>,
    pub a_star_phi: ExtInt,
    pub reg_phi: ExtInt,
    pub stab_a: u32,
    pub stab_reg: u32,
    pub a_star_next_strand: Option<ExtInt>,
    pub strand_minus_one_is_zero: bool,
    pub certificate: CertificateKind,
    pub certificate_value: i64,
    pub also_holds: Vec<CertificateKind>,
    pub threshold_1: ExtInt,
    pub stab_bound: Option<ExtInt>,
    pub m_primary_stab_bound: Option<ExtInt>,
}

#[derive(Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub status: CheckStatus,
}

#[derive(Debug, Serialize)]
pub struct JobOutcome {
    pub name: String,
    pub matches: bool,
    pub diffs: Vec<String>,
    pub summary: Summary,
    pub checks: Vec<CheckLine>,
}

#[derive(Debug, Serialize)]
pub struct CorpusReport {
    pub jobs: Vec<JobOutcome>,
    pub mismatches: usize,
}

fn summarize<K: Field>(field: K, job: &JobSpec) -> CliResult<(Summary, InvariantReport)> {
    let ideal = load_ideal(field, job)?;
    let report = analyze(&ideal, &options(job))?;
    let fit = report.fit.clone().expect("analysis fits the table");
    let th = report.thresholds.clone().expect("analysis assembles thresholds");
    let cert = report.certificates[0].clone();
    let rees = rees_presentation(&ideal)?;
    let summary = Summary {
        d: fit.d,
        a_star: report.power_table.rows.iter().map(|r| r.a_star).collect(),
        reg: report.power_table.rows.iter().map(|r| r.reg).collect(),
        a_star_phi: fit.a_star_phi,
        reg_phi: fit.reg_phi,
        stab_a: fit.stab_a,
        stab_reg: fit.stab_reg,
        a_star_next_strand: th.a_star_next_strand.value,
        strand_minus_one_is_zero: rees.strand_x(-1)?.presentation.is_zero()?,
        certificate: cert.kind,
        certificate_value: cert.value,
        also_holds: cert.also_holds,
        threshold_1: th.threshold_1,
        stab_bound: th.stab_bound,
        m_primary_stab_bound: th.m_primary_stab_bound,
    };
    Ok((summary, report))
}

/// Differences on the keys the golden pins; other summary keys are
/// reported but not compared.
pub fn diff(summary: &Value, golden: &Value) -> Vec<String> {
    let (Some(s), Some(g)) = (summary.as_object(), golden.as_object()) else {
        return vec!["golden is not a JSON object".into()];
    };
    let mut out = Vec::new();
    for (k, want) in g {
        match s.get(k) {
            Some(got) if got == want => {}
            Some(got) => out.push(format!("{k}: expected {want}, got {got}")),
            None => out.push(format!("{k}: missing from summary")),
        }
    }
    out
}

pub fn run_job(cj: &CorpusJob) -> CliResult<(JobOutcome, InvariantReport)> {
    let job = JobSpec::parse(cj.job)?;
    let (summary, report) = match job.field {
        FieldSpec::Rationals => summarize(Rationals, &job)?,
        FieldSpec::Prime(p) => summarize(PrimeField::new(p)?, &job)?,
    };
    let golden: Value = serde_json::from_str(cj.golden).unwrap_or(Value::Null);
    let diffs = diff(&serde_json::to_value(&summary).expect("summary serializes"), &golden);
    let checks = report.checks.iter().map(|c| CheckLine { name: c.name.clone(), status: c.status }).collect();
    Ok((JobOutcome { name: cj.name.to_string(), matches: diffs.is_empty(), diffs, summary, checks }, report))
}

/// Runs every corpus job in the worker pool; results keep corpus order.
pub fn run_corpus() -> CliResult<(CorpusReport, Vec<InvariantReport>)> {
    let results: Vec<CliResult<(JobOutcome, InvariantReport)>> = CORPUS.par_iter().map(run_job).collect();
    let mut jobs = Vec::new();
    let mut reports = Vec::new();
    for r in results {
        let (o, rep) = r?;
        jobs.push(o);
        reports.push(rep);
    }
    let mismatches = jobs.iter().filter(|j| !j.matches).count();
    Ok((CorpusReport { jobs, mismatches }, reports))
}
