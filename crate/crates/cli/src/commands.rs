//! Command execution and report serialization.

use serde::Serialize;

use regpow::cohomsheaf::{BlowupCohomology, Route, RouteCertificates};
use regpow::groebner::Ideal;
use regpow::invariants::{
    a_star_pi_certificate, analyze, detect_stabilization, power_invariants, AnalysisOptions, AsymptoticFit,
    Certificate, Check, PowerRow, PowerTable, ThresholdReport,
};
use regpow::kernel::{Budget, Field, Grading, MonomialOrder, PrimeField, Rationals, Ring};
use regpow::rees::{equigenerated_generators, rees_presentation, ReesPresentation};
use regpow::resolve::a_invariants;
use regpow::ExtInt;

use crate::error::{CliError, CliResult};
use crate::job::{FieldSpec, JobSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrandAxis {
    X,
    T,
}

/// A command with its command-specific options.
#[derive(Debug, Clone)]
pub enum Command {
    Powers,
    Rees,
    Strand { axis: StrandAxis, from: i64, to: i64 },
    Cohomology { route: Route, p: Option<(i64, i64)>, q: (i64, i64) },
    Bounds,
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Powers => "powers",
            Command::Rees => "rees",
            Command::Strand { .. } => "strand",
            Command::Cohomology { .. } => "cohomology",
            Command::Bounds => "bounds",
            Command::Verify => "verify",
        }
    }
}

/// Rendered outputs of one command. `failure` carries an error that should
/// set the exit code after the artifacts are written.
pub struct Artifacts {
    pub json: String,
    pub csv: String,
    pub failure: Option<CliError>,
}

#[derive(Debug, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub field: String,
    pub vars: Vec<String>,
    pub generators: Vec<String>,
    pub d: i64,
    pub qmax: u32,
    pub window: usize,
    pub fat_points: bool,
    pub reg_phi_star: Option<i64>,
}

pub fn execute(job: &JobSpec, cmd: &Command) -> CliResult<Artifacts> {
    match job.field {
        FieldSpec::Rationals => execute_in(Rationals, job, cmd),
        FieldSpec::Prime(p) => execute_in(PrimeField::new(p)?, job, cmd),
    }
}

pub fn load_ideal<K: Field>(field: K, job: &JobSpec) -> CliResult<Ideal<K>> {
    let mut budget = Budget::default();
    if let Some(d) = job.budget_degree {
        budget.max_degree = d;
    }
    if let Some(s) = job.budget_size {
        budget.max_basis = s;
    }
    let budget = budget.with_seconds(job.budget_seconds);
    let ring = Ring::new(field, job.vars.clone(), Grading::Standard, MonomialOrder::Grevlex)?.with_budget(budget);
    let gens: Vec<&str> = job.gens.iter().map(String::as_str).collect();
    let ideal = Ideal::parse(&ring, &gens)?;
    equigenerated_generators(&ideal)?;
    Ok(ideal)
}

fn meta<K: Field>(job: &JobSpec, cmd: &Command, ideal: &Ideal<K>) -> CliResult<Meta> {
    let (d, _) = equigenerated_generators(ideal)?;
    Ok(Meta {
        tool: "regpow",
        version: env!("CARGO_PKG_VERSION"),
        command: cmd.name().to_string(),
        field: job.field.to_string(),
        vars: job.vars.clone(),
        generators: ideal.gens().iter().map(|g| g.render()).collect(),
        d,
        qmax: job.qmax,
        window: job.window,
        fat_points: job.fat_points,
        reg_phi_star: job.reg_phi_star,
    })
}

pub fn options(job: &JobSpec) -> AnalysisOptions {
    AnalysisOptions {
        qmax: job.qmax,
        window: job.window,
        fat_points: job.fat_points,
        reg_phi_star: job.reg_phi_star,
        run_checks: true,
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn csv_string(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
}

fn join_ext(v: &[ExtInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

fn power_csv(rows: &[PowerRow]) -> String {
    csv_string(
        &["q", "a_star", "reg", "defect", "a_list"],
        rows.iter()
            .map(|r| {
                vec![
                    r.q.to_string(),
                    r.a_star.to_string(),
                    r.reg.to_string(),
                    r.defect.to_string(),
                    join_ext(&r.a_list),
                ]
            })
            .collect(),
    )
}

#[derive(Serialize)]
struct PowersReport<'a> {
    meta: Meta,
    power_table: &'a [PowerRow],
    truncated: &'a Option<String>,
    fit: Option<AsymptoticFit>,
}

#[derive(Serialize)]
struct ReesReport {
    meta: Meta,
    rees_vars: Vec<String>,
    fiber_vars: Vec<String>,
    relations: Vec<Relation>,
    fiber_ideal: Vec<String>,
    substitution_check: bool,
}

#[derive(Serialize)]
struct Relation {
    polynomial: String,
    x_degree: i64,
    t_degree: i64,
}

#[derive(Serialize)]
struct StrandRow {
    index: i64,
    generator_degrees: Vec<i64>,
    relations: usize,
    a_list: Vec<ExtInt>,
    a_star: ExtInt,
    reg: ExtInt,
    sheaf_reg: ExtInt,
}

#[derive(Serialize)]
struct StrandReport {
    meta: Meta,
    axis: &'static str,
    strands: Vec<StrandRow>,
}

#[derive(Serialize)]
struct Cell {
    p: i64,
    q: i64,
    h: Option<Vec<i128>>,
    error: Option<String>,
}

#[derive(Serialize)]
struct CohomologyReport {
    meta: Meta,
    route: Route,
    a_star_pi: Certificate,
    a_star_phi: ExtInt,
    cells: Vec<Cell>,
}

#[derive(Serialize)]
pub struct FullReport {
    pub meta: Meta,
    pub power_table: Vec<PowerRow>,
    pub fit: Option<AsymptoticFit>,
    pub certificates: Vec<Certificate>,
    pub thresholds: Option<ThresholdReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<Check>>,
}

fn fit_of(table: &PowerTable, window: usize) -> Option<AsymptoticFit> {
    detect_stabilization(table, window).ok()
}

fn execute_in<K: Field>(field: K, job: &JobSpec, cmd: &Command) -> CliResult<Artifacts> {
    let ideal = load_ideal(field, job)?;
    let meta = meta(job, cmd, &ideal)?;
    match cmd {
        Command::Powers => {
            let table = power_invariants(&ideal, job.qmax)?;
            let failure = table.truncated.clone().map(|m| CliError::Core(regpow::Error::Budget(m)));
            let fit = fit_of(&table, job.window);
            let json = to_json(&PowersReport { meta, power_table: &table.rows, truncated: &table.truncated, fit });
            Ok(Artifacts { json, csv: power_csv(&table.rows), failure })
        }
        Command::Rees => rees_report(meta, &ideal),
        Command::Strand { axis, from, to } => strand_report(meta, &ideal, *axis, *from, *to),
        Command::Cohomology { route, p, q } => cohomology_report(meta, job, &ideal, *route, *p, *q),
        Command::Bounds | Command::Verify => {
            let mut opts = options(job);
            opts.run_checks = matches!(cmd, Command::Verify);
            let r = analyze(&ideal, &opts)?;
            let report = FullReport {
                meta,
                power_table: r.power_table.rows,
                fit: r.fit,
                certificates: r.certificates,
                thresholds: r.thresholds,
                checks: opts.run_checks.then_some(r.checks),
            };
            let csv = match &report.checks {
                Some(checks) => csv_string(
                    &["name", "status", "detail"],
                    checks.iter().map(|c| vec![c.name.clone(), status_name(c), c.detail.clone()]).collect(),
                ),
                None => bounds_csv(report.thresholds.as_ref().expect("thresholds assembled")),
            };
            Ok(Artifacts { json: to_json(&report), csv, failure: None })
        }
    }
}

fn status_name(c: &Check) -> String {
    serde_json::to_value(c.status).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn opt_ext(v: Option<ExtInt>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "missing".into())
}

fn bounds_csv(t: &ThresholdReport) -> String {
    let rows = vec![
        vec!["a_star_pi".into(), opt_ext(t.a_star_pi.value)],
        vec!["a_star_phi".into(), t.a_star_phi.to_string()],
        vec!["a_star_next_strand".into(), opt_ext(t.a_star_next_strand.value)],
        vec!["sheaf_reg_strand".into(), opt_ext(t.sheaf_reg_strand.value)],
        vec!["reg_phi_star".into(), opt_ext(t.reg_phi_star.value)],
        vec!["threshold_1".into(), t.threshold_1.to_string()],
        vec!["threshold_2".into(), opt_ext(t.threshold_2)],
        vec!["stab_bound".into(), opt_ext(t.stab_bound)],
        vec!["m_primary_stab_bound".into(), opt_ext(t.m_primary_stab_bound)],
        vec!["empirical_stab_a".into(), t.empirical_stab_a.map(|s| s.to_string()).unwrap_or_else(|| "missing".into())],
    ];
    csv_string(&["key", "value"], rows)
}

fn rees_report<K: Field>(meta: Meta, ideal: &Ideal<K>) -> CliResult<Artifacts> {
    let rees = rees_presentation(ideal)?;
    let relations: Vec<Relation> = rees
        .j
        .gens()
        .iter()
        .map(|g| {
            let (x_degree, t_degree) = rees.block_degrees(g).unwrap_or((-1, -1));
            Relation { polynomial: g.render(), x_degree, t_degree }
        })
        .collect();
    let fiber: Vec<String> = rees.fiber_ideal()?.gens().iter().map(|g| g.render()).collect();
    let report = ReesReport {
        meta,
        rees_vars: rees.ring.names().to_vec(),
        fiber_vars: rees.fiber_ring.names().to_vec(),
        substitution_check: rees.substitution_check(),
        relations,
        fiber_ideal: fiber,
    };
    let mut rows: Vec<Vec<String>> = report
        .relations
        .iter()
        .map(|r| vec!["relation".into(), r.polynomial.clone(), r.x_degree.to_string(), r.t_degree.to_string()])
        .collect();
    rows.extend(report.fiber_ideal.iter().map(|f| vec!["fiber".into(), f.clone(), String::new(), String::new()]));
    let csv = csv_string(&["kind", "polynomial", "x_degree", "t_degree"], rows);
    Ok(Artifacts { json: to_json(&report), csv, failure: None })
}

fn strand_report<K: Field>(meta: Meta, ideal: &Ideal<K>, axis: StrandAxis, from: i64, to: i64) -> CliResult<Artifacts> {
    if from > to {
        return Err(CliError::Usage(format!("empty strand range {from}..{to}")));
    }
    let rees = rees_presentation(ideal)?;
    let mut strands = Vec::new();
    for index in from..=to {
        let s = match axis {
            StrandAxis::X => rees.strand_x(index)?,
            StrandAxis::T => rees.strand_t(index)?,
        };
        let m = &s.presentation;
        let t = a_invariants(m)?;
        strands.push(StrandRow {
            index,
            generator_degrees: m.gens.clone(),
            relations: m.relations.len(),
            a_list: t.a.clone(),
            a_star: t.a_star(),
            reg: t.reg(),
            sheaf_reg: regpow::cohomsheaf::sheaf_regularity(m)?,
        });
    }
    let csv = csv_string(
        &["index", "ngens", "a_star", "reg", "sheaf_reg", "a_list"],
        strands
            .iter()
            .map(|s| {
                vec![
                    s.index.to_string(),
                    s.generator_degrees.len().to_string(),
                    s.a_star.to_string(),
                    s.reg.to_string(),
                    s.sheaf_reg.to_string(),
                    join_ext(&s.a_list),
                ]
            })
            .collect(),
    );
    let axis = match axis {
        StrandAxis::X => "x",
        StrandAxis::T => "t",
    };
    Ok(Artifacts { json: to_json(&StrandReport { meta, axis, strands }), csv, failure: None })
}

fn cohomology_report<K: Field>(
    meta: Meta,
    job: &JobSpec,
    ideal: &Ideal<K>,
    route: Route,
    p: Option<(i64, i64)>,
    q: (i64, i64),
) -> CliResult<Artifacts> {
    let rees: ReesPresentation<K> = rees_presentation(ideal)?;
    let cert = a_star_pi_certificate(ideal, &rees, job.fat_points)?;
    let table = power_invariants(ideal, job.qmax)?;
    let phi = fit_of(&table, job.window).map(|f| f.a_star_phi).unwrap_or(ExtInt::NegInf);
    let certs = RouteCertificates { a_star_pi: Some(cert.value), a_star_phi: phi.finite() };
    let (p_lo, p_hi) = match (p, phi.finite()) {
        (Some(r), _) => r,
        (None, Some(a)) => (a + 1, a + 3),
        (None, None) => (0, 2),
    };
    let mut bc = BlowupCohomology::new(&rees, ideal, certs)?;
    let mut cells = Vec::new();
    for pp in p_lo..=p_hi {
        for qq in q.0..=q.1 {
            match bc.compute(pp, qq, route) {
                Ok(h) => cells.push(Cell { p: pp, q: qq, h: Some(h), error: None }),
                Err(e @ regpow::Error::NoCertificate(_)) => {
                    cells.push(Cell { p: pp, q: qq, h: None, error: Some(e.to_string()) })
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    let mut rows = Vec::new();
    for c in &cells {
        match &c.h {
            Some(h) => {
                for (i, v) in h.iter().enumerate() {
                    rows.push(vec![c.p.to_string(), c.q.to_string(), i.to_string(), v.to_string()]);
                }
            }
            None => rows.push(vec![c.p.to_string(), c.q.to_string(), String::new(), "refused".into()]),
        }
    }
    let csv = csv_string(&["p", "q", "i", "dim"], rows);
    let report = CohomologyReport { meta, route, a_star_pi: cert, a_star_phi: phi, cells };
    Ok(Artifacts { json: to_json(&report), csv, failure: None })
}
