//! Power tables, asymptotic fits, certificates for a*_pi, the stability
//! thresholds and the verification ledger.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::cohomsheaf::{BlowupCohomology, Route, RouteCertificates};
use crate::error::{Error, Result};
use crate::extint::{ExtInt, Finite, NegInf};
use crate::groebner::{self, Ideal};
use crate::kernel::{Field, Polynomial, Ring};
use crate::rees::{equigenerated_generators, ReesPresentation};
use crate::resolve::{a_invariants, depth_and_cm, free_resolution, prune_units, GradedPresentation, Matrix};

/// Invariants of one power `I^q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerRow {
    pub q: u32,
    /// `a^i(I^q)` for `i = 0..=N`.
    pub a_list: Vec<ExtInt>,
    pub a_star: ExtInt,
    pub reg: ExtInt,
    /// `a*(I^q) - dq`.
    pub defect: ExtInt,
    /// `reg(I^q) - dq`.
    pub reg_defect: ExtInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerTable {
    pub d: i64,
    pub rows: Vec<PowerRow>,
    /// Set when the table stops early because of a budget failure.
    pub truncated: Option<String>,
}

/// Computes `a^i`, `a*` and `reg` of `I^q` for `q = 1..=qmax`. Rows run in
/// parallel; a budget failure truncates the table at the first failing row.
pub fn power_invariants<K: Field>(ideal: &Ideal<K>, qmax: u32) -> Result<PowerTable> {
    if qmax == 0 {
        return Err(Error::Invalid("qmax must be at least 1".into()));
    }
    let (d, _) = equigenerated_generators(ideal)?;
    let powers = match groebner::ideal_powers(ideal, qmax) {
        Ok(p) => p,
        Err(Error::Budget(m)) => return Ok(PowerTable { d, rows: Vec::new(), truncated: Some(m) }),
        Err(e) => return Err(e),
    };
    let results: Vec<Result<PowerRow>> =
        powers.par_iter().enumerate().map(|(k, iq)| power_row(iq, (k + 1) as u32, d)).collect();
    let mut rows = Vec::new();
    let mut truncated = None;
    for r in results {
        match r {
            Ok(row) => rows.push(row),
            Err(Error::Budget(m)) => {
                truncated = Some(m);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(PowerTable { d, rows, truncated })
}

fn power_row<K: Field>(iq: &Ideal<K>, q: u32, d: i64) -> Result<PowerRow> {
    if let Some(deg) = iq.equigenerated_degree() {
        if deg != d * q as i64 {
            return Err(Error::Invalid(format!("I^{q} generated in degree {deg}, expected {}", d * q as i64)));
        }
    }
    let m = GradedPresentation::from_ideal(iq)?;
    let t = a_invariants(&m)?;
    let dq = d * q as i64;
    Ok(PowerRow {
        q,
        a_list: t.a.clone(),
        a_star: t.a_star(),
        reg: t.reg(),
        defect: t.a_star().plus(-dq),
        reg_defect: t.reg().plus(-dq),
    })
}

/// Detected asymptotic linear forms `a*(I^q) = dq + a*_phi`,
/// `reg(I^q) = dq + reg_phi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AsymptoticFit {
    pub d: i64,
    pub a_star_phi: ExtInt,
    pub reg_phi: ExtInt,
    pub stab_a: u32,
    pub stab_reg: u32,
    pub window: usize,
    pub confirmed: bool,
}

fn stabilization(rows: &[PowerRow], f: impl Fn(&PowerRow) -> ExtInt) -> (ExtInt, u32, usize) {
    let last = f(rows.last().expect("nonempty"));
    let mut start = rows.len() - 1;
    while start > 0 && f(&rows[start - 1]) == last {
        start -= 1;
    }
    (last, rows[start].q, rows.len() - start)
}

pub fn detect_stabilization(table: &PowerTable, window: usize) -> Result<AsymptoticFit> {
    if table.rows.len() < window + 1 {
        return Err(Error::TableTooShort { needed: window + 1, have: table.rows.len() });
    }
    let (a_star_phi, stab_a, ca) = stabilization(&table.rows, |r| r.defect);
    let (reg_phi, stab_reg, cr) = stabilization(&table.rows, |r| r.reg_defect);
    Ok(AsymptoticFit {
        d: table.d,
        a_star_phi,
        reg_phi,
        stab_a,
        stab_reg,
        window,
        confirmed: ca >= window && cr >= window,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    MPrimary,
    CMRees,
    GorensteinRees,
    DeclaredFatPoints,
    ChartUpperBound,
}

/// Certified value (or upper bound) of a*_pi.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub value: i64,
    pub exact: bool,
    pub note: String,
    /// Every exact certificate kind that holds, in test order.
    pub also_holds: Vec<CertificateKind>,
}

/// Whether `S / I` is finite dimensional.
pub fn is_m_primary<K: Field>(ideal: &Ideal<K>) -> Result<bool> {
    let q = GradedPresentation::quotient_ring(ideal)?;
    Ok(q.dimension()? == Some(0))
}

/// Tests, in order: m-primary, Cohen-Macaulay Rees algebra, declared fat
/// points, and finally the affine chart bound.
pub fn a_star_pi_certificate<K: Field>(
    ideal: &Ideal<K>,
    rees: &ReesPresentation<K>,
    fat_points: bool,
) -> Result<Certificate> {
    let mut holds = Vec::new();
    let mut notes = Vec::new();
    if is_m_primary(ideal)? {
        holds.push(CertificateKind::MPrimary);
        notes.push("S/I has dimension 0");
    }
    let info = depth_and_cm(&rees.as_module()?)?;
    if info.is_cm {
        if info.is_gorenstein {
            holds.push(CertificateKind::GorensteinRees);
            notes.push("Rees algebra is Gorenstein");
        } else {
            holds.push(CertificateKind::CMRees);
            notes.push("Rees algebra is Cohen-Macaulay");
        }
    }
    if fat_points {
        holds.push(CertificateKind::DeclaredFatPoints);
        notes.push("declared ideal of fat points");
    }
    if let Some(&kind) = holds.first() {
        return Ok(Certificate { kind, value: -1, exact: true, note: notes[0].to_string(), also_holds: holds });
    }
    let bound = chart_bound(rees)?;
    Ok(Certificate {
        kind: CertificateKind::ChartUpperBound,
        value: bound,
        exact: false,
        note: "max T-twist of the chart resolutions minus the number of T variables".into(),
        also_holds: holds,
    })
}

/// Upper bound for a*_pi from the affine charts `x_i = 1`: the bigraded
/// minimal resolution of `k[x,T]/J` is dehomogenized, pruned, and its
/// largest T-twist minus `m + 1` is taken.
pub fn chart_bound<K: Field>(rees: &ReesPresentation<K>) -> Result<i64> {
    let res = free_resolution(&rees.as_module()?)?;
    let nx = rees.nx();
    // T-degree of every basis element
    let mut tdeg: Vec<Vec<i64>> = vec![vec![0; res.twists[0].len()]];
    for (i, map) in res.maps.iter().enumerate() {
        let mut labels = Vec::with_capacity(map.len());
        for col in map {
            let (r, e) = col.iter().enumerate().find(|(_, e)| !e.is_zero()).expect("nonzero column");
            let (_, t) = rees.block_degrees(e).ok_or_else(|| Error::Invalid("resolution not bihomogeneous".into()))?;
            labels.push(t + tdeg[i][r]);
        }
        tdeg.push(labels);
    }
    let nt = rees.nt() as i64;
    let mut best = -1i64;
    for chart in 0..nx {
        let names: Vec<String> =
            rees.ring.names().iter().enumerate().filter(|(k, _)| *k != chart).map(|(_, n)| n.clone()).collect();
        let cr: Arc<Ring<K>> =
            rees.ring.derived(names, crate::kernel::Grading::Standard, crate::kernel::MonomialOrder::Grevlex)?;
        let dehom = |p: &Polynomial<K>| {
            p.map_exponents(&cr, |e| e.iter().enumerate().filter(|(k, _)| *k != chart).map(|(_, v)| *v).collect())
        };
        let mut maps: Vec<Matrix<K>> =
            res.maps.iter().map(|m| m.iter().map(|c| c.iter().map(dehom).collect()).collect()).collect();
        let mut labels = tdeg.clone();
        prune_units(&mut maps, &mut labels);
        let top = labels.iter().flatten().copied().max().unwrap_or(0);
        best = best.max(top - nt);
    }
    Ok(best.max(-1))
}

/// Where a threshold ingredient came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IngredientStatus {
    Exact,
    UpperBound,
    Supplied,
    Missing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ingredient {
    pub value: Option<ExtInt>,
    pub status: IngredientStatus,
}

/// Thresholds of the main theorem and the assembled stability bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdReport {
    pub a_star_pi: Ingredient,
    pub a_star_phi: ExtInt,
    /// `a*(R_(a*_phi + 1, *))`.
    pub a_star_next_strand: Ingredient,
    /// Sheaf regularity of `R_(a*_phi, *)`.
    pub sheaf_reg_strand: Ingredient,
    pub reg_phi_star: Ingredient,
    /// Linearity upper bound holds for `q > threshold_1`.
    pub threshold_1: ExtInt,
    /// Lower bound holds for `q >= threshold_2`; `None` when an ingredient
    /// is missing.
    pub threshold_2: Option<ExtInt>,
    /// `max {a*_pi + 1, a*(R_(a*_phi+1,*)) + 1, reg R_(a*_phi,*)~, reg^phi_*}`.
    pub stab_bound: Option<ExtInt>,
    /// `max {1, a*(R_(a*_phi+1,*)) + 1}`, valid for m-primary ideals.
    pub m_primary_stab_bound: Option<ExtInt>,
    pub empirical_stab_a: Option<u32>,
}

/// Assembles the thresholds from the certificate, the fit and the strands.
pub fn theorem_bounds<K: Field>(
    bc: &mut BlowupCohomology<'_, K>,
    cert: &Certificate,
    a_star_phi: ExtInt,
    reg_phi_star: Option<i64>,
    m_primary: bool,
    empirical_stab_a: Option<u32>,
) -> Result<ThresholdReport> {
    let phi = a_star_phi.finite().ok_or_else(|| Error::Invalid("a*_phi is -inf or missing".into()))?;
    let pi = Finite(cert.value);
    let next = bc.strand_a_star(phi + 1)?;
    let sreg = bc.strand_sheaf_reg(phi)?;
    let threshold_1 = std::cmp::max(pi, next);
    let supplied = reg_phi_star.map(Finite);
    let threshold_2 = supplied.map(|r| ExtInt::max_of([pi.plus(1), sreg, r]));
    let stab_bound = supplied.map(|r| ExtInt::max_of([pi.plus(1), next.plus(1), sreg, r]));
    let m_primary_stab_bound = m_primary.then(|| std::cmp::max(Finite(1), next.plus(1)));
    Ok(ThresholdReport {
        a_star_pi: Ingredient {
            value: Some(pi),
            status: if cert.exact { IngredientStatus::Exact } else { IngredientStatus::UpperBound },
        },
        a_star_phi,
        a_star_next_strand: Ingredient { value: Some(next), status: IngredientStatus::Exact },
        sheaf_reg_strand: Ingredient { value: Some(sreg), status: IngredientStatus::Exact },
        reg_phi_star: Ingredient {
            value: supplied,
            status: if supplied.is_some() { IngredientStatus::Supplied } else { IngredientStatus::Missing },
        },
        threshold_1,
        threshold_2,
        stab_bound,
        m_primary_stab_bound,
        empirical_stab_a,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn new(name: &str, status: CheckStatus, detail: impl Into<String>) -> Self {
        Check { name: name.into(), status, detail: detail.into() }
    }

    fn from_bool(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(name, if ok { CheckStatus::Pass } else { CheckStatus::Fail }, detail)
    }
}

/// Options for a full analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub qmax: u32,
    pub window: usize,
    pub fat_points: bool,
    pub reg_phi_star: Option<i64>,
    /// Run the verification checks after assembling the thresholds.
    pub run_checks: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { qmax: 5, window: 3, fat_points: false, reg_phi_star: None, run_checks: true }
    }
}

/// Everything the theorem-facing commands report.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub power_table: PowerTable,
    pub fit: Option<AsymptoticFit>,
    pub certificates: Vec<Certificate>,
    pub thresholds: Option<ThresholdReport>,
    pub checks: Vec<Check>,
}

/// Runs the power table, fit, certificate, thresholds and checks.
pub fn analyze<K: Field>(ideal: &Ideal<K>, opts: &AnalysisOptions) -> Result<InvariantReport> {
    let table = power_invariants(ideal, opts.qmax)?;
    if let Some(msg) = &table.truncated {
        return Err(Error::Budget(msg.clone()));
    }
    let fit = detect_stabilization(&table, opts.window)?;
    let rees = crate::rees::rees_presentation(ideal)?;
    let cert = a_star_pi_certificate(ideal, &rees, opts.fat_points)?;
    let m_primary = cert.also_holds.contains(&CertificateKind::MPrimary);
    let certs = RouteCertificates { a_star_pi: Some(cert.value), a_star_phi: fit.a_star_phi.finite() };
    let mut bc = BlowupCohomology::new(&rees, ideal, certs)?;
    let thresholds = theorem_bounds(&mut bc, &cert, fit.a_star_phi, opts.reg_phi_star, m_primary, Some(fit.stab_a))?;
    let checks = if opts.run_checks { verify_theorems(&mut bc, &table, &fit, &cert, &thresholds)? } else { Vec::new() };
    Ok(InvariantReport {
        power_table: table,
        fit: Some(fit),
        certificates: vec![cert],
        thresholds: Some(thresholds),
        checks,
    })
}

/// The verification ledger (a)-(f) plus soundness of the assembled bound.
pub fn verify_theorems<K: Field>(
    bc: &mut BlowupCohomology<'_, K>,
    table: &PowerTable,
    fit: &AsymptoticFit,
    cert: &Certificate,
    th: &ThresholdReport,
) -> Result<Vec<Check>> {
    let d = table.d;
    let phi = fit.a_star_phi;
    let m_primary = cert.also_holds.contains(&CertificateKind::MPrimary);
    let mut checks = Vec::new();

    // (a)
    let mut bad = Vec::new();
    for r in table.rows.iter().filter(|r| Finite(r.q as i64) > th.threshold_1) {
        if r.a_star > phi.plus(d * r.q as i64) {
            bad.push(r.q);
        }
    }
    checks.push(Check::from_bool(
        "upper_bound_a",
        bad.is_empty(),
        format!("a*(I^q) <= dq + a*_phi for q > {}; violations at {bad:?}", th.threshold_1),
    ));

    // (b)
    match th.threshold_2 {
        Some(t2) => {
            let bad: Vec<u32> = table
                .rows
                .iter()
                .filter(|r| Finite(r.q as i64) >= t2 && r.a_star < phi.plus(d * r.q as i64))
                .map(|r| r.q)
                .collect();
            checks.push(Check::from_bool(
                "lower_bound_a",
                bad.is_empty(),
                format!("a*(I^q) >= dq + a*_phi for q >= {t2}; violations at {bad:?}"),
            ));
        }
        None => checks.push(Check::new(
            "lower_bound_a",
            CheckStatus::Skipped,
            "skipped: uncertified (reg^phi_* not supplied)",
        )),
    }

    // (c), (d)
    if m_primary {
        let defects: Vec<ExtInt> = table.rows.iter().map(|r| r.defect).collect();
        let mono = defects.windows(2).all(|w| w[1] <= w[0]);
        checks.push(Check::from_bool("defect_monotone", mono, format!("defects {}", render_list(&defects))));
        let bad: Vec<u32> = table.rows.iter().filter(|r| r.reg != r.a_star.plus(1)).map(|r| r.q).collect();
        checks.push(Check::from_bool("reg_equals_a_star_plus_one", bad.is_empty(), format!("violations at {bad:?}")));
    } else {
        checks.push(Check::new("defect_monotone", CheckStatus::Skipped, "skipped: not m-primary"));
        checks.push(Check::new("reg_equals_a_star_plus_one", CheckStatus::Skipped, "skipped: not m-primary"));
    }

    // (e)
    match phi.finite() {
        Some(phi) => {
            let mut mism = Vec::new();
            let mut count = 0;
            for p in phi + 1..=phi + 3 {
                for q in 1..=4i64 {
                    if q <= cert.value {
                        continue;
                    }
                    count += 1;
                    let a = bc.compute(p, q, Route::Pi)?;
                    let b = bc.compute(p, q, Route::Phi)?;
                    if a != b {
                        mism.push((p, q));
                    }
                }
            }
            checks.push(Check::from_bool(
                "two_route_equality",
                mism.is_empty(),
                format!("{count} grid points compared; mismatches at {mism:?}"),
            ));
        }
        None => checks.push(Check::new("two_route_equality", CheckStatus::Skipped, "skipped: a*_phi is -inf")),
    }

    // (f)
    if cert.also_holds.contains(&CertificateKind::GorensteinRees) && phi.finite().is_some() {
        let top = bc.rees.nx() - 1;
        let mut zero_at = Vec::new();
        for qp in 0..=5 {
            let p = qp + d;
            if !bc.phi_allowed(p) {
                continue;
            }
            let h = bc.phi_side(p, -1)?;
            if h.get(top).copied().unwrap_or(0) == 0 {
                zero_at.push(qp);
            }
        }
        checks.push(Check::from_bool(
            "gorenstein_nonvanishing",
            zero_at.is_empty(),
            format!("h^{top}(Xtilde, O(q'+{d}, -1)) for q' = 0..5 via the phi route; zero at q' in {zero_at:?}"),
        ));
    } else {
        checks.push(Check::new(
            "gorenstein_nonvanishing",
            CheckStatus::Skipped,
            "skipped: Rees algebra not certified Gorenstein",
        ));
    }

    // soundness of the assembled bound
    let bound = th.stab_bound.or(th.m_primary_stab_bound);
    match bound {
        Some(b) => checks.push(Check::from_bool(
            "stab_bound_sound",
            b >= Finite(fit.stab_a as i64),
            format!("bound {b} vs empirical stab_a {}", fit.stab_a),
        )),
        None => checks.push(Check::new("stab_bound_sound", CheckStatus::Skipped, "skipped: missing ingredient")),
    }
    checks.push(Check::from_bool(
        "a_star_pi_lower_bound",
        cert.value >= -1,
        format!("a*_pi certificate value {}", cert.value),
    ));
    Ok(checks)
}

fn render_list(v: &[ExtInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// `a*(R_(p,*))` over `k[T]`; `-inf` for a zero strand.
pub fn strand_a_star<K: Field>(rees: &ReesPresentation<K>, p: i64) -> Result<ExtInt> {
    if p < 0 {
        return Ok(NegInf);
    }
    Ok(a_invariants(&rees.strand_x(p)?.presentation)?.a_star())
}

/// Sheaf regularity of `R_(p,*)~` on the fiber image.
pub fn strand_sheaf_reg<K: Field>(rees: &ReesPresentation<K>, p: i64) -> Result<ExtInt> {
    if p < 0 {
        return Ok(NegInf);
    }
    crate::cohomsheaf::sheaf_regularity(&rees.strand_x(p)?.presentation)
}
