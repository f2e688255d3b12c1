//! Theorem checks run by `toolkit verify` and by the acceptance harness.
//!
//! Every check compares a prediction against an independent computation and
//! reports how many instances it looked at and how many disagreed.

use std::collections::BTreeSet;

use gaincurv_core::algebra::FieldSpec;
use gaincurv_core::cover::{
    lift_circuit, ordinary_derived_graph, predicted_lift_length, preserves_circuits,
};
use gaincurv_core::curvature::{diameter_bound_from_report, CurvatureReport};
use gaincurv_core::cycle_space::{
    abelian_generator_from_det, cycle_space_dimension, det_of_circuit_set, is_f_cycle_basis_by_rank,
};
use gaincurv_core::fundamental_group::{
    abelianization, finiteness_probe, pi1, presentation_with_tree, Finiteness,
};
use gaincurv_core::gain::{
    balance_masks, circuit_set_mask, masks_force_balance, product_masks, GainEnumerator,
    GainFunction,
};
use gaincurv_core::graph::{
    enumerate_circuits_capped, triangles_and_squares, Circuit, Graph, SpanningTree,
};
use gaincurv_core::group::{AbelianGroupSpec, GroupSpec};
use gaincurv_core::path_homology::{
    clique_homology, h1_integer, h1_via_cycle_quotient, homology, span_rank, QuotientMode,
};
use gaincurv_core::Error as CoreError;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::ToolResult;
use crate::formats::LabeledGraph;

pub const SUITES: &[&str] = &[
    "bochner", "myers", "diameter", "homology", "pi1", "cover", "det",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The hypothesis of the statement does not hold, so nothing is asserted.
    Vacuous,
    /// Reported for information only.
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub checked: u64,
    pub failures: u64,
    pub detail: String,
}

impl Check {
    fn tally(
        name: impl Into<String>,
        checked: u64,
        failures: u64,
        detail: impl Into<String>,
    ) -> Self {
        let status = if failures == 0 {
            Status::Pass
        } else {
            Status::Fail
        };
        Check {
            name: name.into(),
            status,
            checked,
            failures,
            detail: detail.into(),
        }
    }

    fn single(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check::tally(name, 1, u64::from(!ok), detail)
    }

    fn with_status(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status,
            checked: 0,
            failures: 0,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub summary: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str, summary: String, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.status != Status::Fail);
        SuiteReport {
            suite: suite.to_string(),
            passed,
            summary,
            checks,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Curvature above this counts as positive.
    pub tol: f64,
    pub coset_cap: usize,
    /// Longest circuit enumerated by the cover and determinant suites.
    pub max_len: Option<usize>,
    pub circuit_cap: usize,
    pub gain_cap: u64,
    /// Largest number of cyclomatic circuit sets the determinant suite visits.
    pub set_cap: u64,
    /// Integer gains in the brute force range over `-box..=box`.
    pub integer_box: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            tol: 1e-9,
            coset_cap: gaincurv_core::fundamental_group::DEFAULT_COSET_CAP,
            max_len: None,
            circuit_cap: gaincurv_core::graph::DEFAULT_CIRCUIT_CAP,
            gain_cap: gaincurv_core::gain::DEFAULT_GAIN_CAP,
            set_cap: 200_000,
            integer_box: 4,
        }
    }
}

/// Short decimal form with values within `tol` of zero printed as `0`.
pub fn format_curvature(k: f64, tol: f64) -> String {
    if k.abs() <= tol {
        return "0".to_string();
    }
    let s = format!("{k:.6}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn positive(curv: &CurvatureReport, tol: f64) -> Option<f64> {
    curv.min.filter(|&k| k > tol)
}

fn min_text(curv: &CurvatureReport, tol: f64) -> String {
    curv.min
        .map_or("undefined".to_string(), |k| format_curvature(k, tol))
}

/// Positive curvature everywhere forces `H_1(G, Q) = 0`.
pub fn bochner(g: &Graph, curv: &CurvatureReport, cfg: &SuiteConfig) -> ToolResult<SuiteReport> {
    let h1 = homology(g, FieldSpec::Rationals)?.h1;
    let min = min_text(curv, cfg.tol);
    let (summary, check) = if positive(curv, cfg.tol).is_some() {
        let ok = h1 == 0;
        let verdict = if ok { "pass" } else { "FAIL" };
        (
            format!("hypothesis met (min K = {min}), H1 = {h1}, {verdict}"),
            Check::single("H1(Q) vanishes", ok, format!("H1 = {h1}")),
        )
    } else {
        (
            format!("hypothesis not met (min K = {min}), H1 = {h1}, consistent"),
            Check::with_status(
                "H1(Q) vanishes",
                Status::Vacuous,
                format!("min K = {min}, H1 = {h1}"),
            ),
        )
    };
    Ok(SuiteReport::new("bochner", summary, vec![check]))
}

/// Positive curvature everywhere makes the fundamental group finite.
pub fn myers(g: &Graph, curv: &CurvatureReport, cfg: &SuiteConfig) -> ToolResult<SuiteReport> {
    let p = pi1(g)?;
    let min = min_text(curv, cfg.tol);
    if positive(curv, cfg.tol).is_none() {
        let summary =
            format!("hypothesis not met (min K = {min}), coset enumeration not run, consistent");
        return Ok(SuiteReport::new(
            "myers",
            summary,
            vec![Check::with_status(
                "pi1 finite",
                Status::Vacuous,
                summary_detail(&min),
            )],
        ));
    }
    let f = finiteness_probe(&p, cfg.coset_cap);
    let (ok, detail) = match f {
        Finiteness::Finite(n) => (true, format!("order {n}")),
        Finiteness::Unknown => (false, format!("no closure within {} cosets", cfg.coset_cap)),
    };
    let summary = format!("hypothesis met (min K = {min}), pi1 {detail}");
    Ok(SuiteReport::new(
        "myers",
        summary,
        vec![Check::single("pi1 finite", ok, detail)],
    ))
}

fn summary_detail(min: &str) -> String {
    format!("min K = {min}")
}

/// `diam(G) <= 2 Deg_max / min K` when `min K > 0`.
pub fn diameter(g: &Graph, curv: &CurvatureReport, cfg: &SuiteConfig) -> ToolResult<SuiteReport> {
    let r = diameter_bound_from_report(g, curv)?;
    let min = min_text(curv, cfg.tol);
    let check = match (positive(curv, cfg.tol), r.bound) {
        (Some(_), Some(bound)) => {
            let ok = r.holds == Some(true);
            Check::single(
                "diameter bound",
                ok,
                format!(
                    "diam = {}, bound = {bound:.6}, slack = {:.6}",
                    r.diameter,
                    r.slack.unwrap_or(f64::NAN)
                ),
            )
        }
        _ => Check::with_status(
            "diameter bound",
            Status::Vacuous,
            format!("min K = {min}, diam = {}", r.diameter),
        ),
    };
    let summary = check.detail.clone();
    Ok(SuiteReport::new("diameter", summary, vec![check]))
}

/// The chain complex and the cycle-space quotient agree.
pub fn homology_suite(g: &Graph) -> ToolResult<SuiteReport> {
    let mut checks = Vec::new();
    let mut h1_q = 0;
    for f in [
        FieldSpec::Rationals,
        FieldSpec::Prime(3),
        FieldSpec::Prime(5),
    ] {
        let direct = homology(g, f)?.h1;
        let quotient = h1_via_cycle_quotient(g, f, QuotientMode::Path)?;
        if f == FieldSpec::Rationals {
            h1_q = direct;
        }
        checks.push(Check::single(
            format!("H1 equals C/TS over {f}"),
            direct == quotient,
            format!("{direct} vs {quotient}"),
        ));
    }
    let f2 = FieldSpec::Prime(2);
    let direct = homology(g, f2)?.h1;
    let quotient = cycle_space_dimension(g) - span_rank(g, &triangles_and_squares(g), f2)?;
    let agree = if direct == quotient {
        "agree"
    } else {
        "differ"
    };
    checks.push(Check::with_status(
        "H1 vs C/TS over F2",
        Status::Info,
        format!("{direct} vs {quotient} ({agree}; characteristic 2 is outside the statement)"),
    ));
    let clique = clique_homology(g, FieldSpec::Rationals)?;
    let triangles_only = h1_via_cycle_quotient(g, FieldSpec::Rationals, QuotientMode::Clique)?;
    checks.push(Check::single(
        "clique H1 equals C/T over Q",
        clique == triangles_only,
        format!("{clique} vs {triangles_only}"),
    ));
    if g.is_connected() {
        let free = h1_integer(g)?.iter().filter(|d| d.is_zero()).count();
        checks.push(Check::single(
            "integer free rank equals dim H1(Q)",
            free == h1_q,
            format!("{free} vs {h1_q}"),
        ));
    }
    let summary = format!("H1(Q) = {h1_q}, clique H1(Q) = {clique}");
    Ok(SuiteReport::new("homology", summary, checks))
}

pub fn bigints_to_u64(v: &[BigInt]) -> Vec<u64> {
    v.iter()
        .map(|d| d.to_u64().expect("invariant factors fit in u64"))
        .collect()
}

/// Abelianized fundamental group against integer homology, and tree independence.
pub fn pi1_suite(g: &Graph, cfg: &SuiteConfig) -> ToolResult<SuiteReport> {
    let ts = triangles_and_squares(g);
    let bfs = presentation_with_tree(g, &ts, &SpanningTree::bfs(g)?)?;
    let dfs = presentation_with_tree(g, &ts, &SpanningTree::dfs(g)?)?;
    let ab = abelianization(&bfs).invariant_factors();
    let h1 = h1_integer(g)?;
    let mut checks = vec![Check::single(
        "abelianization equals H1(Z)",
        ab == h1,
        format!("{:?} vs {:?}", bigints_to_u64(&ab), bigints_to_u64(&h1)),
    )];
    let ab_dfs = abelianization(&dfs).invariant_factors();
    checks.push(Check::single(
        "abelianization independent of the tree",
        ab == ab_dfs,
        format!("{:?}", bigints_to_u64(&ab_dfs)),
    ));
    let (fb, fd) = (
        finiteness_probe(&bfs, cfg.coset_cap),
        finiteness_probe(&dfs, cfg.coset_cap),
    );
    let order = |f: Finiteness| f.order().map_or("unknown".to_string(), |n| n.to_string());
    checks.push(Check::single(
        "coset enumeration independent of the tree",
        fb == fd,
        format!("{} vs {}", order(fb), order(fd)),
    ));
    let summary = format!(
        "{} generators, H1(Z) factors {:?}, order {}",
        bfs.generator_count,
        bigints_to_u64(&h1),
        order(fb)
    );
    Ok(SuiteReport::new("pi1", summary, checks))
}

fn circuits_up_to(g: &Graph, max_len: usize, cap: usize) -> ToolResult<Vec<Circuit>> {
    Ok(enumerate_circuits_capped(g, max_len, cap)?)
}

#[derive(Debug, Default, Clone, Copy)]
struct LiftTally {
    gains: u64,
    lifts: u64,
    length_failures: u64,
    sheet_failures: u64,
    single_failures: u64,
    set_failures: u64,
}

fn lift_tally(
    phi: &GainFunction,
    circuits: &[Circuit],
    ts: &[Circuit],
    sheets: usize,
) -> ToolResult<LiftTally> {
    let cov = ordinary_derived_graph(phi)?;
    let mut t = LiftTally {
        gains: 1,
        ..Default::default()
    };
    for c in circuits {
        let report = lift_circuit(&cov, c)?;
        let expect = predicted_lift_length(phi, c)?.expect("finite group");
        t.lifts += report.lengths.len() as u64;
        t.length_failures += report.lengths.iter().filter(|&&l| l != expect).count() as u64;
        t.sheet_failures += u64::from(report.lengths.iter().sum::<usize>() != c.len() * sheets);
        t.single_failures += u64::from(report.preserved() != phi.is_balanced_on(c)?);
    }
    let balanced_ts = ts
        .iter()
        .map(|c| phi.is_balanced_on(c))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .all(|b| b);
    t.set_failures += u64::from(preserves_circuits(&cov, ts)? != balanced_ts);
    Ok(t)
}

/// Lift lengths in derived covers and balance versus preservation, over every
/// gain into `Z_2` and `Z_3` (or every gain up to switching when the full
/// enumeration exceeds the budget).
pub fn cover_suite(g: &Graph, cfg: &SuiteConfig) -> ToolResult<SuiteReport> {
    let circuits = circuits_up_to(g, cfg.max_len.unwrap_or(g.vertex_count()), cfg.circuit_cap)?;
    let ts = triangles_and_squares(g);
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    for q in [2u64, 3] {
        let group = GroupSpec::Abelian(AbelianGroupSpec::cyclic(q));
        let elems = group.elements().expect("finite");
        let gains = match GainEnumerator::all_edges(g, &group, elems.clone(), cfg.gain_cap) {
            Ok(e) => {
                notes.push(format!("Z{q}: all {} gains", e.len()));
                e
            }
            Err(CoreError::BudgetExceeded { .. }) => {
                let e = GainEnumerator::gauge_fixed(
                    g,
                    &group,
                    &SpanningTree::bfs(g)?,
                    elems,
                    cfg.gain_cap,
                )?;
                notes.push(format!("Z{q}: {} gains up to switching", e.len()));
                e
            }
            Err(e) => return Err(e.into()),
        };
        let phis: Vec<GainFunction> = gains.collect();
        let tallies = phis
            .par_iter()
            .map(|phi| lift_tally(phi, &circuits, &ts, q as usize))
            .collect::<ToolResult<Vec<_>>>()?;
        let t = tallies.iter().fold(LiftTally::default(), |a, b| LiftTally {
            gains: a.gains + b.gains,
            lifts: a.lifts + b.lifts,
            length_failures: a.length_failures + b.length_failures,
            sheet_failures: a.sheet_failures + b.sheet_failures,
            single_failures: a.single_failures + b.single_failures,
            set_failures: a.set_failures + b.set_failures,
        });
        let checked = t.gains * circuits.len() as u64;
        checks.push(Check::tally(
            format!("Z{q} lift length is order times length"),
            t.lifts,
            t.length_failures,
            format!("{} lifts", t.lifts),
        ));
        checks.push(Check::tally(
            format!("Z{q} lifts cover every sheet"),
            checked,
            t.sheet_failures,
            format!("{checked} circuits"),
        ));
        checks.push(Check::tally(
            format!("Z{q} balanced iff lifts preserved"),
            checked,
            t.single_failures,
            format!("{checked} circuits"),
        ));
        checks.push(Check::tally(
            format!("Z{q} balanced on TS iff cover preserves TS"),
            t.gains,
            t.set_failures,
            format!("{} gains", t.gains),
        ));
    }
    let summary = format!("{} circuits; {}", circuits.len(), notes.join(", "));
    Ok(SuiteReport::new("cover", summary, checks))
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    (0..k).try_fold(1u64, |acc, i| acc.checked_mul(n - i).map(|x| x / (i + 1)))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// A determinant prediction paired with the gain-enumeration outcome it must match.
struct Prediction {
    name: String,
    predict: Box<dyn Fn(&BigInt) -> bool + Sync>,
    masks: BTreeSet<u128>,
}

fn cyc(q: u64) -> GroupSpec {
    GroupSpec::Abelian(AbelianGroupSpec::cyclic(q))
}

fn finite_masks(
    g: &Graph,
    group: &GroupSpec,
    circuits: &[Circuit],
    cap: u64,
) -> ToolResult<BTreeSet<u128>> {
    Ok(balance_masks(
        g,
        group,
        group.elements().expect("finite"),
        circuits,
        cap,
    )?)
}

fn coprime(d: &BigInt, q: u64) -> bool {
    !(d % BigInt::from(q)).is_zero()
}

/// Determinant characterizations of cycle bases and abelian circuit
/// generators against brute-force gain enumeration, over every cyclomatic
/// set of circuits no longer than `max_len` (default 5).
pub fn det_suite(lg: &LabeledGraph, cfg: &SuiteConfig) -> ToolResult<SuiteReport> {
    let g = &lg.graph;
    g.require_connected()?;
    let circuits = circuits_up_to(g, cfg.max_len.unwrap_or(5), cfg.circuit_cap)?;
    if circuits.len() > 128 {
        return Err(CoreError::BudgetExceeded {
            what: "circuit mask width",
            limit: 128,
        }
        .into());
    }
    let r = g.cyclomatic_number();
    let count = binomial(circuits.len() as u64, r as u64).unwrap_or(u64::MAX);
    if count > cfg.set_cap {
        return Err(CoreError::BudgetExceeded {
            what: "circuit set enumeration",
            limit: cfg.set_cap,
        }
        .into());
    }
    let full = if circuits.len() == 128 {
        u128::MAX
    } else {
        (1u128 << circuits.len()) - 1
    };

    let z = &GroupSpec::Abelian(AbelianGroupSpec::integers());
    let z_masks = balance_masks(
        g,
        z,
        z.box_elements(cfg.integer_box),
        &circuits,
        cfg.gain_cap,
    )?;
    let cap = cfg.gain_cap;
    let zq = |q: u64| finite_masks(g, &cyc(q), &circuits, cap);
    let (m2, m3, m4, m5, m9) = (zq(2)?, zq(3)?, zq(4)?, zq(5)?, zq(9)?);
    let m6 = finite_masks(
        g,
        &GroupSpec::Abelian(AbelianGroupSpec::new(vec![2, 3])),
        &circuits,
        cap,
    )?;
    let z_plus_z2 = product_masks(&z_masks, &m2);

    let mut predictions: Vec<Prediction> = Vec::new();
    for (p, masks) in [(2u64, &m2), (3, &m3), (5, &m5)] {
        predictions.push(Prediction {
            name: format!("F{p} basis iff Z{p} generator"),
            predict: Box::new(move |d| coprime(d, p)),
            masks: masks.clone(),
        });
    }
    predictions.push(Prediction {
        name: "det nonzero iff Z generator".into(),
        predict: Box::new(|d| !d.is_zero()),
        masks: z_masks,
    });
    for (q, p, masks) in [(2u64, 2u64, &m2), (4, 2, &m4), (3, 3, &m3), (9, 3, &m9)] {
        predictions.push(Prediction {
            name: format!("det prime to {p} iff Z{q} generator"),
            predict: Box::new(move |d| coprime(d, p)),
            masks: masks.clone(),
        });
    }
    for (label, moduli, masks) in [
        ("Z2", vec![2], m2),
        ("Z3", vec![3], m3),
        ("Z6", vec![6], m6),
        ("Z+Z2", vec![0, 2], z_plus_z2),
    ] {
        let a = AbelianGroupSpec::new(moduli);
        predictions.push(Prediction {
            name: format!("no element killed by det iff {label} generator"),
            predict: Box::new(move |d| abelian_generator_from_det(d, &a)),
            masks,
        });
    }
    let fields = [
        FieldSpec::Rationals,
        FieldSpec::Prime(2),
        FieldSpec::Prime(3),
        FieldSpec::Prime(5),
    ];

    let sets = combinations(circuits.len(), r);
    let rows: Vec<(Vec<bool>, Vec<bool>)> = sets
        .par_iter()
        .map(|pick| -> ToolResult<(Vec<bool>, Vec<bool>)> {
            let b: Vec<Circuit> = pick.iter().map(|&i| circuits[i].clone()).collect();
            let d = det_of_circuit_set(&b, g)?;
            let mask = circuit_set_mask(&b, &circuits).expect("drawn from the list");
            let gain_ok = predictions
                .iter()
                .map(|p| (p.predict)(&d) == masks_force_balance(&p.masks, mask, full))
                .collect();
            let mut field_ok = Vec::new();
            for f in fields {
                field_ok.push(!f.from_bigint(&d).is_zero() == is_f_cycle_basis_by_rank(&b, g, f)?);
            }
            Ok((field_ok, gain_ok))
        })
        .collect::<ToolResult<Vec<_>>>()?;

    let n = sets.len() as u64;
    let mut checks = Vec::new();
    for (k, f) in fields.iter().enumerate() {
        let bad = rows.iter().filter(|(fo, _)| !fo[k]).count() as u64;
        checks.push(Check::tally(
            format!("det predicts {f} basis (rank route)"),
            n,
            bad,
            format!("{n} sets"),
        ));
    }
    for (k, p) in predictions.iter().enumerate() {
        let bad: Vec<usize> = rows
            .iter()
            .enumerate()
            .filter(|(_, (_, go))| !go[k])
            .map(|(i, _)| i)
            .collect();
        let mut detail = format!("{n} sets, {} balance patterns", p.masks.len());
        if let Some(&first) = bad.first() {
            let shown: Vec<String> = sets[first]
                .iter()
                .map(|&i| lg.labels_of(circuits[i].vertices()).join(" "))
                .collect();
            detail.push_str(&format!("; first mismatch [{}]", shown.join(" | ")));
        }
        checks.push(Check::tally(p.name.clone(), n, bad.len() as u64, detail));
    }
    let summary = format!(
        "{} circuits up to length {}, {n} cyclomatic sets",
        circuits.len(),
        cfg.max_len.unwrap_or(5)
    );
    Ok(SuiteReport::new("det", summary, checks))
}
