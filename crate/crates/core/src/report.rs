//! JSON and CSV output.
//!
//! Field names and CSV column orders here are stable. Infinite distances are
//! written as the string `"inf"` in JSON and as `inf` in CSV.

use serde::{Serialize, Serializer};

use crate::agmon::AgmonField;
use crate::bounds::BoundReport;
use crate::error::{Error, Result};
use crate::experiments::{DecayComparison, TreeExperiment};
use crate::graph::Potential;
use crate::spectral::EigenPair;
use crate::stochastic::WalkBound;

/// Column order of the verification CSV.
pub const VERIFY_CSV_HEADER: [&str; 10] = [
    "v",
    "abs_phi",
    "rho",
    "node_cost",
    "bound",
    "slack",
    "refined_bound",
    "refined_slack",
    "walk_bound",
    "walk_slack",
];
/// Column order of the Agmon field CSV.
pub const AGMON_CSV_HEADER: [&str; 6] = ["v", "potential", "node_cost", "rho", "next_hop", "fmt"];
/// Column order of the random-walk CSV.
pub const WALK_CSV_HEADER: [&str; 9] =
    ["v", "abs_phi", "exact_moment", "mc_estimate", "mc_std_error", "walk_bound", "theorem_bound", "slack", "tighter"];
/// Column order of the tree-experiment level profile CSV.
pub const LEVEL_CSV_HEADER: [&str; 4] = ["level", "mean_abs_phi", "node_cost", "rho_E"];

fn distance<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_infinite() {
        s.serialize_str("inf")
    } else {
        s.serialize_f64(*x)
    }
}

fn opt_distance<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => distance(v, s),
        None => s.serialize_none(),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(&row).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn cell(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

#[derive(Debug, Serialize, serde::Deserialize)]
pub struct EigenpairsFile {
    pub eigenpairs: Vec<EigenPair>,
}

pub fn eigenpairs_to_json(pairs: &[EigenPair]) -> Result<String> {
    to_json(&EigenpairsFile { eigenpairs: pairs.to_vec() })
}

pub fn eigenpairs_from_json(text: &str) -> Result<Vec<EigenPair>> {
    let file: EigenpairsFile = serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => Error::SchemaViolation(e.to_string()),
            _ => Error::Parse(e.to_string()),
        }
    })?;
    Ok(file.eigenpairs)
}

/// Outcome of the optional random-walk check.
#[derive(Debug, Clone)]
pub enum WalkOutcome {
    NotRequested,
    /// No forbidden vertices, so the bound says nothing.
    Vacuous,
    Checked {
        delta: f64,
        report: BoundReport,
    },
}

#[derive(Debug, Serialize)]
pub struct VerifyRow {
    pub v: usize,
    pub abs_phi: f64,
    #[serde(serialize_with = "distance")]
    pub rho: f64,
    pub node_cost: f64,
    pub bound: f64,
    pub slack: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refined_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refined_slack: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walk_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walk_slack: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct WalkSummary {
    /// `"ok"`, `"violated"` or `"vacuous"`.
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tighter_vertices: Option<Vec<usize>>,
}

/// Combined verification report for one eigenpair.
#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub energy: f64,
    pub pair_index: usize,
    pub residual: f64,
    pub sup_norm: f64,
    pub tolerance: f64,
    pub theorem_bound_ok: bool,
    pub min_slack: f64,
    pub worst_vertex: usize,
    pub argmax: usize,
    pub argmax_allowed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refined_bound_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walk: Option<WalkSummary>,
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    pub fn new(
        pair_index: usize,
        pair: &EigenPair,
        theorem: &BoundReport,
        refined: Option<&BoundReport>,
        walk: &WalkOutcome,
    ) -> Self {
        let walk_report = match walk {
            WalkOutcome::Checked { report, .. } => Some(report),
            _ => None,
        };
        let rows = theorem
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| VerifyRow {
                v: r.vertex,
                abs_phi: r.abs_phi,
                rho: r.rho,
                node_cost: r.node_cost,
                bound: r.bound,
                slack: r.slack,
                refined_bound: refined.map(|x| x.rows[i].bound),
                refined_slack: refined.map(|x| x.rows[i].slack),
                walk_bound: walk_report.map(|x| x.rows[i].bound),
                walk_slack: walk_report.map(|x| x.rows[i].slack),
            })
            .collect();
        let walk = match walk {
            WalkOutcome::NotRequested => None,
            WalkOutcome::Vacuous => Some(WalkSummary { status: "vacuous", delta: None, tighter_vertices: None }),
            WalkOutcome::Checked { delta, report } => Some(WalkSummary {
                status: if report.holds { "ok" } else { "violated" },
                delta: Some(*delta),
                tighter_vertices: Some(report.tighter_than_theorem()),
            }),
        };
        Self {
            energy: theorem.energy,
            pair_index,
            residual: pair.residual,
            sup_norm: theorem.sup_norm,
            tolerance: theorem.tolerance,
            theorem_bound_ok: theorem.holds,
            min_slack: theorem.min_slack(),
            worst_vertex: theorem.worst_vertex(),
            argmax: theorem.argmax,
            argmax_allowed: theorem.argmax_allowed,
            refined_bound_ok: refined.map(|r| r.holds),
            walk,
            rows,
        }
    }

    /// Every requested bound holds.
    pub fn all_hold(&self) -> bool {
        self.theorem_bound_ok
            && self.refined_bound_ok.unwrap_or(true)
            && self.walk.as_ref().is_none_or(|w| w.status != "violated")
    }

    pub fn to_json(&self) -> Result<String> {
        to_json(self)
    }

    pub fn to_csv(&self) -> Result<String> {
        csv_string(
            &VERIFY_CSV_HEADER,
            self.rows.iter().map(|r| {
                vec![
                    r.v.to_string(),
                    r.abs_phi.to_string(),
                    r.rho.to_string(),
                    r.node_cost.to_string(),
                    r.bound.to_string(),
                    r.slack.to_string(),
                    cell(r.refined_bound),
                    cell(r.refined_slack),
                    cell(r.walk_bound),
                    cell(r.walk_slack),
                ]
            }),
        )
    }
}

#[derive(Debug, Serialize)]
struct AgmonRow {
    v: usize,
    potential: f64,
    node_cost: f64,
    #[serde(serialize_with = "distance")]
    rho: f64,
    next_hop: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_distance")]
    fmt: Option<f64>,
}

#[derive(Debug, Serialize)]
struct AgmonDoc {
    energy: f64,
    allowed_region_empty: bool,
    rows: Vec<AgmonRow>,
}

/// Agmon field (and optionally the edge-cost comparison distance) as JSON or CSV.
pub struct AgmonExport<'a> {
    pub field: &'a AgmonField,
    pub potential: &'a Potential,
    pub fmt: Option<&'a [f64]>,
}

impl AgmonExport<'_> {
    fn doc(&self) -> AgmonDoc {
        AgmonDoc {
            energy: self.field.energy,
            allowed_region_empty: self.field.rho.iter().all(|r| r.is_infinite()),
            rows: (0..self.field.rho.len())
                .map(|v| AgmonRow {
                    v,
                    potential: self.potential[v],
                    node_cost: self.field.node_cost[v],
                    rho: self.field.rho[v],
                    next_hop: self.field.next_hop[v],
                    fmt: self.fmt.map(|f| f[v]),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        to_json(&self.doc())
    }

    pub fn to_csv(&self) -> Result<String> {
        csv_string(
            &AGMON_CSV_HEADER,
            self.doc().rows.into_iter().map(|r| {
                vec![
                    r.v.to_string(),
                    r.potential.to_string(),
                    r.node_cost.to_string(),
                    r.rho.to_string(),
                    r.next_hop.map(|x| x.to_string()).unwrap_or_default(),
                    cell(r.fmt),
                ]
            }),
        )
    }
}

#[derive(Debug, Serialize)]
struct WalkRow {
    v: usize,
    abs_phi: f64,
    exact_moment: f64,
    mc_estimate: Option<f64>,
    mc_std_error: Option<f64>,
    walk_bound: f64,
    theorem_bound: f64,
    slack: f64,
    tighter: bool,
}

#[derive(Debug, Serialize)]
struct WalkDoc {
    energy: f64,
    delta: f64,
    samples: usize,
    seed: u64,
    walk_bound_ok: bool,
    rows: Vec<WalkRow>,
}

/// Random-walk bound data next to the theorem bound.
pub struct WalkExport<'a> {
    pub walk: &'a WalkBound,
    pub report: &'a BoundReport,
}

impl WalkExport<'_> {
    fn doc(&self) -> WalkDoc {
        let mc = self.walk.mc_moment.as_ref();
        WalkDoc {
            energy: self.walk.energy,
            delta: self.walk.delta,
            samples: self.walk.sample_count,
            seed: self.walk.seed,
            walk_bound_ok: self.report.holds,
            rows: self
                .report
                .rows
                .iter()
                .map(|r| WalkRow {
                    v: r.vertex,
                    abs_phi: r.abs_phi,
                    exact_moment: self.walk.exact_moment[r.vertex],
                    mc_estimate: mc.map(|m| m[r.vertex].estimate),
                    mc_std_error: mc.map(|m| m[r.vertex].std_error),
                    walk_bound: r.bound,
                    theorem_bound: r.theorem_bound,
                    slack: r.slack,
                    tighter: r.bound < r.theorem_bound,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        to_json(&self.doc())
    }

    pub fn to_csv(&self) -> Result<String> {
        csv_string(
            &WALK_CSV_HEADER,
            self.doc().rows.into_iter().map(|r| {
                vec![
                    r.v.to_string(),
                    r.abs_phi.to_string(),
                    r.exact_moment.to_string(),
                    cell(r.mc_estimate),
                    cell(r.mc_std_error),
                    r.walk_bound.to_string(),
                    r.theorem_bound.to_string(),
                    r.slack.to_string(),
                    r.tighter.to_string(),
                ]
            }),
        )
    }
}

#[derive(Debug, Serialize)]
struct ExperimentDoc<'a> {
    q: usize,
    k: usize,
    w_mag: f64,
    n: usize,
    hub: usize,
    lambda1: f64,
    hub_bound: f64,
    lambda1_within_hub_bound: bool,
    hub_value: f64,
    level_profile: &'a [f64],
    level_spread: &'a [f64],
    ratios: &'a [f64],
    predicted_ratio: f64,
    recurrence_residual: f64,
    level_node_cost: &'a [f64],
    empirical_rate: &'a [f64],
    rate_ratio: &'a [f64],
    #[serde(serialize_with = "distance")]
    root_rho: f64,
    root_log_decay: f64,
    sharpness_ratio: f64,
}

/// Experiment record (JSON) and level profile (CSV).
pub struct ExperimentExport<'a> {
    pub experiment: &'a TreeExperiment,
    pub comparison: &'a DecayComparison,
    pub recurrence_residual: f64,
}

impl ExperimentExport<'_> {
    pub fn to_json(&self) -> Result<String> {
        let e = self.experiment;
        let c = self.comparison;
        to_json(&ExperimentDoc {
            q: e.q,
            k: e.k,
            w_mag: e.w_mag,
            n: e.graph.n(),
            hub: e.hub,
            lambda1: e.lambda1,
            hub_bound: e.hub_bound(),
            lambda1_within_hub_bound: e.lambda1 <= e.hub_bound(),
            hub_value: e.hub_value,
            level_profile: &e.level_profile,
            level_spread: &e.level_spread,
            ratios: &e.ratios,
            predicted_ratio: e.q as f64 / e.w_mag,
            recurrence_residual: self.recurrence_residual,
            level_node_cost: &c.level_node_cost,
            empirical_rate: &c.empirical_rate,
            rate_ratio: &c.rate_ratio,
            root_rho: c.root_rho,
            root_log_decay: c.root_log_decay,
            sharpness_ratio: c.sharpness_ratio,
        })
    }

    pub fn level_csv(&self) -> Result<String> {
        let e = self.experiment;
        let c = self.comparison;
        csv_string(
            &LEVEL_CSV_HEADER,
            (0..e.level_profile.len()).map(|i| {
                vec![
                    i.to_string(),
                    e.level_profile[i].to_string(),
                    c.level_node_cost[i].to_string(),
                    c.level_rho[i].to_string(),
                ]
            }),
        )
    }
}
