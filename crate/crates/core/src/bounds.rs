//! Diameter and distance bounds driven by a positive curvature lower bound.
//!
//! | Record | Bound | Requires |
//! |--------|-------|----------|
//! | `bonnet-myers-infty` | `diam_d ≤ 2𝒟/K` | connected, `CD(K,∞)`, `K > 0` |
//! | `distance-infty` | `ρ(x,y) ≤ (√(2Deg x) + √(2Deg y))/K` | same |
//! | `fathi-shu` | `ρ(x,y) ≤ 2√2 (√Deg x + √Deg y)/K` | same |
//! | `bonnet-myers-n` | `diam_ρ ≤ π√(n/K)` | connected, `CD(K,n)`, `K > 0`, `n < ∞` |
//! | `horn-et-al` | `diam_d ≤ 2π√(6𝒟n/K)` | same |
//! | `improved-n` | `diam_d ≤ π√(𝒟n/(2K))` | same |
//! | `metric-chain` | `diam_d ≤ √(𝒟/2)·diam_ρ` | connected |
//!
//! `K` is always the best constant computed at the record's own dimension.
//! Measured resistance values are certified lower bounds, so a bound on `ρ`
//! is checked with twice the solver tolerance of slack.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::curvature::{graph_curvature, Dimension, GraphCurvature};
use crate::error::{Error, Result};
use crate::graph::{format_real, Diameter, DistanceTable, MeasureConvention, WeightedGraph};
use crate::metrics::{
    diameter_of, metric_sandwich, resistance_table, PairBudget, ResistanceDiameter,
    ResistanceOptions, SandwichRow,
};
use crate::real_json;
use crate::semigroup::{
    check_cd_infty_envelope, check_cd_n_envelope, default_t_grid, derivative_bound_report,
    random_function, HeatPropagator,
};

/// Slack tolerance for bounds on integral or exactly computed quantities.
pub const SLACK_TOL: f64 = 1e-6;
/// Relative tolerance of the sharpness flag.
pub const SHARP_TOL: f64 = 1e-6;
/// Computed curvature must exceed this to count as positive.
pub const POSITIVE_K: f64 = 1e-9;

pub fn bonnet_myers_infty_bound(max_degree: f64, k: f64) -> f64 {
    2.0 * max_degree / k
}

pub fn distance_infty_bound(deg_x: f64, deg_y: f64, k: f64) -> f64 {
    ((2.0 * deg_x).sqrt() + (2.0 * deg_y).sqrt()) / k
}

pub fn fathi_shu_bound(deg_x: f64, deg_y: f64, k: f64) -> f64 {
    2.0 * 2f64.sqrt() * (deg_x.sqrt() + deg_y.sqrt()) / k
}

pub fn bonnet_myers_n_bound(n: f64, k: f64) -> f64 {
    std::f64::consts::PI * (n / k).sqrt()
}

pub fn horn_bound(max_degree: f64, n: f64, k: f64) -> f64 {
    2.0 * std::f64::consts::PI * (6.0 * max_degree * n / k).sqrt()
}

pub fn improved_n_bound(max_degree: f64, n: f64, k: f64) -> f64 {
    std::f64::consts::PI * (max_degree * n / (2.0 * k)).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Sharp,
    Violated,
    NotApplicable(String),
}

impl Verdict {
    pub fn is_applicable(&self) -> bool {
        !matches!(self, Verdict::NotApplicable(_))
    }

    pub fn label(&self) -> &str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Sharp => "SHARP",
            Verdict::Violated => "VIOLATED",
            Verdict::NotApplicable(_) => "NOT-APPLICABLE",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRecord {
    pub name: String,
    pub n: Option<Dimension>,
    /// Curvature constant used.
    #[serde(with = "real_json::option")]
    pub k: Option<f64>,
    #[serde(with = "real_json::option")]
    pub bound: Option<f64>,
    #[serde(with = "real_json::option")]
    pub measured: Option<f64>,
    #[serde(with = "real_json::option")]
    pub slack: Option<f64>,
    /// `bound / measured`.
    #[serde(with = "real_json::option")]
    pub ratio: Option<f64>,
    pub sharp: bool,
    pub verdict: Verdict,
}

impl BoundRecord {
    fn not_applicable(name: &str, n: Option<Dimension>, reason: impl Into<String>) -> Self {
        Self {
            name: name.to_owned(),
            n,
            k: None,
            bound: None,
            measured: None,
            slack: None,
            ratio: None,
            sharp: false,
            verdict: Verdict::NotApplicable(reason.into()),
        }
    }

    fn evaluate(name: &str, n: Option<Dimension>, k: f64, bound: f64, measured: f64, tol: f64) -> Self {
        let slack = bound - measured;
        let sharp = slack.abs() <= SHARP_TOL * bound.abs().max(1.0);
        let verdict = if slack < -tol {
            Verdict::Violated
        } else if sharp {
            Verdict::Sharp
        } else {
            Verdict::Holds
        };
        Self {
            name: name.to_owned(),
            n,
            k: Some(k),
            bound: Some(bound),
            measured: Some(measured),
            slack: Some(slack),
            ratio: (measured != 0.0).then(|| bound / measured),
            sharp,
            verdict,
        }
    }

    pub fn is_violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairBoundRow {
    pub x: String,
    pub y: String,
    #[serde(with = "real_json")]
    pub deg_x: f64,
    #[serde(with = "real_json")]
    pub deg_y: f64,
    #[serde(with = "real_json")]
    pub rho: f64,
    /// `(√(2Deg x) + √(2Deg y))/K`.
    #[serde(with = "real_json")]
    pub bound: f64,
    #[serde(with = "real_json")]
    pub fathi_shu: f64,
    #[serde(with = "real_json")]
    pub slack: f64,
    pub sharp: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairBoundTable {
    pub verdict: Verdict,
    #[serde(with = "real_json::option")]
    pub k: Option<f64>,
    pub rows: Vec<PairBoundRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub n: Dimension,
    pub rows: Vec<BoundRecord>,
    /// `horn / improved`, identically `4√3`.
    #[serde(with = "real_json")]
    pub horn_over_improved: f64,
    /// `fathi-shu / distance-infty`, identically `2`.
    #[serde(with = "real_json")]
    pub fathi_over_distance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeSummary {
    pub kind: &'static str,
    pub n: Dimension,
    #[serde(with = "real_json")]
    pub k: f64,
    pub functions: usize,
    pub first_seed: u64,
    #[serde(with = "real_json")]
    pub max_scaled_violation: f64,
    /// Grid points where `|∂_t P_t f|` exceeded its pointwise bound.
    pub derivative_exceedances: usize,
    pub passed: bool,
}

/// Knobs shared by all report sections.
#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub name: String,
    pub convention: Option<MeasureConvention>,
    pub rho: ResistanceOptions,
    /// `None` picks [`PairBudget::default_for`].
    pub budget: Option<PairBudget>,
    /// `None` picks `{1, 2, 5, 10, |V|, ∞}`.
    pub n_grid: Option<Vec<Dimension>>,
    pub seed: u64,
    pub functions: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            name: "graph".to_owned(),
            convention: None,
            rho: ResistanceOptions::default(),
            budget: None,
            n_grid: None,
            seed: 0,
            functions: 20,
        }
    }
}

pub fn default_n_grid(g: &WeightedGraph) -> Vec<Dimension> {
    let mut grid: Vec<Dimension> = [1.0, 2.0, 5.0, 10.0, g.len().max(1) as f64]
        .into_iter()
        .map(Dimension::Finite)
        .collect();
    grid.sort_by(|a, b| a.value().total_cmp(&b.value()));
    grid.dedup();
    grid.push(Dimension::Infinite);
    grid
}

/// Lazily computed ingredients shared by the individual bound checks.
pub struct Analysis<'g> {
    g: &'g WeightedGraph,
    opts: ReportOptions,
    curvature: Vec<(Dimension, GraphCurvature)>,
    hops: Option<DistanceTable>,
    rho: Option<ResistanceDiameter>,
}

impl<'g> Analysis<'g> {
    pub fn new(g: &'g WeightedGraph, opts: ReportOptions) -> Self {
        Self {
            g,
            opts,
            curvature: Vec::new(),
            hops: None,
            rho: None,
        }
    }

    pub fn graph(&self) -> &'g WeightedGraph {
        self.g
    }

    pub fn curvature(&mut self, n: Dimension) -> Result<&GraphCurvature> {
        let pos = match self.curvature.iter().position(|(m, _)| *m == n) {
            Some(p) => p,
            None => {
                let c = graph_curvature(self.g, n)?;
                self.curvature.push((n, c));
                self.curvature.len() - 1
            }
        };
        Ok(&self.curvature[pos].1)
    }

    fn k(&mut self, n: Dimension) -> Result<f64> {
        Ok(self.curvature(n)?.value)
    }

    pub fn hops(&mut self) -> &DistanceTable {
        let g = self.g;
        self.hops.get_or_insert_with(|| g.combinatorial_distances())
    }

    pub fn combinatorial_diameter(&mut self) -> Diameter {
        self.hops().diameter()
    }

    /// Resistance table and diameter; fails on disconnected graphs.
    pub fn resistance(&mut self) -> Result<&ResistanceDiameter> {
        if self.rho.is_none() {
            if !self.g.is_connected() {
                return Err(Error::Disconnected);
            }
            let budget = self.opts.budget.unwrap_or_else(|| PairBudget::default_for(self.g));
            let table = resistance_table(self.g, &self.opts.rho, budget)?;
            self.rho = Some(diameter_of(table));
        }
        Ok(self.rho.as_ref().unwrap())
    }

    fn rho_tol(&self) -> f64 {
        SLACK_TOL + 2.0 * self.opts.rho.tol
    }

    /// Connectivity and positivity of `K`, in that order.
    fn hypotheses(&mut self, n: Dimension) -> Result<std::result::Result<f64, String>> {
        if !self.g.is_connected() {
            return Ok(Err("disconnected".to_owned()));
        }
        let k = self.k(n)?;
        if !(k > POSITIVE_K) {
            return Ok(Err(format!("K(n={n}) = {k} is not positive")));
        }
        Ok(Ok(k))
    }

    pub fn bonnet_myers_infty(&mut self) -> Result<BoundRecord> {
        const NAME: &str = "bonnet-myers-infty";
        let n = Some(Dimension::Infinite);
        let k = match self.hypotheses(Dimension::Infinite)? {
            Ok(k) => k,
            Err(reason) => return Ok(BoundRecord::not_applicable(NAME, n, reason)),
        };
        let diam = self.combinatorial_diameter().finite().ok_or(Error::Disconnected)?;
        let bound = bonnet_myers_infty_bound(self.g.max_degree(), k);
        Ok(BoundRecord::evaluate(NAME, n, k, bound, diam as f64, SLACK_TOL))
    }

    pub fn distance_bound_check(&mut self) -> Result<PairBoundTable> {
        let k = match self.hypotheses(Dimension::Infinite)? {
            Ok(k) => k,
            Err(reason) => {
                return Ok(PairBoundTable {
                    verdict: Verdict::NotApplicable(reason),
                    k: None,
                    rows: Vec::new(),
                })
            }
        };
        let tol = self.rho_tol();
        let g = self.g;
        let rows: Vec<PairBoundRow> = self
            .resistance()?
            .results
            .iter()
            .map(|r| {
                let (dx, dy) = (g.degree(r.x), g.degree(r.y));
                let bound = distance_infty_bound(dx, dy, k);
                let slack = bound - r.value;
                PairBoundRow {
                    x: g.id(r.x).to_owned(),
                    y: g.id(r.y).to_owned(),
                    deg_x: dx,
                    deg_y: dy,
                    rho: r.value,
                    bound,
                    fathi_shu: fathi_shu_bound(dx, dy, k),
                    slack,
                    sharp: slack.abs() <= tol,
                    holds: slack >= -tol,
                }
            })
            .collect();
        let verdict = if rows.iter().any(|r| !r.holds) {
            Verdict::Violated
        } else if rows.iter().any(|r| r.sharp) {
            Verdict::Sharp
        } else {
            Verdict::Holds
        };
        Ok(PairBoundTable {
            verdict,
            k: Some(k),
            rows,
        })
    }

    fn finite_n_hypotheses(&mut self, n: Dimension) -> Result<std::result::Result<f64, String>> {
        if !n.is_finite() {
            return Ok(Err("n is infinite".to_owned()));
        }
        self.hypotheses(n)
    }

    pub fn bonnet_myers_n(&mut self, n: Dimension) -> Result<BoundRecord> {
        const NAME: &str = "bonnet-myers-n";
        let k = match self.finite_n_hypotheses(n)? {
            Ok(k) => k,
            Err(reason) => return Ok(BoundRecord::not_applicable(NAME, Some(n), reason)),
        };
        let tol = self.rho_tol();
        let measured = self.resistance()?.value;
        let bound = bonnet_myers_n_bound(n.value(), k);
        Ok(BoundRecord::evaluate(NAME, Some(n), k, bound, measured, tol))
    }

    /// Chain `diam_d ≤ √(𝒟/2)·diam_ρ`.
    pub fn metric_chain(&mut self) -> Result<BoundRecord> {
        const NAME: &str = "metric-chain";
        if !self.g.is_connected() {
            return Ok(BoundRecord::not_applicable(NAME, None, "disconnected"));
        }
        let d = self.combinatorial_diameter().finite().ok_or(Error::Disconnected)?;
        let tol = self.rho_tol();
        let rho = self.resistance()?.value;
        let bound = (self.g.max_degree() / 2.0).sqrt() * rho;
        let mut rec = BoundRecord::evaluate(NAME, None, f64::NAN, bound, d as f64, tol);
        rec.k = None;
        Ok(rec)
    }

    pub fn literature_comparison(&mut self, n: Dimension) -> Result<Comparison> {
        let big_d = self.g.max_degree();
        let mut rows = Vec::with_capacity(4);
        let mut horn_over_improved = horn_bound(1.0, 1.0, 1.0) / improved_n_bound(1.0, 1.0, 1.0);
        match self.finite_n_hypotheses(n)? {
            Ok(k) => {
                let d = self.combinatorial_diameter().finite().ok_or(Error::Disconnected)? as f64;
                let (horn, improved) = (horn_bound(big_d, n.value(), k), improved_n_bound(big_d, n.value(), k));
                horn_over_improved = horn / improved;
                rows.push(BoundRecord::evaluate("horn-et-al", Some(n), k, horn, d, SLACK_TOL));
                rows.push(BoundRecord::evaluate("improved-n", Some(n), k, improved, d, SLACK_TOL));
            }
            Err(reason) => {
                rows.push(BoundRecord::not_applicable("horn-et-al", Some(n), reason.clone()));
                rows.push(BoundRecord::not_applicable("improved-n", Some(n), reason));
            }
        }
        let table = self.distance_bound_check()?;
        let mut fathi_over_distance = fathi_shu_bound(1.0, 1.0, 1.0) / distance_infty_bound(1.0, 1.0, 1.0);
        match (&table.verdict, table.k) {
            (Verdict::NotApplicable(_), _) | (_, None) => {
                let reason = match &table.verdict {
                    Verdict::NotApplicable(r) => r.clone(),
                    _ => "no curvature".to_owned(),
                };
                rows.push(BoundRecord::not_applicable("distance-infty", Some(Dimension::Infinite), reason.clone()));
                rows.push(BoundRecord::not_applicable("fathi-shu", Some(Dimension::Infinite), reason));
            }
            (_, Some(k)) => {
                let tol = self.rho_tol();
                let tightest = table
                    .rows
                    .iter()
                    .min_by(|a, b| a.slack.total_cmp(&b.slack));
                let inf = Some(Dimension::Infinite);
                match tightest {
                    Some(r) => {
                        fathi_over_distance = r.fathi_shu / r.bound;
                        rows.push(BoundRecord::evaluate("distance-infty", inf, k, r.bound, r.rho, tol));
                        rows.push(BoundRecord::evaluate("fathi-shu", inf, k, r.fathi_shu, r.rho, tol));
                    }
                    None => {
                        rows.push(BoundRecord::not_applicable("distance-infty", inf, "no vertex pairs"));
                        rows.push(BoundRecord::not_applicable("fathi-shu", inf, "no vertex pairs"));
                    }
                }
            }
        }
        Ok(Comparison {
            n,
            rows,
            horn_over_improved,
            fathi_over_distance,
        })
    }

    fn envelope_summaries(&mut self) -> Result<Vec<EnvelopeSummary>> {
        let g = self.g;
        let grid = self.n_grid();
        let mut out = Vec::new();
        let prop = HeatPropagator::build(g)?;
        let functions: Vec<Vec<f64>> = (0..self.opts.functions as u64)
            .map(|i| random_function(g.len(), self.opts.seed.wrapping_add(i)))
            .collect();
        let k_inf = self.k(Dimension::Infinite)?;
        for n in grid {
            let k = self.k(n)?;
            if !(k > POSITIVE_K) || !k.is_finite() {
                continue;
            }
            let t_grid = default_t_grid(k);
            let mut worst = f64::NEG_INFINITY;
            let mut exceed = 0;
            for f in &functions {
                let check = match n {
                    Dimension::Infinite => check_cd_infty_envelope(g, &prop, k, f, &t_grid)?,
                    Dimension::Finite(_) => check_cd_n_envelope(g, &prop, k, n, f, &t_grid)?,
                };
                worst = worst.max(check.max_scaled);
                // The CD(K,n) constant is also a CD(K,∞) constant since K(n) ≤ K(∞).
                exceed += derivative_bound_report(g, &prop, k.min(k_inf), n, f, &t_grid)?.exceedances;
            }
            out.push(EnvelopeSummary {
                kind: if n.is_finite() { "cd-n" } else { "cd-infty" },
                n,
                k,
                functions: functions.len(),
                first_seed: self.opts.seed,
                max_scaled_violation: worst,
                derivative_exceedances: exceed,
                passed: worst <= crate::semigroup::ENVELOPE_TOL && exceed == 0,
            });
        }
        Ok(out)
    }

    fn n_grid(&self) -> Vec<Dimension> {
        self.opts.n_grid.clone().unwrap_or_else(|| default_n_grid(self.g))
    }

    pub fn full_report(mut self) -> Result<BoundsReport> {
        let g = self.g;
        let grid = self.n_grid();
        let connected = g.is_connected();

        let k_inf = self.curvature(Dimension::Infinite)?;
        let (k_infty, k_infty_vertex) = (k_inf.value, k_inf.argmin.map(|v| g.id(v).to_owned()));
        let mut curvature = Vec::new();
        for &n in &grid {
            let c = self.curvature(n)?;
            curvature.push(CurvatureRow {
                n,
                k: c.value,
                vertex: c.argmin.map(|v| g.id(v).to_owned()),
            });
        }
        let diam_d = self.combinatorial_diameter();
        let (diam_rho, diam_rho_pair, sandwich) = if connected {
            let rho_tol = self.opts.rho.tol;
            let r = self.resistance()?;
            let pair = r.pair.map(|(x, y)| (g.id(x).to_owned(), g.id(y).to_owned()));
            let sandwich = metric_sandwich(g, &r.results, rho_tol)?;
            (Some(r.value), pair, sandwich)
        } else {
            (None, None, Vec::new())
        };

        let mut records = vec![self.bonnet_myers_infty()?, self.metric_chain()?];
        let pairs = self.distance_bound_check()?;
        let mut ratios = Vec::new();
        for &n in grid.iter().filter(|n| n.is_finite()) {
            records.push(self.bonnet_myers_n(n)?);
            let cmp = self.literature_comparison(n)?;
            ratios.push((cmp.horn_over_improved, cmp.fathi_over_distance));
            let keep = if records.iter().any(|r| r.name == "distance-infty") {
                2
            } else {
                4
            };
            records.extend(cmp.rows.into_iter().take(keep));
        }
        if !grid.iter().any(|n| n.is_finite()) {
            let cmp = self.literature_comparison(Dimension::Finite(1.0))?;
            ratios.push((cmp.horn_over_improved, cmp.fathi_over_distance));
            records.extend(cmp.rows.into_iter().skip(2));
        }
        let envelopes = self.envelope_summaries()?;

        let hypercube = g.hypercube_dimension();
        let mut alerts = Vec::new();
        for r in records.iter().filter(|r| r.name == "bonnet-myers-infty" && r.sharp) {
            if hypercube.is_none() {
                alerts.push(format!(
                    "{} is sharp on a graph that is not a hypercube (bound {})",
                    r.name,
                    r.bound.unwrap_or(f64::NAN)
                ));
            }
        }
        let (horn_over_improved, fathi_over_distance) = ratios.first().copied().unwrap_or((
            horn_bound(1.0, 1.0, 1.0) / improved_n_bound(1.0, 1.0, 1.0),
            fathi_shu_bound(1.0, 1.0, 1.0) / distance_infty_bound(1.0, 1.0, 1.0),
        ));

        Ok(BoundsReport {
            name: self.opts.name.clone(),
            vertices: g.len(),
            edges: g.edge_count(),
            convention: self.opts.convention,
            connected,
            hypercube_dimension: hypercube,
            max_degree: g.max_degree(),
            k_infty,
            k_infty_vertex,
            curvature,
            diam_d,
            diam_rho,
            diam_rho_pair,
            rho_tol: self.opts.rho.tol,
            seed: self.opts.seed,
            records,
            pairs,
            sandwich,
            envelopes,
            horn_over_improved,
            fathi_over_distance,
            alerts,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvatureRow {
    pub n: Dimension,
    #[serde(with = "real_json")]
    pub k: f64,
    pub vertex: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    pub convention: Option<MeasureConvention>,
    pub connected: bool,
    pub hypercube_dimension: Option<usize>,
    #[serde(with = "real_json")]
    pub max_degree: f64,
    #[serde(with = "real_json")]
    pub k_infty: f64,
    pub k_infty_vertex: Option<String>,
    pub curvature: Vec<CurvatureRow>,
    pub diam_d: Diameter,
    #[serde(with = "real_json::option")]
    pub diam_rho: Option<f64>,
    pub diam_rho_pair: Option<(String, String)>,
    #[serde(with = "real_json")]
    pub rho_tol: f64,
    pub seed: u64,
    pub records: Vec<BoundRecord>,
    pub pairs: PairBoundTable,
    pub sandwich: Vec<SandwichRow>,
    pub envelopes: Vec<EnvelopeSummary>,
    #[serde(with = "real_json")]
    pub horn_over_improved: f64,
    #[serde(with = "real_json")]
    pub fathi_over_distance: f64,
    /// Observations that deserve attention, e.g. sharpness off the hypercube family.
    pub alerts: Vec<String>,
}

impl BoundsReport {
    pub fn record(&self, name: &str) -> Option<&BoundRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn records_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a BoundRecord> + 'a {
        self.records.iter().filter(move |r| r.name == name)
    }

    /// Every applicable bound or check that failed.
    pub fn violations(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .records
            .iter()
            .filter(|r| r.is_violated())
            .map(|r| {
                format!(
                    "{} (n={}): bound {} < measured {}",
                    r.name,
                    r.n.map_or("-".to_owned(), |n| n.to_string()),
                    r.bound.unwrap_or(f64::NAN),
                    r.measured.unwrap_or(f64::NAN)
                )
            })
            .collect();
        out.extend(
            self.pairs
                .rows
                .iter()
                .filter(|r| !r.holds)
                .map(|r| format!("distance-infty at ({}, {}): rho {} > bound {}", r.x, r.y, r.rho, r.bound)),
        );
        out.extend(self.envelopes.iter().filter(|e| !e.passed).map(|e| {
            format!(
                "{} envelope (n={}, K={}): scaled violation {}, {} derivative exceedances",
                e.kind, e.n, e.k, e.max_scaled_violation, e.derivative_exceedances
            )
        }));
        out
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Records as CSV: `name,n,k,bound,measured,slack,ratio,sharp,verdict`.
    pub fn records_csv(&self) -> String {
        let mut out = String::from("name,n,k,bound,measured,slack,ratio,sharp,verdict\n");
        let opt = |v: Option<f64>| v.map(format_real).unwrap_or_default();
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.name,
                r.n.map(|n| format_real(n.value())).unwrap_or_default(),
                opt(r.k),
                opt(r.bound),
                opt(r.measured),
                opt(r.slack),
                opt(r.ratio),
                r.sharp,
                r.verdict.label()
            );
        }
        out
    }

    /// Per-pair table as CSV.
    pub fn pairs_csv(&self) -> String {
        let mut out = String::from("x,y,deg_x,deg_y,rho,bound,fathi_shu,slack,sharp,holds\n");
        for r in &self.pairs.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.x,
                r.y,
                format_real(r.deg_x),
                format_real(r.deg_y),
                format_real(r.rho),
                format_real(r.bound),
                format_real(r.fathi_shu),
                format_real(r.slack),
                r.sharp,
                r.holds
            );
        }
        out
    }

    /// Human-readable aligned summary.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let num = |v: f64| {
            if v.is_finite() {
                format!("{v:.6}")
            } else if v > 0.0 {
                "∞".to_owned()
            } else {
                format!("{v}")
            }
        };
        let opt = |v: Option<f64>| v.map_or("-".to_owned(), num);
        let _ = writeln!(out, "graph        {} ({} vertices, {} edges)", self.name, self.vertices, self.edges);
        if let Some(c) = self.convention {
            let _ = writeln!(out, "measure      {c}");
        }
        let _ = writeln!(out, "connected    {}", self.connected);
        if let Some(d) = self.hypercube_dimension {
            let _ = writeln!(out, "hypercube    Q_{d}");
        }
        let _ = writeln!(out, "max degree   {}", num(self.max_degree));
        let _ = writeln!(out, "K(inf)       {}", num(self.k_infty));
        let _ = writeln!(out, "diam_d       {}", self.diam_d);
        let _ = writeln!(out, "diam_rho     {}", opt(self.diam_rho));
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<6} {:>12}", "n", "K(n)");
        for c in &self.curvature {
            let _ = writeln!(out, "{:<6} {:>12}", c.n.to_string(), num(c.k));
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<20} {:>6} {:>12} {:>12} {:>12} {:>10}  verdict",
            "bound", "n", "value", "measured", "slack", "ratio"
        );
        for r in &self.records {
            let verdict = match &r.verdict {
                Verdict::NotApplicable(reason) => format!("NOT-APPLICABLE ({reason})"),
                v => v.label().to_owned(),
            };
            let _ = writeln!(
                out,
                "{:<20} {:>6} {:>12} {:>12} {:>12} {:>10}  {}",
                r.name,
                r.n.map_or("-".to_owned(), |n| n.to_string()),
                opt(r.bound),
                opt(r.measured),
                opt(r.slack),
                opt(r.ratio),
                verdict
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "ratios       horn/improved = {}  fathi-shu/distance-infty = {}",
            num(self.horn_over_improved),
            num(self.fathi_over_distance)
        );
        for e in &self.envelopes {
            let _ = writeln!(
                out,
                "envelope     {:<8} n={:<5} K={:<10} max scaled violation {:.3e}  {}",
                e.kind,
                e.n.to_string(),
                num(e.k),
                e.max_scaled_violation,
                if e.passed { "ok" } else { "FAILED" }
            );
        }
        for a in &self.alerts {
            let _ = writeln!(out, "ALERT        {a}");
        }
        out
    }
}

pub fn bonnet_myers_infty(g: &WeightedGraph) -> Result<BoundRecord> {
    Analysis::new(g, ReportOptions::default()).bonnet_myers_infty()
}

pub fn distance_bound_check(g: &WeightedGraph, opts: &ReportOptions) -> Result<PairBoundTable> {
    Analysis::new(g, opts.clone()).distance_bound_check()
}

pub fn bonnet_myers_n(g: &WeightedGraph, n: Dimension, opts: &ReportOptions) -> Result<BoundRecord> {
    Analysis::new(g, opts.clone()).bonnet_myers_n(n)
}

pub fn literature_comparison(g: &WeightedGraph, n: Dimension, opts: &ReportOptions) -> Result<Comparison> {
    Analysis::new(g, opts.clone()).literature_comparison(n)
}

pub fn full_report(g: &WeightedGraph, opts: &ReportOptions) -> Result<BoundsReport> {
    Analysis::new(g, opts.clone()).full_report()
}
