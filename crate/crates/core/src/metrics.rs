//! Resistance metric `ρ(x,y) = sup { f(y) − f(x) : ‖Γf‖_∞ ≤ 1 }`.
//!
//! Computing `ρ(x,y)` is a convex program: maximize the linear functional
//! `f ↦ f(y)` over `{f : f(x) = 0, Γ(f)(v) ≤ 1 ∀v}`, an intersection of
//! ellipsoidal cylinders. Every returned value comes with a feasible witness
//! and is therefore a certified lower bound.
//!
//! Two solvers are provided. [`Method::Barrier`] (default) is a log-barrier
//! interior-point method with Newton centering; its duality gap bounds the
//! distance to the supremum. [`Method::Supergradient`] is first-order ascent
//! with radial rescaling, started from the hop-distance function
//! `d(·,x)·√(2/𝒟)`.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::forms::gamma_at;
use crate::graph::WeightedGraph;
use crate::real_json;

/// Feasibility slack accepted on returned witnesses.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Slack of the `d`/`ρ` sandwich on top of twice the solver tolerance.
pub const SANDWICH_TOL: f64 = 1e-6;
/// Graphs below this many vertices evaluate all pairs by default.
pub const ALL_PAIRS_BELOW: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Barrier,
    Supergradient,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResistanceOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub method: Method,
}

impl Default for ResistanceOptions {
    fn default() -> Self {
        Self {
            tol: 1e-5,
            max_iter: 50_000,
            method: Method::Barrier,
        }
    }
}

impl ResistanceOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct ResistanceResult {
    pub x: usize,
    pub y: usize,
    /// Lower estimate of `ρ(x,y)`; equals `witness[y] − witness[x]`.
    pub value: f64,
    /// Vertex function with `witness[x] = 0` and `Γ(witness) ≤ 1`.
    pub witness: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl ResistanceResult {
    pub fn to_json(&self, g: &WeightedGraph, with_witness: bool) -> Value {
        let mut v = json!({
            "x": g.id(self.x),
            "y": g.id(self.y),
            "value": real_json::to_value(self.value),
            "converged": self.converged,
            "iterations": self.iterations,
        });
        if with_witness {
            v["witness"] = self.witness.iter().copied().map(real_json::to_value).collect();
        }
        v
    }
}

/// Quadratic constraints `Γ(f)(v) ≤ 1` over the free coordinates of one
/// connected component.
struct Program<'g> {
    g: &'g WeightedGraph,
    /// Component vertices in vertex order.
    members: Vec<usize>,
    /// Vertex → free-variable index (`None` for the anchor and outsiders).
    var: Vec<Option<usize>>,
    anchor: usize,
    target: usize,
}

impl<'g> Program<'g> {
    fn new(g: &'g WeightedGraph, anchor: usize, target: usize) -> Self {
        let comp = g.components();
        let members: Vec<usize> = (0..g.len()).filter(|&v| comp[v] == comp[anchor]).collect();
        let mut var = vec![None; g.len()];
        let mut k = 0;
        for &v in &members {
            if v != anchor {
                var[v] = Some(k);
                k += 1;
            }
        }
        Self {
            g,
            members,
            var,
            anchor,
            target,
        }
    }

    fn dim(&self) -> usize {
        self.members.len() - 1
    }

    fn max_gamma(&self, f: &[f64]) -> f64 {
        self.members
            .iter()
            .map(|&v| gamma_at(self.g, f, f, v))
            .fold(0.0, f64::max)
    }

    /// Scales `f` into the feasible set along the ray through the origin.
    fn rescale(&self, f: &mut [f64]) {
        let s = self.max_gamma(f);
        if s > 1.0 {
            let c = s.sqrt().recip();
            f.iter_mut().for_each(|v| *v *= c);
        }
    }

    /// Scales `f` onto the boundary, which can only increase `f(target)`.
    fn saturate(&self, f: &mut [f64]) {
        let s = self.max_gamma(f);
        if s > 0.0 {
            let c = s.sqrt().recip();
            f.iter_mut().for_each(|v| *v *= c);
            // Rounding can leave the maximum a few ulps above 1.
            self.rescale(f);
        }
    }

    /// Gradient of `Γ(f)(v)` over free variables, as sparse pairs.
    fn constraint_gradient(&self, f: &[f64], v: usize, out: &mut Vec<(usize, f64)>) {
        out.clear();
        let m = self.g.measure(v);
        let mut at_v = 0.0;
        for &(u, w) in self.g.neighbors(v) {
            let d = w * (f[u] - f[v]) / m;
            if let Some(i) = self.var[u] {
                out.push((i, d));
            }
            at_v -= d;
        }
        if let Some(i) = self.var[v] {
            out.push((i, at_v));
        }
    }

    /// Hop-distance start `c·d(·,x)·√(2/𝒟)`, feasible for `c ≤ 1`.
    fn hop_start(&self, c: f64) -> Vec<f64> {
        let scale = (2.0 / self.g.max_degree()).sqrt() * c;
        self.g
            .bfs(self.anchor)
            .iter()
            .map(|d| d.map_or(0.0, |d| d as f64 * scale))
            .collect()
    }
}

pub fn resistance_distance(
    g: &WeightedGraph,
    x: usize,
    y: usize,
    opts: &ResistanceOptions,
) -> Result<ResistanceResult> {
    for v in [x, y] {
        if v >= g.len() {
            return Err(Error::VertexOutOfRange(v));
        }
    }
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("rho tolerance {}", opts.tol)));
    }
    if x == y {
        return Ok(ResistanceResult {
            x,
            y,
            value: 0.0,
            witness: vec![0.0; g.len()],
            iterations: 0,
            converged: true,
        });
    }
    let comp = g.components();
    if comp[x] != comp[y] {
        return Err(Error::InfiniteResistance(g.id(x).to_owned(), g.id(y).to_owned()));
    }
    let program = Program::new(g, x, y);
    let (witness, iterations, converged) = match opts.method {
        Method::Barrier => barrier(&program, opts),
        Method::Supergradient => supergradient(&program, opts),
    };
    let value = witness[y] - witness[x];
    Ok(ResistanceResult {
        x,
        y,
        value,
        witness,
        iterations,
        converged,
    })
}

/// Tracks the best feasible iterate; the recorded value never decreases.
struct Best {
    value: f64,
    f: Vec<f64>,
}

impl Best {
    fn offer(&mut self, f: &[f64], target: usize) -> bool {
        if f[target] > self.value {
            self.value = f[target];
            self.f.copy_from_slice(f);
            true
        } else {
            false
        }
    }
}

fn barrier(p: &Program<'_>, opts: &ResistanceOptions) -> (Vec<f64>, usize, bool) {
    let n = p.g.len();
    let dim = p.dim();
    let constraints = p.members.len() as f64;
    let target = p.var[p.target].expect("target is free");

    let mut f = p.hop_start(0.5);
    let mut best = Best {
        value: f64::NEG_INFINITY,
        f: vec![0.0; n],
    };
    let mut start = p.hop_start(1.0);
    p.rescale(&mut start);
    best.offer(&start, p.target);

    let slack = |f: &[f64]| -> Option<Vec<f64>> {
        p.members
            .iter()
            .map(|&v| {
                let s = 1.0 - gamma_at(p.g, f, f, v);
                (s > 0.0).then_some(s)
            })
            .collect()
    };
    let potential = |f: &[f64], t: f64, slack: &[f64]| -> f64 {
        t * f[p.target] + slack.iter().map(|s| s.ln()).sum::<f64>()
    };

    let mut t = 1.0;
    let mut iterations = 0;
    let mut grad_v = Vec::new();
    let mut converged = false;
    'outer: loop {
        // Newton centering for the current barrier weight.
        loop {
            if iterations >= opts.max_iter {
                break 'outer;
            }
            iterations += 1;
            let s = slack(&f).expect("iterates stay strictly feasible");
            let mut grad = DVector::zeros(dim);
            grad[target] = t;
            let mut hess = DMatrix::zeros(dim, dim);
            for (k, &v) in p.members.iter().enumerate() {
                let inv = s[k].recip();
                p.constraint_gradient(&f, v, &mut grad_v);
                for &(i, gi) in &grad_v {
                    grad[i] -= gi * inv;
                    for &(j, gj) in &grad_v {
                        hess[(i, j)] += gi * gj * inv * inv;
                    }
                }
                let m = p.g.measure(v);
                for &(u, w) in p.g.neighbors(v) {
                    let c = w / m * inv;
                    let (iu, iv) = (p.var[u], p.var[v]);
                    if let Some(a) = iu {
                        hess[(a, a)] += c;
                    }
                    if let Some(b) = iv {
                        hess[(b, b)] += c;
                    }
                    if let (Some(a), Some(b)) = (iu, iv) {
                        hess[(a, b)] -= c;
                        hess[(b, a)] -= c;
                    }
                }
            }
            let Some(chol) = hess.cholesky() else {
                break 'outer;
            };
            let step = chol.solve(&grad);
            let decrement = grad.dot(&step);
            if decrement <= 1e-14 * t.max(1.0) {
                break;
            }
            let phi = potential(&f, t, &s);
            let mut alpha = 1.0;
            let mut trial = f.clone();
            loop {
                for (v, slot) in p.var.iter().enumerate() {
                    if let Some(i) = slot {
                        trial[v] = f[v] + alpha * step[*i];
                    }
                }
                if let Some(ts) = slack(&trial) {
                    if potential(&trial, t, &ts) >= phi + 0.25 * alpha * decrement {
                        break;
                    }
                }
                alpha *= 0.5;
                if alpha < 1e-12 {
                    break;
                }
            }
            if alpha < 1e-12 {
                break;
            }
            f.copy_from_slice(&trial);
            if decrement < 1e-10 {
                break;
            }
        }
        let mut candidate = f.clone();
        p.saturate(&mut candidate);
        best.offer(&candidate, p.target);
        if constraints / t < 1e-2 * opts.tol {
            converged = true;
            break;
        }
        t *= 8.0;
    }
    (best.f, iterations, converged)
}

fn supergradient(p: &Program<'_>, opts: &ResistanceOptions) -> (Vec<f64>, usize, bool) {
    const ACTIVE: f64 = 1.0 - 1e-6;
    const STALL: usize = 50;
    let n = p.g.len();
    let mut f = p.hop_start(1.0);
    p.rescale(&mut f);
    let mut best = Best {
        value: f64::NEG_INFINITY,
        f: vec![0.0; n],
    };
    best.offer(&f, p.target);

    let mut anchor = best.value;
    let mut stall = 0;
    let mut grad_v = Vec::new();
    let mut direction = vec![0.0; n];
    let mut free_vertex = vec![usize::MAX; p.dim()];
    for (v, slot) in p.var.iter().enumerate() {
        if let Some(i) = slot {
            free_vertex[*i] = v;
        }
    }
    for k in 1..=opts.max_iter {
        direction.iter_mut().for_each(|d| *d = 0.0);
        let mut active = 0usize;
        for &v in &p.members {
            if gamma_at(p.g, &f, &f, v) > ACTIVE {
                active += 1;
                p.constraint_gradient(&f, v, &mut grad_v);
                for &(i, gi) in &grad_v {
                    direction[free_vertex[i]] += gi;
                }
            }
        }
        let pull = if active > 0 {
            0.5 * f[p.target] / active as f64
        } else {
            0.0
        };
        direction.iter_mut().for_each(|d| *d *= -pull);
        direction[p.target] += 1.0;
        let eta = 1.0 / (k as f64).sqrt();
        for (fv, dv) in f.iter_mut().zip(&direction) {
            *fv += eta * dv;
        }
        f[p.anchor] = 0.0;
        p.rescale(&mut f);

        let before = best.value;
        best.offer(&f, p.target);
        debug_assert!(best.value >= before);
        if best.value - anchor >= opts.tol {
            anchor = best.value;
            stall = 0;
        } else {
            stall += 1;
            if stall >= STALL {
                return (best.f, k, true);
            }
        }
    }
    (best.f, opts.max_iter, false)
}

/// Which unordered pairs to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairBudget {
    All,
    /// The given number of pairs with the largest hop distance.
    Largest(usize),
}

impl PairBudget {
    pub fn default_for(g: &WeightedGraph) -> Self {
        if g.len() < ALL_PAIRS_BELOW {
            PairBudget::All
        } else {
            PairBudget::Largest(4 * g.len())
        }
    }
}

/// Pairs `x < y` within a component, budgeted by hop distance (ties in index order).
pub fn resistance_pairs(g: &WeightedGraph, budget: PairBudget) -> Vec<(usize, usize)> {
    let table = g.combinatorial_distances();
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for x in 0..g.len() {
        for y in x + 1..g.len() {
            if let Some(d) = table.get(x, y) {
                pairs.push((x, y, d));
            }
        }
    }
    if let PairBudget::Largest(k) = budget {
        pairs.sort_by(|a, b| b.2.cmp(&a.2).then((a.0, a.1).cmp(&(b.0, b.1))));
        pairs.truncate(k);
        pairs.sort_by_key(|&(x, y, _)| (x, y));
    }
    pairs.into_iter().map(|(x, y, _)| (x, y)).collect()
}

pub fn resistance_table(
    g: &WeightedGraph,
    opts: &ResistanceOptions,
    budget: PairBudget,
) -> Result<Vec<ResistanceResult>> {
    resistance_pairs(g, budget)
        .into_par_iter()
        .map(|(x, y)| resistance_distance(g, x, y, opts))
        .collect()
}

#[derive(Debug, Clone)]
pub struct ResistanceDiameter {
    pub value: f64,
    pub pair: Option<(usize, usize)>,
    pub results: Vec<ResistanceResult>,
}

pub fn resistance_diameter(
    g: &WeightedGraph,
    opts: &ResistanceOptions,
    budget: PairBudget,
) -> Result<ResistanceDiameter> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let results = resistance_table(g, opts, budget)?;
    Ok(diameter_of(results))
}

/// Maximum over a precomputed table; first pair in order wins ties.
pub fn diameter_of(results: Vec<ResistanceResult>) -> ResistanceDiameter {
    let mut value = 0.0;
    let mut pair = None;
    for r in &results {
        if pair.is_none() || r.value > value {
            value = r.value;
            pair = Some((r.x, r.y));
        }
    }
    ResistanceDiameter {
        value,
        pair,
        results,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SandwichRow {
    pub x: String,
    pub y: String,
    pub d: usize,
    #[serde(with = "real_json")]
    pub rho: f64,
    /// `√(𝒟/2)·ρ`, an upper bound for `d`.
    #[serde(with = "real_json")]
    pub upper: f64,
    /// `d·√(2/𝒟)`, a lower bound for `ρ`.
    #[serde(with = "real_json")]
    pub lower: f64,
    /// `d = √(𝒟/2)·ρ` within tolerance.
    pub equality: bool,
}

/// Checks `d ≤ √(𝒟/2)·ρ` and `ρ ≥ d·√(2/𝒟)` on every pair of `table`.
pub fn metric_sandwich(
    g: &WeightedGraph,
    table: &[ResistanceResult],
    rho_tol: f64,
) -> Result<Vec<SandwichRow>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let tol = SANDWICH_TOL + 2.0 * rho_tol;
    let big_d = g.max_degree();
    let hops = g.combinatorial_distances();
    table
        .iter()
        .map(|r| {
            let d = hops.get(r.x, r.y).ok_or(Error::Disconnected)?;
            let upper = (big_d / 2.0).sqrt() * r.value;
            let lower = d as f64 * (2.0 / big_d).sqrt();
            let name = || format!("({}, {})", g.id(r.x), g.id(r.y));
            if d as f64 > upper + tol {
                return Err(Error::Invariant(format!(
                    "d = {d} exceeds sqrt(D/2)·rho = {upper} at {}",
                    name()
                )));
            }
            if r.value < lower - tol {
                return Err(Error::Invariant(format!(
                    "rho = {} below d·sqrt(2/D) = {lower} at {}",
                    r.value,
                    name()
                )));
            }
            Ok(SandwichRow {
                x: g.id(r.x).to_owned(),
                y: g.id(r.y).to_owned(),
                d,
                rho: r.value,
                upper,
                lower,
                equality: (d as f64 - upper).abs() <= tol,
            })
        })
        .collect()
}

pub fn metric_sandwich_report(
    g: &WeightedGraph,
    opts: &ResistanceOptions,
    budget: PairBudget,
) -> Result<Vec<SandwichRow>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let table = resistance_table(g, opts, budget)?;
    metric_sandwich(g, &table, opts.tol)
}
