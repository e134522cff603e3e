//! Bakry-Émery curvature `K_x(n)`: the largest `K` with
//! `Γ₂(f)(x) ≥ (1/n)(Δf(x))² + K·Γ(f)(x)` for every `f`.
//!
//! With the gauge `f(x) = 0` the problem is a generalized eigenvalue problem
//! for the pencil `(Q(n), g1)` where `Q(n) = q2 − (1/n)·lap·lapᵀ`. `g1` is
//! diagonal and positive on `S₁` and vanishes on `S₂`, so the `S₂` block is
//! eliminated first by a Schur complement, leaving an ordinary symmetric
//! eigenproblem on `S₁`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::forms::{local_forms, LocalForms};
use crate::graph::WeightedGraph;
use crate::real_json;

/// Eigenvalues of the 2-sphere block below this fraction of the largest are
/// treated as zero by the pseudo-inverse.
pub const PINV_CUTOFF: f64 = 1e-10;
/// Relative tolerance for the coupling block to lie in the range of the
/// 2-sphere block.
pub const RANGE_TOL: f64 = 1e-8;
/// Slack granted to `verify_cd`.
pub const CD_TOL: f64 = 1e-9;

/// Dimension parameter `n ∈ (0, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dimension {
    Finite(f64),
    Infinite,
}

impl Dimension {
    pub fn new(n: f64) -> Result<Self> {
        if n == f64::INFINITY {
            Ok(Dimension::Infinite)
        } else if n > 0.0 && n.is_finite() {
            Ok(Dimension::Finite(n))
        } else {
            Err(Error::InvalidArgument(format!(
                "dimension n = {n} (must be > 0 or inf)"
            )))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Dimension::Finite(n) => n,
            Dimension::Infinite => f64::INFINITY,
        }
    }

    /// `1/n`, zero at infinity.
    pub fn reciprocal(self) -> f64 {
        match self {
            Dimension::Finite(n) => 1.0 / n,
            Dimension::Infinite => 0.0,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Dimension::Finite(_))
    }
}

impl PartialOrd for Dimension {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value().partial_cmp(&other.value())
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Dimension::Infinite),
            t => {
                let n: f64 = t
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("dimension `{s}`")))?;
                Dimension::new(n)
            }
        }
    }
}

impl Serialize for Dimension {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        real_json::serialize(&self.value(), s)
    }
}

#[derive(Debug, Clone)]
pub struct Diagnostics {
    pub s1: usize,
    pub s2: usize,
    /// Absolute eigenvalue cutoff used for the 2-sphere pseudo-inverse.
    pub cutoff: f64,
    /// Punctured-ball coordinates of the witness (`S₁` then `S₂`).
    pub coords: Vec<usize>,
    /// Minimizing function on `coords`, normalized to `Γ(f)(x) = 1`.
    pub witness: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct CurvatureResult {
    pub vertex: usize,
    pub n: Dimension,
    /// `K_x(n)`; `+∞` at isolated vertices.
    pub value: f64,
    pub diagnostics: Diagnostics,
}

impl CurvatureResult {
    /// Witness as a vertex function on `g` (zero off the punctured 2-ball).
    pub fn witness_function(&self, n_vertices: usize) -> Vec<f64> {
        let mut f = vec![0.0; n_vertices];
        for (&v, &c) in self.diagnostics.coords.iter().zip(&self.diagnostics.witness) {
            f[v] = c;
        }
        f
    }

    pub fn to_row(&self, g: &WeightedGraph) -> Value {
        json!({
            "vertex": g.id(self.vertex),
            "n": real_json::to_value(self.n.value()),
            "value": real_json::to_value(self.value),
            "s1": self.diagnostics.s1,
            "s2": self.diagnostics.s2,
        })
    }
}

pub fn vertex_curvature(g: &WeightedGraph, x: usize, n: Dimension) -> Result<CurvatureResult> {
    if x >= g.len() {
        return Err(Error::VertexOutOfRange(x));
    }
    if g.is_isolated(x) {
        return Ok(CurvatureResult {
            vertex: x,
            n,
            value: f64::INFINITY,
            diagnostics: Diagnostics {
                s1: 0,
                s2: 0,
                cutoff: 0.0,
                coords: Vec::new(),
                witness: Vec::new(),
            },
        });
    }
    let forms = local_forms(g, x)?;
    curvature_from_forms(g, &forms, n)
}

/// Solves the localized eigenproblem for prebuilt forms.
pub fn curvature_from_forms(
    g: &WeightedGraph,
    forms: &LocalForms,
    n: Dimension,
) -> Result<CurvatureResult> {
    let s1 = forms.s1;
    let s2 = forms.s2();
    let q = &forms.q2 - (&forms.lap * forms.lap.transpose()) * n.reciprocal();

    let q11 = q.view((0, 0), (s1, s1)).into_owned();
    let (q_eff, elimination, cutoff) = if s2 == 0 {
        (q11, DMatrix::zeros(0, s1), 0.0)
    } else {
        let q21 = q.view((s1, 0), (s2, s1)).into_owned();
        let q22 = q.view((s1, s1), (s2, s2)).into_owned();
        let (pinv, cutoff) = pseudo_inverse(g, forms.center, &q22, &q21)?;
        // f₂ = −Q₂₂⁺ Q₂₁ f₁ minimizes over the 2-sphere for fixed f₁.
        let elimination = -(&pinv * &q21);
        let q_eff = q11 + q21.transpose() * &elimination;
        (q_eff, elimination, cutoff)
    };

    let inv_sqrt_d = DVector::from_iterator(s1, (0..s1).map(|i| forms.g1[(i, i)].sqrt().recip()));
    let mut m = q_eff;
    for i in 0..s1 {
        for j in 0..s1 {
            m[(i, j)] *= inv_sqrt_d[i] * inv_sqrt_d[j];
        }
    }
    let m = (&m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(m);
    let (imin, value) = eig
        .eigenvalues
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty 1-sphere");
    let z = eig.eigenvectors.column(imin);
    let f1 = z.component_mul(&inv_sqrt_d);
    let f2 = &elimination * &f1;
    let witness = f1.iter().chain(f2.iter()).copied().collect();

    Ok(CurvatureResult {
        vertex: forms.center,
        n,
        value,
        diagnostics: Diagnostics {
            s1,
            s2,
            cutoff,
            coords: forms.coords.clone(),
            witness,
        },
    })
}

fn pseudo_inverse(
    g: &WeightedGraph,
    center: usize,
    q22: &DMatrix<f64>,
    q21: &DMatrix<f64>,
) -> Result<(DMatrix<f64>, f64)> {
    let eig = SymmetricEigen::new(q22.clone());
    let top = eig.eigenvalues.max().max(0.0);
    let cutoff = PINV_CUTOFF * top;
    let k = q22.nrows();
    let coupling = q21.norm();
    let mut pinv = DMatrix::zeros(k, k);
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        let u = eig.eigenvectors.column(i);
        if lambda > cutoff {
            pinv += (u * u.transpose()) / lambda;
        } else if (u.transpose() * q21).norm() > RANGE_TOL * coupling {
            return Err(Error::RangeIncompatible(g.id(center).to_owned()));
        }
    }
    Ok((pinv, cutoff))
}

/// Minimum of `K_x(n)` over all vertices.
#[derive(Debug, Clone)]
pub struct GraphCurvature {
    pub value: f64,
    /// First vertex attaining the minimum; `None` for the empty graph.
    pub argmin: Option<usize>,
    pub per_vertex: Vec<CurvatureResult>,
}

pub fn graph_curvature(g: &WeightedGraph, n: Dimension) -> Result<GraphCurvature> {
    let per_vertex = (0..g.len())
        .into_par_iter()
        .map(|x| vertex_curvature(g, x, n))
        .collect::<Result<Vec<_>>>()?;
    let mut value = f64::INFINITY;
    let mut argmin = None;
    for r in &per_vertex {
        if argmin.is_none() || r.value < value {
            value = r.value;
            argmin = Some(r.vertex);
        }
    }
    Ok(GraphCurvature {
        value,
        argmin,
        per_vertex,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CdVerdict {
    pub holds: bool,
    #[serde(with = "real_json")]
    pub margin: f64,
}

/// Does the graph satisfy `CD(K, n)`?
pub fn verify_cd(g: &WeightedGraph, k: f64, n: Dimension) -> Result<CdVerdict> {
    let value = graph_curvature(g, n)?.value;
    Ok(CdVerdict {
        holds: value >= k - CD_TOL,
        margin: value - k,
    })
}

/// `K_x(n)` over a grid of dimensions, sorted by `n`.
pub fn curvature_profile(
    g: &WeightedGraph,
    x: usize,
    grid: &[Dimension],
) -> Result<Vec<(Dimension, f64)>> {
    let mut grid = grid.to_vec();
    grid.sort_by(|a, b| a.value().total_cmp(&b.value()));
    if x < g.len() && g.is_isolated(x) {
        return Ok(grid.into_iter().map(|n| (n, f64::INFINITY)).collect());
    }
    let forms = local_forms(g, x)?;
    grid.into_iter()
        .map(|n| Ok((n, curvature_from_forms(g, &forms, n)?.value)))
        .collect()
}
