//! Carré du champ `Γ`, its iterate `Γ₂`, and their quadratic forms localized
//! at a vertex.
//!
//! ```text
//! 2Γ(f,g)  = Δ(fg) − fΔg − gΔf
//! 2Γ₂(f,g) = ΔΓ(f,g) − Γ(f,Δg) − Γ(g,Δf)
//! ```
//!
//! `Γ₂(f)(x)` only sees `f` on the 2-ball around `x`, so the forms at `x`
//! are finite matrices over the coordinates of the punctured ball
//! `S₁(x) ∪ S₂(x)`, with the gauge `f(x) = 0`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Relative PSD guard for the 2-sphere block of `q2`.
pub const PSD_GUARD: f64 = 1e-9;

/// `Γ(f,g)` pointwise through the defining identity.
pub fn gamma(g: &WeightedGraph, f: &[f64], h: &[f64]) -> Result<Vec<f64>> {
    g.check_function(f)?;
    g.check_function(h)?;
    let fh: Vec<f64> = f.iter().zip(h).map(|(a, b)| a * b).collect();
    let lfh = g.laplacian_apply(&fh)?;
    let lf = g.laplacian_apply(f)?;
    let lh = g.laplacian_apply(h)?;
    Ok((0..g.len())
        .map(|x| 0.5 * (lfh[x] - f[x] * lh[x] - h[x] * lf[x]))
        .collect())
}

/// `Γ(f,g)(x) = (1/2m(x)) Σ_y w(x,y)(f(y)−f(x))(g(y)−g(x))`; unchecked lengths.
pub fn gamma_at(g: &WeightedGraph, f: &[f64], h: &[f64], x: usize) -> f64 {
    let (fx, hx) = (f[x], h[x]);
    let s: f64 = g
        .neighbors(x)
        .iter()
        .map(|&(y, w)| w * (f[y] - fx) * (h[y] - hx))
        .sum();
    s / (2.0 * g.measure(x))
}

/// `Γ(f,g)` pointwise through the explicit edge sum.
pub fn gamma_sum(g: &WeightedGraph, f: &[f64], h: &[f64]) -> Result<Vec<f64>> {
    g.check_function(f)?;
    g.check_function(h)?;
    Ok((0..g.len()).map(|x| gamma_at(g, f, h, x)).collect())
}

/// `Γ(f)` through the explicit edge sum; nonnegative by construction.
pub fn gamma_sq(g: &WeightedGraph, f: &[f64]) -> Result<Vec<f64>> {
    gamma_sum(g, f, f)
}

/// `Γ₂(f,g)` pointwise, composed from [`gamma`] and the Laplacian.
pub fn gamma2(g: &WeightedGraph, f: &[f64], h: &[f64]) -> Result<Vec<f64>> {
    let gfh = gamma(g, f, h)?;
    let lgfh = g.laplacian_apply(&gfh)?;
    let lf = g.laplacian_apply(f)?;
    let lh = g.laplacian_apply(h)?;
    let a = gamma(g, f, &lh)?;
    let b = gamma(g, h, &lf)?;
    Ok((0..g.len())
        .map(|x| 0.5 * (lgfh[x] - a[x] - b[x]))
        .collect())
}

/// `Γ₂(f,g)(x)` from precomputed Laplacians `lf = Δf`, `lh = Δh`.
fn gamma2_at(g: &WeightedGraph, f: &[f64], lf: &[f64], h: &[f64], lh: &[f64], x: usize) -> f64 {
    let gx = gamma_at(g, f, h, x);
    let lap_gamma: f64 = g
        .neighbors(x)
        .iter()
        .map(|&(y, w)| w * (gamma_at(g, f, h, y) - gx))
        .sum::<f64>()
        / g.measure(x);
    0.5 * (lap_gamma - gamma_at(g, f, lh, x) - gamma_at(g, h, lf, x))
}

/// Quadratic forms of `Γ₂`, `Γ` and `Δ` at `x` on the full 2-ball,
/// with `x` as coordinate 0 and no gauge applied.
#[derive(Debug, Clone)]
pub struct BallForms {
    pub center: usize,
    /// `[x, S₁ (vertex order), S₂ (vertex order)]`.
    pub coords: Vec<usize>,
    pub s1: usize,
    pub q2: DMatrix<f64>,
    pub g1: DMatrix<f64>,
    pub lap: DVector<f64>,
}

pub fn ball_forms(g: &WeightedGraph, x: usize) -> Result<BallForms> {
    if x >= g.len() {
        return Err(Error::VertexOutOfRange(x));
    }
    let s1 = g.sphere(x, 1);
    let s2 = g.sphere(x, 2);
    let mut coords = Vec::with_capacity(1 + s1.len() + s2.len());
    coords.push(x);
    coords.extend_from_slice(&s1);
    coords.extend_from_slice(&s2);

    let n = g.len();
    let k = coords.len();
    let indicators: Vec<Vec<f64>> = coords
        .iter()
        .map(|&u| {
            let mut e = vec![0.0; n];
            e[u] = 1.0;
            e
        })
        .collect();
    let laplacians: Vec<Vec<f64>> = indicators
        .iter()
        .map(|e| g.laplacian_apply(e))
        .collect::<Result<_>>()?;

    let mut q2 = DMatrix::zeros(k, k);
    let mut g1 = DMatrix::zeros(k, k);
    let mut lap = DVector::zeros(k);
    for a in 0..k {
        lap[a] = laplacians[a][x];
        for b in a..k {
            let (ea, eb) = (&indicators[a], &indicators[b]);
            let v2 = gamma2_at(g, ea, &laplacians[a], eb, &laplacians[b], x);
            let v1 = gamma_at(g, ea, eb, x);
            q2[(a, b)] = v2;
            q2[(b, a)] = v2;
            g1[(a, b)] = v1;
            g1[(b, a)] = v1;
        }
    }
    Ok(BallForms {
        center: x,
        coords,
        s1: s1.len(),
        q2,
        g1,
        lap,
    })
}

/// Gauged forms at `x` on `S₁(x) ∪ S₂(x)`.
#[derive(Debug, Clone)]
pub struct LocalForms {
    pub center: usize,
    /// `S₁` then `S₂`, each in vertex order.
    pub coords: Vec<usize>,
    /// `|S₁|`; coordinates `0..s1` are the 1-sphere.
    pub s1: usize,
    pub q2: DMatrix<f64>,
    pub g1: DMatrix<f64>,
    pub lap: DVector<f64>,
}

impl LocalForms {
    pub fn s2(&self) -> usize {
        self.coords.len() - self.s1
    }

    /// Extends coordinates to a vertex function, zero off the punctured ball.
    pub fn embed(&self, coeffs: &[f64], n: usize) -> Vec<f64> {
        let mut f = vec![0.0; n];
        for (&v, &c) in self.coords.iter().zip(coeffs) {
            f[v] = c;
        }
        f
    }

    /// Restricts a vertex function to the coordinates (gauge not applied).
    pub fn restrict(&self, f: &[f64]) -> DVector<f64> {
        DVector::from_iterator(self.coords.len(), self.coords.iter().map(|&v| f[v]))
    }

    pub fn to_json(&self, g: &WeightedGraph) -> Value {
        let rows = |m: &DMatrix<f64>| -> Vec<Vec<f64>> {
            (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
        };
        json!({
            "center": g.id(self.center),
            "coords": self.coords.iter().map(|&v| g.id(v)).collect::<Vec<_>>(),
            "s1": self.s1,
            "s2": self.s2(),
            "q2": rows(&self.q2),
            "g1": rows(&self.g1),
            "lap": self.lap.iter().copied().collect::<Vec<_>>(),
        })
    }
}

pub fn local_forms(g: &WeightedGraph, x: usize) -> Result<LocalForms> {
    let ball = ball_forms(g, x)?;
    let k = ball.coords.len() - 1;
    let q2 = ball.q2.view((1, 1), (k, k)).into_owned();
    let g1 = ball.g1.view((1, 1), (k, k)).into_owned();
    let lap = ball.lap.rows(1, k).into_owned();
    let forms = LocalForms {
        center: x,
        coords: ball.coords[1..].to_vec(),
        s1: ball.s1,
        q2,
        g1,
        lap,
    };
    check_sphere_psd(g, &forms)?;
    Ok(forms)
}

fn check_sphere_psd(g: &WeightedGraph, forms: &LocalForms) -> Result<()> {
    let s2 = forms.s2();
    if s2 == 0 {
        return Ok(());
    }
    let scale = forms.q2.diagonal().iter().copied().fold(0.0, f64::max);
    let block = forms.q2.view((forms.s1, forms.s1), (s2, s2)).into_owned();
    let min = SymmetricEigen::new(block).eigenvalues.min();
    let guard = -PSD_GUARD * scale;
    if min < guard {
        return Err(Error::NotPsd {
            vertex: g.id(forms.center).to_owned(),
            min_eigenvalue: min,
            guard,
        });
    }
    Ok(())
}
