//! Heat semigroup `P_t = e^{tΔ}` by exact spectral factorization, and
//! numerical checks of the curvature envelopes
//!
//! ```text
//! CD(K,∞):  Γ(P_t f) ≤ e^{−2Kt} P_t Γf
//! CD(K,n):  Γ(P_t f) ≤ e^{−2Kt} P_t Γf − (1 − e^{−2Kt})/(Kn) · (ΔP_t f)²
//! ```
//!
//! `Δ` is self-adjoint on `ℓ²(m)`, so `M^{1/2} Δ M^{−1/2}` is symmetric and
//! `P_t f = M^{−1/2} U e^{tΛ} Uᵀ M^{1/2} f`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curvature::Dimension;
use crate::error::{Error, Result};
use crate::forms::gamma_sq;
use crate::graph::WeightedGraph;
use crate::real_json;

/// Spectral tolerance, relative to `max(1, spectral radius)`.
pub const SPECTRAL_TOL: f64 = 1e-10;
/// Violation allowed by the envelope checks, relative to the check scale.
pub const ENVELOPE_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct HeatPropagator {
    sqrt_m: DVector<f64>,
    /// Nonincreasing, all `≤ 0`.
    eigenvalues: DVector<f64>,
    /// Orthonormal eigenvectors of the symmetrized generator, as columns.
    basis: DMatrix<f64>,
}

impl HeatPropagator {
    pub fn build(g: &WeightedGraph) -> Result<Self> {
        let n = g.len();
        let sqrt_m = DVector::from_iterator(n, g.measures().iter().map(|m| m.sqrt()));
        let mut sym = DMatrix::zeros(n, n);
        for x in 0..n {
            sym[(x, x)] = -g.degree(x);
            for &(y, w) in g.neighbors(x) {
                sym[(x, y)] = w / (sqrt_m[x] * sqrt_m[y]);
            }
        }
        let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 0)
            .ok_or_else(|| Error::Spectral("symmetric eigensolver did not converge".into()))?;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let eigenvalues = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
        let basis = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);

        let prop = Self {
            sqrt_m,
            eigenvalues,
            basis,
        };
        prop.check(g)?;
        Ok(prop)
    }

    fn check(&self, g: &WeightedGraph) -> Result<()> {
        let n = self.len();
        if n == 0 {
            return Ok(());
        }
        let tol = SPECTRAL_TOL * self.spectral_radius().max(1.0);
        if self.eigenvalues[0] > tol {
            return Err(Error::Spectral(format!(
                "positive eigenvalue {} in generator",
                self.eigenvalues[0]
            )));
        }
        let zeros = self.eigenvalues.iter().filter(|l| l.abs() <= tol).count();
        let components = g.component_count();
        if zeros != components {
            return Err(Error::Spectral(format!(
                "{zeros} null eigenvalues for {components} components"
            )));
        }
        let gram = &self.basis * self.basis.transpose() - DMatrix::<f64>::identity(n, n);
        if gram.amax() > SPECTRAL_TOL {
            return Err(Error::Spectral(format!(
                "P_0 differs from the identity by {}",
                gram.amax()
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Generator eigenvalues, largest (zero) first.
    pub fn eigenvalues(&self) -> &[f64] {
        self.eigenvalues.as_slice()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |a, l| a.max(l.abs()))
    }

    fn spectral(&self, t: f64, f: &[f64], power: i32) -> Result<Vec<f64>> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidArgument(format!("time t = {t} (must be ≥ 0)")));
        }
        if f.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: f.len(),
            });
        }
        let h = DVector::from_iterator(self.len(), f.iter().zip(self.sqrt_m.iter()).map(|(v, s)| v * s));
        let mut coeffs = self.basis.tr_mul(&h);
        for (c, &l) in coeffs.iter_mut().zip(self.eigenvalues.iter()) {
            *c *= (t * l).exp() * l.powi(power);
        }
        let out = &self.basis * coeffs;
        Ok(out.iter().zip(self.sqrt_m.iter()).map(|(v, s)| v / s).collect())
    }

    /// `P_t f`.
    pub fn apply(&self, t: f64, f: &[f64]) -> Result<Vec<f64>> {
        self.spectral(t, f, 0)
    }

    /// `∂_t P_t f = Δ P_t f`, evaluated spectrally.
    pub fn derivative(&self, t: f64, f: &[f64]) -> Result<Vec<f64>> {
        self.spectral(t, f, 1)
    }
}

/// `t = 0` followed by 64 geometric points on `[1e-3, 10/K]`.
pub fn default_t_grid(k: f64) -> Vec<f64> {
    let hi: f64 = if k > 0.0 { 10.0 / k } else { 10.0 };
    let lo: f64 = 1e-3_f64.min(hi);
    let steps = 63;
    let ratio = (hi / lo).ln() / steps as f64;
    std::iter::once(0.0)
        .chain((0..=steps).map(|i| lo * (ratio * i as f64).exp()))
        .collect()
}

/// Independent uniform values in `[−1, 1]`.
pub fn random_function(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeRow {
    #[serde(with = "real_json")]
    pub t: f64,
    pub x: usize,
    #[serde(with = "real_json")]
    pub lhs: f64,
    #[serde(with = "real_json")]
    pub rhs: f64,
    #[serde(with = "real_json")]
    pub violation: f64,
    /// `max(1, ‖P_t Γf‖_∞)` at this `t`.
    #[serde(with = "real_json")]
    pub scale: f64,
}

#[derive(Debug, Clone)]
pub struct EnvelopeCheck {
    pub rows: Vec<EnvelopeRow>,
    /// `max (lhs − rhs)` over the grid.
    pub max_violation: f64,
    /// `max (lhs − rhs)/scale`; the check passes when this is `≤ ENVELOPE_TOL`.
    pub max_scaled: f64,
}

impl EnvelopeCheck {
    pub fn passed(&self) -> bool {
        self.max_scaled <= ENVELOPE_TOL
    }
}

fn envelope(
    g: &WeightedGraph,
    prop: &HeatPropagator,
    k: f64,
    penalty: Option<f64>,
    f: &[f64],
    t_grid: &[f64],
) -> Result<EnvelopeCheck> {
    let gamma_f = gamma_sq(g, f)?;
    let mut rows = Vec::with_capacity(t_grid.len() * g.len());
    for &t in t_grid {
        let pt_f = prop.apply(t, f)?;
        let pt_gamma = prop.apply(t, &gamma_f)?;
        let lhs = gamma_sq(g, &pt_f)?;
        let decay = (-2.0 * k * t).exp();
        let scale = pt_gamma.iter().fold(1.0_f64, |a, v| a.max(v.abs()));
        let lap = match penalty {
            Some(_) => prop.derivative(t, f)?,
            None => Vec::new(),
        };
        for x in 0..g.len() {
            let mut rhs = decay * pt_gamma[x];
            if let Some(inv_kn) = penalty {
                rhs -= -(-2.0 * k * t).exp_m1() * inv_kn * lap[x] * lap[x];
            }
            rows.push(EnvelopeRow {
                t,
                x,
                lhs: lhs[x],
                rhs,
                violation: lhs[x] - rhs,
                scale,
            });
        }
    }
    let max_violation = rows.iter().map(|r| r.violation).fold(f64::NEG_INFINITY, f64::max);
    let max_scaled = rows
        .iter()
        .map(|r| r.violation / r.scale)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(EnvelopeCheck {
        rows,
        max_violation,
        max_scaled,
    })
}

/// `Γ(P_t f) − e^{−2Kt} P_t Γf` over the grid. Meaningful when `CD(K,∞)` holds.
pub fn check_cd_infty_envelope(
    g: &WeightedGraph,
    prop: &HeatPropagator,
    k: f64,
    f: &[f64],
    t_grid: &[f64],
) -> Result<EnvelopeCheck> {
    envelope(g, prop, k, None, f, t_grid)
}

/// The finite-dimensional envelope; requires `K > 0` and finite `n`.
pub fn check_cd_n_envelope(
    g: &WeightedGraph,
    prop: &HeatPropagator,
    k: f64,
    n: Dimension,
    f: &[f64],
    t_grid: &[f64],
) -> Result<EnvelopeCheck> {
    if !(k > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "CD(K,n) envelope needs K > 0, got {k}"
        )));
    }
    let Dimension::Finite(n) = n else {
        return Err(Error::InvalidArgument(
            "CD(K,n) envelope needs finite n".into(),
        ));
    };
    envelope(g, prop, k, Some(1.0 / (k * n)), f, t_grid)
}

#[derive(Debug, Clone, Serialize)]
pub struct DerivativeRow {
    #[serde(with = "real_json")]
    pub t: f64,
    pub x: usize,
    /// `|Δ P_t f(x)|`.
    #[serde(with = "real_json")]
    pub derivative: f64,
    /// `√(2 Deg(x)) e^{−Kt}`.
    #[serde(with = "real_json")]
    pub bound_infty: f64,
    /// `√(Kn) / √(e^{2Kt} − 1)`, finite `n` and `t > 0` only.
    #[serde(with = "real_json::option")]
    pub bound_n: Option<f64>,
    pub exceeds: bool,
}

#[derive(Debug, Clone)]
pub struct DerivativeReport {
    /// Factor applied to the input so that `‖Γf‖_∞ ≤ 1`.
    pub rescaled_by: f64,
    pub rows: Vec<DerivativeRow>,
    pub exceedances: usize,
}

/// Compares `|∂_t P_t f|` against the pointwise bounds used in the diameter
/// proofs. The input is rescaled first so that `‖Γf‖_∞ ≤ 1`.
pub fn derivative_bound_report(
    g: &WeightedGraph,
    prop: &HeatPropagator,
    k: f64,
    n: Dimension,
    f: &[f64],
    t_grid: &[f64],
) -> Result<DerivativeReport> {
    let top = gamma_sq(g, f)?.into_iter().fold(0.0, f64::max);
    let rescaled_by = if top > 1.0 { top.sqrt().recip() } else { 1.0 };
    let f: Vec<f64> = f.iter().map(|v| v * rescaled_by).collect();
    let mut rows = Vec::new();
    for &t in t_grid {
        let d = prop.derivative(t, &f)?;
        for x in 0..g.len() {
            let bound_infty = (2.0 * g.degree(x)).sqrt() * (-k * t).exp();
            let bound_n = match n {
                Dimension::Finite(n) if t > 0.0 => Some((k * n).sqrt() / (2.0 * k * t).exp_m1().sqrt()),
                _ => None,
            };
            let derivative = d[x].abs();
            let over = |b: f64| derivative > b + ENVELOPE_TOL * b.max(1.0);
            let exceeds = over(bound_infty) || bound_n.is_some_and(over);
            rows.push(DerivativeRow {
                t,
                x,
                derivative,
                bound_infty,
                bound_n,
                exceeds,
            });
        }
    }
    let exceedances = rows.iter().filter(|r| r.exceeds).count();
    Ok(DerivativeReport {
        rescaled_by,
        rows,
        exceedances,
    })
}

/// `∫₀^∞ √(Kn) / √(e^{2Kt} − 1) dt` by adaptive Simpson quadrature after the
/// substitution `t = s²`, which removes the `t^{−1/2}` endpoint singularity.
pub fn derivative_bound_integral(k: f64, n: f64) -> f64 {
    let c = (k * n).sqrt();
    let integrand = |s: f64| -> f64 {
        if s == 0.0 {
            2.0 * c / (2.0 * k).sqrt()
        } else {
            2.0 * s * c / (2.0 * k * s * s).exp_m1().sqrt()
        }
    };
    let upper = (60.0 / k).sqrt();
    let panels = 64;
    let h = upper / panels as f64;
    (0..panels)
        .map(|i| {
            let (a, b) = (i as f64 * h, (i + 1) as f64 * h);
            adaptive_simpson(&integrand, a, b, 1e-14 * c.max(1.0), 40)
        })
        .sum()
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}
