//! Shared corpus and brute-force oracles for the integration tests.
#![allow(dead_code)]

pub mod props;

use curvgraph::graph::{Family, MeasureConvention, WeightedGraph};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn unit(f: Family) -> WeightedGraph {
    f.generate(MeasureConvention::Unit).unwrap()
}

/// Uniform random labelled tree on `n` vertices from a Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> WeightedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
    let mut edges = Vec::new();
    if n == 2 {
        edges.push((0, 1, 1.0));
    } else if n > 2 {
        let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        let mut degree = vec![1usize; n];
        for &c in &code {
            degree[c] += 1;
        }
        for &c in &code {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, c, 1.0));
            degree[leaf] -= 1;
            degree[c] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1], 1.0));
    }
    WeightedGraph::from_parts(ids, vec![1.0; n], edges).unwrap()
}

/// Connected graph: random tree plus extra edges, weights and measures in `[0.5, 2]`.
pub fn random_weighted(n: usize, extra: usize, seed: u64) -> WeightedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tree = random_tree(n, seed ^ 0xabcdef);
    let mut edges: Vec<(usize, usize, f64)> = tree
        .edges()
        .into_iter()
        .map(|(u, v, _)| (u, v, rng.gen_range(0.5..2.0)))
        .collect();
    for _ in 0..extra {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !edges.iter().any(|&(a, b, _)| (a, b) == (u, v) || (a, b) == (v, u)) {
            edges.push((u, v, rng.gen_range(0.5..2.0)));
        }
    }
    let measure = (0..n).map(|_| rng.gen_range(0.5..2.0)).collect();
    let ids = (0..n).map(|i| format!("r{i}")).collect();
    WeightedGraph::from_parts(ids, measure, edges).unwrap()
}

/// Named graphs with at most 8 vertices.
pub fn corpus() -> Vec<(String, WeightedGraph)> {
    let mut out: Vec<(String, WeightedGraph)> = Vec::new();
    let mut fam = |f: Family| out.push((f.to_string(), unit(f)));
    for n in 2..=5 {
        fam(Family::Path(n));
    }
    for n in 3..=6 {
        fam(Family::Cycle(n));
    }
    for n in 2..=4 {
        fam(Family::Star(n));
    }
    for n in 3..=5 {
        fam(Family::Complete(n));
    }
    fam(Family::Hypercube(2));
    fam(Family::Hypercube(3));
    for (i, n) in [4, 5, 6, 7, 8, 8].into_iter().enumerate() {
        out.push((format!("tree{n}#{i}"), random_tree(n, 100 + i as u64)));
    }
    for (i, n) in [5, 6, 7].into_iter().enumerate() {
        out.push((format!("weighted{n}#{i}"), random_weighted(n, 4, 200 + i as u64)));
    }
    for f in [Family::Cycle(5), Family::Complete(4), Family::Star(3)] {
        out.push((format!("{f}/degree"), f.generate(MeasureConvention::Degree).unwrap()));
    }
    out
}

/// Dense `Δ` with `L[x][y] = w(x,y)/m(x)` and `L[x][x] = −Deg(x)`.
pub fn laplacian_matrix(g: &WeightedGraph) -> DMatrix<f64> {
    let n = g.len();
    let mut l = DMatrix::zeros(n, n);
    for x in 0..n {
        for &(y, w) in g.neighbors(x) {
            l[(x, y)] += w / g.measure(x);
            l[(x, x)] -= w / g.measure(x);
        }
    }
    l
}

/// Matrix of `(f, h) ↦ Γ(f,h)(x)` built from `2Γ(f,h) = Δ(fh) − fΔh − hΔf`.
pub fn gamma_matrix(l: &DMatrix<f64>, x: usize) -> DMatrix<f64> {
    let n = l.nrows();
    DMatrix::from_fn(n, n, |i, j| {
        let prod = if i == j { l[(x, i)] } else { 0.0 };
        let a = if i == x { l[(x, j)] } else { 0.0 };
        let b = if j == x { l[(x, i)] } else { 0.0 };
        0.5 * (prod - a - b)
    })
}

/// Matrix of `Γ₂(·,·)(x)` from `2Γ₂(f,h) = ΔΓ(f,h) − Γ(f,Δh) − Γ(h,Δf)`.
pub fn gamma2_matrix(l: &DMatrix<f64>, x: usize) -> DMatrix<f64> {
    let n = l.nrows();
    let mut acc = DMatrix::zeros(n, n);
    for y in 0..n {
        if l[(x, y)] != 0.0 {
            acc += gamma_matrix(l, y) * l[(x, y)];
        }
    }
    let gx = gamma_matrix(l, x);
    let m = &acc - &gx * l - l.transpose() * &gx;
    (&m + m.transpose()) * 0.25
}

/// Orthonormal basis of the complement of the constants, as columns.
fn deflation(n: usize) -> DMatrix<f64> {
    let mut a = DMatrix::identity(n, n);
    let one = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    a -= &one * one.transpose();
    let eig = SymmetricEigen::new(a);
    let cols: Vec<DVector<f64>> = (0..n)
        .filter(|&i| eig.eigenvalues[i] > 0.5)
        .map(|i| eig.eigenvectors.column(i).into_owned())
        .collect();
    DMatrix::from_columns(&cols)
}

fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    SymmetricEigen::new(m.clone()).eigenvalues.min()
}

/// `Q = Γ₂ − (1/n)(Δ·)²` and `G = Γ` at `x`, deflated by the constants.
pub fn deflated_pencil(g: &WeightedGraph, x: usize, inv_n: f64) -> (DMatrix<f64>, DMatrix<f64>) {
    let l = laplacian_matrix(g);
    let row = l.row(x).transpose();
    let q = gamma2_matrix(&l, x) - &row * row.transpose() * inv_n;
    let gm = gamma_matrix(&l, x);
    let p = deflation(g.len());
    (p.transpose() * q * &p, p.transpose() * gm * &p)
}

/// Largest `λ` with `Q − λG ⪰ 0`, by bisection on the minimum eigenvalue.
pub fn oracle_curvature(g: &WeightedGraph, x: usize, inv_n: f64) -> f64 {
    if g.is_isolated(x) {
        return f64::INFINITY;
    }
    let (q, gm) = deflated_pencil(g, x, inv_n);
    let scale = q.amax().max(gm.amax()).max(1.0);
    let feasible = |lam: f64| min_eigenvalue(&(&q - &gm * lam)) >= -1e-11 * scale * (1.0 + lam.abs());
    let (mut lo, mut hi) = (-1.0, 1.0);
    while !feasible(lo) {
        lo *= 2.0;
        assert!(lo > -1e9, "no feasible lower bracket");
    }
    while feasible(hi) {
        hi *= 2.0;
        assert!(hi < 1e9, "no infeasible upper bracket");
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    lo
}

/// Smallest Rayleigh quotient `fᵀQf / fᵀGf` seen over random `f` (an upper estimate).
pub fn sampled_curvature(g: &WeightedGraph, x: usize, inv_n: f64, samples: usize, seed: u64) -> f64 {
    let l = laplacian_matrix(g);
    let row = l.row(x).transpose();
    let q = gamma2_matrix(&l, x) - &row * row.transpose() * inv_n;
    let gm = gamma_matrix(&l, x);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    for _ in 0..samples {
        let f = DVector::from_fn(g.len(), |_, _| rng.gen_range(-1.0..1.0));
        let den = (f.transpose() * &gm * &f)[(0, 0)];
        if den > 1e-9 {
            best = best.min((f.transpose() * &q * &f)[(0, 0)] / den);
        }
    }
    best
}

/// `max_v Γf(v)` computed directly from edge differences.
pub fn max_gamma(g: &WeightedGraph, f: &[f64]) -> f64 {
    (0..g.len())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .map(|&(u, w)| w * (f[u] - f[v]).powi(2))
                .sum::<f64>()
                / (2.0 * g.measure(v))
        })
        .fold(0.0, f64::max)
}

/// Multi-start stochastic hill climbing on the scale-free ratio
/// `(f(y) − f(x)) / √(max Γf)`; returns a feasible lower estimate of `ρ(x,y)`.
pub fn oracle_resistance(g: &WeightedGraph, x: usize, y: usize, starts: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.len();
    let ratio = |f: &[f64]| {
        let mg = max_gamma(g, f);
        if mg <= 0.0 {
            0.0
        } else {
            (f[y] - f[x]) / mg.sqrt()
        }
    };
    let mut best = 0.0f64;
    for _ in 0..starts {
        let mut f: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        f[x] = 0.0;
        let mut cur = ratio(&f);
        let mut sigma = 0.5;
        let mut fails = 0;
        while sigma > 1e-10 {
            let mut cand = f.clone();
            for (v, c) in cand.iter_mut().enumerate() {
                if v != x {
                    *c += sigma * rng.gen_range(-1.0..1.0);
                }
            }
            let r = ratio(&cand);
            if r > cur {
                f = cand;
                cur = r;
                fails = 0;
            } else {
                fails += 1;
                if fails > 40 {
                    sigma *= 0.5;
                    fails = 0;
                }
            }
        }
        best = best.max(cur);
    }
    best
}

pub fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
