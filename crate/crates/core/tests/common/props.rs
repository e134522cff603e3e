//! Property checks shared by the property suite and the acceptance run.

use super::{max_gamma, random_weighted};
use nalgebra::DVector;
use curvgraph::bounds::{distance_infty_bound, fathi_shu_bound};
use curvgraph::curvature::{graph_curvature, verify_cd, vertex_curvature, Dimension};
use curvgraph::curvature::curvature_profile;
use curvgraph::forms::{gamma, gamma2, gamma_sq, gamma_sum, local_forms};
use curvgraph::graph::{parse_graph, to_json, WeightedGraph};
use curvgraph::metrics::{metric_sandwich, resistance_distance, resistance_table, PairBudget, ResistanceOptions};
use curvgraph::semigroup::HeatPropagator;
use proptest::prelude::*;
use proptest::test_runner::{RngSeed, TestRunner};

pub const SEED: u64 = 0x00c0_ffee;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..ProptestConfig::default()
    })
}

/// Connected graph with 2..=8 vertices plus two functions on it.
fn graph_and_functions() -> impl Strategy<Value = (WeightedGraph, Vec<f64>, Vec<f64>)> {
    (2usize..=8, 0usize..6, any::<u64>()).prop_flat_map(|(n, extra, seed)| {
        let g = random_weighted(n, extra, seed);
        let f = prop::collection::vec(-2.0f64..2.0, n);
        let h = prop::collection::vec(-2.0f64..2.0, n);
        (Just(g), f, h)
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

fn all_close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| close(*x, *y, tol))
}

pub fn laplacian_is_linear_and_kills_constants(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(graph_and_functions(), -3.0f64..3.0), |((g, f, h), a)| {
            let comb: Vec<f64> = f.iter().zip(&h).map(|(x, y)| a * x + y).collect();
            let lf = g.laplacian_apply(&f).unwrap();
            let lh = g.laplacian_apply(&h).unwrap();
            let expected: Vec<f64> = lf.iter().zip(&lh).map(|(x, y)| a * x + y).collect();
            prop_assert!(all_close(&g.laplacian_apply(&comb).unwrap(), &expected, 1e-12));
            let c = vec![a; g.len()];
            prop_assert!(g.laplacian_apply(&c).unwrap().iter().all(|v| v.abs() < 1e-12));
            // m → c·m divides Δ and Deg by c.
            let s = g.scale_measure(a.abs() + 0.1).unwrap();
            let k = a.abs() + 0.1;
            let lf_scaled: Vec<f64> = lf.iter().map(|v| v / k).collect();
            prop_assert!(all_close(&s.laplacian_apply(&f).unwrap(), &lf_scaled, 1e-12));
            let deg_scaled: Vec<f64> = g.degrees().iter().map(|v| v / k).collect();
            prop_assert!(all_close(&s.degrees(), &deg_scaled, 1e-12));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn gamma_is_symmetric_bilinear_and_routes_agree(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(graph_and_functions(), -3.0f64..3.0), |((g, f, h), a)| {
            let fh = gamma(&g, &f, &h).unwrap();
            prop_assert!(all_close(&fh, &gamma(&g, &h, &f).unwrap(), 1e-12));
            prop_assert!(all_close(&fh, &gamma_sum(&g, &f, &h).unwrap(), 1e-10));
            let af: Vec<f64> = f.iter().map(|v| a * v).collect();
            let scaled: Vec<f64> = fh.iter().map(|v| a * v).collect();
            prop_assert!(all_close(&gamma(&g, &af, &h).unwrap(), &scaled, 1e-10));
            let g2 = gamma2(&g, &f, &h).unwrap();
            prop_assert!(all_close(&g2, &gamma2(&g, &h, &f).unwrap(), 1e-12));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn gamma_positive_and_cauchy_schwarz(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&graph_and_functions(), |(g, f, h)| {
            let gf = gamma_sq(&g, &f).unwrap();
            let gh = gamma_sq(&g, &h).unwrap();
            let gfh = gamma_sum(&g, &f, &h).unwrap();
            for x in 0..g.len() {
                prop_assert!(gf[x] >= 0.0);
                prop_assert!(gfh[x].abs() <= (gf[x] * gh[x]).sqrt() + 1e-12);
                // (Δf(x))² ≤ 2·Deg(x)·Γf(x).
                let lap = g.laplacian_at(&f, x);
                prop_assert!(lap * lap <= 2.0 * g.degree(x) * gf[x] * (1.0 + 1e-12) + 1e-14);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn forms_are_translation_invariant(cases: u32) -> Result<(), String> {
    let near = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-12 * x.abs().max(1.0));
    runner(cases)
        .run(&(graph_and_functions(), -5.0f64..5.0), |((g, f, _h), c)| {
            let shifted: Vec<f64> = f.iter().map(|v| v + c).collect();
            prop_assert!(near(&gamma_sq(&g, &shifted).unwrap(), &gamma_sq(&g, &f).unwrap()));
            prop_assert!(near(&gamma2(&g, &shifted, &shifted).unwrap(), &gamma2(&g, &f, &f).unwrap()));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn forms_scale_with_measure(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(graph_and_functions(), 0.2f64..5.0), |((g, f, _h), c)| {
            let s = g.scale_measure(c).unwrap();
            let g1: Vec<f64> = gamma_sq(&g, &f).unwrap().iter().map(|v| v / c).collect();
            let g2: Vec<f64> = gamma2(&g, &f, &f).unwrap().iter().map(|v| v / (c * c)).collect();
            prop_assert!(all_close(&gamma_sq(&s, &f).unwrap(), &g1, 1e-10));
            prop_assert!(all_close(&gamma2(&s, &f, &f).unwrap(), &g2, 1e-9));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn local_forms_match_operators(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&graph_and_functions(), |(g, f, _h)| {
            let g2 = gamma2(&g, &f, &f).unwrap();
            let g1 = gamma_sq(&g, &f).unwrap();
            for x in 0..g.len() {
                let forms = local_forms(&g, x).unwrap();
                let shifted: Vec<f64> = f.iter().map(|v| v - f[x]).collect();
                let v: DVector<f64> = forms.restrict(&shifted);
                let q = v.dot(&(&forms.q2 * &v));
                let gg = v.dot(&(&forms.g1 * &v));
                prop_assert!(close(q, g2[x], 1e-12), "Γ₂ at {}: {} vs {}", x, q, g2[x]);
                prop_assert!(close(gg, g1[x], 1e-12));
                prop_assert!(close(forms.lap.dot(&v), g.laplacian_at(&f, x), 1e-12));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Structural invariants of a validated graph.
pub fn check_invariants(g: &WeightedGraph) -> Result<(), String> {
    let mut seen = std::collections::HashSet::new();
    for x in 0..g.len() {
        let id = g.id(x);
        if id.is_empty() || !seen.insert(id.to_owned()) || g.index_of(id) != Some(x) {
            return Err(format!("bad id at {x}"));
        }
        if !(g.measure(x) > 0.0 && g.measure(x).is_finite()) {
            return Err(format!("bad measure at {id}"));
        }
        let nb = g.neighbors(x);
        if nb.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(format!("unsorted neighbours at {id}"));
        }
        for &(y, w) in nb {
            if y == x || !(w > 0.0 && w.is_finite()) || g.weight(y, x) != w {
                return Err(format!("bad edge {id}-{}", g.id(y)));
            }
        }
    }
    Ok(())
}

pub fn graph_json_round_trips(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&graph_and_functions(), |(g, _f, _h)| {
            let text = to_json(&g);
            let back = parse_graph(&text).unwrap();
            prop_assert!(check_invariants(&back).is_ok());
            prop_assert_eq!(to_json(&back), text);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn distance_table_is_a_metric(cases: u32) -> Result<(), String> {
    let strategy = (2usize..=6, 1usize..=5, 0usize..4, any::<u64>());
    runner(cases)
        .run(&strategy, |(a, b, extra, seed)| {
            let g = random_weighted(a, extra, seed).disjoint_union(&random_weighted(b, extra, seed ^ 1)).unwrap();
            let comp = g.components();
            let t = g.combinatorial_distances();
            let n = g.len();
            for x in 0..n {
                prop_assert_eq!(t.get(x, x), Some(0));
                for y in 0..n {
                    prop_assert_eq!(t.get(x, y), t.get(y, x));
                    prop_assert_eq!(t.get(x, y).is_some(), comp[x] == comp[y]);
                    if x != y && t.get(x, y).is_some() {
                        prop_assert!(t.get(x, y).unwrap() > 0);
                    }
                    for z in 0..n {
                        if let (Some(xy), Some(yz), Some(xz)) = (t.get(x, y), t.get(y, z), t.get(x, z)) {
                            prop_assert!(xz <= xy + yz);
                        }
                    }
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn heat_semigroup_properties(cases: u32) -> Result<(), String> {
    let strategy = (graph_and_functions(), prop::collection::vec(0.0f64..4.0, 2..6), 0.0f64..2.0);
    runner(cases)
        .run(&strategy, |((g, f, h), mut times, s)| {
            let prop = HeatPropagator::build(&g).unwrap();
            times.sort_by(f64::total_cmp);
            let t = times[0];
            let pt = prop.apply(t, &f).unwrap();
            let mass = |u: &[f64]| u.iter().enumerate().map(|(x, v)| g.measure(x) * v).sum::<f64>();
            prop_assert!(close(mass(&pt), mass(&f), 1e-10));
            let pos: Vec<f64> = h.iter().map(|v| v.abs()).collect();
            let sup = pos.iter().cloned().fold(0.0, f64::max);
            prop_assert!(prop.apply(t, &pos).unwrap().iter().all(|&v| v >= -1e-12 * sup));
            // Oscillation is nonincreasing along increasing times.
            let osc = |u: &[f64]| u.iter().cloned().fold(f64::MIN, f64::max) - u.iter().cloned().fold(f64::MAX, f64::min);
            let mut last = osc(&f);
            for &ti in &times {
                let o = osc(&prop.apply(ti, &f).unwrap());
                prop_assert!(o <= last + 1e-12 * last.max(1.0));
                last = o;
            }
            prop_assert!(all_close(&prop.apply(0.0, &f).unwrap(), &f, 1e-11));
            let composed = prop.apply(s, &pt).unwrap();
            prop_assert!(all_close(&composed, &prop.apply(s + t, &f).unwrap(), 1e-9));
            prop_assert!(all_close(&prop.derivative(t, &f).unwrap(), &g.laplacian_apply(&pt).unwrap(), 1e-9));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn heat_derivative_matches_finite_differences(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&graph_and_functions(), |(g, f, _h)| {
            let prop = HeatPropagator::build(&g).unwrap();
            let e = 1e-5;
            for t in [0.1, 1.0] {
                let d = prop.derivative(t, &f).unwrap();
                let (plus, minus) = (prop.apply(t + e, &f).unwrap(), prop.apply(t - e, &f).unwrap());
                let scale = d.iter().fold(1.0f64, |a, v| a.max(v.abs()));
                for x in 0..g.len() {
                    let fd = (plus[x] - minus[x]) / (2.0 * e);
                    prop_assert!((fd - d[x]).abs() <= 1e-6 * scale, "t={} x={}: {} vs {}", t, x, fd, d[x]);
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Weighted complete graphs, where the curvature is typically positive.
fn complete_and_function() -> impl Strategy<Value = (WeightedGraph, Vec<f64>)> {
    (3usize..=6).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (prop::collection::vec(0.7f64..1.4, pairs), prop::collection::vec(-2.0f64..2.0, n)).prop_map(move |(w, f)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    edges.push((i, j, w[k]));
                    k += 1;
                }
            }
            let ids = (0..n).map(|i| format!("c{i}")).collect();
            (WeightedGraph::from_parts(ids, vec![1.0; n], edges).unwrap(), f)
        })
    })
}

pub fn gamma_decays_under_positive_curvature(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(complete_and_function(), 0.0f64..5.0), |((g, f), t)| {
            let k = graph_curvature(&g, Dimension::Infinite).unwrap().value;
            prop_assert!(verify_cd(&g, k, Dimension::Infinite).unwrap().holds);
            if k > 0.0 {
                let prop = HeatPropagator::build(&g).unwrap();
                let sup = |u: Vec<f64>| u.into_iter().fold(0.0, f64::max);
                let lhs = sup(gamma_sq(&g, &prop.apply(t, &f).unwrap()).unwrap());
                let rhs = (-2.0 * k * t).exp() * sup(gamma_sq(&g, &f).unwrap());
                prop_assert!(lhs <= rhs * (1.0 + 1e-9) + 1e-14, "{} > {}", lhs, rhs);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn graph_and_triple() -> impl Strategy<Value = (WeightedGraph, usize, usize, usize)> {
    (2usize..=8, 0usize..6, any::<u64>()).prop_flat_map(|(n, extra, seed)| {
        (Just(random_weighted(n, extra, seed)), 0..n, 0..n, 0..n)
    })
}

pub fn resistance_metric_axioms(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(graph_and_triple(), 0.25f64..4.0), |((g, x, y, z), c)| {
            let opts = ResistanceOptions::default();
            let tol = opts.tol;
            let rho = |g: &WeightedGraph, a, b| resistance_distance(g, a, b, &opts).unwrap();
            let rxy = rho(&g, x, y);
            prop_assert!((rxy.value - rho(&g, y, x).value).abs() <= 2.0 * tol);
            prop_assert!(rxy.value <= rho(&g, x, z).value + rho(&g, z, y).value + 3.0 * tol);
            prop_assert!(max_gamma(&g, &rxy.witness) <= 1.0 + 1e-9);
            prop_assert_eq!(rxy.witness[x], 0.0);
            // Scaling w and m together leaves ρ unchanged.
            let both = g.scale_weights(c).unwrap().scale_measure(c).unwrap();
            prop_assert!((rho(&both, x, y).value - rxy.value).abs() <= 2.0 * tol);
            // Scaling w alone divides ρ by √c.
            let sw = g.scale_weights(c).unwrap();
            prop_assert!((rho(&sw, x, y).value * c.sqrt() - rxy.value).abs() <= (1.0 + c.sqrt()) * tol);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn metric_sandwich_holds(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&graph_and_functions(), |(g, _f, _h)| {
            let opts = ResistanceOptions::default();
            let table = resistance_table(&g, &opts, PairBudget::All).unwrap();
            prop_assert!(metric_sandwich(&g, &table, opts.tol).is_ok());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

const GRID: [Dimension; 4] = [Dimension::Finite(1.0), Dimension::Finite(2.0), Dimension::Finite(5.0), Dimension::Infinite];

pub fn curvature_scales_inversely_with_measure(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(graph_and_functions(), 0.2f64..5.0, 0usize..4), |((g, _f, _h), c, idx)| {
            let n = GRID[idx];
            let s = g.scale_measure(c).unwrap();
            for x in 0..g.len() {
                let k = vertex_curvature(&g, x, n).unwrap().value;
                let ks = vertex_curvature(&s, x, n).unwrap().value;
                prop_assert!((ks - k / c).abs() <= 1e-9 * (k / c).abs().max(1.0), "{} vs {}", ks, k / c);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn curvature_is_monotone_in_dimension(cases: u32) -> Result<(), String> {
    let grid: Vec<Dimension> = [0.5, 1.0, 2.0, 3.5, 5.0, 10.0]
        .into_iter()
        .map(Dimension::Finite)
        .chain([Dimension::Infinite])
        .collect();
    runner(cases)
        .run(&graph_and_functions(), |(g, _f, _h)| {
            for x in 0..g.len() {
                let profile = curvature_profile(&g, x, &grid).unwrap();
                prop_assert!(profile.windows(2).all(|w| w[0].1 <= w[1].1 + 1e-9));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn verify_cd_brackets_the_curvature(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(graph_and_functions(), 0usize..4), |((g, _f, _h), idx)| {
            let n = GRID[idx];
            let k = graph_curvature(&g, n).unwrap().value;
            let eps = 1e-6 * k.abs().max(1.0);
            prop_assert!(verify_cd(&g, k - eps, n).unwrap().holds);
            prop_assert!(!verify_cd(&g, k + eps, n).unwrap().holds);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn distance_bound_below_fathi_shu(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(0.01f64..50.0, 0.01f64..50.0, 0.01f64..20.0), |(a, b, k)| {
            prop_assert!(distance_infty_bound(a, b, k) <= fathi_shu_bound(a, b, k));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Every property with its name.
pub const ALL: &[(&str, fn(u32) -> Result<(), String>)] = &[
    ("laplacian_is_linear_and_kills_constants", laplacian_is_linear_and_kills_constants),
    ("gamma_is_symmetric_bilinear_and_routes_agree", gamma_is_symmetric_bilinear_and_routes_agree),
    ("gamma_positive_and_cauchy_schwarz", gamma_positive_and_cauchy_schwarz),
    ("forms_are_translation_invariant", forms_are_translation_invariant),
    ("forms_scale_with_measure", forms_scale_with_measure),
    ("local_forms_match_operators", local_forms_match_operators),
    ("graph_json_round_trips", graph_json_round_trips),
    ("distance_table_is_a_metric", distance_table_is_a_metric),
    ("heat_semigroup_properties", heat_semigroup_properties),
    ("heat_derivative_matches_finite_differences", heat_derivative_matches_finite_differences),
    ("gamma_decays_under_positive_curvature", gamma_decays_under_positive_curvature),
    ("resistance_metric_axioms", resistance_metric_axioms),
    ("metric_sandwich_holds", metric_sandwich_holds),
    ("curvature_scales_inversely_with_measure", curvature_scales_inversely_with_measure),
    ("curvature_is_monotone_in_dimension", curvature_is_monotone_in_dimension),
    ("verify_cd_brackets_the_curvature", verify_cd_brackets_the_curvature),
    ("distance_bound_below_fathi_shu", distance_bound_below_fathi_shu),
];
