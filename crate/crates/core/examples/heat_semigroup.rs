//! The heat semigroup `P_t = e^{tΔ}` and the gradient envelopes implied by curvature.
//!
//!     cargo run --example heat_semigroup

use curvgraph::curvature::graph_curvature;
use curvgraph::semigroup::{
    check_cd_infty_envelope, check_cd_n_envelope, default_t_grid, derivative_bound_integral, random_function,
    HeatPropagator,
};
use curvgraph::{Dimension, Family, MeasureConvention};

fn main() -> curvgraph::Result<()> {
    let g = Family::Path(2).generate(MeasureConvention::Unit)?;
    let prop = HeatPropagator::build(&g)?;
    println!("edge spectrum {:?}", prop.eigenvalues());
    for t in [0.0, 0.5, 1.0, 2.0] {
        let p = prop.apply(t, &[0.0, 1.0])?;
        println!("  t={t}: P_t 1_v1 = [{:.6}, {:.6}]  closed form {:.6}", p[0], p[1], (1.0 - (-2.0 * t).exp()) / 2.0);
    }

    let g = Family::Hypercube(3).generate(MeasureConvention::Unit)?;
    let prop = HeatPropagator::build(&g)?;
    let k_inf = graph_curvature(&g, Dimension::Infinite)?.value;
    let n = Dimension::Finite(10.0);
    let k_n = graph_curvature(&g, n)?.value;
    println!("\nQ_3: K(inf) = {k_inf:.4}, K(10) = {k_n:.4}");
    for seed in 0..5 {
        let f = random_function(g.len(), seed);
        let a = check_cd_infty_envelope(&g, &prop, k_inf, &f, &default_t_grid(k_inf))?;
        let b = check_cd_n_envelope(&g, &prop, k_n, n, &f, &default_t_grid(k_n))?;
        println!("  seed {seed}: max scaled violation {:+.2e} (inf), {:+.2e} (n=10)", a.max_scaled, b.max_scaled);
    }

    for (k, n) in [(1.0, 1.0), (2.0, 5.0), (0.3, 8.0)] {
        let q = derivative_bound_integral(k, n);
        println!("integral K={k} n={n}: {q:.10}  (pi/2)sqrt(n/K) = {:.10}", std::f64::consts::FRAC_PI_2 * (n / k).sqrt());
    }
    Ok(())
}
