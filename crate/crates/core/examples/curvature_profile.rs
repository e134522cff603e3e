//! `K_x(n)` as a function of the dimension parameter, with the minimizing function.
//!
//!     cargo run --example curvature_profile

use curvgraph::curvature::{curvature_profile, vertex_curvature, verify_cd};
use curvgraph::forms::local_forms;
use curvgraph::{Dimension, Family, MeasureConvention};

fn main() -> curvgraph::Result<()> {
    let grid: Vec<Dimension> = [1.0, 2.0, 3.0, 5.0, 10.0, 100.0]
        .into_iter()
        .map(Dimension::Finite)
        .chain([Dimension::Infinite])
        .collect();

    for f in [Family::Path(2), Family::Hypercube(3), Family::Complete(5), Family::Cycle(5)] {
        let g = f.generate(MeasureConvention::Unit)?;
        let row: Vec<String> = curvature_profile(&g, 0, &grid)?
            .into_iter()
            .map(|(n, k)| format!("n={n}: {k:.4}"))
            .collect();
        println!("{f:>12}  {}", row.join("  "));
    }

    let g = Family::Hypercube(3).generate(MeasureConvention::Unit)?;
    let forms = local_forms(&g, 0)?;
    println!("\nQ_3 at 000: |S1| = {}, |S2| = {}", forms.s1, forms.s2());
    let r = vertex_curvature(&g, 0, Dimension::Finite(5.0))?;
    println!("K(5) = {:.6}, witness on {:?}:", r.value, r.diagnostics.coords.iter().map(|&v| g.id(v)).collect::<Vec<_>>());
    println!("  {:?}", r.diagnostics.witness.iter().map(|v| (v * 1e6).round() / 1e6).collect::<Vec<_>>());

    for k in [0.7, 0.8, 0.9] {
        let v = verify_cd(&g, k, Dimension::Finite(5.0))?;
        println!("CD({k}, 5) holds: {} (margin {:+.3})", v.holds, v.margin);
    }
    Ok(())
}
