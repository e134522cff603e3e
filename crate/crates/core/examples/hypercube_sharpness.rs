//! On hypercubes the `CD(K,∞)` diameter bound `2𝒟/K` is attained.
//!
//!     cargo run --release --example hypercube_sharpness

use curvgraph::bounds::bonnet_myers_infty;
use curvgraph::curvature::graph_curvature;
use curvgraph::{Dimension, Family, MeasureConvention};

fn main() -> curvgraph::Result<()> {
    println!("{:>3} {:>10} {:>4} {:>6} {:>8}  verdict", "d", "K(inf)", "D", "diam", "2D/K");
    for d in 1..=8 {
        let g = Family::Hypercube(d).generate(MeasureConvention::Unit)?;
        let k = graph_curvature(&g, Dimension::Infinite)?;
        let rec = bonnet_myers_infty(&g)?;
        println!(
            "{d:>3} {:>10.6} {:>4} {:>6} {:>8.4}  {}",
            k.value,
            g.max_degree(),
            g.combinatorial_diameter().to_string(),
            rec.bound.unwrap_or(f64::NAN),
            rec.verdict.label()
        );
    }

    // A few other families for contrast.
    for f in [Family::Complete(4), Family::Cycle(3), Family::Path(3), Family::Star(2)] {
        let g = f.generate(MeasureConvention::Unit)?;
        let rec = bonnet_myers_infty(&g)?;
        println!("{f:>12}: bound {:.4} vs diameter {}  {}", rec.bound.unwrap_or(f64::NAN), g.combinatorial_diameter(), rec.verdict.label());
    }
    Ok(())
}
