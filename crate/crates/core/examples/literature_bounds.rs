//! Finite-dimensional diameter bounds next to earlier ones.
//!
//!     cargo run --release --example literature_bounds

use curvgraph::bounds::{literature_comparison, ReportOptions};
use curvgraph::{Dimension, Family, MeasureConvention};

fn main() -> curvgraph::Result<()> {
    let opts = ReportOptions::default();
    for f in [Family::Hypercube(3), Family::Complete(5), Family::Path(2)] {
        let g = f.generate(MeasureConvention::Unit)?;
        for n in [5.0, 10.0] {
            let cmp = literature_comparison(&g, Dimension::Finite(n), &opts)?;
            println!("{f} n={n}:");
            for r in &cmp.rows {
                match (r.bound, r.measured) {
                    (Some(b), Some(m)) => println!("  {:<18} {b:>10.4} >= {m:.4}", r.name),
                    _ => println!("  {:<18} {}", r.name, r.verdict.label()),
                }
            }
            println!("  horn/improved = {:.12}, fathi-shu/distance = {:.12}", cmp.horn_over_improved, cmp.fathi_over_distance);
        }
    }
    Ok(())
}
