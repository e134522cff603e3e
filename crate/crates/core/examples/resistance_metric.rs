//! The resistance metric `ρ`, its witnesses, and the comparison with hop distance.
//!
//!     cargo run --release --example resistance_metric

use curvgraph::metrics::{
    metric_sandwich_report, resistance_diameter, resistance_distance, Method, PairBudget, ResistanceOptions,
};
use curvgraph::{Family, MeasureConvention};

fn main() -> curvgraph::Result<()> {
    let opts = ResistanceOptions::default();
    for d in 1..=5 {
        let g = Family::Hypercube(d).generate(MeasureConvention::Unit)?;
        let far = g.len() - 1;
        let r = resistance_distance(&g, 0, far, &opts)?;
        println!("Q_{d}: rho(antipodes) = {:.6}  sqrt(2d) = {:.6}  ({} iterations)", r.value, (2.0 * d as f64).sqrt(), r.iterations);
    }

    let g = Family::Path(4).generate(MeasureConvention::Unit)?;
    let r = resistance_distance(&g, 0, 3, &opts)?;
    println!("\npath(4) end to end: {:.6}, witness {:?}", r.value, r.witness.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>());
    let slow = ResistanceOptions { method: Method::Supergradient, ..opts };
    println!("supergradient estimate: {:.6}", resistance_distance(&g, 0, 3, &slow)?.value);

    let c7 = Family::Cycle(7).generate(MeasureConvention::Unit)?;
    let diam = resistance_diameter(&c7, &opts, PairBudget::All)?;
    let (x, y) = diam.pair.unwrap();
    println!("\ncycle(7): diam_rho = {:.6} between {} and {}", diam.value, c7.id(x), c7.id(y));
    println!("{:>4} {:>4} {:>2} {:>9} {:>9} {:>9}", "x", "y", "d", "rho", "lower", "upper");
    for row in metric_sandwich_report(&c7, &opts, PairBudget::Largest(5))? {
        println!("{:>4} {:>4} {:>2} {:>9.5} {:>9.5} {:>9.5}", row.x, row.y, row.d, row.rho, row.lower, row.upper);
    }
    Ok(())
}
