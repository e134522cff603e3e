//! Every bound for one graph, as text, JSON or CSV.
//!
//!     cargo run --release --example full_report -- [family] [size] [table|json|csv]

use curvgraph::bounds::{full_report, ReportOptions};
use curvgraph::{Family, MeasureConvention};

fn main() -> curvgraph::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let name = args.first().map_or("hypercube", String::as_str);
    let size = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let family = Family::from_name(name, size)?;
    let g = family.generate(MeasureConvention::Unit)?;
    let opts = ReportOptions {
        name: family.to_string(),
        convention: Some(MeasureConvention::Unit),
        ..ReportOptions::default()
    };
    let report = full_report(&g, &opts)?;
    match args.get(2).map(String::as_str) {
        Some("json") => println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap()),
        Some("csv") => print!("{}", report.records_csv()),
        _ => print!("{}", report.to_table()),
    }
    let violations = report.violations();
    if !violations.is_empty() {
        eprintln!("violations: {violations:#?}");
        std::process::exit(1);
    }
    Ok(())
}
