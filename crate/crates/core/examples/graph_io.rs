//! Building, generating, combining and serializing graphs.
//!
//!     cargo run --example graph_io

use curvgraph::graph::{parse_graph, to_json, Family, MeasureConvention, WeightedGraph};

fn main() -> curvgraph::Result<()> {
    let triangle = WeightedGraph::builder()
        .vertex("a", 1.0)
        .vertex("b", 1.0)
        .vertex("c", 2.0)
        .edge("a", "b", 1.0)
        .edge("b", "c", 0.5)
        .edge("c", "a", 0.5)
        .build()?;
    println!("triangle: {} vertices, {} edges, max degree {}", triangle.len(), triangle.edge_count(), triangle.max_degree());

    let text = to_json(&triangle);
    print!("{text}");
    let back = parse_graph(&text)?;
    assert_eq!(to_json(&back), text);

    // Q_3 as K_2 □ K_2 □ K_2.
    let edge = Family::Path(2).generate(MeasureConvention::Unit)?;
    let cube = edge.cartesian_product(&edge)?.cartesian_product(&edge)?;
    println!("K2^3 is Q_{:?}, diameter {}", cube.hypercube_dimension(), cube.combinatorial_diameter());

    for f in [Family::Cycle(6), Family::Star(4), Family::Complete(5)] {
        let g = f.generate(MeasureConvention::Degree)?;
        println!("{f:>12}: diameter {}, sphere S_1(v0) = {:?}", g.combinatorial_diameter(), g.sphere(0, 1));
    }

    match parse_graph(r#"{"vertices":[{"id":"x","m":1}],"edges":[{"u":"x","v":"x","w":1}]}"#) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
