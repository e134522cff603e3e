//! Bakry-Émery curvature and Bonnet-Myers diameter bounds on finite weighted
//! graphs.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`graph`] | `(V, w, m)` data model, families, products, JSON format, hop metric |
//! | [`forms`] | `Γ`, `Γ₂` and their local quadratic forms |
//! | [`curvature`] | `K_x(n)` via Schur complement, `CD(K,n)` checks |
//! | [`metrics`] | resistance metric `ρ` and the `d`/`ρ` sandwich |
//! | [`semigroup`] | exact heat semigroup `P_t = e^{tΔ}` and envelope checks |
//! | [`bounds`] | diameter/distance bounds, sharpness, literature comparison |
//! | [`cli`] | the `curvgraph` command line |

pub mod error;
pub mod graph;
pub mod forms;
pub mod curvature;
pub mod metrics;
pub mod semigroup;
pub mod bounds;
pub mod cli;
pub mod real_json;

pub use error::{Error, Result};
pub use graph::{Family, MeasureConvention, WeightedGraph};
pub use curvature::Dimension;
