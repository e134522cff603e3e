use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::WeightedGraph;
use crate::error::{Error, Result};

/// Vertex measure convention for generated graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureConvention {
    /// `m ≡ 1` (non-normalized Laplacian).
    #[default]
    Unit,
    /// `m(x) = Σ_y w(x,y)` (normalized Laplacian).
    Degree,
}

impl fmt::Display for MeasureConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeasureConvention::Unit => "unit",
            MeasureConvention::Degree => "degree",
        })
    }
}

impl FromStr for MeasureConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(MeasureConvention::Unit),
            "degree" => Ok(MeasureConvention::Degree),
            other => Err(Error::InvalidArgument(format!(
                "measure convention `{other}` (expected unit or degree)"
            ))),
        }
    }
}

/// Standard graph families with unit edge weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `Q_d`, vertices labelled by `d`-bit strings in binary order.
    Hypercube(usize),
    /// `C_n`; `C_1` is a single vertex and `C_2` a single edge.
    Cycle(usize),
    Complete(usize),
    Path(usize),
    /// One centre `v0` joined to `n` leaves.
    Star(usize),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Hypercube(_) => "hypercube",
            Family::Cycle(_) => "cycle",
            Family::Complete(_) => "complete",
            Family::Path(_) => "path",
            Family::Star(_) => "star",
        }
    }

    pub fn size(&self) -> usize {
        match *self {
            Family::Hypercube(s)
            | Family::Cycle(s)
            | Family::Complete(s)
            | Family::Path(s)
            | Family::Star(s) => s,
        }
    }

    /// Parses `name` and `size`, e.g. `("hypercube", 3)`.
    pub fn from_name(name: &str, size: usize) -> Result<Self> {
        Ok(match name {
            "hypercube" => Family::Hypercube(size),
            "cycle" => Family::Cycle(size),
            "complete" => Family::Complete(size),
            "path" => Family::Path(size),
            "star" => Family::Star(size),
            other => {
                return Err(Error::InvalidArgument(format!("unknown family `{other}`")));
            }
        })
    }

    pub fn generate(&self, convention: MeasureConvention) -> Result<WeightedGraph> {
        let size = self.size();
        if size == 0 {
            return Err(Error::InvalidSize {
                family: self.name(),
                size,
            });
        }
        let (ids, edges): (Vec<String>, Vec<(usize, usize)>) = match *self {
            Family::Hypercube(d) => {
                if d > 20 {
                    return Err(Error::InvalidSize {
                        family: "hypercube",
                        size: d,
                    });
                }
                let n = 1usize << d;
                let ids = (0..n).map(|v| format!("{v:0d$b}")).collect();
                let mut edges = Vec::with_capacity(n * d / 2);
                for v in 0..n {
                    for bit in 0..d {
                        let u = v ^ (1 << bit);
                        if u > v {
                            edges.push((v, u));
                        }
                    }
                }
                (ids, edges)
            }
            Family::Cycle(n) => {
                let edges = match n {
                    1 => vec![],
                    2 => vec![(0, 1)],
                    _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
                };
                (numbered(n), edges)
            }
            Family::Complete(n) => {
                let edges = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .collect();
                (numbered(n), edges)
            }
            Family::Path(n) => (numbered(n), (1..n).map(|i| (i - 1, i)).collect()),
            Family::Star(n) => (numbered(n + 1), (1..=n).map(|i| (0, i)).collect()),
        };
        let measure = match convention {
            MeasureConvention::Unit => vec![1.0; ids.len()],
            MeasureConvention::Degree => {
                let mut deg = vec![0.0; ids.len()];
                for &(u, v) in &edges {
                    deg[u] += 1.0;
                    deg[v] += 1.0;
                }
                if let Some(x) = deg.iter().position(|&d| d == 0.0) {
                    return Err(Error::IsolatedDegreeMeasure(ids[x].clone()));
                }
                deg
            }
        };
        WeightedGraph::from_parts(ids, measure, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.size())
    }
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

impl WeightedGraph {
    /// Same vertices and weights with the measure replaced by `convention`.
    pub fn with_convention(&self, convention: MeasureConvention) -> Result<WeightedGraph> {
        let mut g = self.clone();
        match convention {
            MeasureConvention::Unit => g.measure.iter_mut().for_each(|m| *m = 1.0),
            MeasureConvention::Degree => {
                for x in 0..g.len() {
                    let d = self.weighted_degree(x);
                    if d == 0.0 {
                        return Err(Error::IsolatedDegreeMeasure(self.id(x).to_owned()));
                    }
                    g.measure[x] = d;
                }
            }
        }
        Ok(g)
    }

    /// Cartesian product `G □ H`.
    ///
    /// Vertices `(g,h)` in `g`-major order; `m((g,h)) = m_G(g)·m_H(h)`.
    pub fn cartesian_product(&self, other: &WeightedGraph) -> Result<WeightedGraph> {
        let nh = other.len();
        let at = |g: usize, h: usize| g * nh + h;
        let mut ids = Vec::with_capacity(self.len() * nh);
        let mut measure = Vec::with_capacity(self.len() * nh);
        for g in 0..self.len() {
            for h in 0..nh {
                ids.push(format!("({},{})", self.id(g), other.id(h)));
                measure.push(self.measure(g) * other.measure(h));
            }
        }
        let mut edges = Vec::new();
        for (g, g2, w) in self.edges() {
            edges.extend((0..nh).map(|h| (at(g, h), at(g2, h), w)));
        }
        for (h, h2, w) in other.edges() {
            edges.extend((0..self.len()).map(|g| (at(g, h), at(g, h2), w)));
        }
        WeightedGraph::from_parts(ids, measure, edges)
    }
}
