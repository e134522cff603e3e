//! Finite weighted graphs `(V, w, m)`.
//!
//! A [`WeightedGraph`] stores an ordered vertex list with positive measures
//! and a symmetric, strictly positive edge weight. Vertex functions are plain
//! slices indexed by vertex position.

mod distance;
mod family;
mod io;

use std::collections::HashMap;

pub use distance::{Diameter, DistanceTable};
pub use family::{Family, MeasureConvention};
pub use io::{format_real, parse_graph, to_json};

use crate::error::{Error, Result};

/// Immutable validated graph.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    measure: Vec<f64>,
    // Sorted by neighbour index, weights strictly positive.
    adjacency: Vec<Vec<(usize, f64)>>,
}

/// Incremental constructor. Nothing is checked until [`GraphBuilder::build`].
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertices: Vec<(String, f64)>,
    edges: Vec<(String, String, f64)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: impl Into<String>, m: f64) -> Self {
        self.add_vertex(id, m);
        self
    }

    pub fn edge(mut self, u: impl Into<String>, v: impl Into<String>, w: f64) -> Self {
        self.add_edge(u, v, w);
        self
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, m: f64) {
        self.vertices.push((id.into(), m));
    }

    pub fn add_edge(&mut self, u: impl Into<String>, v: impl Into<String>, w: f64) {
        self.edges.push((u.into(), v.into(), w));
    }

    /// Validates and freezes the graph.
    ///
    /// An edge listed in both directions must carry the same weight; weight
    /// zero is accepted and dropped.
    pub fn build(self) -> Result<WeightedGraph> {
        let mut ids = Vec::with_capacity(self.vertices.len());
        let mut index = HashMap::with_capacity(self.vertices.len());
        let mut measure = Vec::with_capacity(self.vertices.len());
        for (pos, (id, m)) in self.vertices.into_iter().enumerate() {
            if id.is_empty() {
                return Err(Error::EmptyId(pos));
            }
            if !(m > 0.0 && m.is_finite()) {
                return Err(Error::NonPositiveMeasure { id, m });
            }
            if index.insert(id.clone(), pos).is_some() {
                return Err(Error::DuplicateVertex(id));
            }
            ids.push(id);
            measure.push(m);
        }

        let mut weights: HashMap<(usize, usize), f64> = HashMap::new();
        for (u, v, w) in self.edges {
            let iu = *index.get(&u).ok_or_else(|| Error::UnknownVertex(u.clone()))?;
            let iv = *index.get(&v).ok_or_else(|| Error::UnknownVertex(v.clone()))?;
            if iu == iv {
                return Err(Error::SelfLoop(u));
            }
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::InvalidWeight { u, v, w });
            }
            let key = (iu.min(iv), iu.max(iv));
            if let Some(&prev) = weights.get(&key) {
                if prev != w {
                    return Err(Error::AsymmetricWeight {
                        u,
                        v,
                        w_uv: prev,
                        w_vu: w,
                    });
                }
            }
            weights.insert(key, w);
        }

        let mut adjacency = vec![Vec::new(); ids.len()];
        for (&(a, b), &w) in &weights {
            if w > 0.0 {
                adjacency[a].push((b, w));
                adjacency[b].push((a, w));
            }
        }
        for row in &mut adjacency {
            row.sort_by_key(|&(j, _)| j);
        }
        Ok(WeightedGraph {
            ids,
            index,
            measure,
            adjacency,
        })
    }
}

impl WeightedGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::new()
    }

    /// Builds directly from index-based data.
    pub fn from_parts(
        ids: Vec<String>,
        measure: Vec<f64>,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        if ids.len() != measure.len() {
            return Err(Error::LengthMismatch {
                expected: ids.len(),
                got: measure.len(),
            });
        }
        let mut builder = GraphBuilder::new();
        for (id, &m) in ids.iter().zip(&measure) {
            builder.add_vertex(id.clone(), m);
        }
        for (u, v, w) in edges {
            let (Some(a), Some(b)) = (ids.get(u), ids.get(v)) else {
                return Err(Error::VertexOutOfRange(u.max(v)));
            };
            builder.add_edge(a.clone(), b.clone(), w);
        }
        builder.build()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, x: usize) -> &str {
        &self.ids[x]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn measure(&self, x: usize) -> f64 {
        self.measure[x]
    }

    pub fn measures(&self) -> &[f64] {
        &self.measure
    }

    /// Neighbours of `x` with their (strictly positive) weights, in vertex order.
    pub fn neighbors(&self, x: usize) -> &[(usize, f64)] {
        &self.adjacency[x]
    }

    /// `w(x, y)`, zero when not adjacent.
    pub fn weight(&self, x: usize, y: usize) -> f64 {
        self.adjacency[x]
            .binary_search_by_key(&y, |&(j, _)| j)
            .map(|k| self.adjacency[x][k].1)
            .unwrap_or(0.0)
    }

    /// Undirected edges `(u, v, w)` with `u < v`, sorted by index pair.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for (u, row) in self.adjacency.iter().enumerate() {
            out.extend(row.iter().filter(|&&(v, _)| v > u).map(|&(v, w)| (u, v, w)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sum of incident weights, `Σ_y w(x, y)`.
    pub fn weighted_degree(&self, x: usize) -> f64 {
        self.adjacency[x].iter().map(|&(_, w)| w).sum()
    }

    /// `Deg(x) = Σ_y w(x,y) / m(x)`.
    pub fn degree(&self, x: usize) -> f64 {
        self.weighted_degree(x) / self.measure[x]
    }

    pub fn degrees(&self) -> Vec<f64> {
        (0..self.len()).map(|x| self.degree(x)).collect()
    }

    /// `𝒟 = max_x Deg(x)`; zero for the empty graph.
    pub fn max_degree(&self) -> f64 {
        (0..self.len()).map(|x| self.degree(x)).fold(0.0, f64::max)
    }

    pub fn is_isolated(&self, x: usize) -> bool {
        self.adjacency[x].is_empty()
    }

    pub(crate) fn check_function(&self, f: &[f64]) -> Result<()> {
        if f.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: f.len(),
            });
        }
        Ok(())
    }

    /// `Δf(x) = (1/m(x)) Σ_y w(x,y) (f(y) − f(x))` at a single vertex.
    ///
    /// `f` must have one value per vertex; unchecked.
    pub fn laplacian_at(&self, f: &[f64], x: usize) -> f64 {
        let fx = f[x];
        let s: f64 = self.adjacency[x].iter().map(|&(y, w)| w * (f[y] - fx)).sum();
        s / self.measure[x]
    }

    pub fn laplacian_apply(&self, f: &[f64]) -> Result<Vec<f64>> {
        self.check_function(f)?;
        Ok((0..self.len()).map(|x| self.laplacian_at(f, x)).collect())
    }

    /// Same graph with every measure multiplied by `c`.
    pub fn scale_measure(&self, c: f64) -> Result<Self> {
        let mut g = self.clone();
        for m in &mut g.measure {
            *m *= c;
            if !(*m > 0.0 && m.is_finite()) {
                return Err(Error::InvalidArgument(format!("measure scale {c}")));
            }
        }
        Ok(g)
    }

    /// Same graph with every weight multiplied by `c` (`c > 0`).
    pub fn scale_weights(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidArgument(format!("weight scale {c}")));
        }
        let mut g = self.clone();
        for row in &mut g.adjacency {
            for (_, w) in row.iter_mut() {
                *w *= c;
            }
        }
        Ok(g)
    }

    /// Vertex-disjoint union; ids of `other` are suffixed when they collide.
    pub fn disjoint_union(&self, other: &WeightedGraph) -> Result<Self> {
        let mut ids = self.ids.clone();
        for id in &other.ids {
            let mut candidate = id.clone();
            while self.index.contains_key(&candidate) || ids.contains(&candidate) {
                candidate.push('\'');
            }
            ids.push(candidate);
        }
        let mut measure = self.measure.clone();
        measure.extend_from_slice(&other.measure);
        let offset = self.len();
        let edges = self
            .edges()
            .into_iter()
            .chain(other.edges().into_iter().map(|(u, v, w)| (u + offset, v + offset, w)));
        Self::from_parts(ids, measure, edges)
    }

    /// Connected component label per vertex, labels assigned in vertex order.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.len()];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.len() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &(v, _) in &self.adjacency[u] {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Returns `Some(d)` when the underlying unweighted graph is the
    /// `d`-dimensional hypercube.
    ///
    /// Labels the neighbours of vertex 0 with unit bit vectors, propagates
    /// labels outward as the union of predecessor labels, then checks the
    /// labelling is an isomorphism onto `{0,1}^d`.
    pub fn hypercube_dimension(&self) -> Option<usize> {
        let n = self.len();
        if n == 0 || !n.is_power_of_two() {
            return None;
        }
        let d = n.trailing_zeros() as usize;
        if d >= 64 || self.adjacency.iter().any(|row| row.len() != d) {
            return None;
        }
        if d == 0 {
            return Some(0);
        }
        let dist = self.bfs(0);
        let mut label = vec![0u64; n];
        let mut order: Vec<usize> = (0..n).collect();
        if dist.iter().any(Option::is_none) {
            return None;
        }
        order.sort_by_key(|&v| dist[v]);
        for (bit, &(v, _)) in self.adjacency[0].iter().enumerate() {
            label[v] = 1 << bit;
        }
        for &v in &order {
            let dv = dist[v].unwrap();
            if dv < 2 {
                continue;
            }
            label[v] = self.adjacency[v]
                .iter()
                .filter(|&&(u, _)| dist[u] == Some(dv - 1))
                .fold(0, |acc, &(u, _)| acc | label[u]);
        }
        let mut seen = vec![false; n];
        for &l in &label {
            let slot = seen.get_mut(l as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        let hamming_one = self
            .edges()
            .iter()
            .all(|&(u, v, _)| (label[u] ^ label[v]).count_ones() == 1);
        hamming_one.then_some(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge() -> WeightedGraph {
        WeightedGraph::builder()
            .vertex("x", 1.0)
            .vertex("y", 1.0)
            .edge("x", "y", 1.0)
            .build()
            .unwrap()
    }

    #[test]
    fn builder_rejects_invariant_violations() {
        let self_loop = GraphBuilder::new().vertex("a", 1.0).edge("a", "a", 1.0).build();
        assert!(matches!(self_loop, Err(Error::SelfLoop(id)) if id == "a"));

        let dup = GraphBuilder::new().vertex("a", 1.0).vertex("a", 2.0).build();
        assert!(matches!(dup, Err(Error::DuplicateVertex(_))));

        let m0 = GraphBuilder::new().vertex("a", 0.0).build();
        assert!(matches!(m0, Err(Error::NonPositiveMeasure { .. })));

        let neg = GraphBuilder::new()
            .vertex("a", 1.0)
            .vertex("b", 1.0)
            .edge("a", "b", -1.0)
            .build();
        assert!(matches!(neg, Err(Error::InvalidWeight { .. })));

        let asym = GraphBuilder::new()
            .vertex("a", 1.0)
            .vertex("b", 1.0)
            .edge("a", "b", 1.0)
            .edge("b", "a", 2.0)
            .build();
        assert!(matches!(asym, Err(Error::AsymmetricWeight { .. })));

        let unknown = GraphBuilder::new().vertex("a", 1.0).edge("a", "z", 1.0).build();
        assert!(matches!(unknown, Err(Error::UnknownVertex(id)) if id == "z"));
    }

    #[test]
    fn zero_weight_edges_are_dropped() {
        let g = GraphBuilder::new()
            .vertex("a", 1.0)
            .vertex("b", 1.0)
            .edge("a", "b", 0.0)
            .build()
            .unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!(g.is_isolated(0));
        assert_eq!(g.degree(0), 0.0);
    }

    #[test]
    fn laplacian_on_single_edge() {
        let g = edge();
        assert_eq!(g.laplacian_apply(&[0.0, 1.0]).unwrap(), vec![1.0, -1.0]);
        assert_eq!(g.laplacian_apply(&[3.0, 3.0]).unwrap(), vec![0.0, 0.0]);
        assert!(matches!(
            g.laplacian_apply(&[1.0]),
            Err(Error::LengthMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn weight_lookup_is_symmetric() {
        let g = edge();
        assert_eq!(g.weight(0, 1), 1.0);
        assert_eq!(g.weight(1, 0), 1.0);
        assert_eq!(g.weight(0, 0), 0.0);
    }

    #[test]
    fn hypercube_recognition() {
        for d in 1..=5 {
            let q = Family::Hypercube(d).generate(MeasureConvention::Unit).unwrap();
            assert_eq!(q.hypercube_dimension(), Some(d));
        }
        let c4 = Family::Cycle(4).generate(MeasureConvention::Unit).unwrap();
        assert_eq!(c4.hypercube_dimension(), Some(2));
        for g in [
            Family::Cycle(8),
            Family::Complete(4),
            Family::Star(3),
            Family::Path(4),
        ] {
            let g = g.generate(MeasureConvention::Unit).unwrap();
            assert_eq!(g.hypercube_dimension(), None, "{g:?}");
        }
        // 3-regular on 8 vertices but not Q_3: the circulant C_8(1,4).
        let mut edges: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8, 1.0)).collect();
        edges.extend((0..4).map(|i| (i, i + 4, 1.0)));
        let ids = (0..8).map(|i| format!("v{i}")).collect();
        let wagner = WeightedGraph::from_parts(ids, vec![1.0; 8], edges).unwrap();
        assert_eq!(wagner.hypercube_dimension(), None);
    }

    #[test]
    fn components_and_union() {
        let g = edge().disjoint_union(&edge()).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.component_count(), 2);
        assert!(!g.is_connected());
        assert_eq!(g.ids()[2], "x'");
    }
}
