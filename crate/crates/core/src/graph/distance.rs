use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use super::WeightedGraph;

/// Combinatorial diameter, or `Unreachable` when the graph is disconnected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    Unreachable,
}

impl Diameter {
    pub fn finite(self) -> Option<usize> {
        match self {
            Diameter::Finite(d) => Some(d),
            Diameter::Unreachable => None,
        }
    }
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Unreachable => f.write_str("UNREACHABLE"),
        }
    }
}

impl Serialize for Diameter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Diameter::Finite(d) => s.serialize_u64(*d as u64),
            Diameter::Unreachable => s.serialize_str("UNREACHABLE"),
        }
    }
}

/// All-pairs hop counts over strictly positive edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    // Row-major; `None` is UNREACHABLE.
    hops: Vec<Option<usize>>,
}

impl DistanceTable {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, x: usize, y: usize) -> Option<usize> {
        self.hops[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[Option<usize>] {
        &self.hops[x * self.n..(x + 1) * self.n]
    }

    pub fn diameter(&self) -> Diameter {
        let mut best = 0;
        for h in &self.hops {
            match h {
                Some(d) => best = best.max(*d),
                None => return Diameter::Unreachable,
            }
        }
        Diameter::Finite(best)
    }
}

impl WeightedGraph {
    /// Hop distances from `source`.
    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        self.bfs_limited(source, usize::MAX)
    }

    fn bfs_limited(&self, source: usize, radius: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            if du == radius {
                continue;
            }
            for &(v, _) in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn combinatorial_distances(&self) -> DistanceTable {
        let n = self.len();
        let mut hops = Vec::with_capacity(n * n);
        for x in 0..n {
            hops.extend(self.bfs(x));
        }
        DistanceTable { n, hops }
    }

    pub fn combinatorial_diameter(&self) -> Diameter {
        self.combinatorial_distances().diameter()
    }

    /// `{y : d(x,y) ≤ r}` in vertex order.
    pub fn ball(&self, x: usize, r: usize) -> Vec<usize> {
        self.bfs_limited(x, r)
            .iter()
            .enumerate()
            .filter_map(|(y, d)| d.map(|_| y))
            .collect()
    }

    /// `{y : d(x,y) = r}` in vertex order.
    pub fn sphere(&self, x: usize, r: usize) -> Vec<usize> {
        self.bfs_limited(x, r)
            .iter()
            .enumerate()
            .filter_map(|(y, d)| (*d == Some(r)).then_some(y))
            .collect()
    }
}
