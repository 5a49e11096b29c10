//! Simple undirected graphs with dense vertex ids and bitset adjacency, plus
//! the auxiliary graphs every solver reduces to.

mod certificate;
pub mod graph6;
mod matching;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;

pub use certificate::{
    validate_certificate, Certificate, CertificateError, CertificateKind, EdgeColoring, Partition,
    Verdict, VertexColoring, VertexSet, Violation,
};
pub use matching::maximum_matching;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
}

/// Finite simple graph on vertices `0..n`.
///
/// Labels are an optional sidecar; nothing in the solvers reads them.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BitSet>,
    labels: Option<Vec<String>>,
}

/// Graph distance, where disconnected pairs are infinitely far apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// Which pairs of vertices a conflict graph joins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConflictMode {
    /// `u ~ w` iff `N(u) ∩ N(w) ≠ ∅`: injective coloring / open packing conflicts.
    CommonNeighbor,
    /// `u ~ w` iff `1 <= dist(u, w) <= 2`: 2-distance coloring / 2-packing conflicts.
    Distance2,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: (0..n).map(|_| BitSet::new(n)).collect(),
            labels: None,
        }
    }

    /// Builds a graph from an edge list. Repeated edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn from_adjacency(adj: Vec<BitSet>) -> Self {
        debug_assert!(adj.iter().enumerate().all(|(v, row)| !row.contains(v)));
        Self { adj, labels: None }
    }

    fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    /// Attaches display labels; they must be pairwise distinct and one per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n() {
            return Err(GraphError::LabelCount {
                expected: self.n(),
                got: labels.len(),
            });
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.n()).any(|v| self.degree(v) == 0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `v`, or its id when the graph is unlabeled.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|v| {
                let mut row = BitSet::full(n).difference(&self.adj[v]);
                row.remove(v);
                row
            })
            .collect();
        Graph::from_adjacency(adj)
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut g = Graph::empty(k);
        for i in 0..k {
            for j in (i + 1)..k {
                if self.has_edge(vertices[i], vertices[j]) {
                    g.adj[i].insert(j);
                    g.adj[j].insert(i);
                }
            }
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(vertices.iter().map(|&v| labels[v].clone()).collect());
        }
        g
    }

    /// Breadth-first distances from `src`; `None` marks unreachable vertices.
    pub fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for w in self.adj[u].iter() {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Distance {
        self.bfs(u)[v].map_or(Distance::Infinite, Distance::Finite)
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    /// Maximum eccentricity; infinite iff the graph is disconnected.
    /// The empty graph and `K1` have diameter 0.
    pub fn diameter(&self) -> Distance {
        let mut best = 0;
        for v in 0..self.n() {
            for d in self.bfs(v) {
                match d {
                    Some(d) => best = best.max(d),
                    None => return Distance::Infinite,
                }
            }
        }
        Distance::Finite(best)
    }

    /// Graph on the same vertex set whose edges are the conflicting pairs under `mode`.
    pub fn conflict_graph(&self, mode: ConflictMode) -> Graph {
        let n = self.n();
        let mut adj: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        for c in 0..n {
            // Every pair inside N(c) shares the neighbor c.
            let nb = self.adj[c].to_vec();
            for (i, &u) in nb.iter().enumerate() {
                for &w in &nb[i + 1..] {
                    adj[u].insert(w);
                    adj[w].insert(u);
                }
            }
        }
        if mode == ConflictMode::Distance2 {
            for (v, row) in adj.iter_mut().enumerate() {
                row.union_with(&self.adj[v]);
            }
        }
        for (v, row) in adj.iter_mut().enumerate() {
            row.remove(v);
        }
        Graph::from_adjacency(adj)
    }

    /// One vertex per edge (in [`Graph::edges`] order); two are adjacent iff the
    /// edges share an endpoint. Labels record the endpoint pairs.
    pub fn line_graph(&self) -> Graph {
        let edges = self.edges();
        let m = edges.len();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        let mut adj: Vec<BitSet> = (0..m).map(|_| BitSet::new(m)).collect();
        for inc in &incident {
            for (a, &e) in inc.iter().enumerate() {
                for &f in &inc[a + 1..] {
                    adj[e].insert(f);
                    adj[f].insert(e);
                }
            }
        }
        let labels = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        Graph::from_adjacency(adj)
            .with_labels(labels)
            .expect("edge labels are distinct")
    }

    /// True iff every edge has a common neighbor of its endpoints.
    pub fn every_edge_in_triangle(&self) -> bool {
        self.edges()
            .into_iter()
            .all(|(u, v)| self.adj[u].intersects(&self.adj[v]))
    }

    /// A perfect matching using only edges that lie in no triangle, if one exists.
    pub fn matching_avoiding_triangles(&self) -> Option<Vec<(usize, usize)>> {
        if self.n() % 2 == 1 {
            return None;
        }
        let free_edges = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| !self.adj[u].intersects(&self.adj[v]));
        let sub = Graph::from_edges(self.n(), free_edges).expect("edges come from self");
        let m = maximum_matching(&sub);
        (2 * m.len() == self.n()).then_some(m)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct LabelSidecar {
    labels: Vec<String>,
}

/// JSON sidecar `{"labels": [...]}` for a labeled graph.
pub fn labels_to_json(g: &Graph) -> Option<String> {
    g.labels().map(|l| {
        serde_json::to_string(&LabelSidecar { labels: l.to_vec() }).expect("labels serialize")
    })
}

pub fn labels_from_json(json: &str) -> Result<Vec<String>, serde_json::Error> {
    serde_json::from_str::<LabelSidecar>(json).map(|s| s.labels)
}
