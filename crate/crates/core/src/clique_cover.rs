//! Sparse edge clique covers, the derived graph `G^C`, and the coloring lift
//! that turns a proper coloring of `G` into an injective coloring of `G^C`.

use serde::Serialize;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::families::{self, FamilyError};
use crate::graph::{
    validate_certificate, Certificate, CertificateKind, Graph, Verdict, VertexColoring, Violation,
};

#[derive(Debug, Error)]
pub enum CoverError {
    #[error("clique {clique} is empty")]
    EmptyClique { clique: usize },
    #[error("clique {clique} names vertex {vertex}, which is not in the graph")]
    VertexOutOfRange { clique: usize, vertex: usize },
    #[error("clique {clique} is not complete: {u} and {v} are not adjacent")]
    NotAClique { clique: usize, u: usize, v: usize },
    #[error("edge {u}-{v} lies in no clique of the cover")]
    UncoveredEdge { u: usize, v: usize },
    #[error("cover is not sparse: vertex {vertex} lies in {count} cliques")]
    NotSparse { vertex: usize, count: usize },
    #[error("input coloring is not proper: {0}")]
    ImproperColoring(Violation),
    #[error("coloring has {got} entries, graph has {expected} vertices")]
    ColoringLength { expected: usize, got: usize },
    #[error("derived graph and Sierpinski graph disagree at {0}")]
    IsoMismatch(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Verified edge clique cover. Cliques are stored with sorted members, in the
/// order given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCliqueCover {
    cliques: Vec<Vec<usize>>,
    #[serde(skip)]
    sparse: bool,
}

impl EdgeCliqueCover {
    pub fn cliques(&self) -> &[Vec<usize>] {
        &self.cliques
    }

    /// Every vertex lies in at most two cliques.
    pub fn is_sparse(&self) -> bool {
        self.sparse
    }

    /// Cover serialization: a JSON list of vertex-id lists.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.cliques).expect("cliques serialize")
    }

    pub fn from_json(g: &Graph, json: &str) -> Result<Self, CoverJsonError> {
        let cliques: Vec<Vec<usize>> = serde_json::from_str(json)?;
        Ok(verify_cover(g, cliques)?)
    }
}

#[derive(Debug, Error)]
pub enum CoverJsonError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

/// Checks that every listed set is a nonempty clique of `g` and that every
/// edge lies in one of them; reports the first violation.
pub fn verify_cover(g: &Graph, cliques: Vec<Vec<usize>>) -> Result<EdgeCliqueCover, CoverError> {
    let n = g.n();
    let mut membership = vec![0usize; n];
    let mut cliques = cliques;
    for (ci, clique) in cliques.iter_mut().enumerate() {
        clique.sort_unstable();
        clique.dedup();
        if clique.is_empty() {
            return Err(CoverError::EmptyClique { clique: ci });
        }
        if let Some(&vertex) = clique.iter().find(|&&v| v >= n) {
            return Err(CoverError::VertexOutOfRange { clique: ci, vertex });
        }
        for (i, &u) in clique.iter().enumerate() {
            if let Some(&v) = clique[i + 1..].iter().find(|&&v| !g.has_edge(u, v)) {
                return Err(CoverError::NotAClique { clique: ci, u, v });
            }
            membership[u] += 1;
        }
    }
    let mut covered: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
    for clique in &cliques {
        for &u in clique {
            for &v in clique {
                if u != v {
                    covered[u].insert(v);
                }
            }
        }
    }
    if let Some((u, v)) = g
        .edges()
        .into_iter()
        .find(|&(u, v)| !covered[u].contains(v))
    {
        return Err(CoverError::UncoveredEdge { u, v });
    }
    let sparse = membership.iter().all(|&c| c <= 2);
    Ok(EdgeCliqueCover { cliques, sparse })
}

/// The graph `G^C` with the provenance of each of its vertices.
#[derive(Debug, Clone)]
pub struct DerivedGraph {
    pub graph: Graph,
    /// Derived vertex -> (clique index, original vertex).
    pub origin: Vec<(usize, usize)>,
}

/// Builds `G^C`: one vertex per (clique, member) pair, ordered by clique then
/// member; cliques stay complete, and the two copies of a vertex that lies in
/// two cliques are joined by a single edge.
pub fn derived_graph(g: &Graph, cover: &EdgeCliqueCover) -> Result<DerivedGraph, CoverError> {
    let mut copies: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    let mut origin = Vec::new();
    for (ci, clique) in cover.cliques.iter().enumerate() {
        for &v in clique {
            copies[v].push(origin.len());
            origin.push((ci, v));
        }
    }
    if let Some((vertex, c)) = copies.iter().enumerate().find(|(_, c)| c.len() > 2) {
        return Err(CoverError::NotSparse {
            vertex,
            count: c.len(),
        });
    }
    let mut edges = Vec::new();
    let mut start = 0;
    for clique in &cover.cliques {
        let k = clique.len();
        for a in 0..k {
            for b in (a + 1)..k {
                edges.push((start + a, start + b));
            }
        }
        start += k;
    }
    for c in &copies {
        if let [x, y] = c[..] {
            edges.push((x, y));
        }
    }
    let labels = origin
        .iter()
        .map(|&(ci, v)| format!("{}@{ci}", g.label(v)))
        .collect();
    let graph = Graph::from_edges(origin.len(), edges)
        .expect("derived ids in range")
        .with_labels(labels)
        .expect("(clique, vertex) pairs are distinct");
    Ok(DerivedGraph { graph, origin })
}

/// Gives every copy of `x` in `G^C` the color of `x`.
///
/// With a proper coloring as input the result is injective on `G^C`, so
/// `χi(G^C) <= χ(G)`.
pub fn lift_coloring(
    g: &Graph,
    cover: &EdgeCliqueCover,
    proper: &VertexColoring,
) -> Result<VertexColoring, CoverError> {
    if proper.len() != g.n() {
        return Err(CoverError::ColoringLength {
            expected: g.n(),
            got: proper.len(),
        });
    }
    let cert = Certificate::VertexColoring(proper.clone());
    if let Verdict::Invalid(v) =
        validate_certificate(g, &cert, CertificateKind::ProperColoring).expect("length checked")
    {
        return Err(CoverError::ImproperColoring(v));
    }
    if !cover.is_sparse() {
        let derived = derived_graph(g, cover);
        return Err(derived.expect_err("non-sparse cover rejected"));
    }
    let raw: Vec<usize> = cover
        .cliques
        .iter()
        .flat_map(|c| c.iter().map(|&v| proper.color(v)))
        .collect();
    Ok(VertexColoring::compacted(&raw))
}

/// The canonical cover of `Ŝ_p^n` and the isomorphism `(Ŝ_p^n)^C ≅ S_p^n`.
#[derive(Debug, Clone)]
pub struct SierpinskiCover {
    pub triangle: Graph,
    pub cover: EdgeCliqueCover,
    pub derived: DerivedGraph,
    pub sierpinski: Graph,
    /// Derived vertex id -> `S_p^n` vertex id.
    pub iso: Vec<usize>,
}

/// Covers `Ŝ_p^n` by the images of the `p^{n-1}` canonical `K_p` cliques of
/// `S_p^n` and checks, edge by edge, that the derived graph is `S_p^n`.
pub fn sierpinski_cover(p: usize, n: usize) -> Result<SierpinskiCover, CoverError> {
    let (triangle, sierpinski, map) = families::sierpinski_triangle_with_map(p, n)?;
    let blocks = sierpinski.n() / p;
    let cliques: Vec<Vec<usize>> = (0..blocks)
        .map(|b| (0..p).map(|j| map[b * p + j]).collect())
        .collect();
    let cover = verify_cover(&triangle, cliques)?;
    if !cover.is_sparse() {
        return Err(CoverError::IsoMismatch(
            "canonical cover is not sparse".into(),
        ));
    }
    let derived = derived_graph(&triangle, &cover)?;
    // Derived vertex (clique b, member m) is the S vertex of block b mapped to m.
    let iso: Vec<usize> = derived
        .origin
        .iter()
        .map(|&(b, m)| {
            (0..p)
                .map(|j| b * p + j)
                .find(|&s| map[s] == m)
                .expect("every clique member has a preimage in its block")
        })
        .collect();
    check_isomorphism(&derived.graph, &sierpinski, &iso)?;
    Ok(SierpinskiCover {
        triangle,
        cover,
        derived,
        sierpinski,
        iso,
    })
}

/// Asserts that `iso` is a bijection `V(a) -> V(b)` preserving edges and
/// non-edges.
pub fn check_isomorphism(a: &Graph, b: &Graph, iso: &[usize]) -> Result<(), CoverError> {
    if a.n() != b.n() || iso.len() != a.n() {
        return Err(CoverError::IsoMismatch(format!(
            "orders {} and {} with map of length {}",
            a.n(),
            b.n(),
            iso.len()
        )));
    }
    let mut hit = vec![false; b.n()];
    for &x in iso {
        if x >= b.n() || std::mem::replace(&mut hit[x], true) {
            return Err(CoverError::IsoMismatch(format!(
                "map is not injective at {x}"
            )));
        }
    }
    if a.edge_count() != b.edge_count() {
        return Err(CoverError::IsoMismatch("edge counts differ".into()));
    }
    for (u, v) in a.edges() {
        if !b.has_edge(iso[u], iso[v]) {
            return Err(CoverError::IsoMismatch(format!("edge {u}-{v}")));
        }
    }
    Ok(())
}

/// Exhaustive search for a sparse edge clique cover; meant for desk-scale graphs.
///
/// Enumerates every clique on at least two vertices and backtracks over the
/// lowest uncovered edge, keeping each vertex in at most two chosen cliques.
/// Isolated vertices are covered by singleton cliques so that they survive in
/// the derived graph.
pub fn find_sparse_cover(g: &Graph) -> Option<EdgeCliqueCover> {
    let n = g.n();
    let mut cliques: Vec<BitSet> = Vec::new();
    fn extend(g: &Graph, current: &mut Vec<usize>, cand: BitSet, out: &mut Vec<BitSet>) {
        for v in cand.iter() {
            current.push(v);
            if current.len() >= 2 {
                out.push(BitSet::from_iter_with_capacity(
                    g.n(),
                    current.iter().copied(),
                ));
            }
            let mut next = cand.intersection(g.neighbors(v));
            for w in cand.iter().take_while(|&w| w <= v) {
                next.remove(w);
            }
            extend(g, current, next, out);
            current.pop();
        }
    }
    extend(g, &mut Vec::new(), BitSet::full(n), &mut cliques);
    // Larger cliques first: they cover more edges per membership slot.
    cliques.sort_by_key(|c| std::cmp::Reverse(c.len()));

    let edges = g.edges();
    let mut chosen: Vec<usize> = Vec::new();
    let mut uses = vec![0u8; n];

    fn covered(cliques: &[BitSet], chosen: &[usize], u: usize, v: usize) -> bool {
        chosen
            .iter()
            .any(|&c| cliques[c].contains(u) && cliques[c].contains(v))
    }

    fn search(
        cliques: &[BitSet],
        edges: &[(usize, usize)],
        chosen: &mut Vec<usize>,
        uses: &mut [u8],
    ) -> bool {
        let Some(&(u, v)) = edges
            .iter()
            .find(|&&(u, v)| !covered(cliques, chosen, u, v))
        else {
            return true;
        };
        for (ci, c) in cliques.iter().enumerate() {
            if !(c.contains(u) && c.contains(v)) || c.iter().any(|x| uses[x] >= 2) {
                continue;
            }
            c.iter().for_each(|x| uses[x] += 1);
            chosen.push(ci);
            if search(cliques, edges, chosen, uses) {
                return true;
            }
            chosen.pop();
            c.iter().for_each(|x| uses[x] -= 1);
        }
        false
    }

    if !search(&cliques, &edges, &mut chosen, &mut uses) {
        return None;
    }
    let mut sets: Vec<Vec<usize>> = chosen.iter().map(|&c| cliques[c].to_vec()).collect();
    sets.sort();
    sets.extend((0..n).filter(|&v| g.degree(v) == 0).map(|v| vec![v]));
    let cover = verify_cover(g, sets).expect("search produces a cover");
    debug_assert!(cover.is_sparse());
    Some(cover)
}
