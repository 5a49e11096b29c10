//! Witness types and the validators that check them against a host graph.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Graph;
use crate::bitset::BitSet;

/// Vertex labeling with colors `0..palette_size`, every color used.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexColoring {
    colors: Vec<usize>,
    palette_size: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("color indices must be exactly 0..k with every color used (missing color {missing})")]
pub struct SparsePalette {
    pub missing: usize,
}

impl VertexColoring {
    pub fn new(colors: Vec<usize>) -> Result<Self, SparsePalette> {
        let palette_size = colors.iter().max().map_or(0, |&m| m + 1);
        let mut used = vec![false; palette_size];
        for &c in &colors {
            used[c] = true;
        }
        if let Some(missing) = used.iter().position(|u| !u) {
            return Err(SparsePalette { missing });
        }
        Ok(Self {
            colors,
            palette_size,
        })
    }

    /// Renames colors to `0..k`, preserving their relative order.
    pub fn compacted(raw: &[usize]) -> Self {
        let mut distinct: Vec<usize> = raw.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let colors = raw
            .iter()
            .map(|c| distinct.binary_search(c).expect("present"))
            .collect();
        Self {
            colors,
            palette_size: distinct.len(),
        }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    /// Color classes, indexed by color.
    pub fn classes(&self) -> Vec<VertexSet> {
        let mut classes = vec![Vec::new(); self.palette_size];
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c].push(v);
        }
        classes.into_iter().map(VertexSet::from_sorted).collect()
    }
}

impl TryFrom<Vec<usize>> for VertexColoring {
    type Error = SparsePalette;

    fn try_from(v: Vec<usize>) -> Result<Self, SparsePalette> {
        Self::new(v)
    }
}

impl From<VertexColoring> for Vec<usize> {
    fn from(c: VertexColoring) -> Self {
        c.colors
    }
}

/// Edge labeling keyed by `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(
    from = "Vec<(usize, usize, usize)>",
    into = "Vec<(usize, usize, usize)>"
)]
pub struct EdgeColoring {
    colors: BTreeMap<(usize, usize), usize>,
}

impl EdgeColoring {
    pub fn new<I: IntoIterator<Item = ((usize, usize), usize)>>(it: I) -> Self {
        Self {
            colors: it
                .into_iter()
                .map(|((u, v), c)| ((u.min(v), u.max(v)), c))
                .collect(),
        }
    }

    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.colors.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.colors.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn palette_size(&self) -> usize {
        let mut cs: Vec<usize> = self.colors.values().copied().collect();
        cs.sort_unstable();
        cs.dedup();
        cs.len()
    }
}

impl From<Vec<(usize, usize, usize)>> for EdgeColoring {
    fn from(v: Vec<(usize, usize, usize)>) -> Self {
        Self::new(v.into_iter().map(|(a, b, c)| ((a, b), c)))
    }
}

impl From<EdgeColoring> for Vec<(usize, usize, usize)> {
    fn from(e: EdgeColoring) -> Self {
        e.colors.into_iter().map(|((a, b), c)| (a, b, c)).collect()
    }
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        Self::new(v)
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Self {
        s.members
    }
}

/// Classes meant to be disjoint, nonempty, and to cover the vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    pub classes: Vec<VertexSet>,
}

impl Partition {
    pub fn new(classes: Vec<VertexSet>) -> Self {
        Self { classes }
    }

    /// Coloring that gives class `i` color `i`. Assumes the partition covers `0..n`.
    pub fn to_coloring(&self, n: usize) -> VertexColoring {
        let mut colors = vec![0; n];
        for (i, class) in self.classes.iter().enumerate() {
            for &v in class.members() {
                colors[v] = i;
            }
        }
        VertexColoring::compacted(&colors)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "data", rename_all = "kebab-case")]
pub enum Certificate {
    VertexColoring(VertexColoring),
    EdgeColoring(EdgeColoring),
    VertexSet(VertexSet),
    Matching(Vec<(usize, usize)>),
    Partition(Partition),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    ProperColoring,
    InjectiveColoring,
    ProperEdgeColoring,
    OpenPacking,
    TwoPacking,
    Matching,
    /// Partition into open packings, optionally each of exactly `class_size`.
    OpenPackingPartition {
        class_size: Option<usize>,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("certificate covers {got} items but the graph has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vertex {0} is not a vertex of the graph")]
    VertexOutOfRange(usize),
    #[error("certificate of this shape cannot be checked as {0:?}")]
    WrongShape(CertificateKind),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum Violation {
    AdjacentSameColor {
        u: usize,
        v: usize,
        color: usize,
    },
    /// `u` and `w` are both adjacent to `center` and share a color.
    CommonNeighborSameColor {
        center: usize,
        u: usize,
        w: usize,
        color: usize,
    },
    EdgeNotInGraph {
        u: usize,
        v: usize,
    },
    UncoloredEdge {
        u: usize,
        v: usize,
    },
    IncidentEdgesSameColor {
        vertex: usize,
        a: usize,
        b: usize,
        color: usize,
    },
    /// Two members of the set share the neighbor `center`.
    SharedNeighbor {
        center: usize,
        u: usize,
        w: usize,
    },
    /// Two members of the set are adjacent.
    Adjacent {
        u: usize,
        v: usize,
    },
    VertexReused {
        vertex: usize,
    },
    EmptyClass {
        class: usize,
    },
    Uncovered {
        vertex: usize,
    },
    ClassSize {
        class: usize,
        size: usize,
        expected: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            serde_json::to_string(self).map_err(|_| fmt::Error)?
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Valid,
    Invalid(Violation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

fn check_len(g: &Graph, len: usize) -> Result<(), CertificateError> {
    if len != g.n() {
        return Err(CertificateError::DimensionMismatch {
            expected: g.n(),
            got: len,
        });
    }
    Ok(())
}

fn check_members(g: &Graph, members: &[usize]) -> Result<(), CertificateError> {
    match members.iter().find(|&&v| v >= g.n()) {
        Some(&v) => Err(CertificateError::VertexOutOfRange(v)),
        None => Ok(()),
    }
}

fn proper(g: &Graph, c: &VertexColoring) -> Verdict {
    for (u, v) in g.edges() {
        if c.color(u) == c.color(v) {
            return Verdict::Invalid(Violation::AdjacentSameColor {
                u,
                v,
                color: c.color(u),
            });
        }
    }
    Verdict::Valid
}

fn injective(g: &Graph, c: &VertexColoring) -> Verdict {
    for center in 0..g.n() {
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        for w in g.neighbors(center).iter() {
            if let Some(&u) = seen.get(&c.color(w)) {
                return Verdict::Invalid(Violation::CommonNeighborSameColor {
                    center,
                    u,
                    w,
                    color: c.color(w),
                });
            }
            seen.insert(c.color(w), w);
        }
    }
    Verdict::Valid
}

fn proper_edge(g: &Graph, c: &EdgeColoring) -> Verdict {
    for ((u, v), _) in c.iter() {
        if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
            return Verdict::Invalid(Violation::EdgeNotInGraph { u, v });
        }
    }
    for (u, v) in g.edges() {
        if c.get(u, v).is_none() {
            return Verdict::Invalid(Violation::UncoloredEdge { u, v });
        }
    }
    for vertex in 0..g.n() {
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        for w in g.neighbors(vertex).iter() {
            let color = c.get(vertex, w).expect("checked above");
            if let Some(&a) = seen.get(&color) {
                return Verdict::Invalid(Violation::IncidentEdgesSameColor {
                    vertex,
                    a,
                    b: w,
                    color,
                });
            }
            seen.insert(color, w);
        }
    }
    Verdict::Valid
}

fn open_packing(g: &Graph, s: &VertexSet) -> Verdict {
    let mut hit = vec![usize::MAX; g.n()];
    for &u in s.members() {
        for center in g.neighbors(u).iter() {
            if hit[center] != usize::MAX {
                return Verdict::Invalid(Violation::SharedNeighbor {
                    center,
                    u: hit[center],
                    w: u,
                });
            }
            hit[center] = u;
        }
    }
    Verdict::Valid
}

fn two_packing(g: &Graph, s: &VertexSet) -> Verdict {
    let members = s.members();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            if g.has_edge(u, v) {
                return Verdict::Invalid(Violation::Adjacent { u, v });
            }
        }
    }
    open_packing(g, s)
}

fn matching(g: &Graph, m: &[(usize, usize)]) -> Verdict {
    let mut used = BitSet::new(g.n());
    for &(u, v) in m {
        if !g.has_edge(u, v) {
            return Verdict::Invalid(Violation::EdgeNotInGraph { u, v });
        }
        for x in [u, v] {
            if used.contains(x) {
                return Verdict::Invalid(Violation::VertexReused { vertex: x });
            }
            used.insert(x);
        }
    }
    Verdict::Valid
}

fn packing_partition(g: &Graph, p: &Partition, class_size: Option<usize>) -> Verdict {
    let mut used = BitSet::new(g.n());
    for (i, class) in p.classes.iter().enumerate() {
        if class.is_empty() {
            return Verdict::Invalid(Violation::EmptyClass { class: i });
        }
        if let Some(expected) = class_size {
            if class.len() != expected {
                return Verdict::Invalid(Violation::ClassSize {
                    class: i,
                    size: class.len(),
                    expected,
                });
            }
        }
        for &v in class.members() {
            if used.contains(v) {
                return Verdict::Invalid(Violation::VertexReused { vertex: v });
            }
            used.insert(v);
        }
        if let v @ Verdict::Invalid(_) = open_packing(g, class) {
            return v;
        }
    }
    match (0..g.n()).find(|&v| !used.contains(v)) {
        Some(vertex) => Verdict::Invalid(Violation::Uncovered { vertex }),
        None => Verdict::Valid,
    }
}

/// Checks `cert` against the defining condition of `kind` on `g`.
///
/// Shape and dimension problems are input errors; a well-formed certificate
/// that fails the condition yields [`Verdict::Invalid`] with a concrete witness.
pub fn validate_certificate(
    g: &Graph,
    cert: &Certificate,
    kind: CertificateKind,
) -> Result<Verdict, CertificateError> {
    use CertificateKind as K;
    match (kind, cert) {
        (K::ProperColoring, Certificate::VertexColoring(c)) => {
            check_len(g, c.len())?;
            Ok(proper(g, c))
        }
        (K::InjectiveColoring, Certificate::VertexColoring(c)) => {
            check_len(g, c.len())?;
            Ok(injective(g, c))
        }
        (K::ProperEdgeColoring, Certificate::EdgeColoring(c)) => Ok(proper_edge(g, c)),
        (K::OpenPacking, Certificate::VertexSet(s)) => {
            check_members(g, s.members())?;
            Ok(open_packing(g, s))
        }
        (K::TwoPacking, Certificate::VertexSet(s)) => {
            check_members(g, s.members())?;
            Ok(two_packing(g, s))
        }
        (K::Matching, Certificate::Matching(m)) => {
            let flat: Vec<usize> = m.iter().flat_map(|&(u, v)| [u, v]).collect();
            check_members(g, &flat)?;
            Ok(matching(g, m))
        }
        (K::OpenPackingPartition { class_size }, Certificate::Partition(p)) => {
            for class in &p.classes {
                check_members(g, class.members())?;
            }
            Ok(packing_partition(g, p, class_size))
        }
        (kind, _) => Err(CertificateError::WrongShape(kind)),
    }
}
