//! Kneser-graph packings, the diameter-2 perfect colorability criterion, and
//! Fano planes as the maximum 2-packings of `K(7,3)`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{kneser, kneser_subsets, subset_label, FamilyError};
use crate::graph::{
    validate_certificate, Certificate, CertificateKind, Distance, Graph, Partition, VertexSet,
};
use crate::solvers::{
    injective_chromatic_number, max_open_packing, max_two_packing, perfect_injective_colorability,
    PerfectOutcome, PerfectRoute, SolveOptions,
};

#[derive(Debug, Error)]
pub enum KneserError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("budget exhausted while computing {0}")]
    Budget(String),
    #[error("{0}")]
    Inconsistent(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// `ρ₂(K(3r-2, r))`.
pub fn two_packing_formula(r: usize) -> Result<usize, KneserError> {
    match r {
        0..=2 => Err(KneserError::Parameter(format!(
            "formula needs r >= 3, got {r}"
        ))),
        3 => Ok(7),
        4 => Ok(5),
        _ => Ok(3),
    }
}

/// `ρ^o(K(3r-2, r))`, which coincides with the 2-packing number.
pub fn open_packing_formula(r: usize) -> Result<usize, KneserError> {
    two_packing_formula(r)
}

/// `diam(K(n, r)) = 2` exactly when `n >= 3r - 1`, for `r >= 2`. The
/// graphs `K(n, 1)` are complete.
pub fn diameter2_condition(n: usize, r: usize) -> bool {
    r >= 2 && n + 1 >= 3 * r
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Seven lines on the points `0..7`, every pair of points on exactly one line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FanoPlane {
    lines: Vec<[usize; 3]>,
}

impl FanoPlane {
    /// Checks the invariants and sorts the lines.
    pub fn new(mut lines: Vec<[usize; 3]>) -> Result<Self, KneserError> {
        if lines.len() != 7 {
            return Err(KneserError::Parameter(format!(
                "{} lines, expected 7",
                lines.len()
            )));
        }
        let mut seen = [[false; 7]; 7];
        for line in &mut lines {
            line.sort_unstable();
            if line[2] >= 7 || line[0] == line[1] || line[1] == line[2] {
                return Err(KneserError::Parameter(format!("bad line {line:?}")));
            }
            for (a, b) in [(line[0], line[1]), (line[0], line[2]), (line[1], line[2])] {
                if seen[a][b] {
                    return Err(KneserError::Parameter(format!(
                        "pair {{{a},{b}}} on two lines"
                    )));
                }
                seen[a][b] = true;
            }
        }
        // 7 lines with 3 distinct pairs each and no repeats cover all 21 pairs.
        lines.sort_unstable();
        Ok(Self { lines })
    }

    pub fn lines(&self) -> &[[usize; 3]] {
        &self.lines
    }

    pub fn masks(&self) -> Vec<u64> {
        self.lines
            .iter()
            .map(|l| l.iter().fold(0, |m, &p| m | 1 << p))
            .collect()
    }

    /// Vertex ids of the lines in `K(7,3)`.
    pub fn vertices(&self) -> Vec<usize> {
        let index = triple_index();
        let mut v: Vec<usize> = self.masks().iter().map(|m| index[m]).collect();
        v.sort_unstable();
        v
    }

    /// Reads a vertex set of `K(7,3)` as a line system, if it is a plane.
    pub fn from_vertices(vertices: &[usize]) -> Option<Self> {
        let subsets = kneser_subsets(7, 3);
        let lines = vertices
            .iter()
            .map(|&v| {
                let m = *subsets.get(v)?;
                let pts: Vec<usize> = (0..7).filter(|i| m >> i & 1 == 1).collect();
                Some([pts[0], pts[1], pts[2]])
            })
            .collect::<Option<Vec<_>>>()?;
        Self::new(lines).ok()
    }
}

impl fmt::Display for FanoPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.masks().into_iter().map(subset_label).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn triple_index() -> HashMap<u64, usize> {
    kneser_subsets(7, 3)
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect()
}

/// Every Fano plane on `0..7`, built by always extending the smallest
/// uncovered pair, so each plane is reached once.
pub fn enumerate_fano_planes() -> Vec<FanoPlane> {
    fn extend(covered: &mut [[bool; 7]; 7], lines: &mut Vec<[usize; 3]>, out: &mut Vec<FanoPlane>) {
        let next = (0..7)
            .flat_map(|a| (a + 1..7).map(move |b| (a, b)))
            .find(|&(a, b)| !covered[a][b]);
        let Some((a, b)) = next else {
            out.push(FanoPlane::new(lines.clone()).expect("search keeps pairs disjoint"));
            return;
        };
        for c in 0..7 {
            if c == a || c == b {
                continue;
            }
            let (x, y) = (a.min(c), a.max(c));
            let (z, w) = (b.min(c), b.max(c));
            if covered[x][y] || covered[z][w] {
                continue;
            }
            for &(p, q) in &[(a, b), (x, y), (z, w)] {
                covered[p][q] = true;
            }
            let mut line = [a, b, c];
            line.sort_unstable();
            lines.push(line);
            extend(covered, lines, out);
            lines.pop();
            for &(p, q) in &[(a, b), (x, y), (z, w)] {
                covered[p][q] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut [[false; 7]; 7], &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "result", content = "planes")]
pub enum FanoPartition {
    Found(Vec<FanoPlane>),
    Impossible,
}

fn plane_bits(planes: &[FanoPlane]) -> Vec<u64> {
    let index = triple_index();
    planes
        .iter()
        .map(|p| p.masks().iter().fold(0u64, |acc, m| acc | 1 << index[m]))
        .collect()
}

/// Exact cover of the 35 triples by 5 pairwise disjoint Fano planes.
pub fn fano_partition_search() -> FanoPartition {
    let planes = enumerate_fano_planes();
    let bits = plane_bits(&planes);
    let all: u64 = (1 << 35) - 1;
    fn cover(bits: &[u64], used: u64, all: u64, chosen: &mut Vec<usize>) -> bool {
        if used == all {
            return true;
        }
        let t = (!used & all).trailing_zeros();
        for (i, &b) in bits.iter().enumerate() {
            if b >> t & 1 == 1 && b & used == 0 {
                chosen.push(i);
                if cover(bits, used | b, all, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    if cover(&bits, 0, all, &mut chosen) {
        FanoPartition::Found(chosen.into_iter().map(|i| planes[i].clone()).collect())
    } else {
        FanoPartition::Impossible
    }
}

/// Largest family of pairwise line-disjoint Fano planes, lexicographically first.
pub fn max_disjoint_fano_planes() -> Vec<FanoPlane> {
    let planes = enumerate_fano_planes();
    let bits = plane_bits(&planes);
    fn grow(bits: &[u64], from: usize, used: u64, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        for i in from..bits.len() {
            if bits[i] & used == 0 {
                cur.push(i);
                grow(bits, i + 1, used | bits[i], cur, best);
                cur.pop();
            }
        }
    }
    let mut best = Vec::new();
    grow(&bits, 0, 0, &mut Vec::new(), &mut best);
    best.into_iter().map(|i| planes[i].clone()).collect()
}

/// Perfect injective colorability of `K(n, r)`, by the route that applies:
/// singleton classes for `n >= 3r`, a triangle-free perfect matching for
/// `n = 3r - 1`, the Fano exact cover for `K(7,3)`, and the general search
/// otherwise.
pub fn kneser_perfect_colorability(
    n: usize,
    r: usize,
    opts: &SolveOptions,
) -> Result<PerfectOutcome, KneserError> {
    let g = kneser(n, r)?;
    if n >= 3 * r {
        if r >= 2 && g.diameter() != Distance::Finite(2) {
            return Err(KneserError::Inconsistent(format!(
                "K({n},{r}) should have diameter 2"
            )));
        }
        if !g.every_edge_in_triangle() {
            return Err(KneserError::Inconsistent(format!(
                "K({n},{r}) has an edge in no triangle"
            )));
        }
        let classes = (0..g.n()).map(|v| VertexSet::new(vec![v])).collect();
        return checked(
            &g,
            PerfectOutcome::Yes {
                rho_o: 1,
                route: PerfectRoute::EveryEdgeInTriangle,
                partition: Partition::new(classes),
            },
        );
    }
    if n + 1 == 3 * r {
        if !binomial(n, r).is_multiple_of(2) {
            return Err(KneserError::Inconsistent(format!("C({n},{r}) is odd")));
        }
        let Some(m) = g.matching_avoiding_triangles() else {
            return Err(KneserError::Inconsistent(format!(
                "K({n},{r}) has no perfect matching"
            )));
        };
        let mut classes: Vec<VertexSet> = m
            .into_iter()
            .map(|(a, b)| VertexSet::new(vec![a, b]))
            .collect();
        classes.sort_by(|a, b| a.members().cmp(b.members()));
        return checked(
            &g,
            PerfectOutcome::Yes {
                rho_o: 2,
                route: PerfectRoute::TriangleFreeMatching,
                partition: Partition::new(classes),
            },
        );
    }
    if (n, r) == (7, 3) {
        let rho = max_open_packing(&g, opts);
        if !rho.exact {
            return Err(KneserError::Budget("ρ^o(K(7,3))".into()));
        }
        if rho.value != 7 {
            return Err(KneserError::Inconsistent(format!(
                "ρ^o(K(7,3)) = {}",
                rho.value
            )));
        }
        return Ok(match fano_partition_search() {
            FanoPartition::Impossible => PerfectOutcome::No {
                rho_o: 7,
                reason: "every maximum open packing is a Fano plane and the 35 triples admit \
                         no partition into five pairwise disjoint Fano planes"
                    .into(),
            },
            FanoPartition::Found(planes) => {
                let classes = planes
                    .iter()
                    .map(|p| VertexSet::new(p.vertices()))
                    .collect();
                PerfectOutcome::Yes {
                    rho_o: 7,
                    route: PerfectRoute::Search,
                    partition: Partition::new(classes),
                }
            }
        });
    }
    Ok(perfect_injective_colorability(&g, opts))
}

fn checked(g: &Graph, out: PerfectOutcome) -> Result<PerfectOutcome, KneserError> {
    if let PerfectOutcome::Yes {
        rho_o, partition, ..
    } = &out
    {
        let kind = CertificateKind::OpenPackingPartition {
            class_size: Some(*rho_o),
        };
        let verdict = validate_certificate(g, &Certificate::Partition(partition.clone()), kind)
            .map_err(|e| KneserError::Inconsistent(e.to_string()))?;
        if !verdict.is_valid() {
            return Err(KneserError::Inconsistent(format!(
                "witness rejected: {verdict:?}"
            )));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub r: usize,
    pub n: usize,
    pub formula: usize,
    pub rho_2: usize,
    pub rho_o: usize,
    /// The maximum open packing found is itself a 2-packing.
    pub witness_is_two_packing: bool,
    /// For `r = 3`, whether that witness is a Fano plane.
    pub witness_is_fano: Option<bool>,
}

impl StructureReport {
    pub fn agrees(&self) -> bool {
        self.rho_2 == self.formula
            && self.rho_o == self.formula
            && self.witness_is_two_packing
            && self.witness_is_fano != Some(false)
    }
}

/// Solves `ρ₂` and `ρ^o` on `K(3r-2, r)` and compares them with the formula.
pub fn max_open_packing_structure_check(
    r: usize,
    opts: &SolveOptions,
) -> Result<StructureReport, KneserError> {
    let formula = open_packing_formula(r)?;
    let n = 3 * r - 2;
    let g = kneser(n, r)?;
    let r2 = max_two_packing(&g, opts);
    let ro = max_open_packing(&g, opts);
    if !r2.exact || !ro.exact {
        return Err(KneserError::Budget(format!("packings of K({n},{r})")));
    }
    let witness = ro.vertex_set().expect("packing witness").clone();
    let two = validate_certificate(
        &g,
        &Certificate::VertexSet(witness.clone()),
        CertificateKind::TwoPacking,
    )
    .map_err(|e| KneserError::Inconsistent(e.to_string()))?
    .is_valid();
    Ok(StructureReport {
        r,
        n,
        formula,
        rho_2: r2.value,
        rho_o: ro.value,
        witness_is_two_packing: two,
        witness_is_fano: (r == 3).then(|| FanoPlane::from_vertices(witness.members()).is_some()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KneserReport {
    pub n: usize,
    pub r: usize,
    pub diam: String,
    pub rho2: usize,
    pub rho_o: usize,
    pub chi_i: Option<usize>,
    pub perfect: String,
    pub witness_path: Option<String>,
}

/// Summary of one Kneser instance. `χi` is solved only when asked for.
pub fn kneser_report(
    n: usize,
    r: usize,
    with_chi_i: bool,
    opts: &SolveOptions,
) -> Result<KneserReport, KneserError> {
    let g = kneser(n, r)?;
    let exact = |res: crate::solvers::SolveResult, what: &str| {
        if res.exact {
            Ok(res.value)
        } else {
            Err(KneserError::Budget(format!("{what} of K({n},{r})")))
        }
    };
    let rho2 = exact(max_two_packing(&g, opts), "ρ₂")?;
    let rho_o = exact(max_open_packing(&g, opts), "ρ^o")?;
    let chi_i = if with_chi_i {
        Some(exact(injective_chromatic_number(&g, opts), "χi")?)
    } else {
        None
    };
    let perfect = match kneser_perfect_colorability(n, r, opts)? {
        PerfectOutcome::Yes { .. } => "yes".to_string(),
        PerfectOutcome::No { .. } => "no".to_string(),
        PerfectOutcome::Unknown { .. } => "unknown".to_string(),
    };
    Ok(KneserReport {
        n,
        r,
        diam: g.diameter().to_string(),
        rho2,
        rho_o,
        chi_i,
        perfect,
        witness_path: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas() {
        assert_eq!(two_packing_formula(3).unwrap(), 7);
        assert_eq!(open_packing_formula(4).unwrap(), 5);
        assert_eq!(two_packing_formula(9).unwrap(), 3);
        assert!(two_packing_formula(2).is_err());
    }

    #[test]
    fn diameter_condition_matches_bfs() {
        for r in 1..=4 {
            for n in 2 * r..=12 {
                let g = kneser(n, r).unwrap();
                assert_eq!(
                    diameter2_condition(n, r),
                    g.diameter() == Distance::Finite(2),
                    "K({n},{r})"
                );
            }
        }
    }

    #[test]
    fn fano_planes() {
        let planes = enumerate_fano_planes();
        assert_eq!(planes.len(), 30);
        let g = kneser(7, 3).unwrap();
        for p in &planes {
            let set = VertexSet::new(p.vertices());
            assert_eq!(set.len(), 7);
            let cert = Certificate::VertexSet(set);
            assert!(validate_certificate(&g, &cert, CertificateKind::TwoPacking)
                .unwrap()
                .is_valid());
            for point in 0..7 {
                assert_eq!(p.lines().iter().filter(|l| l.contains(&point)).count(), 3);
            }
        }
        assert_eq!(fano_partition_search(), FanoPartition::Impossible);
        assert_eq!(max_disjoint_fano_planes().len(), 2);
    }

    #[test]
    fn fano_invariants_reject_bad_systems() {
        assert!(FanoPlane::new(vec![[0, 1, 2]; 7]).is_err());
        assert!(FanoPlane::new(vec![[0, 1, 2]]).is_err());
    }

    #[test]
    fn perfect_routes() {
        let o = SolveOptions::default();
        for (n, r) in [(5, 2), (6, 2), (7, 2), (8, 3), (9, 3)] {
            assert!(
                kneser_perfect_colorability(n, r, &o).unwrap().is_yes(),
                "K({n},{r})"
            );
        }
        assert!(kneser_perfect_colorability(7, 3, &o).unwrap().is_no());
    }

    #[test]
    fn structure_r3() {
        let rep = max_open_packing_structure_check(3, &SolveOptions::default()).unwrap();
        assert!(rep.agrees(), "{rep:?}");
        assert_eq!(rep.witness_is_fano, Some(true));
    }
}
