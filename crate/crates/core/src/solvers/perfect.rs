use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::graph::{ConflictMode, Distance, Graph, Partition, VertexSet};

use super::{max_open_packing, OutOfBudget, SolveOptions, Tracker};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerfectRoute {
    EmptyGraph,
    /// Diameter 2 and every edge in a triangle: singleton classes.
    EveryEdgeInTriangle,
    /// Diameter 2 with a perfect matching of triangle-free edges: the pairs.
    TriangleFreeMatching,
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer", rename_all = "kebab-case")]
pub enum PerfectOutcome {
    Yes {
        rho_o: usize,
        route: PerfectRoute,
        partition: Partition,
    },
    No {
        rho_o: usize,
        reason: String,
    },
    Unknown {
        reason: String,
    },
}

impl PerfectOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, PerfectOutcome::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, PerfectOutcome::No { .. })
    }

    pub fn partition(&self) -> Option<&Partition> {
        match self {
            PerfectOutcome::Yes { partition, .. } => Some(partition),
            _ => None,
        }
    }
}

/// Decides whether V(g) splits into open packings of size ρ^o(g).
pub fn perfect_injective_colorability(g: &Graph, opts: &SolveOptions) -> PerfectOutcome {
    let n = g.n();
    if n == 0 {
        return PerfectOutcome::Yes {
            rho_o: 0,
            route: PerfectRoute::EmptyGraph,
            partition: Partition::new(Vec::new()),
        };
    }
    let rho = max_open_packing(g, opts);
    if !rho.exact {
        return PerfectOutcome::Unknown {
            reason: format!(
                "open packing number only bounded: {}..={}",
                rho.lower, rho.upper
            ),
        };
    }
    let rho_o = rho.value;
    if !n.is_multiple_of(rho_o) {
        return PerfectOutcome::No {
            rho_o,
            reason: format!("{n} vertices are not divisible by the open packing number {rho_o}"),
        };
    }
    if g.diameter() == Distance::Finite(2) {
        if g.every_edge_in_triangle() {
            let classes = (0..n).map(|v| VertexSet::new(vec![v])).collect();
            return PerfectOutcome::Yes {
                rho_o,
                route: PerfectRoute::EveryEdgeInTriangle,
                partition: Partition::new(classes),
            };
        }
        return match g.matching_avoiding_triangles() {
            Some(m) => {
                let mut classes: Vec<VertexSet> = m
                    .into_iter()
                    .map(|(u, v)| VertexSet::new(vec![u, v]))
                    .collect();
                classes.sort_by(|a, b| a.members().cmp(b.members()));
                PerfectOutcome::Yes {
                    rho_o,
                    route: PerfectRoute::TriangleFreeMatching,
                    partition: Partition::new(classes),
                }
            }
            None => PerfectOutcome::No {
                rho_o,
                reason: "diameter 2, some edge lies in no triangle, and no perfect matching \
                         avoids triangle edges"
                    .to_string(),
            },
        };
    }

    let conflict = g.conflict_graph(ConflictMode::CommonNeighbor);
    let mut search = PartitionSearch {
        conflict: &conflict,
        size: rho_o,
        classes: Vec::new(),
    };
    let mut tracker = Tracker::new(opts.budget);
    match search.partition(BitSet::full(n), &mut tracker) {
        Ok(true) => {
            let classes = search.classes.into_iter().map(VertexSet::new).collect();
            PerfectOutcome::Yes {
                rho_o,
                route: PerfectRoute::Search,
                partition: Partition::new(classes),
            }
        }
        Ok(false) => PerfectOutcome::No {
            rho_o,
            reason: format!(
                "exhaustive search found no partition into open packings of size {rho_o}"
            ),
        },
        Err(OutOfBudget) => PerfectOutcome::Unknown {
            reason: format!("budget exhausted after {} nodes", tracker.nodes),
        },
    }
}

/// Exact cover of the vertex set by independent sets of the conflict graph
/// of one fixed size. Each class starts at the smallest unassigned vertex.
struct PartitionSearch<'a> {
    conflict: &'a Graph,
    size: usize,
    classes: Vec<Vec<usize>>,
}

impl PartitionSearch<'_> {
    fn partition(
        &mut self,
        unassigned: BitSet,
        tracker: &mut Tracker,
    ) -> Result<bool, OutOfBudget> {
        tracker.tick()?;
        let Some(v) = unassigned.first() else {
            return Ok(true);
        };
        let mut cand = unassigned.difference(self.conflict.neighbors(v));
        cand.remove(v);
        let mut class = vec![v];
        self.grow(&unassigned, &mut class, cand, tracker)
    }

    /// Upper bound on an independent subset of `cand`: the number of
    /// conflict cliques in a greedy cover of it.
    fn packing_bound(&self, cand: &BitSet) -> usize {
        let mut left = cand.clone();
        let mut cliques = 0;
        while let Some(v) = left.first() {
            cliques += 1;
            left.remove(v);
            let mut q = left.intersection(self.conflict.neighbors(v));
            while let Some(w) = q.first() {
                left.remove(w);
                q.remove(w);
                q.intersect_with(self.conflict.neighbors(w));
            }
        }
        cliques
    }

    fn grow(
        &mut self,
        unassigned: &BitSet,
        class: &mut Vec<usize>,
        mut cand: BitSet,
        tracker: &mut Tracker,
    ) -> Result<bool, OutOfBudget> {
        if class.len() == self.size {
            let mut rest = unassigned.clone();
            for &u in class.iter() {
                rest.remove(u);
            }
            self.classes.push(class.clone());
            if self.partition(rest, tracker)? {
                return Ok(true);
            }
            self.classes.pop();
            return Ok(false);
        }
        while let Some(u) = cand.first() {
            if class.len() + self.packing_bound(&cand) < self.size {
                break;
            }
            tracker.tick()?;
            cand.remove(u);
            let next = cand.difference(self.conflict.neighbors(u));
            class.push(u);
            if self.grow(unassigned, class, next, tracker)? {
                return Ok(true);
            }
            class.pop();
        }
        Ok(false)
    }
}
