//! Exact solvers for χ, χi, χ′, ρ^o and ρ₂, the Class 1 decision, perfect
//! injective colorability, and the sum-mod-Δ edge coloring transfer.
//!
//! Every optimization reduces to one of two engines over a conflict graph:
//! DSATUR backtracking for colorings, and a coloring-bounded branch and bound
//! for maximum independent sets.

mod coloring;
mod packing;
mod perfect;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    validate_certificate, Certificate, CertificateKind, ConflictMode, EdgeColoring, Graph, Verdict,
    VertexColoring, VertexSet, Violation,
};

pub use coloring::{chromatic_number, k_coloring, ColoringOutcome};
use packing::maximum_independent_set;
pub use perfect::{perfect_injective_colorability, PerfectOutcome, PerfectRoute};

/// Search limits. Exceeding either returns explicit bounds instead of a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_nodes: 10_000_000,
            max_time: Duration::from_secs(60),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub budget: Budget,
    /// Return the lexicographically smallest optimal witness.
    pub deterministic: bool,
}

impl SolveOptions {
    pub fn deterministic() -> Self {
        Self {
            deterministic: true,
            ..Self::default()
        }
    }
}

/// Running node/time account shared by every search inside one solve call.
#[derive(Debug)]
pub(crate) struct Tracker {
    budget: Budget,
    start: Instant,
    pub(crate) nodes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct OutOfBudget;

impl Tracker {
    pub(crate) fn new(budget: Budget) -> Self {
        Self {
            budget,
            start: Instant::now(),
            nodes: 0,
        }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), OutOfBudget> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(OutOfBudget);
        }
        if self.nodes.is_multiple_of(4096) && self.start.elapsed() > self.budget.max_time {
            return Err(OutOfBudget);
        }
        Ok(())
    }

    pub(crate) fn elapsed_ms(&self) -> u64 {
        self.start.elapsed().as_millis() as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    Chi,
    ChiI,
    ChiPrime,
    RhoO,
    Rho2,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Chi => "chi",
            Problem::ChiI => "chi-i",
            Problem::ChiPrime => "chi-prime",
            Problem::RhoO => "rho-o",
            Problem::Rho2 => "rho-2",
        }
    }

    pub fn solve(self, g: &Graph, opts: &SolveOptions) -> SolveResult {
        match self {
            Problem::Chi => chromatic_number(g, opts),
            Problem::ChiI => injective_chromatic_number(g, opts),
            Problem::ChiPrime => edge_chromatic_number(g, opts),
            Problem::RhoO => max_open_packing(g, opts),
            Problem::Rho2 => max_two_packing(g, opts),
        }
    }

    fn kind(self) -> CertificateKind {
        match self {
            Problem::Chi => CertificateKind::ProperColoring,
            Problem::ChiI => CertificateKind::InjectiveColoring,
            Problem::ChiPrime => CertificateKind::ProperEdgeColoring,
            Problem::RhoO => CertificateKind::OpenPacking,
            Problem::Rho2 => CertificateKind::TwoPacking,
        }
    }
}

/// Optimal value with a witness, or bounds when the budget ran out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub problem: Problem,
    /// The optimum when `exact`; otherwise the value achieved by `witness`.
    pub value: usize,
    pub exact: bool,
    pub lower: usize,
    pub upper: usize,
    pub witness: Certificate,
    pub nodes: u64,
    pub ms: u64,
}

impl SolveResult {
    /// True iff the witness passes the validator for this problem and
    /// realizes `value`.
    pub fn witness_is_valid(&self, g: &Graph) -> bool {
        let verdict = validate_certificate(g, &self.witness, self.problem.kind());
        let size = match &self.witness {
            Certificate::VertexColoring(c) => c.palette_size(),
            Certificate::EdgeColoring(c) => c.palette_size(),
            Certificate::VertexSet(s) => s.len(),
            _ => return false,
        };
        matches!(verdict, Ok(Verdict::Valid)) && size == self.value
    }

    pub fn vertex_coloring(&self) -> Option<&VertexColoring> {
        match &self.witness {
            Certificate::VertexColoring(c) => Some(c),
            _ => None,
        }
    }

    pub fn vertex_set(&self) -> Option<&VertexSet> {
        match &self.witness {
            Certificate::VertexSet(s) => Some(s),
            _ => None,
        }
    }

    pub fn edge_coloring(&self) -> Option<&EdgeColoring> {
        match &self.witness {
            Certificate::EdgeColoring(c) => Some(c),
            _ => None,
        }
    }
}

/// χi(g): the chromatic number of the common-neighbor conflict graph. The
/// witness is the same labeling read on `g`.
pub fn injective_chromatic_number(g: &Graph, opts: &SolveOptions) -> SolveResult {
    let conflict = g.conflict_graph(ConflictMode::CommonNeighbor);
    let mut r = chromatic_number(&conflict, opts);
    r.problem = Problem::ChiI;
    debug_assert!(r.witness_is_valid(g));
    r
}

/// χ′(g), decided as Δ-colorability of the line graph (Vizing gives Δ+1 otherwise).
pub fn edge_chromatic_number(g: &Graph, opts: &SolveOptions) -> SolveResult {
    let line = g.line_graph();
    let edges = g.edges();
    let delta = g.max_degree();
    let mut tracker = Tracker::new(opts.budget);
    let to_edges = |c: &VertexColoring| {
        EdgeColoring::new(edges.iter().enumerate().map(|(i, &e)| (e, c.color(i))))
    };
    let finish = |value, exact, lower, upper, c: &VertexColoring, t: &Tracker| SolveResult {
        problem: Problem::ChiPrime,
        value,
        exact,
        lower,
        upper,
        witness: Certificate::EdgeColoring(to_edges(c)),
        nodes: t.nodes,
        ms: t.elapsed_ms(),
    };
    if edges.is_empty() {
        return finish(0, true, 0, 0, &VertexColoring::compacted(&[]), &tracker);
    }
    for k in [delta, delta + 1] {
        match coloring::decide(&line, k, &[], opts.deterministic, &mut tracker) {
            Ok(Some(c)) => return finish(k, true, k, k, &c, &tracker),
            Ok(None) => continue,
            Err(OutOfBudget) => {
                // Fall back to a greedy witness so the bounds stay honest.
                let greedy = coloring::dsatur_greedy(&line);
                let upper = greedy.palette_size().min(delta + 1);
                let value = greedy.palette_size();
                return finish(value, false, k, upper.max(k), &greedy, &tracker);
            }
        }
    }
    unreachable!("every simple graph is (Δ+1)-edge-colorable")
}

/// χ′(g) = Δ(g). Returns `None` when the budget runs out.
pub fn is_class1(g: &Graph, opts: &SolveOptions) -> Option<bool> {
    let r = edge_chromatic_number(g, opts);
    r.exact.then(|| r.value == g.max_degree())
}

fn max_packing(
    g: &Graph,
    mode: ConflictMode,
    problem: Problem,
    opts: &SolveOptions,
) -> SolveResult {
    let conflict = g.conflict_graph(mode);
    let mut tracker = Tracker::new(opts.budget);
    let out = maximum_independent_set(&conflict, opts.deterministic, &mut tracker);
    SolveResult {
        problem,
        value: out.best.len(),
        exact: out.exact,
        lower: out.best.len(),
        upper: out.upper,
        witness: Certificate::VertexSet(out.best),
        nodes: tracker.nodes,
        ms: tracker.elapsed_ms(),
    }
}

/// ρ^o(g): maximum independent set of the common-neighbor conflict graph.
pub fn max_open_packing(g: &Graph, opts: &SolveOptions) -> SolveResult {
    max_packing(g, ConflictMode::CommonNeighbor, Problem::RhoO, opts)
}

/// ρ₂(g): maximum independent set of the distance-2 conflict graph.
pub fn max_two_packing(g: &Graph, opts: &SolveOptions) -> SolveResult {
    max_packing(g, ConflictMode::Distance2, Problem::Rho2, opts)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransferError {
    #[error("coloring has {got} entries, graph has {expected} vertices")]
    Length { expected: usize, got: usize },
    #[error("coloring is not injective: {0}")]
    NotInjective(Violation),
    #[error("coloring uses {used} colors but Δ = {delta}")]
    PaletteNotDelta { used: usize, delta: usize },
}

/// Edge coloring `c'(uv) = c(u) + c(v) mod Δ` from an injective coloring
/// with exactly Δ colors. Incident edges `uv`, `uw` get distinct colors
/// because `v` and `w` share the neighbor `u`.
pub fn edge_coloring_from_injective(
    g: &Graph,
    c: &VertexColoring,
) -> Result<EdgeColoring, TransferError> {
    if c.len() != g.n() {
        return Err(TransferError::Length {
            expected: g.n(),
            got: c.len(),
        });
    }
    let cert = Certificate::VertexColoring(c.clone());
    if let Verdict::Invalid(v) =
        validate_certificate(g, &cert, CertificateKind::InjectiveColoring).expect("length checked")
    {
        return Err(TransferError::NotInjective(v));
    }
    let delta = g.max_degree();
    if c.palette_size() != delta {
        return Err(TransferError::PaletteNotDelta {
            used: c.palette_size(),
            delta,
        });
    }
    Ok(EdgeColoring::new(
        g.edges()
            .into_iter()
            .map(|(u, v)| ((u, v), (c.color(u) + c.color(v)) % delta)),
    ))
}
