//! Constructive colorings of Sierpiński-type graphs, and the closed-form value
//! sets for injective colorings of rooted products and coronas.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::clique_cover::{lift_coloring, sierpinski_cover, CoverError};
use crate::families::{basic, generalized_sierpinski, Basic, FamilyError};
use crate::graph::{
    validate_certificate, Certificate, CertificateKind, Graph, Verdict, VertexColoring, Violation,
};
use crate::solvers::{chromatic_number, injective_chromatic_number, SolveOptions, SolveResult};

#[derive(Debug, Error)]
pub enum StructuredError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("budget exhausted while computing {0}")]
    Budget(String),
    #[error("golden data: {0}")]
    Golden(String),
    #[error("constructed coloring is not injective: {0}")]
    NotInjective(Violation),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

fn is_injective(g: &Graph, c: &VertexColoring) -> Result<(), StructuredError> {
    let cert = Certificate::VertexColoring(c.clone());
    match validate_certificate(g, &cert, CertificateKind::InjectiveColoring) {
        Ok(Verdict::Valid) => Ok(()),
        Ok(Verdict::Invalid(v)) => Err(StructuredError::NotInjective(v)),
        Err(e) => Err(StructuredError::Golden(e.to_string())),
    }
}

/// Injective `p`-coloring of `S_p^n`: an optimal proper coloring of `Ŝ_p^n`
/// lifted through its canonical clique cover.
pub fn sierpinski_injective_coloring(
    p: usize,
    n: usize,
) -> Result<VertexColoring, StructuredError> {
    if p < 3 {
        return Err(StructuredError::Parameter(format!("need p >= 3, got {p}")));
    }
    let sc = sierpinski_cover(p, n)?;
    let proper = chromatic_number(&sc.triangle, &SolveOptions::deterministic());
    if !proper.exact {
        return Err(StructuredError::Budget(format!(
            "chromatic number of triangle graph ({p},{n})"
        )));
    }
    let lifted = lift_coloring(
        &sc.triangle,
        &sc.cover,
        proper.vertex_coloring().expect("coloring"),
    )?;
    let mut colors = vec![0; sc.sierpinski.n()];
    for (d, &s) in sc.iso.iter().enumerate() {
        colors[s] = lifted.color(d);
    }
    let c = VertexColoring::compacted(&colors);
    is_injective(&sc.sierpinski, &c)?;
    Ok(c)
}

const SC4_BASE: &str = include_str!("../data/sc4_base.json");
const SC4_BASE_SHA256: &str = "b0103e9a28283667cb4cbe9e07b35c0b287e6940118553937eb49b60e7eb7221";

#[derive(Deserialize)]
struct Sc4Base {
    palette: usize,
    colors: Vec<usize>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

/// The hand-transcribed injective 3-coloring of `S_{C4}^2`, checked against
/// its recorded digest and re-validated.
pub fn sc4_base_coloring() -> Result<VertexColoring, StructuredError> {
    let digest = sha256_hex(SC4_BASE.as_bytes());
    if digest != SC4_BASE_SHA256 {
        return Err(StructuredError::Golden(format!(
            "checksum mismatch: {digest}"
        )));
    }
    let base: Sc4Base =
        serde_json::from_str(SC4_BASE).map_err(|e| StructuredError::Golden(e.to_string()))?;
    let c = VertexColoring::new(base.colors).map_err(|e| StructuredError::Golden(e.to_string()))?;
    if c.len() != 16 || c.palette_size() != base.palette {
        return Err(StructuredError::Golden(
            "expected 16 vertices and the stated palette".into(),
        ));
    }
    let g = generalized_sierpinski(&basic(Basic::Cycle, 4)?, 2)?;
    is_injective(&g, &c)?;
    Ok(c)
}

/// Injective 3-coloring of `S_{C4}^n` for `n >= 2`: every copy of
/// `S_{C4}^2` (fixed leading `n-2` coordinates) gets the base coloring.
///
/// Edges between copies only join corner vertices, which carry color 2 while
/// their in-copy neighbors carry 0 and 1.
pub fn sc4_pattern_coloring(n: usize) -> Result<VertexColoring, StructuredError> {
    if n < 2 {
        return Err(StructuredError::Parameter(format!("need n >= 2, got {n}")));
    }
    let base = sc4_base_coloring()?;
    let g = generalized_sierpinski(&basic(Basic::Cycle, 4)?, n)?;
    let colors: Vec<usize> = (0..g.n()).map(|v| base.color(v % 16)).collect();
    let c = VertexColoring::compacted(&colors);
    is_injective(&g, &c)?;
    Ok(c)
}

/// Exact `χi(S_{C_k}^n)`.
pub fn sc_k_chromatic(
    k: usize,
    n: usize,
    opts: &SolveOptions,
) -> Result<SolveResult, StructuredError> {
    if k < 3 || n < 1 {
        return Err(StructuredError::Parameter(format!(
            "need k >= 3 and n >= 1, got ({k},{n})"
        )));
    }
    let g = generalized_sierpinski(&basic(Basic::Cycle, k)?, n)?;
    let r = injective_chromatic_number(&g, opts);
    if !r.exact {
        return Err(StructuredError::Budget(format!("χi of S_C{k}^{n}")));
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValueSource {
    RootedProduct,
    Corona,
}

/// The admissible values of an injective chromatic number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueSet {
    pub members: BTreeSet<usize>,
    pub source: ValueSource,
}

impl ValueSet {
    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }
}

fn exact_chi_i(g: &Graph, what: &str, opts: &SolveOptions) -> Result<usize, StructuredError> {
    let r = injective_chromatic_number(g, opts);
    if r.exact {
        Ok(r.value)
    } else {
        Err(StructuredError::Budget(format!("χi({what})")))
    }
}

fn check_root(h: &Graph, root: usize) -> Result<(), StructuredError> {
    if root >= h.n() {
        return Err(StructuredError::Parameter(format!(
            "root {root} not in H (|V(H)| = {})",
            h.n()
        )));
    }
    Ok(())
}

/// `{χi(G), χi(H), χi(G)+1, χi(H)+1, Δ(G)+d_H(v), Δ(G)+d_H(v)+1}`.
pub fn six_value_set(
    g: &Graph,
    h: &Graph,
    root: usize,
    opts: &SolveOptions,
) -> Result<ValueSet, StructuredError> {
    check_root(h, root)?;
    let cg = exact_chi_i(g, "G", opts)?;
    let ch = exact_chi_i(h, "H", opts)?;
    let s = g.max_degree() + h.degree(root);
    Ok(ValueSet {
        members: [cg, ch, cg + 1, ch + 1, s, s + 1].into_iter().collect(),
        source: ValueSource::RootedProduct,
    })
}

/// `lo = max{χi(G), χi(H), Δ(G)+d_H(v)}` and `hi = lo + 1`.
pub fn rooted_bounds(
    g: &Graph,
    h: &Graph,
    root: usize,
    opts: &SolveOptions,
) -> Result<(usize, usize), StructuredError> {
    check_root(h, root)?;
    let lo = exact_chi_i(g, "G", opts)?
        .max(exact_chi_i(h, "H", opts)?)
        .max(g.max_degree() + h.degree(root));
    Ok((lo, lo + 1))
}

/// `{χi(G), |V(H)|+Δ(G), |V(H)|+Δ(G)+1}` for graphs without isolated vertices.
pub fn corona_value_set(
    g: &Graph,
    h: &Graph,
    opts: &SolveOptions,
) -> Result<ValueSet, StructuredError> {
    if g.n() == 0 || h.n() == 0 || g.has_isolated_vertex() || h.has_isolated_vertex() {
        return Err(StructuredError::Parameter(
            "corona inputs must be nonempty without isolated vertices".into(),
        ));
    }
    let cg = exact_chi_i(g, "G", opts)?;
    let s = h.n() + g.max_degree();
    Ok(ValueSet {
        members: [cg, s, s + 1].into_iter().collect(),
        source: ValueSource::Corona,
    })
}

/// `F_k`: the subgraph of `G ∘_v H` induced by all roots together with the
/// `k`-th copy of `H`.
pub fn rooted_fk(g: &Graph, h: &Graph, root: usize, k: usize) -> Result<Graph, StructuredError> {
    check_root(h, root)?;
    if k >= g.n() {
        return Err(StructuredError::Parameter(format!("copy {k} out of range")));
    }
    let product = crate::families::rooted_product(g, h, root)?;
    let m = h.n();
    let mut keep: Vec<usize> = (0..g.n()).map(|i| i * m + root).collect();
    keep.extend((0..m).filter(|&j| j != root).map(|j| k * m + j));
    keep.sort_unstable();
    Ok(product.induced_subgraph(&keep))
}
