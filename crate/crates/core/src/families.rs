//! Deterministic generators for the graph families, and the textual
//! `FamilySpec` grammar used on the command line.
//!
//! Vertex ids are reproducible: Sierpiński-type tuples are ranked in base `p`
//! with the first coordinate most significant, Kneser subsets in colex order,
//! and product vertices `(g, h)` get id `g * |V(H)| + h`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{graph6, Graph, GraphError};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("cannot parse family spec {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("decoding {path}: {source}")]
    Graph6 {
        path: PathBuf,
        source: graph6::Graph6Error,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn param_err<T>(msg: impl Into<String>) -> Result<T, FamilyError> {
    Err(FamilyError::Parameter(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basic {
    Complete,
    Cycle,
    Path,
    /// `K_{1,k}`: a center (vertex 0) and `k` leaves.
    Star,
}

/// `K_k`, `C_k`, `P_k` (on `k` vertices) or `K_{1,k}`.
pub fn basic(family: Basic, k: usize) -> Result<Graph, FamilyError> {
    match family {
        Basic::Complete if k >= 1 => Ok(Graph::from_edges(
            k,
            (0..k).flat_map(|j| (0..j).map(move |i| (i, j))),
        )?),
        Basic::Cycle if k >= 3 => Ok(Graph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k)))?),
        Basic::Path if k >= 1 => Ok(Graph::from_edges(k, (1..k).map(|i| (i - 1, i)))?),
        Basic::Star if k >= 1 => Ok(Graph::from_edges(k + 1, (1..=k).map(|i| (0, i)))?),
        Basic::Cycle => param_err(format!("cycle needs k >= 3, got {k}")),
        _ => param_err(format!("{family:?} needs k >= 1, got {k}")),
    }
}

fn tuple_label(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn digits(mut id: usize, base: usize, n: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for slot in t.iter_mut().rev() {
        *slot = id % base;
        id /= base;
    }
    t
}

fn rank(t: &[usize], base: usize) -> usize {
    t.iter().fold(0, |acc, &d| acc * base + d)
}

fn checked_pow(base: usize, n: usize) -> Result<usize, FamilyError> {
    u32::try_from(n)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .filter(|&v| v <= 1 << 24)
        .map_or_else(|| param_err(format!("{base}^{n} vertices is too many")), Ok)
}

/// Generalized Sierpiński graph `S_base^n` on `V(base)^n`.
///
/// `u ~ v` iff for some `i`: `u_j = v_j` for `j < i`, `u_i v_i` is a base
/// edge, and `u_j = v_i`, `v_j = u_i` for all `j > i`.
pub fn generalized_sierpinski(base: &Graph, n: usize) -> Result<Graph, FamilyError> {
    if n == 0 {
        return param_err("generalized Sierpinski graphs need n >= 1");
    }
    let p = base.n();
    let size = checked_pow(p, n)?;
    let mut edges = Vec::new();
    for id in 0..size {
        let u = digits(id, p, n);
        for i in 0..n {
            // The suffix after i must be constant; its value is forced as v_i.
            let suffix = &u[i + 1..];
            let forced = suffix.first().copied();
            if suffix.iter().any(|&x| Some(x) != forced) {
                continue;
            }
            let candidates: Vec<usize> = match forced {
                Some(c) => vec![c],
                None => base.neighbors(u[i]).to_vec(),
            };
            for vi in candidates {
                if !base.has_edge(u[i], vi) {
                    continue;
                }
                let mut v = u.clone();
                v[i] = vi;
                for x in v[i + 1..].iter_mut() {
                    *x = u[i];
                }
                let vid = rank(&v, p);
                if id < vid {
                    edges.push((id, vid));
                }
            }
        }
    }
    let labels = (0..size).map(|id| tuple_label(&digits(id, p, n))).collect();
    Ok(Graph::from_edges(size, edges)?.with_labels(labels)?)
}

/// Sierpiński graph `S_p^n`: the generalized construction over `K_p`.
pub fn sierpinski(p: usize, n: usize) -> Result<Graph, FamilyError> {
    if p == 0 || n == 0 {
        return param_err(format!(
            "Sierpinski graphs need p, n >= 1, got p={p}, n={n}"
        ));
    }
    generalized_sierpinski(&basic(Basic::Complete, p)?, n)
}

/// `Ŝ_p^n` together with the map from `S_p^n` vertex ids to `Ŝ_p^n` ids.
pub(crate) fn sierpinski_triangle_with_map(
    p: usize,
    n: usize,
) -> Result<(Graph, Graph, Vec<usize>), FamilyError> {
    if p < 3 || n == 0 {
        return param_err(format!(
            "Sierpinski triangle graphs need p >= 3, n >= 1, got p={p}, n={n}"
        ));
    }
    let s = sierpinski(p, n)?;
    let size = s.n();
    // Union-find with the smallest id as representative.
    let mut rep: Vec<usize> = (0..size).collect();
    fn find(rep: &mut [usize], mut x: usize) -> usize {
        while rep[x] != x {
            rep[x] = rep[rep[x]];
            x = rep[x];
        }
        x
    }
    // Canonical p-cliques are the classes of equal (n-1)-prefix, i.e. equal id / p.
    for (u, v) in s.edges() {
        if u / p != v / p {
            let (a, b) = (find(&mut rep, u), find(&mut rep, v));
            let (lo, hi) = (a.min(b), a.max(b));
            rep[hi] = lo;
        }
    }
    let roots: Vec<usize> = (0..size).map(|v| find(&mut rep, v)).collect();
    let mut new_id = vec![usize::MAX; size];
    let mut next = 0;
    for v in 0..size {
        if roots[v] == v {
            new_id[v] = next;
            next += 1;
        }
    }
    let map: Vec<usize> = roots.iter().map(|&r| new_id[r]).collect();
    let mut labels = vec![String::new(); next];
    for v in 0..size {
        let l = &mut labels[map[v]];
        if !l.is_empty() {
            l.push('+');
        }
        l.push_str(&s.label(v));
    }
    let edges = s
        .edges()
        .into_iter()
        .filter(|&(u, v)| u / p == v / p)
        .map(|(u, v)| (map[u], map[v]));
    let hat = Graph::from_edges(next, edges)?.with_labels(labels)?;
    Ok((hat, s, map))
}

/// Sierpiński triangle graph `Ŝ_p^n`: `S_p^n` with every edge outside the
/// canonical `K_p` cliques contracted. Merged vertices keep the smallest id as
/// representative and join their labels with `+`.
pub fn sierpinski_triangle(p: usize, n: usize) -> Result<Graph, FamilyError> {
    Ok(sierpinski_triangle_with_map(p, n)?.0)
}

/// The `r`-subsets of `{0, .., n-1}` as bitmasks, in colex order.
pub fn kneser_subsets(n: usize, r: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if r > n || n > 63 {
        return out;
    }
    if r == 0 {
        return vec![0];
    }
    // Gosper's hack enumerates same-popcount masks in increasing order.
    let mut x: u64 = (1 << r) - 1;
    while x < 1 << n {
        out.push(x);
        let c = x & x.wrapping_neg();
        let s = x + c;
        x = (((x ^ s) >> 2) / c) | s;
    }
    out
}

pub(crate) fn subset_label(mask: u64) -> String {
    let parts: Vec<String> = (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// Kneser graph `K(n, r)`: `r`-subsets of `[n]`, adjacent iff disjoint.
/// Labels use 1-based elements, e.g. `{1,2}`.
pub fn kneser(n: usize, r: usize) -> Result<Graph, FamilyError> {
    if r == 0 || n < 2 * r {
        return param_err(format!(
            "Kneser graphs need r >= 1 and n >= 2r, got n={n}, r={r}"
        ));
    }
    if n > 63 {
        return param_err("Kneser graphs are limited to n <= 63");
    }
    let subsets = kneser_subsets(n, r);
    let mut edges = Vec::new();
    for (i, &a) in subsets.iter().enumerate() {
        for (j, &b) in subsets.iter().enumerate().skip(i + 1) {
            if a & b == 0 {
                edges.push((i, j));
            }
        }
    }
    let labels = subsets.iter().map(|&m| subset_label(m)).collect();
    Ok(Graph::from_edges(subsets.len(), edges)?.with_labels(labels)?)
}

fn pair_labels(g: &Graph, h: &Graph) -> Vec<String> {
    (0..g.n())
        .flat_map(|i| (0..h.n()).map(move |j| format!("({},{})", g.label(i), h.label(j))))
        .collect()
}

/// Rooted product `G ∘_root H`: one copy `H_i` per vertex of `g`, with the
/// copies' roots joined along the edges of `g`.
pub fn rooted_product(g: &Graph, h: &Graph, root: usize) -> Result<Graph, FamilyError> {
    if root >= h.n() {
        return param_err(format!(
            "root {root} is not a vertex of H (|V(H)| = {})",
            h.n()
        ));
    }
    let m = h.n();
    let id = |i: usize, j: usize| i * m + j;
    let mut edges = Vec::new();
    for i in 0..g.n() {
        edges.extend(h.edges().into_iter().map(|(a, b)| (id(i, a), id(i, b))));
    }
    edges.extend(
        g.edges()
            .into_iter()
            .map(|(a, b)| (id(a, root), id(b, root))),
    );
    Ok(Graph::from_edges(g.n() * m, edges)?.with_labels(pair_labels(g, h))?)
}

/// Join `G ∨ H`: disjoint union (G first) plus all edges between the parts.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let off = g.n();
    let mut edges = g.edges();
    edges.extend(h.edges().into_iter().map(|(a, b)| (a + off, b + off)));
    for a in 0..g.n() {
        edges.extend((0..h.n()).map(|b| (a, b + off)));
    }
    Graph::from_edges(off + h.n(), edges).expect("ids in range")
}

/// Corona `G ⊙ H`, built as `G ∘_v (K1 ∨ H)` rooted at the `K1` vertex.
pub fn corona(g: &Graph, h: &Graph) -> Graph {
    let k1h = join(&Graph::empty(1), h);
    rooted_product(g, &k1h, 0).expect("root 0 exists")
}

/// `K_m` plus a pendant vertex (id `m`) joined to vertex 0 of the clique.
pub fn pendant_clique(m: usize) -> Result<Graph, FamilyError> {
    if m == 0 {
        return param_err("pendant clique needs m >= 1");
    }
    let mut edges = basic(Basic::Complete, m)?.edges();
    edges.push((0, m));
    Ok(Graph::from_edges(m + 1, edges)?)
}

/// Declarative description of a generated instance.
///
/// Text form: `name:key=value,...` where a value is an integer, a path, or a
/// parenthesized sub-spec, e.g. `rooted:g=(complete:4),h=(star:3),root=0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    Star(usize),
    Sierpinski {
        p: usize,
        n: usize,
    },
    SierpinskiTriangle {
        p: usize,
        n: usize,
    },
    GeneralizedSierpinski {
        base: Box<FamilySpec>,
        n: usize,
    },
    Kneser {
        n: usize,
        r: usize,
    },
    RootedProduct {
        g: Box<FamilySpec>,
        h: Box<FamilySpec>,
        root: usize,
    },
    Corona {
        g: Box<FamilySpec>,
        h: Box<FamilySpec>,
    },
    Join {
        g: Box<FamilySpec>,
        h: Box<FamilySpec>,
    },
    File(PathBuf),
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph, FamilyError> {
        use FamilySpec::*;
        match self {
            Complete(k) => basic(Basic::Complete, *k),
            Cycle(k) => basic(Basic::Cycle, *k),
            Path(k) => basic(Basic::Path, *k),
            Star(k) => basic(Basic::Star, *k),
            Sierpinski { p, n } => sierpinski(*p, *n),
            SierpinskiTriangle { p, n } => sierpinski_triangle(*p, *n),
            GeneralizedSierpinski { base, n } => generalized_sierpinski(&base.build()?, *n),
            Kneser { n, r } => kneser(*n, *r),
            RootedProduct { g, h, root } => rooted_product(&g.build()?, &h.build()?, *root),
            Corona { g, h } => Ok(corona(&g.build()?, &h.build()?)),
            Join { g, h } => Ok(join(&g.build()?, &h.build()?)),
            File(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| FamilyError::Io {
                    path: path.clone(),
                    source,
                })?;
                graph6::decode(text.trim_end()).map_err(|source| FamilyError::Graph6 {
                    path: path.clone(),
                    source,
                })
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            Complete(k) => write!(f, "complete:{k}"),
            Cycle(k) => write!(f, "cycle:{k}"),
            Path(k) => write!(f, "path:{k}"),
            Star(k) => write!(f, "star:{k}"),
            Sierpinski { p, n } => write!(f, "sierpinski:p={p},n={n}"),
            SierpinskiTriangle { p, n } => write!(f, "sierpinski-triangle:p={p},n={n}"),
            GeneralizedSierpinski { base, n } => {
                write!(f, "generalized-sierpinski:base=({base}),n={n}")
            }
            Kneser { n, r } => write!(f, "kneser:n={n},r={r}"),
            RootedProduct { g, h, root } => write!(f, "rooted:g=({g}),h=({h}),root={root}"),
            Corona { g, h } => write!(f, "corona:g=({g}),h=({h})"),
            Join { g, h } => write!(f, "join:g=({g}),h=({h})"),
            File(p) => write!(f, "file:path={}", p.display()),
        }
    }
}

/// Splits `s` on commas that are not nested inside parentheses.
fn split_top_level(s: &str) -> Result<Vec<&str>, String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err("unbalanced ')'".into());
                }
            }
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err("unbalanced '('".into());
    }
    parts.push(&s[start..]);
    Ok(parts)
}

struct Params<'a> {
    pairs: Vec<(&'a str, &'a str)>,
    positional: Option<&'a str>,
}

impl<'a> Params<'a> {
    fn parse(body: &'a str) -> Result<Self, String> {
        let mut pairs = Vec::new();
        let mut positional = None;
        if body.is_empty() {
            return Ok(Self { pairs, positional });
        }
        for part in split_top_level(body)? {
            match part.split_once('=') {
                Some((k, v)) if !k.contains('(') => pairs.push((k.trim(), v.trim())),
                _ if positional.is_none() && pairs.is_empty() => positional = Some(part.trim()),
                _ => return Err(format!("expected key=value, got {part:?}")),
            }
        }
        Ok(Self { pairs, positional })
    }

    fn raw(&self, key: &str) -> Result<&'a str, String> {
        self.pairs
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| format!("missing parameter {key:?}"))
    }

    fn int(&self, key: &str) -> Result<usize, String> {
        let v = self.raw(key)?;
        v.parse()
            .map_err(|_| format!("parameter {key:?} is not a natural number: {v:?}"))
    }

    /// The single size parameter of a basic family: `complete:4` or `complete:k=4`.
    fn size(&self) -> Result<usize, String> {
        match self.positional {
            Some(v) => v
                .parse()
                .map_err(|_| format!("not a natural number: {v:?}")),
            None => self.int("k"),
        }
    }

    fn sub(&self, key: &str) -> Result<Box<FamilySpec>, String> {
        let v = self.raw(key)?;
        let inner = v
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(v);
        inner
            .parse::<FamilySpec>()
            .map(Box::new)
            .map_err(|e| e.to_string())
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<(), String> {
        for (k, _) in &self.pairs {
            if !allowed.contains(k) {
                return Err(format!("unknown parameter {k:?}"));
            }
        }
        Ok(())
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(input: &str) -> Result<Self, FamilyError> {
        let fail = |reason: String| FamilyError::Parse {
            input: input.to_string(),
            reason,
        };
        let s = input.trim();
        let (name, body) = s.split_once(':').unwrap_or((s, ""));
        let params = Params::parse(body).map_err(fail)?;
        use FamilySpec::*;
        let keys: &[&str] = match name {
            "complete" | "cycle" | "path" | "star" => &["k"],
            "sierpinski" | "sierpinski-triangle" => &["p", "n"],
            "generalized-sierpinski" | "gsierpinski" => &["base", "n"],
            "kneser" => &["n", "r"],
            "rooted" | "rooted-product" => &["g", "h", "root"],
            "corona" | "join" => &["g", "h"],
            "file" => &["path"],
            other => return Err(fail(format!("unknown family {other:?}"))),
        };
        params.check_keys(keys).map_err(fail)?;
        let spec = (|| -> Result<FamilySpec, String> {
            Ok(match name {
                "complete" => Complete(params.size()?),
                "cycle" => Cycle(params.size()?),
                "path" => Path(params.size()?),
                "star" => Star(params.size()?),
                "sierpinski" => Sierpinski {
                    p: params.int("p")?,
                    n: params.int("n")?,
                },
                "sierpinski-triangle" => SierpinskiTriangle {
                    p: params.int("p")?,
                    n: params.int("n")?,
                },
                "generalized-sierpinski" | "gsierpinski" => GeneralizedSierpinski {
                    base: params.sub("base")?,
                    n: params.int("n")?,
                },
                "kneser" => Kneser {
                    n: params.int("n")?,
                    r: params.int("r")?,
                },
                "rooted" | "rooted-product" => RootedProduct {
                    g: params.sub("g")?,
                    h: params.sub("h")?,
                    root: params.int("root")?,
                },
                "corona" => Corona {
                    g: params.sub("g")?,
                    h: params.sub("h")?,
                },
                "join" => Join {
                    g: params.sub("g")?,
                    h: params.sub("h")?,
                },
                "file" => File(PathBuf::from(params.raw("path")?)),
                _ => unreachable!(),
            })
        })()
        .map_err(fail)?;
        if params.positional.is_some()
            && !matches!(spec, Complete(_) | Cycle(_) | Path(_) | Star(_))
        {
            return Err(fail(
                "positional value only allowed for basic families".into(),
            ));
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Direct transcription of the three-clause adjacency rule, pairwise.
    fn sierpinski_brute(p: usize, n: usize) -> Vec<(usize, usize)> {
        let size = p.pow(n as u32);
        let mut edges = Vec::new();
        for a in 0..size {
            for b in (a + 1)..size {
                let (u, v) = (digits(a, p, n), digits(b, p, n));
                let adj = (0..n).any(|d| {
                    (0..d).all(|i| u[i] == v[i])
                        && u[d] != v[d]
                        && (d + 1..n).all(|i| v[i] == u[d] && u[i] == v[d])
                });
                if adj {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    #[test]
    fn sierpinski_small_cases() {
        assert_eq!(
            sierpinski(3, 1).unwrap().without_labels(),
            basic(Basic::Complete, 3).unwrap()
        );
        let s32 = sierpinski(3, 2).unwrap();
        assert_eq!((s32.n(), s32.edge_count()), (9, 12));
        // S_2^3 is the path on 8 vertices.
        let s23 = sierpinski(2, 3).unwrap();
        assert_eq!(s23.edge_count(), 7);
        assert!(s23.is_connected());
        assert_eq!(s23.max_degree(), 2);
        assert_eq!((0..8).filter(|&v| s23.degree(v) == 1).count(), 2);
        assert!(sierpinski(0, 2).is_err() && sierpinski(2, 0).is_err());
    }

    #[test]
    fn sierpinski_matches_brute_force_and_edge_recurrence() {
        for p in 1..=4 {
            for n in 1..=3 {
                let s = sierpinski(p, n).unwrap();
                assert_eq!(s.edges(), sierpinski_brute(p, n), "p={p} n={n}");
                let mut e = binom(p, 2);
                for _ in 1..n {
                    e = p * e + binom(p, 2);
                }
                assert_eq!(s.edge_count(), e);
            }
        }
    }

    #[test]
    fn sierpinski_degree_and_clique_partition() {
        for p in 2..=5 {
            for n in 2..=3 {
                let s = sierpinski(p, n).unwrap();
                assert_eq!(s.max_degree(), p);
                for block in 0..p.pow(n as u32 - 1) {
                    for a in 0..p {
                        for b in (a + 1)..p {
                            assert!(s.has_edge(block * p + a, block * p + b));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn generalized_over_complete_base_is_sierpinski() {
        for p in 1..=4 {
            for n in 1..=3 {
                let k = basic(Basic::Complete, p).unwrap();
                assert_eq!(
                    generalized_sierpinski(&k, n).unwrap(),
                    sierpinski(p, n).unwrap()
                );
            }
        }
    }

    #[test]
    fn generalized_over_c4() {
        let c4 = basic(Basic::Cycle, 4).unwrap();
        let g = generalized_sierpinski(&c4, 2).unwrap();
        assert_eq!((g.n(), g.edge_count()), (16, 20));
        let s = sierpinski(4, 2).unwrap();
        assert!(g.edges().iter().all(|&(u, v)| s.has_edge(u, v)));
        assert_eq!(g.labels(), s.labels());
        assert_eq!(g.max_degree(), 3);
    }

    #[test]
    fn sierpinski_triangle_sizes() {
        assert_eq!(
            sierpinski_triangle(3, 1).unwrap().without_labels(),
            basic(Basic::Complete, 3).unwrap()
        );
        let t32 = sierpinski_triangle(3, 2).unwrap();
        assert_eq!((t32.n(), t32.edge_count()), (6, 9));
        let t33 = sierpinski_triangle(3, 3).unwrap();
        assert_eq!((t33.n(), t33.edge_count()), (15, 27));
        assert_eq!(t32.label(1), "(0,1)+(1,0)");
        assert!(sierpinski_triangle(2, 2).is_err());
    }

    #[test]
    fn kneser_graphs() {
        let p = kneser(5, 2).unwrap();
        assert_eq!((p.n(), p.edge_count()), (10, 15));
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert_eq!(p.label(0), "{1,2}");
        assert_eq!(p.label(1), "{1,3}");
        assert_eq!(p.label(2), "{2,3}");
        let k73 = kneser(7, 3).unwrap();
        assert_eq!(k73.n(), 35);
        assert!((0..35).all(|v| k73.degree(v) == 4));
        let k42 = kneser(4, 2).unwrap();
        assert_eq!((k42.n(), k42.edge_count()), (6, 3));
        assert!(kneser(5, 3).is_err());
        for n in 2..=10 {
            for r in 1..=n / 2 {
                let g = kneser(n, r).unwrap();
                assert_eq!(g.n(), binom(n, r));
                assert!((0..g.n()).all(|v| g.degree(v) == binom(n - r, r)));
            }
        }
    }

    #[test]
    fn products() {
        let h = basic(Basic::Cycle, 5).unwrap();
        assert_eq!(
            rooted_product(&Graph::empty(1), &h, 2)
                .unwrap()
                .without_labels(),
            h
        );
        let g = basic(Basic::Complete, 4).unwrap();
        let h = basic(Basic::Star, 3).unwrap();
        let r = rooted_product(&g, &h, 0).unwrap();
        assert_eq!(r.n(), 16);
        assert_eq!(r.edge_count(), 4 * 3 + 6);
        let k2 = basic(Basic::Complete, 2).unwrap();
        let p4 = rooted_product(&k2, &k2, 1).unwrap();
        assert_eq!(p4.edge_count(), 3);
        assert_eq!(p4.max_degree(), 2);
        assert!(p4.is_connected());
        assert!(rooted_product(&k2, &k2, 2).is_err());
    }

    #[test]
    fn corona_and_join() {
        let k1 = basic(Basic::Complete, 1).unwrap();
        let k2 = basic(Basic::Complete, 2).unwrap();
        let p4 = corona(&k2, &k1);
        assert_eq!((p4.n(), p4.edge_count(), p4.max_degree()), (4, 3, 2));
        let w = join(&k1, &basic(Basic::Cycle, 4).unwrap());
        assert_eq!((w.n(), w.edge_count()), (5, 8));
        let c4 = basic(Basic::Cycle, 4).unwrap();
        let via_rooted = rooted_product(&c4, &join(&k1, &k2), 0).unwrap();
        assert_eq!(corona(&c4, &k2), via_rooted);
    }

    #[test]
    fn basic_families() {
        assert_eq!(basic(Basic::Complete, 4).unwrap().edge_count(), 6);
        assert_eq!(basic(Basic::Cycle, 5).unwrap().edge_count(), 5);
        let star = basic(Basic::Star, 6).unwrap();
        assert_eq!((star.edge_count(), star.max_degree()), (6, 6));
        assert!(basic(Basic::Cycle, 2).is_err());
        assert!(basic(Basic::Path, 0).is_err());
    }

    #[test]
    fn spec_text_examples() {
        let s: FamilySpec = "sierpinski:p=3,n=2".parse().unwrap();
        assert_eq!(s, FamilySpec::Sierpinski { p: 3, n: 2 });
        let r: FamilySpec = "rooted:g=(complete:4),h=(star:3),root=0".parse().unwrap();
        assert_eq!(r.to_string(), "rooted:g=(complete:4),h=(star:3),root=0");
        assert_eq!(r.build().unwrap().n(), 16);
        let g: FamilySpec = "gsierpinski:base=(cycle:4),n=2".parse().unwrap();
        assert_eq!(g.to_string(), "generalized-sierpinski:base=(cycle:4),n=2");
        assert!("kneser:n=7".parse::<FamilySpec>().is_err());
        assert!("kneser:n=7,r=3,x=1".parse::<FamilySpec>().is_err());
        assert!("bogus:1".parse::<FamilySpec>().is_err());
        assert!("rooted:g=(complete:4,h=(star:3),root=0"
            .parse::<FamilySpec>()
            .is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        let spec: FamilySpec = "corona:g=(kneser:n=5,r=2),h=(cycle:4)".parse().unwrap();
        let a = graph6::encode(&spec.build().unwrap());
        let b = graph6::encode(&spec.build().unwrap());
        assert_eq!(a, b);
    }

    fn arb_spec() -> impl Strategy<Value = FamilySpec> {
        let leaf = prop_oneof![
            (1usize..9).prop_map(FamilySpec::Complete),
            (3usize..9).prop_map(FamilySpec::Cycle),
            (1usize..9).prop_map(FamilySpec::Path),
            (1usize..9).prop_map(FamilySpec::Star),
            (1usize..5, 1usize..4).prop_map(|(p, n)| FamilySpec::Sierpinski { p, n }),
            (1usize..4, 2usize..9).prop_map(|(r, n)| FamilySpec::Kneser { n, r }),
        ];
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone(), 0usize..3).prop_map(|(g, h, root)| {
                    FamilySpec::RootedProduct {
                        g: Box::new(g),
                        h: Box::new(h),
                        root,
                    }
                }),
                (inner.clone(), inner.clone()).prop_map(|(g, h)| FamilySpec::Corona {
                    g: Box::new(g),
                    h: Box::new(h)
                }),
                (inner.clone(), 1usize..3).prop_map(|(b, n)| FamilySpec::GeneralizedSierpinski {
                    base: Box::new(b),
                    n
                }),
                (inner.clone(), inner).prop_map(|(g, h)| FamilySpec::Join {
                    g: Box::new(g),
                    h: Box::new(h)
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn spec_text_round_trips(spec in arb_spec()) {
            let text = spec.to_string();
            prop_assert_eq!(text.parse::<FamilySpec>().unwrap(), spec);
        }
    }
}
