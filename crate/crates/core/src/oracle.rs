//! Naive reference computations for small graphs. Nothing here uses the
//! conflict graphs or the solvers; every value comes from the definitions.

use crate::graph::Graph;

/// Every labeled graph on `n` vertices, in edge-mask order over `(i, j)`,
/// `i < j`, lexicographic.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).expect("pairs are valid")
    })
}

/// Calls `f` on every restricted growth string of length `n` (each
/// labeling up to renaming colors), with its number of colors.
fn for_each_partition(n: usize, f: &mut dyn FnMut(&[usize], usize)) {
    fn rec(a: &mut Vec<usize>, n: usize, k: usize, f: &mut dyn FnMut(&[usize], usize)) {
        if a.len() == n {
            f(a, k);
            return;
        }
        for c in 0..=k {
            a.push(c);
            rec(a, n, k.max(c + 1), f);
            a.pop();
        }
    }
    rec(&mut Vec::with_capacity(n), n, 0, f);
}

fn is_proper(g: &Graph, c: &[usize]) -> bool {
    g.edges().iter().all(|&(u, v)| c[u] != c[v])
}

fn is_injective(g: &Graph, c: &[usize]) -> bool {
    (0..g.n()).all(|x| {
        let nb: Vec<usize> = g.neighbors(x).to_vec();
        nb.iter()
            .enumerate()
            .all(|(i, &u)| nb[i + 1..].iter().all(|&w| c[u] != c[w]))
    })
}

fn min_colors(g: &Graph, ok: fn(&Graph, &[usize]) -> bool) -> usize {
    let mut best = g.n();
    for_each_partition(g.n(), &mut |c, k| {
        if k < best && ok(g, c) {
            best = k;
        }
    });
    best
}

/// Chromatic number over all set partitions of `V`.
pub fn chromatic_number(g: &Graph) -> usize {
    min_colors(g, is_proper)
}

/// Injective chromatic number over all set partitions of `V`.
pub fn injective_chromatic_number(g: &Graph) -> usize {
    min_colors(g, is_injective)
}

/// Chromatic index: smallest `k` for which edge-by-edge backtracking finds a
/// proper edge coloring.
pub fn chromatic_index(g: &Graph) -> usize {
    let edges = g.edges();
    fn fits(edges: &[(usize, usize)], colors: &mut Vec<usize>, k: usize) -> bool {
        let i = colors.len();
        if i == edges.len() {
            return true;
        }
        let (u, v) = edges[i];
        for c in 0..k {
            let clash = edges[..i]
                .iter()
                .zip(colors.iter())
                .any(|(&(a, b), &d)| d == c && (a == u || a == v || b == u || b == v));
            if !clash {
                colors.push(c);
                if fits(edges, colors, k) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    (0..)
        .find(|&k| fits(&edges, &mut Vec::new(), k))
        .expect("m colors always suffice")
}

fn largest_subset(g: &Graph, ok: impl Fn(usize, usize) -> bool) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|&s| {
            (0..n).all(|u| s >> u & 1 == 0 || (u + 1..n).all(|w| s >> w & 1 == 0 || ok(u, w)))
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Largest set with no two members sharing a neighbor.
pub fn open_packing_number(g: &Graph) -> usize {
    largest_subset(g, |u, w| {
        (0..g.n()).all(|x| !(g.has_edge(x, u) && g.has_edge(x, w)))
    })
}

/// Largest set with pairwise distance greater than 2.
pub fn two_packing_number(g: &Graph) -> usize {
    largest_subset(g, |u, w| {
        !g.has_edge(u, w) && (0..g.n()).all(|x| !(g.has_edge(x, u) && g.has_edge(x, w)))
    })
}
