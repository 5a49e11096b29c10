use crate::bitset::BitSet;
use crate::graph::{Certificate, Graph, VertexColoring};

use super::{OutOfBudget, Problem, SolveOptions, SolveResult, Tracker};

const NONE: usize = usize::MAX;

/// Outcome of a fixed-palette decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringOutcome {
    Colorable(VertexColoring),
    NotColorable,
    Unknown,
}

/// DSATUR backtracking state for a fixed palette of `k` colors.
struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    // counts[v * k + c]: colored neighbors of v that carry c
    counts: Vec<u32>,
    sat: Vec<usize>,
    free_deg: Vec<usize>,
    per_color: Vec<usize>,
    used: usize,
    colored: usize,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph, k: usize) -> Self {
        let n = g.n();
        Self {
            g,
            k,
            color: vec![NONE; n],
            counts: vec![0; n * k],
            sat: vec![0; n],
            free_deg: (0..n).map(|v| g.degree(v)).collect(),
            per_color: vec![0; k],
            used: 0,
            colored: 0,
        }
    }

    fn can_take(&self, v: usize, c: usize) -> bool {
        self.counts[v * self.k + c] == 0
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for u in self.g.neighbors(v) {
            let slot = &mut self.counts[u * self.k + c];
            if *slot == 0 {
                self.sat[u] += 1;
            }
            *slot += 1;
            self.free_deg[u] -= 1;
        }
        self.per_color[c] += 1;
        self.used = self.used.max(c + 1);
        self.colored += 1;
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = NONE;
        for u in self.g.neighbors(v) {
            let slot = &mut self.counts[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[u] -= 1;
            }
            self.free_deg[u] += 1;
        }
        self.per_color[c] -= 1;
        while self.used > 0 && self.per_color[self.used - 1] == 0 {
            self.used -= 1;
        }
        self.colored -= 1;
    }

    fn select(&self) -> usize {
        let mut best = NONE;
        for v in 0..self.color.len() {
            if self.color[v] != NONE {
                continue;
            }
            if best == NONE
                || (self.sat[v], self.free_deg[v]) > (self.sat[best], self.free_deg[best])
            {
                best = v;
            }
        }
        best
    }

    fn search(&mut self, tracker: &mut Tracker) -> Result<bool, OutOfBudget> {
        tracker.tick()?;
        if self.colored == self.color.len() {
            return Ok(true);
        }
        let v = self.select();
        // Colors at index >= used are interchangeable, so only the first is tried.
        let limit = (self.used + 1).min(self.k);
        for c in 0..limit {
            if self.can_take(v, c) {
                self.assign(v, c);
                if self.search(tracker)? {
                    return Ok(true);
                }
                self.unassign(v);
            }
        }
        Ok(false)
    }

    fn greedy(mut self) -> Vec<usize> {
        while self.colored < self.color.len() {
            let v = self.select();
            let c = (0..self.k).find(|&c| self.can_take(v, c)).expect("k >= n");
            self.assign(v, c);
        }
        self.color
    }
}

/// Greedy DSATUR coloring; an upper bound on χ.
pub(crate) fn dsatur_greedy(g: &Graph) -> VertexColoring {
    let k = g.max_degree() + 1;
    VertexColoring::compacted(&Dsatur::new(g, k).greedy())
}

/// Large clique built greedily from every start vertex.
pub(crate) fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for start in 0..g.n() {
        if g.degree(start) < best.len() {
            continue;
        }
        let mut clique = vec![start];
        let mut cand: BitSet = g.neighbors(start).clone();
        while !cand.is_empty() {
            let u = cand
                .iter()
                .max_by_key(|&u| (g.neighbors(u).intersection_len(&cand), std::cmp::Reverse(u)))
                .expect("non-empty");
            clique.push(u);
            cand.intersect_with(g.neighbors(u));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

/// Decides `k`-colorability with `fixed` as forced colors of the listed vertices.
pub(crate) fn decide(
    g: &Graph,
    k: usize,
    fixed: &[(usize, usize)],
    deterministic: bool,
    tracker: &mut Tracker,
) -> Result<Option<VertexColoring>, OutOfBudget> {
    if deterministic {
        return lex_min(g, k, tracker);
    }
    decide_raw(g, k, fixed, tracker).map(|o| o.map(|c| VertexColoring::compacted(&c)))
}

fn decide_raw(
    g: &Graph,
    k: usize,
    fixed: &[(usize, usize)],
    tracker: &mut Tracker,
) -> Result<Option<Vec<usize>>, OutOfBudget> {
    if g.n() == 0 {
        return Ok(Some(Vec::new()));
    }
    if k == 0 {
        return Ok(None);
    }
    let mut s = Dsatur::new(g, k);
    let seed: Vec<(usize, usize)> = if fixed.is_empty() {
        greedy_clique(g)
            .into_iter()
            .enumerate()
            .map(|(c, v)| (v, c))
            .collect()
    } else {
        fixed.to_vec()
    };
    for (v, c) in seed {
        if c >= k || !s.can_take(v, c) {
            return Ok(None);
        }
        s.assign(v, c);
    }
    Ok(s.search(tracker)?.then_some(s.color))
}

/// Lexicographically smallest proper coloring with at most `k` colors.
fn lex_min(
    g: &Graph,
    k: usize,
    tracker: &mut Tracker,
) -> Result<Option<VertexColoring>, OutOfBudget> {
    let Some(mut witness) = decide_raw(g, k, &[], tracker)? else {
        return Ok(None);
    };
    let mut prefix: Vec<(usize, usize)> = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let open = prefix.iter().map(|&(_, c)| c + 1).max().unwrap_or(0);
        for c in 0..=open.min(k - 1) {
            if g.neighbors(v).iter().any(|u| u < v && prefix[u].1 == c) {
                continue;
            }
            prefix.push((v, c));
            // The current witness already certifies its own color at v.
            if witness[v] == c && prefix.iter().all(|&(u, d)| witness[u] == d) {
                break;
            }
            if let Some(w) = decide_raw(g, k, &prefix, tracker)? {
                witness = w;
                break;
            }
            prefix.pop();
        }
        debug_assert_eq!(prefix.len(), v + 1);
    }
    Ok(Some(VertexColoring::compacted(&witness)))
}

/// Exact fixed-palette decision.
pub fn k_coloring(g: &Graph, k: usize, opts: &SolveOptions) -> ColoringOutcome {
    let mut tracker = Tracker::new(opts.budget);
    match decide(g, k, &[], opts.deterministic, &mut tracker) {
        Ok(Some(c)) => ColoringOutcome::Colorable(c),
        Ok(None) => ColoringOutcome::NotColorable,
        Err(OutOfBudget) => ColoringOutcome::Unknown,
    }
}

/// χ(g): greedy clique lower bound, DSATUR upper bound, and a DSATUR
/// decision for each palette size in between.
pub fn chromatic_number(g: &Graph, opts: &SolveOptions) -> SolveResult {
    let mut tracker = Tracker::new(opts.budget);
    let greedy = dsatur_greedy(g);
    let upper = greedy.palette_size();
    let lower = greedy_clique(g).len();
    let result = |value, exact, lower, c: VertexColoring, t: &Tracker| SolveResult {
        problem: Problem::Chi,
        value,
        exact,
        lower,
        upper: if exact { value } else { upper },
        witness: Certificate::VertexColoring(c),
        nodes: t.nodes,
        ms: t.elapsed_ms(),
    };
    for k in lower..upper {
        match decide_raw(g, k, &[], &mut tracker) {
            Ok(Some(c)) => {
                let c = if opts.deterministic {
                    lex_min(g, k, &mut tracker).ok().flatten()
                } else {
                    None
                }
                .unwrap_or_else(|| VertexColoring::compacted(&c));
                return result(k, true, k, c, &tracker);
            }
            Ok(None) => {}
            Err(OutOfBudget) => return result(upper, false, k, greedy, &tracker),
        }
    }
    let c = if opts.deterministic {
        lex_min(g, upper, &mut tracker).ok().flatten()
    } else {
        None
    }
    .unwrap_or(greedy);
    result(upper, true, upper, c, &tracker)
}
