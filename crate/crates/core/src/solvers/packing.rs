use crate::bitset::BitSet;
use crate::graph::{Graph, VertexSet};

use super::{OutOfBudget, Tracker};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct MisOutcome {
    pub best: VertexSet,
    pub exact: bool,
    /// Proven upper bound on the independence number.
    pub upper: usize,
}

/// Clique search in the complement, with vertices renumbered so that id order
/// is descending conflict degree. Greedy coloring of the candidates bounds
/// every branch.
struct Mcq {
    comp: Vec<BitSet>,
    current: Vec<usize>,
    best: Vec<usize>,
    floor: usize,
    target: usize,
}

impl Mcq {
    fn color_sort(&self, cand: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(cand.len());
        let mut bounds = Vec::with_capacity(cand.len());
        let mut remaining = cand.clone();
        let mut color = 0;
        while !remaining.is_empty() {
            color += 1;
            let mut q = remaining.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.difference_with(&self.comp[v]);
                remaining.remove(v);
                order.push(v);
                bounds.push(color);
            }
        }
        (order, bounds)
    }

    /// Returns `Ok(true)` once a clique of size `target` is found.
    fn expand(&mut self, mut cand: BitSet, tracker: &mut Tracker) -> Result<bool, OutOfBudget> {
        tracker.tick()?;
        let (order, bounds) = self.color_sort(&cand);
        for i in (0..order.len()).rev() {
            if self.current.len() + bounds[i] <= self.best.len().max(self.floor) {
                return Ok(false);
            }
            let v = order[i];
            self.current.push(v);
            let next = cand.intersection(&self.comp[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len().max(self.floor) {
                    self.best = self.current.clone();
                    if self.best.len() >= self.target {
                        self.current.pop();
                        return Ok(true);
                    }
                }
            } else if self.expand(next, tracker)? {
                self.current.pop();
                return Ok(true);
            }
            self.current.pop();
            cand.remove(v);
        }
        Ok(false)
    }

    fn run(
        &mut self,
        cand: BitSet,
        floor: usize,
        target: usize,
        tracker: &mut Tracker,
    ) -> Result<Option<Vec<usize>>, OutOfBudget> {
        self.best.clear();
        self.current.clear();
        self.floor = floor;
        self.target = target;
        self.expand(cand, tracker)?;
        Ok((self.best.len() > floor).then(|| self.best.clone()))
    }
}

fn greedy_independent(g: &Graph) -> Vec<usize> {
    let mut alive = BitSet::full(g.n());
    let mut set = Vec::new();
    while !alive.is_empty() {
        let v = alive
            .iter()
            .min_by_key(|&v| g.neighbors(v).intersection_len(&alive))
            .expect("non-empty");
        set.push(v);
        alive.remove(v);
        alive.difference_with(g.neighbors(v));
    }
    set.sort_unstable();
    set
}

/// Maximum independent set of `g`. Under `deterministic` the returned set is
/// the lexicographically smallest maximum one.
pub(crate) fn maximum_independent_set(
    g: &Graph,
    deterministic: bool,
    tracker: &mut Tracker,
) -> MisOutcome {
    let n = g.n();
    let mut rank: Vec<usize> = (0..n).collect();
    rank.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut pos = vec![0; n];
    for (i, &v) in rank.iter().enumerate() {
        pos[v] = i;
    }
    let comp: Vec<BitSet> = rank
        .iter()
        .map(|&v| {
            BitSet::from_iter_with_capacity(
                n,
                (0..n)
                    .filter(|&u| u != v && !g.has_edge(u, v))
                    .map(|u| pos[u]),
            )
        })
        .collect();
    let mut mcq = Mcq {
        comp,
        current: Vec::new(),
        best: Vec::new(),
        floor: 0,
        target: usize::MAX,
    };
    let back = |set: &[usize]| -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&i| rank[i]).collect();
        out.sort_unstable();
        out
    };

    let greedy = greedy_independent(g);
    let all = BitSet::full(n);
    let root_bound = mcq.color_sort(&all).1.last().copied().unwrap_or(0);
    let mut best = match mcq.run(all.clone(), greedy.len(), usize::MAX, tracker) {
        Ok(Some(better)) => back(&better),
        Ok(None) => greedy,
        Err(OutOfBudget) => {
            let found = if mcq.best.len() > greedy.len() {
                back(&mcq.best)
            } else {
                greedy
            };
            return MisOutcome {
                best: VertexSet::new(found),
                exact: false,
                upper: root_bound,
            };
        }
    };
    let alpha = best.len();

    if deterministic {
        if let Ok(lex) = lex_min(g, &mut mcq, &pos, &back, alpha, &best, tracker) {
            best = lex;
        }
    }
    MisOutcome {
        best: VertexSet::new(best),
        exact: true,
        upper: alpha,
    }
}

/// Picks members in increasing id order, each time the smallest vertex that
/// still extends to an independent set of size `alpha`.
fn lex_min(
    g: &Graph,
    mcq: &mut Mcq,
    pos: &[usize],
    back: &dyn Fn(&[usize]) -> Vec<usize>,
    alpha: usize,
    witness: &[usize],
    tracker: &mut Tracker,
) -> Result<Vec<usize>, OutOfBudget> {
    let n = g.n();
    let mut witness = witness.to_vec();
    let mut chosen: Vec<usize> = Vec::with_capacity(alpha);
    let mut allowed = BitSet::full(n);
    let mut v = 0;
    while chosen.len() < alpha {
        while !allowed.contains(v) {
            v += 1;
        }
        let need = alpha - chosen.len() - 1;
        let mut rest = allowed.clone();
        rest.difference_with(g.neighbors(v));
        for u in 0..=v {
            rest.remove(u);
        }
        let fits = if need == 0 || witness.get(chosen.len()) == Some(&v) {
            true
        } else {
            let cand = BitSet::from_iter_with_capacity(n, rest.iter().map(|u| pos[u]));
            match mcq.run(cand, need - 1, need, tracker)? {
                Some(found) => {
                    witness = chosen.clone();
                    witness.push(v);
                    witness.extend(back(&found));
                    true
                }
                None => false,
            }
        };
        if fits {
            chosen.push(v);
            allowed = rest;
        } else {
            allowed.remove(v);
        }
        v += 1;
    }
    Ok(chosen)
}
