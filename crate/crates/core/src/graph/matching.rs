//! Maximum cardinality matching in general graphs (Edmonds' blossom algorithm).

use std::collections::VecDeque;

use super::Graph;

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        Self {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Grows an alternating tree from `root`; returns the free endpoint of an
    /// augmenting path if one exists.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for to in self.g.neighbors(v).iter() {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn run(mut self) -> Vec<(usize, usize)> {
        for v in 0..self.g.n() {
            if self.mate[v] != NONE {
                continue;
            }
            if let Some(mut u) = self.find_path(v) {
                while u != NONE {
                    let pv = self.parent[u];
                    let next = self.mate[pv];
                    self.mate[u] = pv;
                    self.mate[pv] = u;
                    u = next;
                }
            }
        }
        (0..self.g.n())
            .filter(|&v| self.mate[v] != NONE && v < self.mate[v])
            .map(|v| (v, self.mate[v]))
            .collect()
    }
}

/// A maximum matching as edges `(u, v)` with `u < v`, sorted by `u`.
pub fn maximum_matching(g: &Graph) -> Vec<(usize, usize)> {
    Blossom::new(g).run()
}
