//! Edmonds' blossom algorithm for maximum-cardinality matching in general
//! graphs, with reusable buffers and a vertex mask so that the same solver
//! can be run on many vertex-deleted subgraphs of one host graph.

use std::collections::VecDeque;

use crate::graph::{Graph, Vertex};

pub(crate) const NONE: usize = usize::MAX;

pub struct BlossomSolver<'g> {
    g: &'g Graph,
    alive: Vec<bool>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    even: Vec<bool>,
    in_blossom: Vec<bool>,
    lca_mark: Vec<bool>,
    root_of: Vec<usize>,
    queue: VecDeque<usize>,
}

impl<'g> BlossomSolver<'g> {
    pub fn new(g: &'g Graph) -> Self {
        let n = g.order();
        BlossomSolver {
            g,
            alive: vec![true; n],
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            even: vec![false; n],
            in_blossom: vec![false; n],
            lca_mark: vec![false; n],
            root_of: vec![NONE; n],
            queue: VecDeque::with_capacity(n),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    /// Restores the full vertex set and clears the matching.
    pub fn reset(&mut self) {
        self.alive.iter_mut().for_each(|a| *a = true);
        self.mate.iter_mut().for_each(|m| *m = NONE);
    }

    /// Marks `v` deleted, dropping its matching edge if it had one.
    pub fn kill(&mut self, v: Vertex) {
        if self.mate[v] != NONE {
            let w = self.mate[v];
            self.mate[w] = NONE;
            self.mate[v] = NONE;
        }
        self.alive[v] = false;
    }

    pub fn revive(&mut self, v: Vertex) {
        self.alive[v] = true;
    }

    pub fn is_alive(&self, v: Vertex) -> bool {
        self.alive[v]
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn mate(&self, v: Vertex) -> Option<Vertex> {
        (self.mate[v] != NONE).then_some(self.mate[v])
    }

    /// Installs `u - v` as a matching edge. Both ends must be alive,
    /// adjacent and currently exposed.
    pub fn set_pair(&mut self, u: Vertex, v: Vertex) {
        debug_assert!(self.alive[u] && self.alive[v] && self.g.has_edge(u, v));
        debug_assert!(self.mate[u] == NONE && self.mate[v] == NONE);
        self.mate[u] = v;
        self.mate[v] = u;
    }

    pub fn clear_matching(&mut self) {
        self.mate.iter_mut().for_each(|m| *m = NONE);
    }

    /// Current matching edges `(u, v)`, `u < v`, sorted.
    pub fn matching_edges(&self) -> Vec<(Vertex, Vertex)> {
        (0..self.g.order())
            .filter(|&v| self.mate[v] != NONE && v < self.mate[v])
            .map(|v| (v, self.mate[v]))
            .collect()
    }

    pub fn matching_size(&self) -> usize {
        (0..self.g.order())
            .filter(|&v| self.mate[v] != NONE && v < self.mate[v])
            .count()
    }

    fn greedy(&mut self) {
        for v in 0..self.g.order() {
            if !self.alive[v] || self.mate[v] != NONE {
                continue;
            }
            if let Some(&w) = self
                .g
                .adjacent(v)
                .iter()
                .find(|&&w| self.alive[w] && self.mate[w] == NONE)
            {
                self.mate[v] = w;
                self.mate[w] = v;
            }
        }
    }

    /// Extends the current matching to a maximum one on the live vertices.
    /// Roots are tried in id order, neighbors in id order.
    pub fn maximize(&mut self) -> usize {
        self.greedy();
        for v in 0..self.g.order() {
            if self.alive[v] && self.mate[v] == NONE {
                self.augment_from(v);
            }
        }
        self.matching_size()
    }

    /// Completes the current matching to a perfect matching of the live
    /// vertices if possible. Stops at the first exposed vertex admitting no
    /// augmenting path: such a vertex is missed by some maximum matching.
    pub fn complete_to_perfect(&mut self) -> bool {
        for v in 0..self.g.order() {
            if self.alive[v] && self.mate[v] == NONE && !self.augment_from(v) {
                return false;
            }
        }
        true
    }

    /// Searches for an augmenting path from the exposed vertex `root` and
    /// applies it. Returns whether the matching grew.
    pub fn augment_from(&mut self, root: Vertex) -> bool {
        debug_assert!(self.alive[root] && self.mate[root] == NONE);
        match self.grow(&[root]) {
            Some(end) => {
                self.flip(end);
                true
            }
            None => false,
        }
    }

    fn flip(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }

    /// Grows an alternating forest from `roots`. Returns the far end of an
    /// augmenting path from a single root, if one is found.
    fn grow(&mut self, roots: &[Vertex]) -> Option<usize> {
        let n = self.g.order();
        self.parent.iter_mut().for_each(|p| *p = NONE);
        self.even.iter_mut().for_each(|u| *u = false);
        self.root_of.iter_mut().for_each(|r| *r = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        for &r in roots {
            self.even[r] = true;
            self.root_of[r] = r;
            self.queue.push_back(r);
        }
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.g.adjacent(v).len() {
                let to = self.g.adjacent(v)[idx];
                if !self.alive[to] || self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                let to_even = self.root_of[to] != NONE && self.is_outer(to);
                if to_even {
                    if self.root_of[self.base[to]] != self.root_of[self.base[v]] {
                        // Two trees touch: only possible with several roots,
                        // which the callers use on maximum matchings only.
                        return Some(NONE);
                    }
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    let root = self.root_of[cur];
                    for i in 0..n {
                        if self.alive[i] && self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            self.root_of[i] = root;
                            if !self.even[i] {
                                self.even[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE && self.root_of[to] == NONE {
                    self.parent[to] = v;
                    self.root_of[to] = self.root_of[v];
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.even[next] = true;
                    self.root_of[next] = self.root_of[v];
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn is_outer(&self, v: usize) -> bool {
        self.even[v]
    }

    fn lca(&mut self, mut a: usize, mut b: usize) -> usize {
        self.lca_mark.iter_mut().for_each(|m| *m = false);
        loop {
            a = self.base[a];
            self.lca_mark[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if self.lca_mark[b] {
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

    /// Outer (even) vertices of the alternating forest grown from every
    /// exposed live vertex at once. On a maximum matching this is the set of
    /// vertices missed by at least one maximum matching. `None` if an
    /// augmenting path exists, i.e. the matching was not maximum.
    pub fn outer_vertices(&mut self) -> Option<Vec<bool>> {
        let roots: Vec<usize> = (0..self.g.order())
            .filter(|&v| self.alive[v] && self.mate[v] == NONE)
            .collect();
        if self.grow(&roots).is_some() {
            return None;
        }
        Some(
            (0..self.g.order())
                .map(|v| self.alive[v] && self.even[v])
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path, petersen};

    #[test]
    fn maximum_sizes_on_small_families() {
        assert_eq!(BlossomSolver::new(&path(4).unwrap()).maximize(), 2);
        assert_eq!(BlossomSolver::new(&cycle(5).unwrap()).maximize(), 2);
        assert_eq!(BlossomSolver::new(&petersen()).maximize(), 5);
        assert_eq!(BlossomSolver::new(&complete(7).unwrap()).maximize(), 3);
    }

    #[test]
    fn needs_blossom_contraction() {
        // Triangle 0-1-2 with pendant paths; greedy picks 1-2 first and the
        // augmenting path from 3 must pass through the odd cycle.
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 0), (0, 3), (2, 4), (4, 5)]).unwrap();
        let mut s = BlossomSolver::new(&g);
        s.set_pair(1, 2);
        s.set_pair(4, 5);
        assert_eq!(s.maximize(), 3);
    }

    #[test]
    fn masked_vertices_are_ignored() {
        let g = cycle(6).unwrap();
        let mut s = BlossomSolver::new(&g);
        s.kill(0);
        s.kill(2);
        assert!(!s.complete_to_perfect());
        s.reset();
        s.kill(0);
        s.kill(1);
        assert!(s.complete_to_perfect());
        assert_eq!(s.matching_edges(), vec![(2, 3), (4, 5)]);
    }
}
