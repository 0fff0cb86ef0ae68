use std::collections::VecDeque;

use super::Graph;
use crate::error::{invalid, Result};

/// Largest order for which [`connectivity`] uses subset enumeration.
const EXHAUSTIVE_LIMIT: usize = 16;

/// Vertex connectivity. Complete graphs report `order - 1`.
pub fn connectivity(g: &Graph) -> Result<usize> {
    if g.order() <= EXHAUSTIVE_LIMIT {
        connectivity_exhaustive(g)
    } else {
        connectivity_max_flow(g)
    }
}

/// Smallest separating vertex set found by trying every subset in order of
/// size. Exponential; intended for small graphs and as a cross-check.
pub fn connectivity_exhaustive(g: &Graph) -> Result<usize> {
    let n = g.order();
    if n < 2 {
        return Err(invalid("connectivity needs at least two vertices"));
    }
    if g.is_complete() {
        return Ok(n - 1);
    }
    let mut alive = vec![true; n];
    for k in 0..=n - 2 {
        let mut chosen: Vec<usize> = (0..k).collect();
        loop {
            alive.iter_mut().for_each(|a| *a = true);
            for &c in &chosen {
                alive[c] = false;
            }
            if g.components_within(&alive).len() > 1 {
                return Ok(k);
            }
            if !next_combination(&mut chosen, n) {
                break;
            }
        }
    }
    unreachable!("a non-complete graph always has a separating set of size at most n - 2")
}

/// Minimum over non-adjacent pairs of the local vertex connectivity, each
/// computed as a unit-capacity max flow on the split graph.
pub fn connectivity_max_flow(g: &Graph) -> Result<usize> {
    let n = g.order();
    if n < 2 {
        return Err(invalid("connectivity needs at least two vertices"));
    }
    if g.is_complete() {
        return Ok(n - 1);
    }
    let mut best = g.min_degree()?;
    let mut net = SplitNetwork::new(g);
    for s in 0..n {
        for t in s + 1..n {
            if g.has_edge(s, t) {
                continue;
            }
            let flow = net.max_flow(s, t, best);
            best = best.min(flow);
            if best == 0 {
                return Ok(0);
            }
        }
    }
    Ok(best)
}

/// Advances `c` to the next k-combination of `0..n` in lexicographic order.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Vertex `v` becomes `v_in = 2v` and `v_out = 2v + 1` joined by a unit arc;
/// each edge becomes two infinite-capacity arcs between the halves.
struct SplitNetwork {
    head: Vec<usize>,
    cap: Vec<i32>,
    base: Vec<i32>,
    first: Vec<Vec<usize>>,
}

impl SplitNetwork {
    fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut net = SplitNetwork {
            head: Vec::new(),
            cap: Vec::new(),
            base: Vec::new(),
            first: vec![Vec::new(); 2 * n],
        };
        let big = n as i32 + 1;
        for v in 0..n {
            net.arc(2 * v, 2 * v + 1, 1);
        }
        for &(u, v) in g.edges() {
            net.arc(2 * u + 1, 2 * v, big);
            net.arc(2 * v + 1, 2 * u, big);
        }
        net.base = net.cap.clone();
        net
    }

    fn arc(&mut self, from: usize, to: usize, cap: i32) {
        self.first[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.first[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    /// Internally disjoint s-t paths, stopping early at `limit`.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        self.cap.copy_from_slice(&self.base);
        let (src, sink) = (2 * s + 1, 2 * t);
        let mut flow = 0;
        let mut pred = vec![usize::MAX; self.first.len()];
        while flow < limit {
            pred.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = VecDeque::from([src]);
            let mut reached = false;
            while let Some(u) = queue.pop_front() {
                for &a in &self.first[u] {
                    let w = self.head[a];
                    if self.cap[a] > 0 && w != src && pred[w] == usize::MAX {
                        pred[w] = a;
                        if w == sink {
                            reached = true;
                            break;
                        }
                        queue.push_back(w);
                    }
                }
                if reached {
                    break;
                }
            }
            if !reached {
                break;
            }
            let mut w = sink;
            while w != src {
                let a = pred[w];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                w = self.head[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}
