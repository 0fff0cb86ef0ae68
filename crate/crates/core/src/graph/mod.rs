//! Simple undirected graphs with dense vertex ids and optional structured
//! labels.

mod connectivity;
mod io;
mod iso;
mod label;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

pub(crate) use connectivity::next_combination;
pub use connectivity::{connectivity, connectivity_exhaustive, connectivity_max_flow};
pub use io::GraphJson;
pub use iso::{canonical_code, is_isomorphic, CanonicalCode};
pub use label::{reduce_one_based, BowtieKind, BowtieName, Label};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut v: Vec<Vertex> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a Vertex;
    type IntoIter = std::slice::Iter<'a, Vertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Normalizes an unordered pair so the smaller endpoint comes first.
#[inline]
pub fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Immutable simple graph. Edges are stored sorted as `(u, v)` with `u < v`;
/// an edge's position in that list is its edge id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    order: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    words: usize,
    bits: Vec<u64>,
    labels: Option<Vec<Label>>,
}

impl Graph {
    pub fn new(order: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Graph> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(Error::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push(ordered(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); order];
        let words = order.div_ceil(64).max(1);
        let mut bits = vec![0u64; words * order];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
            bits[u * words + v / 64] |= 1 << (v % 64);
            bits[v * words + u / 64] |= 1 << (u % 64);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph {
            order,
            edges: list,
            adj,
            words,
            bits,
            labels: None,
        })
    }

    pub fn empty(order: usize) -> Graph {
        Graph::new(order, []).expect("edgeless graph is always valid")
    }

    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Graph> {
        if labels.len() != self.order {
            return Err(Error::LabelCount(labels.len(), self.order));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Graph {
        self.labels = None;
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (Vertex, Vertex) {
        self.edges[id]
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edges.binary_search(&ordered(u, v)).ok()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.order
            && v < self.order
            && self.bits[u * self.words + v / 64] & (1 << (v % 64)) != 0
    }

    /// Sorted neighbor list; panics on an out-of-range vertex.
    #[inline]
    pub fn adjacent(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: Vertex) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.adj[v].clone()))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> Result<usize> {
        self.adj
            .iter()
            .map(Vec::len)
            .min()
            .ok_or_else(|| Error::InvalidParameter("minimum degree of the empty graph".into()))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.order * self.order.saturating_sub(1) / 2
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: Vertex) -> Option<&Label> {
        self.labels.as_ref().map(|l| &l[v])
    }

    /// Vertex carrying `label`, if any.
    pub fn find_label(&self, label: &Label) -> Option<Vertex> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Human-readable vertex name: the label when present, the id otherwise.
    pub fn vertex_name(&self, v: Vertex) -> String {
        match self.label(v) {
            Some(l) => l.to_string(),
            None => v.to_string(),
        }
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.order {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order,
            })
        }
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.order
    }

    /// 2-colouring `(color 0, color 1)` when one exists. Every edge is
    /// re-checked against the colouring before it is returned.
    pub fn is_bipartite(&self) -> Option<(VertexSet, VertexSet)> {
        let mut color: Vec<Option<bool>> = vec![None; self.order];
        let mut queue = VecDeque::new();
        for s in 0..self.order {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &w in &self.adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        if self.edges.iter().any(|&(u, v)| color[u] == color[v]) {
            return None;
        }
        let left = (0..self.order)
            .filter(|&v| color[v] == Some(false))
            .collect();
        let right = (0..self.order)
            .filter(|&v| color[v] == Some(true))
            .collect();
        Some((left, right))
    }

    /// Connected components of the subgraph induced on vertices with
    /// `alive[v]`, each sorted by id, listed by smallest member.
    pub fn components_within(&self, alive: &[bool]) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.order {
            if !alive[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if alive[w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_within(&vec![true; self.order])
    }

    pub fn is_connected(&self) -> bool {
        self.order <= 1 || self.components().len() == 1
    }

    /// Subgraph induced on `keep`. Labels are retained, and the returned
    /// value remembers which host vertex each new vertex came from.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<Subgraph> {
        for v in keep.iter() {
            self.check_vertex(v)?;
        }
        let mut local = vec![usize::MAX; self.order];
        for (i, v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]));
        let mut graph = Graph::new(keep.len(), edges)?;
        if let Some(labels) = &self.labels {
            graph.labels = Some(keep.iter().map(|v| labels[v].clone()).collect());
        }
        Ok(Subgraph {
            graph,
            to_host: keep.as_slice().to_vec(),
        })
    }

    /// `G - removed`, as an induced subgraph on the complement.
    pub fn remove_vertices(&self, removed: &VertexSet) -> Result<Subgraph> {
        for v in removed.iter() {
            self.check_vertex(v)?;
        }
        let keep = (0..self.order).filter(|&v| !removed.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Graph with `extra` edges added (duplicates rejected); labels kept.
    pub fn with_extra_edges(
        &self,
        extra: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Graph> {
        let mut g = Graph::new(self.order, self.edges.iter().copied().chain(extra))?;
        g.labels = self.labels.clone();
        Ok(g)
    }
}

/// An induced subgraph together with its map back to host vertex ids.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    pub to_host: Vec<Vertex>,
}

impl Subgraph {
    pub fn host_vertex(&self, v: Vertex) -> Vertex {
        self.to_host[v]
    }

    pub fn lift_edge(&self, (u, v): (Vertex, Vertex)) -> (Vertex, Vertex) {
        ordered(self.to_host[u], self.to_host[v])
    }

    pub fn lift_set(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|v| self.to_host[v]).collect()
    }

    /// Local id of host vertex `v`, if it survived.
    pub fn local_vertex(&self, v: Vertex) -> Option<Vertex> {
        self.to_host.binary_search(&v).ok()
    }
}
