//! Matchings, maximum-matching and perfect-matching oracles, and Tutte
//! certificates for graphs without a perfect matching.

mod blossom;

pub use blossom::BlossomSolver;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ordered, Graph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchingKind {
    Partial,
    NearPerfect,
    Perfect,
}

impl MatchingKind {
    fn of(size: usize, order: usize) -> Self {
        if 2 * size == order {
            MatchingKind::Perfect
        } else if 2 * size + 1 == order {
            MatchingKind::NearPerfect
        } else {
            MatchingKind::Partial
        }
    }
}

/// A set of pairwise disjoint edges of one host graph. Edges are kept as
/// sorted `(u, v)` pairs with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matching {
    kind: MatchingKind,
    edges: Vec<(Vertex, Vertex)>,
    #[serde(skip)]
    host: Option<u64>,
}

impl Matching {
    /// Validates `edges` against `g`; fails on foreign or overlapping edges.
    pub fn new(g: &Graph, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Matching> {
        let mut list: Vec<(Vertex, Vertex)> =
            edges.into_iter().map(|(u, v)| ordered(u, v)).collect();
        list.sort_unstable();
        let mut used = vec![false; g.order()];
        for &(u, v) in &list {
            if v >= g.order() || !g.has_edge(u, v) {
                return Err(Error::InvalidMatching(format!("{u}-{v} is not an edge")));
            }
            if used[u] || used[v] {
                return Err(Error::InvalidMatching(format!(
                    "{u}-{v} shares a vertex with another edge"
                )));
            }
            used[u] = true;
            used[v] = true;
        }
        Ok(Matching {
            kind: MatchingKind::of(list.len(), g.order()),
            edges: list,
            host: Some(fingerprint(g)),
        })
    }

    pub fn empty(g: &Graph) -> Matching {
        Matching {
            kind: MatchingKind::of(0, g.order()),
            edges: Vec::new(),
            host: Some(fingerprint(g)),
        }
    }

    pub fn kind(&self) -> MatchingKind {
        self.kind
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&ordered(u, v)).is_ok()
    }

    pub fn contains_all(&self, other: &Matching) -> bool {
        other.edges.iter().all(|&(u, v)| self.contains_edge(u, v))
    }

    pub fn covers(&self, v: Vertex) -> bool {
        self.edges.iter().any(|&(a, b)| a == v || b == v)
    }

    pub fn vertices(&self) -> VertexSet {
        self.edges.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    pub fn mate(&self, v: Vertex) -> Option<Vertex> {
        self.edges.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Fingerprint of the host graph this matching was validated against;
    /// absent for deserialized values.
    pub fn host(&self) -> Option<u64> {
        self.host
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matching serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Matching> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// FNV-1a over order and edge list; identifies the host of a matching.
pub fn fingerprint(g: &Graph) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    feed(g.order() as u64);
    for &(u, v) in g.edges() {
        feed(u as u64);
        feed(v as u64);
    }
    h
}

/// A set `S` whose deletion leaves more than `|S|` odd components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TutteViolator {
    pub set: VertexSet,
    pub odd_components: usize,
}

impl TutteViolator {
    /// Recounts the odd components of `g - S` from scratch.
    pub fn verify(&self, g: &Graph) -> bool {
        if self.set.iter().any(|v| v >= g.order()) {
            return false;
        }
        let odd = odd_components_after(g, &self.set);
        odd == self.odd_components && odd > self.set.len()
    }
}

/// Number of odd components of `g - removed`.
pub fn odd_components_after(g: &Graph, removed: &VertexSet) -> usize {
    let mut alive = vec![true; g.order()];
    for v in removed.iter() {
        alive[v] = false;
    }
    g.components_within(&alive)
        .iter()
        .filter(|c| c.len() % 2 == 1)
        .count()
}

pub fn maximum_matching(g: &Graph) -> Matching {
    let mut solver = BlossomSolver::new(g);
    solver.maximize();
    Matching::new(g, solver.matching_edges()).expect("blossom output is a matching")
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    if g.order() % 2 == 1 {
        return false;
    }
    BlossomSolver::new(g).complete_to_perfect()
}

/// Perfect matching of `g` containing `m`, found as a perfect matching of
/// `g - V(m)` joined with `m`.
pub fn extend_to_perfect(g: &Graph, m: &Matching) -> Result<Option<Matching>> {
    if !verify_matching(g, m, MatchingKind::Partial) {
        return Err(Error::InvalidMatching(
            "input is not a matching of this graph".into(),
        ));
    }
    if g.order() % 2 == 1 {
        return Ok(None);
    }
    let mut solver = BlossomSolver::new(g);
    for &(u, v) in m.edges() {
        solver.kill(u);
        solver.kill(v);
    }
    if !solver.complete_to_perfect() {
        return Ok(None);
    }
    let all = solver
        .matching_edges()
        .into_iter()
        .chain(m.edges().iter().copied());
    Ok(Some(Matching::new(g, all)?))
}

/// Structural re-validation from the raw edge list. `Partial` accepts any
/// matching; the other kinds require the exact size.
pub fn verify_matching(g: &Graph, m: &Matching, expected: MatchingKind) -> bool {
    if m.host.is_some_and(|h| h != fingerprint(g)) {
        return false;
    }
    let mut used = vec![false; g.order()];
    for &(u, v) in m.edges() {
        if u >= g.order() || v >= g.order() || !g.has_edge(u, v) || used[u] || used[v] {
            return false;
        }
        used[u] = true;
        used[v] = true;
    }
    match expected {
        MatchingKind::Partial => true,
        MatchingKind::NearPerfect => 2 * m.len() + 1 == g.order(),
        MatchingKind::Perfect => 2 * m.len() == g.order(),
    }
}

/// Largest order for the exhaustive subset fallback of [`tutte_violator`].
pub const EXHAUSTIVE_TUTTE_ORDER: usize = 14;

/// A Tutte set certifying that `g` has no perfect matching, or `None` if it
/// has one. For even order the set is read off the Gallai-Edmonds
/// decomposition of a maximum matching and recounted before being returned.
pub fn tutte_violator(g: &Graph) -> Result<Option<TutteViolator>> {
    if g.order() % 2 == 1 {
        let set = VertexSet::new();
        let odd_components = odd_components_after(g, &set);
        return Ok(Some(TutteViolator {
            set,
            odd_components,
        }));
    }
    let mut solver = BlossomSolver::new(g);
    if 2 * solver.maximize() == g.order() {
        return Ok(None);
    }
    if let Some(outer) = solver.outer_vertices() {
        let set: VertexSet = g
            .vertices()
            .filter(|&v| !outer[v] && g.adjacent(v).iter().any(|&w| outer[w]))
            .collect();
        let odd_components = odd_components_after(g, &set);
        if odd_components > set.len() {
            return Ok(Some(TutteViolator {
                set,
                odd_components,
            }));
        }
    }
    log::warn!("Gallai-Edmonds extraction failed to certify; falling back to subset search");
    exhaustive_violator(g).map(Some)
}

fn exhaustive_violator(g: &Graph) -> Result<TutteViolator> {
    let n = g.order();
    if n > EXHAUSTIVE_TUTTE_ORDER {
        return Err(Error::RefutationAlarm(format!(
            "no certified Tutte set for a graph of order {n}"
        )));
    }
    for mask in 0u32..(1 << n) {
        let set: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let odd_components = odd_components_after(g, &set);
        if odd_components > set.len() {
            return Ok(TutteViolator {
                set,
                odd_components,
            });
        }
    }
    Err(Error::RefutationAlarm(
        "graph without perfect matching satisfies Tutte's condition".into(),
    ))
}
