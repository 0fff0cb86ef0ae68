//! Constructors for the graph families used throughout the crate: paths,
//! cycles, complete graphs, Cartesian products of paths and cycles, and the
//! bow-tie graphs.

use crate::error::{invalid, Error, Result};
use crate::graph::{reduce_one_based, BowtieName, Graph, Label, Vertex, VertexSet};

fn plain_labels(order: usize) -> Vec<Label> {
    (0..order).map(|v| Label::plain(v.to_string())).collect()
}

/// Path on `n` vertices `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(invalid("path needs at least one vertex"));
    }
    Graph::new(n, (1..n).map(|v| (v - 1, v)))?.with_labels(plain_labels(n))
}

/// Cycle on `n >= 3` vertices in id order.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("cycle needs at least three vertices"));
    }
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n)))?.with_labels(plain_labels(n))
}

pub fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(invalid("complete graph needs at least one vertex"));
    }
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))?
        .with_labels(plain_labels(n))
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a < 1 || b < 1 {
        return Err(invalid("complete bipartite graph needs nonempty parts"));
    }
    Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))?
        .with_labels(plain_labels(a + b))
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::new(10, outer.chain(spokes).chain(inner))
        .expect("petersen edges are valid")
        .with_labels(plain_labels(10))
        .expect("label count matches")
}

/// A factor of a grid product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Path(usize),
    Cycle(usize),
}

impl Factor {
    pub fn len(self) -> usize {
        match self {
            Factor::Path(n) | Factor::Cycle(n) => n,
        }
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }

    pub fn is_cycle(self) -> bool {
        matches!(self, Factor::Cycle(_))
    }

    pub fn graph(self) -> Result<Graph> {
        match self {
            Factor::Path(n) => path(n),
            Factor::Cycle(n) => cycle(n),
        }
    }
}

/// Recognizes `path(n)` / `cycle(n)` by their exact edge lists, so products
/// of generated factors pick up the modular grid convention.
fn recognize_factor(g: &Graph) -> Option<Factor> {
    let n = g.order();
    let path_edges = (1..n).all(|v| g.has_edge(v - 1, v));
    if path_edges && g.size() == n.saturating_sub(1) {
        return Some(Factor::Path(n));
    }
    if n >= 3 && path_edges && g.size() == n && g.has_edge(0, n - 1) {
        return Some(Factor::Cycle(n));
    }
    None
}

/// Cartesian product. Vertex `(a, b)` gets id `a * |V2| + b`, i.e. row-major
/// order `(i-1) n + (j-1)` for grid label `v_{i,j}`. Grid labels carry a
/// modulus on each axis whose factor is a cycle.
pub fn cartesian_product(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let (n1, n2) = (g1.order(), g2.order());
    if n1 == 0 || n2 == 0 {
        return Err(invalid("product factors must be nonempty"));
    }
    let id = |a: usize, b: usize| a * n2 + b;
    let mut edges = Vec::with_capacity(n1 * g2.size() + n2 * g1.size());
    for a in 0..n1 {
        for &(u, v) in g2.edges() {
            edges.push((id(a, u), id(a, v)));
        }
    }
    for b in 0..n2 {
        for &(u, v) in g1.edges() {
            edges.push((id(u, b), id(v, b)));
        }
    }
    let rows = recognize_factor(g1)
        .filter(|f| f.is_cycle())
        .map(Factor::len);
    let cols = recognize_factor(g2)
        .filter(|f| f.is_cycle())
        .map(Factor::len);
    let labels = (0..n1)
        .flat_map(|a| (0..n2).map(move |b| Label::grid(a as i64 + 1, b as i64 + 1, rows, cols)))
        .collect();
    Graph::new(n1 * n2, edges)?.with_labels(labels)
}

pub fn grid_product(rows: Factor, cols: Factor) -> Result<Graph> {
    cartesian_product(&rows.graph()?, &cols.graph()?)
}

/// Shape of a `rows x cols` grid product, addressing vertices by one-based,
/// modularly reduced `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridShape {
    pub rows: usize,
    pub cols: usize,
}

impl GridShape {
    pub fn new(rows: usize, cols: usize) -> Self {
        GridShape { rows, cols }
    }

    /// Vertex `v_{i,j}` with `v_{i+km, j+hn} = v_{i,j}`.
    pub fn v(&self, i: i64, j: i64) -> Vertex {
        (reduce_one_based(i, self.rows) - 1) * self.cols + reduce_one_based(j, self.cols) - 1
    }

    /// One-based `(i, j)` of a vertex id.
    pub fn position(&self, v: Vertex) -> (usize, usize) {
        (v / self.cols + 1, v % self.cols + 1)
    }

    pub fn order(&self) -> usize {
        self.rows * self.cols
    }
}

/// `C_m x P_n` plus the twisted edges `v_{i,1} v_{m+2-i,n}` for `i` in `1..=m`
/// (row index mod m). For `m = 6` the vertices carry the h/q names:
/// `v_{1i} = h_i, v_{6i} = q_i, v_{2i} = q_{i+n}` and primed counterparts on
/// rows 4, 5, 3.
pub fn bowtie(m: usize, n: usize) -> Result<Graph> {
    if m < 3 {
        return Err(invalid("bow-tie needs at least three rows"));
    }
    // With n = 2 the twisted edge at a self-paired row repeats a grid edge.
    if n < 3 {
        return Err(invalid("bow-tie needs at least three columns"));
    }
    let base = grid_product(Factor::Cycle(m), Factor::Path(n))?;
    let shape = GridShape::new(m, n);
    let twisted: Vec<_> = (1..=m as i64)
        .map(|i| (shape.v(i, 1), shape.v(m as i64 + 2 - i, n as i64)))
        .collect();
    let g = base.with_extra_edges(twisted)?;
    if m == 6 {
        let labels = (0..g.order())
            .map(|v| {
                let (i, j) = shape.position(v);
                Label::Bowtie(BowtieName::from_grid_position(i, j, n))
            })
            .collect();
        g.with_labels(labels)
    } else {
        Ok(g)
    }
}

/// The `m` twisted edges that turn `C_m x P_n` into the bow-tie graph.
pub fn bowtie_twisted_edges(m: usize, n: usize) -> Vec<(Vertex, Vertex)> {
    let shape = GridShape::new(m, n);
    (1..=m as i64)
        .map(|i| crate::graph::ordered(shape.v(i, 1), shape.v(m as i64 + 2 - i, n as i64)))
        .collect()
}

fn grid_vertices(g: &Graph) -> Result<Vec<(usize, usize)>> {
    let labels = g.labels().ok_or(Error::MissingGridLabels)?;
    labels
        .iter()
        .map(|l| l.grid_position().ok_or(Error::MissingGridLabels))
        .collect()
}

fn select(g: &Graph, pick: impl Fn(usize, usize) -> bool) -> Result<VertexSet> {
    let pos = grid_vertices(g)?;
    Ok(pos
        .iter()
        .enumerate()
        .filter(|(_, &(i, j))| pick(i, j))
        .map(|(v, _)| v)
        .collect())
}

/// Row `R_i`, with `R_{i+m} = R_i`.
pub fn row_set(g: &Graph, i: i64) -> Result<VertexSet> {
    let rows = grid_vertices(g)?.iter().map(|p| p.0).max().unwrap_or(0);
    if rows == 0 {
        return Err(Error::MissingGridLabels);
    }
    let i = reduce_one_based(i, rows);
    select(g, |r, _| r == i)
}

/// Column `T_j`, with `T_{j+n} = T_j`.
pub fn col_set(g: &Graph, j: i64) -> Result<VertexSet> {
    let cols = grid_vertices(g)?.iter().map(|p| p.1).max().unwrap_or(0);
    if cols == 0 {
        return Err(Error::MissingGridLabels);
    }
    let j = reduce_one_based(j, cols);
    select(g, |_, c| c == j)
}
