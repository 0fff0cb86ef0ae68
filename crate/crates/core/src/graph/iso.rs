//! Canonical forms for small graphs by exhaustive permutation search inside
//! the cells of a colour-refined partition.

use super::Graph;
use crate::error::{Error, Result};

/// Largest order whose upper-triangle adjacency fits in the 64-bit code.
pub const MAX_CANONICAL_ORDER: usize = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    pub order: usize,
    pub bits: u64,
}

/// Minimum upper-triangle adjacency word over all vertex orderings that list
/// the refined colour classes in their canonical order. Two graphs share a
/// code exactly when they are isomorphic.
pub fn canonical_code(g: &Graph) -> Result<CanonicalCode> {
    let n = g.order();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::TooLarge(format!(
            "canonical form limited to order {MAX_CANONICAL_ORDER}, got {n}"
        )));
    }
    let cells = refined_cells(g);
    let mut slots: Vec<usize> = Vec::with_capacity(n);
    let mut best = u64::MAX;
    let mut used = vec![false; n];
    search(g, &cells, 0, 0, &mut slots, &mut used, &mut best);
    Ok(CanonicalCode {
        order: n,
        bits: if n < 2 { 0 } else { best },
    })
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.order() != b.order() || a.size() != b.size() {
        return Ok(false);
    }
    Ok(canonical_code(a)? == canonical_code(b)?)
}

fn search(
    g: &Graph,
    cells: &[Vec<usize>],
    cell: usize,
    taken_in_cell: usize,
    slots: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut u64,
) {
    if cell == cells.len() {
        let code = encode(g, slots);
        if code < *best {
            *best = code;
        }
        return;
    }
    if taken_in_cell == cells[cell].len() {
        search(g, cells, cell + 1, 0, slots, used, best);
        return;
    }
    for &v in &cells[cell] {
        if used[v] {
            continue;
        }
        used[v] = true;
        slots.push(v);
        search(g, cells, cell, taken_in_cell + 1, slots, used, best);
        slots.pop();
        used[v] = false;
    }
}

fn encode(g: &Graph, slots: &[usize]) -> u64 {
    let mut code = 0u64;
    for a in 0..slots.len() {
        for b in a + 1..slots.len() {
            code = (code << 1) | g.has_edge(slots[a], slots[b]) as u64;
        }
    }
    code
}

/// Colour refinement starting from degrees; cells are ordered by their
/// (isomorphism-invariant) colour signature.
fn refined_cells(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut color: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = distinct(&color);
    loop {
        let signature: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = g.adjacent(v).iter().map(|&w| color[w]).collect();
                around.sort_unstable();
                (color[v], around)
            })
            .collect();
        let mut keys = signature.clone();
        keys.sort();
        keys.dedup();
        color = signature
            .iter()
            .map(|s| keys.binary_search(s).unwrap())
            .collect();
        let next = distinct(&color);
        if next == classes {
            break;
        }
        classes = next;
    }
    let mut cells = vec![Vec::new(); classes];
    for v in 0..n {
        cells[color[v]].push(v);
    }
    cells
}

fn distinct(color: &[usize]) -> usize {
    let mut c = color.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle, path, petersen};

    #[test]
    fn relabelled_graphs_share_a_code() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let perm = [3, 0, 4, 1, 2];
        let h = Graph::new(5, g.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap();
        assert_eq!(canonical_code(&g).unwrap(), canonical_code(&h).unwrap());
    }

    #[test]
    fn distinguishes_small_graphs() {
        assert!(is_isomorphic(&cycle(4).unwrap(), &complete_bipartite(2, 2).unwrap()).unwrap());
        assert!(!is_isomorphic(&cycle(6).unwrap(), &complete_bipartite(3, 3).unwrap()).unwrap());
        assert!(!is_isomorphic(&path(4).unwrap(), &complete_bipartite(1, 3).unwrap()).unwrap());
        // Two triangles versus a hexagon: same degrees, different graphs.
        let two_triangles =
            Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!is_isomorphic(&two_triangles, &cycle(6).unwrap()).unwrap());
        assert!(is_isomorphic(&complete(5).unwrap(), &complete(5).unwrap()).unwrap());
    }

    #[test]
    fn refuses_large_orders() {
        assert!(canonical_code(&petersen()).is_ok());
        assert!(canonical_code(&cycle(12).unwrap()).is_err());
    }
}
