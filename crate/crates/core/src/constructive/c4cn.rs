//! The obstruction showing that `C_4 x C_n` is not 3-extendable for odd `n`.

use crate::error::{Error, Result};
use crate::generators::{grid_product, Factor, GridShape};
use crate::graph::{Graph, VertexSet};
use crate::matching::Matching;

/// A 3-matching `m` of `C_4 x C_n` and a set `u` such that deleting
/// `V(m) ∪ u` leaves `|u| + 2` isolated vertices.
#[derive(Clone, Debug)]
pub struct C4CnWitness {
    pub graph: Graph,
    pub matching: Matching,
    pub u: VertexSet,
    pub isolated: usize,
}

pub fn c4cn_witness(n: usize) -> Result<C4CnWitness> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "n must be odd and at least 5, got {n}"
        )));
    }
    let g = grid_product(Factor::Cycle(4), Factor::Cycle(n))?;
    let s = GridShape::new(4, n);
    let matching = Matching::new(
        &g,
        [
            (s.v(1, 1), s.v(1, 2)),
            (s.v(2, 2), s.v(3, 2)),
            (s.v(3, 1), s.v(4, 1)),
        ],
    )?;
    let half = (n as i64 - 1) / 2;
    let mut u: Vec<usize> = Vec::with_capacity(2 * n - 4);
    for i in [1, 3] {
        u.extend((2..=half).map(|j| s.v(i, 2 * j)));
    }
    for i in [2, 4] {
        u.extend((1..=half).map(|j| s.v(i, 2 * j + 1)));
    }
    let u: VertexSet = u.into_iter().collect();
    let mut alive = vec![true; g.order()];
    for v in matching.vertices().union(&u).iter() {
        alive[v] = false;
    }
    let isolated = g
        .components_within(&alive)
        .iter()
        .filter(|c| c.len() == 1)
        .count();
    let remaining = alive.iter().filter(|&&a| a).count();
    if u.len() != 2 * n - 4 || isolated != 2 * n - 2 || remaining != isolated {
        return Err(Error::RefutationAlarm(format!(
            "witness for n={n}: |U|={}, {isolated} isolated of {remaining} remaining",
            u.len()
        )));
    }
    Ok(C4CnWitness {
        graph: g,
        matching,
        u,
        isolated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::odd_components_after;

    #[test]
    fn sizes() {
        let w = c4cn_witness(5).unwrap();
        assert_eq!((w.u.len(), w.isolated), (6, 8));
        let w = c4cn_witness(7).unwrap();
        assert_eq!((w.u.len(), w.isolated), (10, 12));
        let removed = w.matching.vertices().union(&w.u);
        assert_eq!(odd_components_after(&w.graph, &removed), 12);
    }

    #[test]
    fn rejects_even_or_small() {
        assert!(c4cn_witness(6).is_err());
        assert!(c4cn_witness(3).is_err());
    }
}
