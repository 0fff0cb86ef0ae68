use std::fmt;

use serde::{Deserialize, Serialize};

/// Which of the four named vertex families of the six-row bow-tie graph a
/// vertex belongs to. `H`/`Q` live in the upper half, the primed kinds are
/// their mirror images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BowtieKind {
    H,
    Q,
    HPrime,
    QPrime,
}

impl BowtieKind {
    pub fn is_primed(self) -> bool {
        matches!(self, BowtieKind::HPrime | BowtieKind::QPrime)
    }

    pub fn mirror(self) -> Self {
        match self {
            BowtieKind::H => BowtieKind::HPrime,
            BowtieKind::Q => BowtieKind::QPrime,
            BowtieKind::HPrime => BowtieKind::H,
            BowtieKind::QPrime => BowtieKind::Q,
        }
    }

    /// Modulus of the index: `n` for the h-cycles, `2n` for the q-cycles.
    pub fn modulus(self, n: usize) -> usize {
        match self {
            BowtieKind::H | BowtieKind::HPrime => n,
            BowtieKind::Q | BowtieKind::QPrime => 2 * n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BowtieName {
    pub kind: BowtieKind,
    /// Canonical index in `1..=modulus`.
    pub index: usize,
    /// Column count of the underlying `C_6 x P_n`.
    pub n: usize,
}

impl BowtieName {
    /// Builds a name from an arbitrary integer index, reducing it so that
    /// `h_{i+n} = h_i` and `q_{j+2n} = q_j`.
    pub fn new(kind: BowtieKind, index: i64, n: usize) -> Self {
        BowtieName {
            kind,
            index: reduce_one_based(index, kind.modulus(n)),
            n,
        }
    }

    /// Position `(row, column)` in the `C_6 x P_n` grid, both one-based.
    pub fn grid_position(&self) -> (usize, usize) {
        let n = self.n;
        let (upper, lower) = match self.kind {
            BowtieKind::H => return (1, self.index),
            BowtieKind::HPrime => return (4, self.index),
            BowtieKind::Q => (6, 2),
            BowtieKind::QPrime => (5, 3),
        };
        if self.index <= n {
            (upper, self.index)
        } else {
            (lower, self.index - n)
        }
    }

    /// Inverse of [`BowtieName::grid_position`] for the six-row layout.
    pub fn from_grid_position(row: usize, col: usize, n: usize) -> Self {
        let c = col as i64;
        let nn = n as i64;
        match row {
            1 => BowtieName::new(BowtieKind::H, c, n),
            2 => BowtieName::new(BowtieKind::Q, c + nn, n),
            3 => BowtieName::new(BowtieKind::QPrime, c + nn, n),
            4 => BowtieName::new(BowtieKind::HPrime, c, n),
            5 => BowtieName::new(BowtieKind::QPrime, c, n),
            6 => BowtieName::new(BowtieKind::Q, c, n),
            _ => panic!("bow-tie row {row} outside 1..=6"),
        }
    }
}

impl fmt::Display for BowtieName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (stem, prime) = match self.kind {
            BowtieKind::H => ("h", ""),
            BowtieKind::Q => ("q", ""),
            BowtieKind::HPrime => ("h", "'"),
            BowtieKind::QPrime => ("q", "'"),
        };
        write!(f, "{stem}{prime}_{}", self.index)
    }
}

/// Structured vertex label. Grid and bow-tie indices are stored reduced, so
/// two labels compare equal exactly when they name the same vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Grid {
        i: usize,
        j: usize,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        m: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        n: Option<usize>,
    },
    Bowtie(BowtieName),
    Plain(String),
}

impl Label {
    /// Grid label `v_{i,j}` with optional row/column moduli; indices are
    /// reduced into `1..=m` / `1..=n` when the modulus is present.
    pub fn grid(i: i64, j: i64, m: Option<usize>, n: Option<usize>) -> Self {
        let i = m.map_or(i, |m| reduce_one_based(i, m) as i64);
        let j = n.map_or(j, |n| reduce_one_based(j, n) as i64);
        assert!(
            i >= 1 && j >= 1,
            "grid indices must be positive without a modulus"
        );
        Label::Grid {
            i: i as usize,
            j: j as usize,
            m,
            n,
        }
    }

    pub fn plain(text: impl Into<String>) -> Self {
        Label::Plain(text.into())
    }

    /// One-based grid position, if the label encodes one.
    pub fn grid_position(&self) -> Option<(usize, usize)> {
        match self {
            Label::Grid { i, j, .. } => Some((*i, *j)),
            Label::Bowtie(name) => Some(name.grid_position()),
            Label::Plain(_) => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Grid { i, j, .. } => write!(f, "v_{{{i},{j}}}"),
            Label::Bowtie(name) => name.fmt(f),
            Label::Plain(text) => f.write_str(text),
        }
    }
}

/// Reduces `index` into `1..=modulus`.
pub fn reduce_one_based(index: i64, modulus: usize) -> usize {
    assert!(modulus > 0, "modulus must be positive");
    ((index - 1).rem_euclid(modulus as i64) + 1) as usize
}
