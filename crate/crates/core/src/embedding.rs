//! Cellular embeddings given as signed rotation systems: face tracing,
//! Euler characteristic, orientability and Euler contributions.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::GridShape;
use crate::graph::{Graph, Vertex};
use crate::scalar::Scalar;
use crate::surfaces::{euler_characteristic, Surface};

/// A rotation at every vertex (incident edge ids in cyclic order) and a
/// sign on every edge.
#[derive(Clone, Debug)]
pub struct RotationSystem {
    graph: Graph,
    rotations: Vec<Vec<usize>>,
    signs: Vec<i8>,
    /// Position of edge `e` in the rotation at its lower and higher end.
    slot: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct RotationJson {
    rotations: BTreeMap<usize, Vec<usize>>,
    #[serde(default)]
    signs: BTreeMap<usize, i8>,
}

/// One step of a face walk: leave `from` along `edge`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dart {
    pub from: Vertex,
    pub edge: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceStructure {
    pub faces: Vec<Vec<Dart>>,
    pub face_sizes: Vec<usize>,
}

impl FaceStructure {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Number of angles face `f` has at `v`.
    pub fn angles_at(&self, f: usize, v: Vertex) -> usize {
        self.faces[f].iter().filter(|d| d.from == v).count()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ContributionReport<T> {
    pub phi: Vec<T>,
    pub control_point: Vertex,
    /// Triangular angles at each vertex, a face counted once per angle.
    pub triangles_at: Vec<usize>,
    pub euler_characteristic: i64,
}

impl RotationSystem {
    pub fn new(
        graph: &Graph,
        rotations: Vec<Vec<usize>>,
        signs: Vec<i8>,
    ) -> Result<RotationSystem> {
        let bad = |msg: String| Err(Error::MalformedRotation(msg));
        if rotations.len() != graph.order() {
            return bad(format!(
                "{} rotations for {} vertices",
                rotations.len(),
                graph.order()
            ));
        }
        if signs.len() != graph.size() {
            return bad(format!("{} signs for {} edges", signs.len(), graph.size()));
        }
        if let Some(e) = signs.iter().position(|&s| s != 1 && s != -1) {
            return bad(format!("edge {e} has sign {}", signs[e]));
        }
        let mut slot = vec![[usize::MAX; 2]; graph.size()];
        for (v, rot) in rotations.iter().enumerate() {
            if rot.len() != graph.degree(v) {
                return bad(format!(
                    "rotation at {v} lists {} edges, degree is {}",
                    rot.len(),
                    graph.degree(v)
                ));
            }
            for (i, &e) in rot.iter().enumerate() {
                if e >= graph.size() {
                    return bad(format!("edge id {e} out of range at {v}"));
                }
                let (a, b) = graph.edge(e);
                let end = if a == v {
                    0
                } else if b == v {
                    1
                } else {
                    return bad(format!("edge {e} is not incident to {v}"));
                };
                if slot[e][end] != usize::MAX {
                    return bad(format!("edge {e} listed twice at {v}"));
                }
                slot[e][end] = i;
            }
        }
        Ok(RotationSystem {
            graph: graph.clone(),
            rotations,
            signs,
            slot,
        })
    }

    /// All-plus rotation system in which every vertex lists its neighbors in
    /// the given cyclic order.
    pub fn from_neighbor_orders(graph: &Graph, orders: &[Vec<Vertex>]) -> Result<RotationSystem> {
        let mut rotations = Vec::with_capacity(orders.len());
        for (v, order) in orders.iter().enumerate() {
            let rot = order
                .iter()
                .map(|&w| {
                    graph
                        .edge_id(v, w)
                        .ok_or_else(|| Error::MalformedRotation(format!("{v}-{w} is not an edge")))
                })
                .collect::<Result<Vec<_>>>()?;
            rotations.push(rot);
        }
        RotationSystem::new(graph, rotations, vec![1; graph.size()])
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: Vertex) -> &[usize] {
        &self.rotations[v]
    }

    pub fn sign(&self, e: usize) -> i8 {
        self.signs[e]
    }

    pub fn to_json(&self) -> String {
        let j = RotationJson {
            rotations: self.rotations.iter().cloned().enumerate().collect(),
            signs: self.signs.iter().copied().enumerate().collect(),
        };
        serde_json::to_string_pretty(&j).expect("rotation serialization cannot fail")
    }

    /// Reads the [`RotationSystem::to_json`] format; edges missing from
    /// `signs` get sign +1.
    pub fn from_json(graph: &Graph, text: &str) -> Result<RotationSystem> {
        let j: RotationJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut rotations = vec![Vec::new(); graph.order()];
        for (v, rot) in j.rotations {
            *rotations
                .get_mut(v)
                .ok_or_else(|| Error::MalformedRotation(format!("vertex {v} out of range")))? = rot;
        }
        let mut signs = vec![1i8; graph.size()];
        for (e, s) in j.signs {
            *signs
                .get_mut(e)
                .ok_or_else(|| Error::MalformedRotation(format!("edge {e} out of range")))? = s;
        }
        RotationSystem::new(graph, rotations, signs)
    }

    /// Reverses the rotation at `v` and flips the sign of every edge at `v`.
    /// The result describes the same embedding.
    pub fn local_switch(&mut self, v: Vertex) {
        self.rotations[v].reverse();
        for &e in &self.rotations[v] {
            self.signs[e] = -self.signs[e];
        }
        for (i, &e) in self.rotations[v].iter().enumerate() {
            let end = if self.graph.edge(e).0 == v { 0 } else { 1 };
            self.slot[e][end] = i;
        }
    }

    fn other(&self, e: usize, v: Vertex) -> Vertex {
        let (a, b) = self.graph.edge(e);
        if a == v {
            b
        } else {
            a
        }
    }

    /// Edge after `e` in the rotation at `v`, forwards for `eps = 1`.
    fn turn(&self, v: Vertex, e: usize, eps: i8) -> usize {
        let rot = &self.rotations[v];
        let end = if self.graph.edge(e).0 == v { 0 } else { 1 };
        let i = self.slot[e][end];
        let d = rot.len();
        if eps > 0 {
            rot[(i + 1) % d]
        } else {
            rot[(i + d - 1) % d]
        }
    }

    /// State index of "at `v`, leaving along `e`, orientation `eps`".
    fn state(&self, v: Vertex, e: usize, eps: i8) -> usize {
        let end = if self.graph.edge(e).0 == v { 0 } else { 1 };
        4 * e + 2 * end + usize::from(eps < 0)
    }

    /// Faces as closed walks. Every face is the union of two orbits of the
    /// walk on (vertex, edge, orientation) states, one per direction; the
    /// reverse orbit is marked as seen and skipped.
    pub fn trace_faces(&self) -> FaceStructure {
        let m = self.graph.size();
        let mut seen = vec![false; 4 * m];
        let mut faces = Vec::new();
        for e0 in 0..m {
            let (a, b) = self.graph.edge(e0);
            for (v0, eps0) in [(a, 1i8), (a, -1), (b, 1), (b, -1)] {
                if seen[self.state(v0, e0, eps0)] {
                    continue;
                }
                let mut walk = Vec::new();
                let mut reverse = Vec::new();
                let (mut v, mut e, mut eps) = (v0, e0, eps0);
                loop {
                    let s = self.state(v, e, eps);
                    if seen[s] {
                        break;
                    }
                    seen[s] = true;
                    walk.push(Dart { from: v, edge: e });
                    let w = self.other(e, v);
                    let eps_w = eps * self.signs[e];
                    reverse.push(self.state(w, e, -eps_w));
                    let next = self.turn(w, e, eps_w);
                    v = w;
                    e = next;
                    eps = eps_w;
                }
                for r in reverse {
                    seen[r] = true;
                }
                faces.push(walk);
            }
        }
        let face_sizes = faces.iter().map(Vec::len).collect();
        FaceStructure { faces, face_sizes }
    }

    /// Whether re-signing along a spanning forest makes every edge positive.
    pub fn is_orientable(&self) -> bool {
        let n = self.graph.order();
        let mut flip = vec![0i8; n];
        for root in 0..n {
            if flip[root] != 0 {
                continue;
            }
            flip[root] = 1;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &e in &self.rotations[v] {
                    let w = self.other(e, v);
                    if flip[w] == 0 {
                        flip[w] = flip[v] * self.signs[e];
                        queue.push_back(w);
                    }
                }
            }
        }
        self.graph
            .edges()
            .iter()
            .enumerate()
            .all(|(e, &(u, v))| flip[u] * flip[v] * self.signs[e] == 1)
    }

    /// `|V| - |E| + |F|`.
    pub fn euler_characteristic(&self) -> i64 {
        let f = self.trace_faces().len() as i64;
        self.graph.order() as i64 - self.graph.size() as i64 + f
    }

    /// Whether this is a cellular embedding in `s`: same characteristic and
    /// same orientability.
    pub fn verify_embedding(&self, s: &Surface) -> Result<bool> {
        if !self.graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.euler_characteristic() == euler_characteristic(s)?
            && self.is_orientable() == s.orientable)
    }

    /// `Φ(v) = 1 - d(v)/2 + Σ 1/|F|` over the angles at `v`, evaluated in `T`.
    pub fn euler_contributions<T: Scalar>(&self) -> ContributionReport<T> {
        let faces = self.trace_faces();
        let n = self.graph.order();
        let mut phi: Vec<T> = (0..n)
            .map(|v| T::from_int(1) - T::ratio(self.graph.degree(v) as i64, 2))
            .collect();
        let mut triangles_at = vec![0usize; n];
        for walk in &faces.faces {
            let size = walk.len() as i64;
            for d in walk {
                phi[d.from] = phi[d.from].clone() + T::ratio(1, size);
                if size == 3 {
                    triangles_at[d.from] += 1;
                }
            }
        }
        let mut control_point = 0;
        for v in 1..n {
            if phi[v] > phi[control_point] {
                control_point = v;
            }
        }
        let chi = n as i64 - self.graph.size() as i64 + faces.len() as i64;
        ContributionReport {
            phi,
            control_point,
            triangles_at,
            euler_characteristic: chi,
        }
    }

    /// A vertex of largest Euler contribution and that contribution.
    pub fn control_point<T: Scalar>(&self) -> (Vertex, T) {
        let report = self.euler_contributions::<T>();
        let v = report.control_point;
        (v, report.phi[v].clone())
    }
}

/// The quadrangulation of the Klein bottle by `C_6 ⋈ P_n`: every vertex sees
/// (up, right, down, left) in the 6 x n grid, and the twisted edges across
/// the reversing boundary carry sign -1.
pub fn bowtie_rotation_n2(n: usize) -> Result<RotationSystem> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "n must be odd and at least 5, got {n}"
        )));
    }
    let g = crate::generators::bowtie(6, n)?;
    let s = GridShape::new(6, n);
    let (m, n) = (6i64, n as i64);
    let mut rotations = Vec::with_capacity(g.order());
    for v in g.vertices() {
        let (i, j) = s.position(v);
        let (i, j) = (i as i64, j as i64);
        let right = if j == n {
            s.v(m + 2 - i, 1)
        } else {
            s.v(i, j + 1)
        };
        let left = if j == 1 {
            s.v(m + 2 - i, n)
        } else {
            s.v(i, j - 1)
        };
        let around = [s.v(i - 1, j), right, s.v(i + 1, j), left];
        let rot = around
            .iter()
            .map(|&w| {
                g.edge_id(v, w)
                    .ok_or_else(|| Error::MalformedRotation(format!("{v}-{w} missing")))
            })
            .collect::<Result<Vec<_>>>()?;
        rotations.push(rot);
    }
    let twisted: Vec<(Vertex, Vertex)> = crate::generators::bowtie_twisted_edges(6, n as usize);
    let signs = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            if twisted.contains(&(u.min(v), u.max(v))) {
                -1
            } else {
                1
            }
        })
        .collect();
    RotationSystem::new(&g, rotations, signs)
}

/// `K_4` drawn in the plane with vertex 3 inside the triangle 0, 1, 2.
pub fn planar_k4() -> RotationSystem {
    let g = crate::generators::complete(4).expect("K_4");
    let orders = vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]];
    RotationSystem::from_neighbor_orders(&g, &orders).expect("valid K_4 rotations")
}

/// An all-plus rotation system of `K_5` with characteristic 0 in which some
/// face meets a vertex in two angles. The first such system in
/// lexicographic order of the per-vertex cyclic orders.
pub fn k5_torus() -> RotationSystem {
    let g = crate::generators::complete(5).expect("K_5");
    let choices: Vec<Vec<Vec<Vertex>>> = g
        .vertices()
        .map(|v| {
            let nb: Vec<Vertex> = g.adjacent(v).to_vec();
            let rest = &nb[1..];
            let mut out = Vec::new();
            for a in 0..3 {
                for b in 0..3 {
                    if a == b {
                        continue;
                    }
                    let c = 3 - a - b;
                    out.push(vec![nb[0], rest[a], rest[b], rest[c]]);
                }
            }
            out
        })
        .collect();
    let mut pick = [0usize; 5];
    loop {
        let orders: Vec<Vec<Vertex>> = (0..5).map(|v| choices[v][pick[v]].clone()).collect();
        let rs = RotationSystem::from_neighbor_orders(&g, &orders).expect("valid K_5 rotations");
        let faces = rs.trace_faces();
        if rs.euler_characteristic() == 0
            && (0..faces.len()).any(|f| g.vertices().any(|v| faces.angles_at(f, v) >= 2))
        {
            return rs;
        }
        let mut i = 4;
        loop {
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            assert!(
                i > 0,
                "no toroidal rotation system of K_5 with a repeated angle"
            );
            i -= 1;
        }
    }
}
