//! Constructive 3-extension in the bow-tie graph `C_6 ⋈ P_n`, `n` odd.
//!
//! The graph splits into two mirror halves `J = H ∪ Q` (rows 1, 6, 2) and
//! `J' = H' ∪ Q'` (rows 4, 5, 3) joined by the rungs `q_j q'_j`. Inside `J`,
//! `H` is an n-cycle, `Q` a 2n-cycle, and `h_i` is joined to its two private
//! vertices `q_i` and `q_{i+n}`. All case tables below are stated for a
//! canonical position and transported by the dihedral symmetries
//! `x -> ±x + s` of `G[J]`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{bowtie, GridShape};
use crate::graph::{ordered, Graph, Vertex, VertexSet};
use crate::matching::{verify_matching, Matching, MatchingKind};

/// A vertex of `J` in local coordinates: `H(i)`, `i` mod n, or `Q(j)`, `j`
/// mod 2n. Index 0 stands for `h_n` and `q_{2n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Jv {
    H(usize),
    Q(usize),
}

type JEdge = (Jv, Jv);

fn norm(e: JEdge) -> JEdge {
    if e.0 <= e.1 {
        e
    } else {
        (e.1, e.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Hh,
    Hq,
    Qq,
}

fn kind(e: JEdge) -> Kind {
    match e {
        (Jv::H(_), Jv::H(_)) => Kind::Hh,
        (Jv::Q(_), Jv::Q(_)) => Kind::Qq,
        _ => Kind::Hq,
    }
}

/// The map `x -> eps * x + s` on H and Q indices.
#[derive(Clone, Copy, Debug)]
struct Dihedral {
    eps: i64,
    s: i64,
}

impl Dihedral {
    fn all(n: usize) -> impl Iterator<Item = Dihedral> {
        [1, -1]
            .into_iter()
            .flat_map(move |eps| (0..2 * n as i64).map(move |s| Dihedral { eps, s }))
    }

    fn apply(&self, n: usize, x: Jv) -> Jv {
        match x {
            Jv::H(i) => Jv::H((self.eps * i as i64 + self.s).rem_euclid(n as i64) as usize),
            Jv::Q(j) => Jv::Q((self.eps * j as i64 + self.s).rem_euclid(2 * n as i64) as usize),
        }
    }

    fn invert(&self, n: usize, y: Jv) -> Jv {
        match y {
            Jv::H(i) => Jv::H((self.eps * (i as i64 - self.s)).rem_euclid(n as i64) as usize),
            Jv::Q(j) => Jv::Q((self.eps * (j as i64 - self.s)).rem_euclid(2 * n as i64) as usize),
        }
    }

    fn edge(&self, n: usize, e: JEdge) -> JEdge {
        norm((self.apply(n, e.0), self.apply(n, e.1)))
    }

    fn edge_back(&self, n: usize, e: JEdge) -> JEdge {
        norm((self.invert(n, e.0), self.invert(n, e.1)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    Faithful,
    Unfaithful,
    CoFaithful,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeClassification {
    pub faithful: usize,
    pub unfaithful: usize,
    pub co_faithful: usize,
    pub tags: Vec<((Vertex, Vertex), EdgeClass)>,
}

impl EdgeClassification {
    pub fn xyz(&self) -> (usize, usize, usize) {
        (self.faithful, self.unfaithful, self.co_faithful)
    }
}

/// Perfect matching of `C_6 ⋈ P_n` built by the construction branch named
/// by `case_tag`.
#[derive(Clone, Debug, Serialize)]
pub struct BowtieMatchingPlan {
    pub case_tag: String,
    pub j_matching: Vec<(Vertex, Vertex)>,
    pub j_prime_matching: Vec<(Vertex, Vertex)>,
    pub rung_edges: Vec<(Vertex, Vertex)>,
    pub matching: Matching,
}

/// What the Q side of a completion must look like.
#[derive(Clone, Copy, Debug)]
enum QRule<'a> {
    /// Leave Q alone.
    Ignore,
    /// Every remaining Q path is paired off.
    AllEven,
    /// Exactly one Q vertex stays uncovered, and it is not in `avoid`.
    OneOdd { avoid: &'a [Jv] },
}

/// `C_6 ⋈ P_n` together with its h/q coordinates.
#[derive(Clone, Debug)]
pub struct Bowtie {
    n: usize,
    graph: Graph,
    shape: GridShape,
}

impl Bowtie {
    pub fn new(n: usize) -> Result<Bowtie> {
        if n < 5 || n.is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "bow-tie construction needs an odd n >= 5, got {n}"
            )));
        }
        Ok(Bowtie {
            n,
            graph: bowtie(6, n)?,
            shape: GridShape::new(6, n),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn h(&self, i: i64) -> Vertex {
        self.shape.v(1, i)
    }

    /// `q_j`: row 6 for `j` in `1..=n`, row 2 for `j` in `n+1..=2n`.
    pub fn q(&self, j: i64) -> Vertex {
        let n = self.n as i64;
        let j = crate::graph::reduce_one_based(j, 2 * self.n) as i64;
        if j <= n {
            self.shape.v(6, j)
        } else {
            self.shape.v(2, j - n)
        }
    }

    pub fn h_prime(&self, i: i64) -> Vertex {
        self.sigma(self.h(i))
    }

    pub fn q_prime(&self, j: i64) -> Vertex {
        self.sigma(self.q(j))
    }

    /// The mirror `h_i <-> h'_i`, `q_j <-> q'_j` (rows `r -> 5 - r` mod 6).
    pub fn sigma(&self, v: Vertex) -> Vertex {
        let (r, c) = self.shape.position(v);
        let row = [0, 4, 3, 2, 1, 6, 5][r];
        self.shape.v(row as i64, c as i64)
    }

    pub fn sigma_edge(&self, (u, v): (Vertex, Vertex)) -> (Vertex, Vertex) {
        ordered(self.sigma(u), self.sigma(v))
    }

    fn in_j(&self, v: Vertex) -> bool {
        matches!(self.shape.position(v).0, 1 | 2 | 6)
    }

    pub fn j_set(&self) -> VertexSet {
        self.graph.vertices().filter(|&v| self.in_j(v)).collect()
    }

    pub fn j_prime_set(&self) -> VertexSet {
        self.graph.vertices().filter(|&v| !self.in_j(v)).collect()
    }

    fn host(&self, x: Jv) -> Vertex {
        match x {
            Jv::H(i) => self.h(i as i64),
            Jv::Q(j) => self.q(j as i64),
        }
    }

    fn host_edge(&self, e: JEdge) -> (Vertex, Vertex) {
        ordered(self.host(e.0), self.host(e.1))
    }

    fn local(&self, v: Vertex) -> Option<Jv> {
        let (r, c) = self.shape.position(v);
        let n = self.n;
        match r {
            1 => Some(Jv::H(c % n)),
            6 => Some(Jv::Q(c % (2 * n))),
            2 => Some(Jv::Q((c + n) % (2 * n))),
            _ => None,
        }
    }

    fn local_edge(&self, (u, v): (Vertex, Vertex)) -> Result<JEdge> {
        match (self.local(u), self.local(v)) {
            (Some(a), Some(b)) if self.graph.has_edge(u, v) => Ok(norm((a, b))),
            _ => Err(Error::Precondition(format!(
                "{u}-{v} is not an edge of G[J]"
            ))),
        }
    }

    /// Low spoke partner `q_i`, `i` in `1..=n`, of `h_i`.
    fn spoke_low(&self, i: usize) -> Jv {
        Jv::Q(if i == 0 { self.n } else { i })
    }

    fn spoke_high(&self, i: usize) -> Jv {
        Jv::Q(if i == 0 { 0 } else { i + self.n })
    }

    fn q_index(&self, j: i64) -> Jv {
        Jv::Q(j.rem_euclid(2 * self.n as i64) as usize)
    }

    fn h_index(&self, i: i64) -> Jv {
        Jv::H(i.rem_euclid(self.n as i64) as usize)
    }

    pub fn classify_bowtie_edges(&self, m0: &Matching) -> Result<EdgeClassification> {
        if !verify_matching(&self.graph, m0, MatchingKind::Partial) {
            return Err(Error::InvalidMatching(
                "not a matching of the bow-tie graph".into(),
            ));
        }
        let mut out = EdgeClassification {
            faithful: 0,
            unfaithful: 0,
            co_faithful: 0,
            tags: Vec::new(),
        };
        for &(u, v) in m0.edges() {
            let class = match (self.in_j(u), self.in_j(v)) {
                (true, true) => {
                    out.faithful += 1;
                    EdgeClass::Faithful
                }
                (false, false) => {
                    out.co_faithful += 1;
                    EdgeClass::CoFaithful
                }
                _ => {
                    out.unfaithful += 1;
                    EdgeClass::Unfaithful
                }
            };
            out.tags.push(((u, v), class));
        }
        Ok(out)
    }

    // ---- completion along the two cycles ----

    /// Maximal runs of alive positions on a cycle of length `len`, each as
    /// positions in cyclic order. `None` when nothing is removed.
    fn arcs(alive: &[bool]) -> Option<Vec<Vec<usize>>> {
        let len = alive.len();
        let start = (0..len).find(|&i| !alive[i])?;
        let mut out = Vec::new();
        let mut run = Vec::new();
        for step in 1..=len {
            let i = (start + step) % len;
            if alive[i] {
                run.push(i);
            } else if !run.is_empty() {
                out.push(std::mem::take(&mut run));
            }
        }
        Some(out)
    }

    /// Orients an arc so that it starts at the end with the lower host id.
    fn orient(&self, arc: &mut [usize], to_jv: impl Fn(usize) -> Jv) {
        if arc.len() > 1 && self.host(to_jv(arc[arc.len() - 1])) < self.host(to_jv(arc[0])) {
            arc.reverse();
        }
    }

    fn pair_run(run: &[Jv], out: &mut Vec<JEdge>) {
        for pair in run.chunks(2) {
            out.push(norm((pair[0], pair[1])));
        }
    }

    /// Extends `fixed` by pairing consecutive vertices along the H and Q
    /// paths left after deleting `V(fixed)` and `blocked`. Every H path must
    /// be even; Q follows `rule`. Returns the edges and the uncovered Q
    /// vertex, if any.
    fn complete(
        &self,
        fixed: &[JEdge],
        blocked: &[Jv],
        rule: QRule<'_>,
    ) -> Option<(Vec<JEdge>, Option<Jv>)> {
        let n = self.n;
        let mut used: BTreeSet<Jv> = blocked.iter().copied().collect();
        for &(a, b) in fixed {
            if !used.insert(a) || !used.insert(b) {
                return None;
            }
        }
        let mut out: Vec<JEdge> = fixed.iter().map(|&e| norm(e)).collect();
        let h_alive: Vec<bool> = (0..n).map(|i| !used.contains(&Jv::H(i))).collect();
        for mut arc in Self::arcs(&h_alive)? {
            if arc.len() % 2 == 1 {
                return None;
            }
            self.orient(&mut arc, Jv::H);
            Self::pair_run(&arc.iter().map(|&i| Jv::H(i)).collect::<Vec<_>>(), &mut out);
        }
        let q_alive: Vec<bool> = (0..2 * n).map(|j| !used.contains(&Jv::Q(j))).collect();
        let mut uncovered = None;
        match rule {
            QRule::Ignore => {}
            QRule::AllEven | QRule::OneOdd { .. } => {
                let arcs = Self::arcs(&q_alive)?;
                let odd = arcs.iter().filter(|a| a.len() % 2 == 1).count();
                let allowed = if matches!(rule, QRule::AllEven) { 0 } else { 1 };
                if odd != allowed {
                    return None;
                }
                for mut arc in arcs {
                    self.orient(&mut arc, Jv::Q);
                    let run: Vec<Jv> = arc.iter().map(|&j| Jv::Q(j)).collect();
                    if run.len().is_multiple_of(2) {
                        Self::pair_run(&run, &mut out);
                        continue;
                    }
                    let QRule::OneOdd { avoid } = rule else {
                        unreachable!()
                    };
                    let p = (0..run.len())
                        .step_by(2)
                        .find(|&p| !avoid.contains(&run[p]))?;
                    Self::pair_run(&run[..p], &mut out);
                    Self::pair_run(&run[p + 1..], &mut out);
                    uncovered = Some(run[p]);
                }
            }
        }
        out.sort_unstable();
        Some((out, uncovered))
    }

    // ---- covering H ----

    /// Extends a matching of `G[J]` (at most three edges) to one covering H.
    fn cover_h(&self, m0: &[JEdge]) -> Result<Vec<JEdge>> {
        let n = self.n;
        let used: BTreeSet<Jv> = m0.iter().flat_map(|&(a, b)| [a, b]).collect();
        let free = |x: Jv| !used.contains(&x);
        let stuck: Vec<usize> = (0..n)
            .filter(|&i| free(Jv::H(i)) && !free(self.spoke_low(i)) && !free(self.spoke_high(i)))
            .collect();
        if stuck.is_empty() {
            let mut out: Vec<JEdge> = m0.iter().map(|&e| norm(e)).collect();
            for i in (0..n).filter(|&i| free(Jv::H(i))) {
                let q = if free(self.spoke_low(i)) {
                    self.spoke_low(i)
                } else {
                    self.spoke_high(i)
                };
                out.push(norm((Jv::H(i), q)));
            }
            out.sort_unstable();
            return Ok(out);
        }
        if let Some(found) = self.cover_h_by_frame(m0, stuck[0]) {
            return Ok(found);
        }
        log::debug!("cover_h: no frame seed applies to {m0:?}; searching");
        self.cover_h_search(m0).ok_or_else(|| {
            Error::RefutationAlarm(format!("no matching of G[J] covers H and extends {m0:?}"))
        })
    }

    /// The case seeds for an uncovered `h_1` whose private vertices are both
    /// taken, with `q_0 q_1` in the matching.
    fn cover_h_by_frame(&self, m0: &[JEdge], stuck: usize) -> Option<Vec<JEdge>> {
        let n = self.n;
        for d in Dihedral::all(n) {
            if d.apply(n, Jv::H(stuck)) != Jv::H(1) {
                continue;
            }
            let image: Vec<JEdge> = m0.iter().map(|&e| d.edge(n, e)).collect();
            let Some(pos0) = image.iter().position(|&e| e == norm((Jv::Q(0), Jv::Q(1)))) else {
                continue;
            };
            let e2 = [
                norm((Jv::Q(n), Jv::Q(n + 1))),
                norm((Jv::Q(n + 1), Jv::Q(n + 2))),
            ];
            let Some(pos2) = image.iter().position(|e| e2.contains(e)) else {
                continue;
            };
            let e3 = image
                .iter()
                .enumerate()
                .find(|&(i, _)| i != pos0 && i != pos2)
                .map(|(_, &e)| e);
            let e3_h: Vec<usize> = e3
                .map(|(a, b)| {
                    [a, b]
                        .into_iter()
                        .filter_map(|x| match x {
                            Jv::H(i) => Some(i),
                            Jv::Q(_) => None,
                        })
                        .collect()
                })
                .unwrap_or_default();
            let seed = match e3_h.len() {
                0 => {
                    let q2_in_e3 = e3.is_some_and(|(a, b)| a == Jv::Q(2) || b == Jv::Q(2));
                    if q2_in_e3 {
                        vec![(Jv::H(n - 1), Jv::Q(n - 1))]
                    } else {
                        vec![(Jv::H(2), Jv::Q(2))]
                    }
                }
                1 => vec![],
                _ => {
                    let (a, b) = (e3_h[0], e3_h[1]);
                    let i = if (a + 1) % n == b { a } else { b };
                    if i == n - 1 {
                        vec![(Jv::H(3), Jv::Q(3))]
                    } else if i % 2 == 0 {
                        vec![(Jv::H(n - 1), Jv::Q(n - 1))]
                    } else {
                        vec![(Jv::H(2), Jv::Q(2))]
                    }
                }
            };
            let mut fixed = image.clone();
            fixed.extend(seed.iter().map(|&e| norm(e)));
            if let Some((edges, _)) = self.complete(&fixed, &[], QRule::Ignore) {
                let mut back: Vec<JEdge> = edges.iter().map(|&e| d.edge_back(n, e)).collect();
                back.sort_unstable();
                return Some(back);
            }
        }
        None
    }

    /// Exact search along the H cycle: every uncovered `h_i` takes a free
    /// private spoke or pairs with an uncovered neighbour on the cycle.
    fn cover_h_search(&self, m0: &[JEdge]) -> Option<Vec<JEdge>> {
        let n = self.n;
        let used: BTreeSet<Jv> = m0.iter().flat_map(|&(a, b)| [a, b]).collect();
        let taken: Vec<bool> = (0..n).map(|i| used.contains(&Jv::H(i))).collect();
        let spoke = |i: usize| -> Option<Jv> {
            [self.spoke_low(i), self.spoke_high(i)]
                .into_iter()
                .find(|q| !used.contains(q))
        };
        fn rec(
            i: usize,
            n: usize,
            taken: &mut [bool],
            spoke: &dyn Fn(usize) -> Option<Jv>,
            out: &mut Vec<JEdge>,
        ) -> bool {
            if i == n {
                return true;
            }
            if taken[i] {
                return rec(i + 1, n, taken, spoke, out);
            }
            if let Some(q) = spoke(i) {
                taken[i] = true;
                out.push(norm((Jv::H(i), q)));
                if rec(i + 1, n, taken, spoke, out) {
                    return true;
                }
                out.pop();
                taken[i] = false;
            }
            let j = (i + 1) % n;
            if !taken[j] {
                taken[i] = true;
                taken[j] = true;
                out.push(norm((Jv::H(i), Jv::H(j))));
                if rec(i + 1, n, taken, spoke, out) {
                    return true;
                }
                out.pop();
                taken[i] = false;
                taken[j] = false;
            }
            false
        }
        // Try with and without the wrap-around edge h_{n-1} h_0 first.
        for wrap in [false, true] {
            let mut t = taken.clone();
            let mut out: Vec<JEdge> = m0.iter().map(|&e| norm(e)).collect();
            if wrap {
                if t[0] || t[n - 1] {
                    continue;
                }
                t[0] = true;
                t[n - 1] = true;
                out.push(norm((Jv::H(n - 1), Jv::H(0))));
            }
            if rec(0, n, &mut t, &spoke, &mut out) {
                out.sort_unstable();
                return Some(out);
            }
        }
        None
    }

    // ---- faithful edges, H covered, unfaithful vertices missed ----

    /// Matching of `G[J]` covering H and the faithful edges while missing
    /// every unfaithful vertex. Also returns the branch tag.
    fn lemma2_local(
        &self,
        faithful: &[JEdge],
        unfaithful: &[Jv],
    ) -> Result<(Vec<JEdge>, &'static str)> {
        let n = self.n;
        let q_of = |x: Jv| match x {
            Jv::Q(j) => j as i64,
            Jv::H(_) => unreachable!("unfaithful vertices lie in Q"),
        };
        let used: BTreeSet<Jv> = faithful
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain(unfaithful.iter().copied())
            .collect();
        let strip = |mut edges: Vec<JEdge>, aux: &[JEdge]| {
            edges.retain(|e| !aux.contains(e));
            edges
        };
        match faithful.len() {
            3 => Ok((self.cover_h(faithful)?, "f3")),
            2 => {
                let j = q_of(unfaithful[0]);
                for (side, tag) in [(-1, "f2/left-aux"), (1, "f2/right-aux")] {
                    let nb = self.q_index(j + side);
                    if !used.contains(&nb) {
                        let aux = norm((nb, unfaithful[0]));
                        let mut m = faithful.to_vec();
                        m.push(aux);
                        return Ok((strip(self.cover_h(&m)?, &[aux]), tag));
                    }
                }
                let hj = self.h_index(j);
                let extra = norm((hj, self.q_index(j + n as i64)));
                if used.contains(&hj) || used.contains(&extra.1) || used.contains(&extra.0) {
                    return Err(Error::RefutationAlarm(format!(
                        "spoke h_j q_(j+n) unavailable for {faithful:?}"
                    )));
                }
                let mut m = faithful.to_vec();
                m.push(extra);
                Ok((self.cover_h(&m)?, "f2/spoke-aux"))
            }
            1 => {
                let e1 = faithful[0];
                let (j, k) = (q_of(unfaithful[0]), q_of(unfaithful[1]));
                let in_e1 = |x: Jv| e1.0 == x || e1.1 == x;
                let diff = (j - k).rem_euclid(2 * n as i64);
                if diff != 1 && diff != 2 * n as i64 - 1 {
                    for du in [-1, 1] {
                        for dw in [-1, 1] {
                            let u = self.q_index(j + du);
                            let w = self.q_index(k + dw);
                            if u == w || in_e1(u) || in_e1(w) {
                                continue;
                            }
                            let aux = [norm((u, unfaithful[0])), norm((w, unfaithful[1]))];
                            let m = vec![e1, aux[0], aux[1]];
                            return Ok((strip(self.cover_h(&m)?, &aux), "f1/apart"));
                        }
                    }
                    Err(Error::RefutationAlarm(format!(
                        "no auxiliary neighbours for {faithful:?} {unfaithful:?}"
                    )))
                } else {
                    let aux = norm((unfaithful[0], unfaithful[1]));
                    Ok((strip(self.cover_h(&[e1, aux])?, &[aux]), "f1/adjacent"))
                }
            }
            0 => {
                let j = (1..=2 * n as i64)
                    .map(|j| self.q_index(j))
                    .find(|q| !unfaithful.contains(q))
                    .expect("three unfaithful vertices cannot fill Q");
                let Jv::Q(jj) = j else { unreachable!() };
                let fixed = [norm((self.h_index(jj as i64), j))];
                let (edges, _) = self
                    .complete(&fixed, unfaithful, QRule::Ignore)
                    .ok_or_else(|| {
                        Error::RefutationAlarm("path H - h_j has no perfect matching".into())
                    })?;
                Ok((edges, "f0"))
            }
            f => Err(Error::Precondition(format!(
                "{f} faithful edges in a 3-matching"
            ))),
        }
    }

    // ---- perfect matchings of G[J] - V(e) - q_k ----

    fn lemma3_local(&self, e: JEdge, qk: Jv) -> Result<(Vec<JEdge>, &'static str)> {
        let n = self.n;
        let e = norm(e);
        let canon_hh = norm((Jv::H(0), Jv::H(1)));
        let canon_hq = norm((Jv::H(1), Jv::Q(1)));
        let canon_qq = norm((Jv::Q(0), Jv::Q(1)));
        for d in Dihedral::all(n) {
            let img = d.edge(n, e);
            let Jv::Q(k) = d.apply(n, qk) else {
                return Err(Error::Precondition("q_k must lie in Q".into()));
            };
            let odd = k % 2 == 1;
            let (seed, tag) = if img == canon_hh {
                (
                    if odd {
                        vec![(Jv::H(2), Jv::Q(2))]
                    } else {
                        vec![(Jv::H(2), Jv::Q(n + 2))]
                    },
                    "case1",
                )
            } else if img == canon_hq {
                (
                    if odd {
                        vec![(Jv::H(0), Jv::Q(0)), (Jv::H(2), Jv::Q(2))]
                    } else {
                        vec![]
                    },
                    "case2",
                )
            } else if img == canon_qq {
                (
                    if odd {
                        vec![(Jv::H(2), Jv::Q(2))]
                    } else {
                        vec![(Jv::H(n - 1), Jv::Q(2 * n - 1))]
                    },
                    "case3",
                )
            } else {
                continue;
            };
            let seed_back: Vec<JEdge> = seed.iter().map(|&s| d.edge_back(n, norm(s))).collect();
            if let Some((edges, _)) = self.complete(&seed_back, &[e.0, e.1, qk], QRule::AllEven) {
                return Ok((edges, tag));
            }
        }
        Err(Error::RefutationAlarm(format!(
            "no perfect matching of G[J] - V({e:?}) - {qk:?}"
        )))
    }

    // ---- near-perfect matchings of G[J] ----

    fn lemma4_local(&self, e0: JEdge, m2: [JEdge; 2]) -> Result<(Vec<JEdge>, Jv, String)> {
        let n = self.n;
        let avoid = [e0.0, e0.1];
        let rule = QRule::OneOdd { avoid: &avoid };
        let finish = |seeds: Vec<JEdge>, tag: String| -> Option<(Vec<JEdge>, Jv, String)> {
            let mut fixed = m2.to_vec();
            fixed.extend(seeds.into_iter().filter(|s| !m2.contains(s)));
            let (edges, un) = self.complete(&fixed, &[], rule)?;
            Some((edges, un?, tag))
        };
        let (a, b) = (norm(m2[0]), norm(m2[1]));
        let kinds = (kind(a), kind(b));
        let pick = |want: Kind| if kind(a) == want { (a, b) } else { (b, a) };
        let try_frames = |canon: &dyn Fn(Dihedral) -> Option<(Vec<JEdge>, String)>| {
            for d in Dihedral::all(n) {
                if let Some((seed, tag)) = canon(d) {
                    let back: Vec<JEdge> = seed.iter().map(|&s| d.edge_back(n, norm(s))).collect();
                    if let Some(done) = finish(back, tag) {
                        return Some(done);
                    }
                }
            }
            None
        };
        let result = match kinds {
            (Kind::Hh, Kind::Hh) => {
                let used: BTreeSet<Jv> = [a.0, a.1, b.0, b.1].into_iter().collect();
                let alive: Vec<bool> = (0..n).map(|i| !used.contains(&Jv::H(i))).collect();
                let arcs = Self::arcs(&alive).unwrap_or_default();
                let mut out = None;
                for mut arc in arcs.into_iter().filter(|a| a.len() % 2 == 1) {
                    self.orient(&mut arc, Jv::H);
                    let i = arc[0];
                    out = finish(vec![norm((Jv::H(i), self.spoke_low(i)))], "case1".into());
                    if out.is_some() {
                        break;
                    }
                }
                out
            }
            (Kind::Hh, Kind::Hq) | (Kind::Hq, Kind::Hh) => {
                let (e1, e2) = pick(Kind::Hh);
                try_frames(&|d: Dihedral| {
                    if d.edge(n, e1) != norm((Jv::H(0), Jv::H(1))) {
                        return None;
                    }
                    let (_, Jv::Q(qb)) = d.edge(n, e2) else {
                        return None;
                    };
                    let seeds: Vec<JEdge> = if (2..n).contains(&qb) {
                        (2..n).map(|j| norm((Jv::H(j), Jv::Q(j)))).collect()
                    } else if (n + 2..2 * n).contains(&qb) {
                        (n + 2..2 * n)
                            .map(|j| norm((Jv::H(j - n), Jv::Q(j))))
                            .collect()
                    } else {
                        return None;
                    };
                    let e2n = d.edge(n, e2);
                    Some((
                        seeds.into_iter().filter(|&s| s != e2n).collect(),
                        "case2".into(),
                    ))
                })
            }
            (Kind::Hh, Kind::Qq) | (Kind::Qq, Kind::Hh) => {
                let (e1, e2) = pick(Kind::Hh);
                let primary = try_frames(&|d: Dihedral| {
                    let (i, e0n) = self.case3_frame(d, e1, e2, e0)?;
                    let q2_in_e0 = e0n.0 == Jv::Q(2) || e0n.1 == Jv::Q(2);
                    let seed = if q2_in_e0 {
                        (Jv::H(3), Jv::Q(n + 3))
                    } else {
                        (Jv::H(i + 2), Jv::Q(i + 2))
                    };
                    Some((vec![seed], "case3".into()))
                });
                primary.or_else(|| {
                    try_frames(&|d: Dihedral| {
                        let (i, _) = self.case3_frame(d, e1, e2, e0)?;
                        Some((vec![(Jv::H(i + 2), Jv::Q(i + 2))], "case3/alt-seed".into()))
                    })
                })
            }
            (Kind::Hq, Kind::Hq) => try_frames(&|d: Dihedral| {
                let (x, y) = (d.edge(n, a), d.edge(n, b));
                let canon = norm((Jv::H(1), Jv::Q(1)));
                let other = if x == canon {
                    y
                } else if y == canon {
                    x
                } else {
                    return None;
                };
                let (_, Jv::Q(qd)) = other else { return None };
                let seeds: Vec<JEdge> = if (2..=n).contains(&qd) {
                    (2..=n).map(|j| norm((Jv::H(j % n), Jv::Q(j)))).collect()
                } else if qd == 0 || (n + 2..2 * n).contains(&qd) {
                    (n + 2..=2 * n)
                        .map(|j| norm((Jv::H(j - n), Jv::Q(j % (2 * n)))))
                        .collect()
                } else {
                    return None;
                };
                Some((
                    seeds.into_iter().filter(|&s| s != other).collect(),
                    "case4".into(),
                ))
            }),
            (Kind::Hq, Kind::Qq) | (Kind::Qq, Kind::Hq) => {
                let (e1, e2) = pick(Kind::Hq);
                try_frames(&|d: Dihedral| {
                    if d.edge(n, e2) != norm((Jv::Q(0), Jv::Q(1))) {
                        return None;
                    }
                    let (_, Jv::Q(j)) = d.edge(n, e1) else {
                        return None;
                    };
                    if !(1..=n).contains(&j) {
                        return None;
                    }
                    let e0n = d.edge(n, e0);
                    let q2_in_e0 = e0n.0 == Jv::Q(2) || e0n.1 == Jv::Q(2);
                    let seeds = if q2_in_e0 && j == 3 {
                        vec![norm((Jv::H(2), Jv::Q(2))), norm((Jv::H(4), Jv::Q(4)))]
                    } else {
                        vec![]
                    };
                    Some((seeds, "case5".into()))
                })
            }
            (Kind::Qq, Kind::Qq) => {
                let used: BTreeSet<Jv> = [a.0, a.1, b.0, b.1].into_iter().collect();
                let alive: Vec<bool> = (0..2 * n).map(|j| !used.contains(&Jv::Q(j))).collect();
                let mut arcs = Self::arcs(&alive).unwrap_or_default();
                for arc in arcs.iter_mut() {
                    self.orient(arc, Jv::Q);
                }
                let target = if let Some(iso) = arcs.iter().find(|a| a.len() == 1) {
                    iso[0]
                } else {
                    let best = arcs
                        .iter()
                        .max_by(|x, y| {
                            x.len()
                                .cmp(&y.len())
                                .then_with(|| self.host(Jv::Q(y[0])).cmp(&self.host(Jv::Q(x[0]))))
                        })
                        .expect("Q minus four vertices is nonempty");
                    best[0]
                };
                finish(
                    vec![norm((self.h_index(target as i64), Jv::Q(target)))],
                    "case6".into(),
                )
            }
        };
        result.ok_or_else(|| {
            Error::RefutationAlarm(format!(
                "no near-perfect matching of G[J] for e0={e0:?}, m2={m2:?}"
            ))
        })
    }

    /// Case-3 frame: `d` sends the Q edge to `q_0 q_1` and the H edge to
    /// `h_i h_{i+1}` with `i <= (n-1)/2`.
    fn case3_frame(&self, d: Dihedral, hh: JEdge, qq: JEdge, e0: JEdge) -> Option<(usize, JEdge)> {
        let n = self.n;
        if d.edge(n, qq) != norm((Jv::Q(0), Jv::Q(1))) {
            return None;
        }
        let (Jv::H(x), Jv::H(y)) = d.edge(n, hh) else {
            return None;
        };
        let i = if (x + 1) % n == y { x } else { y };
        if i > (n - 1) / 2 {
            return None;
        }
        Some((i, d.edge(n, e0)))
    }

    // ---- public entry points ----

    fn to_matching(&self, edges: &[JEdge]) -> Result<Matching> {
        Matching::new(&self.graph, edges.iter().map(|&e| self.host_edge(e)))
    }

    /// Matching of `G[J]` covering H and the faithful edges of `m0` and
    /// missing its unfaithful vertices. `m0` must have no co-faithful edges.
    pub fn lemma2_matching(&self, m0: &Matching) -> Result<Matching> {
        let c = self.classify_bowtie_edges(m0)?;
        if c.co_faithful > 0 {
            return Err(Error::Precondition("matching has co-faithful edges".into()));
        }
        let (faithful, unfaithful) = self.split_faithful(m0)?;
        let (edges, _) = self.lemma2_local(&faithful, &unfaithful)?;
        self.to_matching(&edges)
    }

    fn split_faithful(&self, m0: &Matching) -> Result<(Vec<JEdge>, Vec<Jv>)> {
        let mut faithful = Vec::new();
        let mut unfaithful = Vec::new();
        for &(u, v) in m0.edges() {
            match (self.in_j(u), self.in_j(v)) {
                (true, true) => faithful.push(self.local_edge((u, v))?),
                (true, false) => unfaithful.push(self.local(u).expect("J vertex")),
                (false, true) => unfaithful.push(self.local(v).expect("J vertex")),
                (false, false) => {}
            }
        }
        Ok((faithful, unfaithful))
    }

    /// Perfect matching of `G[J] - V(e) - q_k`.
    pub fn lemma3_pm(&self, e: (Vertex, Vertex), qk: Vertex) -> Result<Matching> {
        let e = self.local_edge(e)?;
        let Some(q @ Jv::Q(_)) = self.local(qk) else {
            return Err(Error::Precondition("q_k must be a vertex of Q".into()));
        };
        if e.0 == q || e.1 == q {
            return Err(Error::Precondition("q_k must avoid the edge e".into()));
        }
        let (edges, _) = self.lemma3_local(e, q)?;
        self.to_matching(&edges)
    }

    /// Near-perfect matching of `G[J]` containing the 2-matching `m2` and
    /// covering `H ∪ V(e0)`, with the uncovered vertex.
    pub fn lemma4_near_pm(
        &self,
        e0: (Vertex, Vertex),
        m2: &Matching,
    ) -> Result<(Matching, Vertex)> {
        let e0 = self.local_edge(e0)?;
        if kind(e0) != Kind::Qq {
            return Err(Error::Precondition("e0 must be an edge of G[Q]".into()));
        }
        if m2.len() != 2 {
            return Err(Error::Precondition("m2 must have two edges".into()));
        }
        let pair = [
            self.local_edge(m2.edges()[0])?,
            self.local_edge(m2.edges()[1])?,
        ];
        let (edges, un, _) = self.lemma4_local(e0, pair)?;
        Ok((self.to_matching(&edges)?, self.host(un)))
    }

    // ---- full extension ----

    /// Perfect matching of `C_6 ⋈ P_n` containing the 3-matching `m0`.
    pub fn bowtie_extend(&self, m0: &Matching) -> Result<BowtieMatchingPlan> {
        if m0.len() != 3 {
            return Err(Error::Precondition(format!(
                "expected a 3-matching, got {} edges",
                m0.len()
            )));
        }
        let c = self.classify_bowtie_edges(m0)?;
        let (x, _, z) = c.xyz();
        let plan = if x >= z {
            self.extend_normalized(m0)?
        } else {
            let mirrored =
                Matching::new(&self.graph, m0.edges().iter().map(|&e| self.sigma_edge(e)))?;
            let p = self.extend_normalized(&mirrored)?;
            let flip = |es: &[(Vertex, Vertex)]| -> Vec<(Vertex, Vertex)> {
                let mut v: Vec<_> = es.iter().map(|&e| self.sigma_edge(e)).collect();
                v.sort_unstable();
                v
            };
            BowtieMatchingPlan {
                case_tag: format!("mirror/{}", p.case_tag),
                j_matching: flip(&p.j_prime_matching),
                j_prime_matching: flip(&p.j_matching),
                rung_edges: flip(&p.rung_edges),
                matching: Matching::new(&self.graph, flip(p.matching.edges()))?,
            }
        };
        if !verify_matching(&self.graph, &plan.matching, MatchingKind::Perfect)
            || !plan.matching.contains_all(m0)
        {
            return Err(Error::RefutationAlarm(format!(
                "branch {} produced {:?}, not a perfect extension of {:?}",
                plan.case_tag,
                plan.matching.edges(),
                m0.edges()
            )));
        }
        Ok(plan)
    }

    fn extend_normalized(&self, m0: &Matching) -> Result<BowtieMatchingPlan> {
        let c = self.classify_bowtie_edges(m0)?;
        let (faithful, unfaithful) = self.split_faithful(m0)?;
        let co: Vec<(Vertex, Vertex)> = c
            .tags
            .iter()
            .filter(|t| t.1 == EdgeClass::CoFaithful)
            .map(|t| t.0)
            .collect();
        match c.xyz() {
            (_, _, 0) => {
                let (m, tag) = self.lemma2_local(&faithful, &unfaithful)?;
                let j: Vec<(Vertex, Vertex)> = m.iter().map(|&e| self.host_edge(e)).collect();
                let covered: BTreeSet<Jv> = m.iter().flat_map(|&(a, b)| [a, b]).collect();
                let rungs: Vec<(Vertex, Vertex)> = (0..2 * self.n)
                    .map(Jv::Q)
                    .filter(|q| !covered.contains(q))
                    .map(|q| ordered(self.host(q), self.sigma(self.host(q))))
                    .collect();
                self.plan(format!("z0/{tag}"), j, rungs)
            }
            (1, 1, 1) => {
                let e1 = faithful[0];
                let q = unfaithful[0];
                let (m, tag_j) = self.lemma3_local(e1, q)?;
                let e3 = self.local_edge(self.sigma_edge(co[0]))?;
                let (mp, tag_jp) = self.lemma3_local(e3, q)?;
                let j: Vec<(Vertex, Vertex)> = m
                    .iter()
                    .map(|&e| self.host_edge(e))
                    .chain(std::iter::once(self.host_edge(e1)))
                    .collect();
                let jp: Vec<(Vertex, Vertex)> = mp
                    .iter()
                    .map(|&e| self.sigma_edge(self.host_edge(e)))
                    .collect();
                let rung = ordered(self.host(q), self.sigma(self.host(q)));
                let mut plan = self.plan(format!("xyz111/{tag_j}/{tag_jp}"), j, vec![rung])?;
                plan.j_prime_matching
                    .extend(jp.iter().copied().chain(std::iter::once(co[0])));
                plan.j_prime_matching.sort_unstable();
                let all = plan
                    .j_matching
                    .iter()
                    .chain(&plan.j_prime_matching)
                    .chain(&plan.rung_edges)
                    .copied();
                plan.matching = Matching::new(&self.graph, all)?;
                Ok(plan)
            }
            (2, 0, 1) => {
                let e3 = self.local_edge(self.sigma_edge(co[0]))?;
                let e0 = match (e3.0, e3.1) {
                    (Jv::Q(_), Jv::Q(_)) => e3,
                    (Jv::H(_), Jv::Q(j)) | (Jv::Q(j), Jv::H(_)) => {
                        norm((Jv::Q(j), self.q_index(j as i64 + 1)))
                    }
                    _ => norm((Jv::Q(1), Jv::Q(2))),
                };
                let (m1, un, tag) = self.lemma4_local(e0, [faithful[0], faithful[1]])?;
                let (m2, tag_jp) = self.lemma3_local(e3, un)?;
                let j: Vec<(Vertex, Vertex)> = m1.iter().map(|&e| self.host_edge(e)).collect();
                let rung = ordered(self.host(un), self.sigma(self.host(un)));
                let mut plan = self.plan(format!("xyz201/{tag}/{tag_jp}"), j, vec![rung])?;
                plan.j_prime_matching.extend(
                    m2.iter()
                        .map(|&e| self.sigma_edge(self.host_edge(e)))
                        .chain(std::iter::once(co[0])),
                );
                plan.j_prime_matching.sort_unstable();
                let all = plan
                    .j_matching
                    .iter()
                    .chain(&plan.j_prime_matching)
                    .chain(&plan.rung_edges)
                    .copied();
                plan.matching = Matching::new(&self.graph, all)?;
                Ok(plan)
            }
            other => Err(Error::Precondition(format!(
                "unexpected edge classes {other:?} after normalization"
            ))),
        }
    }

    /// Plan from a J-side matching: J' gets the mirror image unless filled
    /// in later by the caller.
    fn plan(
        &self,
        tag: String,
        mut j: Vec<(Vertex, Vertex)>,
        mut rungs: Vec<(Vertex, Vertex)>,
    ) -> Result<BowtieMatchingPlan> {
        j.sort_unstable();
        rungs.sort_unstable();
        let mirror_needed = tag.starts_with("z0/");
        let mut jp: Vec<(Vertex, Vertex)> = if mirror_needed {
            j.iter().map(|&e| self.sigma_edge(e)).collect()
        } else {
            Vec::new()
        };
        jp.sort_unstable();
        let all = j.iter().chain(&jp).chain(&rungs).copied();
        let matching = Matching::new(&self.graph, all)
            .map_err(|e| Error::RefutationAlarm(format!("{tag}: {e}")))?;
        Ok(BowtieMatchingPlan {
            case_tag: tag,
            j_matching: j,
            j_prime_matching: jp,
            rung_edges: rungs,
            matching,
        })
    }
}
