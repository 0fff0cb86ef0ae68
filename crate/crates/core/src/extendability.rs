//! Exhaustive k-extendability decisions, extendability numbers, (n,k)-graph
//! checks and the classification of small extendable graphs.
//!
//! k-matchings are enumerated as increasing tuples of edge indices (edges
//! sorted as in [`Graph::edges`]). The stream is cut into partitions by the
//! first edge; partitions run in parallel, and the reported witness is the
//! lexicographically first failing matching whatever the thread count.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::generators::GridShape;
use crate::graph::{canonical_code, Graph, Label, Vertex, VertexSet};
use crate::matching::{
    has_perfect_matching, tutte_violator, BlossomSolver, Matching, TutteViolator,
};

#[derive(Clone, Debug, Default)]
pub struct ExtendOptions {
    /// Worker threads; 0 or 1 runs sequentially on the calling thread.
    pub jobs: usize,
    /// Edge ids meeting every edge orbit of the automorphism group. When
    /// given, only matchings through one of these edges are checked.
    pub orbit_representatives: Option<Vec<usize>>,
    /// Maximum number of matching-oracle calls before stopping early.
    pub budget: Option<u64>,
}

impl ExtendOptions {
    pub fn with_jobs(jobs: usize) -> Self {
        ExtendOptions {
            jobs,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every k-matching extends.
    Extendable,
    /// A k-matching without extension was found.
    WitnessFound,
    /// The graph has no perfect matching and no k-matching to exhibit.
    NoPerfectMatching,
    /// `2k + 2 > |G|`: extendability is not defined and reported false.
    KOutOfRange,
    /// The budget ran out before the enumeration finished.
    BudgetExhausted,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtendabilityReport {
    pub k: usize,
    pub verdict: bool,
    pub reason: Verdict,
    /// False when the run stopped at the budget; `verdict` is then only
    /// meaningful if a witness was found.
    pub complete: bool,
    pub witness: Option<Matching>,
    /// Tutte set for `G - V(witness)`, in host vertex ids.
    pub witness_certificate: Option<TutteViolator>,
    pub matchings_checked: u64,
    #[serde(serialize_with = "seconds")]
    pub elapsed: Duration,
}

fn seconds<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl ExtendabilityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// The report without its timing, byte-stable across runs and job counts.
    pub fn certificate_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report serialization cannot fail");
        if let Some(map) = value.as_object_mut() {
            map.remove("elapsed");
        }
        serde_json::to_string_pretty(&value).expect("report serialization cannot fail")
    }

    /// Re-checks the witness and its certificate against `g` from scratch.
    pub fn witness_holds(&self, g: &Graph) -> bool {
        let (Some(w), Some(cert)) = (&self.witness, &self.witness_certificate) else {
            return false;
        };
        if w.len() != self.k
            || !crate::matching::verify_matching(g, w, crate::matching::MatchingKind::Partial)
        {
            return false;
        }
        let Ok(rest) = g.remove_vertices(&w.vertices()) else {
            return false;
        };
        let local: Option<VertexSet> = cert.set.iter().map(|v| rest.local_vertex(v)).collect();
        let Some(local) = local else {
            return false;
        };
        TutteViolator {
            set: local,
            odd_components: cert.odd_components,
        }
        .verify(&rest.graph)
    }
}

/// One slice of the k-matching stream: `fixed` edges plus `need` more edges
/// with index at least `from`.
#[derive(Clone, Debug)]
struct Partition {
    fixed: Vec<usize>,
    from: usize,
    need: usize,
}

fn partitions(g: &Graph, k: usize, reps: Option<&[usize]>) -> Vec<Partition> {
    if k == 0 {
        return vec![Partition {
            fixed: Vec::new(),
            from: 0,
            need: 0,
        }];
    }
    match reps {
        Some(reps) => reps
            .iter()
            .map(|&r| Partition {
                fixed: vec![r],
                from: 0,
                need: k - 1,
            })
            .collect(),
        None => (0..g.size())
            .map(|i| Partition {
                fixed: vec![i],
                from: i + 1,
                need: k - 1,
            })
            .collect(),
    }
}

/// Depth-first walk over the matchings of one partition in lexicographic
/// order. `visit` returns false to stop; the walk then reports false.
fn walk(g: &Graph, p: &Partition, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    let mut used = vec![false; g.order()];
    let mut chosen = p.fixed.clone();
    for &e in &p.fixed {
        let (u, v) = g.edge(e);
        if used[u] || used[v] {
            return true;
        }
        used[u] = true;
        used[v] = true;
    }
    fn rec(
        g: &Graph,
        from: usize,
        need: usize,
        used: &mut [bool],
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if need == 0 {
            return visit(chosen);
        }
        for e in from..g.size() {
            let (u, v) = g.edge(e);
            if used[u] || used[v] {
                continue;
            }
            used[u] = true;
            used[v] = true;
            chosen.push(e);
            let go_on = rec(g, e + 1, need - 1, used, chosen, visit);
            chosen.pop();
            used[u] = false;
            used[v] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(g, p.from, p.need, &mut used, &mut chosen, &mut visit)
}

/// Number of matchings in a partition, stopping once `cap` is passed.
fn count_partition(g: &Graph, p: &Partition, cap: u64) -> u64 {
    let mut count = 0u64;
    walk(g, p, |_| {
        count += 1;
        count <= cap
    });
    count
}

/// Number of k-matchings of `g`.
pub fn count_k_matchings(g: &Graph, k: usize) -> u64 {
    partitions(g, k, None)
        .iter()
        .map(|p| count_partition(g, p, u64::MAX))
        .sum()
}

/// Calls `visit` on every k-matching of `g`, as edges in lexicographic
/// order of edge ids.
pub fn for_each_k_matching(g: &Graph, k: usize, mut visit: impl FnMut(&[(Vertex, Vertex)])) {
    let mut buf = Vec::with_capacity(k);
    for p in partitions(g, k, None) {
        walk(g, &p, |ids| {
            buf.clear();
            buf.extend(ids.iter().map(|&e| g.edge(e)));
            visit(&buf);
            true
        });
    }
}

/// Perfect-matching test for `G - V(M)` that starts from a fixed perfect
/// matching of `G` and repairs only the edges `M` disturbed.
struct ExtensionOracle<'g> {
    solver: BlossomSolver<'g>,
    base: &'g [(Vertex, Vertex)],
}

impl<'g> ExtensionOracle<'g> {
    fn new(g: &'g Graph, base: &'g [(Vertex, Vertex)]) -> Self {
        ExtensionOracle {
            solver: BlossomSolver::new(g),
            base,
        }
    }

    fn extends(&mut self, edge_ids: &[usize]) -> bool {
        let g = self.solver.graph();
        self.solver.reset();
        for &e in edge_ids {
            let (u, v) = g.edge(e);
            self.solver.kill(u);
            self.solver.kill(v);
        }
        for &(u, v) in self.base {
            if self.solver.is_alive(u) && self.solver.is_alive(v) {
                self.solver.set_pair(u, v);
            }
        }
        self.solver.complete_to_perfect()
    }
}

struct PartitionOutcome {
    checked: u64,
    failure: Option<Vec<usize>>,
}

fn run_partition(g: &Graph, base: &[(Vertex, Vertex)], p: &Partition) -> PartitionOutcome {
    let mut oracle = ExtensionOracle::new(g, base);
    let mut checked = 0u64;
    let mut failure = None;
    walk(g, p, |edges| {
        checked += 1;
        if oracle.extends(edges) {
            true
        } else {
            failure = Some(edges.to_vec());
            false
        }
    });
    PartitionOutcome { checked, failure }
}

fn in_pool<T: Send>(jobs: usize, work: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(work),
        Err(e) => {
            log::warn!("could not build a {jobs}-thread pool ({e}); running on the calling thread");
            work()
        }
    }
}

fn witness_report(g: &Graph, edges: Vec<(Vertex, Vertex)>) -> Result<(Matching, TutteViolator)> {
    let witness = Matching::new(g, edges)?;
    let rest = g.remove_vertices(&witness.vertices())?;
    let cert = tutte_violator(&rest.graph)?
        .ok_or_else(|| Error::RefutationAlarm("witness subgraph has a perfect matching".into()))?;
    Ok((
        witness,
        TutteViolator {
            set: rest.lift_set(&cert.set),
            odd_components: cert.odd_components,
        },
    ))
}

/// Decides whether every k-matching of `g` extends to a perfect matching.
pub fn is_k_extendable(g: &Graph, k: usize) -> Result<ExtendabilityReport> {
    is_k_extendable_with(g, k, &ExtendOptions::default())
}

pub fn is_k_extendable_with(
    g: &Graph,
    k: usize,
    opts: &ExtendOptions,
) -> Result<ExtendabilityReport> {
    let start = Instant::now();
    let mut report = ExtendabilityReport {
        k,
        verdict: false,
        reason: Verdict::KOutOfRange,
        complete: true,
        witness: None,
        witness_certificate: None,
        matchings_checked: 0,
        elapsed: Duration::ZERO,
    };
    if let Some(reps) = &opts.orbit_representatives {
        if let Some(&bad) = reps.iter().find(|&&e| e >= g.size()) {
            return Err(invalid(format!(
                "orbit representative edge {bad} out of range"
            )));
        }
    }
    if 2 * k + 2 > g.order() {
        report.elapsed = start.elapsed();
        return Ok(report);
    }
    let mut solver = BlossomSolver::new(g);
    if 2 * solver.maximize() != g.order() {
        report.reason = Verdict::NoPerfectMatching;
        let first = partitions(g, k, None).iter().find_map(|p| {
            let mut found = None;
            walk(g, p, |e| {
                found = Some(e.to_vec());
                false
            });
            found
        });
        if let Some(ids) = first {
            let (w, c) = witness_report(g, ids.iter().map(|&e| g.edge(e)).collect())?;
            report.reason = Verdict::WitnessFound;
            report.witness = Some(w);
            report.witness_certificate = Some(c);
            report.matchings_checked = 1;
        }
        report.elapsed = start.elapsed();
        return Ok(report);
    }
    let base = solver.matching_edges();
    let mut parts = partitions(g, k, opts.orbit_representatives.as_deref());
    if let Some(budget) = opts.budget {
        let mut total = 0u64;
        let mut keep = 0;
        for p in &parts {
            let c = count_partition(g, p, budget - total);
            if total + c > budget {
                break;
            }
            total += c;
            keep += 1;
        }
        if keep < parts.len() {
            parts.truncate(keep);
            report.complete = false;
        }
    }

    let first_failure = AtomicUsize::new(usize::MAX);
    let task = |(i, p): (usize, &Partition)| {
        if i > first_failure.load(Ordering::Relaxed) {
            return None;
        }
        let out = run_partition(g, &base, p);
        if out.failure.is_some() {
            first_failure.fetch_min(i, Ordering::Relaxed);
        }
        Some(out)
    };
    let outcomes: Vec<Option<PartitionOutcome>> = if opts.jobs <= 1 {
        parts.iter().enumerate().map(task).collect()
    } else {
        in_pool(opts.jobs, || {
            parts.par_iter().enumerate().map(task).collect()
        })
    };
    let fail_at = first_failure.load(Ordering::Relaxed);
    for (i, out) in outcomes.into_iter().enumerate() {
        if i > fail_at {
            break;
        }
        let out = out.expect("partitions before the first failure are always run");
        report.matchings_checked += out.checked;
        if let Some(ids) = out.failure {
            let (w, c) = witness_report(g, ids.iter().map(|&e| g.edge(e)).collect())?;
            report.reason = Verdict::WitnessFound;
            report.witness = Some(w);
            report.witness_certificate = Some(c);
            report.complete = true;
            report.elapsed = start.elapsed();
            return Ok(report);
        }
    }
    if report.complete {
        report.verdict = true;
        report.reason = Verdict::Extendable;
    } else {
        report.reason = Verdict::BudgetExhausted;
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Edge-orbit representatives of `C_m x C_n` in its row-major product
/// labelling: one horizontal and one vertical edge at `v_{1,1}`.
pub fn torus_orbit_representatives(g: &Graph, m: usize, n: usize) -> Result<Vec<usize>> {
    let s = GridShape::new(m, n);
    let h = g.edge_id(s.v(1, 1), s.v(1, 2));
    let v = g.edge_id(s.v(1, 1), s.v(2, 1));
    match (h, v) {
        (Some(h), Some(v)) if g.order() == m * n && g.size() == 2 * m * n => Ok(vec![h, v]),
        _ => Err(invalid(format!(
            "graph is not C_{m} x C_{n} in product labelling"
        ))),
    }
}

/// Largest k for which `g` is k-extendable, or -1 without a perfect matching.
pub fn extendability_number(g: &Graph) -> Result<i64> {
    extendability_number_with(g, &ExtendOptions::default())
}

pub fn extendability_number_with(g: &Graph, opts: &ExtendOptions) -> Result<i64> {
    if !has_perfect_matching(g) {
        return Ok(-1);
    }
    let mut best = 0i64;
    for k in 1..g.order() / 2 {
        if !is_k_extendable_with(g, k, opts)?.verdict {
            break;
        }
        best = k as i64;
    }
    Ok(best)
}

#[derive(Clone, Debug, Serialize)]
pub struct NkReport {
    pub n: usize,
    pub k: usize,
    pub holds: bool,
    /// First deleted set (lexicographically) leaving a graph that is not
    /// k-extendable.
    pub failing_set: Option<VertexSet>,
    pub subsets_checked: u64,
}

/// Whether deleting any `n` vertices leaves a k-extendable graph.
pub fn is_nk_graph(g: &Graph, n: usize, k: usize) -> Result<NkReport> {
    is_nk_graph_with(g, n, k, &ExtendOptions::default())
}

pub fn is_nk_graph_with(g: &Graph, n: usize, k: usize, opts: &ExtendOptions) -> Result<NkReport> {
    if n > g.order() || (g.order() - n) % 2 == 1 {
        return Err(invalid(format!(
            "order {} minus {n} deleted vertices must be even and nonnegative",
            g.order()
        )));
    }
    let sub_opts = ExtendOptions {
        orbit_representatives: None,
        ..opts.clone()
    };
    let mut report = NkReport {
        n,
        k,
        holds: true,
        failing_set: None,
        subsets_checked: 0,
    };
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let w: VertexSet = idx.iter().copied().collect();
        let rest = g.remove_vertices(&w)?;
        report.subsets_checked += 1;
        if !is_k_extendable_with(&rest.graph, k, &sub_opts)?.verdict {
            report.holds = false;
            report.failing_set = Some(w);
            return Ok(report);
        }
        if !crate::graph::next_combination(&mut idx, g.order()) {
            return Ok(report);
        }
    }
}

/// Largest order accepted by [`classify_extendable_graphs`].
pub const CLASSIFY_MAX_ORDER: usize = 8;

/// All connected graphs of order `order` up to isomorphism, generated by
/// adding one vertex at a time to every class of the previous order.
pub fn connected_graphs(order: usize) -> Result<Vec<Graph>> {
    Ok(all_graphs(order)?
        .into_iter()
        .filter(Graph::is_connected)
        .collect())
}

/// All graphs of order `order` up to isomorphism, sorted by canonical code.
pub fn all_graphs(order: usize) -> Result<Vec<Graph>> {
    if order > CLASSIFY_MAX_ORDER {
        return Err(Error::TooLarge(format!(
            "graph generation limited to order {CLASSIFY_MAX_ORDER}"
        )));
    }
    let mut level: Vec<Graph> = vec![Graph::empty(0)];
    for n in 1..=order {
        let mut next = BTreeMap::new();
        for g in &level {
            for mask in 0u32..(1 << (n - 1)) {
                let extra = (0..n - 1)
                    .filter(|&v| mask >> v & 1 == 1)
                    .map(|v| (v, n - 1));
                let h = Graph::new(n, g.edges().iter().copied().chain(extra))?;
                next.entry(canonical_code(&h)?).or_insert(h);
            }
        }
        level = next.into_values().collect();
    }
    Ok(level)
}

/// Connected k-extendable graphs of the given order, one per isomorphism
/// class, each with plain labels.
pub fn classify_extendable_graphs(order: usize, k: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for g in connected_graphs(order)? {
        if is_k_extendable(&g, k)?.verdict {
            let labels = (0..g.order())
                .map(|v| Label::plain(v.to_string()))
                .collect();
            out.push(g.with_labels(labels)?);
        }
    }
    Ok(out)
}
