//! Desk-scale checks of the extendability theorems, the constructive
//! lemmas, the surface formulas and the embedding audit.

use std::time::Instant;

use anyhow::{ensure, Result};
use extlab_core::constructive::{c4cn_witness, separator_extend, Bowtie};
use extlab_core::embedding::{bowtie_rotation_n2, k5_torus, planar_k4};
use extlab_core::extendability::{
    classify_extendable_graphs, for_each_k_matching, is_k_extendable_with, ExtendOptions,
};
use extlab_core::generators::{bowtie, complete, complete_bipartite, cycle, grid_product, Factor};
use extlab_core::graph::is_isomorphic;
use extlab_core::matching::{tutte_violator, verify_matching, MatchingKind};
use extlab_core::surfaces::{
    control_bound_holds, genus_complete, mu, mu_prime, nonorientable_genus_complete, Surface,
};
use extlab_core::{Matching, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Theorems,
    Lemmas,
    Formulas,
    Embeddings,
    All,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    /// Certificate bytes recorded in the manifest.
    pub artifact: Option<Vec<u8>>,
}

fn run(name: &str, body: impl FnOnce() -> Result<(String, Option<Vec<u8>>)>) -> Check {
    let start = Instant::now();
    let (passed, detail, artifact) = match body() {
        Ok((detail, artifact)) => (true, detail, artifact),
        Err(e) => (false, format!("{e:#}"), None),
    };
    Check {
        name: name.to_string(),
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
        artifact,
    }
}

pub fn run_suite(suite: Suite, jobs: usize) -> Vec<Check> {
    match suite {
        Suite::Theorems => theorems(jobs),
        Suite::Lemmas => lemmas(),
        Suite::Formulas => formulas(),
        Suite::Embeddings => embeddings(),
        Suite::All => {
            let mut out = formulas();
            out.extend(embeddings());
            out.extend(lemmas());
            out.extend(theorems(jobs));
            out
        }
    }
}

fn extendable(g: &extlab_core::Graph, k: usize, jobs: usize) -> Result<bool> {
    Ok(is_k_extendable_with(g, k, &ExtendOptions::with_jobs(jobs))?.verdict)
}

pub fn theorems(jobs: usize) -> Vec<Check> {
    let mut out = vec![
        run("bowtie(6,5) is 3-extendable", || {
            ensure!(
                extendable(&bowtie(6, 5)?, 3, jobs)?,
                "a 3-matching fails to extend"
            );
            Ok(("exhaustive over all 3-matchings".into(), None))
        }),
        run("C6xC5 is 3-extendable", || {
            ensure!(
                extendable(&grid_product(Factor::Cycle(6), Factor::Cycle(5))?, 3, jobs)?,
                "not 3-extendable"
            );
            Ok(("exhaustive".into(), None))
        }),
    ];
    let cylinders = [
        ((4, 5), true),
        ((4, 7), true),
        ((6, 5), true),
        ((4, 6), true),
        ((5, 4), true),
        ((5, 5), false),
    ];
    for ((m, n), expected) in cylinders {
        out.push(run(&format!("P{m}xC{n} 2-extendable = {expected}"), || {
            let got = extendable(&grid_product(Factor::Path(m), Factor::Cycle(n))?, 2, jobs)?;
            ensure!(got == expected, "got {got}");
            Ok((String::new(), None))
        }));
    }
    out.push(run("C4xC5 is not 3-extendable", || {
        let g = grid_product(Factor::Cycle(4), Factor::Cycle(5))?;
        let report = is_k_extendable_with(&g, 3, &ExtendOptions::with_jobs(jobs))?;
        ensure!(
            !report.verdict && report.witness_holds(&g),
            "no checked witness"
        );
        let w = report.witness.as_ref().expect("witness");
        Ok((
            format!("witness {:?}", w.edges()),
            Some(report.certificate_json().into_bytes()),
        ))
    }));
    out.push(run("order-4 1-extendable graphs are K4 and C4", || {
        let found = classify_extendable_graphs(4, 1)?;
        let expected = [complete(4)?, cycle(4)?];
        ensure!(
            same_classes(&found, &expected),
            "got {} classes",
            found.len()
        );
        Ok((String::new(), None))
    }));
    out.push(run("order-6 2-extendable graphs are K6 and K3,3", || {
        let found = classify_extendable_graphs(6, 2)?;
        let expected = [complete(6)?, complete_bipartite(3, 3)?];
        ensure!(
            same_classes(&found, &expected),
            "got {} classes",
            found.len()
        );
        Ok((String::new(), None))
    }));
    out
}

pub fn same_classes(found: &[extlab_core::Graph], expected: &[extlab_core::Graph]) -> bool {
    found.len() == expected.len()
        && expected
            .iter()
            .all(|e| found.iter().any(|f| is_isomorphic(f, e).unwrap_or(false)))
}

pub fn lemmas() -> Vec<Check> {
    vec![
        run("bowtie construction extends every 3-matching (n=5)", || {
            let bt = Bowtie::new(5)?;
            let g = bt.graph();
            let mut failures = Vec::new();
            let mut count = 0u64;
            for_each_k_matching(g, 3, |edges| {
                count += 1;
                let ok = Matching::new(g, edges.iter().copied()).ok().and_then(|m| {
                    let plan = bt.bowtie_extend(&m).ok()?;
                    (verify_matching(g, &plan.matching, MatchingKind::Perfect)
                        && plan.matching.contains_all(&m))
                    .then_some(())
                });
                if ok.is_none() {
                    failures.push(edges.to_vec());
                }
            });
            ensure!(
                failures.is_empty(),
                "{} failures, first {:?}",
                failures.len(),
                failures[0]
            );
            Ok((format!("{count} matchings"), None))
        }),
        run("separator method extends every 3-matching of C6xC5", || {
            separator_all(Factor::Cycle(6), 3)
        }),
        run("separator method extends every 2-matching of P4xC5", || {
            separator_all(Factor::Path(4), 2)
        }),
        run("C4xC5 and C4xC7 obstructions", || {
            let mut bytes = Vec::new();
            for n in [5, 7] {
                let w = c4cn_witness(n)?;
                ensure!(
                    w.u.len() == 2 * n - 4 && w.isolated == 2 * n - 2,
                    "wrong sizes at n={n}"
                );
                let rest = w.graph.remove_vertices(&w.matching.vertices())?;
                ensure!(
                    tutte_violator(&rest.graph)?.is_some(),
                    "no Tutte set at n={n}"
                );
                bytes.extend(w.matching.to_json().into_bytes());
            }
            Ok((String::new(), Some(bytes)))
        }),
    ]
}

fn separator_all(rows: Factor, k: usize) -> Result<(String, Option<Vec<u8>>)> {
    let g = grid_product(rows, Factor::Cycle(5))?;
    let mut failures = 0u64;
    let mut count = 0u64;
    for_each_k_matching(&g, k, |edges| {
        count += 1;
        let ok = Matching::new(&g, edges.iter().copied())
            .ok()
            .and_then(|m| {
                separator_extend(&g, &m)
                    .ok()
                    .map(|run| run.matching.contains_all(&m))
            })
            .unwrap_or(false);
        if !ok {
            failures += 1;
        }
    });
    ensure!(failures == 0, "{failures} of {count} matchings failed");
    Ok((format!("{count} matchings"), None))
}

pub fn formulas() -> Vec<Check> {
    vec![
        run("mu and mu' values", || {
            let n = |k| Surface::nonorientable(k);
            let s0 = Surface::sphere();
            let s1 = Surface::orientable(1);
            ensure!(
                mu(&s0)? == 3 && mu(&n(1)?)? == 3 && mu(&s1)? == 4 && mu(&n(2)?)? == 4,
                "mu"
            );
            ensure!(
                mu_prime(&s0)? == 3 && mu_prime(&n(1)?)? == 3,
                "mu' at chi 2, 1"
            );
            for s in [s1, n(2)?, n(3)?, n(4)?, Surface::orientable(2)] {
                ensure!(mu_prime(&s)? == 4, "mu'({s})");
            }
            for chi in -12..=2 {
                let s = Surface::with_characteristic(chi)?;
                ensure!(mu_prime(&s)? <= mu(&s)?, "mu' > mu at chi {chi}");
            }
            Ok((String::new(), None))
        }),
        run("genus of complete graphs", || {
            ensure!(
                genus_complete(7)? == 1 && nonorientable_genus_complete(7)? == 3,
                "K7"
            );
            for n in 5..=50i64 {
                if n != 7 {
                    let direct = ((n - 3) * (n - 4) + 5) / 6;
                    ensure!(nonorientable_genus_complete(n)? == direct, "K{n}");
                }
            }
            Ok((String::new(), None))
        }),
    ]
}

pub fn embeddings() -> Vec<Check> {
    vec![
        run("bowtie(6,5) quadrangulates the Klein bottle", || {
            let rs = bowtie_rotation_n2(5)?;
            let klein = Surface::nonorientable(2)?;
            ensure!(rs.verify_embedding(&klein)?, "not a Klein-bottle embedding");
            let faces = rs.trace_faces();
            ensure!(
                faces.len() == 30 && faces.face_sizes.iter().all(|&s| s == 4),
                "faces {:?}",
                faces.face_sizes
            );
            let rep = rs.euler_contributions::<Rational>();
            let total: Rational = rep.phi.iter().sum();
            ensure!(
                total == Rational::from_integer(0),
                "contributions sum to {total}"
            );
            Ok((String::new(), Some(rs.to_json().into_bytes())))
        }),
        run("planar K4 and toroidal K5", || {
            ensure!(planar_k4().verify_embedding(&Surface::sphere())?, "K4");
            let k5 = k5_torus();
            ensure!(k5.verify_embedding(&Surface::orientable(1))?, "K5");
            let rep = k5.euler_contributions::<Rational>();
            let v = rep.control_point;
            ensure!(
                rep.phi[v] >= Rational::from_integer(0),
                "control point below chi/|G|"
            );
            let d = k5.graph().degree(v) as i64;
            ensure!(
                control_bound_holds(d, rep.triangles_at[v] as i64, 0, 5)?,
                "control bound fails"
            );
            Ok((String::new(), Some(k5.to_json().into_bytes())))
        }),
    ]
}
