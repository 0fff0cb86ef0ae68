//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use std::collections::BTreeSet;
use std::io::Write as _;
use std::process::Command;
use std::time::{Duration, Instant};

use anyhow::{bail, ensure, Context, Result};
use extlab_core::constructive::{c4cn_witness, find_separator, separator_extend, Bowtie};
use extlab_core::embedding::{bowtie_rotation_n2, k5_torus};
use extlab_core::extendability::{
    classify_extendable_graphs, for_each_k_matching, is_k_extendable,
};
use extlab_core::generators::{
    bowtie, complete, complete_bipartite, cycle, grid_product, path, petersen, Factor, GridShape,
};
use extlab_core::graph::is_isomorphic;
use extlab_core::matching::{
    extend_to_perfect, has_perfect_matching, maximum_matching, odd_components_after,
    tutte_violator, verify_matching,
};
use extlab_core::surfaces::{
    control_bound_holds, euler_characteristic, genus_complete, mu, mu_nk, mu_prime,
    nonorientable_genus_complete, Surface,
};
use extlab_core::{Graph, Matching, MatchingKind, Rational, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn torus(m: usize, n: usize) -> Graph {
    grid_product(Factor::Cycle(m), Factor::Cycle(n)).unwrap()
}

fn cylinder(m: usize, n: usize) -> Graph {
    grid_product(Factor::Path(m), Factor::Cycle(n)).unwrap()
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let out = f()?;
    let took = start.elapsed();
    ensure!(took <= limit, "{what} took {took:?}, limit {limit:?}");
    Ok(out)
}

fn bowtie_exhaustive() -> Result<String> {
    let small = timed(Duration::from_secs(60), "bowtie(6,5)", || {
        Ok(is_k_extendable(&bowtie(6, 5)?, 3)?)
    })?;
    ensure!(
        small.verdict && small.complete,
        "bowtie(6,5): {}",
        small.to_json()
    );
    let large = timed(Duration::from_secs(600), "bowtie(6,7)", || {
        Ok(is_k_extendable(&bowtie(6, 7)?, 3)?)
    })?;
    ensure!(
        large.verdict && large.complete,
        "bowtie(6,7): {}",
        large.to_json()
    );
    Ok(format!(
        "{} and {} matchings",
        small.matchings_checked, large.matchings_checked
    ))
}

fn bowtie_constructive() -> Result<String> {
    let bt = Bowtie::new(5)?;
    let g = bt.graph();
    let (mut total, mut failures) = (0usize, Vec::new());
    for_each_k_matching(g, 3, |edges| {
        total += 1;
        let ok = Matching::new(g, edges.iter().copied())
            .map_err(anyhow::Error::from)
            .and_then(|m| {
                let plan = bt.bowtie_extend(&m)?;
                ensure!(
                    verify_matching(g, &plan.matching, MatchingKind::Perfect),
                    "not perfect"
                );
                ensure!(plan.matching.contains_all(&m), "input dropped");
                Ok(())
            });
        if let Err(e) = ok {
            failures.push(format!("{edges:?}: {e}"));
        }
    });
    ensure!(
        failures.is_empty(),
        "{} of {total} failed, first {}",
        failures.len(),
        failures[0]
    );
    ensure!(
        total == 24_560,
        "expected 24560 three-matchings, saw {total}"
    );
    Ok(format!("{total} matchings, zero failures"))
}

fn torus_products() -> Result<String> {
    for n in [5, 7] {
        let r = is_k_extendable(&torus(6, n), 3)?;
        ensure!(r.verdict && r.complete, "C6xC{n}: {}", r.to_json());
    }
    let g = torus(6, 5);
    let mut count = 0;
    let mut failure = None;
    for_each_k_matching(&g, 3, |edges| {
        count += 1;
        if failure.is_some() {
            return;
        }
        let m = Matching::new(&g, edges.iter().copied()).unwrap();
        match separator_extend(&g, &m) {
            Ok(run)
                if verify_matching(&g, &run.matching, MatchingKind::Perfect)
                    && run.matching.contains_all(&m) => {}
            Ok(_) => failure = Some(format!("{edges:?}: bad extension")),
            Err(e) => failure = Some(format!("{edges:?}: {e}")),
        }
    });
    if let Some(f) = failure {
        bail!(f);
    }
    Ok(format!(
        "separator extended all {count} three-matchings of C6xC5"
    ))
}

type GridEdge = ((i64, i64), (i64, i64));
type Criterion = (&'static str, fn() -> Result<String>);

fn grid_edges(s: &GridShape, list: &[GridEdge]) -> BTreeSet<(Vertex, Vertex)> {
    list.iter()
        .map(|&((a, b), (c, d))| {
            let (u, v) = (s.v(a, b), s.v(c, d));
            (u.min(v), u.max(v))
        })
        .collect()
}

fn cylinder_products() -> Result<String> {
    for (m, n, expected) in [
        (4, 5, true),
        (4, 7, true),
        (6, 5, true),
        (4, 6, true),
        (5, 4, true),
        (5, 5, false),
    ] {
        let r = is_k_extendable(&cylinder(m, n), 2)?;
        ensure!(
            r.verdict == expected && r.complete,
            "P{m}xC{n}: {}",
            r.to_json()
        );
        ensure!(
            expected == (m % 2 == 0 || n % 2 == 0),
            "P{m}xC{n} breaks the parity rule"
        );
    }

    let g = cylinder(4, 5);
    let s = GridShape::new(4, 5);

    let m = Matching::new(&g, [(s.v(1, 1), s.v(1, 2)), (s.v(2, 2), s.v(2, 3))])?;
    let choice = find_separator(&g, &m)?;
    let pm = choice
        .explicit
        .clone()
        .context("first base case returned no explicit matching")?;
    let fig2 = grid_edges(
        &s,
        &[
            ((1, 1), (1, 2)),
            ((1, 3), (1, 4)),
            ((2, 2), (2, 3)),
            ((3, 2), (3, 3)),
            ((4, 1), (4, 2)),
            ((4, 3), (4, 4)),
            ((2, 1), (3, 1)),
            ((2, 4), (3, 4)),
        ],
    );
    let first_four: BTreeSet<_> = pm
        .iter()
        .copied()
        .filter(|&(u, v)| s.position(u).1 <= 4 && s.position(v).1 <= 4)
        .collect();
    ensure!(
        first_four == fig2,
        "first base case differs: {first_four:?}"
    );

    let m = Matching::new(&g, [(s.v(1, 1), s.v(1, 2)), (s.v(4, 2), s.v(4, 3))])?;
    let run = separator_extend(&g, &m)?;
    ensure!(verify_matching(&g, &run.matching, MatchingKind::Perfect));
    let fig3 = grid_edges(
        &s,
        &[
            ((1, 1), (1, 2)),
            ((2, 1), (2, 2)),
            ((1, 3), (2, 3)),
            ((3, 1), (4, 1)),
            ((3, 2), (3, 3)),
            ((4, 2), (4, 3)),
        ],
    );
    let first_three: BTreeSet<_> = run
        .matching
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| s.position(u).1 <= 3 && s.position(v).1 <= 3)
        .collect();
    ensure!(
        first_three == fig3,
        "second base case differs: {first_three:?}"
    );
    Ok("parity rule holds, both base constructions reproduced".into())
}

fn c4cn_certificate() -> Result<String> {
    for (n, u, isolated) in [(5, 6, 8), (7, 10, 12)] {
        let w = c4cn_witness(n)?;
        ensure!(w.u.len() == u, "n={n}: |U|={}", w.u.len());
        ensure!(w.isolated == isolated, "n={n}: {} isolated", w.isolated);
        let removed = w.matching.vertices().union(&w.u);
        ensure!(
            odd_components_after(&w.graph, &removed) == isolated,
            "n={n}: component count"
        );

        let rest = w.graph.remove_vertices(&w.matching.vertices())?;
        let violator = tutte_violator(&rest.graph)?.context("no Tutte set after deleting V(M)")?;
        ensure!(violator.verify(&rest.graph), "Tutte set does not check");
        ensure!(
            extend_to_perfect(&w.graph, &w.matching)?.is_none(),
            "M extends"
        );
        let r = is_k_extendable(&torus(4, n), 3)?;
        ensure!(
            !r.verdict && r.witness_holds(&w.graph),
            "C4xC{n}: {}",
            r.to_json()
        );
    }
    Ok("n=5 and n=7".into())
}

fn formula_tables() -> Result<String> {
    let s = |chi: i64| Surface::with_characteristic(chi).unwrap();
    let n = |k: u32| Surface::nonorientable(k).unwrap();
    ensure!(mu(&Surface::sphere())? == 3 && mu(&n(1))? == 3);
    ensure!(mu(&Surface::orientable(1))? == 4 && mu(&n(2))? == 4);
    ensure!(mu_prime(&Surface::sphere())? == 3 && mu_prime(&n(1))? == 3);
    for surface in [
        Surface::orientable(1),
        n(2),
        n(3),
        Surface::orientable(2),
        n(4),
    ] {
        ensure!(mu_prime(&surface)? == 4, "mu'({surface})");
    }
    for chi in (-12..=2).rev() {
        let surface = s(chi);
        ensure!(euler_characteristic(&surface)? == chi);
        let (a, b) = (mu(&surface)?, mu_prime(&surface)?);
        ensure!(b <= a, "mu' > mu at chi={chi}");
        for k in 1..=4 {
            ensure!(
                mu_nk(k, &surface)? <= b,
                "mu(n, .) exceeds mu' at chi={chi}"
            );
        }
    }
    ensure!(genus_complete(7)? == 1 && nonorientable_genus_complete(7)? == 3);
    for order in 5..=50i64 {
        if order == 7 {
            continue;
        }
        let expected = ((order - 3) * (order - 4) + 5) / 6;
        ensure!(nonorientable_genus_complete(order)? == expected, "K{order}");
    }
    Ok("chi from 2 down to -12, genus table 5..50".into())
}

fn classification() -> Result<String> {
    let limit = Duration::from_secs(300);
    let order6 = timed(limit, "order 6", || Ok(classify_extendable_graphs(6, 2)?))?;
    let order4 = timed(limit, "order 4", || Ok(classify_extendable_graphs(4, 1)?))?;
    let same = |found: &[Graph], expected: &[Graph]| -> Result<bool> {
        if found.len() != expected.len() {
            return Ok(false);
        }
        for e in expected {
            let mut hit = false;
            for f in found {
                hit |= is_isomorphic(f, e)?;
            }
            if !hit {
                return Ok(false);
            }
        }
        Ok(true)
    };
    ensure!(
        same(&order6, &[complete(6)?, complete_bipartite(3, 3)?])?,
        "order 6: {} classes",
        order6.len()
    );
    ensure!(
        same(&order4, &[complete(4)?, cycle(4)?])?,
        "order 4: {} classes",
        order4.len()
    );
    Ok("{K6, K3,3} and {K4, C4}".into())
}

fn embedding_audit() -> Result<String> {
    let rs = bowtie_rotation_n2(5)?;
    let klein = Surface::nonorientable(2)?;
    ensure!(rs.verify_embedding(&klein)?, "not an embedding in N2");
    ensure!(!rs.is_orientable() && rs.euler_characteristic() == 0);
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
    let order = rs.graph().order() as i64;
    let v = rep.control_point;
    ensure!(
        rep.phi[v] >= Rational::new(0, order),
        "control point below chi/|G|"
    );
    let (d, x) = (rs.graph().degree(v) as i64, rep.triangles_at[v] as i64);
    ensure!(
        control_bound_holds(d, x, 0, order)?,
        "degree bound fails at the control point"
    );

    let k5 = k5_torus();
    ensure!(k5.verify_embedding(&Surface::orientable(1))?);
    let f = k5.trace_faces();
    let repeated = (0..f.len()).any(|i| k5.graph().vertices().any(|v| f.angles_at(i, v) >= 2));
    ensure!(repeated, "no face meets a vertex twice");
    Ok("N2 quadrangulation, sum 0, K5 torus fixture".into())
}

fn brute_max_matching(g: &Graph) -> usize {
    fn go(g: &Graph, used: &mut Vec<bool>, from: Vertex) -> usize {
        let Some(v) = (from..g.order()).find(|&v| !used[v]) else {
            return 0;
        };
        used[v] = true;
        let mut best = go(g, used, v + 1);
        for &w in g.adjacent(v) {
            if !used[w] {
                used[w] = true;
                best = best.max(1 + go(g, used, v + 1));
                used[w] = false;
            }
        }
        used[v] = false;
        best
    }
    go(g, &mut vec![false; g.order()], 0)
}

fn random_graph(rng: &mut ChaCha8Rng, order: usize) -> Graph {
    let p = rng.gen_range(0.1..0.7);
    let edges: Vec<(Vertex, Vertex)> = (0..order)
        .flat_map(|u| (u + 1..order).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(order, edges).unwrap()
}

fn duality_on(g: &Graph, name: &str) -> Result<()> {
    let perfect = has_perfect_matching(g);
    let violator = tutte_violator(g)?;
    ensure!(
        perfect != violator.is_some(),
        "{name}: perfect={perfect}, violator={violator:?}"
    );
    if let Some(t) = violator {
        ensure!(t.verify(g), "{name}: violator does not check");
    }
    let m = maximum_matching(g);
    ensure!(
        verify_matching(g, &m, MatchingKind::Partial),
        "{name}: invalid maximum matching"
    );
    if g.order() <= 12 {
        ensure!(
            m.len() == brute_max_matching(g),
            "{name}: size {} vs exhaustive",
            m.len()
        );
    }
    Ok(())
}

fn tutte_duality() -> Result<String> {
    let mut families: Vec<(String, Graph)> = vec![("petersen".into(), petersen())];
    for n in 1..=30 {
        families.push((format!("P{n}"), path(n)?));
        families.push((format!("K{n}"), complete(n)?));
        if n >= 3 {
            families.push((format!("C{n}"), cycle(n)?));
        }
    }
    for a in 1..=15 {
        for b in a..=(30 - a).min(15) {
            families.push((format!("K{a},{b}"), complete_bipartite(a, b)?));
        }
    }
    for m in 2..=6 {
        for n in 3..=30 / m {
            families.push((format!("P{m}xC{n}"), cylinder(m, n)));
            if m >= 3 {
                families.push((format!("C{m}xC{n}"), torus(m, n)));
            }
        }
    }
    families.push(("bowtie(6,5)".into(), bowtie(6, 5)?));
    for (name, g) in &families {
        duality_on(g, name)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..500 {
        let order = rng.gen_range(1..=14);
        duality_on(&random_graph(&mut rng, order), &format!("random #{i}"))?;
    }
    Ok(format!("{} family graphs, 500 random", families.len()))
}

fn conjecture_probe() -> Result<String> {
    let out = Command::new(env!("CARGO_BIN_EXE_extlab"))
        .args(["conjecture", "8", "5"])
        .env_remove("EXTLAB_JOBS")
        .output()?;
    ensure!(
        out.status.code() == Some(0),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    let body: serde_json::Value = serde_json::from_slice(&out.stdout)?;
    ensure!(body["kind"] == "evidence");
    let report = &body["report"];
    ensure!(report["complete"] == true, "budget ran out");
    // Pinned from the first verified run.
    ensure!(report["verdict"] == true, "verdict changed: {report}");
    ensure!(
        report["matchings_checked"] == 64_480,
        "matchings checked changed: {report}"
    );
    Ok("C8 ⋈ P5 is 3-extendable (evidence)".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        (
            "1 bowtie graphs 3-extendable by enumeration",
            bowtie_exhaustive,
        ),
        (
            "2 bowtie construction extends every 3-matching",
            bowtie_constructive,
        ),
        (
            "3 C6xC5 and C6xC7 3-extendable, separator pipeline",
            torus_products,
        ),
        (
            "4 PmxCn 2-extendable iff m or n even, base cases",
            cylinder_products,
        ),
        ("5 C4xCn obstruction certificate", c4cn_certificate),
        ("6 mu, mu' and genus tables", formula_tables),
        ("7 order-4 and order-6 classification", classification),
        ("8 embedding audit", embedding_audit),
        ("9 Tutte duality and maximum matching oracle", tutte_duality),
        ("10 conjecture probe C8 ⋈ P5", conjecture_probe),
    ];
    let mut failed = Vec::new();
    let mut stdout = std::io::stdout();
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        let line = match &result {
            Ok(detail) => format!("PASS  {name}  ({secs:.1}s)  {detail}"),
            Err(e) => {
                failed.push(name);
                format!("FAIL  {name}  ({secs:.1}s)  {e:#}")
            }
        };
        let _ = writeln!(stdout, "{line}");
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
