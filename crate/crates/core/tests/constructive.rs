use extlab_core::constructive::{c4cn_witness, separator_extend, Bowtie};
use extlab_core::extendability::{count_k_matchings, for_each_k_matching, is_k_extendable};
use extlab_core::generators::{grid_product, Factor};
use extlab_core::matching::{tutte_violator, verify_matching, Matching, MatchingKind};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bowtie_all_three_matchings(n: usize) -> usize {
    let bt = Bowtie::new(n).unwrap();
    let g = bt.graph();
    let mut count = 0;
    for_each_k_matching(g, 3, |edges| {
        let m = Matching::new(g, edges.iter().copied()).unwrap();
        let plan = bt
            .bowtie_extend(&m)
            .unwrap_or_else(|e| panic!("{edges:?}: {e}"));
        assert!(verify_matching(g, &plan.matching, MatchingKind::Perfect));
        assert!(plan.matching.contains_all(&m));
        count += 1;
    });
    count
}

#[test]
fn bowtie_extends_every_three_matching_n5() {
    let g = Bowtie::new(5).unwrap();
    assert_eq!(
        bowtie_all_three_matchings(5) as u64,
        count_k_matchings(g.graph(), 3)
    );
}

#[test]
fn bowtie_extends_every_three_matching_n7() {
    let g = Bowtie::new(7).unwrap();
    assert_eq!(
        bowtie_all_three_matchings(7) as u64,
        count_k_matchings(g.graph(), 3)
    );
}

fn j_pairs(bt: &Bowtie) -> Vec<(usize, usize)> {
    let j = bt.j_set();
    bt.graph()
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| j.contains(u) && j.contains(v))
        .collect()
}

fn q_vertices(bt: &Bowtie) -> Vec<usize> {
    (1..=2 * bt.n() as i64).map(|j| bt.q(j)).collect()
}

fn check_lemma3(bt: &Bowtie, e: (usize, usize), qk: usize) {
    let pm = bt
        .lemma3_pm(e, qk)
        .unwrap_or_else(|err| panic!("{e:?} {qk}: {err}"));
    let j = bt.j_set();
    let expected: Vec<usize> = j
        .iter()
        .filter(|&v| v != e.0 && v != e.1 && v != qk)
        .collect();
    let covered = pm.vertices();
    assert_eq!(covered.as_slice(), &expected[..]);
    assert!(pm.edges().iter().all(|&(u, v)| bt.graph().has_edge(u, v)));
}

fn check_lemma4(bt: &Bowtie, e0: (usize, usize), m2: &Matching) {
    let (near, un) = bt
        .lemma4_near_pm(e0, m2)
        .unwrap_or_else(|err| panic!("{e0:?} {:?}: {err}", m2.edges()));
    let j = bt.j_set();
    let covered = near.vertices();
    assert_eq!(covered.len() + 1, j.len());
    assert!(!covered.contains(un) && j.contains(un));
    assert!(q_vertices(bt).contains(&un));
    assert!(covered.contains(e0.0) && covered.contains(e0.1));
    assert!(near.contains_all(m2));
}

fn q_edges(bt: &Bowtie) -> Vec<(usize, usize)> {
    let q = q_vertices(bt);
    j_pairs(bt)
        .into_iter()
        .filter(|&(u, v)| q.contains(&u) && q.contains(&v))
        .collect()
}

#[test]
fn lemma3_and_lemma4_contracts_at_n5() {
    let bt = Bowtie::new(5).unwrap();
    let pairs = j_pairs(&bt);
    for &e in &pairs {
        for qk in q_vertices(&bt) {
            if qk != e.0 && qk != e.1 {
                check_lemma3(&bt, e, qk);
            }
        }
    }
    let g = bt.graph();
    for (a, &e1) in pairs.iter().enumerate() {
        for &e2 in &pairs[a + 1..] {
            let Ok(m2) = Matching::new(g, [e1, e2]) else {
                continue;
            };
            for e0 in q_edges(&bt) {
                check_lemma4(&bt, e0, &m2);
            }
        }
    }
}

#[test]
fn lemma3_and_lemma4_contracts_sampled_at_n7_n9() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [7, 9] {
        let bt = Bowtie::new(n).unwrap();
        let pairs = j_pairs(&bt);
        let qs = q_vertices(&bt);
        let qe = q_edges(&bt);
        let mut done = 0;
        while done < 1000 {
            let e = *pairs.choose(&mut rng).unwrap();
            let qk = *qs.choose(&mut rng).unwrap();
            if qk != e.0 && qk != e.1 {
                check_lemma3(&bt, e, qk);
                done += 1;
            }
        }
        let mut done = 0;
        while done < 1000 {
            let e1 = *pairs.choose(&mut rng).unwrap();
            let e2 = *pairs.choose(&mut rng).unwrap();
            let Ok(m2) = Matching::new(bt.graph(), [e1, e2]) else {
                continue;
            };
            if m2.len() != 2 {
                continue;
            }
            check_lemma4(&bt, *qe.choose(&mut rng).unwrap(), &m2);
            done += 1;
        }
    }
}

fn separator_on_all(rows: Factor, cols: Factor, k: usize) {
    let g = grid_product(rows, cols).unwrap();
    for_each_k_matching(&g, k, |edges| {
        let m = Matching::new(&g, edges.iter().copied()).unwrap();
        let run =
            separator_extend(&g, &m).unwrap_or_else(|e| panic!("{rows:?}x{cols:?} {edges:?}: {e}"));
        assert!(verify_matching(&g, &run.matching, MatchingKind::Perfect));
        assert!(run.matching.contains_all(&m));
    });
}

#[test]
fn separator_torus_c6_c5() {
    separator_on_all(Factor::Cycle(6), Factor::Cycle(5), 3);
}

#[test]
fn separator_torus_c6_c7() {
    separator_on_all(Factor::Cycle(6), Factor::Cycle(7), 3);
}

#[test]
fn separator_cylinders() {
    separator_on_all(Factor::Path(4), Factor::Cycle(5), 2);
    separator_on_all(Factor::Path(6), Factor::Cycle(5), 2);
    separator_on_all(Factor::Path(4), Factor::Cycle(7), 2);
}

#[test]
fn odd_cylinder_is_not_two_extendable() {
    let g = grid_product(Factor::Path(5), Factor::Cycle(5)).unwrap();
    assert!(!is_k_extendable(&g, 2).unwrap().verdict);
}

#[test]
fn c4cn_obstruction() {
    for (n, u, iso) in [(5, 6, 8), (7, 10, 12)] {
        let w = c4cn_witness(n).unwrap();
        assert_eq!((w.u.len(), w.isolated), (u, iso));
        let rest = w.graph.remove_vertices(&w.matching.vertices()).unwrap();
        assert!(tutte_violator(&rest.graph).unwrap().is_some());
    }
    let w = c4cn_witness(5).unwrap();
    let report = is_k_extendable(&w.graph, 3).unwrap();
    assert!(!report.verdict);
    assert!(
        extlab_core::matching::extend_to_perfect(&w.graph, &w.matching)
            .unwrap()
            .is_none()
    );
}
