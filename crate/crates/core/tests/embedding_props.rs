use extlab_core::embedding::{bowtie_rotation_n2, k5_torus, planar_k4};
use extlab_core::generators::{bowtie, complete, grid_product, petersen, Factor};
use extlab_core::surfaces::{control_bound_holds, Surface};
use extlab_core::{Graph, Rational, RotationSystem};
use proptest::prelude::*;
use proptest::sample::Index;

fn incident_edges(g: &Graph, v: usize) -> Vec<usize> {
    g.adjacent(v)
        .iter()
        .map(|&w| g.edge_id(v, w).unwrap())
        .collect()
}

fn random_system(g: &Graph, picks: &[Index], flips: &[bool]) -> RotationSystem {
    let mut k = 0;
    let rotations = g
        .vertices()
        .map(|v| {
            let mut pool = incident_edges(g, v);
            let mut rot = Vec::with_capacity(pool.len());
            while !pool.is_empty() {
                rot.push(pool.remove(picks[k % picks.len()].index(pool.len())));
                k += 1;
            }
            rot
        })
        .collect();
    let signs = (0..g.size())
        .map(|e| if flips[e % flips.len()] { -1 } else { 1 })
        .collect();
    RotationSystem::new(g, rotations, signs).unwrap()
}

fn face_profile(rs: &RotationSystem) -> Vec<usize> {
    let mut sizes = rs.trace_faces().face_sizes;
    sizes.sort();
    sizes
}

fn check_invariants(rs: &RotationSystem) {
    let g = rs.graph();
    let faces = rs.trace_faces();
    assert_eq!(faces.face_sizes.iter().sum::<usize>(), 2 * g.size());
    let mut uses = vec![0usize; g.size()];
    for face in &faces.faces {
        for d in face {
            uses[d.edge] += 1;
        }
    }
    assert!(uses.iter().all(|&u| u == 2), "edge uses {uses:?}");

    let chi = g.order() as i64 - g.size() as i64 + faces.len() as i64;
    assert_eq!(rs.euler_characteristic(), chi);

    let rep = rs.euler_contributions::<Rational>();
    let total: Rational = rep.phi.iter().sum();
    assert_eq!(total, Rational::from_integer(chi));
    let v = rep.control_point;
    assert!(rep.phi[v] >= Rational::new(chi, g.order() as i64));
    assert!(rep.phi.iter().all(|p| *p <= rep.phi[v]));
    assert!(control_bound_holds(
        g.degree(v) as i64,
        rep.triangles_at[v] as i64,
        chi,
        g.order() as i64
    )
    .unwrap());
}

fn graphs() -> Vec<Graph> {
    vec![
        complete(4).unwrap(),
        complete(5).unwrap(),
        petersen(),
        bowtie(6, 3).unwrap(),
        grid_product(Factor::Cycle(4), Factor::Cycle(4)).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_systems_satisfy_invariants(
        which in 0..5usize,
        picks in prop::collection::vec(any::<Index>(), 1..40),
        flips in prop::collection::vec(any::<bool>(), 1..40),
    ) {
        let g = &graphs()[which];
        check_invariants(&random_system(g, &picks, &flips));
    }

    #[test]
    fn local_switches_keep_the_embedding(
        which in 0..5usize,
        picks in prop::collection::vec(any::<Index>(), 1..40),
        flips in prop::collection::vec(any::<bool>(), 1..40),
        switches in prop::collection::vec(any::<Index>(), 1..6),
    ) {
        let g = &graphs()[which];
        let mut rs = random_system(g, &picks, &flips);
        let (profile, orientable) = (face_profile(&rs), rs.is_orientable());
        for s in switches {
            rs.local_switch(s.index(g.order()));
        }
        prop_assert_eq!(face_profile(&rs), profile);
        prop_assert_eq!(rs.is_orientable(), orientable);
    }

    #[test]
    fn all_plus_systems_are_orientable(which in 0..5usize, picks in prop::collection::vec(any::<Index>(), 1..40)) {
        let g = &graphs()[which];
        let rs = random_system(g, &picks, &[false]);
        prop_assert!(rs.is_orientable());
        prop_assert_eq!(rs.euler_characteristic() % 2, 0);
    }
}

#[test]
fn fixtures_satisfy_invariants() {
    for n in [5, 7, 9, 11] {
        let rs = bowtie_rotation_n2(n).unwrap();
        check_invariants(&rs);
        assert!(rs
            .verify_embedding(&Surface::nonorientable(2).unwrap())
            .unwrap());
    }
    check_invariants(&planar_k4());
    check_invariants(&k5_torus());
}

#[test]
fn json_round_trip_keeps_faces() {
    let rs = bowtie_rotation_n2(5).unwrap();
    let back = RotationSystem::from_json(rs.graph(), &rs.to_json()).unwrap();
    assert_eq!(face_profile(&back), face_profile(&rs));
    assert_eq!(back.is_orientable(), rs.is_orientable());
}
