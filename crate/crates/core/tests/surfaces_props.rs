use extlab_core::surfaces::{
    euler_characteristic, genus_complete, mu, mu_nk, mu_prime, nonorientable_genus_complete,
    Surface,
};

fn surfaces(min_chi: i64) -> Vec<Surface> {
    let mut out = vec![Surface::sphere()];
    for g in 1..=(2 - min_chi) as u32 {
        if 2 - 2 * i64::from(g) >= min_chi {
            out.push(Surface::orientable(g));
        }
        out.push(Surface::nonorientable(g).unwrap());
    }
    out
}

/// Largest `t` with `4t - a <= sqrt(d)`, by exact integer search.
fn floor_quarter_by_search(a: i64, d: i64) -> i64 {
    let fits = |t: i64| 4 * t - a <= 0 || (4 * t - a).pow(2) <= d;
    let mut t = (a + d + 4) / 4 + 1;
    while !fits(t) {
        t -= 1;
    }
    t
}

#[test]
fn mu_prime_never_exceeds_mu() {
    for s in surfaces(-50) {
        assert!(mu_prime(&s).unwrap() <= mu(&s).unwrap(), "{s}");
    }
}

#[test]
fn mu_and_mu_prime_grow_as_chi_drops() {
    let mut last = (0, 0);
    for chi in (-50..=0).rev() {
        let s = Surface::with_characteristic(chi).unwrap();
        let now = (mu(&s).unwrap(), mu_prime(&s).unwrap());
        assert!(now.0 >= last.0 && now.1 >= last.1, "chi={chi}");
        last = now;
    }
}

#[test]
fn mu_nk_matches_exact_search() {
    for s in surfaces(-30) {
        let chi = euler_characteristic(&s).unwrap();
        for n in 1..=10 {
            let expected = if s.is_sphere() {
                0.max(3 - (n + 1) / 2)
            } else {
                0.max(floor_quarter_by_search(7 - 2 * n, 49 - 24 * chi))
            };
            assert_eq!(mu_nk(n, &s).unwrap(), expected, "n={n}, {s}");
        }
    }
}

#[test]
fn mu_prime_matches_exact_search_away_from_small_surfaces() {
    for s in surfaces(-50) {
        let chi = euler_characteristic(&s).unwrap();
        if chi <= -2 {
            assert_eq!(
                mu_prime(&s).unwrap(),
                floor_quarter_by_search(7, 49 - 24 * chi),
                "{s}"
            );
        }
    }
}

#[test]
fn complete_graph_genera_match_ceilings() {
    for n in 5..=50i64 {
        let p = (n - 3) * (n - 4);
        assert_eq!(genus_complete(n).unwrap(), (p + 11) / 12);
        let expected = if n == 7 { 3 } else { (p + 5) / 6 };
        assert_eq!(nonorientable_genus_complete(n).unwrap(), expected);
    }
}

#[test]
fn characteristic_round_trip() {
    for s in surfaces(-40) {
        let chi = euler_characteristic(&s).unwrap();
        let back = Surface::with_characteristic(chi).unwrap();
        assert_eq!(euler_characteristic(&back).unwrap(), chi);
        assert_eq!(Surface::parse(&s.to_string()).unwrap(), s);
    }
}
