use std::collections::BTreeMap;

use wsec_core::adapted::construct_candidate;
use wsec_core::characters::{
    degree_sum_check, delta_weight, epsilon_gamma, improved_multiset, improved_upper_bound,
    in_b_pi, lower_bound, upper_bound, weierstrass_verdict, weight_degree_table, weight_string,
    Route, Source,
};
use wsec_core::linalg::{frac, q};
use wsec_core::parabolic::{all_named_cases, ParabolicCase, Recipe, TruncatedParabolic};
use wsec_core::Family;

fn raw(family: Family, n: usize, del: &[usize]) -> TruncatedParabolic {
    TruncatedParabolic::new(ParabolicCase::Raw {
        family,
        n,
        deleted: del.iter().copied().collect(),
    })
    .unwrap()
}

fn tp(c: ParabolicCase) -> TruncatedParabolic {
    TruncatedParabolic::new(c).unwrap()
}

fn coeffs(v: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    v.iter().copied().collect()
}

/// `(source, weight, degree)` rows of the generator table.
fn table(p: &TruncatedParabolic) -> Vec<(String, String, usize)> {
    let c = construct_candidate(p).unwrap();
    let v = weierstrass_verdict(Some(&c), p);
    weight_degree_table(&c, p, v.route)
        .unwrap()
        .into_iter()
        .map(|g| {
            let src = match g.source {
                Source::Orbit(o) => format!("{o:?}"),
                Source::TRoot(r) => r.to_string(),
            };
            (src, weight_string(p, &g.weight), g.degree)
        })
        .collect()
}

fn row(a: &str, b: &str, d: usize) -> (String, String, usize) {
    (a.into(), b.into(), d)
}

#[test]
fn delta_weights_of_b6() {
    let p = raw(Family::B, 6, &[2, 4]);
    let w: Vec<String> = p
        .orbits()
        .iter()
        .map(|o| weight_string(&p, &delta_weight(&p, &o.members)))
        .collect();
    assert_eq!(
        w,
        ["-w2", "-2w2", "-w2-w4", "-2w4", "-2w4", "-w4"].map(String::from)
    );
}

#[test]
fn weight_monoid_membership() {
    let b = raw(Family::B, 6, &[2, 4]);
    assert!(in_b_pi(&b, &coeffs(&[(2, 1)])));
    assert!(!in_b_pi(&b, &coeffs(&[(2, 1), (3, 1)])));
    assert!(in_b_pi(&b, &coeffs(&[(3, 2)])));
    assert!(in_b_pi(&b, &BTreeMap::new()));
    let d = raw(Family::D, 9, &[8, 9]);
    assert!(!in_b_pi(&d, &coeffs(&[(8, 1)])));
    assert!(in_b_pi(&d, &coeffs(&[(8, 1), (9, 1)])));
}

#[test]
fn epsilon_factors() {
    let b6 = raw(Family::B, 6, &[2, 4]);
    let half = weierstrass_verdict(None, &b6).half_orbits;
    assert_eq!(half, vec![vec![2], vec![4]]);
    let fork = tp(ParabolicCase::PL { n: 9, ell: 1 });
    assert_eq!(fork.named().unwrap().recipe, Recipe::ForkOddP1);
    assert_eq!(epsilon_gamma(&fork, &[6]), frac(1, 2));
    for c in all_named_cases(10) {
        let p = tp(c.clone());
        if matches!(
            p.named().unwrap().recipe,
            Recipe::OddB | Recipe::Q | Recipe::Symplectic
        ) {
            assert!(
                p.orbits()
                    .iter()
                    .all(|o| epsilon_gamma(&p, &o.members) == q(1)),
                "{c}"
            );
            assert_eq!(lower_bound(&p), upper_bound(&p), "{c}");
        }
    }
}

#[test]
fn improved_bound_meets_the_lower_bound() {
    for p in [
        raw(Family::B, 6, &[2, 4]),
        tp(ParabolicCase::PL { n: 9, ell: 1 }),
        raw(Family::D, 8, &[2, 4]),
    ] {
        let c = construct_candidate(&p).unwrap();
        let imps = improved_upper_bound(&c, &p).unwrap();
        assert_eq!(imps.len(), p.index_by_orbits());
        assert!(imps.iter().all(|i| i.natural()));
        assert_eq!(improved_multiset(&imps), lower_bound(&p));
        assert_ne!(upper_bound(&p), lower_bound(&p));
        for i in &imps {
            assert_eq!(
                i.size(),
                i.root
                    .pair(c.clone().solved(&p).unwrap().h.as_ref().unwrap())
            );
        }
    }
}

#[test]
fn routes() {
    let c6 = tp(ParabolicCase::P {
        family: Family::C,
        n: 6,
        s: 2,
        ell: 1,
    });
    let cand = construct_candidate(&c6).unwrap();
    assert_eq!(weierstrass_verdict(Some(&cand), &c6).route, Route::A);
    let d8 = tp(ParabolicCase::P {
        family: Family::D,
        n: 8,
        s: 2,
        ell: 1,
    });
    let cand = construct_candidate(&d8).unwrap();
    let v = weierstrass_verdict(Some(&cand), &d8);
    assert_eq!((v.verdict, v.route), (true, Route::B));
    let v = weierstrass_verdict(None, &raw(Family::B, 8, &[2, 4, 6]));
    assert_eq!((v.verdict, v.route), (false, Route::Inconclusive));
}

#[test]
fn fork_case_table() {
    let p = tp(ParabolicCase::PL { n: 9, ell: 1 });
    let t = table(&p);
    assert_eq!(t.len(), 7);
    assert!(t.contains(&row("-e7+e8", "-w6-w8-w9", 9)));
    assert!(t.contains(&row("e8-e9", "-w8-w9", 5)));
    assert!(t.contains(&row("e6+e8", "-w8-w9", 4)));
    let c = construct_candidate(&p).unwrap();
    let sum = degree_sum_check(&weight_degree_table(&c, &p, Route::B).unwrap(), &p);
    assert_eq!((sum.sum, sum.magic, sum.equal), (51, Some(51), true));
}

#[test]
fn route_a_table_of_b7() {
    let p = tp(ParabolicCase::P {
        family: Family::B,
        n: 7,
        s: 3,
        ell: 1,
    });
    assert_eq!(
        table(&p),
        vec![
            row("[1, 2]", "-2w3", 6),
            row("[3]", "-2w3", 4),
            row("[4]", "-w3-w5", 5),
            row("[5]", "-2w5", 6),
            row("[6]", "-2w5", 8),
            row("[7]", "-w5", 5),
        ]
    );
}

#[test]
fn route_b_table_of_d8() {
    let p = tp(ParabolicCase::P {
        family: Family::D,
        n: 8,
        s: 2,
        ell: 1,
    });
    let t = table(&p);
    assert_eq!(t.len(), 8);
    assert_eq!(t[0], row("e1+e2", "-w2", 1));
    assert_eq!(t[7], row("-e7+e8", "-w4", 6));
    assert_eq!(
        t.iter().map(|r| r.2).sum::<usize>(),
        p.magic_number().unwrap()
    );
}

#[test]
fn degree_sums_of_small_cases() {
    for c in all_named_cases(7) {
        let p = tp(c.clone());
        let cand = construct_candidate(&p).unwrap();
        let v = weierstrass_verdict(Some(&cand), &p);
        let t = weight_degree_table(&cand, &p, v.route).unwrap();
        assert_eq!(t.len(), p.index_by_orbits(), "{c}");
        assert!(degree_sum_check(&t, &p).equal, "{c}");
    }
}
