mod common;

use common::{brute_force_number, perturbed_equiangular, random_polygon, random_zonogon, vertex_counts};
use illumination::geometry::{DirectionMultiset, Vec2};
use illumination::polygon::{
    check_consecutive_angle_condition, check_grouped_angle_condition, find_grouping, illumination_number_polygon,
    regular_polygon_number,
};
use illumination::verify::verify_polygon;
use illumination::{Rational, RationalPolygon};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}

fn optimum(p: &RationalPolygon, m: usize) -> usize {
    illumination_number_polygon(p, m).unwrap().optimum
}

fn polygon(seed: u64, k: usize, zonogon: bool) -> RationalPolygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if zonogon {
        random_zonogon(&mut rng, k)
    } else {
        random_polygon(&mut rng, k)
    }
}

#[test]
fn solver_matches_regular_formula() {
    for n in 3..=12 {
        let p = RationalPolygon::regular(n).unwrap();
        for m in 1..=4 {
            assert_eq!(optimum(&p, m), regular_polygon_number(n, m).unwrap(), "n = {n}, m = {m}");
        }
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn lower_bound_subadditivity_and_scaling(seed in any::<u64>(), k in 3usize..=10, zonogon in any::<bool>()) {
        let p = polygon(seed, k, zonogon);
        let v: Vec<usize> = (1..=3).map(|m| optimum(&p, m)).collect();
        for m in 1..=3 {
            prop_assert!(v[m - 1] >= 2 * m + 1);
            prop_assert!(v[m - 1] <= m * v[0]);
        }
        prop_assert!(v[1] <= 2 * v[0]);
        prop_assert!(v[2] <= v[0] + v[1]);
    }

    #[test]
    fn solver_matches_brute_force(seed in any::<u64>(), k in 3usize..=7, m in 1usize..=2) {
        let p = polygon(seed, k, false);
        prop_assume!(p.len() <= 7);
        prop_assert_eq!(optimum(&p, m), brute_force_number(&p, m));
    }

    #[test]
    fn zonogons_agree_with_brute_force(seed in any::<u64>(), k in 2usize..=3, m in 1usize..=2) {
        let p = polygon(seed, k, true);
        prop_assert_eq!(optimum(&p, m), brute_force_number(&p, m));
    }

    #[test]
    fn solutions_verify_exactly(seed in any::<u64>(), k in 3usize..=12, m in 1usize..=4) {
        let p = polygon(seed, k, false);
        let sol = illumination_number_polygon(&p, m).unwrap();
        let dirs = sol.directions().unwrap();
        prop_assert_eq!(dirs.total(), sol.optimum);
        prop_assert!(verify_polygon(&p, &dirs, m).unwrap().pass);
        let floats: Vec<[f64; 2]> = dirs.expanded().map(|d| d.as_vec2().to_f64()).collect();
        prop_assert!(vertex_counts(&p, &floats).iter().all(|&c| c >= m));
    }

    #[test]
    fn consecutive_condition_is_sufficient(seed in any::<u64>(), m in 2usize..=4, jitter in 0.0f64..0.6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = perturbed_equiangular(&mut rng, 2 * m + 1, jitter);
        prop_assume!(p.is_some());
        let p = p.unwrap();
        if check_consecutive_angle_condition(&p, m).unwrap() {
            prop_assert_eq!(optimum(&p, m), 2 * m + 1);
        }
    }

    #[test]
    fn grouped_condition_is_sufficient(seed in any::<u64>(), m in 1usize..=2, extra in 0usize..=4, jitter in 0.0f64..0.5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = perturbed_equiangular(&mut rng, 2 * m + 1 + extra, jitter);
        prop_assume!(p.is_some());
        let p = p.unwrap();
        if let Some(b) = find_grouping(&p, m).unwrap() {
            prop_assert!(check_grouped_angle_condition(&p, m, &b).unwrap());
            prop_assert_eq!(optimum(&p, m), 2 * m + 1);
        }
    }

    #[test]
    fn vertices_dominate_edges(seed in any::<u64>(), k in 3usize..=10, dirs in 1usize..=12, m in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_polygon(&mut rng, k);
        let mut u = DirectionMultiset::new();
        for _ in 0..dirs {
            let (x, y): (i64, i64) = (rng.random_range(-50..=50), rng.random_range(-50..=50));
            if (x, y) != (0, 0) {
                let d = Vec2::new(Rational::from_integer(x.into()), Rational::from_integer(y.into()));
                u.push(illumination::geometry::Direction::from_vec2(&d).unwrap(), 1);
            }
        }
        let vertex_ok = (0..p.len()).all(|i| {
            u.expanded().filter(|d| p.illuminates_by_direction(p.vertex(i), &d.as_vec2()).unwrap()).count() >= m
        });
        if vertex_ok {
            for i in 0..p.len() {
                for t in 1..=10 {
                    let s = Rational::new(BigInt::from(t), BigInt::from(11));
                    let q = p.vertex(i).add(&p.edge(i).scale(&s));
                    let c = u.expanded().filter(|d| p.illuminates_by_direction(&q, &d.as_vec2()).unwrap()).count();
                    prop_assert!(c >= m, "edge {i} point {t}/11 has count {c}");
                }
            }
        }
    }
}

#[test]
fn triangles_and_parallelograms() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let tri = random_polygon(&mut rng, 3);
        let par = random_zonogon(&mut rng, 2);
        for m in 1..=4 {
            if tri.len() == 3 {
                assert_eq!(optimum(&tri, m), 3 * m);
            }
            if par.len() == 4 {
                assert_eq!(optimum(&par, m), 4 * m);
            }
        }
    }
}

#[test]
fn conditions_fire_on_mild_perturbations() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let (mut consecutive, mut grouped) = (0, 0);
    for trial in 0..200 {
        let m = 2 + trial % 3;
        if let Some(p) = perturbed_equiangular(&mut rng, 2 * m + 1, 0.3) {
            if check_consecutive_angle_condition(&p, m).unwrap() {
                consecutive += 1;
                assert_eq!(optimum(&p, m), 2 * m + 1);
            }
        }
        if let Some(p) = perturbed_equiangular(&mut rng, 2 * m + 3, 0.3) {
            if let Some(b) = find_grouping(&p, m).unwrap() {
                assert!(check_grouped_angle_condition(&p, m, &b).unwrap());
                grouped += 1;
                assert_eq!(optimum(&p, m), 2 * m + 1);
            }
        }
    }
    eprintln!("consecutive condition held {consecutive}/200, grouping found {grouped}/200");
    assert!(consecutive > 50 && grouped > 20);
}
