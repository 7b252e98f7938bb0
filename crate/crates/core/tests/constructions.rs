use illumination::cap_body::{
    apex_margin, b2_single_spike_directions, b3_capbody_directions, b3_prism_apexes, cap_body_number_top_bottom,
    cap_body_number_top_only, incompatible_apexes, CapBody,
};
use illumination::geometry::vector::dot;
use illumination::geometry::{Ball, Tolerance};
use illumination::polygon::{smooth_2d_directions, SupportFunctionBody};
use illumination::verify::{verify_mfold, Body};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn single_spike_is_illuminated() {
    let tol = Tolerance::new(1e-6, 100_000).unwrap();
    for v in [[2f64.sqrt(), 0.0], [10.0, 0.0], [0.3, -1.2]] {
        let body = Body::CapBody(CapBody::new(2, vec![v.to_vec()]).unwrap());
        for m in 1..=4 {
            let u = b2_single_spike_directions(&v, m).unwrap();
            assert_eq!(u.total(), 2 * m + 1);
            let r = verify_mfold(&body, &u, m, &tol).unwrap();
            assert!(r.pass, "v={v:?} m={m} {r:?}");
        }
    }
}

#[test]
fn smooth_bodies_are_illuminated() {
    let tol = Tolerance::new(1e-6, 100_000).unwrap();
    for m in 1..=4 {
        let c = SupportFunctionBody::circle(1.0);
        let u = smooth_2d_directions(&c, m).unwrap();
        assert!(verify_mfold(&Body::Ball(Ball::new(2).unwrap()), &u, m, &tol).unwrap().pass);
        assert!(verify_mfold(&Body::Smooth(c), &u, m, &tol).unwrap().pass);
        let e = SupportFunctionBody::ellipse(2.0, 1.0);
        let u = smooth_2d_directions(&e, m).unwrap();
        let r = verify_mfold(&Body::Smooth(e), &u, m, &tol).unwrap();
        assert!(r.pass, "m={m} {r:?}");
    }
}

#[test]
fn prism_cap_bodies_match_formulas() {
    let tol = Tolerance::for_dim(3);
    for n in 3..=6 {
        for m in 1..=2 {
            for bottom in [false, true] {
                let c = b3_capbody_directions::<f64>(n, m, bottom, &tol).unwrap();
                let want = if bottom {
                    cap_body_number_top_bottom(n, m).unwrap()
                } else {
                    cap_body_number_top_only(n, m).unwrap()
                };
                assert_eq!(c.directions.total(), want, "n = {n}, m = {m}, bottom = {bottom}");
                assert!(c.report.pass);
                assert!(c.body.is_valid());
            }
        }
        let bipyramid = b3_capbody_directions::<f64>(4, 3, true, &tol).unwrap();
        assert_eq!(bipyramid.directions.total(), 18);
    }
}

/// A unit direction enters the spike at apex `v` iff it is within
/// `asin(1 / |v|)` of `-v`, the half-angle of the tangent cone.
fn enters_spike(v: &[f64], u: &[f64]) -> bool {
    let nv = dot(v, v).sqrt();
    let cos = -dot(u, v) / nv;
    cos.clamp(-1.0, 1.0).acos() < (1.0 / nv).asin()
}

#[test]
fn prism_top_apex_is_incompatible_with_the_rest() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for n in 3..=6 {
        let apexes = b3_prism_apexes::<f64>(n, true).unwrap();
        let top = &apexes[n];
        for (i, v) in apexes.iter().enumerate().filter(|&(i, _)| i != n) {
            assert!(incompatible_apexes(top, v), "n = {n}: apex {i}");
        }
        for _ in 0..100_000 {
            let u: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
            let len = dot(&u, &u).sqrt();
            if !(1e-3..=1.0).contains(&len) {
                continue;
            }
            let u: Vec<f64> = u.iter().map(|x| x / len).collect();
            for v in apexes.iter().filter(|v| *v != top) {
                assert!(!(enters_spike(top, &u) && enters_spike(v, &u)));
            }
            for v in &apexes {
                assert_eq!(enters_spike(v, &u), apex_margin(v, &u) > 0.0);
            }
        }
    }
}
