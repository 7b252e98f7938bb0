//! Executable checks of structural facts about spikes and caps of the unit
//! ball, each run on seeded random samples.
//!
//! Every check compares a library predicate against an independent
//! formulation (hull sampling, point-source rays, line-ball distance), so a
//! failure points at a predicate rather than at the sampler.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cap_body::{
    b2_single_spike_directions, b3_prism_apexes, closed_cap_of_ball, in_open_cap, in_spike,
    incompatible_apexes, CapBody,
};
use crate::geometry::vector::{angle_between, dot, norm, normalized};
use crate::geometry::{Ball, Direction, DirectionMultiset, Tolerance};
use crate::verify::{verify_mfold, Body};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaOutcome {
    pub name: String,
    pub pass: bool,
    pub samples: usize,
    pub failures: usize,
    pub seed: u64,
    pub detail: String,
}

type Check = fn(&mut ChaCha8Rng, usize) -> (usize, usize, String);

/// Names and checks, in the order they are run.
pub const LEMMAS: &[(&str, Check)] = &[
    ("hull-equality", hull_equality),
    ("spike-monotonicity", spike_monotonicity),
    ("cap-identity", cap_identity),
    ("cap-transfer", cap_transfer),
    ("spike-transfer", spike_transfer),
    ("cap-monotonicity", cap_monotonicity),
    ("closed-cap-transfer", closed_cap_transfer),
    ("monotone-illumination", monotone_illumination),
    ("apex-incompatibility", apex_incompatibility),
];

/// Runs every check with `samples` random trials; check `i` uses seed `seed + i`.
pub fn run_lemma_suite(seed: u64, samples: usize) -> Vec<LemmaOutcome> {
    LEMMAS
        .iter()
        .enumerate()
        .map(|(i, (name, check))| {
            let s = seed.wrapping_add(i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let (n, failures, detail) = check(&mut rng, samples);
            LemmaOutcome {
                name: name.to_string(),
                pass: failures == 0 && n > 0,
                samples: n,
                failures,
                seed: s,
                detail,
            }
        })
        .collect()
}

fn unit(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let n = norm(&v);
        if n > 1e-3 && n <= 1.0 {
            return normalized(&v);
        }
    }
}

fn in_ball(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        if norm(&v) < 1.0 {
            return v;
        }
    }
}

fn apex(rng: &mut ChaCha8Rng, d: usize, max: f64) -> Vec<f64> {
    let r = rng.random_range(1.02..max);
    unit(rng, d).into_iter().map(|x| x * r).collect()
}

fn dim(rng: &mut ChaCha8Rng) -> usize {
    if rng.random_bool(0.5) {
        2
    } else {
        3
    }
}

fn mix(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| (1.0 - t) * x + t * y).collect()
}

/// A point of `conv(B ∪ {v})`: a ball point pushed towards `v`.
fn hull_point(rng: &mut ChaCha8Rng, v: &[f64]) -> Vec<f64> {
    let t = in_ball(rng, v.len());
    mix(&t, v, rng.random::<f64>())
}

/// A point of the spike of `v`, strictly outside the ball.
fn spike_point(rng: &mut ChaCha8Rng, v: &[f64]) -> Vec<f64> {
    loop {
        let p = hull_point(rng, v);
        if norm(&p) > 1.0 + 1e-9 {
            return p;
        }
    }
}

/// Direction-from-apex test written without caps: the ray from `v` along
/// `u` enters the open ball.
fn ray_enters_ball(v: &[f64], u: &[f64]) -> bool {
    let uv = dot(u, v);
    uv < 0.0 && dot(v, v) - uv * uv / dot(u, u) < 1.0
}

/// A direction illuminating the apex `v` of its spike, with some room.
fn apex_direction(rng: &mut ChaCha8Rng, v: &[f64]) -> Vec<f64> {
    loop {
        let u = unit(rng, v.len());
        let uv = dot(&u, v);
        if uv < 0.0 && dot(v, v) - uv * uv < 1.0 - 1e-6 {
            return u;
        }
    }
}

fn valid_body(rng: &mut ChaCha8Rng, d: usize) -> CapBody<f64> {
    loop {
        let k = rng.random_range(2..=5);
        let apexes = (0..k).map(|_| apex(rng, d, 1.6)).collect();
        let body = CapBody::new(d, apexes).expect("apexes outside ball");
        if body.is_valid() {
            return body;
        }
    }
}

fn hull_equality(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize, String) {
    let mut failures = 0;
    for _ in 0..n {
        let d = dim(rng);
        let body = valid_body(rng, d);
        // random point of conv(B ∪ V): convex combination of a ball point and the apexes
        let mut w: Vec<f64> = (0..=body.apexes().len()).map(|_| -rng.random::<f64>().ln()).collect();
        let total: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= total);
        let mut p: Vec<f64> = in_ball(rng, d).into_iter().map(|x| x * w[0]).collect();
        for (v, wi) in body.apexes().iter().zip(&w[1..]) {
            p.iter_mut().zip(v).for_each(|(a, b)| *a += wi * b);
        }
        if !body.contains(&p) {
            failures += 1;
        }
    }
    (n, failures, "conv(B ∪ V) sample outside the union of single-apex hulls".into())
}

fn spike_monotonicity(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize, String) {
    let mut failures = 0;
    for _ in 0..n {
        let d = dim(rng);
        let v = apex(rng, d, 3.0);
        let w = spike_point(rng, &v);
        let p = hull_point(rng, &w);
        if !(norm(&p) <= 1.0 || in_spike(&v, &p)) {
            failures += 1;
        }
    }
    (n, failures, "point of conv(B ∪ {v'}) outside conv(B ∪ {v}) for v' in the spike of v".into())
}

fn cap_identity(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize, String) {
    let ball2 = Ball::new(2).expect("d >= 2");
    let ball3 = Ball::new(3).expect("d >= 2");
    let tol = Tolerance::new(1e-9, 1).expect("valid tolerance");
    let exact = Tolerance::new(0.0, 1).expect("valid tolerance");
    let mut failures = 0;
    let mut done = 0;
    while done < n {
        let d = dim(rng);
        let v = apex(rng, d, 3.0);
        let p = unit(rng, d);
        if (dot(&p, &v) - 1.0).abs() < 1e-9 {
            continue;
        }
        done += 1;
        let ball = if d == 2 { ball2 } else { ball3 };
        let cap = in_open_cap(&v, &p, &tol).expect("p on sphere");
        let lit = ball.illuminates_by_point(&v, &p, &exact).expect("v outside");
        if cap != (dot(&p, &v) > 1.0) || cap != lit {
            failures += 1;
        }
    }
    (n, failures, "open cap, <p, v> > 1 and point-source illumination disagree".into())
}

fn cap_transfer(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize, String) {
    let mut failures = 0;
    for _ in 0..n {
        let d = dim(rng);
        let v = apex(rng, d, 3.0);
        let u = apex_direction(rng, &v);
        assert!(ray_enters_ball(&v, &u));
        let p = loop {
            let p = unit(rng, d);
            if dot(&p, &v) > 1.0 {
                break p;
            }
        };
        if !(dot(&u, &p) < 0.0) {
            failures += 1;
        }
    }
    (n, failures, "direction illuminating v misses a point of its open cap".into())
}

fn closed_cap_transfer(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize, String) {
    let mut failures = 0;
    for _ in 0..n {
        let d = dim(rng);
        let v = apex(rng, d, 3.0);
        let u = apex_direction(rng, &v);
        let cap = closed_cap_of_ball(&v).expect("outside ball");
        // a point of the closed cap, on the tangency sphere half the time
        let axis = &cap.center;
        let w = loop {
            let w = unit(rng, d);
            let off: Vec<f64> = w.iter().zip(axis).map(|(a, b)| a - dot(&w, axis) * b).collect();
            if norm(&off) > 1e-3 {
                break normalized(&off);
            }
        };
        let angle = if rng.random_bool(0.5) {
            cap.radius
        } else {
            rng.random_range(0.0..cap.radius)
        };
        let p: Vec<f64> = axis
            .iter()
            .zip(&w)
            .map(|(a, b)| angle.cos() * a + angle.sin() * b)
            .collect();
        if !(-dot(&u, &p) > -1e-12) {
            failures += 1;
        }
    }
    (n, failures, "direction illuminating v misses a point of its closed cap".into())
}

fn spike_transfer(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize, String) {
    let mut failures = 0;
    for _ in 0..n {
        let d = dim(rng);
        let v = apex(rng, d, 3.0);
        let u = apex_direction(rng, &v);
        let s = spike_point(rng, &v);
        if !ray_enters_ball(&s, &u) {
            failures += 1;
        }
    }
    (n, failures, "direction illuminating v fails at a spike point s w.r.t. conv(B ∪ {s})".into())
}

fn cap_monotonicity(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize, String) {
    let mut failures = 0;
    for _ in 0..n {
        let d = dim(rng);
        let v = apex(rng, d, 3.0);
        let w = spike_point(rng, &v);
        let p = unit(rng, d);
        let open_ok = !(dot(&p, &w) > 1.0) || dot(&p, &v) > 1.0;
        let cv = closed_cap_of_ball(&v).expect("outside");
        let cw = closed_cap_of_ball(&w).expect("outside");
        let closed_ok = angle_between(&cv.center, &cw.center) + cw.radius <= cv.radius + 1e-9;
        if !(open_ok && closed_ok) {
            failures += 1;
        }
    }
    (n, failures, "cap of a spike point not inside the cap of the apex".into())
}

fn monotone_illumination(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize, String) {
    let tol = Tolerance::new(1e-6, 20_000).expect("valid tolerance");
    let trials = (n / 100).max(4);
    let mut failures = 0;
    for t in 0..trials {
        let m = 1 + t % 3;
        let v = apex(rng, 2, 4.0);
        let u = b2_single_spike_directions(&v, m).expect("valid apex");
        let big = Body::CapBody(CapBody::new(2, vec![v.clone()]).expect("outside"));
        if !verify_mfold(&big, &u, m, &tol).expect("verifiable").pass {
            failures += 1;
            continue;
        }
        let smaller = [
            Body::Ball(Ball::new(2).expect("d >= 2")),
            Body::CapBody(CapBody::new(2, vec![spike_point(rng, &v)]).expect("outside")),
        ];
        for body in &smaller {
            if !verify_mfold(body, &u, m, &tol).expect("verifiable").pass {
                failures += 1;
            }
        }
    }
    // a 3-dimensional prism body and its sub-bodies
    let apexes = b3_prism_apexes::<f64>(4, true).expect("n >= 3");
    let mut dirs = DirectionMultiset::new();
    for a in &apexes {
        dirs.push(Direction::new(a.iter().map(|x| -x).collect()).expect("nonzero"), 1);
    }
    let sub = [
        apexes.clone(),
        apexes[..4].to_vec(),
        vec![apexes[0].clone(), apexes[4].clone()],
        vec![],
    ];
    for v in sub {
        let body = Body::CapBody(CapBody::new(3, v).expect("outside"));
        if !verify_mfold(&body, &dirs, 1, &tol).expect("verifiable").pass {
            failures += 1;
        }
    }
    (trials * 3 + 4, failures, "verified multiset fails on a cap body with fewer or inner apexes".into())
}

fn apex_incompatibility(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize, String) {
    let mut failures = 0;
    let mut pairs = Vec::new();
    for k in 3..=8 {
        let a = b3_prism_apexes::<f64>(k, false).expect("n >= 3");
        let top = a[k].clone();
        for q in &a[..k] {
            if !incompatible_apexes(q, &top) {
                failures += 1;
            }
            pairs.push((q.clone(), top.clone()));
        }
    }
    let draws = n * 50;
    for i in 0..draws {
        let (q, top) = &pairs[i % pairs.len()];
        let u = unit(rng, 3);
        if ray_enters_ball(q, &u) && ray_enters_ball(top, &u) {
            failures += 1;
        }
    }
    (draws, failures, "a direction illuminates both a ring apex and the top apex".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_small() {
        for o in run_lemma_suite(7, 200) {
            assert!(o.pass, "{o:?}");
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(run_lemma_suite(3, 100), run_lemma_suite(3, 100));
    }
}
