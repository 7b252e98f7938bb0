//! m-fold illumination verification.
//!
//! Polygons are checked exactly: a direction illuminates a vertex iff it
//! makes a negative inner product with both incident edge normals, and an
//! edge-interior point iff it does so with the edge normal. Curved bodies are
//! checked on deterministic boundary samples: a direction counts at a sample
//! only when its illumination score exceeds the margin `tau`, and a sample's
//! margin is the `m`-th largest score counted with multiplicity.

use std::cmp::Ordering;

use num_traits::FromPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cap_body::{apex_margin, CapBody};
use crate::error::{domain, precondition, Error, Result};
use crate::geometry::direction::DirectionMultiset;
use crate::geometry::sampling::polygon_boundary;
use crate::geometry::vector::{dot, lex_cmp, normalized, orthonormal_complement, Vec2};
use crate::geometry::{Ball, ConvexPolygon, SphereLattice, Tolerance};
use crate::polygon::SupportFunctionBody;
use crate::scalar::{to_f64, Real, Scalar};
use crate::Rational;

/// A convex body that can be verified.
#[derive(Debug, Clone)]
pub enum Body<R> {
    Polygon(ConvexPolygon<Rational>),
    Ball(Ball),
    CapBody(CapBody<R>),
    Smooth(SupportFunctionBody<R>),
}

impl<R: Real> Body<R> {
    pub fn dim(&self) -> usize {
        match self {
            Body::Polygon(_) | Body::Smooth(_) => 2,
            Body::Ball(b) => b.dim(),
            Body::CapBody(c) => c.dim(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IlluminationReport {
    pub pass: bool,
    pub m: usize,
    pub worst_point: Vec<f64>,
    pub worst_count: usize,
    pub worst_margin: f64,
    pub samples: usize,
}

#[derive(Debug, Clone)]
struct Eval<R> {
    margin: R,
    count: usize,
    point: Vec<R>,
}

fn worse<R: Real>(a: Eval<R>, b: Eval<R>) -> Eval<R> {
    let by_margin = a.margin.partial_cmp(&b.margin).unwrap_or(Ordering::Equal);
    match by_margin.then_with(|| lex_cmp(&a.point, &b.point)) {
        Ordering::Greater => b,
        _ => a,
    }
}

/// The `m`-th largest score with multiplicity, and how many directions
/// score above `tau`.
fn score_point<R: Real>(scores: &[R], mults: &[usize], m: usize, tau: R) -> (R, usize) {
    let count = scores
        .iter()
        .zip(mults)
        .filter(|(s, _)| **s > tau)
        .map(|(_, k)| k)
        .sum();
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&i, &j| scores[j].partial_cmp(&scores[i]).unwrap_or(Ordering::Equal));
    let mut seen = 0;
    for i in order {
        seen += mults[i];
        if seen >= m {
            return (scores[i], count);
        }
    }
    (-R::one(), count)
}

/// Reduces per-sample evaluations in parallel; the result does not depend
/// on evaluation order.
fn reduce_samples<R, F>(n: usize, m: usize, tau: R, mults: &[usize], sample: F) -> Option<(Eval<R>, usize)>
where
    R: Real,
    F: Fn(usize) -> Option<(Vec<R>, Vec<R>)> + Sync,
{
    (0..n)
        .into_par_iter()
        .filter_map(|i| {
            let (point, scores) = sample(i)?;
            let (margin, count) = score_point(&scores, mults, m, tau);
            Some((Eval { margin, count, point }, 1))
        })
        .reduce_with(|(a, na), (b, nb)| (worse(a, b), na + nb))
}

fn report<R: Real>(eval: Option<(Eval<R>, usize)>, m: usize) -> Result<IlluminationReport> {
    let (e, samples) = eval.ok_or_else(|| Error::Internal("no boundary samples".into()))?;
    Ok(IlluminationReport {
        pass: e.count >= m,
        m,
        worst_point: e.point.iter().map(|x| x.as_f64()).collect(),
        worst_count: e.count,
        worst_margin: e.margin.as_f64(),
        samples,
    })
}

/// Verifies that every boundary point is illuminated by at least `m`
/// directions of `dirs` (exactly for polygons, on samples otherwise).
pub fn verify_mfold<R: Real + Scalar>(
    body: &Body<R>,
    dirs: &DirectionMultiset<R>,
    m: usize,
    tol: &Tolerance<R>,
) -> Result<IlluminationReport> {
    if m == 0 {
        return domain("multiplicity must be positive");
    }
    if let Some(d) = dirs.dim() {
        if d != body.dim() {
            return precondition(format!("directions are {d}-dimensional, body is {}-dimensional", body.dim()));
        }
    }
    let units: Vec<(Vec<R>, usize)> = dirs.unit_vectors();
    let mults: Vec<usize> = units.iter().map(|(_, k)| *k).collect();
    let tau = tol.margin;
    let against = |normal: &[R]| -> Vec<R> { units.iter().map(|(u, _)| -dot(u, normal)).collect() };
    match body {
        Body::Polygon(poly) => {
            let mut exact = DirectionMultiset::new();
            for (d, k) in dirs.entries() {
                let c = d.as_vec2();
                let x = Rational::from_f64(to_f64(&c.x)).ok_or_else(|| Error::Precondition("non-finite direction".into()))?;
                let y = Rational::from_f64(to_f64(&c.y)).ok_or_else(|| Error::Precondition("non-finite direction".into()))?;
                exact.push_distinct(crate::geometry::Direction::from_vec2(&Vec2::new(x, y))?, *k);
            }
            verify_polygon(poly, &exact, m)
        }
        Body::Ball(ball) => {
            let lattice = SphereLattice::new(ball.dim(), tol.samples);
            report(
                reduce_samples(tol.samples, m, tau, &mults, |i| {
                    let p: Vec<R> = lattice.point(i);
                    let s = against(&p);
                    Some((p, s))
                }),
                m,
            )
        }
        Body::Smooth(k) => {
            let n = tol.samples;
            report(
                reduce_samples(n, m, tau, &mults, |i| {
                    let theta = R::TAU() * R::lit(i as f64) / R::lit(n as f64);
                    let (s, c) = theta.sin_cos();
                    let p = k.boundary_point(theta);
                    Some((p.to_vec(), against(&[c, s])))
                }),
                m,
            )
        }
        Body::CapBody(cb) => {
            if !cb.is_valid() {
                return Err(Error::UnsupportedBody(
                    "cap body has an apex pair whose segment misses the ball".into(),
                ));
            }
            let samples = cap_body_samples(cb, tol.samples);
            let apexes = cb.apexes();
            report(
                reduce_samples(samples.len(), m, tau, &mults, |i| match &samples[i] {
                    CapSample::Apex(j) => {
                        let v = &apexes[*j];
                        let s = units.iter().map(|(u, _)| apex_margin(v, u)).collect();
                        Some((v.clone(), s))
                    }
                    CapSample::Sphere(p) => Some((p.clone(), against(p))),
                }),
                m,
            )
        }
    }
}

enum CapSample<R> {
    Apex(usize),
    Sphere(Vec<R>),
}

/// Apexes, tangency spheres of each spike, and the exposed part of a sphere
/// lattice. Points on a spike's lateral surface have the normal of the
/// tangency point on the same generator, so they add no new conditions.
fn cap_body_samples<R: Real>(cb: &CapBody<R>, n: usize) -> Vec<CapSample<R>> {
    let d = cb.dim();
    let apexes = cb.apexes();
    let mut out: Vec<CapSample<R>> = (0..apexes.len()).map(CapSample::Apex).collect();
    let exposed_except = |p: &[R], skip: usize| {
        apexes
            .iter()
            .enumerate()
            .all(|(j, w)| j == skip || dot(p, w) <= R::one())
    };
    let per_apex = if apexes.is_empty() {
        0
    } else {
        (n / (4 * apexes.len())).clamp(64, 4096)
    };
    for (j, v) in apexes.iter().enumerate() {
        let vn = crate::geometry::vector::norm(v);
        let axis = normalized(v);
        let (c, s) = (R::one() / vn, (R::one() - R::one() / (vn * vn)).sqrt());
        let basis = orthonormal_complement(&axis);
        let ring: Vec<Vec<R>> = if d == 2 {
            vec![vec![R::one()], vec![-R::one()]]
        } else {
            SphereLattice::new(d - 1, per_apex).points()
        };
        for w in ring {
            let mut p: Vec<R> = axis.iter().map(|a| *a * c).collect();
            for (coef, b) in w.iter().zip(&basis) {
                for (pk, bk) in p.iter_mut().zip(b) {
                    *pk = *pk + s * *coef * *bk;
                }
            }
            if exposed_except(&p, j) {
                out.push(CapSample::Sphere(p));
            }
        }
    }
    let lattice = SphereLattice::new(d, n);
    out.extend(
        (0..n)
            .map(|i| lattice.point::<R>(i))
            .filter(|p| cb.exposes(p))
            .map(CapSample::Sphere),
    );
    out
}

/// Exact verification on a polygon.
pub fn verify_polygon<T: Scalar>(
    poly: &ConvexPolygon<T>,
    dirs: &DirectionMultiset<T>,
    m: usize,
) -> Result<IlluminationReport> {
    if m == 0 {
        return domain("multiplicity must be positive");
    }
    if dirs.dim().is_some_and(|d| d != 2) {
        return precondition("polygon directions must be 2-dimensional");
    }
    let n = poly.len();
    let dirs_exact: Vec<(Vec2<T>, usize)> = dirs.entries().iter().map(|(d, k)| (d.as_vec2(), *k)).collect();
    let units: Vec<[f64; 2]> = dirs_exact
        .iter()
        .map(|(u, _)| {
            let f = u.to_f64();
            let l = f[0].hypot(f[1]);
            [f[0] / l, f[1] / l]
        })
        .collect();
    let mults: Vec<usize> = dirs_exact.iter().map(|(_, k)| *k).collect();
    let unit_normal = |i: usize| {
        let f = poly.outward_normal(i).to_f64();
        let l = f[0].hypot(f[1]);
        [f[0] / l, f[1] / l]
    };
    let fdot = |a: &[f64; 2], b: &[f64; 2]| a[0] * b[0] + a[1] * b[1];
    let mut worst: Option<(bool, Eval<f64>)> = None;
    let mut consider = |point: Vec<f64>, normals: &[usize]| {
        let count = dirs_exact
            .iter()
            .filter(|(u, _)| normals.iter().all(|&i| u.dot(&poly.outward_normal(i)).is_negative()))
            .map(|(_, k)| k)
            .sum::<usize>();
        let scores: Vec<f64> = units
            .iter()
            .map(|u| normals.iter().map(|&i| -fdot(u, &unit_normal(i))).fold(f64::INFINITY, f64::min))
            .collect();
        let (margin, _) = score_point(&scores, &mults, m, 0.0);
        let e = Eval { margin, count, point };
        let fails = count < m;
        worst = Some(match worst.take() {
            None => (fails, e),
            Some((wf, w)) => match (fails, wf) {
                (true, false) => (true, e),
                (false, true) => (true, w),
                _ => (fails, worse(w, e)),
            },
        });
    };
    for i in 0..n {
        consider(poly.vertex(i).to_f64().to_vec(), &[(i + n - 1) % n, i]);
    }
    for i in 0..n {
        let a = poly.vertex(i).to_f64();
        let b = poly.vertex((i + 1) % n).to_f64();
        consider(vec![(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0], &[i]);
    }
    let (fails, e) = worst.expect("polygon has vertices");
    Ok(IlluminationReport {
        pass: !fails,
        m,
        worst_point: e.point,
        worst_count: e.count,
        worst_margin: e.margin,
        samples: 2 * n,
    })
}

/// Deterministic quasi-uniform boundary points.
pub fn boundary_sample<R: Real>(body: &Body<R>, n: usize) -> Vec<Vec<R>> {
    match body {
        Body::Polygon(p) => polygon_boundary::<_, R>(p, n).into_iter().map(|q| q.to_vec()).collect(),
        Body::Ball(b) => SphereLattice::new(b.dim(), n).points(),
        Body::Smooth(k) => (0..n)
            .map(|i| k.boundary_point(R::TAU() * R::lit(i as f64) / R::lit(n as f64)).to_vec())
            .collect(),
        Body::CapBody(cb) => {
            let lattice = SphereLattice::new(cb.dim(), n);
            cb.apexes()
                .iter()
                .cloned()
                .chain((0..n).map(|i| lattice.point::<R>(i)).filter(|p| cb.exposes(p)))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Direction;

    fn dirs(v: &[[f64; 2]]) -> DirectionMultiset<f64> {
        v.iter().map(|d| Direction::new(d.to_vec()).unwrap()).collect()
    }

    fn square() -> Body<f64> {
        let q = |x: i64, y: i64| Vec2::new(Rational::from_integer(x.into()), Rational::from_integer(y.into()));
        Body::Polygon(ConvexPolygon::new(vec![q(-1, -1), q(1, -1), q(1, 1), q(-1, 1)]).unwrap())
    }

    #[test]
    fn square_diagonals() {
        let tol = Tolerance::for_dim(2);
        let u = dirs(&[[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]);
        let r = verify_mfold(&square(), &u, 1, &tol).unwrap();
        assert!(r.pass);
        assert_eq!(r.samples, 8);
        let three = dirs(&[[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0]]);
        let r = verify_mfold(&square(), &three, 1, &tol).unwrap();
        assert!(!r.pass);
        assert_eq!(r.worst_count, 0);
        assert_eq!(r.worst_point, vec![-1.0, 1.0]);
    }

    #[test]
    fn circle_with_three_directions() {
        let tol = Tolerance::new(1e-6, 10_000).unwrap();
        let u = dirs(&[[1.0, 0.0], [-0.5, 0.75f64.sqrt()], [-0.5, -0.75f64.sqrt()]]);
        assert!(verify_mfold(&Body::Ball(Ball::new(2).unwrap()), &u, 1, &tol).unwrap().pass);
        let r = verify_mfold(&Body::Ball(Ball::new(2).unwrap()), &u, 2, &tol).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn report_is_order_independent() {
        let tol = Tolerance::new(1e-6, 20_000).unwrap();
        let u = dirs(&[[1.0, 0.1], [-0.5, 0.9], [-0.5, -0.8]]);
        let b = Body::Ball(Ball::new(2).unwrap());
        let a = verify_mfold(&b, &u, 1, &tol).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let c = pool.install(|| verify_mfold(&b, &u, 1, &tol).unwrap());
        assert_eq!(a, c);
    }

    #[test]
    fn rejects_mismatched_dimensions() {
        let tol = Tolerance::for_dim(3);
        let u: DirectionMultiset<f64> = [Direction::new(vec![1.0, 0.0]).unwrap()].into_iter().collect();
        assert!(verify_mfold(&Body::Ball(Ball::new(3).unwrap()), &u, 1, &tol).is_err());
        assert!(verify_mfold(&Body::Ball(Ball::new(2).unwrap()), &u, 0, &tol).is_err());
    }

    #[test]
    fn boundary_samples() {
        let b: Body<f64> = Body::Ball(Ball::new(2).unwrap());
        let s = boundary_sample(&b, 4);
        let expect = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
        for (p, e) in s.iter().zip(expect) {
            assert!((p[0] - e[0]).abs() < 1e-15 && (p[1] - e[1]).abs() < 1e-15);
        }
        let sq = boundary_sample::<f64>(&square(), 8);
        assert_eq!(sq.len(), 8);
        for v in [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]] {
            assert!(sq.iter().any(|p| p[0] == v[0] && p[1] == v[1]));
        }
        let s3 = boundary_sample::<f64>(&Body::Ball(Ball::new(3).unwrap()), 1000);
        assert!(s3.iter().all(|p| (crate::geometry::vector::norm(p) - 1.0).abs() < 1e-12));
    }
}
