//! Random polygon corpus and an independent oracle for the polygon
//! illumination number.
//!
//! The oracle works in floating point from the vertex list alone: a
//! direction illuminates vertex `i` iff it points strictly into the cone
//! spanned by the outgoing edge and the reversed incoming edge. Candidate
//! directions are midpoints of the cells cut out by all cone rays, and the
//! optimum is a shortest path over residual demand vectors.

#![allow(dead_code)]

use std::collections::HashMap;
use std::f64::consts::TAU;

use illumination::geometry::Vec2;
use illumination::{Rational, RationalPolygon};
use num_bigint::BigInt;
use rand::Rng;

pub const RADIUS: f64 = 1000.0;

fn lattice_point(theta: f64, r: f64) -> Vec2<Rational> {
    let q = |v: f64| Rational::from_integer(BigInt::from(v.round() as i64));
    Vec2::new(q(r * theta.cos()), q(r * theta.sin()))
}

/// Hull of up to `k` rounded lattice points on a circle of radius 1000.
/// Retries until at least three vertices survive.
pub fn random_polygon<G: Rng>(rng: &mut G, k: usize) -> RationalPolygon {
    loop {
        let pts: Vec<_> = (0..k).map(|_| lattice_point(rng.random::<f64>() * TAU, RADIUS)).collect();
        if let Ok(p) = RationalPolygon::convex_hull(pts) {
            return p;
        }
    }
}

/// Centrally symmetric polygon: Minkowski sum of `k` random lattice segments.
pub fn random_zonogon<G: Rng>(rng: &mut G, k: usize) -> RationalPolygon {
    loop {
        let gens: Vec<(i64, i64)> = (0..k)
            .map(|_| (rng.random_range(-20..=20), rng.random_range(-20..=20)))
            .filter(|g| *g != (0, 0))
            .collect();
        let mut pts = vec![(0i64, 0i64)];
        for (gx, gy) in gens {
            let next: Vec<_> = pts.iter().flat_map(|&(x, y)| [(x, y), (x + gx, y + gy)]).collect();
            pts = next;
        }
        let pts = pts
            .into_iter()
            .map(|(x, y)| Vec2::new(Rational::from_integer(x.into()), Rational::from_integer(y.into())))
            .collect();
        if let Ok(p) = RationalPolygon::convex_hull(pts) {
            return p;
        }
    }
}

/// Random polygon whose exterior angles are `2 pi / n` each, perturbed by
/// up to `jitter` of that share, then rounded to the lattice.
pub fn perturbed_equiangular<G: Rng>(rng: &mut G, n: usize, jitter: f64) -> Option<RationalPolygon> {
    let base = TAU / n as f64;
    let mut ext: Vec<f64> = (0..n).map(|_| base * (1.0 + jitter * (2.0 * rng.random::<f64>() - 1.0))).collect();
    let s: f64 = ext.iter().sum();
    ext.iter_mut().for_each(|a| *a *= TAU / s);
    // tangent lines to a circle at the outward normals, met pairwise
    let mut normal = 0.0f64;
    let mut normals = Vec::with_capacity(n);
    for a in &ext {
        normals.push(normal);
        normal += a;
    }
    let r = RADIUS / 2.0;
    let pts: Vec<_> = (0..n)
        .map(|i| {
            let (a, b) = (normals[i], normals[(i + 1) % n]);
            let det = (b - a).sin();
            let x = r * (b.sin() - a.sin()) / det;
            let y = r * (a.cos() - b.cos()) / det;
            Vec2::new(
                Rational::from_integer(BigInt::from(x.round() as i64)),
                Rational::from_integer(BigInt::from(y.round() as i64)),
            )
        })
        .collect();
    let p = RationalPolygon::new(pts).ok()?;
    (p.len() == n).then_some(p)
}

fn to_f64(p: &RationalPolygon) -> Vec<[f64; 2]> {
    p.vertices().iter().map(|v| v.to_f64()).collect()
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Vertex cones as `(outgoing edge, reversed incoming edge)`.
fn cones(v: &[[f64; 2]]) -> Vec<([f64; 2], [f64; 2])> {
    let n = v.len();
    (0..n)
        .map(|i| {
            let (prev, cur, next) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
            ([next[0] - cur[0], next[1] - cur[1]], [prev[0] - cur[0], prev[1] - cur[1]])
        })
        .collect()
}

fn in_cone(c: &([f64; 2], [f64; 2]), u: [f64; 2]) -> bool {
    cross(c.0, u) > 0.0 && cross(u, c.1) > 0.0
}

/// Number of directions in `dirs` that illuminate each vertex.
pub fn vertex_counts(p: &RationalPolygon, dirs: &[[f64; 2]]) -> Vec<usize> {
    cones(&to_f64(p))
        .iter()
        .map(|c| dirs.iter().filter(|u| in_cone(c, **u)).count())
        .collect()
}

/// Smallest multiset of directions illuminating every vertex `m` times.
pub fn brute_force_number(p: &RationalPolygon, m: usize) -> usize {
    let cs = cones(&to_f64(p));
    let n = cs.len();
    let mut rays: Vec<f64> = cs
        .iter()
        .flat_map(|(a, b)| [a[1].atan2(a[0]), b[1].atan2(b[0])])
        .map(|t| t.rem_euclid(TAU))
        .collect();
    rays.sort_by(f64::total_cmp);
    rays.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let cells: Vec<Vec<usize>> = (0..rays.len())
        .map(|i| {
            let (a, b) = (rays[i], if i + 1 < rays.len() { rays[i + 1] } else { rays[0] + TAU });
            let mid = (a + b) / 2.0;
            let u = [mid.cos(), mid.sin()];
            (0..n).filter(|&k| in_cone(&cs[k], u)).collect()
        })
        .filter(|c: &Vec<usize>| !c.is_empty())
        .collect();
    let mut memo = HashMap::new();
    shortest(&vec![m; n], &cells, &mut memo)
}

fn shortest(deficit: &[usize], cells: &[Vec<usize>], memo: &mut HashMap<Vec<usize>, usize>) -> usize {
    let Some(first) = deficit.iter().position(|&d| d > 0) else {
        return 0;
    };
    if let Some(&v) = memo.get(deficit) {
        return v;
    }
    // some direction must serve the first vertex still short of m
    let best = cells
        .iter()
        .filter(|c| c.contains(&first))
        .map(|c| {
            let mut next = deficit.to_vec();
            c.iter().for_each(|&k| next[k] = next[k].saturating_sub(1));
            1 + shortest(&next, cells, memo)
        })
        .min()
        .expect("every vertex cone contains a cell");
    memo.insert(deficit.to_vec(), best);
    best
}
