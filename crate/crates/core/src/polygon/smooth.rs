//! Smooth strictly convex planar bodies given by support functions, and the
//! `2m + 1` direction construction built from a circumscribed equiangular
//! polygon.

use std::fmt;
use std::sync::Arc as Shared;

use crate::error::{Error, Result};
use crate::geometry::direction::{Direction, DirectionMultiset};
use crate::scalar::{Real, Scalar};

type Support<R> = Shared<dyn Fn(R) -> R + Send + Sync>;

/// A smooth strictly convex body `K` in the plane, described by its support
/// function `h(theta) = max_{x in K} <x, (cos theta, sin theta)>`.
#[derive(Clone)]
pub struct SupportFunctionBody<R> {
    name: String,
    h: Support<R>,
    dh: Option<Support<R>>,
}

impl<R> fmt::Debug for SupportFunctionBody<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SupportFunctionBody").field("name", &self.name).finish()
    }
}

impl<R: Real> SupportFunctionBody<R> {
    /// The derivative of `h` is approximated by central differences.
    pub fn new(name: impl Into<String>, h: impl Fn(R) -> R + Send + Sync + 'static) -> Self {
        SupportFunctionBody {
            name: name.into(),
            h: Shared::new(h),
            dh: None,
        }
    }

    pub fn with_derivative(
        name: impl Into<String>,
        h: impl Fn(R) -> R + Send + Sync + 'static,
        dh: impl Fn(R) -> R + Send + Sync + 'static,
    ) -> Self {
        SupportFunctionBody {
            name: name.into(),
            h: Shared::new(h),
            dh: Some(Shared::new(dh)),
        }
    }

    pub fn circle(r: R) -> Self {
        Self::with_derivative(format!("circle({})", r.as_f64()), move |_| r, |_| R::zero())
    }

    /// Axis-aligned ellipse with semi-axes `a` (along x) and `b`.
    pub fn ellipse(a: R, b: R) -> Self {
        let h = move |t: R| (a * a * t.cos().powi(2) + b * b * t.sin().powi(2)).sqrt();
        let dh = move |t: R| (b * b - a * a) * t.sin() * t.cos() / h(t);
        Self::with_derivative(format!("ellipse({},{})", a.as_f64(), b.as_f64()), h, dh)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn support(&self, theta: R) -> R {
        (self.h)(theta)
    }

    fn support_derivative(&self, theta: R) -> R {
        match &self.dh {
            Some(dh) => dh(theta),
            None => {
                let step = R::lit(1e-6);
                ((self.h)(theta + step) - (self.h)(theta - step)) / (step + step)
            }
        }
    }

    /// The boundary point with outward normal angle `theta`:
    /// `h(theta) n(theta) + h'(theta) n'(theta)`.
    pub fn boundary_point(&self, theta: R) -> [R; 2] {
        let (s, c) = theta.sin_cos();
        let h = self.support(theta);
        let dh = self.support_derivative(theta);
        [h * c - dh * s, h * s + dh * c]
    }
}

/// A circumscribed polygon with tangent line `k` having outward normal angle
/// `normals[k]`; vertex `k` is where lines `k - 1` and `k` meet.
#[derive(Debug, Clone)]
pub struct TangentPolygon<R> {
    pub normals: Vec<R>,
    pub offsets: Vec<R>,
    pub vertices: Vec<[R; 2]>,
}

impl<R: Real> TangentPolygon<R> {
    /// Lines `<x, (cos a_k, sin a_k)> = h_k`, listed counter-clockwise.
    pub fn new(normals: Vec<R>, offsets: Vec<R>) -> Result<Self> {
        if normals.len() < 3 || normals.len() != offsets.len() {
            return crate::error::domain("need at least three tangent lines with one offset each");
        }
        let n = normals.len();
        let mut poly = TangentPolygon {
            normals,
            offsets,
            vertices: Vec::new(),
        };
        poly.vertices = (0..n)
            .map(|k| poly.meet(k + n - 1, k))
            .collect::<Result<_>>()?;
        Ok(poly)
    }

    /// For a `(2m + 1)`-gon: direction `i` points from the meeting point of
    /// lines `i` and `i + m` towards `q`.
    pub fn crossing_directions(&self, m: usize, q: [R; 2]) -> Result<Vec<[R; 2]>> {
        (0..self.len())
            .map(|i| {
                let v = self.meet(i, i + m)?;
                Ok([q[0] - v[0], q[1] - v[1]])
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    /// Intersection of tangent lines `i` and `j` (indices mod n).
    pub fn meet(&self, i: usize, j: usize) -> Result<[R; 2]> {
        let n = self.len();
        let (i, j) = (i % n, j % n);
        let (si, ci) = self.normals[i].sin_cos();
        let (sj, cj) = self.normals[j].sin_cos();
        let det = ci * sj - si * cj;
        if det.abs() < R::lit(1e-12) {
            return Err(Error::Internal(format!("tangent lines {i} and {j} are parallel")));
        }
        let (hi, hj) = (self.offsets[i], self.offsets[j]);
        Ok([(hi * sj - hj * si) / det, (ci * hj - cj * hi) / det])
    }

    pub fn vertex_centroid(&self) -> [R; 2] {
        let n = R::lit(self.vertices.len() as f64);
        let sx = self.vertices.iter().fold(R::zero(), |a, v| a + v[0]);
        let sy = self.vertices.iter().fold(R::zero(), |a, v| a + v[1]);
        [sx / n, sy / n]
    }
}

/// The `(2m + 1)`-gon whose sides touch the body and have outward normals at
/// angles `2 pi k / (2m + 1)`.
pub fn equiangular_tangent_polygon<R: Real>(
    body: &SupportFunctionBody<R>,
    m: usize,
) -> Result<TangentPolygon<R>> {
    if m == 0 {
        return crate::error::domain("multiplicity must be positive");
    }
    let n = 2 * m + 1;
    let normals: Vec<R> = (0..n)
        .map(|k| R::TAU() * R::lit(k as f64) / R::lit(n as f64))
        .collect();
    let offsets = normals.iter().map(|&t| body.support(t)).collect();
    TangentPolygon::new(normals, offsets)
}

/// `2m + 1` directions that m-fold illuminate the body: direction `i` points
/// from the meeting point of tangent lines `i` and `i + m` towards the vertex
/// centroid of the tangent polygon.
pub fn smooth_2d_directions<R: Real + Scalar>(
    body: &SupportFunctionBody<R>,
    m: usize,
) -> Result<DirectionMultiset<R>> {
    let poly = equiangular_tangent_polygon(body, m)?;
    let mut out = DirectionMultiset::new();
    for u in poly.crossing_directions(m, poly.vertex_centroid())? {
        out.push_distinct(Direction::new(u.to_vec())?, 1);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circumscribed_triangle_and_pentagon() {
        let c = SupportFunctionBody::circle(1.0f64);
        let t = equiangular_tangent_polygon(&c, 1).unwrap();
        for v in &t.vertices {
            assert!(((v[0] * v[0] + v[1] * v[1]).sqrt() - 2.0).abs() < 1e-12);
        }
        let p = equiangular_tangent_polygon(&c, 2).unwrap();
        let r = 1.0 / (std::f64::consts::PI / 5.0).cos();
        for v in &p.vertices {
            assert!(((v[0] * v[0] + v[1] * v[1]).sqrt() - r).abs() < 1e-12);
        }
    }

    #[test]
    fn ellipse_boundary_points() {
        let e = SupportFunctionBody::ellipse(2.0, 1.0);
        for k in 0..16 {
            let t = k as f64 * 0.4;
            let p = e.boundary_point(t);
            assert!((p[0] * p[0] / 4.0 + p[1] * p[1] - 1.0).abs() < 1e-12);
            assert!((p[0] * t.cos() + p[1] * t.sin() - e.support(t)).abs() < 1e-12);
        }
        let numeric = SupportFunctionBody::new("e", |t: f64| (4.0 * t.cos().powi(2) + t.sin().powi(2)).sqrt());
        let p = numeric.boundary_point(0.7);
        assert!((p[0] * p[0] / 4.0 + p[1] * p[1] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn direction_count() {
        let d = smooth_2d_directions(&SupportFunctionBody::circle(1.0), 3).unwrap();
        assert_eq!(d.total(), 7);
    }
}
