//! Strictly convex polygons with counter-clockwise vertices.

use crate::error::{domain, precondition, Result};
use crate::geometry::vector::Vec2;
use crate::scalar::{from_f64, Scalar};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon<T> {
    vertices: Vec<Vec2<T>>,
}

/// Where a point sits relative to a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Interior,
    Exterior,
    Vertex(usize),
    /// Relative interior of edge `i`, which runs from vertex `i` to vertex `i + 1`.
    Edge(usize),
}

impl<T: Scalar> ConvexPolygon<T> {
    /// Validates strict convexity, CCW orientation and simplicity.
    pub fn new(vertices: Vec<Vec2<T>>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return domain(format!("a polygon needs at least 3 vertices, got {n}"));
        }
        let edges: Vec<Vec2<T>> = (0..n)
            .map(|i| vertices[(i + 1) % n].sub(&vertices[i]))
            .collect();
        if edges.iter().any(|e| e.is_zero()) {
            return domain("repeated vertex");
        }
        for i in 0..n {
            let turn = edges[(i + n - 1) % n].cross(&edges[i]);
            if turn.is_zero() {
                return domain(format!("collinear triple at vertex {i}"));
            }
            if turn.is_negative() {
                return domain(format!("clockwise or reflex turn at vertex {i}"));
            }
        }
        // All turns are left turns; the edge angles must wrap exactly once.
        let descents = (0..n)
            .filter(|&i| edges[i].angle_cmp(&edges[(i + 1) % n]) == Ordering::Greater)
            .count();
        if descents != 1 {
            return domain("vertex sequence winds more than once");
        }
        Ok(ConvexPolygon { vertices })
    }

    /// Strict convex hull (collinear points dropped), CCW.
    pub fn convex_hull(mut points: Vec<Vec2<T>>) -> Result<Self> {
        points.sort_by(|a, b| {
            a.x.partial_cmp(&b.x)
                .unwrap_or(Ordering::Equal)
                .then(a.y.partial_cmp(&b.y).unwrap_or(Ordering::Equal))
        });
        points.dedup();
        if points.len() < 3 {
            return domain("fewer than 3 distinct points");
        }
        let turn = |o: &Vec2<T>, a: &Vec2<T>, b: &Vec2<T>| a.sub(o).cross(&b.sub(o));
        let mut lower: Vec<Vec2<T>> = Vec::new();
        for p in &points {
            while lower.len() >= 2
                && !turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
            {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<Vec2<T>> = Vec::new();
        for p in points.iter().rev() {
            while upper.len() >= 2
                && !turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
            {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        ConvexPolygon::new(lower)
    }

    /// A polygon with the edge-direction order type of the regular `n`-gon,
    /// vertex `i` near angle `2 pi i / n` on the unit circle.
    ///
    /// Irrational coordinates are rounded to multiples of `2^-40`. For even `n`
    /// opposite edges are kept exactly antiparallel, so every orientation sign
    /// (including the zero ones) matches the true regular polygon.
    pub fn regular(n: usize) -> Result<Self> {
        if n < 3 {
            return domain(format!("regular polygon needs n >= 3, got {n}"));
        }
        let quantize = |x: f64| -> T { from_f64((x * 2f64.powi(40)).round() / 2f64.powi(40)) };
        let side = 2.0 * (std::f64::consts::PI / n as f64).sin();
        let dir = |i: usize| -> Vec2<T> {
            let a = std::f64::consts::PI * (0.5 + (1.0 + 2.0 * i as f64) / n as f64);
            Vec2::new(quantize(side * a.cos()), quantize(side * a.sin()))
        };
        let edges: Vec<Vec2<T>> = if n.is_multiple_of(2) {
            let half: Vec<Vec2<T>> = (0..n / 2).map(dir).collect();
            half.iter().cloned().chain(half.iter().map(|e| e.neg())).collect()
        } else {
            let raw: Vec<Vec2<T>> = (0..n).map(dir).collect();
            // Rescale the first two edges so the boundary closes exactly.
            let rest = raw[2..].iter().fold(Vec2::zero(), |acc, e| acc.add(e)).neg();
            let det = raw[0].cross(&raw[1]);
            let l0 = rest.cross(&raw[1]) / det.clone();
            let l1 = raw[0].cross(&rest) / det;
            let mut e = raw;
            e[0] = e[0].scale(&l0);
            e[1] = e[1].scale(&l1);
            e
        };
        let mut p = Vec2::new(T::one(), T::zero());
        let mut vertices = Vec::with_capacity(n);
        for e in &edges {
            vertices.push(p.clone());
            p = p.add(e);
        }
        ConvexPolygon::new(vertices)
    }

    pub fn vertices(&self) -> &[Vec2<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &Vec2<T> {
        &self.vertices[i % self.len()]
    }

    /// Edge vector from vertex `i` to vertex `i + 1` (indices cyclic).
    pub fn edge(&self, i: usize) -> Vec2<T> {
        let n = self.len();
        self.vertices[(i + 1) % n].sub(&self.vertices[i % n])
    }

    /// Outward (unnormalized) normal of edge `i`: the edge rotated by -90 degrees.
    pub fn outward_normal(&self, i: usize) -> Vec2<T> {
        let e = self.edge(i);
        Vec2::new(e.y, -e.x)
    }

    pub fn locate(&self, p: &Vec2<T>) -> Location {
        let n = self.len();
        if let Some(i) = self.vertices.iter().position(|v| v == p) {
            return Location::Vertex(i);
        }
        let mut on_edge = None;
        for i in 0..n {
            let s = p.sub(&self.vertices[i]).dot(&self.outward_normal(i));
            if s.is_positive() {
                return Location::Exterior;
            }
            if s.is_zero() {
                on_edge = Some(i);
            }
        }
        match on_edge {
            Some(i) => Location::Edge(i),
            None => Location::Interior,
        }
    }

    /// Does moving from the boundary point `p` along `u` enter the interior?
    pub fn illuminates_by_direction(&self, p: &Vec2<T>, u: &Vec2<T>) -> Result<bool> {
        if u.is_zero() {
            return precondition("zero direction");
        }
        let n = self.len();
        match self.locate(p) {
            Location::Edge(i) => Ok(u.dot(&self.outward_normal(i)).is_negative()),
            Location::Vertex(i) => Ok(u.dot(&self.outward_normal((i + n - 1) % n)).is_negative()
                && u.dot(&self.outward_normal(i)).is_negative()),
            _ => precondition("point is not on the polygon boundary"),
        }
    }

    /// Point-source illumination: the ray from `source` through `p` meets the
    /// interior while the closed segment from `source` to `p` does not.
    pub fn illuminates_by_point(&self, source: &Vec2<T>, p: &Vec2<T>) -> Result<bool> {
        if self.locate(source) != Location::Exterior {
            return precondition("light source must lie strictly outside the polygon");
        }
        if matches!(self.locate(p), Location::Interior | Location::Exterior) {
            return precondition("point is not on the polygon boundary");
        }
        let d = p.sub(source);
        let ray = self.line_meets_interior(source, &d, None);
        let segment = self.line_meets_interior(source, &d, Some(T::one()));
        Ok(ray && !segment)
    }

    /// Whether `{s + t d : 0 <= t <= t_max}` meets the open polygon.
    fn line_meets_interior(&self, s: &Vec2<T>, d: &Vec2<T>, t_max: Option<T>) -> bool {
        let mut lo: Option<T> = None;
        let mut hi: Option<T> = None;
        for i in 0..self.len() {
            let nrm = self.outward_normal(i);
            let a = s.sub(&self.vertices[i]).dot(&nrm);
            let b = d.dot(&nrm);
            if b.is_zero() {
                if !a.is_negative() {
                    return false;
                }
                continue;
            }
            let t = -a / b.clone();
            if b.is_positive() {
                if hi.as_ref().is_none_or(|h| t < *h) {
                    hi = Some(t);
                }
            } else if lo.as_ref().is_none_or(|l| t > *l) {
                lo = Some(t);
            }
        }
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l >= h {
                return false;
            }
        }
        if let Some(h) = &hi {
            if !h.is_positive() {
                return false;
            }
        }
        if let (Some(l), Some(tm)) = (&lo, &t_max) {
            if l >= tm {
                return false;
            }
        }
        true
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> ConvexPolygon<U> {
        ConvexPolygon {
            vertices: self
                .vertices
                .iter()
                .map(|v| Vec2::new(f(&v.x), f(&v.y)))
                .collect(),
        }
    }

    pub fn vertices_f64(&self) -> Vec<[f64; 2]> {
        self.vertices.iter().map(|v| v.to_f64()).collect()
    }
}
