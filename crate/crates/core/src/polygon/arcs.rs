//! Open circular arcs of directions, with exact membership tests.

use crate::geometry::polygon::ConvexPolygon;
use crate::geometry::vector::Vec2;
use crate::scalar::{sign, sign_eps, Scalar};

/// Open arc of directions traversed counter-clockwise from `start` to `end`.
#[derive(Debug, Clone, PartialEq)]
pub struct Arc<T> {
    pub start: Vec2<T>,
    pub end: Vec2<T>,
}

impl<T: Scalar> Arc<T> {
    /// `start` and `end` must be nonzero and not point the same way.
    pub fn new(start: Vec2<T>, end: Vec2<T>) -> Self {
        debug_assert!(!start.is_zero() && !end.is_zero());
        debug_assert!(!start.same_direction(&end));
        Arc { start, end }
    }

    /// Whether the arc is shorter than a half turn.
    pub fn is_minor(&self) -> bool {
        self.start.cross(&self.end).is_positive()
    }

    fn member(&self, after_start: i8, before_end: i8) -> bool {
        if self.is_minor() {
            after_start > 0 && before_end > 0
        } else {
            after_start > 0 || before_end > 0
        }
    }

    /// Exact membership of a direction in the open arc.
    pub fn contains(&self, u: &Vec2<T>) -> bool {
        !u.is_zero() && self.member(sign(&self.start.cross(u)), sign(&u.cross(&self.end)))
    }

    /// Membership of the direction obtained by rotating `d` counter-clockwise
    /// by a positive infinitesimal angle.
    pub fn contains_just_past(&self, d: &Vec2<T>) -> bool {
        // d+ = d + eps * perp(d):  cross(s, d+) = cross(s, d) + eps <s, d>,
        // cross(d+, e) = cross(d, e) - eps <d, e>.
        let a = sign_eps(&self.start.cross(d), &self.start.dot(d));
        let b = sign_eps(&d.cross(&self.end), &-d.dot(&self.end));
        !d.is_zero() && self.member(a, b)
    }

    /// Arc length in radians (floating, for reporting only).
    pub fn length(&self) -> f64 {
        let s = self.start.to_f64();
        let e = self.end.to_f64();
        let a = (s[0] * e[1] - s[1] * e[0]).atan2(s[0] * e[0] + s[1] * e[1]);
        if a <= 0.0 {
            a + 2.0 * std::f64::consts::PI
        } else {
            a
        }
    }
}

/// One arc per polygon vertex together with the demanded multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcSystem<T> {
    pub arcs: Vec<Arc<T>>,
    pub demand: usize,
}

/// Arc `i` holds the directions that illuminate vertex `i`: those making
/// negative inner products with both incident outward normals. It runs from
/// the outgoing edge vector to the reversed incoming edge vector, and its
/// length is the interior angle, `pi` minus the exterior angle.
pub fn vertex_arcs<T: Scalar>(poly: &ConvexPolygon<T>, m: usize) -> ArcSystem<T> {
    let n = poly.len();
    let arcs = (0..n)
        .map(|i| Arc::new(poly.edge(i), poly.edge(i + n - 1).neg()))
        .collect();
    ArcSystem { arcs, demand: m }
}
