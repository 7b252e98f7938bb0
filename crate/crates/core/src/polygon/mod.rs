//! Multiple illumination of convex polygons and smooth planar bodies.
//!
//! A direction illuminates a polygon vertex exactly when it lies in the open
//! arc of directions pointing into the vertex's normal cone complement, so
//! the m-fold illumination number of a polygon is the minimum size of a
//! multiset of directions that meets every vertex arc at least m times.

pub mod arcs;
pub mod conditions;
pub mod pierce;
pub mod smooth;

pub use arcs::{vertex_arcs, Arc, ArcSystem};
pub use conditions::{
    check_consecutive_angle_condition, check_grouped_angle_condition, find_grouping,
};
pub use pierce::{
    min_mfold_pierce, min_mfold_pierce_exhaustive, Certificate, Method, PiercingSolution,
    Placement,
};
pub use smooth::{equiangular_tangent_polygon, smooth_2d_directions, SupportFunctionBody, TangentPolygon};

use crate::error::{domain, Result};
use crate::geometry::ConvexPolygon;
use crate::scalar::Scalar;

/// Exact m-fold illumination number of a polygon, with an optimal multiset.
pub fn illumination_number_polygon<T: Scalar>(
    poly: &ConvexPolygon<T>,
    m: usize,
) -> Result<PiercingSolution<T>> {
    min_mfold_pierce(&vertex_arcs(poly, m), m)
}

/// `ceil(m n / floor((n - 1) / 2))`, the value for a regular `n`-gon.
pub fn regular_polygon_number(n: usize, m: usize) -> Result<usize> {
    if n < 3 {
        return domain(format!("polygon needs n >= 3, got {n}"));
    }
    if m == 0 {
        return domain("multiplicity must be positive");
    }
    Ok((m * n).div_ceil((n - 1) / 2))
}

/// `2m + d - 1`, a lower bound for every convex body in dimension `d`.
pub fn lower_bound(m: usize, d: usize) -> Result<usize> {
    if m == 0 || d < 2 {
        return domain("lower bound needs m >= 1 and d >= 2");
    }
    Ok(2 * m + d - 1)
}
