//! Spiky bodies and cap bodies of the unit ball.
//!
//! For a point `v` outside the unit ball `B`, `conv(B ∪ {v})` is `B` plus a
//! spike: the part of the tangent cone from `v` cut off by the sphere. A cap
//! body is a union of such hulls where every segment between two apexes
//! meets `B`; it is then convex and equals `conv(B ∪ V)`.

pub mod construct;
pub mod lemmas;

pub use lemmas::{run_lemma_suite, LemmaOutcome};

pub use construct::{
    b2_single_spike_directions, b3_capbody_directions, b3_prism_apexes,
    cap_body_number_top_bottom, cap_body_number_top_only, CapBodyConstruction,
};

use crate::error::{domain, precondition, Result};
use crate::geometry::vector::{dot, norm};
use crate::geometry::Tolerance;
use crate::scalar::Real;

/// Slack for closed geometric conditions evaluated in floating point.
const CLOSED_SLACK: f64 = 1e-12;

/// The union of `conv(B^d ∪ {v})` over the apexes `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct CapBody<R> {
    dim: usize,
    apexes: Vec<Vec<R>>,
}

impl<R: Real> CapBody<R> {
    /// Every apex must have dimension `dim` and lie strictly outside the ball.
    pub fn new(dim: usize, apexes: Vec<Vec<R>>) -> Result<Self> {
        if dim < 2 {
            return domain(format!("dimension must be at least 2, got {dim}"));
        }
        for v in &apexes {
            if v.len() != dim {
                return precondition(format!("apex {v:?} is not {dim}-dimensional"));
            }
            if !(norm(v) > R::one()) {
                return precondition(format!("apex {v:?} is not outside the unit ball"));
            }
        }
        Ok(CapBody { dim, apexes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apexes(&self) -> &[Vec<R>] {
        &self.apexes
    }

    /// Whether every segment between two apexes meets the closed ball.
    pub fn is_valid(&self) -> bool {
        validate_cap_body(self)
    }

    /// A sphere point is on the boundary of the body unless it lies in the
    /// open cap of some apex.
    pub fn exposes(&self, p: &[R]) -> bool {
        self.apexes.iter().all(|v| dot(p, v) <= R::one())
    }

    pub fn contains(&self, p: &[R]) -> bool {
        norm(p) <= R::one() || self.apexes.iter().any(|v| in_spike(v, p))
    }
}

/// Euclidean distance from the origin to the segment `ab`.
pub fn segment_origin_distance<R: Real>(a: &[R], b: &[R]) -> R {
    let d: Vec<R> = b.iter().zip(a).map(|(x, y)| *x - *y).collect();
    let dd = dot(&d, &d);
    let t = if dd > R::zero() {
        (-dot(a, &d) / dd).max(R::zero()).min(R::one())
    } else {
        R::zero()
    };
    let closest: Vec<R> = a.iter().zip(&d).map(|(x, y)| *x + t * *y).collect();
    norm(&closest)
}

/// Every pair of distinct apexes spans a segment meeting the closed ball.
pub fn validate_cap_body<R: Real>(body: &CapBody<R>) -> bool {
    let v = &body.apexes;
    let limit = R::one() + R::lit(CLOSED_SLACK);
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| segment_origin_distance(&v[i], &v[j]) <= limit))
}

/// Membership of `p` in the spike `conv(B ∪ {v}) \ B`.
///
/// Outside the ball, `p` is in the hull iff it is in the closed tangent cone
/// from `v` (`<v - p, v>^2 >= |v - p|^2 (|v|^2 - 1)` with `p` on the ball's
/// side of `v`) and not beyond the tangency plane `<x, v> = 1` on the far
/// side, where the cone has already entered the ball.
pub fn in_spike<R: Real>(v: &[R], p: &[R]) -> bool {
    let vv = dot(v, v);
    if dot(p, p) <= R::one() || vv <= R::one() {
        return false;
    }
    let w: Vec<R> = v.iter().zip(p).map(|(a, b)| *a - *b).collect();
    let along = dot(&w, v);
    along >= R::zero() && dot(p, v) >= R::one() && along * along >= dot(&w, &w) * (vv - R::one())
}

/// Whether the sphere point `p` lies in the open cap `<p, v> > 1` of `v`.
/// Points within rounding of the tangency circle are not in the open cap.
pub fn in_open_cap<R: Real>(v: &[R], p: &[R], tol: &Tolerance<R>) -> Result<bool> {
    if (norm(p) - R::one()).abs() > tol.margin.max(R::lit(CLOSED_SLACK)) {
        return precondition("point is not on the unit sphere");
    }
    Ok(dot(p, v) > R::one() + R::lit(CLOSED_SLACK))
}

/// A closed cap of the unit sphere: points within angle `radius` of `center`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalCap<R> {
    pub center: Vec<R>,
    pub radius: R,
}

impl<R: Real> SphericalCap<R> {
    pub fn contains(&self, p: &[R]) -> bool {
        dot(p, &self.center) >= self.radius.cos() - R::lit(CLOSED_SLACK)
    }
}

/// The closure of the open cap of `v`: centre `v / |v|`, radius `arccos(1 / |v|)`.
pub fn closed_cap_of_ball<R: Real>(v: &[R]) -> Result<SphericalCap<R>> {
    let r = norm(v);
    if !(r > R::one()) {
        return domain("apex must lie outside the unit ball");
    }
    Ok(SphericalCap {
        center: v.iter().map(|x| *x / r).collect(),
        radius: (R::one() / r).acos(),
    })
}

/// How well the unit direction `u` illuminates the apex `v` of its spike.
///
/// `u` illuminates `v` iff it lies within `pi/2 - arccos(1/|v|)` of `-v`,
/// i.e. iff the angle `theta` between `u` and `v` exceeds `pi/2 + r` with
/// `r = arccos(1/|v|)`. The returned value `-cos(theta - r)` is positive
/// exactly then and reduces to `-<u, v/|v|>` as `|v|` tends to 1.
pub fn apex_margin<R: Real>(v: &[R], u_unit: &[R]) -> R {
    let nv = norm(v);
    let c = (dot(u_unit, v) / nv).max(-R::one()).min(R::one());
    let theta = c.acos();
    let r = (R::one() / nv).acos();
    if theta < r {
        -R::one()
    } else {
        -(theta - r).cos()
    }
}

/// Whether no direction illuminates both apexes.
///
/// The directions illuminating `v` form the open cap of angular radius
/// `pi/2 - r_v` around `-v/|v|`. Two such caps are disjoint iff the angle
/// between the apexes is at least `pi - r_v - r_w`, which in closed form is
/// `<v, w> <= sqrt((|v|^2 - 1)(|w|^2 - 1)) - 1`. Exact ties count as
/// incompatible since the caps are open.
pub fn incompatible_apexes<R: Real>(v: &[R], w: &[R]) -> bool {
    let a = dot(v, v) - R::one();
    let b = dot(w, w) - R::one();
    dot(v, w) <= (a * b).sqrt() - R::one() + R::lit(CLOSED_SLACK)
}
