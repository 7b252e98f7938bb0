//! The origin-centred unit ball in dimension `d >= 2`.

use crate::error::{domain, precondition, Result};
use crate::geometry::vector::{dot, norm};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ball {
    dim: usize,
}

/// Strict margin and sample count used by floating-point verification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<R> {
    pub margin: R,
    pub samples: usize,
}

impl<R: Real> Tolerance<R> {
    pub fn new(margin: R, samples: usize) -> Result<Self> {
        if !(margin >= R::zero()) {
            return domain("margin must be nonnegative");
        }
        if samples == 0 {
            return domain("sample count must be positive");
        }
        Ok(Tolerance { margin, samples })
    }

    /// Default margin `1e-6`; `2*10^5` samples on circles and 2-spheres,
    /// `10^6` from the 3-sphere on.
    pub fn for_dim(d: usize) -> Self {
        let samples = if d <= 3 { 200_000 } else { 1_000_000 };
        Tolerance {
            margin: R::lit(1e-6),
            samples,
        }
    }
}

impl<R: Real> Default for Tolerance<R> {
    fn default() -> Self {
        Tolerance::for_dim(3)
    }
}

impl Ball {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return domain(format!("ball dimension must be at least 2, got {dim}"));
        }
        Ok(Ball { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check_dims<R: Real>(&self, xs: &[&[R]]) -> Result<()> {
        if xs.iter().any(|x| x.len() != self.dim) {
            return precondition(format!("expected {}-dimensional input", self.dim));
        }
        Ok(())
    }

    pub fn on_boundary<R: Real>(&self, p: &[R], tol: &Tolerance<R>) -> bool {
        (norm(p) - R::one()).abs() <= tol.margin.max(R::lit(1e-12))
    }

    /// `<u, p> < 0`, evaluated on the unit vector of `u` with margin `tol.margin`.
    pub fn illuminates_by_direction<R: Real>(
        &self,
        p: &[R],
        u: &[R],
        tol: &Tolerance<R>,
    ) -> Result<bool> {
        self.check_dims(&[p, u])?;
        if !self.on_boundary(p, tol) {
            return precondition("point is not on the unit sphere");
        }
        let un = norm(u);
        if un == R::zero() {
            return precondition("zero direction");
        }
        Ok(-dot(u, p) / un > tol.margin)
    }

    /// Point-source illumination of the sphere point `p` from `source`.
    ///
    /// Along `x(t) = source + t (p - source)` the function `|x(t)|^2 - 1`
    /// vanishes at `t = 1` and at `t = (|source|^2 - 1) / |p - source|^2`; the
    /// open ball lies strictly between the two roots. The ray meets the
    /// interior while the segment does not exactly when the second root is
    /// beyond `p`.
    pub fn illuminates_by_point<R: Real>(
        &self,
        source: &[R],
        p: &[R],
        tol: &Tolerance<R>,
    ) -> Result<bool> {
        self.check_dims(&[source, p])?;
        if norm(source) <= R::one() + tol.margin {
            return precondition("light source must lie strictly outside the ball");
        }
        if !self.on_boundary(p, tol) {
            return precondition("point is not on the unit sphere");
        }
        let d: Vec<R> = p.iter().zip(source).map(|(a, b)| *a - *b).collect();
        let far_root = (dot(source, source) - R::one()) / dot(&d, &d);
        Ok(far_root > R::one() + tol.margin)
    }
}
