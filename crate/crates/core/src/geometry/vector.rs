//! Planar vectors over an exact or floating scalar, and a few slice helpers
//! for d-dimensional float vectors.

use crate::scalar::{Real, Scalar};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq)]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Vec2<T> {
    pub fn new(x: T, y: T) -> Self {
        Vec2 { x, y }
    }

    pub fn zero() -> Self {
        Vec2::new(T::zero(), T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Vec2::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Vec2::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }

    pub fn neg(&self) -> Self {
        Vec2::new(-self.x.clone(), -self.y.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Vec2::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    /// z-component of the 3D cross product; positive when `o` is CCW of `self`.
    pub fn cross(&self, o: &Self) -> T {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    /// Rotation by +90 degrees.
    pub fn perp(&self) -> Self {
        Vec2::new(-self.y.clone(), self.x.clone())
    }

    pub fn norm2(&self) -> T {
        self.dot(self)
    }

    /// True iff both vectors are nonzero and point the same way.
    pub fn same_direction(&self, o: &Self) -> bool {
        !self.is_zero() && !o.is_zero() && self.cross(o).is_zero() && self.dot(o).is_positive()
    }

    fn upper_half(&self) -> bool {
        self.y.is_positive() || (self.y.is_zero() && self.x.is_positive())
    }

    /// Exact comparison of polar angles in `[0, 2pi)`. Both vectors must be nonzero.
    pub fn angle_cmp(&self, o: &Self) -> Ordering {
        match (self.upper_half(), o.upper_half()) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => {
                let c = self.cross(o);
                if c.is_positive() {
                    Ordering::Less
                } else if c.is_negative() {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                }
            }
        }
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [crate::scalar::to_f64(&self.x), crate::scalar::to_f64(&self.y)]
    }
}

pub fn dot<R: Real>(a: &[R], b: &[R]) -> R {
    a.iter().zip(b).fold(R::zero(), |acc, (x, y)| acc + *x * *y)
}

pub fn norm<R: Real>(a: &[R]) -> R {
    dot(a, a).sqrt()
}

pub fn normalized<R: Real>(a: &[R]) -> Vec<R> {
    let n = norm(a);
    a.iter().map(|x| *x / n).collect()
}

pub fn sub<R: Real>(a: &[R], b: &[R]) -> Vec<R> {
    a.iter().zip(b).map(|(x, y)| *x - *y).collect()
}

pub fn axpy<R: Real>(a: &[R], k: R, b: &[R]) -> Vec<R> {
    a.iter().zip(b).map(|(x, y)| *x + k * *y).collect()
}

pub fn scaled<R: Real>(a: &[R], k: R) -> Vec<R> {
    a.iter().map(|x| *x * k).collect()
}

/// Angle between two nonzero vectors, clamped against rounding.
pub fn angle_between<R: Real>(a: &[R], b: &[R]) -> R {
    let c = dot(a, b) / (norm(a) * norm(b));
    c.max(-R::one()).min(R::one()).acos()
}

/// Lexicographic total order on coordinates, used for deterministic tie-breaks.
pub fn lex_cmp<R: Real>(a: &[R], b: &[R]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// An orthonormal basis of the complement of the unit vector `n`.
pub fn orthonormal_complement<R: Real>(n: &[R]) -> Vec<Vec<R>> {
    let d = n.len();
    let mut basis: Vec<Vec<R>> = Vec::with_capacity(d - 1);
    let mut axes: Vec<usize> = (0..d).collect();
    // Start from the axes least aligned with n.
    axes.sort_by(|&i, &j| {
        n[i].abs()
            .partial_cmp(&n[j].abs())
            .unwrap_or(Ordering::Equal)
    });
    for &k in &axes {
        if basis.len() == d - 1 {
            break;
        }
        let mut v = vec![R::zero(); d];
        v[k] = R::one();
        let p = dot(&v, n);
        v = axpy(&v, -p, n);
        for b in &basis {
            let p = dot(&v, b);
            v = axpy(&v, -p, b);
        }
        let len = norm(&v);
        if len > R::lit(1e-6) {
            basis.push(scaled(&v, R::one() / len));
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(x: i64, y: i64) -> Vec2<Rational> {
        Vec2::new(Rational::from_integer(x.into()), Rational::from_integer(y.into()))
    }

    #[test]
    fn angle_order_is_exact() {
        let mut v = vec![q(0, -1), q(-1, 0), q(1, 1), q(1, 0), q(-1, -1), q(0, 1)];
        v.sort_by(|a, b| a.angle_cmp(b));
        assert_eq!(v, vec![q(1, 0), q(1, 1), q(0, 1), q(-1, 0), q(-1, -1), q(0, -1)]);
        assert_eq!(q(2, 2).angle_cmp(&q(1, 1)), Ordering::Equal);
    }

    #[test]
    fn complement_is_orthonormal() {
        let n: Vec<f64> = normalized(&[1.0, 2.0, -0.5, 0.3]);
        let b = orthonormal_complement(&n);
        assert_eq!(b.len(), 3);
        for (i, u) in b.iter().enumerate() {
            assert!(dot(u, &n).abs() < 1e-12);
            assert!((norm(u) - 1.0).abs() < 1e-12);
            for w in &b[i + 1..] {
                assert!(dot(u, w).abs() < 1e-12);
            }
        }
    }
}
