//! Multiple illumination of convex bodies.
//!
//! A boundary point `p` of a convex body `K` is illuminated by a direction
//! `u` when `p + t u` lies in the interior of `K` for all small `t > 0`. The
//! body is m-fold illuminated by a multiset of directions when every
//! boundary point is illuminated by at least `m` of them, counted with
//! multiplicity. This crate
//!
//! * computes the exact m-fold illumination number of convex polygons by
//!   optimal m-fold piercing of circular arcs ([`polygon`]);
//! * builds illuminating multisets for smooth planar bodies, balls in every
//!   dimension and cap bodies of balls ([`polygon::smooth`], [`ball`],
//!   [`cap_body`]);
//! * verifies multisets exactly on polygons and on deterministic boundary
//!   samples otherwise ([`verify`]).
//!
//! Polygon code is generic over an ordered field and runs on exact
//! rationals; sphere code is generic over `f32`/`f64`.

// `!(x > y)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ball;
pub mod cap_body;
pub mod error;
pub mod geometry;
pub mod io;
pub mod polygon;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Real, Scalar};

/// Exact rational scalar used for polygon certificates.
pub type Rational = num_rational::BigRational;

pub type RationalPolygon = geometry::ConvexPolygon<Rational>;
pub type RationalDirections = geometry::DirectionMultiset<Rational>;
pub type Directions64 = geometry::DirectionMultiset<f64>;
pub type CapBody64 = cap_body::CapBody<f64>;
pub type Body64 = verify::Body<f64>;
