//! Geometric primitives: vectors, directions, polygons, the unit ball and
//! boundary sampling.

pub mod ball;
pub mod direction;
pub mod polygon;
pub mod sampling;
pub mod vector;

pub use ball::{Ball, Tolerance};
pub use direction::{Direction, DirectionMultiset};
pub use polygon::{ConvexPolygon, Location};
pub use sampling::SphereLattice;
pub use vector::Vec2;
