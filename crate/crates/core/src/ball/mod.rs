//! Multiple illumination of Euclidean balls.
//!
//! The 3-ball is handled by an explicit multiset of `2m + 1 + ceil(m/2)`
//! directions. Higher dimensions follow by turning an illuminating multiset
//! into an m-fold cover of the ball by open unit balls, lifting that cover
//! to spherical caps with inverse stereographic projection, and adding `m`
//! copies of the direction towards the south pole.

pub mod lift;

pub use lift::{
    cap_center, forward_stereographic, illumination_to_cover, inverse_stereographic, lift_cover_to_directions,
    recursive_ball_construction, BallConstruction, CoverSpec,
};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::geometry::direction::{Direction, DirectionMultiset};
use crate::geometry::SphereLattice;
use crate::scalar::{Real, Scalar};

/// `(d - 1) m + 1 + ceil(m / 2)`, defined for `d >= 3`.
pub fn ball_upper_bound(m: usize, d: usize) -> Result<usize> {
    if d < 3 || m == 0 {
        return domain("upper bound needs d >= 3 and m >= 1");
    }
    Ok((d - 1) * m + 1 + m.div_ceil(2))
}

/// The upper end of the admissible tilt interval, `cos(m pi / (2m + 1))`.
pub fn max_tilt(m: usize) -> f64 {
    (m as f64 * std::f64::consts::PI / (2 * m + 1) as f64).cos()
}

/// Directions `u_j = (-sqrt(1 - e_j^2) cos t_j, -sqrt(1 - e_j^2) sin t_j, e_j)`
/// with `t_j = 2 pi j / (2m + 1)` and `e_j = eps` for odd `j`, `-eps^2` for
/// even `j`, plus `ceil(m/2)` copies of `(0, 0, -1)`.
///
/// `eps` defaults to half of `cos(m pi / (2m + 1))` and must lie strictly
/// between 0 and that value.
pub fn b3_direction_multiset<R: Real + Scalar>(m: usize, eps: Option<R>) -> Result<DirectionMultiset<R>> {
    if m == 0 {
        return domain("multiplicity must be positive");
    }
    let top = R::lit(max_tilt(m));
    let eps = eps.unwrap_or(top / R::lit(2.0));
    if !(eps > R::zero() && eps < top) {
        return domain(format!("tilt must lie in (0, {})", top.as_f64()));
    }
    let n = 2 * m + 1;
    let mut out = DirectionMultiset::new();
    for j in 0..n {
        let e = if j % 2 == 1 { eps } else { -eps * eps };
        let t = R::TAU() * R::lit(j as f64) / R::lit(n as f64);
        let r = (R::one() - e * e).sqrt();
        out.push_distinct(Direction::new(vec![-r * t.cos(), -r * t.sin(), e])?, 1);
    }
    out.push_distinct(
        Direction::new(vec![R::zero(), R::zero(), -R::one()])?,
        m.div_ceil(2),
    );
    Ok(out)
}

/// Illumination counts on one latitude band of the 2-sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandStats {
    pub lower: f64,
    pub upper: f64,
    pub samples: usize,
    /// Minimum over the band of the total count.
    pub min_count: usize,
    /// Minima of the counts contributed by odd-index, even-index and
    /// south-pointing directions.
    pub min_odd: usize,
    pub min_even: usize,
    pub min_down: usize,
}

/// Splits sphere samples into the bands `z < -sqrt(1 - eps^2)`,
/// `-sqrt(1 - eps^2) <= z <= 1/2` and `z > 1/2`, and counts, with strict
/// signs and no margin, which families of the construction illuminate each
/// sample. Independent of the generic verifier.
pub fn b3_band_analysis(m: usize, eps: Option<f64>, samples: usize) -> Result<[BandStats; 3]> {
    let eps = eps.unwrap_or(max_tilt(m) / 2.0);
    if m == 0 || !(eps > 0.0 && eps < max_tilt(m)) {
        return domain("need m >= 1 and eps in (0, cos(m pi / (2m + 1)))");
    }
    let n = 2 * m + 1;
    let family: Vec<(usize, [f64; 3])> = (0..n)
        .map(|j| {
            let e = if j % 2 == 1 { eps } else { -eps * eps };
            let t = std::f64::consts::TAU * j as f64 / n as f64;
            let r = (1.0 - e * e).sqrt();
            (j % 2, [-r * t.cos(), -r * t.sin(), e])
        })
        .collect();
    let cut = -(1.0 - eps * eps).sqrt();
    let bounds = [(-1.0, cut), (cut, 0.5), (0.5, 1.0)];
    let mut stats = bounds.map(|(lower, upper)| BandStats {
        lower,
        upper,
        samples: 0,
        min_count: usize::MAX,
        min_odd: usize::MAX,
        min_even: usize::MAX,
        min_down: usize::MAX,
    });
    let lattice = SphereLattice::new(3, samples);
    for i in 0..samples {
        let p: Vec<f64> = lattice.point(i);
        let band = if p[2] < cut {
            0
        } else if p[2] <= 0.5 {
            1
        } else {
            2
        };
        let lit = |u: &[f64; 3]| u[0] * p[0] + u[1] * p[1] + u[2] * p[2] < 0.0;
        let odd = family.iter().filter(|(par, u)| *par == 1 && lit(u)).count();
        let even = family.iter().filter(|(par, u)| *par == 0 && lit(u)).count();
        let down = if p[2] > 0.0 { m.div_ceil(2) } else { 0 };
        let s = &mut stats[band];
        s.samples += 1;
        s.min_count = s.min_count.min(odd + even + down);
        s.min_odd = s.min_odd.min(odd);
        s.min_even = s.min_even.min(even);
        s.min_down = s.min_down.min(down);
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert_eq!(ball_upper_bound(1, 3).unwrap(), 4);
        assert_eq!(ball_upper_bound(2, 3).unwrap(), 6);
        assert_eq!(ball_upper_bound(2, 4).unwrap(), 8);
        assert!(ball_upper_bound(1, 2).is_err());
    }

    #[test]
    fn multiset_sizes_and_domain() {
        for (m, size) in [(1, 4), (2, 6), (3, 9), (4, 11)] {
            assert_eq!(b3_direction_multiset::<f64>(m, None).unwrap().total(), size);
        }
        assert!(b3_direction_multiset::<f64>(2, Some(0.0)).is_err());
        assert!(b3_direction_multiset::<f64>(2, Some(max_tilt(2))).is_err());
        assert!(b3_direction_multiset::<f64>(2, Some(0.1)).is_ok());
    }

    #[test]
    fn bands_meet_guarantee() {
        for m in 1..=4 {
            for b in b3_band_analysis(m, None, 20_000).unwrap() {
                assert!(b.samples > 0);
                assert!(b.min_count >= m, "m={m} {b:?}");
            }
        }
    }
}
