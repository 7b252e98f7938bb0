//! From illumination to covering and back up one dimension.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ball::b3_direction_multiset;
use crate::error::{domain, precondition, Error, Result};
use crate::geometry::direction::{Direction, DirectionMultiset};
use crate::geometry::vector::{dot, norm, normalized};
use crate::geometry::{Ball, SphereLattice, Tolerance};
use crate::verify::{verify_mfold, Body, IlluminationReport};

/// Open unit balls centred at `translates`, meant to cover the closed unit
/// ball at least `demand` times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverSpec {
    pub dim: usize,
    pub translates: Vec<Vec<f64>>,
    pub demand: usize,
}

/// Grid spacing for covering checks: `0.01` in dimension 3 and below,
/// coarser above so the grid stays near two million points.
fn grid_spacing(d: usize) -> f64 {
    if d <= 3 {
        0.01
    } else {
        let cube_points = 2e6 / unit_ball_fraction(d);
        (2.0 / cube_points.powf(1.0 / d as f64)).max(0.01)
    }
}

/// Volume of the unit ball over the volume of the cube `[-1, 1]^d`.
fn unit_ball_fraction(d: usize) -> f64 {
    // V_k = V_{k-2} * 2 pi / k with V_0 = 1, V_1 = 2
    let (mut even, mut odd) = (1.0, 2.0);
    for k in 2..=d {
        if k % 2 == 0 {
            even *= 2.0 * std::f64::consts::PI / k as f64;
        } else {
            odd *= 2.0 * std::f64::consts::PI / k as f64;
        }
    }
    let v = if d.is_multiple_of(2) { even } else { odd };
    v / 2f64.powi(d as i32)
}

impl CoverSpec {
    /// Minimum over grid points of the closed ball (and a boundary lattice)
    /// of the number of translates containing the point with margin `tau`.
    pub fn min_count(&self, tau: f64, boundary_samples: usize) -> usize {
        let d = self.dim;
        let h = grid_spacing(d);
        let steps = (1.0 / h).floor() as i64;
        let per_axis = (2 * steps + 1) as usize;
        let total = per_axis.pow(d as u32);
        let count_at = |x: &[f64]| {
            self.translates
                .iter()
                .filter(|v| {
                    let d2: f64 = x.iter().zip(v.iter()).map(|(a, b)| (a - b) * (a - b)).sum();
                    1.0 - d2.sqrt() > tau
                })
                .count()
        };
        let interior = (0..total)
            .into_par_iter()
            .filter_map(|mut idx| {
                let mut x = vec![0.0; d];
                for xk in x.iter_mut() {
                    *xk = ((idx % per_axis) as i64 - steps) as f64 * h;
                    idx /= per_axis;
                }
                (dot(&x, &x) <= 1.0).then(|| count_at(&x))
            })
            .min()
            .unwrap_or(usize::MAX);
        let lattice = SphereLattice::new(d, boundary_samples.max(1));
        let boundary = (0..lattice.len())
            .into_par_iter()
            .map(|i| count_at(&lattice.point::<f64>(i)))
            .min()
            .unwrap_or(usize::MAX);
        interior.min(boundary)
    }
}

/// Turns an m-fold illuminating multiset of `B^d` into an m-fold cover by
/// translates `-delta u`, halving `delta` from `0.5` until a grid check of
/// the closed ball passes. The multiset is verified first.
pub fn illumination_to_cover(
    dirs: &DirectionMultiset<f64>,
    m: usize,
    d: usize,
    tol: &Tolerance<f64>,
) -> Result<CoverSpec> {
    let ball = Ball::new(d)?;
    let report = verify_mfold(&Body::Ball(ball), dirs, m, tol)?;
    if !report.pass {
        return precondition(format!(
            "directions do not {m}-fold illuminate the {d}-ball (worst count {})",
            report.worst_count
        ));
    }
    let units: Vec<Vec<f64>> = dirs.expanded().map(|u| normalized(&u.to_f64())).collect();
    let boundary = tol.samples.min(200_000);
    let mut delta = 0.5;
    while delta >= 1e-6 {
        let cover = CoverSpec {
            dim: d,
            translates: units.iter().map(|u| u.iter().map(|x| -delta * x).collect()).collect(),
            demand: m,
        };
        if cover.min_count(tol.margin, boundary) >= m {
            return Ok(cover);
        }
        delta /= 2.0;
    }
    Err(Error::Construction("no translate scale down to 1e-6 gives an m-fold cover".into()))
}

/// `x -> (2x, |x|^2 - 1) / (|x|^2 + 1)`, inverse of the projection from the
/// north pole onto the equatorial hyperplane.
pub fn inverse_stereographic(x: &[f64]) -> Vec<f64> {
    let s = dot(x, x);
    let mut y: Vec<f64> = x.iter().map(|v| 2.0 * v / (s + 1.0)).collect();
    y.push((s - 1.0) / (s + 1.0));
    y
}

/// Projection of a sphere point other than the north pole from the north
/// pole onto the equatorial hyperplane.
pub fn forward_stereographic(y: &[f64]) -> Vec<f64> {
    let (last, head) = y.split_last().expect("nonempty");
    head.iter().map(|v| v / (1.0 - last)).collect()
}

/// Solves for a nonzero `(c, t)` with `<y_k, c> = t` for the `d + 1` given
/// points of `E^{d+1}`, by Gaussian elimination with partial pivoting.
fn hyperplane_through(points: &[Vec<f64>]) -> Result<(Vec<f64>, f64)> {
    let cols = points[0].len() + 1;
    let mut a: Vec<Vec<f64>> = points
        .iter()
        .map(|p| {
            let mut row = p.clone();
            row.push(-1.0);
            row
        })
        .collect();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .expect("rows remain");
        if a[best][c].abs() < 1e-12 {
            continue;
        }
        a.swap(r, best);
        let p = a[r][c];
        a[r].iter_mut().for_each(|x| *x /= p);
        for i in 0..rows {
            if i != r {
                let f = a[i][c];
                if f != 0.0 {
                    let pivot_row = a[r].clone();
                    a[i].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() != cols - 1 {
        return Err(Error::Internal("cap boundary points are not affinely independent".into()));
    }
    let free = (0..cols).find(|c| !pivots.contains(c)).expect("one free column");
    let mut sol = vec![0.0; cols];
    sol[free] = 1.0;
    for (row, &c) in pivots.iter().enumerate() {
        sol[c] = -a[row][free];
    }
    let t = sol.pop().expect("nonempty");
    Ok((sol, t))
}

/// Centre of the spherical cap that is the inverse stereographic image of
/// the unit disk around `centre` in the equatorial hyperplane.
pub fn cap_center(centre: &[f64]) -> Result<Vec<f64>> {
    let d = centre.len();
    let mut pts = Vec::with_capacity(d + 1);
    for k in 0..d {
        let mut x = centre.to_vec();
        x[k] += 1.0;
        pts.push(inverse_stereographic(&x));
    }
    let mut x = centre.to_vec();
    x[0] -= 1.0;
    pts.push(inverse_stereographic(&x));
    let (c, t) = hyperplane_through(&pts)?;
    let len = norm(&c);
    let mut c: Vec<f64> = c.iter().map(|x| x / len).collect();
    // orient towards the image of the disk centre, which is inside the cap
    if dot(&inverse_stereographic(centre), &c) < t / len {
        c.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(c)
}

/// Directions `-c_i` for the cap centres of the lifted translates, plus `m`
/// copies of `(0, ..., 0, -1)`, in dimension `d + 1`.
pub fn lift_cover_to_directions(cover: &CoverSpec) -> Result<DirectionMultiset<f64>> {
    if cover.translates.is_empty() {
        return domain("cover has no translates");
    }
    let mut out = DirectionMultiset::new();
    for v in &cover.translates {
        if v.len() != cover.dim {
            return precondition("translate dimension mismatch");
        }
        let c = cap_center(v)?;
        out.push(Direction::new(c.iter().map(|x| -x).collect())?, 1);
    }
    let mut south = vec![0.0; cover.dim + 1];
    south[cover.dim] = -1.0;
    out.push(Direction::new(south)?, cover.demand);
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct BallConstruction {
    pub dim: usize,
    pub m: usize,
    pub directions: DirectionMultiset<f64>,
    /// Final sampled verification, absent when the dimension is beyond the
    /// verification limit and the size rests on the formula alone.
    pub report: Option<IlluminationReport>,
}

/// Starts from the 3-ball multiset and lifts one dimension at a time up to
/// `d`. Covers are grid-checked and the result verified while the dimension
/// is at most `verify_limit`; above it a fixed translate scale is used.
pub fn recursive_ball_construction(
    m: usize,
    d: usize,
    tol: &Tolerance<f64>,
    verify_limit: usize,
) -> Result<BallConstruction> {
    if d < 3 || m == 0 {
        return domain("construction needs d >= 3 and m >= 1");
    }
    let mut dirs = b3_direction_multiset::<f64>(m, None)?;
    let inner_tol = Tolerance::new(tol.margin, Tolerance::<f64>::for_dim(3).samples)?;
    for k in 3..d {
        let cover = if k < verify_limit {
            let t = if k == 3 { inner_tol } else { Tolerance::new(tol.margin, Tolerance::<f64>::for_dim(k).samples)? };
            illumination_to_cover(&dirs, m, k, &t)?
        } else {
            let units: Vec<Vec<f64>> = dirs.expanded().map(|u| normalized(&u.to_f64())).collect();
            CoverSpec {
                dim: k,
                translates: units.iter().map(|u| u.iter().map(|x| -0.05 * x).collect()).collect(),
                demand: m,
            }
        };
        dirs = lift_cover_to_directions(&cover)?;
    }
    let report = if d <= verify_limit {
        Some(verify_mfold(&Body::Ball(Ball::new(d)?), &dirs, m, tol)?)
    } else {
        None
    };
    if let Some(r) = &report {
        if !r.pass {
            return Err(Error::Construction(format!(
                "lifted multiset fails verification in dimension {d}: worst count {} at margin {}",
                r.worst_count, r.worst_margin
            )));
        }
    }
    Ok(BallConstruction {
        dim: d,
        m,
        directions: dirs,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stereographic_examples() {
        assert_eq!(inverse_stereographic(&[0.0, 0.0, 0.0]), vec![0.0, 0.0, 0.0, -1.0]);
        let y = inverse_stereographic(&[3.0, 0.0, 0.0]);
        assert!((y[0] - 0.6).abs() < 1e-15 && (y[3] - 0.8).abs() < 1e-15);
        let y = inverse_stereographic(&[0.6, 0.8]);
        assert!((y[0] - 0.6).abs() < 1e-15 && (y[1] - 0.8).abs() < 1e-15 && y[2].abs() < 1e-15);
        let x = forward_stereographic(&inverse_stereographic(&[1.5, -2.0, 0.25]));
        assert!((x[0] - 1.5).abs() < 1e-12 && (x[1] + 2.0).abs() < 1e-12);
    }

    #[test]
    fn centred_disk_maps_to_lower_hemisphere() {
        let c = cap_center(&[0.0, 0.0, 0.0]).unwrap();
        assert!((c[3] + 1.0).abs() < 1e-12);
        let dirs = lift_cover_to_directions(&CoverSpec {
            dim: 3,
            translates: vec![vec![0.0; 3]],
            demand: 1,
        })
        .unwrap();
        let north = dirs.entries()[0].0.to_f64();
        assert!((north[3] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ball_fraction() {
        assert!((unit_ball_fraction(2) - std::f64::consts::PI / 4.0).abs() < 1e-12);
        assert!((unit_ball_fraction(3) - std::f64::consts::PI / 6.0).abs() < 1e-12);
    }
}
