//! Deterministic, seed-free boundary samples.
//!
//! Circles and polygon boundaries are divided at equal arc length. The
//! 2-sphere uses the Fibonacci lattice; higher spheres push a Kronecker
//! (generalized golden ratio) sequence through the inverse CDFs of the
//! hyperspherical angles, which maps the uniform cube measure onto the
//! uniform sphere measure.

use crate::geometry::polygon::ConvexPolygon;
use crate::scalar::{Real, Scalar};

/// Indexable quasi-uniform point set on `S^{d-1}`.
#[derive(Debug, Clone)]
pub struct SphereLattice {
    dim: usize,
    count: usize,
    alphas: Vec<f64>,
}

impl SphereLattice {
    pub fn new(dim: usize, count: usize) -> Self {
        assert!(dim >= 2 && count >= 1);
        let alphas = if dim >= 4 {
            kronecker_alphas(dim - 1)
        } else {
            Vec::new()
        };
        SphereLattice { dim, count, alphas }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Writes point `i` into `out` (length `dim`).
    pub fn point_into<R: Real>(&self, i: usize, out: &mut [R]) {
        use std::f64::consts::PI;
        let n = self.count as f64;
        match self.dim {
            2 => {
                let (s, c) = (2.0 * PI * i as f64 / n).sin_cos();
                out[0] = R::lit(c);
                out[1] = R::lit(s);
            }
            3 => {
                let z = 1.0 - (2.0 * i as f64 + 1.0) / n;
                let r = (1.0 - z * z).max(0.0).sqrt();
                let golden_angle = PI * (3.0 - 5f64.sqrt());
                let (s, c) = (golden_angle * i as f64).sin_cos();
                out[0] = R::lit(r * c);
                out[1] = R::lit(r * s);
                out[2] = R::lit(z);
            }
            d => {
                let dims = d - 1;
                let mut sin_prod = 1.0;
                for k in 0..dims {
                    let t = (0.5 + (i as f64 + 1.0) * self.alphas[k]).fract();
                    if k + 1 == dims {
                        let (s, c) = (2.0 * PI * t).sin_cos();
                        out[k] = R::lit(sin_prod * c);
                        out[k + 1] = R::lit(sin_prod * s);
                    } else {
                        // angle k has density proportional to sin^(d-2-k)
                        let phi = inverse_sin_power_cdf(d - 2 - k, t);
                        out[k] = R::lit(sin_prod * phi.cos());
                        sin_prod *= phi.sin();
                    }
                }
            }
        }
    }

    pub fn point<R: Real>(&self, i: usize) -> Vec<R> {
        let mut v = vec![R::zero(); self.dim];
        self.point_into(i, &mut v);
        v
    }

    pub fn points<R: Real>(&self) -> Vec<Vec<R>> {
        (0..self.count).map(|i| self.point(i)).collect()
    }
}

/// Additive recurrence constants `1 / g^k` with `g^(D+1) = g + 1`.
fn kronecker_alphas(dims: usize) -> Vec<f64> {
    let mut g = 2.0f64;
    for _ in 0..200 {
        g = (1.0 + g).powf(1.0 / (dims as f64 + 1.0));
    }
    (1..=dims).map(|k| (1.0 / g.powi(k as i32)).fract()).collect()
}

/// `int_0^phi sin^j`.
fn sin_power_integral(j: usize, phi: f64) -> f64 {
    match j {
        0 => phi,
        1 => 1.0 - phi.cos(),
        _ => {
            let jf = j as f64;
            -phi.sin().powi(j as i32 - 1) * phi.cos() / jf
                + (jf - 1.0) / jf * sin_power_integral(j - 2, phi)
        }
    }
}

fn inverse_sin_power_cdf(j: usize, t: f64) -> f64 {
    use std::f64::consts::PI;
    match j {
        0 => PI * t,
        1 => (1.0 - 2.0 * t).clamp(-1.0, 1.0).acos(),
        _ => {
            let total = sin_power_integral(j, PI);
            let target = t * total;
            let (mut lo, mut hi) = (0.0, PI);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if sin_power_integral(j, mid) < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        }
    }
}

/// `n` points on the polygon boundary at equal arc-length spacing, starting at vertex 0.
pub fn polygon_boundary<T: Scalar, R: Real>(poly: &ConvexPolygon<T>, n: usize) -> Vec<[R; 2]> {
    let v: Vec<[f64; 2]> = poly.vertices_f64();
    let k = v.len();
    let lens: Vec<f64> = (0..k)
        .map(|i| {
            let a = v[i];
            let b = v[(i + 1) % k];
            ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt()
        })
        .collect();
    let perimeter: f64 = lens.iter().sum();
    let step = perimeter / n as f64;
    let mut out = Vec::with_capacity(n);
    let mut edge = 0;
    let mut start = 0.0;
    for j in 0..n {
        let s = j as f64 * step;
        while edge + 1 < k && s >= start + lens[edge] {
            start += lens[edge];
            edge += 1;
        }
        let t = ((s - start) / lens[edge]).clamp(0.0, 1.0);
        let a = v[edge];
        let b = v[(edge + 1) % k];
        out.push([
            R::lit(a[0] + t * (b[0] - a[0])),
            R::lit(a[1] + t * (b[1] - a[1])),
        ]);
    }
    out
}
