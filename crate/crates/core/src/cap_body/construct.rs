//! Explicit cap-body constructions: a single spike on the disk, and prisms
//! of apexes around the 3-ball.

use crate::cap_body::CapBody;
use crate::error::{domain, Error, Result};
use crate::geometry::direction::{Direction, DirectionMultiset};
use crate::geometry::vector::norm;
use crate::geometry::{ConvexPolygon, Tolerance};
use crate::polygon::{illumination_number_polygon, regular_polygon_number, TangentPolygon};
use crate::scalar::{to_f64, Real, Scalar};
use crate::verify::{verify_mfold, Body, IlluminationReport};
use crate::Rational;

/// `2m + 1` directions m-fold illuminating `conv(B^2 ∪ {v})`.
///
/// A `(2m + 1)`-gon is circumscribed about the disk with one vertex at `v`,
/// whose exterior angle is `alpha = pi - 2 arcsin(1/|v|)`, and the remaining
/// exterior angles chosen so every `m` consecutive ones sum to less than
/// `pi`; direction `i` then points from the meeting point of sides `i` and
/// `i + m` to the centre.
pub fn b2_single_spike_directions<R: Real + Scalar>(v: &[R], m: usize) -> Result<DirectionMultiset<R>> {
    if v.len() != 2 {
        return domain("apex must be 2-dimensional");
    }
    let r = norm(v);
    if !(r > R::one()) {
        return domain("apex must lie outside the unit disk");
    }
    if m == 0 {
        return domain("multiplicity must be positive");
    }
    let pi = R::PI();
    let two = R::lit(2.0);
    let alpha = pi - two * (R::one() / r).asin();
    let exterior: Vec<R> = if m == 1 {
        vec![alpha, pi - alpha / two, pi - alpha / two]
    } else {
        let eps = (pi - alpha) / R::lit(2.0 * m as f64);
        let rest = (pi - alpha - eps) / R::lit((m - 1) as f64);
        let mut a = vec![alpha];
        a.extend(std::iter::repeat_n(rest, m - 1));
        a.extend([alpha / two + eps, alpha / two + eps]);
        a.extend(std::iter::repeat_n(rest, m - 1));
        a
    };
    // Side k has outward normal angle psi_k; the vertex between sides k and
    // k + 1 has exterior angle exterior[k], so v sits between sides 0 and 1.
    let mut psi = vec![v[1].atan2(v[0]) - alpha / two];
    for a in &exterior[..exterior.len() - 1] {
        let last = *psi.last().expect("nonempty");
        psi.push(last + *a);
    }
    let n = psi.len();
    let poly = TangentPolygon::new(psi, vec![R::one(); n])?;
    let mut out = DirectionMultiset::new();
    for u in poly.crossing_directions(m, [R::zero(), R::zero()])? {
        out.push_distinct(Direction::new(u.to_vec())?, 1);
    }
    Ok(out)
}

/// `n` apexes at `sec(pi/n) (cos 2 pi i/n, sin 2 pi i/n, 0)` around the
/// equator, the top apex `(0, 0, sec((n - 2) pi / 2n))`, and optionally its
/// mirror image below.
pub fn b3_prism_apexes<R: Real>(n: usize, with_bottom: bool) -> Result<Vec<Vec<R>>> {
    if n < 3 {
        return domain(format!("prism needs n >= 3, got {n}"));
    }
    let pi = R::PI();
    let nf = R::lit(n as f64);
    let ring = R::one() / (pi / nf).cos();
    let mut apexes: Vec<Vec<R>> = (1..=n)
        .map(|i| {
            let t = R::lit(2.0 * i as f64) * pi / nf;
            vec![ring * t.cos(), ring * t.sin(), R::zero()]
        })
        .collect();
    let h = R::one() / (R::lit((n - 2) as f64) * pi / (R::lit(2.0) * nf)).cos();
    apexes.push(vec![R::zero(), R::zero(), h]);
    if with_bottom {
        apexes.push(vec![R::zero(), R::zero(), -h]);
    }
    Ok(apexes)
}

/// `m + ceil(m n / floor((n - 1) / 2))`.
pub fn cap_body_number_top_only(n: usize, m: usize) -> Result<usize> {
    Ok(m + regular_polygon_number(n, m)?)
}

/// `2m + ceil(m n / floor((n - 1) / 2))`.
pub fn cap_body_number_top_bottom(n: usize, m: usize) -> Result<usize> {
    Ok(2 * m + regular_polygon_number(n, m)?)
}

/// A verified construction for a prism cap body.
#[derive(Debug, Clone)]
pub struct CapBodyConstruction<R> {
    pub body: CapBody<R>,
    pub directions: DirectionMultiset<R>,
    pub tilt: R,
    pub report: IlluminationReport,
}

/// Optimal equatorial directions for the ring of apexes, tilted upwards by
/// `eps`, plus `m` copies of straight down (and `m` of straight up when the
/// bottom apex is present). `eps` is halved from `0.1` until verification
/// passes.
pub fn b3_capbody_directions<R: Real + Scalar>(
    n: usize,
    m: usize,
    with_bottom: bool,
    tol: &Tolerance<R>,
) -> Result<CapBodyConstruction<R>> {
    if m == 0 {
        return domain("multiplicity must be positive");
    }
    let body = CapBody::new(3, b3_prism_apexes::<R>(n, with_bottom)?)?;
    let ring = ConvexPolygon::<Rational>::regular(n)?;
    let planar = illumination_number_polygon(&ring, m)?.directions()?;
    let flat: Vec<([R; 2], usize)> = planar
        .entries()
        .iter()
        .map(|(d, k)| {
            let c = d.as_vec2();
            let (x, y) = (to_f64(&c.x), to_f64(&c.y));
            let l = x.hypot(y);
            ([R::lit(x / l), R::lit(y / l)], *k)
        })
        .collect();
    let wrapped = Body::CapBody(body.clone());
    let mut eps = R::lit(0.1);
    let mut last = None;
    while eps >= R::lit(1e-9) {
        let mut dirs = DirectionMultiset::new();
        for (u, k) in &flat {
            dirs.push_distinct(Direction::new(vec![u[0], u[1], eps])?, *k);
        }
        dirs.push_distinct(Direction::new(vec![R::zero(), R::zero(), -R::one()])?, m);
        if with_bottom {
            dirs.push_distinct(Direction::new(vec![R::zero(), R::zero(), R::one()])?, m);
        }
        let report = verify_mfold(&wrapped, &dirs, m, tol)?;
        if report.pass {
            return Ok(CapBodyConstruction {
                body,
                directions: dirs,
                tilt: eps,
                report,
            });
        }
        last = Some(report);
        eps = eps / R::lit(2.0);
    }
    let detail = last.map(|r| serde_json::to_string(&r).unwrap_or_default()).unwrap_or_default();
    Err(Error::Construction(format!("no tilt down to 1e-9 verified; last report {detail}")))
}
