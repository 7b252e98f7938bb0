//! Sufficient conditions, on exterior angles, for an odd polygon-like
//! arrangement to be m-fold illuminated by `2m + 1` directions.
//!
//! A window of exterior angles at vertices `a..b` sums to less than a half
//! turn exactly when the edge entering vertex `a` and the edge leaving vertex
//! `b` still make a strict counter-clockwise turn, so no angles are computed.

use crate::error::{domain, Result};
use crate::geometry::ConvexPolygon;
use crate::scalar::Scalar;

/// Every `m` consecutive exterior angles of a `(2m + 1)`-gon sum to less than `pi`.
pub fn check_consecutive_angle_condition<T: Scalar>(poly: &ConvexPolygon<T>, m: usize) -> Result<bool> {
    let n = poly.len();
    if m < 2 || n != 2 * m + 1 {
        return domain(format!("need a (2m+1)-gon with m >= 2, got n = {n}, m = {m}"));
    }
    Ok((0..n).all(|k| poly.edge(k + n - 1).cross(&poly.edge(k + m - 1)).is_positive()))
}

/// Grouped variant. The exterior angles are split into `2m + 1` cyclic groups,
/// group `g` holding the vertices `b[g] .. b[g + 1] - 1`, and every `m`
/// consecutive group sums must be less than `pi`.
///
/// `breakpoints` must be strictly increasing, below `n`, with
/// `b[2m] - b[0] < n` so that no group is empty.
pub fn check_grouped_angle_condition<T: Scalar>(
    poly: &ConvexPolygon<T>,
    m: usize,
    breakpoints: &[usize],
) -> Result<bool> {
    let n = poly.len();
    let g = 2 * m + 1;
    if m == 0 || n < g {
        return domain(format!("need m >= 1 and n >= 2m+1, got n = {n}, m = {m}"));
    }
    if breakpoints.len() != g {
        return domain(format!("grouping needs {g} breakpoints, got {}", breakpoints.len()));
    }
    if breakpoints.windows(2).any(|w| w[0] >= w[1]) || breakpoints[g - 1] >= n {
        return domain("breakpoints must be strictly increasing and below n");
    }
    Ok(grouped_holds(poly, m, breakpoints))
}

fn grouped_holds<T: Scalar>(poly: &ConvexPolygon<T>, m: usize, b: &[usize]) -> bool {
    let n = poly.len();
    let g = b.len();
    (0..g).all(|k| {
        let first = b[k];
        let past = b[(k + m) % g];
        poly.edge(first + n - 1).cross(&poly.edge(past + n - 1)).is_positive()
    })
}

/// First grouping (in lexicographic order of breakpoints) satisfying the
/// grouped condition, by exhaustive search. Limited to `n <= 12`.
pub fn find_grouping<T: Scalar>(poly: &ConvexPolygon<T>, m: usize) -> Result<Option<Vec<usize>>> {
    let n = poly.len();
    let g = 2 * m + 1;
    if n > 12 {
        return domain("grouping search is limited to n <= 12");
    }
    if m == 0 || n < g {
        return domain(format!("need m >= 1 and n >= 2m+1, got n = {n}, m = {m}"));
    }
    let mut b: Vec<usize> = (0..g).collect();
    loop {
        if grouped_holds(poly, m, &b) {
            return Ok(Some(b));
        }
        // next g-subset of 0..n
        let Some(i) = (0..g).rev().find(|&i| b[i] < n - g + i) else {
            return Ok(None);
        };
        b[i] += 1;
        for j in i + 1..g {
            b[j] = b[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vec2;
    use crate::Rational;

    fn q(x: i64, y: i64) -> Vec2<Rational> {
        Vec2::new(Rational::from_integer(x.into()), Rational::from_integer(y.into()))
    }

    #[test]
    fn regular_polygons() {
        let p5 = ConvexPolygon::<Rational>::regular(5).unwrap();
        let p7 = ConvexPolygon::<Rational>::regular(7).unwrap();
        assert!(check_consecutive_angle_condition(&p5, 2).unwrap());
        assert!(check_consecutive_angle_condition(&p7, 3).unwrap());
        assert!(check_consecutive_angle_condition(&p7, 2).is_err());
        assert!(check_grouped_angle_condition(&p7, 3, &[0, 1, 2, 3, 4, 5, 6]).unwrap());
        let p10 = ConvexPolygon::<Rational>::regular(10).unwrap();
        assert!(check_grouped_angle_condition(&p10, 2, &[0, 2, 4, 6, 8]).unwrap());
    }

    #[test]
    fn right_angles_fail() {
        // exterior angles pi/2, pi/2, pi/2, pi/4, pi/4 (starting at vertex 1)
        let p = ConvexPolygon::new(vec![q(0, 0), q(1, 0), q(1, 3), q(-1, 3), q(-1, 1)]).unwrap();
        assert!(!check_consecutive_angle_condition(&p, 2).unwrap());
        let sq = ConvexPolygon::new(vec![q(0, 0), q(1, 0), q(1, 1), q(0, 1)]).unwrap();
        assert!(!check_grouped_angle_condition(&sq, 1, &[1, 2, 3]).unwrap());
        assert_eq!(find_grouping(&sq, 1).unwrap(), None);
    }

    #[test]
    fn bad_groupings() {
        let sq = ConvexPolygon::new(vec![q(0, 0), q(1, 0), q(1, 1), q(0, 1)]).unwrap();
        assert!(check_grouped_angle_condition(&sq, 1, &[0, 1]).is_err());
        assert!(check_grouped_angle_condition(&sq, 1, &[0, 2, 2]).is_err());
        assert!(check_grouped_angle_condition(&sq, 1, &[0, 2, 4]).is_err());
        assert!(check_grouped_angle_condition(&sq, 2, &[0, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn search_finds_hexagon_grouping() {
        let p6 = ConvexPolygon::<Rational>::regular(6).unwrap();
        let b = find_grouping(&p6, 1).unwrap().unwrap();
        assert!(check_grouped_angle_condition(&p6, 1, &b).unwrap());
    }
}
