//! Minimum m-fold piercing of open circular arcs.
//!
//! Any point of an optimal piercing can be rotated clockwise until it sits
//! just past the start of some arc without leaving an arc it was in, so it
//! suffices to place points at the "canonical positions" infinitesimally
//! counter-clockwise of arc starts. In that finite circular order every arc
//! covers a contiguous run of positions.
//!
//! The solver cuts the circle just before the start of an anchor arc and
//! unrolls it onto a line. With prefix sums `S_0 = 0 <= S_1 <= ... <= S_P = T`
//! of the placement counts, an arc covering positions `l..=r` demands
//! `S_{r+1} - S_l >= m`, and an arc that wraps past the cut demands
//! `S_l - S_{r+1} <= T - m`. For a fixed total `T` this is a system of
//! difference constraints, feasible exactly when its constraint graph has no
//! negative cycle, and then integral. Feasibility is monotone in `T`, so the
//! first feasible `T` is the optimum and the negative cycle found at `T - 1`
//! certifies the lower bound.

use crate::error::{domain, Error, Result};
use crate::geometry::direction::{Direction, DirectionMultiset};
use crate::geometry::vector::Vec2;
use crate::polygon::arcs::ArcSystem;
use crate::scalar::{from_f64, to_f64, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    CutAndUnroll,
    Exhaustive,
}

/// A canonical position: just counter-clockwise of the start of `arc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    pub arc: usize,
    pub mult: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub method: Method,
    /// Arc whose start the circle was cut at.
    pub anchor_arc: Option<usize>,
    /// Arcs whose constraints form a negative cycle at total `optimum - 1`.
    pub infeasible_below: Option<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct PiercingSolution<T> {
    pub placements: Vec<Placement>,
    pub optimum: usize,
    pub certificate: Certificate,
    system: ArcSystem<T>,
}

/// Canonical positions in CCW order with the arcs covering each.
struct Layout<T> {
    /// Start directions, one per distinct position, sorted by angle.
    starts: Vec<Vec2<T>>,
    /// An arc whose start is each position.
    owner: Vec<usize>,
    /// `covers[k][p]`: arc `k` contains position `p`.
    covers: Vec<Vec<bool>>,
}

impl<T: Scalar> Layout<T> {
    fn new(sys: &ArcSystem<T>) -> Self {
        let mut idx: Vec<usize> = (0..sys.arcs.len()).collect();
        idx.sort_by(|&a, &b| sys.arcs[a].start.angle_cmp(&sys.arcs[b].start));
        let mut starts: Vec<Vec2<T>> = Vec::new();
        let mut owner = Vec::new();
        for i in idx {
            let s = &sys.arcs[i].start;
            if starts.last().is_none_or(|l| !l.same_direction(s)) {
                starts.push(s.clone());
                owner.push(i);
            }
        }
        let covers = sys
            .arcs
            .iter()
            .map(|a| starts.iter().map(|s| a.contains_just_past(s)).collect())
            .collect();
        Layout {
            starts,
            owner,
            covers,
        }
    }

    fn len(&self) -> usize {
        self.starts.len()
    }
}

/// A run of `len` positions starting at `first` (cyclically).
#[derive(Debug, Clone, Copy)]
struct Run {
    first: usize,
    len: usize,
}

fn circular_run(mask: &[bool]) -> Result<Run> {
    let p = mask.len();
    let len = mask.iter().filter(|&&b| b).count();
    if len == 0 {
        return Err(Error::Internal("arc contains no canonical position".into()));
    }
    if len == p {
        return Ok(Run { first: 0, len });
    }
    let first = (0..p)
        .find(|&i| mask[i] && !mask[(i + p - 1) % p])
        .ok_or_else(|| Error::Internal("arc coverage is not contiguous".into()))?;
    if (0..len).any(|k| !mask[(first + k) % p]) {
        return Err(Error::Internal("arc coverage is not contiguous".into()));
    }
    Ok(Run { first, len })
}

struct Edge {
    from: usize,
    to: usize,
    weight: i64,
    arc: Option<usize>,
}

enum Feasibility {
    Feasible(Vec<i64>),
    NegativeCycle(Vec<usize>),
}

/// Bellman-Ford from a virtual source joined to every node by a zero edge.
fn difference_constraints(nodes: usize, edges: &[Edge]) -> Feasibility {
    let mut dist = vec![0i64; nodes];
    let mut pred: Vec<Option<usize>> = vec![None; nodes];
    let mut last = None;
    for _ in 0..=nodes {
        last = None;
        for (ei, e) in edges.iter().enumerate() {
            let cand = dist[e.from] + e.weight;
            if cand < dist[e.to] {
                dist[e.to] = cand;
                pred[e.to] = Some(ei);
                last = Some(e.to);
            }
        }
        if last.is_none() {
            return Feasibility::Feasible(dist);
        }
    }
    // Walk back far enough to land on the cycle, then collect it.
    let mut v = last.expect("relaxation in final round");
    for _ in 0..nodes {
        v = edges[pred[v].expect("predecessor")].from;
    }
    let start = v;
    let mut arcs = Vec::new();
    loop {
        let e = &edges[pred[v].expect("predecessor")];
        if let Some(a) = e.arc {
            arcs.push(a);
        }
        v = e.from;
        if v == start {
            break;
        }
    }
    arcs.sort_unstable();
    arcs.dedup();
    Feasibility::NegativeCycle(arcs)
}

/// Minimum-size multiset of directions meeting every arc at least `m` times.
pub fn min_mfold_pierce<T: Scalar>(sys: &ArcSystem<T>, m: usize) -> Result<PiercingSolution<T>> {
    if sys.arcs.is_empty() {
        return domain("empty arc system");
    }
    if m == 0 {
        return domain("multiplicity must be positive");
    }
    let layout = Layout::new(sys);
    let p = layout.len();
    let runs = layout
        .covers
        .iter()
        .map(|c| circular_run(c))
        .collect::<Result<Vec<_>>>()?;
    let anchor = (0..runs.len())
        .min_by_key(|&k| (runs[k].len, k))
        .expect("nonempty");
    // Relabel positions so the anchor's first position is 0.
    let shift = runs[anchor].first;
    let rel = |pos: usize| (pos + p - shift) % p;

    let build = |total: i64| -> Vec<Edge> {
        let mut edges = Vec::new();
        for j in 0..p {
            edges.push(Edge { from: j + 1, to: j, weight: 0, arc: None });
        }
        edges.push(Edge { from: 0, to: p, weight: total, arc: None });
        edges.push(Edge { from: p, to: 0, weight: -total, arc: None });
        for (k, r) in runs.iter().enumerate() {
            if r.len == p {
                continue;
            }
            let l = rel(r.first);
            let end = l + r.len; // exclusive, may pass p
            let mi = m as i64;
            if end <= p {
                edges.push(Edge { from: end, to: l, weight: -mi, arc: Some(k) });
            } else {
                edges.push(Edge { from: end - p, to: l, weight: total - mi, arc: Some(k) });
            }
        }
        edges
    };

    let upper = m * sys.arcs.len();
    let mut infeasible_below = None;
    for total in m..=upper {
        match difference_constraints(p + 1, &build(total as i64)) {
            Feasibility::NegativeCycle(arcs) => infeasible_below = Some(arcs),
            Feasibility::Feasible(dist) => {
                let base = dist[0];
                let mut placements = Vec::new();
                for j in 0..p {
                    let x = (dist[j + 1] - base) - (dist[j] - base);
                    if x > 0 {
                        let pos = (j + shift) % p;
                        placements.push(Placement { arc: layout.owner[pos], mult: x as usize });
                    }
                }
                let sol = PiercingSolution {
                    placements,
                    optimum: total,
                    certificate: Certificate {
                        method: Method::CutAndUnroll,
                        anchor_arc: Some(anchor),
                        infeasible_below,
                    },
                    system: sys.clone(),
                };
                sol.check()?;
                return Ok(sol);
            }
        }
    }
    Err(Error::Internal("no feasible total up to m times the arc count".into()))
}

/// Reference solver: enumerates placement vectors with at most `m` points per
/// canonical position. Limited to `n <= 9` arcs and `m <= 4`.
pub fn min_mfold_pierce_exhaustive<T: Scalar>(
    sys: &ArcSystem<T>,
    m: usize,
) -> Result<PiercingSolution<T>> {
    if sys.arcs.len() > 9 || m > 4 {
        return domain("exhaustive search is limited to n <= 9 and m <= 4");
    }
    if sys.arcs.is_empty() || m == 0 {
        return domain("empty arc system or zero multiplicity");
    }
    let layout = Layout::new(sys);
    let p = layout.len();
    let mut x = vec![0usize; p];
    let mut best: Option<(usize, Vec<usize>)> = None;
    loop {
        let total: usize = x.iter().sum();
        if best.as_ref().is_none_or(|(b, _)| total < *b)
            && layout
                .covers
                .iter()
                .all(|c| c.iter().zip(&x).filter(|(in_arc, _)| **in_arc).map(|(_, k)| k).sum::<usize>() >= m)
        {
            best = Some((total, x.clone()));
        }
        // odometer
        let mut i = 0;
        while i < p && x[i] == m {
            x[i] = 0;
            i += 1;
        }
        if i == p {
            break;
        }
        x[i] += 1;
    }
    let (optimum, x) = best.ok_or_else(|| Error::Internal("no feasible placement".into()))?;
    let placements = x
        .iter()
        .enumerate()
        .filter(|(_, k)| **k > 0)
        .map(|(pos, k)| Placement { arc: layout.owner[pos], mult: *k })
        .collect();
    let sol = PiercingSolution {
        placements,
        optimum,
        certificate: Certificate {
            method: Method::Exhaustive,
            anchor_arc: None,
            infeasible_below: None,
        },
        system: sys.clone(),
    };
    sol.check()?;
    Ok(sol)
}

impl<T: Scalar> PiercingSolution<T> {
    /// Symbolic re-check: every arc holds at least `demand` placements.
    fn check(&self) -> Result<()> {
        let m = self.system.demand;
        for (k, a) in self.system.arcs.iter().enumerate() {
            let count: usize = self
                .placements
                .iter()
                .filter(|pl| a.contains_just_past(&self.system.arcs[pl.arc].start))
                .map(|pl| pl.mult)
                .sum();
            if count < m {
                return Err(Error::Internal(format!("arc {k} pierced {count} < {m} times")));
            }
        }
        if self.placements.iter().map(|p| p.mult).sum::<usize>() != self.optimum {
            return Err(Error::Internal("placement sizes disagree with optimum".into()));
        }
        Ok(())
    }

    pub fn system(&self) -> &ArcSystem<T> {
        &self.system
    }

    /// Concrete directions: each placement moves to the middle of the gap
    /// between its arc start and the next arc endpoint counter-clockwise,
    /// which lies in every arc the symbolic position was in. Membership is
    /// re-verified exactly.
    pub fn directions(&self) -> Result<DirectionMultiset<T>> {
        let endpoints: Vec<&Vec2<T>> = self
            .system
            .arcs
            .iter()
            .flat_map(|a| [&a.start, &a.end])
            .collect();
        let mut out = DirectionMultiset::new();
        for pl in &self.placements {
            let s = &self.system.arcs[pl.arc].start;
            let required: Vec<usize> = (0..self.system.arcs.len())
                .filter(|&k| self.system.arcs[k].contains_just_past(s))
                .collect();
            let inside = |d: &Vec2<T>| required.iter().all(|&k| self.system.arcs[k].contains(d));
            let mut d = gap_midpoint(s, &endpoints);
            if !inside(&d) {
                let mut delta = from_f64::<T>(0.5);
                let half = from_f64::<T>(0.5);
                let mut found = false;
                for _ in 0..256 {
                    d = s.add(&s.perp().scale(&delta));
                    if inside(&d) {
                        found = true;
                        break;
                    }
                    delta = delta * half.clone();
                }
                if !found {
                    return Err(Error::Internal("could not concretize a placement".into()));
                }
            }
            out.push_distinct(Direction::from_vec2(&d)?, pl.mult);
        }
        Ok(out)
    }
}

fn gap_midpoint<T: Scalar>(s: &Vec2<T>, endpoints: &[&Vec2<T>]) -> Vec2<T> {
    // In the frame of s: v -> (<s, v>, cross(s, v)); angles there are angles from s.
    let frame = |v: &Vec2<T>| Vec2::new(s.dot(v), s.cross(v));
    let next = endpoints
        .iter()
        .filter(|v| !v.same_direction(s))
        .min_by(|a, b| frame(a).angle_cmp(&frame(b)))
        .copied();
    let Some(t) = next else {
        return s.perp();
    };
    if !s.cross(t).is_positive() {
        return s.perp();
    }
    let inv_norm = |v: &Vec2<T>| from_f64::<T>(1.0 / to_f64(&v.norm2()).sqrt());
    s.scale(&inv_norm(s)).add(&t.scale(&inv_norm(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ConvexPolygon;
    use crate::polygon::arcs::vertex_arcs;
    use crate::Rational;

    fn q(x: i64, y: i64) -> Vec2<Rational> {
        Vec2::new(Rational::from_integer(x.into()), Rational::from_integer(y.into()))
    }

    fn solve(p: &ConvexPolygon<Rational>, m: usize) -> usize {
        min_mfold_pierce(&vertex_arcs(p, m), m).unwrap().optimum
    }

    #[test]
    fn small_cases() {
        let sq = ConvexPolygon::new(vec![q(0, 0), q(1, 0), q(1, 1), q(0, 1)]).unwrap();
        let tri = ConvexPolygon::new(vec![q(0, 0), q(3, 0), q(1, 2)]).unwrap();
        for m in 1..=4 {
            assert_eq!(solve(&sq, m), 4 * m);
            assert_eq!(solve(&tri, m), 3 * m);
        }
        let pent = ConvexPolygon::<Rational>::regular(5).unwrap();
        assert_eq!(solve(&pent, 1), 3);
        assert_eq!(solve(&pent, 2), 5);
    }

    #[test]
    fn exhaustive_agrees_on_regular_polygons() {
        for n in 3..=8 {
            let p = ConvexPolygon::<Rational>::regular(n).unwrap();
            for m in 1..=3 {
                let sys = vertex_arcs(&p, m);
                let a = min_mfold_pierce(&sys, m).unwrap();
                let b = min_mfold_pierce_exhaustive(&sys, m).unwrap();
                assert_eq!(a.optimum, b.optimum, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn lower_bound_witness_present() {
        let p = ConvexPolygon::<Rational>::regular(7).unwrap();
        let sol = min_mfold_pierce(&vertex_arcs(&p, 2), 2).unwrap();
        assert_eq!(sol.optimum, 5);
        let w = sol.certificate.infeasible_below.unwrap();
        assert!(!w.is_empty());
    }

    #[test]
    fn concrete_directions_stay_in_their_arcs() {
        for n in 3..=10 {
            let p = ConvexPolygon::<Rational>::regular(n).unwrap();
            let sys = vertex_arcs(&p, 2);
            let sol = min_mfold_pierce(&sys, 2).unwrap();
            let dirs = sol.directions().unwrap();
            assert_eq!(dirs.total(), sol.optimum);
            for a in &sys.arcs {
                let c: usize = dirs
                    .entries()
                    .iter()
                    .filter(|(d, _)| a.contains(&d.as_vec2()))
                    .map(|(_, k)| k)
                    .sum();
                assert!(c >= 2);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let sys: ArcSystem<Rational> = ArcSystem { arcs: vec![], demand: 1 };
        assert!(min_mfold_pierce(&sys, 1).is_err());
        let p = ConvexPolygon::<Rational>::regular(10).unwrap();
        assert!(min_mfold_pierce_exhaustive(&vertex_arcs(&p, 1), 1).is_err());
    }
}
