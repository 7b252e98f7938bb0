//! JSON formats for polygons, direction multisets, cap bodies, piercing
//! solutions and reports. Every document carries `"schema": "v1"`.
//!
//! Coordinates may be written as JSON numbers or as strings holding exact
//! rationals (`"3/4"`, `"-2"`, `"0.125"`). Numbers are read exactly, as the
//! binary fractions they denote.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cap_body::CapBody;
use crate::error::{Error, Result};
use crate::geometry::vector::Vec2;
use crate::geometry::{ConvexPolygon, Direction, DirectionMultiset};
use crate::polygon::PiercingSolution;
use crate::Rational;

pub const SCHEMA: &str = "v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Float(f64),
    Text(String),
}

impl Number {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Number::Float(x) => {
                Rational::from_float(*x).ok_or_else(|| Error::Parse(format!("non-finite number {x}")))
            }
            Number::Text(s) => parse_rational(s),
        }
    }

    pub fn to_f64(&self) -> Result<f64> {
        match self {
            Number::Float(x) => Ok(*x),
            Number::Text(s) => Ok(crate::scalar::to_f64(&parse_rational(s)?)),
        }
    }
}

/// Parses `"p/q"`, an integer, or a finite decimal, exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.trim_start().starts_with('-');
        let whole: BigInt = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        let digits: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = Rational::new(digits, scale);
        let w = Rational::from_integer(whole);
        return Ok(if negative { w - mag } else { w + mag });
    }
    Ok(Rational::from_integer(s.parse().map_err(|_| bad())?))
}

pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// An angle as `"p/q*pi"` when it is within `1e-12` of such a multiple
/// with `q <= 360`, else the float itself (shortest round-trip form, at most
/// 17 significant digits).
pub fn format_angle(theta: f64) -> Value {
    let r = theta / std::f64::consts::PI;
    for q in 1..=360i64 {
        let p = (r * q as f64).round();
        if (r - p / q as f64).abs() < 1e-12 {
            let p = p as i64;
            let g = num_integer::gcd(p, q);
            let (p, q) = (p / g.max(1), q / g.max(1));
            return Value::String(match (p, q) {
                (0, _) => "0".to_string(),
                (1, 1) => "pi".to_string(),
                (p, 1) => format!("{p}*pi"),
                (p, q) => format!("{p}/{q}*pi"),
            });
        }
    }
    json!(theta)
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

#[derive(Deserialize)]
struct PolygonDoc {
    vertices: Vec<[Number; 2]>,
}

pub fn polygon_from_json(text: &str) -> Result<ConvexPolygon<Rational>> {
    let doc: PolygonDoc = parse(text, "polygon")?;
    let pts = doc
        .vertices
        .iter()
        .map(|[x, y]| Ok(Vec2::new(x.to_rational()?, y.to_rational()?)))
        .collect::<Result<Vec<_>>>()?;
    ConvexPolygon::new(pts)
}

pub fn polygon_to_json(p: &ConvexPolygon<Rational>) -> Value {
    let v: Vec<Value> = p
        .vertices()
        .iter()
        .map(|q| json!([format_rational(&q.x), format_rational(&q.y)]))
        .collect();
    json!({"schema": SCHEMA, "vertices": v})
}

#[derive(Deserialize)]
struct EntryDoc {
    dir: Vec<Number>,
    mult: usize,
}

#[derive(Deserialize)]
struct DirectionsDoc {
    entries: Vec<EntryDoc>,
}

fn directions_with<T: crate::Scalar>(
    text: &str,
    conv: impl Fn(&Number) -> Result<T>,
) -> Result<DirectionMultiset<T>> {
    let doc: DirectionsDoc = parse(text, "directions")?;
    let mut out = DirectionMultiset::new();
    for e in doc.entries {
        if e.mult == 0 {
            return Err(Error::Parse("multiplicities must be positive".into()));
        }
        let coords = e.dir.iter().map(&conv).collect::<Result<Vec<_>>>()?;
        out.push_distinct(Direction::new(coords)?, e.mult);
    }
    Ok(out)
}

pub fn directions_from_json(text: &str) -> Result<DirectionMultiset<f64>> {
    directions_with(text, Number::to_f64)
}

pub fn rational_directions_from_json(text: &str) -> Result<DirectionMultiset<Rational>> {
    directions_with(text, Number::to_rational)
}

fn entries_json<T: crate::Scalar>(d: &DirectionMultiset<T>, coord: impl Fn(&T) -> Value) -> Vec<Value> {
    d.entries()
        .iter()
        .map(|(u, k)| json!({"dir": u.coords().iter().map(&coord).collect::<Vec<_>>(), "mult": k}))
        .collect()
}

pub fn directions_to_json(d: &DirectionMultiset<f64>) -> Value {
    json!({"schema": SCHEMA, "entries": entries_json(d, |x| json!(x))})
}

pub fn rational_directions_to_json(d: &DirectionMultiset<Rational>) -> Value {
    json!({"schema": SCHEMA, "entries": entries_json(d, |x| json!(format_rational(x)))})
}

#[derive(Deserialize)]
struct CapBodyDoc {
    dim: usize,
    apexes: Vec<Vec<Number>>,
}

pub fn cap_body_from_json(text: &str) -> Result<CapBody<f64>> {
    let doc: CapBodyDoc = parse(text, "cap body")?;
    let apexes = doc
        .apexes
        .iter()
        .map(|v| v.iter().map(Number::to_f64).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    CapBody::new(doc.dim, apexes)
}

pub fn cap_body_to_json(c: &CapBody<f64>) -> Value {
    json!({"schema": SCHEMA, "dim": c.dim(), "apexes": c.apexes()})
}

/// Optimum, exact directions, and the certificate of a piercing solution.
pub fn solution_to_json(sol: &PiercingSolution<Rational>) -> Result<Value> {
    let dirs = sol.directions()?;
    let cert = &sol.certificate;
    let mut certificate = json!({
        "method": match cert.method {
            crate::polygon::Method::CutAndUnroll => "cut-and-unroll",
            crate::polygon::Method::Exhaustive => "exhaustive",
        },
    });
    if let Some(a) = cert.anchor_arc {
        certificate["anchor_arc"] = json!(a);
    }
    if let Some(w) = &cert.infeasible_below {
        certificate["infeasible_below"] = json!(w);
    }
    Ok(json!({
        "schema": SCHEMA,
        "optimum": sol.optimum,
        "directions": entries_json(&dirs, |x| json!(format_rational(x))),
        "placements": sol.placements.iter().map(|p| json!({"arc_start": p.arc, "mult": p.mult})).collect::<Vec<_>>(),
        "certificate": certificate,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/4").unwrap(), Rational::new(3.into(), 4.into()));
        assert_eq!(parse_rational("-2").unwrap(), Rational::from_integer((-2).into()));
        assert_eq!(parse_rational("-0.125").unwrap(), Rational::new((-1).into(), 8.into()));
        assert_eq!(parse_rational("1.5").unwrap(), Rational::new(3.into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&Rational::new(6.into(), 4.into())), "3/2");
    }

    #[test]
    fn angles() {
        assert_eq!(format_angle(std::f64::consts::PI * 3.0 / 5.0), json!("3/5*pi"));
        assert_eq!(format_angle(std::f64::consts::PI), json!("pi"));
        assert_eq!(format_angle(0.0), json!("0"));
        assert_eq!(format_angle(1.0), json!(1.0));
    }

    #[test]
    fn round_trips() {
        let sq = r#"{"vertices": [["0","0"],["1","0"],["1","1"],[0,1]]}"#;
        let p = polygon_from_json(sq).unwrap();
        assert_eq!(polygon_from_json(&polygon_to_json(&p).to_string()).unwrap(), p);
        let d = directions_from_json(r#"{"entries":[{"dir":[1,"1/2"],"mult":2}]}"#).unwrap();
        assert_eq!(d.total(), 2);
        assert_eq!(directions_from_json(&directions_to_json(&d).to_string()).unwrap(), d);
        let c = cap_body_from_json(r#"{"dim":2,"apexes":[[2,0]]}"#).unwrap();
        assert_eq!(cap_body_from_json(&cap_body_to_json(&c).to_string()).unwrap(), c);
        assert!(polygon_from_json("{").is_err());
    }
}
