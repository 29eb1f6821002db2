//! JSON formats for bodies and simplices, and the short body specs used on the command line.
//!
//! Bodies serialize as `{"body": "cube", "n": 3}`,
//! `{"body": "ball", "n": 2, "center": [..], "radius": r}`,
//! `{"body": "poly", "n": 2, "vertices": [[..], ..]}` or `{"body": "cloud", "n": 2, "points": [[..], ..]}`.
//! On input, `n` is optional except for the cube, and both `{"n": .., "vertices": [..]}`
//! and a bare array of points are read as a vertex polytope.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::constructions::catalog;
use crate::error::{Error, Result};
use crate::geometry::{Body, Point, Simplex};
use crate::scalar::Real;

#[derive(Serialize, Deserialize)]
#[serde(tag = "body", rename_all = "lowercase", deny_unknown_fields)]
enum BodyRepr<T> {
    Cube {
        n: usize,
    },
    Ball {
        #[serde(default)]
        n: Option<usize>,
        center: Vec<T>,
        radius: T,
    },
    Poly {
        #[serde(default)]
        n: Option<usize>,
        vertices: Vec<Vec<T>>,
    },
    Cloud {
        #[serde(default)]
        n: Option<usize>,
        points: Vec<Vec<T>>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexList<T> {
    n: usize,
    vertices: Vec<Vec<T>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BodyInput<T> {
    Tagged(BodyRepr<T>),
    Vertices(VertexList<T>),
    Points(Vec<Vec<T>>),
}

fn points<T: Real>(rows: Vec<Vec<T>>) -> Result<Vec<Point<T>>> {
    rows.into_iter().map(Point::new).collect()
}

fn check_dim<T: Real>(body: Body<T>, n: Option<usize>) -> Result<Body<T>> {
    match n {
        Some(m) if m != body.dim() => Err(Error::DimensionMismatch {
            expected: m,
            found: body.dim(),
        }),
        _ => Ok(body),
    }
}

impl<T: Real> TryFrom<BodyRepr<T>> for Body<T> {
    type Error = Error;

    fn try_from(r: BodyRepr<T>) -> Result<Self> {
        match r {
            BodyRepr::Cube { n } => Body::cube(n),
            BodyRepr::Ball { n, center, radius } => {
                check_dim(Body::ball(Point::new(center)?, radius)?, n)
            }
            BodyRepr::Poly { n, vertices } => {
                check_dim(Body::vertex_polytope(points(vertices)?)?, n)
            }
            BodyRepr::Cloud { n, points: p } => check_dim(Body::point_cloud(points(p)?)?, n),
        }
    }
}

impl<T: Real> From<&Body<T>> for BodyRepr<T> {
    fn from(b: &Body<T>) -> Self {
        let rows = |p: &[Point<T>]| p.iter().map(|v| v.coords().to_vec()).collect();
        let n = Some(b.dim());
        match b {
            Body::Cube { n } => BodyRepr::Cube { n: *n },
            Body::Ball { center, radius } => BodyRepr::Ball {
                n,
                center: center.coords().to_vec(),
                radius: *radius,
            },
            Body::VertexPolytope { vertices } => BodyRepr::Poly {
                n,
                vertices: rows(vertices),
            },
            Body::PointCloud { points } => BodyRepr::Cloud {
                n,
                points: rows(points),
            },
        }
    }
}

impl<T: Real + Serialize> Serialize for Body<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BodyRepr::from(self).serialize(s)
    }
}

impl<'de, T: Real + Deserialize<'de>> Deserialize<'de> for Body<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parsed = match BodyInput::<T>::deserialize(d)? {
            BodyInput::Tagged(r) => Body::try_from(r),
            BodyInput::Vertices(v) => points(v.vertices)
                .and_then(Body::vertex_polytope)
                .and_then(|b| check_dim(b, Some(v.n))),
            BodyInput::Points(rows) => points(rows).and_then(Body::vertex_polytope),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

pub fn parse_body_json(text: &str) -> Result<Body<f64>> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("bad body JSON: {e}")))
}

/// A simplex in the `{"n": .., "vertices": [..]}` format, or a bare array of `n + 1` rows.
pub fn parse_simplex_json(text: &str) -> Result<Simplex<f64>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Input {
        Full(Simplex<f64>),
        Rows(Vec<Vec<f64>>),
    }
    match serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("bad simplex JSON: {e}")))?
    {
        Input::Full(s) => Ok(s),
        Input::Rows(rows) => Simplex::from_rows(rows),
    }
}

fn parse_dim(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::InvalidInput(format!("bad dimension `{s}`")))
}

/// Resolves a body spec: `cube:7`, `ball:3` (the unit ball), `poly:<path>`,
/// `cloud:<path>`, `json:<path>`, or a bare `cube`/`ball` with the dimension in `n`.
pub fn parse_body_spec(spec: &str, n: Option<usize>) -> Result<Body<f64>> {
    let (kind, arg) = match spec.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (spec, None),
    };
    let dim = |arg: Option<&str>| -> Result<usize> {
        match (arg, n) {
            (Some(a), Some(m)) => {
                let d = parse_dim(a)?;
                if d != m {
                    return Err(Error::DimensionMismatch {
                        expected: m,
                        found: d,
                    });
                }
                Ok(d)
            }
            (Some(a), None) => parse_dim(a),
            (None, Some(m)) => Ok(m),
            (None, None) => Err(Error::InvalidInput(format!(
                "body `{spec}` needs a dimension"
            ))),
        }
    };
    let path = |arg: Option<&str>| -> Result<String> {
        let p =
            arg.ok_or_else(|| Error::InvalidInput(format!("body `{spec}` needs a file path")))?;
        read(Path::new(p))
    };
    let body = match kind {
        "cube" => Body::cube(dim(arg)?)?,
        "ball" => Body::unit_ball(dim(arg)?)?,
        "poly" => match parse_body_json(&path(arg)?)? {
            b @ Body::VertexPolytope { .. } => b,
            Body::PointCloud { points } => Body::vertex_polytope(points)?,
            _ => return Err(Error::InvalidInput("poly: expects a vertex list".into())),
        },
        "cloud" => match parse_body_json(&path(arg)?)? {
            Body::VertexPolytope { vertices } => Body::point_cloud(vertices)?,
            b @ Body::PointCloud { .. } => b,
            _ => return Err(Error::InvalidInput("cloud: expects a point list".into())),
        },
        "json" => parse_body_json(&path(arg)?)?,
        other => return Err(Error::InvalidInput(format!("unknown body kind `{other}`"))),
    };
    if let Some(m) = n {
        if body.dim() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: body.dim(),
            });
        }
    }
    Ok(body)
}

/// `catalog:<name>` or the path of a simplex JSON file.
pub fn resolve_simplex(spec: &str) -> Result<Simplex<f64>> {
    match spec.strip_prefix("catalog:") {
        Some(name) => catalog(name),
        None => parse_simplex_json(&read(Path::new(spec))?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn body_json_round_trip() {
        let bodies = vec![
            Body::cube(3).unwrap(),
            Body::ball(Point::from_f64(&[0.5, -1.0]).unwrap(), 2.0).unwrap(),
            Body::vertex_polytope(Simplex::<f64>::unit(2).vertices().to_vec()).unwrap(),
            Body::point_cloud(vec![Point::from_f64(&[1.0]).unwrap()]).unwrap(),
        ];
        for b in bodies {
            let text = serde_json::to_string(&b).unwrap();
            assert_eq!(parse_body_json(&text).unwrap(), b, "{text}");
        }
        assert_eq!(
            serde_json::to_string(&Body::<f64>::cube(2).unwrap()).unwrap(),
            r#"{"body":"cube","n":2}"#
        );
    }

    #[test]
    fn bare_point_list_is_a_polytope() {
        let b = parse_body_json("[[0,0],[1,0],[0,1]]").unwrap();
        assert_eq!(b.kind(), "poly");
        let v = parse_body_json(r#"{"n": 2, "vertices": [[0,0],[1,0],[0,1]]}"#).unwrap();
        assert_eq!(v, b);
        assert!(parse_body_json(r#"{"n": 3, "vertices": [[0,0],[1,0],[0,1]]}"#).is_err());
        let ball = parse_body_json(r#"{"body":"ball","n":2,"center":[0,0],"radius":1}"#).unwrap();
        assert_eq!(ball, Body::unit_ball(2).unwrap());
        assert!(parse_body_json(r#"{"body":"ball","n":3,"center":[0,0],"radius":1}"#).is_err());
        assert!(parse_body_json(r#"{"body":"cube","n":0}"#).is_err());
        assert!(parse_body_json(r#"{"body":"sphere","n":2}"#).is_err());
    }

    #[test]
    fn body_specs() {
        assert_eq!(
            parse_body_spec("cube:7", None).unwrap(),
            Body::cube(7).unwrap()
        );
        assert_eq!(
            parse_body_spec("cube", Some(4)).unwrap(),
            Body::cube(4).unwrap()
        );
        assert_eq!(
            parse_body_spec("ball:3", None).unwrap(),
            Body::unit_ball(3).unwrap()
        );
        assert!(matches!(
            parse_body_spec("cube:3", Some(4)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(parse_body_spec("cube", None).is_err());
        assert!(parse_body_spec("torus:2", None).is_err());
        assert!(parse_body_spec("poly:/nonexistent/file.json", None).is_err());
    }

    #[test]
    fn simplex_inputs() {
        assert_eq!(resolve_simplex("catalog:S_prime_3").unwrap().dim(), 3);
        assert!(matches!(
            resolve_simplex("catalog:nope"),
            Err(Error::UnknownName(_))
        ));
        let s = parse_simplex_json("[[0,0],[1,0],[0,1]]").unwrap();
        assert_eq!(s, Simplex::unit(2));
        let s = parse_simplex_json(r#"{"n":2,"vertices":[[0,0],[1,0],[0,1]]}"#).unwrap();
        assert_eq!(s, Simplex::unit(2));
    }
}
