//! JSON documents. Every document written carries `"schema": "bpl/1"`;
//! documents read may omit it but must not name another schema.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::constructions::MinorDrawing;
use crate::drawing::{AbstractDrawing, GeometricDrawing};
use crate::error::{Error, Result};
use crate::geometry::{Coord, Point};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::SCHEMA;

/// Serializes `value` (which must be a JSON object) with the schema tag.
pub fn to_document<T: Serialize>(value: &T) -> Result<Value> {
    let mut v = serde_json::to_value(value)?;
    match v.as_object_mut() {
        Some(map) => {
            map.insert("schema".into(), Value::String(SCHEMA.into()));
        }
        None => return Err(Error::InvalidInput("only JSON objects can be documents".into())),
    }
    Ok(v)
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(&to_document(value)?)?)
}

/// Parses a document, checking the schema tag when present.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let raw: Value = serde_json::from_str(text)?;
    check_schema(&raw)?;
    Ok(serde_json::from_str(text)?)
}

pub fn from_value<T: DeserializeOwned>(raw: Value) -> Result<T> {
    check_schema(&raw)?;
    Ok(serde_json::from_value(raw)?)
}

fn check_schema(raw: &Value) -> Result<()> {
    match raw.get("schema") {
        None => Ok(()),
        Some(Value::String(s)) if s == SCHEMA => Ok(()),
        Some(other) => Err(Error::InvalidInput(format!(
            "unsupported schema {other}, expected \"{SCHEMA}\""
        ))),
    }
}

/// An integer that is written as a JSON number when it fits in `i64` and
/// as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Int(BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(i) => s.serialize_i64(i),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(i) => Ok(Int(i.into())),
            Raw::Str(s) => s.parse().map(Int).map_err(serde::de::Error::custom),
        }
    }
}

type PointJson = [Int; 4];

fn point_to_json(p: &Point) -> PointJson {
    [
        Int(p.x.numer().clone()),
        Int(p.x.denom().clone()),
        Int(p.y.numer().clone()),
        Int(p.y.denom().clone()),
    ]
}

fn point_from_json([xn, xd, yn, yd]: PointJson) -> Result<Point> {
    let ratio = |n: BigInt, d: BigInt| -> Result<Coord> {
        if d == BigInt::from(0) {
            return Err(Error::InvalidInput("zero denominator in coordinate".into()));
        }
        Ok(BigRational::new(n, d))
    };
    Ok(Point::new(ratio(xn.0, xd.0)?, ratio(yn.0, yd.0)?))
}

#[derive(Serialize, Deserialize)]
struct DrawingJson {
    graph: Graph,
    positions: BTreeMap<Vertex, PointJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    routes: BTreeMap<String, Vec<PointJson>>,
}

impl Serialize for GeometricDrawing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let g = self.graph();
        let routes = (0..g.m())
            .filter(|&e| self.route(e).len() > 2)
            .map(|e| {
                let (u, v) = g.edge(e);
                (format!("{u}-{v}"), self.route(e).iter().map(point_to_json).collect())
            })
            .collect();
        DrawingJson {
            graph: g.clone(),
            positions: self.positions().iter().map(|(&v, p)| (v, point_to_json(p))).collect(),
            routes,
        }
        .serialize(s)
    }
}

fn parse_edge_key(g: &Graph, key: &str) -> Result<EdgeId> {
    let bad = || Error::InvalidInput(format!("route key {key:?} is not an edge \"u-v\""));
    let (u, v) = key.split_once('-').ok_or_else(bad)?;
    let (u, v): (Vertex, Vertex) = (
        u.trim().parse().map_err(|_| bad())?,
        v.trim().parse().map_err(|_| bad())?,
    );
    g.edge_id(u, v).ok_or_else(bad)
}

impl<'de> Deserialize<'de> for GeometricDrawing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DrawingJson::deserialize(d)?;
        let build = || -> Result<GeometricDrawing> {
            let positions = raw
                .positions
                .into_iter()
                .map(|(v, p)| Ok((v, point_from_json(p)?)))
                .collect::<Result<_>>()?;
            let mut routes = BTreeMap::new();
            for (key, pts) in raw.routes {
                let e = parse_edge_key(&raw.graph, &key)?;
                routes.insert(e, pts.into_iter().map(point_from_json).collect::<Result<_>>()?);
            }
            GeometricDrawing::new(raw.graph, positions, routes)
        };
        build().map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct AbstractDrawingJson {
    graph: Graph,
    crossings: Vec<(EdgeId, EdgeId, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<BTreeMap<EdgeId, Vec<usize>>>,
}

impl Serialize for AbstractDrawing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AbstractDrawingJson {
            graph: self.graph().clone(),
            crossings: self.crossings().iter().map(|c| (c.e, c.f, c.multiplicity)).collect(),
            order: self.order().cloned(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbstractDrawing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = AbstractDrawingJson::deserialize(d)?;
        AbstractDrawing::new(raw.graph, raw.crossings, raw.order).map_err(serde::de::Error::custom)
    }
}

impl Serialize for MinorDrawing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            drawing: &'a AbstractDrawing,
            certificate: &'a crate::numbers::GapCoverCertificate,
            walks: &'a [Vec<EdgeId>],
            witnesses: Vec<[EdgeId; 4]>,
        }
        Out {
            drawing: &self.drawing,
            certificate: &self.certificate,
            walks: &self.walks,
            witnesses: self
                .witnesses
                .iter()
                .map(|(&(h1, h2), &(e0, f0))| [h1, h2, e0, f0])
                .collect(),
        }
        .serialize(s)
    }
}

/// `p/q`, or just `p` for integers.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
