//! Deterministic instance families. Every generated drawing is valid.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::SubdivisionWitness;
use crate::drawing::{crossing_points, validate_drawing, GeometricDrawing};
use crate::error::{Error, Result};
use crate::geometry::{intersect, orient, Coord, Point, SegmentIntersection};
use crate::graph::{Graph, Vertex};

const ATTEMPTS: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// `K_n` on the points `(i, i^2)`.
    StraightlineComplete {
        n: u32,
    },
    /// `n` plane stars with `n` leaves each, all crossed by one star `T`.
    StarConstruction {
        n: u32,
    },
    RandomSegments {
        n: u32,
        m: u32,
        seed: u64,
    },
    #[serde(rename = "k6-figure1")]
    K6Figure1,
    Grid {
        a: u32,
        b: u32,
    },
    RandomPlanarPlusChords {
        n: u32,
        extra: u32,
        seed: u64,
    },
    /// Edge `e` of the base drawing gets `e mod (c + 1)` subdivision vertices.
    Subdivided {
        base: Box<Family>,
        c: u32,
    },
}

impl Family {
    pub fn is_random(&self) -> bool {
        match self {
            Family::RandomSegments { .. } | Family::RandomPlanarPlusChords { .. } => true,
            Family::Subdivided { base, .. } => base.is_random(),
            _ => false,
        }
    }

    /// The same family with its seed replaced; deterministic families are
    /// returned unchanged.
    pub fn with_seed(&self, new: u64) -> Family {
        let mut f = self.clone();
        match &mut f {
            Family::RandomSegments { seed, .. } | Family::RandomPlanarPlusChords { seed, .. } => *seed = new,
            Family::Subdivided { base, .. } => **base = base.with_seed(new),
            _ => {}
        }
        f
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::StraightlineComplete { n } => write!(f, "straightline-complete(n={n})"),
            Family::StarConstruction { n } => write!(f, "star-construction(n={n})"),
            Family::RandomSegments { n, m, seed } => write!(f, "random-segments(n={n},m={m},seed={seed})"),
            Family::K6Figure1 => write!(f, "k6-figure1"),
            Family::Grid { a, b } => write!(f, "grid(a={a},b={b})"),
            Family::RandomPlanarPlusChords { n, extra, seed } => {
                write!(f, "random-planar-plus-chords(n={n},extra={extra},seed={seed})")
            }
            Family::Subdivided { base, c } => write!(f, "subdivided({base},c={c})"),
        }
    }
}

/// A generated drawing; subdivided families also carry the subdivision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub family: Family,
    pub drawing: GeometricDrawing,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subdivision: Option<SubdivisionWitness>,
}

pub fn generate(family: &Family) -> Result<Instance> {
    let (drawing, subdivision) = match family {
        Family::StraightlineComplete { n } => (straightline_complete(*n)?, None),
        Family::StarConstruction { n } => (star_construction(*n)?, None),
        Family::RandomSegments { n, m, seed } => (random_segments(*n, *m, *seed)?, None),
        Family::K6Figure1 => (k6_figure1()?, None),
        Family::Grid { a, b } => (grid(*a, *b)?, None),
        Family::RandomPlanarPlusChords { n, extra, seed } => (random_planar_plus_chords(*n, *extra, *seed)?, None),
        Family::Subdivided { base, c } => {
            let base = generate(base)?;
            let (d, w) = subdivide(&base.drawing, *c)?;
            (d, Some(w))
        }
    };
    let bad = validate_drawing(&drawing);
    if !bad.is_empty() {
        return Err(Error::InvalidDrawing(bad));
    }
    Ok(Instance {
        family: family.clone(),
        drawing,
        subdivision,
    })
}

fn straight(g: Graph, pos: impl IntoIterator<Item = (Vertex, Point)>) -> Result<GeometricDrawing> {
    GeometricDrawing::straight_line(g, pos.into_iter().collect())
}

pub fn straightline_complete(n: u32) -> Result<GeometricDrawing> {
    straight(
        Graph::complete(n),
        (0..n).map(|i| (i, Point::int(i as i64, (i as i64).pow(2)))),
    )
}

pub fn star_construction(n: u32) -> Result<GeometricDrawing> {
    if n == 0 {
        return Err(Error::InvalidInput("star-construction needs n >= 1".into()));
    }
    let (nn, step) = (n as i64, n + 1);
    let mut pos = Vec::new();
    let mut edges = Vec::new();
    for i in 0..n {
        let root = i * step;
        pos.push((root, Point::int(-4 * nn, (i * step) as i64)));
        for j in 1..=n {
            pos.push((root + j, Point::int(4 * nn, (i * step + j) as i64)));
            edges.push((root, root + j));
        }
    }
    let t = n * step;
    pos.push((t, Point::int(0, -1)));
    for j in 0..n {
        pos.push((t + 1 + j, Point::int(2 * j as i64 - (nn - 1), (nn + 1).pow(2) + 1)));
        edges.push((t, t + 1 + j));
    }
    straight(Graph::new(0..=t + n, edges)?, pos)
}

pub fn k6_figure1() -> Result<GeometricDrawing> {
    let pts = [(0, 0), (12, 0), (6, 12), (4, 2), (8, 3), (5, 6)];
    straight(
        Graph::complete(6),
        pts.iter()
            .enumerate()
            .map(|(i, &(x, y))| (i as Vertex, Point::int(x, y))),
    )
}

pub fn grid(a: u32, b: u32) -> Result<GeometricDrawing> {
    let id = |i: u32, j: u32| i * b + j;
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            if i + 1 < a {
                edges.push((id(i, j), id(i + 1, j)));
            }
            if j + 1 < b {
                edges.push((id(i, j), id(i, j + 1)));
            }
        }
    }
    let pos = (0..a).flat_map(|i| (0..b).map(move |j| (id(i, j), Point::int(i as i64, j as i64))));
    straight(Graph::new(0..a * b, edges)?, pos)
}

/// `n` distinct integer points, no three collinear.
fn general_position(n: u32, rng: &mut ChaCha8Rng) -> Result<Vec<Point>> {
    let side = 4 * i64::from(n.max(2));
    let mut pts: Vec<Point> = Vec::new();
    let mut tries = 0;
    while pts.len() < n as usize {
        tries += 1;
        if tries > ATTEMPTS * n as usize {
            return Err(Error::InvalidInput("could not place points in general position".into()));
        }
        let p = Point::int(rng.random_range(0..side), rng.random_range(0..side));
        let collinear = pts.iter().any(|q| *q == p)
            || pts
                .iter()
                .enumerate()
                .any(|(i, a)| pts[i + 1..].iter().any(|b| orient(a, b, &p).is_eq()));
        if !collinear {
            pts.push(p);
        }
    }
    Ok(pts)
}

pub fn random_segments(n: u32, m: u32, seed: u64) -> Result<GeometricDrawing> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    if m as usize > pairs.len() {
        return Err(Error::InvalidInput(format!("{m} edges requested on {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let pts = general_position(n, &mut rng)?;
        let mut chosen: Vec<(Vertex, Vertex)> = pairs.choose_multiple(&mut rng, m as usize).copied().collect();
        chosen.sort();
        let d = straight(
            Graph::new(0..n, chosen)?,
            pts.into_iter().enumerate().map(|(i, p)| (i as Vertex, p)),
        )?;
        if validate_drawing(&d).is_empty() {
            return Ok(d);
        }
    }
    Err(Error::InvalidInput("no valid random-segments drawing found".into()))
}

/// True iff the segments `ab` and `cd` meet anywhere other than at a
/// shared endpoint.
fn segments_meet(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    match intersect(a, b, c, d) {
        SegmentIntersection::None => false,
        SegmentIntersection::Overlap => true,
        SegmentIntersection::Point { at, .. } => {
            let shared = [a, b].iter().any(|p| **p == at) && [c, d].iter().any(|p| **p == at);
            !shared
        }
    }
}

/// A maximal plane straight-line graph on random points (pairs tried in
/// random order), plus `extra` random non-edges that may cross.
pub fn random_planar_plus_chords(n: u32, extra: u32, seed: u64) -> Result<GeometricDrawing> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = general_position(n, &mut rng)?;
    let mut pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut rng);
    let p = |v: Vertex| &pts[v as usize];
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut rest = Vec::new();
    for (u, v) in pairs {
        if edges.iter().all(|&(x, y)| !segments_meet(p(u), p(v), p(x), p(y))) {
            edges.push((u, v));
        } else {
            rest.push((u, v));
        }
    }
    let positions: BTreeMap<Vertex, Point> = pts.iter().cloned().enumerate().map(|(i, q)| (i as Vertex, q)).collect();
    let mut added = 0;
    for chord in rest {
        if added == extra {
            break;
        }
        edges.push(chord);
        let d = straight(Graph::new(0..n, edges.clone())?, positions.clone())?;
        if validate_drawing(&d).is_empty() {
            added += 1;
        } else {
            edges.pop();
        }
    }
    if added < extra {
        return Err(Error::InvalidInput(format!("only {added} of {extra} chords fit")));
    }
    edges.sort();
    straight(Graph::new(0..n, edges)?, positions)
}

/// Replaces edge `e` of a straight-line drawing by a path with
/// `e mod (c + 1)` interior vertices placed on the segment away from its
/// crossing points.
pub fn subdivide(d: &GeometricDrawing, c: u32) -> Result<(GeometricDrawing, SubdivisionWitness)> {
    if !d.is_straight_line() {
        return Err(Error::InvalidInput(
            "subdivided needs a straight-line base drawing".into(),
        ));
    }
    let g = d.graph();
    let mut blocked: BTreeMap<usize, BTreeSet<Coord>> = BTreeMap::new();
    for cp in crossing_points(d)? {
        blocked.entry(cp.e).or_default().insert(cp.along_e.1);
        blocked.entry(cp.f).or_default().insert(cp.along_f.1);
    }
    let mut next = g.vertices().last().map_or(0, |&v| v + 1);
    let mut positions = d.positions().clone();
    let mut edges = Vec::new();
    let mut paths = BTreeMap::new();
    for e in 0..g.m() {
        let (u, v) = g.edge(e);
        let s = e as u32 % (c + 1);
        let avoid = blocked.remove(&e).unwrap_or_default();
        let mut path = vec![u];
        let mut denom = i64::from(s) + 1;
        let ts: Vec<Coord> = loop {
            let ts: Vec<Coord> = (1..=i64::from(s))
                .map(|i| BigRational::new(i.into(), denom.into()))
                .collect();
            if ts.iter().all(|t| !avoid.contains(t)) {
                break ts;
            }
            denom += 1;
        };
        for t in ts {
            positions.insert(next, d.position(u).lerp(d.position(v), &t));
            path.push(next);
            next += 1;
        }
        path.push(v);
        edges.extend(path.windows(2).map(|w| (w[0], w[1])));
        paths.insert(e, path);
    }
    let host = Graph::new(positions.keys().copied(), edges)?;
    let drawing = GeometricDrawing::straight_line(host, positions)?;
    let witness = SubdivisionWitness {
        pattern: g.clone(),
        branch: g.vertices().iter().map(|&v| (v, v)).collect(),
        paths,
        c: c as usize,
    };
    Ok((drawing, witness))
}
