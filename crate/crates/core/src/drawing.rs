//! Geometric drawings with exact coordinates, and the abstract crossing
//! structure every solver works from.
//!
//! A geometric drawing places each vertex at a rational point and routes
//! each edge along a polyline. Routes are stored oriented from the smaller
//! endpoint id to the larger one. Validation is strict: overlaps, touching
//! at bend points, edges through vertices and triple points are all
//! rejected rather than resolved, so that every recorded crossing is a
//! transversal intersection of exactly two edges.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{intersect, on_segment, Coord, Point, SegmentIntersection};
use crate::graph::{EdgeId, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricDrawing {
    graph: Graph,
    positions: BTreeMap<Vertex, Point>,
    routes: Vec<Vec<Point>>,
}

impl GeometricDrawing {
    /// Builds a drawing; edges without an explicit route are straight
    /// segments. A route given from the larger endpoint to the smaller one
    /// is reversed.
    pub fn new(
        graph: Graph,
        positions: BTreeMap<Vertex, Point>,
        mut routes: BTreeMap<EdgeId, Vec<Point>>,
    ) -> Result<Self> {
        if let Some(v) = graph.vertices().iter().find(|v| !positions.contains_key(v)) {
            return Err(Error::InvalidInput(format!("vertex {v} has no position")));
        }
        if let Some(v) = positions.keys().find(|v| !graph.contains(**v)) {
            return Err(Error::InvalidInput(format!("position for unknown vertex {v}")));
        }
        if let Some(e) = routes.keys().find(|&&e| e >= graph.m()) {
            return Err(Error::InvalidInput(format!("route for unknown edge {e}")));
        }
        let routes = (0..graph.m())
            .map(|e| {
                let (u, v) = graph.edge(e);
                match routes.remove(&e) {
                    Some(mut r) => {
                        if r.len() >= 2 && r.first() == Some(&positions[&v]) && r.last() == Some(&positions[&u]) {
                            r.reverse();
                        }
                        r
                    }
                    None => vec![positions[&u].clone(), positions[&v].clone()],
                }
            })
            .collect();
        Ok(GeometricDrawing {
            graph,
            positions,
            routes,
        })
    }

    pub fn straight_line(graph: Graph, positions: BTreeMap<Vertex, Point>) -> Result<Self> {
        GeometricDrawing::new(graph, positions, BTreeMap::new())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn position(&self, v: Vertex) -> &Point {
        &self.positions[&v]
    }

    pub fn positions(&self) -> &BTreeMap<Vertex, Point> {
        &self.positions
    }

    /// The polyline of edge `e`, from its smaller endpoint to its larger one.
    pub fn route(&self, e: EdgeId) -> &[Point] {
        &self.routes[e]
    }

    pub fn is_straight_line(&self) -> bool {
        self.routes.iter().all(|r| r.len() == 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DrawingViolation {
    DuplicatePosition {
        u: Vertex,
        v: Vertex,
    },
    RouteEndpoint {
        edge: EdgeId,
    },
    DegenerateSegment {
        edge: EdgeId,
    },
    EdgeThroughVertex {
        edge: EdgeId,
        vertex: Vertex,
    },
    SelfIntersection {
        edge: EdgeId,
    },
    Overlap {
        e: EdgeId,
        f: EdgeId,
    },
    /// Two edges meet at a bend point without a transversal crossing.
    Touching {
        e: EdgeId,
        f: EdgeId,
    },
    TriplePoint {
        edges: Vec<EdgeId>,
    },
}

impl fmt::Display for DrawingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DrawingViolation::*;
        match self {
            DuplicatePosition { u, v } => write!(f, "duplicate position: vertices {u} and {v}"),
            RouteEndpoint { edge } => write!(f, "route endpoint: edge {edge}"),
            DegenerateSegment { edge } => write!(f, "degenerate segment: edge {edge}"),
            EdgeThroughVertex { edge, vertex } => {
                write!(f, "edge through vertex: edge {edge} passes vertex {vertex}")
            }
            SelfIntersection { edge } => write!(f, "self intersection: edge {edge}"),
            Overlap { e, f: g } => write!(f, "overlap: edges {e} and {g}"),
            Touching { e, f: g } => write!(f, "touching: edges {e} and {g} meet at a bend"),
            TriplePoint { edges } => write!(f, "triple point: edges {edges:?}"),
        }
    }
}

/// A transversal crossing of two edges at a point.
#[derive(Clone, Debug)]
pub(crate) struct CrossingPoint {
    pub e: EdgeId,
    pub f: EdgeId,
    pub at: Point,
    /// (segment index, parameter) along `e`'s route.
    pub along_e: (usize, Coord),
    pub along_f: (usize, Coord),
}

struct Scan {
    violations: BTreeSet<DrawingViolation>,
    crossings: Vec<CrossingPoint>,
}

fn scan(d: &GeometricDrawing) -> Scan {
    let g = &d.graph;
    let mut violations = BTreeSet::new();
    let mut good = vec![true; g.m()];

    let mut by_point: BTreeMap<&Point, Vertex> = BTreeMap::new();
    for (&v, p) in &d.positions {
        if let Some(&u) = by_point.get(p) {
            violations.insert(DrawingViolation::DuplicatePosition { u, v });
        } else {
            by_point.insert(p, v);
        }
    }

    for e in 0..g.m() {
        let (u, v) = g.edge(e);
        let r = &d.routes[e];
        if r.len() < 2 || r[0] != d.positions[&u] || r[r.len() - 1] != d.positions[&v] {
            violations.insert(DrawingViolation::RouteEndpoint { edge: e });
            good[e] = false;
            continue;
        }
        if r.windows(2).any(|w| w[0] == w[1]) {
            violations.insert(DrawingViolation::DegenerateSegment { edge: e });
            good[e] = false;
            continue;
        }
        for (&w, p) in &d.positions {
            if w != u && w != v && r.windows(2).any(|s| on_segment(p, &s[0], &s[1])) {
                violations.insert(DrawingViolation::EdgeThroughVertex { edge: e, vertex: w });
            }
        }
        if self_intersects(r) {
            violations.insert(DrawingViolation::SelfIntersection { edge: e });
        }
    }

    let vertex_at = |p: &Point| by_point.get(p).copied();
    let mut crossings = Vec::new();
    for e in 0..g.m() {
        if !good[e] {
            continue;
        }
        for f in e + 1..g.m() {
            if !good[f] {
                continue;
            }
            let (re, rf) = (&d.routes[e], &d.routes[f]);
            for i in 0..re.len() - 1 {
                for j in 0..rf.len() - 1 {
                    match intersect(&re[i], &re[i + 1], &rf[j], &rf[j + 1]) {
                        SegmentIntersection::None => {}
                        SegmentIntersection::Overlap => {
                            violations.insert(DrawingViolation::Overlap { e, f });
                        }
                        SegmentIntersection::Point { at, s, t } => {
                            if vertex_at(&at).is_some() {
                                // shared endpoints are fine; anything else was
                                // reported as an edge through a vertex
                                continue;
                            }
                            let interior =
                                |x: &Coord| *x > Coord::from_integer(0.into()) && *x < Coord::from_integer(1.into());
                            if !interior(&s) || !interior(&t) {
                                violations.insert(DrawingViolation::Touching { e, f });
                                continue;
                            }
                            crossings.push(CrossingPoint {
                                e,
                                f,
                                at,
                                along_e: (i, s),
                                along_f: (j, t),
                            });
                        }
                    }
                }
            }
        }
    }

    let mut at_point: BTreeMap<&Point, BTreeSet<EdgeId>> = BTreeMap::new();
    for c in &crossings {
        at_point.entry(&c.at).or_default().extend([c.e, c.f]);
    }
    for edges in at_point.values() {
        if edges.len() >= 3 {
            violations.insert(DrawingViolation::TriplePoint {
                edges: edges.iter().copied().collect(),
            });
        }
    }
    Scan { violations, crossings }
}

fn self_intersects(r: &[Point]) -> bool {
    let k = r.len() - 1;
    for i in 0..k {
        for j in i + 1..k {
            let hit = intersect(&r[i], &r[i + 1], &r[j], &r[j + 1]);
            let ok = match hit {
                SegmentIntersection::None => true,
                SegmentIntersection::Overlap => false,
                SegmentIntersection::Point { at, .. } => j == i + 1 && at == r[j],
            };
            if !ok {
                return true;
            }
        }
    }
    false
}

/// All violations of the drawing conditions; empty iff the drawing is valid.
pub fn validate_drawing(d: &GeometricDrawing) -> Vec<DrawingViolation> {
    scan(d).violations.into_iter().collect()
}

/// Crossing points of a drawing, ordered by edge pair and then by position
/// along the first edge.
pub(crate) fn crossing_points(d: &GeometricDrawing) -> Result<Vec<CrossingPoint>> {
    let s = scan(d);
    if !s.violations.is_empty() {
        return Err(Error::InvalidDrawing(s.violations.into_iter().collect()));
    }
    let mut cs = s.crossings;
    cs.sort_by(|a, b| (a.e, a.f, &a.along_e).cmp(&(b.e, b.f, &b.along_e)));
    Ok(cs)
}

/// The abstract crossing structure of a valid geometric drawing.
pub fn compute_crossings(d: &GeometricDrawing) -> Result<AbstractDrawing> {
    let points = crossing_points(d)?;
    let mut pairs: BTreeMap<(EdgeId, EdgeId), u32> = BTreeMap::new();
    for c in &points {
        *pairs.entry((c.e, c.f)).or_default() += 1;
    }
    let index: BTreeMap<(EdgeId, EdgeId), usize> = pairs.keys().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut along: BTreeMap<EdgeId, Vec<((usize, Coord), usize)>> = BTreeMap::new();
    for c in &points {
        let i = index[&(c.e, c.f)];
        along.entry(c.e).or_default().push((c.along_e.clone(), i));
        along.entry(c.f).or_default().push((c.along_f.clone(), i));
    }
    let order = along
        .into_iter()
        .map(|(e, mut list)| {
            list.sort();
            (e, list.into_iter().map(|(_, i)| i).collect())
        })
        .collect();
    AbstractDrawing::new(
        d.graph.clone(),
        pairs.into_iter().map(|((e, f), m)| (e, f, m)),
        Some(order),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Crossing {
    pub e: EdgeId,
    pub f: EdgeId,
    pub multiplicity: u32,
}

/// A graph together with a multiset of crossing edge pairs, optionally
/// with the order in which each edge meets its crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractDrawing {
    graph: Graph,
    crossings: Vec<Crossing>,
    index: BTreeMap<(EdgeId, EdgeId), usize>,
    order: Option<BTreeMap<EdgeId, Vec<usize>>>,
}

impl AbstractDrawing {
    /// Pairs are stored with the smaller edge id first and keep their input
    /// position as pair index. `order` lists, per edge, pair indices in route
    /// order; a pair of multiplicity `μ` appears `μ` times in both lists.
    pub fn new(
        graph: Graph,
        crossings: impl IntoIterator<Item = (EdgeId, EdgeId, u32)>,
        order: Option<BTreeMap<EdgeId, Vec<usize>>>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        let mut list = Vec::new();
        let mut index = BTreeMap::new();
        for (e, f, multiplicity) in crossings {
            if e == f {
                return bad(format!("edge {e} crosses itself"));
            }
            if e >= graph.m() || f >= graph.m() {
                return bad(format!("crossing {e}-{f} names an unknown edge"));
            }
            if multiplicity == 0 {
                return bad(format!("crossing {e}-{f} has multiplicity 0"));
            }
            let (e, f) = (e.min(f), e.max(f));
            if index.insert((e, f), list.len()).is_some() {
                return bad(format!("crossing {e}-{f} listed twice"));
            }
            list.push(Crossing { e, f, multiplicity });
        }
        if let Some(order) = &order {
            let mut seen: BTreeMap<(EdgeId, usize), u32> = BTreeMap::new();
            for (&edge, idxs) in order {
                for &i in idxs {
                    let Some(c) = list.get(i) else {
                        return bad(format!("order of edge {edge} names unknown pair {i}"));
                    };
                    if c.e != edge && c.f != edge {
                        return bad(format!("order of edge {edge} names pair {i} not on it"));
                    }
                    *seen.entry((edge, i)).or_default() += 1;
                }
            }
            for (i, c) in list.iter().enumerate() {
                for edge in [c.e, c.f] {
                    if seen.get(&(edge, i)).copied().unwrap_or(0) != c.multiplicity {
                        return bad(format!("order of edge {edge} lists pair {i} the wrong number of times"));
                    }
                }
            }
        }
        Ok(AbstractDrawing {
            graph,
            crossings: list,
            index,
            order,
        })
    }

    pub fn crossing_free(graph: Graph) -> Self {
        AbstractDrawing::new(graph, [], None).expect("no crossings")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn order(&self) -> Option<&BTreeMap<EdgeId, Vec<usize>>> {
        self.order.as_ref()
    }

    pub fn multiplicity(&self, e: EdgeId, f: EdgeId) -> u32 {
        self.pair_index(e, f).map_or(0, |i| self.crossings[i].multiplicity)
    }

    pub fn pair_index(&self, e: EdgeId, f: EdgeId) -> Option<usize> {
        self.index.get(&(e.min(f), e.max(f))).copied()
    }

    pub fn total_occurrences(&self) -> usize {
        self.crossings.iter().map(|c| c.multiplicity as usize).sum()
    }

    /// Every crossing occurrence as `(e, f, occurrence index)`.
    pub fn occurrences(&self) -> impl Iterator<Item = (EdgeId, EdgeId, u32)> + '_ {
        self.crossings
            .iter()
            .flat_map(|c| (0..c.multiplicity).map(move |i| (c.e, c.f, i)))
    }

    pub fn is_crossing_free(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Crossing pairs whose edges share no endpoint, smaller id first.
    pub fn independent_pairs(&self) -> Vec<(EdgeId, EdgeId)> {
        independent_pairs(self)
    }
}

/// Graph on the edge ids of the drawing, two adjacent iff they cross.
pub fn crossing_graph(a: &AbstractDrawing) -> Graph {
    let m = a.graph.m() as Vertex;
    Graph::new(0..m, a.crossings.iter().map(|c| (c.e as Vertex, c.f as Vertex)))
        .expect("crossing pairs are distinct and proper")
}

pub fn independent_pairs(a: &AbstractDrawing) -> Vec<(EdgeId, EdgeId)> {
    let mut v: Vec<_> = a
        .crossings
        .iter()
        .filter(|c| a.graph.independent(c.e, c.f))
        .map(|c| (c.e, c.f))
        .collect();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(list: &[(Vertex, i64, i64)]) -> BTreeMap<Vertex, Point> {
        list.iter().map(|&(v, x, y)| (v, Point::int(x, y))).collect()
    }

    #[test]
    fn disjoint_segments_valid() {
        let g = Graph::new(0..4, [(0, 1), (2, 3)]).unwrap();
        let d = GeometricDrawing::straight_line(g, pos(&[(0, 0, 0), (1, 1, 0), (2, 0, 1), (3, 1, 1)])).unwrap();
        assert!(validate_drawing(&d).is_empty());
        assert!(compute_crossings(&d).unwrap().is_crossing_free());
    }

    #[test]
    fn single_crossing() {
        let g = Graph::new(0..4, [(0, 1), (2, 3)]).unwrap();
        let d = GeometricDrawing::straight_line(g, pos(&[(0, 0, 0), (1, 2, 2), (2, 0, 2), (3, 2, 0)])).unwrap();
        let a = compute_crossings(&d).unwrap();
        assert_eq!(
            a.crossings(),
            &[Crossing {
                e: 0,
                f: 1,
                multiplicity: 1
            }]
        );
        assert_eq!(independent_pairs(&a), vec![(0, 1)]);
        assert_eq!(crossing_graph(&a).m(), 1);
    }

    #[test]
    fn triple_point_rejected() {
        let g = Graph::new(0..6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let d = GeometricDrawing::straight_line(
            g,
            pos(&[(0, -1, 0), (1, 1, 0), (2, 0, -1), (3, 0, 1), (4, -1, -1), (5, 1, 1)]),
        )
        .unwrap();
        let v = validate_drawing(&d);
        assert_eq!(v, vec![DrawingViolation::TriplePoint { edges: vec![0, 1, 2] }]);
        assert!(v[0].to_string().starts_with("triple point"));
        assert!(compute_crossings(&d).is_err());
    }

    #[test]
    fn edge_through_vertex_rejected() {
        let g = Graph::new(0..3, [(0, 1)]).unwrap();
        let d = GeometricDrawing::straight_line(g, pos(&[(0, 0, 0), (1, 2, 0), (2, 1, 0)])).unwrap();
        let v = validate_drawing(&d);
        assert_eq!(v, vec![DrawingViolation::EdgeThroughVertex { edge: 0, vertex: 2 }]);
        assert!(v[0].to_string().starts_with("edge through vertex"));
    }

    #[test]
    fn overlap_and_touch_rejected() {
        let g = Graph::new(0..4, [(0, 1), (2, 3)]).unwrap();
        let d = GeometricDrawing::straight_line(g.clone(), pos(&[(0, 0, 0), (1, 2, 0), (2, 1, 0), (3, 3, 0)])).unwrap();
        assert!(validate_drawing(&d).contains(&DrawingViolation::Overlap { e: 0, f: 1 }));

        // edge 1 bends exactly on edge 0
        let routes = BTreeMap::from([(1, vec![Point::int(0, 1), Point::int(1, 0), Point::int(2, 1)])]);
        let d = GeometricDrawing::new(g, pos(&[(0, 0, 0), (1, 2, 0), (2, 0, 1), (3, 2, 1)]), routes).unwrap();
        assert_eq!(validate_drawing(&d), vec![DrawingViolation::Touching { e: 0, f: 1 }]);
    }

    #[test]
    fn polyline_double_crossing_and_order() {
        // edge 1 zig-zags across edge 0 twice
        let g = Graph::new(0..4, [(0, 1), (2, 3)]).unwrap();
        let routes = BTreeMap::from([(1, vec![Point::int(1, 1), Point::int(2, -1), Point::int(3, 1)])]);
        let d = GeometricDrawing::new(g, pos(&[(0, 0, 0), (1, 4, 0), (2, 1, 1), (3, 3, 1)]), routes).unwrap();
        let a = compute_crossings(&d).unwrap();
        assert_eq!(a.multiplicity(0, 1), 2);
        assert_eq!(a.order().unwrap()[&0], vec![0, 0]);
        assert_eq!(a.total_occurrences(), 2);
    }

    #[test]
    fn adjacent_crossing_not_independent() {
        let g = Graph::new(0..3, [(0, 1), (0, 2)]).unwrap();
        let a = AbstractDrawing::new(g, [(0, 1, 1)], None).unwrap();
        assert!(independent_pairs(&a).is_empty());
        assert_eq!(a.total_occurrences(), 1);
    }

    #[test]
    fn abstract_invariants_enforced() {
        let g = Graph::new(0..4, [(0, 1), (2, 3)]).unwrap();
        assert!(AbstractDrawing::new(g.clone(), [(0, 0, 1)], None).is_err());
        assert!(AbstractDrawing::new(g.clone(), [(0, 1, 0)], None).is_err());
        assert!(AbstractDrawing::new(g.clone(), [(0, 1, 1), (1, 0, 2)], None).is_err());
        let order = BTreeMap::from([(0, vec![0]), (1, vec![])]);
        assert!(AbstractDrawing::new(g.clone(), [(0, 1, 1)], Some(order)).is_err());
        let order = BTreeMap::from([(0, vec![0]), (1, vec![0])]);
        assert!(AbstractDrawing::new(g, [(0, 1, 1)], Some(order)).is_ok());
    }

    #[test]
    fn reversed_route_is_normalized() {
        let g = Graph::new(0..2, [(0, 1)]).unwrap();
        let routes = BTreeMap::from([(0, vec![Point::int(5, 0), Point::int(2, 3), Point::int(0, 0)])]);
        let d = GeometricDrawing::new(g, pos(&[(0, 0, 0), (1, 5, 0)]), routes).unwrap();
        assert_eq!(d.route(0)[0], Point::int(0, 0));
        assert!(validate_drawing(&d).is_empty());
    }
}
