//! Simple undirected graphs with stable vertex and edge ids.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::GraphError;

pub type Vertex = u32;
pub type EdgeId = usize;
pub type Rational = Ratio<i64>;

/// A simple finite undirected graph.
///
/// Vertices are kept sorted; edges keep the order in which they were given
/// and an edge's id is its position in that order. Endpoints are stored
/// with the smaller vertex first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    vertices: Vec<Vertex>,
    edges: Vec<(Vertex, Vertex)>,
    index: BTreeMap<Vertex, usize>,
    edge_ids: BTreeMap<(Vertex, Vertex), EdgeId>,
    adj: Vec<Vec<usize>>,
    vertex_labels: BTreeMap<Vertex, String>,
    edge_labels: BTreeMap<EdgeId, String>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<Vertex>,
    edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    vertex_labels: BTreeMap<Vertex, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    edge_labels: BTreeMap<EdgeId, String>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        let mut g = Graph::new(j.vertices, j.edges.into_iter().map(|[u, v]| (u, v)))?;
        for (v, l) in j.vertex_labels {
            if !g.contains(v) {
                return Err(GraphError::UnknownVertex(v));
            }
            g.vertex_labels.insert(v, l);
        }
        for (e, l) in j.edge_labels {
            if e >= g.m() {
                return Err(GraphError::UnknownEdge(e));
            }
            g.edge_labels.insert(e, l);
        }
        Ok(g)
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
            vertices: g.vertices,
            vertex_labels: g.vertex_labels,
            edge_labels: g.edge_labels,
        }
    }
}

impl Graph {
    pub fn new(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let mut vs: Vec<Vertex> = vertices.into_iter().collect();
        vs.sort_unstable();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0]));
        }
        let index: BTreeMap<Vertex, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Graph {
            adj: vec![Vec::new(); vs.len()],
            vertices: vs,
            edges: Vec::new(),
            index,
            edge_ids: BTreeMap::new(),
            vertex_labels: BTreeMap::new(),
            edge_labels: BTreeMap::new(),
        };
        for (u, v) in edges {
            g.push_edge(u, v)?;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    /// Builds a graph whose vertex set is exactly the set of edge endpoints.
    pub fn from_edges(edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let vs: BTreeSet<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        Graph::new(vs, edges.iter().copied())
    }

    fn push_edge(&mut self, u: Vertex, v: Vertex) -> Result<EdgeId, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let ia = *self.index.get(&a).ok_or(GraphError::UnknownVertex(a))?;
        let ib = *self.index.get(&b).ok_or(GraphError::UnknownVertex(b))?;
        if self.edge_ids.contains_key(&(a, b)) {
            return Err(GraphError::DuplicateEdge(a, b));
        }
        let id = self.edges.len();
        self.edges.push((a, b));
        self.edge_ids.insert((a, b), id);
        self.adj[ia].push(ib);
        self.adj[ib].push(ia);
        Ok(id)
    }

    pub fn empty(n: u32) -> Self {
        Graph::new(0..n, []).expect("edgeless graph")
    }

    pub fn complete(n: u32) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(0..n, edges).expect("complete graph")
    }

    pub fn path(n: u32) -> Self {
        Graph::new(0..n, (1..n).map(|v| (v - 1, v))).expect("path")
    }

    pub fn cycle(n: u32) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(0..n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle")
    }

    pub fn complete_bipartite(a: u32, b: u32) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::new(0..a + b, edges).expect("complete bipartite graph")
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> (Vertex, Vertex) {
        self.edges[id]
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edge_ids.get(&key).copied()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.index.contains_key(&v)
    }

    /// Position of `v` in the sorted vertex list.
    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.index.get(&v).copied()
    }

    /// Neighbor indices of the vertex at index `i`, ascending.
    pub fn neighbor_indices(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let i = self.index[&v];
        self.adj[i].iter().map(move |&j| self.vertices[j])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[self.index[&v]].len()
    }

    /// True iff the two edges share no endpoint.
    pub fn independent(&self, e: EdgeId, f: EdgeId) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        e != f && a != c && a != d && b != c && b != d
    }

    pub fn vertex_label(&self, v: Vertex) -> Option<&str> {
        self.vertex_labels.get(&v).map(String::as_str)
    }

    pub fn edge_label(&self, e: EdgeId) -> Option<&str> {
        self.edge_labels.get(&e).map(String::as_str)
    }

    /// Adjacency rows as bitmasks over vertex indices. Only for `n <= 64`.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n() <= 64, "bitmask adjacency needs at most 64 vertices");
        self.adj
            .iter()
            .map(|row| row.iter().fold(0u64, |m, &j| m | (1 << j)))
            .collect()
    }

    /// The subgraph induced by `keep`. Edge ids are renumbered in the
    /// original order.
    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> Graph {
        let edges = self
            .edges
            .iter()
            .filter(|(u, v)| keep.contains(u) && keep.contains(v))
            .copied();
        let vs = keep.iter().copied().filter(|v| self.contains(*v));
        Graph::new(vs, edges).expect("induced subgraph of a valid graph")
    }

    pub fn density(&self) -> Rational {
        density(self)
    }
}

/// |E|/|V|, and 0 for the empty graph.
pub fn density(g: &Graph) -> Rational {
    if g.n() == 0 {
        Rational::from_integer(0)
    } else {
        Rational::new(g.m() as i64, g.n() as i64)
    }
}

/// A total order of the vertex set. `order[0]` is the first vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct VertexOrdering {
    order: Vec<Vertex>,
    rank: BTreeMap<Vertex, usize>,
}

impl From<Vec<Vertex>> for VertexOrdering {
    fn from(order: Vec<Vertex>) -> Self {
        VertexOrdering::new(order)
    }
}

impl From<VertexOrdering> for Vec<Vertex> {
    fn from(o: VertexOrdering) -> Self {
        o.order
    }
}

impl VertexOrdering {
    pub fn new(order: Vec<Vertex>) -> Self {
        let rank = order.iter().enumerate().map(|(i, &v)| (v, i + 1)).collect();
        VertexOrdering { order, rank }
    }

    /// True iff the ranks are a bijection between `g`'s vertices and 1..=n.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut sorted = self.order.clone();
        sorted.sort_unstable();
        sorted == g.vertices()
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    /// 1-based rank of `v`.
    pub fn rank(&self, v: Vertex) -> usize {
        self.rank[&v]
    }

    pub fn reversed(&self) -> Self {
        VertexOrdering::new(self.order.iter().rev().copied().collect())
    }
}

/// Degeneracy and a witnessing elimination order.
///
/// Vertices are removed one at a time, always a minimum-degree vertex of
/// what is left (lowest id on ties); every vertex then has at most `d`
/// neighbors later in the returned order.
pub fn degeneracy(g: &Graph) -> (usize, VertexOrdering) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|i| g.neighbor_indices(i).len()).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    for _ in 0..n {
        let i = (0..n)
            .filter(|&i| !removed[i])
            .min_by_key(|&i| (deg[i], i))
            .expect("vertex left");
        d = d.max(deg[i]);
        removed[i] = true;
        order.push(g.vertices()[i]);
        for &j in g.neighbor_indices(i) {
            if !removed[j] {
                deg[j] -= 1;
            }
        }
    }
    (d, VertexOrdering::new(order))
}
