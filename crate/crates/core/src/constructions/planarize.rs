use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::drawing::{crossing_points, GeometricDrawing};
use crate::error::{Error, Result};
use crate::geometry::Coord;
use crate::graph::{EdgeId, Graph, Vertex};
use crate::treewidth::{validate_tree_decomposition, TreeDecomposition};

/// A drawing with each crossing replaced by a dummy vertex. Original edges
/// are oriented from the smaller endpoint id to the larger one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Planarization {
    pub original: Graph,
    pub planar_graph: Graph,
    /// Dummy vertex -> `(e, f, occurrence)` with `e < f`.
    pub dummy_of: BTreeMap<Vertex, (EdgeId, EdgeId, u32)>,
    /// Segments `(from, to, original edge)` in route order along each edge.
    pub segments: Vec<(Vertex, Vertex, EdgeId)>,
}

impl Planarization {
    /// Tails of the two oriented edges crossing at dummy `z`.
    pub fn tails(&self, z: Vertex) -> (Vertex, Vertex) {
        let (e, f, _) = self.dummy_of[&z];
        (self.original.edge(e).0, self.original.edge(f).0)
    }
}

pub fn planarize(d: &GeometricDrawing) -> Result<Planarization> {
    let points = crossing_points(d)?;
    let g = d.graph();
    let mut next = g.vertices().last().map_or(0, |&v| v + 1);
    let mut dummy_of = BTreeMap::new();
    let mut along: BTreeMap<EdgeId, Vec<((usize, Coord), Vertex)>> = BTreeMap::new();
    let mut occurrence: BTreeMap<(EdgeId, EdgeId), u32> = BTreeMap::new();
    for c in &points {
        let z = next;
        next += 1;
        let slot = occurrence.entry((c.e, c.f)).or_default();
        dummy_of.insert(z, (c.e, c.f, *slot));
        *slot += 1;
        along.entry(c.e).or_default().push((c.along_e.clone(), z));
        along.entry(c.f).or_default().push((c.along_f.clone(), z));
    }
    let mut segments = Vec::new();
    for e in 0..g.m() {
        let (u, v) = g.edge(e);
        let mut chain = vec![u];
        if let Some(mut list) = along.remove(&e) {
            list.sort();
            chain.extend(list.into_iter().map(|(_, z)| z));
        }
        chain.push(v);
        segments.extend(chain.windows(2).map(|p| (p[0], p[1], e)));
    }
    let mut seen = BTreeSet::new();
    let edges: Vec<(Vertex, Vertex)> = segments
        .iter()
        .map(|&(a, b, _)| (a.min(b), a.max(b)))
        .filter(|p| seen.insert(*p))
        .collect();
    let planar_graph = Graph::new(g.vertices().iter().copied().chain(dummy_of.keys().copied()), edges)?;
    Ok(Planarization {
        original: g.clone(),
        planar_graph,
        dummy_of,
        segments,
    })
}

/// Tree decomposition of the original graph obtained by replacing every
/// dummy in every bag with the tails of its two crossing edges. Width at
/// most `2 (w' + 1) - 1`.
pub fn lift_tree_decomposition(p: &Planarization, td: &TreeDecomposition) -> Result<TreeDecomposition> {
    let bad = validate_tree_decomposition(&p.planar_graph, td);
    if !bad.is_empty() {
        let list: Vec<String> = bad.iter().map(ToString::to_string).collect();
        return Err(Error::InvalidInput(format!(
            "not a tree decomposition of the planarization: {}",
            list.join("; ")
        )));
    }
    let bags = td
        .bags
        .iter()
        .map(|(&x, bag)| {
            let lifted = bag
                .iter()
                .flat_map(|&z| match p.dummy_of.contains_key(&z) {
                    true => {
                        let (a, b) = p.tails(z);
                        vec![a, b]
                    }
                    false => vec![z],
                })
                .collect();
            (x, lifted)
        })
        .collect();
    let out = TreeDecomposition {
        nodes: td.nodes.clone(),
        tree_edges: td.tree_edges.clone(),
        bags,
    };
    let bad = validate_tree_decomposition(&p.original, &out);
    if !bad.is_empty() {
        return Err(Error::Invariant(format!("lifted decomposition invalid: {}", bad[0])));
    }
    if out.width() + 1 > 2 * (td.width() + 1) {
        return Err(Error::Invariant("lifted width exceeds 2(w'+1)-1".into()));
    }
    Ok(out)
}
