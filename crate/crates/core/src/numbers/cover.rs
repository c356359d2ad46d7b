use std::collections::{BTreeMap, BTreeSet};

use petgraph::graph::UnGraph;

use crate::drawing::AbstractDrawing;
use crate::graph::{EdgeId, Vertex};

use super::certificate::CoverCertificate;

/// For each edge, the edges crossing it independently, ascending.
pub(crate) fn independent_partners(a: &AbstractDrawing) -> Vec<Vec<EdgeId>> {
    let mut partners = vec![Vec::new(); a.graph().m()];
    for (e, f) in a.independent_pairs() {
        partners[e].push(f);
        partners[f].push(e);
    }
    for p in &mut partners {
        p.sort_unstable();
    }
    partners
}

/// A minimum vertex cover of the given edges if its size is at most
/// `limit`. Branches on the lowest uncovered edge `uv`: either `u` is in
/// the cover or all of its neighbors are. Greedy matchings bound the rest.
pub fn min_vertex_cover(edges: &[(Vertex, Vertex)], limit: usize) -> Option<BTreeSet<Vertex>> {
    let mut list: Vec<(Vertex, Vertex)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    list.sort_unstable();
    list.dedup();
    let mut best = None;
    let mut bound = limit + 1;
    let mut chosen = Vec::new();
    branch(&list, &mut chosen, &mut best, &mut bound);
    best.map(|b: Vec<Vertex>| b.into_iter().collect())
}

fn branch(rest: &[(Vertex, Vertex)], chosen: &mut Vec<Vertex>, best: &mut Option<Vec<Vertex>>, bound: &mut usize) {
    let Some(&(u, _)) = rest.first() else {
        if chosen.len() < *bound {
            *bound = chosen.len();
            *best = Some(chosen.clone());
        }
        return;
    };
    if chosen.len() + greedy_matching(rest) >= *bound {
        return;
    }
    let without = |drop: &[Vertex]| -> Vec<(Vertex, Vertex)> {
        rest.iter()
            .filter(|(a, b)| !drop.contains(a) && !drop.contains(b))
            .copied()
            .collect()
    };

    chosen.push(u);
    branch(&without(&[u]), chosen, best, bound);
    chosen.pop();

    let nbrs: Vec<Vertex> = rest
        .iter()
        .filter_map(|&(a, b)| match (a == u, b == u) {
            (true, _) => Some(b),
            (_, true) => Some(a),
            _ => None,
        })
        .collect();
    let before = chosen.len();
    chosen.extend(&nbrs);
    branch(&without(&nbrs), chosen, best, bound);
    chosen.truncate(before);
}

fn greedy_matching(edges: &[(Vertex, Vertex)]) -> usize {
    let mut used = BTreeSet::new();
    let mut size = 0;
    for &(u, v) in edges {
        if !used.contains(&u) && !used.contains(&v) {
            used.insert(u);
            used.insert(v);
            size += 1;
        }
    }
    size
}

/// Size of a maximum matching among the given edges.
pub fn max_matching(edges: &[(Vertex, Vertex)]) -> usize {
    let mut g = UnGraph::<(), ()>::new_undirected();
    let mut node = BTreeMap::new();
    for &(u, v) in edges {
        let a = *node.entry(u).or_insert_with(|| g.add_node(()));
        let b = *node.entry(v).or_insert_with(|| g.add_node(()));
        g.add_edge(a, b, ());
    }
    petgraph::algo::maximum_matching(&g).len()
}

/// Smallest `k` such that every edge has a cover of size at most `k` for
/// the edges crossing it independently, together with such covers.
pub fn cover_number(a: &AbstractDrawing) -> (usize, CoverCertificate) {
    let g = a.graph();
    let mut covers = BTreeMap::new();
    for (e, fs) in independent_partners(a).into_iter().enumerate() {
        let edges: Vec<_> = fs.iter().map(|&f| g.edge(f)).collect();
        let cover = min_vertex_cover(&edges, edges.len()).expect("all endpoints cover");
        covers.insert(e, cover);
    }
    let k = covers.values().map(BTreeSet::len).max().unwrap_or(0);
    (k, CoverCertificate { k, covers })
}

/// Largest matching among the edges independently crossing a single edge.
pub fn matching_planar_number(a: &AbstractDrawing) -> usize {
    let g = a.graph();
    independent_partners(a)
        .iter()
        .map(|fs| max_matching(&fs.iter().map(|&f| g.edge(f)).collect::<Vec<_>>()))
        .max()
        .unwrap_or(0)
}
