use std::collections::{BTreeMap, BTreeSet};

use crate::drawing::AbstractDrawing;
use crate::graph::{EdgeId, Graph, Vertex};

use super::certificate::{Bearing, GapCoverCertificate};
use super::cover::min_vertex_cover;
use super::gap::gap_number;

/// Default limit on independent crossing pairs for the exact search.
pub const GAP_COVER_CAP: usize = 40;

/// Search nodes explored per candidate `k` before giving up on optimality.
const NODE_BUDGET: u64 = 2_000_000;

/// Minimum `k` such that some bearing admits covers of size at most `k`.
///
/// Upper bounds come from the gap charging, from taking both directions of
/// every pair (the cover number), and from a greedy assignment; the exact
/// search then tries every smaller `k`. Above `budget` independent pairs
/// (default [`GAP_COVER_CAP`]) the best upper bound is returned with
/// `optimal = false` unless it already meets the trivial lower bound.
pub fn gap_cover_number(a: &AbstractDrawing, budget: Option<usize>) -> (usize, GapCoverCertificate) {
    let cap = budget.unwrap_or(GAP_COVER_CAP);
    let pairs = a.independent_pairs();
    if pairs.is_empty() {
        let cert = certificate_from_bearing(a, Bearing::default());
        return (0, cert);
    }
    let mut best = [
        certificate_from_bearing(a, bearing_from_gap(a)),
        certificate_from_bearing(a, both_directions(&pairs)),
        certificate_from_bearing(a, greedy_bearing(a.graph(), &pairs)),
    ]
    .into_iter()
    .min_by_key(|c| c.k)
    .expect("three candidates");

    let lower = 1;
    if best.k == lower {
        return (best.k, best);
    }
    if pairs.len() > cap {
        best.optimal = false;
        return (best.k, best);
    }
    for k in lower..best.k {
        match exact(a.graph(), &pairs, k) {
            Outcome::Found(bearing) => {
                let cert = certificate_from_bearing(a, bearing);
                debug_assert_eq!(cert.k, k);
                return (cert.k, cert);
            }
            Outcome::Infeasible => {}
            Outcome::GaveUp => {
                best.optimal = false;
                return (best.k, best);
            }
        }
    }
    (best.k, best)
}

/// Per-edge minimum covers for a bearing.
pub fn certificate_from_bearing(a: &AbstractDrawing, bearing: Bearing) -> GapCoverCertificate {
    let g = a.graph();
    let covers: BTreeMap<EdgeId, BTreeSet<Vertex>> = (0..g.m())
        .map(|e| {
            let edges: Vec<_> = bearing.responsible_for(e).map(|f| g.edge(f)).collect();
            (e, min_vertex_cover(&edges, edges.len()).expect("all endpoints cover"))
        })
        .collect();
    let k = covers.values().map(BTreeSet::len).max().unwrap_or(0);
    GapCoverCertificate {
        k,
        bearing,
        covers,
        optimal: true,
    }
}

/// Each independent pair is given to the edge its first occurrence is
/// charged to in a minimum gap charging.
fn bearing_from_gap(a: &AbstractDrawing) -> Bearing {
    let (_, cert) = gap_number(a);
    let mut pairs = BTreeSet::new();
    for (e, f, i, charged) in cert.charges {
        if i == 0 && a.graph().independent(e, f) {
            let other = if charged == e { f } else { e };
            pairs.insert((charged, other));
        }
    }
    Bearing { pairs }
}

fn both_directions(pairs: &[(EdgeId, EdgeId)]) -> Bearing {
    Bearing {
        pairs: pairs.iter().flat_map(|&(e, f)| [(e, f), (f, e)]).collect(),
    }
}

fn hits(cover: &BTreeSet<Vertex>, (u, v): (Vertex, Vertex)) -> bool {
    cover.contains(&u) || cover.contains(&v)
}

/// Gives each pair to the side whose cover ends up smaller.
fn greedy_bearing(g: &Graph, pairs: &[(EdgeId, EdgeId)]) -> Bearing {
    let mut assigned: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); g.m()];
    let mut covers: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); g.m()];
    let mut bearing = BTreeSet::new();
    for &(e, f) in pairs {
        let grown = |x: EdgeId, y: EdgeId| {
            if hits(&covers[x], g.edge(y)) {
                covers[x].clone()
            } else {
                let mut list = assigned[x].clone();
                list.push(g.edge(y));
                min_vertex_cover(&list, list.len()).expect("all endpoints cover")
            }
        };
        let (ce, cf) = (grown(e, f), grown(f, e));
        let (x, y, c) = if cf.len() < ce.len() { (f, e, cf) } else { (e, f, ce) };
        assigned[x].push(g.edge(y));
        covers[x] = c;
        bearing.insert((x, y));
    }
    Bearing { pairs: bearing }
}

enum Outcome {
    Found(Bearing),
    Infeasible,
    GaveUp,
}

struct Search<'a> {
    g: &'a Graph,
    pairs: &'a [(EdgeId, EdgeId)],
    k: usize,
    assigned: Vec<Vec<(Vertex, Vertex)>>,
    covers: Vec<BTreeSet<Vertex>>,
    choice: Vec<(EdgeId, EdgeId)>,
    nodes: u64,
}

/// Depth-first search over one responsible direction per pair. Adding the
/// second direction of a pair can only enlarge covers, so exactly-one
/// assignments suffice for the minimum.
fn exact(g: &Graph, pairs: &[(EdgeId, EdgeId)], k: usize) -> Outcome {
    let mut s = Search {
        g,
        pairs,
        k,
        assigned: vec![Vec::new(); g.m()],
        covers: vec![BTreeSet::new(); g.m()],
        choice: Vec::with_capacity(pairs.len()),
        nodes: 0,
    };
    match s.dfs(0) {
        Some(true) => Outcome::Found(Bearing {
            pairs: s.choice.into_iter().collect(),
        }),
        Some(false) => Outcome::Infeasible,
        None => Outcome::GaveUp,
    }
}

impl Search<'_> {
    fn dfs(&mut self, i: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return None;
        }
        let Some(&(e, f)) = self.pairs.get(i) else {
            return Some(true);
        };
        let free_f = hits(&self.covers[f], self.g.edge(e)) && !hits(&self.covers[e], self.g.edge(f));
        let sides = if free_f { [(f, e), (e, f)] } else { [(e, f), (f, e)] };
        for (x, y) in sides {
            let edge = self.g.edge(y);
            let old = self.covers[x].clone();
            self.assigned[x].push(edge);
            if !hits(&old, edge) {
                match min_vertex_cover(&self.assigned[x], self.k) {
                    Some(c) => self.covers[x] = c,
                    None => {
                        self.assigned[x].pop();
                        continue;
                    }
                }
            }
            self.choice.push((x, y));
            match self.dfs(i + 1)? {
                true => return Some(true),
                false => {
                    self.choice.pop();
                    self.assigned[x].pop();
                    self.covers[x] = old;
                }
            }
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_free_is_zero() {
        let a = AbstractDrawing::crossing_free(Graph::complete(4));
        let (k, cert) = gap_cover_number(&a, None);
        assert_eq!(k, 0);
        assert!(cert.bearing.pairs.is_empty());
        assert!(cert.optimal);
    }

    #[test]
    fn one_pair_is_one() {
        let g = Graph::new(0..4, [(0, 1), (2, 3)]).unwrap();
        let a = AbstractDrawing::new(g, [(0, 1, 1)], None).unwrap();
        let (k, cert) = gap_cover_number(&a, None);
        assert_eq!(k, 1);
        assert_eq!(cert.bearing.pairs.len(), 1);
    }

    #[test]
    fn counting_forces_two() {
        // Edges 1, 2, 3 each cross both 0 and 4. With k = 1 each edge can
        // take at most one of its pairs, and five edges cannot take six.
        let mut edges = vec![(0, 1)];
        edges.extend([(2, 3), (4, 5), (6, 7)]);
        edges.push((8, 9));
        let g = Graph::new(0..10, edges).unwrap();
        let a = AbstractDrawing::new(
            g,
            [(0, 1, 1), (0, 2, 1), (0, 3, 1), (4, 1, 1), (4, 2, 1), (4, 3, 1)],
            None,
        )
        .unwrap();
        let (k, cert) = gap_cover_number(&a, None);
        assert_eq!(k, 2);
        assert!(cert.optimal);
    }
}
