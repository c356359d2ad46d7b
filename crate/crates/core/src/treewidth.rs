//! Tree decompositions: validation and exact treewidth for small graphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Default vertex cap for [`treewidth_exact`].
pub const TREEWIDTH_CAP: usize = 14;

pub type Node = u32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub nodes: Vec<Node>,
    pub tree_edges: Vec<[Node; 2]>,
    pub bags: BTreeMap<Node, BTreeSet<Vertex>>,
}

impl TreeDecomposition {
    /// A single bag holding every vertex.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition {
            nodes: vec![0],
            tree_edges: Vec::new(),
            bags: BTreeMap::from([(0, g.vertices().iter().copied().collect())]),
        }
    }

    pub fn bag(&self, x: Node) -> impl Iterator<Item = Vertex> + '_ {
        self.bags.get(&x).into_iter().flatten().copied()
    }

    /// Largest bag size minus one (0 when every bag is empty).
    pub fn width(&self) -> usize {
        self.bags
            .values()
            .map(BTreeSet::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum TdViolation {
    /// The node/edge structure is not a nonempty tree.
    NotATree {
        reason: String,
    },
    UnknownVertex {
        node: Node,
        vertex: Vertex,
    },
    VertexNotCovered {
        vertex: Vertex,
    },
    EdgeNotCovered {
        u: Vertex,
        v: Vertex,
    },
    /// The nodes whose bags contain `vertex` do not induce a connected subtree.
    Disconnected {
        vertex: Vertex,
    },
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::NotATree { reason } => write!(f, "not a tree: {reason}"),
            TdViolation::UnknownVertex { node, vertex } => {
                write!(f, "bag {node} holds unknown vertex {vertex}")
            }
            TdViolation::VertexNotCovered { vertex } => write!(f, "vertex {vertex} in no bag"),
            TdViolation::EdgeNotCovered { u, v } => write!(f, "edge {u}-{v} in no bag"),
            TdViolation::Disconnected { vertex } => {
                write!(f, "bags containing {vertex} are not connected")
            }
        }
    }
}

fn tree_problem(td: &TreeDecomposition) -> Option<String> {
    if td.nodes.is_empty() {
        return Some("no nodes".into());
    }
    let idx: BTreeMap<Node, usize> = td.nodes.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    if idx.len() != td.nodes.len() {
        return Some("duplicate node id".into());
    }
    if let Some(x) = td.bags.keys().find(|x| !idx.contains_key(x)) {
        return Some(format!("bag for undeclared node {x}"));
    }
    if td.tree_edges.len() + 1 != td.nodes.len() {
        return Some(format!(
            "{} nodes but {} tree edges",
            td.nodes.len(),
            td.tree_edges.len()
        ));
    }
    let mut adj = vec![Vec::new(); td.nodes.len()];
    for &[a, b] in &td.tree_edges {
        let (Some(&i), Some(&j)) = (idx.get(&a), idx.get(&b)) else {
            return Some(format!("tree edge {a}-{b} has an undeclared end"));
        };
        if i == j {
            return Some(format!("tree loop at {a}"));
        }
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut seen = vec![false; adj.len()];
    seen[0] = true;
    let mut q = VecDeque::from([0]);
    while let Some(u) = q.pop_front() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                q.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Some("tree is disconnected".into());
    }
    None
}

/// Checks the three tree-decomposition axioms. Empty result means valid.
pub fn validate_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> Vec<TdViolation> {
    if let Some(reason) = tree_problem(td) {
        return vec![TdViolation::NotATree { reason }];
    }
    let mut out = Vec::new();
    let mut holders: BTreeMap<Vertex, BTreeSet<Node>> = BTreeMap::new();
    for (&x, bag) in &td.bags {
        for &v in bag {
            if g.contains(v) {
                holders.entry(v).or_default().insert(x);
            } else {
                out.push(TdViolation::UnknownVertex { node: x, vertex: v });
            }
        }
    }
    for &v in g.vertices() {
        if !holders.contains_key(&v) {
            out.push(TdViolation::VertexNotCovered { vertex: v });
        }
    }
    for &(u, v) in g.edges() {
        let together = td.bags.values().any(|b| b.contains(&u) && b.contains(&v));
        if !together {
            out.push(TdViolation::EdgeNotCovered { u, v });
        }
    }
    for (&v, nodes) in &holders {
        if !induces_subtree(td, nodes) {
            out.push(TdViolation::Disconnected { vertex: v });
        }
    }
    out
}

fn induces_subtree(td: &TreeDecomposition, nodes: &BTreeSet<Node>) -> bool {
    let Some(&start) = nodes.iter().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut q = VecDeque::from([start]);
    while let Some(x) = q.pop_front() {
        for &[a, b] in &td.tree_edges {
            let other = if a == x {
                b
            } else if b == x {
                a
            } else {
                continue;
            };
            if nodes.contains(&other) && seen.insert(other) {
                q.push_back(other);
            }
        }
    }
    seen.len() == nodes.len()
}

/// Exact treewidth and an optimal decomposition, by dynamic programming over
/// vertex subsets (the elimination-ordering recurrence).
pub fn treewidth_exact(g: &Graph) -> Result<(usize, TreeDecomposition)> {
    treewidth_exact_capped(g, TREEWIDTH_CAP)
}

pub fn treewidth_exact_capped(g: &Graph, cap: usize) -> Result<(usize, TreeDecomposition)> {
    let n = g.n();
    if n > cap || n > 24 {
        return Err(Error::TooLarge {
            what: "exact treewidth",
            size: n,
            cap: cap.min(24),
        });
    }
    if n == 0 {
        return Ok((0, TreeDecomposition::trivial(g)));
    }
    let adj: Vec<u32> = g.adjacency_masks().into_iter().map(|m| m as u32).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let size = 1usize << n;
    let mut best = vec![u8::MAX; size];
    let mut last = vec![0u8; size];
    best[0] = 0;
    for s in 1..size as u32 {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            let without = s & !(1 << v);
            let q = outside_reach(&adj, without, v);
            let cost = best[without as usize].max(q.count_ones() as u8);
            if cost < best[s as usize] {
                best[s as usize] = cost;
                last[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s as usize] as u32;
        order.push(v as usize);
        s &= !(1 << v);
    }
    order.reverse();
    let td = decomposition_from_order(g, &order);
    let w = best[full as usize] as usize;
    debug_assert_eq!(td.width(), w);
    Ok((w, td))
}

/// Vertices outside `s + v` reachable from `v` through paths inside `s`.
fn outside_reach(adj: &[u32], s: u32, v: u32) -> u32 {
    let mut comp = 1u32 << v;
    let mut frontier = comp;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let u = f.trailing_zeros();
            f &= f - 1;
            next |= adj[u as usize];
        }
        let grow = next & s & !comp;
        comp |= grow;
        frontier = grow;
    }
    let mut nb = 0;
    let mut c = comp;
    while c != 0 {
        let u = c.trailing_zeros();
        c &= c - 1;
        nb |= adj[u as usize];
    }
    nb & !comp & !s
}

/// Tree decomposition induced by an elimination order (vertex indices).
pub fn decomposition_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut higher: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| {
            g.neighbor_indices(v)
                .iter()
                .copied()
                .filter(|&w| pos[w] > pos[v])
                .collect()
        })
        .collect();
    let mut nodes = Vec::with_capacity(n);
    let mut tree_edges = Vec::new();
    let mut bags = BTreeMap::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let hv: Vec<usize> = higher[v].iter().copied().collect();
        for (a, &x) in hv.iter().enumerate() {
            for &y in &hv[a + 1..] {
                let (lo, hi) = if pos[x] < pos[y] { (x, y) } else { (y, x) };
                higher[lo].insert(hi);
            }
        }
        let mut bag: BTreeSet<Vertex> = hv.iter().map(|&w| g.vertices()[w]).collect();
        bag.insert(g.vertices()[v]);
        nodes.push(i as Node);
        bags.insert(i as Node, bag);
        match hv.iter().min_by_key(|&&w| pos[w]) {
            Some(&p) => tree_edges.push([i as Node, pos[p] as Node]),
            None => roots.push(i as Node),
        }
    }
    for w in roots.windows(2) {
        tree_edges.push([w[0], w[1]]);
    }
    TreeDecomposition {
        nodes,
        tree_edges,
        bags,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_decomposition_p4() -> (Graph, TreeDecomposition) {
        let g = Graph::new(1..=4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let td = TreeDecomposition {
            nodes: vec![0, 1, 2],
            tree_edges: vec![[0, 1], [1, 2]],
            bags: BTreeMap::from([
                (0, BTreeSet::from([1, 2])),
                (1, BTreeSet::from([2, 3])),
                (2, BTreeSet::from([3, 4])),
            ]),
        };
        (g, td)
    }

    #[test]
    fn single_bag_is_valid() {
        let g = Graph::complete(5);
        let td = TreeDecomposition::trivial(&g);
        assert!(validate_tree_decomposition(&g, &td).is_empty());
        assert_eq!(td.width(), 4);
    }

    #[test]
    fn path_decomposition_is_valid() {
        let (g, td) = path_decomposition_p4();
        assert!(validate_tree_decomposition(&g, &td).is_empty());
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn missing_edge_is_named() {
        let (g, mut td) = path_decomposition_p4();
        td.bags.insert(1, BTreeSet::from([2]));
        td.bags.insert(2, BTreeSet::from([3, 4]));
        let v = validate_tree_decomposition(&g, &td);
        assert_eq!(v, vec![TdViolation::EdgeNotCovered { u: 2, v: 3 }]);
    }

    #[test]
    fn disconnected_trace_is_named() {
        let (g, mut td) = path_decomposition_p4();
        td.bags.get_mut(&2).unwrap().insert(1);
        let v = validate_tree_decomposition(&g, &td);
        assert_eq!(v, vec![TdViolation::Disconnected { vertex: 1 }]);
    }

    #[test]
    fn non_tree_rejected() {
        let (g, mut td) = path_decomposition_p4();
        td.tree_edges.push([0, 2]);
        assert!(matches!(
            validate_tree_decomposition(&g, &td)[0],
            TdViolation::NotATree { .. }
        ));
    }

    #[test]
    fn exact_values() {
        let tree = Graph::new(0..7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        assert_eq!(treewidth_exact(&tree).unwrap().0, 1);
        assert_eq!(treewidth_exact(&Graph::complete(4)).unwrap().0, 3);
        assert_eq!(treewidth_exact(&Graph::cycle(5)).unwrap().0, 2);
        assert_eq!(treewidth_exact(&Graph::empty(3)).unwrap().0, 0);
    }

    #[test]
    fn output_validates() {
        let g = Graph::complete_bipartite(3, 4);
        let (w, td) = treewidth_exact(&g).unwrap();
        assert_eq!(w, 3);
        assert!(validate_tree_decomposition(&g, &td).is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let err = treewidth_exact(&Graph::empty(15)).unwrap_err();
        assert!(err.is_cap_exceeded());
    }
}
