use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, Graph, Vertex};

/// A model of `pattern` in `host` with branch sets of radius at most `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShallowModel {
    pub host: Graph,
    pub pattern: Graph,
    pub branch: BTreeMap<Vertex, BTreeSet<Vertex>>,
    pub center: BTreeMap<Vertex, Vertex>,
    pub r: usize,
    /// Host edge realizing each pattern edge, keyed by pattern edge id.
    pub edge_witness: BTreeMap<EdgeId, (Vertex, Vertex)>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModelViolation {
    MissingBranchSet { vertex: Vertex },
    UnknownHostVertex { vertex: Vertex },
    Disjointness { v: Vertex, w: Vertex },
    CenterOutside { vertex: Vertex },
    Disconnected { vertex: Vertex },
    Radius { vertex: Vertex, eccentricity: usize },
    MissingWitness { edge: EdgeId },
    BadWitness { edge: EdgeId },
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ModelViolation::*;
        match self {
            MissingBranchSet { vertex } => write!(f, "missing branch set: pattern vertex {vertex}"),
            UnknownHostVertex { vertex } => write!(f, "unknown host vertex {vertex}"),
            Disjointness { v, w } => write!(f, "disjointness: branch sets of {v} and {w} meet"),
            CenterOutside { vertex } => write!(f, "center outside branch set of {vertex}"),
            Disconnected { vertex } => write!(f, "connectivity: branch set of {vertex}"),
            Radius { vertex, eccentricity } => {
                write!(f, "radius: center of {vertex} has eccentricity {eccentricity}")
            }
            MissingWitness { edge } => write!(f, "missing witness for pattern edge {edge}"),
            BadWitness { edge } => write!(f, "witness of pattern edge {edge} does not join its branch sets"),
        }
    }
}

/// BFS inside `set` from `root`, scanning neighbors in ascending order so
/// parents are the smallest-id choice. Returns distance and parent.
pub(crate) fn bfs_within(g: &Graph, set: &BTreeSet<Vertex>, root: Vertex) -> BTreeMap<Vertex, (usize, Option<Vertex>)> {
    let mut seen = BTreeMap::from([(root, (0, None))]);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let d = seen[&u].0;
        for w in g.neighbors(u) {
            if set.contains(&w) && !seen.contains_key(&w) {
                seen.insert(w, (d + 1, Some(u)));
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Vertices of the BFS-tree path from the root to `target`, root first.
pub(crate) fn tree_path(tree: &BTreeMap<Vertex, (usize, Option<Vertex>)>, target: Vertex) -> Vec<Vertex> {
    let mut path = vec![target];
    let mut cur = target;
    while let Some(p) = tree[&cur].1 {
        path.push(p);
        cur = p;
    }
    path.reverse();
    path
}

pub fn validate_model(m: &ShallowModel) -> Vec<ModelViolation> {
    use ModelViolation::*;
    let mut out = BTreeSet::new();
    let mut owner: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for &v in m.pattern.vertices() {
        let set = match m.branch.get(&v) {
            Some(s) if !s.is_empty() => s,
            _ => {
                out.insert(MissingBranchSet { vertex: v });
                continue;
            }
        };
        for &x in set {
            if !m.host.contains(x) {
                out.insert(UnknownHostVertex { vertex: x });
            } else if let Some(&w) = owner.get(&x) {
                out.insert(Disjointness {
                    v: w.min(v),
                    w: w.max(v),
                });
            } else {
                owner.insert(x, v);
            }
        }
        let Some(&c) = m.center.get(&v).filter(|c| set.contains(c) && m.host.contains(**c)) else {
            out.insert(CenterOutside { vertex: v });
            continue;
        };
        let tree = bfs_within(&m.host, set, c);
        if tree.len() < set.len() {
            out.insert(Disconnected { vertex: v });
            continue;
        }
        let ecc = tree.values().map(|t| t.0).max().unwrap_or(0);
        if ecc > m.r {
            out.insert(Radius {
                vertex: v,
                eccentricity: ecc,
            });
        }
    }
    for (h, &(v, w)) in m.pattern.edges().iter().enumerate() {
        let Some(&(x, y)) = m.edge_witness.get(&h) else {
            out.insert(MissingWitness { edge: h });
            continue;
        };
        let inside = |s: Vertex, p: Vertex| m.branch.get(&s).is_some_and(|b| b.contains(&p));
        let joins = (inside(v, x) && inside(w, y)) || (inside(v, y) && inside(w, x));
        if !joins || !m.host.has_edge(x, y) {
            out.insert(BadWitness { edge: h });
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singleton_model(host: Graph, r: usize) -> ShallowModel {
        let pattern = host.clone();
        ShallowModel {
            branch: host.vertices().iter().map(|&v| (v, BTreeSet::from([v]))).collect(),
            center: host.vertices().iter().map(|&v| (v, v)).collect(),
            edge_witness: host.edges().iter().copied().enumerate().collect(),
            host,
            pattern,
            r,
        }
    }

    #[test]
    fn singletons_are_valid() {
        assert!(validate_model(&singleton_model(Graph::cycle(5), 0)).is_empty());
    }

    #[test]
    fn overlap_reported() {
        let mut m = singleton_model(Graph::path(3), 1);
        m.branch.get_mut(&0).unwrap().insert(1);
        let v = validate_model(&m);
        assert!(v.contains(&ModelViolation::Disjointness { v: 0, w: 1 }));
        assert!(v.iter().any(|x| x.to_string().starts_with("disjointness")));
    }

    #[test]
    fn radius_reported() {
        // path 0-1-2 contracted to one vertex centered at 0 has eccentricity 2
        let host = Graph::path(3);
        let m = ShallowModel {
            host,
            pattern: Graph::empty(1),
            branch: BTreeMap::from([(0, BTreeSet::from([0, 1, 2]))]),
            center: BTreeMap::from([(0, 0)]),
            r: 1,
            edge_witness: BTreeMap::new(),
        };
        let v = validate_model(&m);
        assert_eq!(
            v,
            vec![ModelViolation::Radius {
                vertex: 0,
                eccentricity: 2
            }]
        );
        assert!(v[0].to_string().starts_with("radius"));
        let mut ok = m.clone();
        ok.center.insert(0, 1);
        assert!(validate_model(&ok).is_empty());
    }
}
