//! Exhaustive shallow-minor and shallow-topological-minor densities.

use std::collections::BTreeMap;

use crate::constructions::{ShallowModel, SubdivisionWitness};
use crate::error::{Error, Result};
use crate::graph::{Graph, Rational};

/// Default vertex cap for [`nabla`] and [`topo_nabla`].
pub const EXPANSION_CAP: usize = 11;

fn check_cap(g: &Graph, cap: usize, what: &'static str) -> Result<()> {
    if g.n() > cap.min(63) {
        return Err(Error::TooLarge { what, size: g.n(), cap });
    }
    Ok(())
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            i
        })
    })
}

/// Eccentricity of `c` inside `set`, or `None` if `set` is disconnected.
fn eccentricity(adj: &[u64], set: u64, c: usize) -> Option<usize> {
    let mut seen = 1u64 << c;
    let mut frontier = seen;
    let mut depth = 0;
    loop {
        let next = bits(frontier).fold(0, |acc, i| acc | adj[i]) & set & !seen;
        if next == 0 {
            return (seen == set).then_some(depth);
        }
        seen |= next;
        frontier = next;
        depth += 1;
    }
}

struct Candidate {
    mask: u64,
    center: usize,
    nbrs: u64,
}

/// Maximum density of an `r`-shallow minor, with a model attaining it.
///
/// Branch sets are all connected vertex sets with a center of
/// eccentricity at most `r`; every packing of disjoint branch sets is
/// visited, and the pattern takes every edge the packing supports. Ties go
/// to fewer pattern vertices, then to the first packing visited.
pub fn nabla(g: &Graph, r: usize) -> Result<(Rational, ShallowModel)> {
    nabla_capped(g, r, EXPANSION_CAP)
}

pub fn nabla_capped(g: &Graph, r: usize, cap: usize) -> Result<(Rational, ShallowModel)> {
    check_cap(g, cap, "nabla")?;
    let n = g.n();
    let adj = g.adjacency_masks();
    let mut by_min: Vec<Vec<Candidate>> = (0..n).map(|_| Vec::new()).collect();
    for mask in 1u64..(1u64 << n) {
        let center = bits(mask).find(|&c| eccentricity(&adj, mask, c).is_some_and(|e| e <= r));
        if let Some(center) = center {
            let nbrs = bits(mask).fold(0, |acc, i| acc | adj[i]) & !mask;
            by_min[mask.trailing_zeros() as usize].push(Candidate { mask, center, nbrs });
        }
    }
    let mut search = Packing {
        by_min: &by_min,
        n,
        parts: Vec::new(),
        best: (Rational::from_integer(0), Vec::new()),
    };
    search.run(0, 0, 0);
    let (rho, parts) = search.best;
    let chosen: Vec<&Candidate> = parts.iter().map(|&(i, j)| &by_min[i][j]).collect();
    Ok((rho, model_from(g, r, &chosen)))
}

struct Packing<'a> {
    by_min: &'a [Vec<Candidate>],
    n: usize,
    parts: Vec<(usize, usize)>,
    best: (Rational, Vec<(usize, usize)>),
}

impl Packing<'_> {
    fn run(&mut self, i: usize, used: u64, edges: i64) {
        if !self.parts.is_empty() {
            let d = Rational::new(edges, self.parts.len() as i64);
            if d > self.best.0 || (d == self.best.0 && self.parts.len() < self.best.1.len()) {
                self.best = (d, self.parts.clone());
            }
        }
        let Some(i) = (i..self.n).find(|&v| used & (1 << v) == 0) else {
            return;
        };
        for (j, c) in self.by_min[i].iter().enumerate() {
            if c.mask & used != 0 {
                continue;
            }
            let gained = self
                .parts
                .iter()
                .filter(|&&(a, b)| self.by_min[a][b].mask & c.nbrs != 0)
                .count() as i64;
            self.parts.push((i, j));
            self.run(i + 1, used | c.mask, edges + gained);
            self.parts.pop();
        }
        self.run(i + 1, used | (1 << i), edges);
    }
}

fn model_from(g: &Graph, r: usize, parts: &[&Candidate]) -> ShallowModel {
    let vx = |i: usize| g.vertices()[i];
    let mut pattern_edges = Vec::new();
    let mut witnesses = Vec::new();
    for (a, pa) in parts.iter().enumerate() {
        for pb in &parts[a + 1..] {
            if pa.nbrs & pb.mask == 0 {
                continue;
            }
            let w = g
                .edges()
                .iter()
                .copied()
                .find(|&(x, y)| {
                    let (ix, iy) = (g.index_of(x).unwrap(), g.index_of(y).unwrap());
                    (pa.mask >> ix & 1 == 1 && pb.mask >> iy & 1 == 1)
                        || (pa.mask >> iy & 1 == 1 && pb.mask >> ix & 1 == 1)
                })
                .expect("adjacent branch sets");
            pattern_edges.push((vx(pa.center), vx(pb.center)));
            witnesses.push(w);
        }
    }
    let pattern =
        Graph::new(parts.iter().map(|p| vx(p.center)), pattern_edges.iter().copied()).expect("distinct centers");
    let edge_witness = pattern_edges
        .iter()
        .zip(witnesses)
        .map(|(&(u, v), w)| (pattern.edge_id(u, v).unwrap(), w))
        .collect();
    ShallowModel {
        host: g.clone(),
        branch: parts
            .iter()
            .map(|p| (vx(p.center), bits(p.mask).map(vx).collect()))
            .collect(),
        center: parts.iter().map(|p| (vx(p.center), vx(p.center))).collect(),
        pattern,
        r,
        edge_witness,
    }
}

/// Maximum density of a graph whose `(<= 2r)`-subdivision is a subgraph,
/// with a witness.
///
/// Branch vertex sets are visited by size and then in lexicographic order;
/// for each, adjacent pairs are joined directly and the remaining pairs by
/// a search over internally disjoint paths with at most `2r` internal
/// vertices outside the branch set. Only strict improvements replace the
/// current best, so ties go to fewer vertices, then lexicographically.
pub fn topo_nabla(g: &Graph, r: usize) -> Result<(Rational, SubdivisionWitness)> {
    topo_nabla_capped(g, r, EXPANSION_CAP)
}

pub fn topo_nabla_capped(g: &Graph, r: usize, cap: usize) -> Result<(Rational, SubdivisionWitness)> {
    check_cap(g, cap, "topo_nabla")?;
    let n = g.n();
    let adj = g.adjacency_masks();
    let mut best_rho = Rational::from_integer(0);
    let mut best: (u64, Vec<(usize, usize, Vec<usize>)>) = (0, Vec::new());
    let mut sets: Vec<u64> = (1u64..(1u64 << n)).collect();
    sets.sort_by_key(|&s| (s.count_ones(), bits(s).collect::<Vec<_>>()));
    for set in sets {
        let size = set.count_ones() as i64;
        let members: Vec<usize> = bits(set).collect();
        let mut direct = Vec::new();
        let mut open = Vec::new();
        for (x, &a) in members.iter().enumerate() {
            for &b in &members[x + 1..] {
                if adj[a] >> b & 1 == 1 {
                    direct.push((a, b, Vec::new()));
                } else {
                    open.push((a, b));
                }
            }
        }
        let free = ((1u64 << n) - 1) & !set;
        let ceiling = direct.len() as i64 + open.len().min(free.count_ones() as usize) as i64;
        if Rational::new(ceiling, size) <= best_rho {
            continue;
        }
        let need = (best_rho * Rational::from_integer(size)).floor().to_integer() + 1 - direct.len() as i64;
        let mut paths = PathSearch {
            adj: &adj,
            open: &open,
            max_inner: 2 * r,
            chosen: Vec::new(),
            best: None,
        };
        paths.run(0, free, need.max(0) as usize);
        if let Some(extra) = paths.best {
            let total = direct.len() + extra.len();
            let rho = Rational::new(total as i64, size);
            if rho > best_rho {
                best_rho = rho;
                direct.extend(extra);
                best = (set, direct);
            }
        }
    }
    Ok((best_rho, witness_from(g, r, best.0, &best.1)))
}

struct PathSearch<'a> {
    adj: &'a [u64],
    open: &'a [(usize, usize)],
    max_inner: usize,
    chosen: Vec<(usize, usize, Vec<usize>)>,
    best: Option<Vec<(usize, usize, Vec<usize>)>>,
}

impl PathSearch<'_> {
    /// Looks for at least `need` (and then as many as possible) disjoint
    /// paths among the open pairs from index `i` on.
    fn run(&mut self, i: usize, free: u64, need: usize) {
        let have = self.chosen.len();
        let best_len = self.best.as_ref().map_or(0, Vec::len);
        if have >= need && (self.best.is_none() || have > best_len) {
            self.best = Some(self.chosen.clone());
        }
        let target = need.max(self.best.as_ref().map_or(0, |b| b.len() + 1));
        let left = (self.open.len() - i).min(free.count_ones() as usize);
        if i == self.open.len() || have + left < target {
            return;
        }
        let (a, b) = self.open[i];
        for path in inner_paths(self.adj, a, b, free, self.max_inner) {
            let used = path.iter().fold(0u64, |m, &v| m | 1 << v);
            self.chosen.push((a, b, path));
            self.run(i + 1, free & !used, need);
            self.chosen.pop();
        }
        self.run(i + 1, free, need);
    }
}

/// All paths from `a` to `b` whose internal vertices (1 to `max_inner`
/// of them) lie in `free`, as lists of internal vertices.
fn inner_paths(adj: &[u64], a: usize, b: usize, free: u64, max_inner: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn go(
        adj: &[u64],
        at: usize,
        b: usize,
        free: u64,
        max_inner: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for v in bits(adj[at] & free) {
            stack.push(v);
            if adj[v] >> b & 1 == 1 {
                out.push(stack.clone());
            }
            if stack.len() < max_inner {
                go(adj, v, b, free & !(1 << v), max_inner, stack, out);
            }
            stack.pop();
        }
    }
    if max_inner > 0 {
        go(adj, a, b, free, max_inner, &mut stack, &mut out);
    }
    out.sort_by_key(Vec::len);
    out
}

fn witness_from(g: &Graph, r: usize, set: u64, paths: &[(usize, usize, Vec<usize>)]) -> SubdivisionWitness {
    let vx = |i: usize| g.vertices()[i];
    let pattern =
        Graph::new(bits(set).map(vx), paths.iter().map(|(a, b, _)| (vx(*a), vx(*b)))).expect("distinct pairs");
    let paths_by_edge: BTreeMap<_, _> = paths
        .iter()
        .map(|(a, b, inner)| {
            let mut p = vec![vx(*a)];
            p.extend(inner.iter().map(|&i| vx(i)));
            p.push(vx(*b));
            (pattern.edge_id(vx(*a), vx(*b)).unwrap(), p)
        })
        .collect();
    SubdivisionWitness {
        branch: pattern.vertices().iter().map(|&v| (v, v)).collect(),
        pattern,
        paths: paths_by_edge,
        c: 2 * r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{validate_model, validate_subdivision};
    use crate::densest::max_subgraph_density;

    #[test]
    fn edgeless_is_zero() {
        for r in 0..3 {
            assert_eq!(nabla(&Graph::empty(4), r).unwrap().0, Rational::from_integer(0));
            assert_eq!(topo_nabla(&Graph::empty(4), r).unwrap().0, Rational::from_integer(0));
        }
    }

    #[test]
    fn k4_radius_one() {
        let (rho, m) = nabla(&Graph::complete(4), 1).unwrap();
        assert_eq!(rho, Rational::new(3, 2));
        assert!(validate_model(&m).is_empty());
        assert_eq!(m.pattern.n(), 4);
    }

    #[test]
    fn c6_topological() {
        let (rho, w) = topo_nabla(&Graph::cycle(6), 1).unwrap();
        assert_eq!(rho, Rational::from_integer(1));
        assert!(validate_subdivision(&Graph::cycle(6), &w).is_empty());
    }

    #[test]
    fn radius_zero_matches_densest_subgraph() {
        let mut edges: Vec<(u32, u32)> = Graph::complete(4).edges().to_vec();
        edges.extend([(3, 4), (4, 5), (5, 6)]);
        let g = Graph::new(0..7, edges).unwrap();
        let d = max_subgraph_density(&g).density;
        assert_eq!(nabla(&g, 0).unwrap().0, d);
        assert_eq!(topo_nabla(&g, 0).unwrap().0, d);
    }

    #[test]
    fn contracting_a_long_cycle() {
        // C_9 with radius 1 contracts to a triangle at best: density 1
        let (rho, m) = nabla(&Graph::cycle(9), 1).unwrap();
        assert_eq!(rho, Rational::from_integer(1));
        assert!(validate_model(&m).is_empty());
        // the Petersen-like prism: subdivided K4 becomes K4 at r = 1
        let g = Graph::new(
            0..10,
            [
                (0, 4),
                (4, 1),
                (0, 5),
                (5, 2),
                (0, 6),
                (6, 3),
                (1, 7),
                (7, 2),
                (1, 8),
                (8, 3),
                (2, 9),
                (9, 3),
            ],
        )
        .unwrap();
        let (t, w) = topo_nabla(&g, 1).unwrap();
        assert_eq!(t, Rational::new(3, 2));
        assert!(validate_subdivision(&g, &w).is_empty());
        assert_eq!(nabla(&g, 1).unwrap().0, Rational::new(3, 2));
    }

    #[test]
    fn cap_enforced() {
        assert!(nabla(&Graph::path(12), 1).unwrap_err().is_cap_exceeded());
        assert!(topo_nabla(&Graph::path(12), 1).unwrap_err().is_cap_exceeded());
    }
}
