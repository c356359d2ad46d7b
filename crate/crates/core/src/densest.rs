//! Exact maximum subgraph density via parametric minimum cuts.
//!
//! For a guess `a/b` the network `source -> edge (b*w) -> endpoints (inf)`,
//! `vertex -> sink (a)` has minimum cut `b*W - max_S (b*w(E(S)) - a|S|)`.
//! Starting from the whole vertex set, the guess is replaced by the density
//! of the maximizing set until no set beats it; every step strictly raises
//! the guess and there are finitely many attainable densities, so the loop
//! ends on the exact optimum.

use std::collections::BTreeSet;

use crate::flow::{FlowNetwork, INF};
use crate::graph::{Graph, Rational, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensestSubgraph {
    pub density: Rational,
    pub witness: BTreeSet<Vertex>,
}

/// Maximum of |E'|/|V'| over nonempty subgraphs, with a vertex set attaining it.
pub fn max_subgraph_density(g: &Graph) -> DensestSubgraph {
    let edges: Vec<(usize, usize, i64)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (g.index_of(u).unwrap(), g.index_of(v).unwrap(), 1))
        .collect();
    let (density, set) = max_weighted_density(g.n(), &edges);
    DensestSubgraph {
        density,
        witness: set.into_iter().map(|i| g.vertices()[i]).collect(),
    }
}

/// Weighted version over vertices `0..n`; parallel edges may be given as
/// weights. Returns the optimum and a set of vertex indices attaining it.
/// The witness is a single vertex when the optimum is 0 and `n > 0`.
pub fn max_weighted_density(n: usize, edges: &[(usize, usize, i64)]) -> (Rational, Vec<usize>) {
    if n == 0 {
        return (Rational::from_integer(0), Vec::new());
    }
    let total: i64 = edges.iter().map(|e| e.2).sum();
    if total == 0 {
        return (Rational::from_integer(0), vec![0]);
    }
    let mut set: Vec<usize> = (0..n).collect();
    let mut guess = Rational::new(total, n as i64);
    loop {
        match improve(n, edges, guess) {
            Some(better) => {
                let inside: Vec<bool> = membership(n, &better);
                let w: i64 = edges
                    .iter()
                    .filter(|(u, v, _)| inside[*u] && inside[*v])
                    .map(|e| e.2)
                    .sum();
                let d = Rational::new(w, better.len() as i64);
                debug_assert!(d > guess);
                guess = d;
                set = better;
            }
            None => return (guess, set),
        }
    }
}

fn membership(n: usize, set: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; n];
    for &v in set {
        inside[v] = true;
    }
    inside
}

/// A vertex set with density strictly above `guess`, if one exists.
fn improve(n: usize, edges: &[(usize, usize, i64)], guess: Rational) -> Option<Vec<usize>> {
    let (a, b) = (*guess.numer(), *guess.denom());
    let m = edges.len();
    let source = m + n;
    let sink = source + 1;
    let mut net = FlowNetwork::new(m + n + 2);
    let mut supply = 0;
    for (i, &(u, v, w)) in edges.iter().enumerate() {
        net.add_arc(source, i, b * w);
        net.add_arc(i, m + u, INF);
        net.add_arc(i, m + v, INF);
        supply += b * w;
    }
    for v in 0..n {
        net.add_arc(m + v, sink, a);
    }
    let cut = net.max_flow(source, sink);
    if supply - cut <= 0 {
        return None;
    }
    let side = net.source_side(source);
    let set: Vec<usize> = (0..n).filter(|&v| side[m + v]).collect();
    debug_assert!(!set.is_empty());
    Some(set)
}
