//! Strong coloring numbers and acyclic colorings.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexOrdering};

/// Default vertex cap for [`scol_exact`].
pub const SCOL_CAP: usize = 9;
/// Default vertex cap for [`acyclic_chromatic_exact`].
pub const ACYCLIC_CAP: usize = 10;

/// Vertices `w` at or before `v` joined to `v` by a path of length at most
/// `r` whose internal vertices all come after `v`. Includes `v`.
pub fn sreach(g: &Graph, ord: &VertexOrdering, v: Vertex, r: usize) -> BTreeSet<Vertex> {
    let rv = ord.rank(v);
    reach(g, v, r, |x| ord.rank(x) > rv, |w| ord.rank(w) < rv)
}

/// Reach of `v` when `later(x)` says which vertices may be internal and
/// `earlier(w)` which may be endpoints.
fn reach(
    g: &Graph,
    v: Vertex,
    r: usize,
    later: impl Fn(Vertex) -> bool,
    earlier: impl Fn(Vertex) -> bool,
) -> BTreeSet<Vertex> {
    let mut out = BTreeSet::from([v]);
    let mut visited = BTreeSet::from([v]);
    let mut frontier = vec![v];
    for _ in 0..r {
        let mut next = Vec::new();
        for &u in &frontier {
            for w in g.neighbors(u) {
                if earlier(w) {
                    out.insert(w);
                } else if later(w) && visited.insert(w) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    out
}

/// Largest strong reach set under `ord`.
pub fn scol_of_order(g: &Graph, ord: &VertexOrdering, r: usize) -> usize {
    g.vertices()
        .iter()
        .map(|&v| sreach(g, ord, v, r).len())
        .max()
        .unwrap_or(0)
}

fn check_cap(g: &Graph, cap: usize, what: &'static str) -> Result<()> {
    if g.n() > cap.min(20) {
        return Err(Error::TooLarge { what, size: g.n(), cap });
    }
    Ok(())
}

/// Exact `scol_r` with a witnessing order.
///
/// The reach of `v` depends only on `v` and the set of vertices after it,
/// so instead of trying every permutation the search runs over suffix
/// sets: `best(T)` is the least worst reach when `T` is the tail of the
/// order, minimized over the first vertex of `T`.
pub fn scol_exact(g: &Graph, r: usize) -> Result<(usize, VertexOrdering)> {
    scol_exact_capped(g, r, SCOL_CAP)
}

pub fn scol_exact_capped(g: &Graph, r: usize, cap: usize) -> Result<(usize, VertexOrdering)> {
    check_cap(g, cap, "scol_exact")?;
    let n = g.n();
    let vs = g.vertices();
    let full = (1usize << n) - 1;
    let inside = |set: usize, x: Vertex| set >> g.index_of(x).unwrap() & 1 == 1;
    // cost(v, tail): reach of v when exactly `tail` comes after it
    let cost =
        |i: usize, tail: usize| reach(g, vs[i], r, |x| inside(tail, x), |w| w != vs[i] && !inside(tail, w)).len();
    let mut best = vec![0usize; full + 1];
    for t in 1..=full {
        best[t] = (0..n)
            .filter(|&i| t >> i & 1 == 1)
            .map(|i| cost(i, t & !(1 << i)).max(best[t & !(1 << i)]))
            .min()
            .unwrap();
    }
    let mut order = Vec::with_capacity(n);
    let mut t = full;
    while t != 0 {
        let i = (0..n)
            .filter(|&i| t >> i & 1 == 1)
            .find(|&i| cost(i, t & !(1 << i)).max(best[t & !(1 << i)]) == best[t])
            .unwrap();
        order.push(vs[i]);
        t &= !(1 << i);
    }
    Ok((best[full], VertexOrdering::new(order)))
}

/// Upper bound on `scol_r`: build the order from the back, each time
/// placing the vertex with the smallest reach given what is already
/// placed after it (lowest id on ties).
pub fn scol_greedy(g: &Graph, r: usize) -> (usize, VertexOrdering) {
    let mut placed: BTreeSet<Vertex> = BTreeSet::new();
    let mut back = Vec::with_capacity(g.n());
    while placed.len() < g.n() {
        let v = g
            .vertices()
            .iter()
            .copied()
            .filter(|v| !placed.contains(v))
            .min_by_key(|&v| {
                let size = reach(g, v, r, |x| placed.contains(&x), |w| w != v && !placed.contains(&w)).len();
                (size, v)
            })
            .unwrap();
        placed.insert(v);
        back.push(v);
    }
    back.reverse();
    let ord = VertexOrdering::new(back);
    (scol_of_order(g, &ord, r), ord)
}

/// Fewest colors in a proper coloring where any two classes induce a forest.
pub fn acyclic_chromatic_exact(g: &Graph) -> Result<(usize, BTreeMap<Vertex, usize>)> {
    acyclic_chromatic_exact_capped(g, ACYCLIC_CAP)
}

pub fn acyclic_chromatic_exact_capped(g: &Graph, cap: usize) -> Result<(usize, BTreeMap<Vertex, usize>)> {
    check_cap(g, cap, "acyclic_chromatic_exact")?;
    let n = g.n();
    for colors in 0..=n {
        let mut col = vec![usize::MAX; n];
        if assign(g, 0, colors, 0, &mut col) {
            let map = g.vertices().iter().copied().zip(col).collect();
            return Ok((colors, map));
        }
    }
    unreachable!("n colors always suffice")
}

/// Colors vertex `i` onward; new colors are opened in order, which removes
/// color permutations from the search.
fn assign(g: &Graph, i: usize, colors: usize, opened: usize, col: &mut [usize]) -> bool {
    if i == g.n() {
        return true;
    }
    for c in 0..colors.min(opened + 1) {
        if g.neighbor_indices(i).iter().any(|&j| col[j] == c) {
            continue;
        }
        col[i] = c;
        if !closes_bicolored_cycle(g, i, col) && assign(g, i + 1, colors, opened.max(c + 1), col) {
            return true;
        }
        col[i] = usize::MAX;
    }
    false
}

/// True iff two neighbors of `i` with the same color `b` are already
/// connected inside the classes `{col[i], b}`.
fn closes_bicolored_cycle(g: &Graph, i: usize, col: &[usize]) -> bool {
    let a = col[i];
    let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &j in g.neighbor_indices(i) {
        if col[j] != usize::MAX {
            by_color.entry(col[j]).or_default().push(j);
        }
    }
    for (b, nbrs) in by_color {
        if nbrs.len() < 2 {
            continue;
        }
        // components of the a/b-colored vertices other than i
        let mut comp = vec![usize::MAX; g.n()];
        for &start in &nbrs {
            if comp[start] != usize::MAX {
                return true;
            }
            let mut stack = vec![start];
            comp[start] = start;
            while let Some(u) = stack.pop() {
                for &w in g.neighbor_indices(u) {
                    if w != i && comp[w] == usize::MAX && (col[w] == a || col[w] == b) {
                        comp[w] = start;
                        stack.push(w);
                    }
                }
            }
        }
    }
    false
}

/// Both sides of `chi_a <= scol_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcnReport {
    pub chi_a: usize,
    pub coloring: BTreeMap<Vertex, usize>,
    pub scol_2: usize,
    pub order: VertexOrdering,
    pub holds: bool,
}

pub fn check_acn(g: &Graph) -> Result<AcnReport> {
    let (chi_a, coloring) = acyclic_chromatic_exact(g)?;
    let (scol_2, order) = scol_exact(g, 2)?;
    Ok(AcnReport {
        chi_a,
        coloring,
        scol_2,
        order,
        holds: chi_a <= scol_2,
    })
}
