//! Exhaustive oracles and instance generators shared by the integration
//! tests. Nothing here calls the solvers under test; the oracles only read
//! vertex and edge lists.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use bpl_core::harness::generate::{generate, Family};
use bpl_core::{AbstractDrawing, GeometricDrawing, Graph, Rational, Vertex};
use num_rational::Ratio;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    rand::SeedableRng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// graph helpers

/// Adjacency lists over vertex indices.
pub fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    let idx: BTreeMap<Vertex, usize> = g.vertices().iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); g.n()];
    for &(u, v) in g.edges() {
        adj[idx[&u]].push(idx[&v]);
        adj[idx[&v]].push(idx[&u]);
    }
    adj
}

fn edge_indices(g: &Graph) -> Vec<(usize, usize)> {
    let idx: BTreeMap<Vertex, usize> = g.vertices().iter().enumerate().map(|(i, &v)| (v, i)).collect();
    g.edges().iter().map(|&(u, v)| (idx[&u], idx[&v])).collect()
}

fn shares_endpoint(g: &Graph, e: usize, f: usize) -> bool {
    let (a, b) = g.edges()[e];
    let (c, d) = g.edges()[f];
    a == c || a == d || b == c || b == d
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap(n, &mut p, &mut out);
    out
}

fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, p, out);
        if k % 2 == 0 {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
    heap(k - 1, p, out);
}

// ---------------------------------------------------------------------------
// crossing parameters

/// Every crossing occurrence `(e, f)` listed once per multiplicity.
pub fn occurrence_list(a: &AbstractDrawing) -> Vec<(usize, usize)> {
    a.crossings()
        .iter()
        .flat_map(|c| std::iter::repeat_n((c.e, c.f), c.multiplicity as usize))
        .collect()
}

/// Least maximum load over all ways of charging each occurrence to one of
/// its two edges.
pub fn brute_gap(a: &AbstractDrawing) -> usize {
    let occ = occurrence_list(a);
    assert!(occ.len() <= 20, "too many occurrences for the brute-force oracle");
    let m = a.graph().m();
    let mut best = usize::MAX;
    for mask in 0u32..1 << occ.len() {
        let mut load = vec![0usize; m];
        for (i, &(e, f)) in occ.iter().enumerate() {
            load[if mask >> i & 1 == 1 { f } else { e }] += 1;
        }
        best = best.min(load.into_iter().max().unwrap_or(0));
    }
    if occ.is_empty() {
        0
    } else {
        best
    }
}

/// Max over nonempty edge sets `S` of (occurrences inside `S`) / |S|.
pub fn brute_crossing_density(a: &AbstractDrawing) -> Rational {
    let m = a.graph().m();
    assert!(m <= 20);
    let occ = occurrence_list(a);
    let mut best = Rational::from_integer(0);
    for s in 1u32..1 << m {
        let inside = occ.iter().filter(|&&(e, f)| s >> e & 1 == 1 && s >> f & 1 == 1).count();
        best = best.max(Rational::new(inside as i64, s.count_ones() as i64));
    }
    best
}

pub fn ceil(q: Rational) -> usize {
    q.ceil().to_integer() as usize
}

/// Independent crossing pairs, computed from endpoints.
pub fn brute_independent_pairs(a: &AbstractDrawing) -> Vec<(usize, usize)> {
    a.crossings()
        .iter()
        .filter(|c| !shares_endpoint(a.graph(), c.e, c.f))
        .map(|c| (c.e, c.f))
        .collect()
}

/// Smallest vertex set meeting every edge in `edges`, by subset enumeration.
pub fn brute_vertex_cover(edges: &[(Vertex, Vertex)]) -> usize {
    let vs: Vec<Vertex> = edges
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert!(vs.len() <= 24);
    let pos = |x: Vertex| vs.iter().position(|&y| y == x).unwrap();
    let masks: Vec<(u32, u32)> = edges.iter().map(|&(u, v)| (1 << pos(u), 1 << pos(v))).collect();
    (0u32..1 << vs.len())
        .filter(|s| masks.iter().all(|&(a, b)| s & (a | b) != 0))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

/// Per edge, the minimum cover of the edges crossing it independently.
pub fn brute_cover(a: &AbstractDrawing) -> usize {
    let g = a.graph();
    let pairs = brute_independent_pairs(a);
    (0..g.m())
        .map(|e| {
            let crossing: Vec<_> = pairs
                .iter()
                .filter_map(|&(x, y)| match (x == e, y == e) {
                    (true, _) => Some(g.edges()[y]),
                    (_, true) => Some(g.edges()[x]),
                    _ => None,
                })
                .collect();
            brute_vertex_cover(&crossing)
        })
        .max()
        .unwrap_or(0)
}

/// Minimum over all bearings (each independent pair gets `e->f`, `f->e`
/// or both) of the largest per-edge cover.
pub fn brute_gap_cover(a: &AbstractDrawing) -> usize {
    let g = a.graph();
    let pairs = brute_independent_pairs(a);
    assert!(
        pairs.len() <= 10,
        "too many independent pairs for the brute-force oracle"
    );
    // responsibilities of each edge: which pairs and which side
    let mut memo: BTreeMap<(usize, u32), usize> = BTreeMap::new();
    let mut incident: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, &(e, f)) in pairs.iter().enumerate() {
        incident.entry(e).or_default().push((i, f));
        incident.entry(f).or_default().push((i, e));
    }
    let mut best = usize::MAX;
    let total = 3usize.pow(pairs.len() as u32);
    for code in 0..total {
        // choice[i]: 0 => first edge responsible, 1 => second, 2 => both
        let mut c = code;
        let choice: Vec<usize> = (0..pairs.len())
            .map(|_| {
                let d = c % 3;
                c /= 3;
                d
            })
            .collect();
        let mut worst = 0;
        for (&e, list) in &incident {
            let mut mask = 0u32;
            for (j, &(i, _)) in list.iter().enumerate() {
                let first = pairs[i].0 == e;
                if choice[i] == 2 || (choice[i] == 0) == first {
                    mask |= 1 << j;
                }
            }
            let size = *memo.entry((e, mask)).or_insert_with(|| {
                let edges: Vec<_> = list
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask >> j & 1 == 1)
                    .map(|(_, &(_, f))| g.edges()[f])
                    .collect();
                brute_vertex_cover(&edges)
            });
            worst = worst.max(size);
            if worst >= best {
                break;
            }
        }
        best = best.min(worst);
    }
    if pairs.is_empty() {
        0
    } else {
        best
    }
}

// ---------------------------------------------------------------------------
// densities and expansion

pub fn brute_densest(g: &Graph) -> Rational {
    let n = g.n();
    assert!(n <= 20);
    let edges = edge_indices(g);
    let mut best = Rational::from_integer(0);
    for s in 1u32..1 << n {
        let inside = edges
            .iter()
            .filter(|&&(u, v)| s >> u & 1 == 1 && s >> v & 1 == 1)
            .count();
        best = best.max(Rational::new(inside as i64, s.count_ones() as i64));
    }
    best
}

/// Eccentricity of `c` inside `part` (None if `part` is disconnected).
fn ecc_within(adj: &[Vec<usize>], part: &[usize], c: usize) -> Option<usize> {
    let mut dist: BTreeMap<usize, usize> = BTreeMap::from([(c, 0)]);
    let mut queue = std::collections::VecDeque::from([c]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if part.contains(&w) && !dist.contains_key(&w) {
                dist.insert(w, dist[&u] + 1);
                queue.push_back(w);
            }
        }
    }
    (dist.len() == part.len()).then(|| dist.values().copied().max().unwrap_or(0))
}

/// Maximum density of an `r`-shallow minor, by enumerating every partition
/// of every vertex subset into branch sets.
pub fn brute_nabla(g: &Graph, r: usize) -> Rational {
    let n = g.n();
    assert!(n <= 9);
    let adj = adjacency(g);
    let edges = edge_indices(g);
    let mut label = vec![0usize; n];
    let mut best = Rational::from_integer(0);
    fn rec(
        i: usize,
        parts: usize,
        label: &mut Vec<usize>,
        adj: &[Vec<usize>],
        edges: &[(usize, usize)],
        r: usize,
        best: &mut Rational,
    ) {
        let n = label.len();
        if i == n {
            if parts == 0 {
                return;
            }
            let groups: Vec<Vec<usize>> = (1..=parts)
                .map(|p| (0..n).filter(|&v| label[v] == p).collect())
                .collect();
            let shallow = groups
                .iter()
                .all(|grp| grp.iter().any(|&c| ecc_within(adj, grp, c).is_some_and(|e| e <= r)));
            if !shallow {
                return;
            }
            let mut touching = BTreeSet::new();
            for &(u, v) in edges {
                let (a, b) = (label[u], label[v]);
                if a != 0 && b != 0 && a != b {
                    touching.insert((a.min(b), a.max(b)));
                }
            }
            *best = (*best).max(Rational::new(touching.len() as i64, parts as i64));
            return;
        }
        for l in 0..=parts + 1 {
            label[i] = l;
            rec(i + 1, parts.max(l), label, adj, edges, r, best);
        }
        label[i] = 0;
    }
    rec(0, 0, &mut label, &adj, &edges, r, &mut best);
    best
}

/// Maximum density of an `r`-shallow topological minor, by enumerating
/// every subgraph and every choice of branch vertices that turns it into a
/// `(<= 2r)`-subdivision of a simple graph.
pub fn brute_topo_nabla(g: &Graph, r: usize) -> Rational {
    let m = g.m();
    assert!(m <= 16);
    let n = g.n();
    let edges = edge_indices(g);
    let mut best = Rational::from_integer(0);
    for s in 1u32..1 << m {
        let chosen: Vec<usize> = (0..m).filter(|&e| s >> e & 1 == 1).collect();
        let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &e in &chosen {
            inc[edges[e].0].push(e);
            inc[edges[e].1].push(e);
        }
        let used: Vec<usize> = (0..n).filter(|&v| !inc[v].is_empty()).collect();
        let optional: Vec<usize> = used.iter().copied().filter(|&v| inc[v].len() == 2).collect();
        for extra in 0u32..1 << optional.len() {
            let branch: BTreeSet<usize> = used
                .iter()
                .copied()
                .filter(|&v| inc[v].len() != 2)
                .chain(
                    optional
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| extra >> j & 1 == 1)
                        .map(|(_, &v)| v),
                )
                .collect();
            if branch.is_empty() {
                continue;
            }
            if let Some(k) = chains(&edges, &inc, &branch, chosen.len(), r) {
                best = best.max(Rational::new(k as i64, branch.len() as i64));
            }
        }
    }
    best
}

/// Number of branch-to-branch chains if they form a simple graph with at
/// most `2r` interior vertices each and cover all `total` edges.
fn chains(
    edges: &[(usize, usize)],
    inc: &[Vec<usize>],
    branch: &BTreeSet<usize>,
    total: usize,
    r: usize,
) -> Option<usize> {
    let mut seen_edges = BTreeSet::new();
    let mut pairs = BTreeSet::new();
    for &b in branch {
        for &start in &inc[b] {
            if seen_edges.contains(&start) {
                continue;
            }
            let (mut at, mut via, mut interior) = (b, start, 0);
            loop {
                seen_edges.insert(via);
                let (x, y) = edges[via];
                let next = if x == at { y } else { x };
                if branch.contains(&next) {
                    if next == b || !pairs.insert((b.min(next), b.max(next))) {
                        return None;
                    }
                    break;
                }
                interior += 1;
                if interior > 2 * r {
                    return None;
                }
                via = *inc[next].iter().find(|&&e| e != via).unwrap();
                at = next;
            }
        }
    }
    (seen_edges.len() == total).then_some(pairs.len())
}

// ---------------------------------------------------------------------------
// orders and colorings

/// Strong `r`-reach of the vertex at `v` under `rank`, by simple-path
/// enumeration.
pub fn brute_sreach(adj: &[Vec<usize>], rank: &[usize], v: usize, r: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::from([v]);
    fn walk(
        adj: &[Vec<usize>],
        rank: &[usize],
        v: usize,
        at: usize,
        left: usize,
        path: &mut Vec<usize>,
        out: &mut BTreeSet<usize>,
    ) {
        if left == 0 {
            return;
        }
        for &w in &adj[at] {
            if path.contains(&w) {
                continue;
            }
            if rank[w] < rank[v] {
                out.insert(w);
            } else if rank[w] > rank[v] {
                path.push(w);
                walk(adj, rank, v, w, left - 1, path, out);
                path.pop();
            }
        }
    }
    walk(adj, rank, v, v, r, &mut vec![v], &mut out);
    out
}

pub fn brute_scol(g: &Graph, r: usize) -> usize {
    let n = g.n();
    assert!(n <= 8);
    let adj = adjacency(g);
    permutations(n)
        .into_iter()
        .map(|order| {
            let mut rank = vec![0; n];
            for (i, &v) in order.iter().enumerate() {
                rank[v] = i;
            }
            (0..n).map(|v| brute_sreach(&adj, &rank, v, r).len()).max().unwrap_or(0)
        })
        .min()
        .unwrap_or(0)
}

fn find(p: &mut [usize], x: usize) -> usize {
    if p[x] != x {
        let root = find(p, p[x]);
        p[x] = root;
    }
    p[x]
}

pub fn is_acyclic_coloring(g: &Graph, col: &[usize]) -> bool {
    let edges = edge_indices(g);
    if edges.iter().any(|&(u, v)| col[u] == col[v]) {
        return false;
    }
    let colors: BTreeSet<usize> = col.iter().copied().collect();
    for &a in &colors {
        for &b in colors.range(a + 1..) {
            let mut p: Vec<usize> = (0..g.n()).collect();
            for &(u, v) in &edges {
                let pair = [col[u], col[v]];
                if pair.contains(&a) && pair.contains(&b) {
                    let (x, y) = (find(&mut p, u), find(&mut p, v));
                    if x == y {
                        return false;
                    }
                    p[x] = y;
                }
            }
        }
    }
    true
}

pub fn brute_acyclic(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 8);
    if n == 0 {
        return 0;
    }
    for c in 1..=n {
        let total = c.pow(n as u32);
        for code in 0..total {
            let mut x = code;
            let col: Vec<usize> = (0..n)
                .map(|_| {
                    let d = x % c;
                    x /= c;
                    d
                })
                .collect();
            if is_acyclic_coloring(g, &col) {
                return c;
            }
        }
    }
    unreachable!()
}

/// Treewidth as the least over elimination orders of the largest
/// neighbourhood at elimination time.
pub fn brute_treewidth(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 8);
    if n == 0 {
        return 0;
    }
    let base: Vec<BTreeSet<usize>> = adjacency(g).into_iter().map(|l| l.into_iter().collect()).collect();
    permutations(n)
        .into_iter()
        .map(|order| {
            let mut adj = base.clone();
            let mut width = 0;
            for &v in &order {
                let nb: Vec<usize> = adj[v].iter().copied().collect();
                width = width.max(nb.len());
                for &x in &nb {
                    adj[x].remove(&v);
                    for &y in &nb {
                        if x != y {
                            adj[x].insert(y);
                        }
                    }
                }
                adj[v].clear();
            }
            width
        })
        .min()
        .unwrap()
}

// ---------------------------------------------------------------------------
// instances

pub fn random_graph(rng: &mut Rng8, n: u32, m: usize) -> Graph {
    let pairs: Vec<(u32, u32)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut chosen: Vec<_> = pairs.choose_multiple(rng, m.min(pairs.len())).copied().collect();
    chosen.sort();
    Graph::new(0..n, chosen).unwrap()
}

/// Random abstract drawing of `g` with at most `max_occ` crossing
/// occurrences; adjacent edges may cross too.
pub fn random_abstract(rng: &mut Rng8, g: Graph, max_occ: usize, max_mult: u32) -> AbstractDrawing {
    let m = g.m();
    let mut pairs: Vec<(usize, usize)> = (0..m).flat_map(|e| (e + 1..m).map(move |f| (e, f))).collect();
    pairs.shuffle(rng);
    let target = if max_occ == 0 { 0 } else { rng.random_range(0..=max_occ) };
    let mut crossings = Vec::new();
    let mut occ = 0;
    for (e, f) in pairs {
        if occ >= target {
            break;
        }
        let mult = rng.random_range(1..=max_mult).min((target - occ) as u32);
        crossings.push((e, f, mult));
        occ += mult as usize;
    }
    AbstractDrawing::new(g, crossings, None).unwrap()
}

/// Random abstract drawing where only independent edges cross.
pub fn random_independent(rng: &mut Rng8, g: Graph, max_pairs: usize) -> AbstractDrawing {
    let m = g.m();
    let mut pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|e| (e + 1..m).map(move |f| (e, f)))
        .filter(|&(e, f)| !shares_endpoint(&g, e, f))
        .collect();
    pairs.shuffle(rng);
    let k = if max_pairs == 0 {
        0
    } else {
        rng.random_range(0..=max_pairs)
    };
    pairs.truncate(k);
    AbstractDrawing::new(g, pairs.into_iter().map(|(e, f)| (e, f, 1)), None).unwrap()
}

// ---------------------------------------------------------------------------
// corpus

/// Named geometric drawings used by the corpus-wide checks.
pub fn corpus_drawings() -> Vec<(String, GeometricDrawing)> {
    let mut families = Vec::new();
    for n in 1..=8 {
        families.push(Family::StraightlineComplete { n });
    }
    for n in 1..=4 {
        families.push(Family::StarConstruction { n });
    }
    families.push(Family::K6Figure1);
    for (a, b) in [(1, 1), (1, 2), (1, 4), (2, 2), (2, 3), (3, 3), (2, 5)] {
        families.push(Family::Grid { a, b });
    }
    for seed in 0..6 {
        families.push(Family::RandomSegments {
            n: 4 + seed as u32,
            m: 3 + 2 * seed as u32,
            seed,
        });
        families.push(Family::RandomSegments {
            n: 9,
            m: 14,
            seed: 100 + seed,
        });
        families.push(Family::RandomPlanarPlusChords {
            n: 5 + seed as u32,
            extra: 2,
            seed,
        });
    }
    families.push(Family::RandomSegments { n: 11, m: 20, seed: 7 });
    families.push(Family::RandomPlanarPlusChords {
        n: 11,
        extra: 4,
        seed: 3,
    });
    families.push(Family::Subdivided {
        base: Box::new(Family::StraightlineComplete { n: 4 }),
        c: 1,
    });
    families.push(Family::Subdivided {
        base: Box::new(Family::Grid { a: 2, b: 2 }),
        c: 2,
    });
    families.push(Family::Subdivided {
        base: Box::new(Family::RandomSegments { n: 5, m: 5, seed: 9 }),
        c: 2,
    });
    families
        .into_iter()
        .map(|f| {
            let inst = generate(&f).unwrap();
            (f.to_string(), inst.drawing)
        })
        .collect()
}

/// Corpus drawings' graphs plus the small named graphs.
pub fn corpus_graphs() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = corpus_drawings()
        .into_iter()
        .map(|(name, d)| (name, d.graph().clone()))
        .collect();
    for n in 1..=4 {
        out.push((format!("edgeless({n})"), Graph::empty(n)));
    }
    for n in 2..=7 {
        out.push((format!("path({n})"), Graph::path(n)));
    }
    for n in 3..=8 {
        out.push((format!("cycle({n})"), Graph::cycle(n)));
    }
    for n in 1..=6 {
        out.push((format!("complete({n})"), Graph::complete(n)));
    }
    out.push(("complete-bipartite(2,3)".into(), Graph::complete_bipartite(2, 3)));
    out.push(("complete-bipartite(3,3)".into(), Graph::complete_bipartite(3, 3)));
    let star = Graph::new(0..5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
    out.push(("star(4)".into(), star));
    let tree = Graph::new(0..7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
    out.push(("binary-tree(7)".into(), tree));
    out
}

pub fn ratio_to_f64(q: Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

pub fn big(q: Rational) -> num_rational::BigRational {
    Ratio::new((*q.numer()).into(), (*q.denom()).into())
}
