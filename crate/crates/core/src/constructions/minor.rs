use std::collections::{BTreeMap, BTreeSet};

use crate::drawing::AbstractDrawing;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Vertex};
use crate::numbers::{check_gap_cover, Bearing, GapCoverCertificate};

use super::model::{bfs_within, tree_path, validate_model, ShallowModel};

#[derive(Clone, Debug)]
pub struct MinorDrawing {
    pub drawing: AbstractDrawing,
    pub certificate: GapCoverCertificate,
    /// Host edges along the walk of each pattern edge.
    pub walks: Vec<Vec<EdgeId>>,
    /// For each declared crossing of pattern edges, the host pair behind it.
    pub witnesses: BTreeMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
}

/// Walk of pattern edge `vw`: BFS path from the center of `v` to the
/// witness endpoint in `μ(v)`, the witness edge, then the BFS path from
/// the witness endpoint in `μ(w)` back to the center of `w`.
fn walk(m: &ShallowModel, h: EdgeId) -> Vec<EdgeId> {
    let (v, w) = m.pattern.edge(h);
    let (x, y) = m.edge_witness[&h];
    let (x, y) = if m.branch[&v].contains(&x) { (x, y) } else { (y, x) };
    let mut vertices = tree_path(&bfs_within(&m.host, &m.branch[&v], m.center[&v]), x);
    let mut back = tree_path(&bfs_within(&m.host, &m.branch[&w], m.center[&w]), y);
    back.reverse();
    vertices.extend(back);
    vertices
        .windows(2)
        .map(|p| m.host.edge_id(p[0], p[1]).expect("walk uses host edges"))
        .collect()
}

/// Gap-cover drawing of an `r`-shallow minor with covers of size at most
/// `(2r + 1) k`.
///
/// Two independent pattern edges are declared crossing when their walks
/// contain an independent crossing pair of the host drawing. Bearing pairs
/// are lifted along the walks, and the cover of a pattern edge is the set
/// of pattern vertices whose branch sets meet the covers of its walk.
pub fn minor_drawing(a: &AbstractDrawing, cert: &GapCoverCertificate, m: &ShallowModel) -> Result<MinorDrawing> {
    if a.graph() != &m.host {
        return Err(Error::InvalidInput("model host differs from the drawn graph".into()));
    }
    if let Some(reason) = check_gap_cover(a, cert)? {
        return Err(Error::CertificateRejected(reason));
    }
    let violations = validate_model(m);
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(Error::InvalidInput(format!("invalid model: {}", list.join("; "))));
    }
    let pattern = &m.pattern;
    let walks: Vec<Vec<EdgeId>> = (0..pattern.m()).map(|h| walk(m, h)).collect();

    let owner: BTreeMap<Vertex, Vertex> = m
        .branch
        .iter()
        .flat_map(|(&v, set)| set.iter().map(move |&x| (x, v)))
        .collect();
    let host_independent: BTreeSet<(EdgeId, EdgeId)> = a.independent_pairs().into_iter().collect();
    let crosses = |e0: EdgeId, f0: EdgeId| host_independent.contains(&(e0.min(f0), e0.max(f0)));

    let mut witnesses = BTreeMap::new();
    let mut bearing = BTreeSet::new();
    for h1 in 0..pattern.m() {
        for h2 in h1 + 1..pattern.m() {
            if !pattern.independent(h1, h2) {
                continue;
            }
            let mut witness = None;
            for &e0 in &walks[h1] {
                for &f0 in &walks[h2] {
                    if !crosses(e0, f0) {
                        continue;
                    }
                    witness.get_or_insert((e0, f0));
                    if cert.bearing.pairs.contains(&(e0, f0)) {
                        bearing.insert((h1, h2));
                    }
                    if cert.bearing.pairs.contains(&(f0, e0)) {
                        bearing.insert((h2, h1));
                    }
                }
            }
            if let Some(w) = witness {
                witnesses.insert((h1, h2), w);
            }
        }
    }

    let mut covers = BTreeMap::new();
    for (h, walk) in walks.iter().enumerate() {
        let (v, w) = pattern.edge(h);
        let cover: BTreeSet<Vertex> = walk
            .iter()
            .flat_map(|e0| cert.covers.get(e0).into_iter().flatten())
            .filter_map(|x| owner.get(x).copied())
            .filter(|&z| z != v && z != w)
            .collect();
        covers.insert(h, cover);
    }
    let k_out = covers.values().map(BTreeSet::len).max().unwrap_or(0);
    let bound = (2 * m.r + 1) * cert.k;
    if k_out > bound {
        return Err(Error::Invariant(format!(
            "minor cover size {k_out} exceeds (2r+1)k = {bound}"
        )));
    }
    debug_assert!(walks.iter().all(|w| w.len() <= 2 * m.r + 1));
    let drawing = AbstractDrawing::new(pattern.clone(), witnesses.keys().map(|&(h1, h2)| (h1, h2, 1)), None)?;
    let certificate = GapCoverCertificate {
        k: k_out,
        bearing: Bearing { pairs: bearing },
        covers,
        optimal: false,
    };
    Ok(MinorDrawing {
        drawing,
        certificate,
        walks,
        witnesses,
    })
}

/// Re-checks that every declared crossing has its stored host witness.
pub fn check_minor_witnesses(a: &AbstractDrawing, md: &MinorDrawing) -> bool {
    let host = a.graph();
    md.drawing.crossings().iter().all(|c| {
        md.witnesses.get(&(c.e, c.f)).is_some_and(|&(e0, f0)| {
            md.walks[c.e].contains(&e0)
                && md.walks[c.f].contains(&f0)
                && a.multiplicity(e0, f0) > 0
                && host.independent(e0, f0)
        })
    })
}
