use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::drawing::AbstractDrawing;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::numbers::{check_gap, GapCertificate};

/// A `(<= c)`-subdivision of `pattern` inside a host graph: pattern vertex
/// `v` sits at host vertex `branch[v]`, pattern edge `h` runs along
/// `paths[h]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionWitness {
    pub pattern: Graph,
    pub branch: BTreeMap<Vertex, Vertex>,
    pub paths: BTreeMap<EdgeId, Vec<Vertex>>,
    pub c: usize,
}

impl SubdivisionWitness {
    /// Path of pattern edge `h` oriented from its smaller endpoint.
    pub fn oriented_path(&self, h: EdgeId) -> Vec<Vertex> {
        let (v, _) = self.pattern.edge(h);
        let mut p = self.paths[&h].clone();
        if p.first() != self.branch.get(&v) {
            p.reverse();
        }
        p
    }
}

/// Everything wrong with `w` as a subdivision inside `host`.
pub fn validate_subdivision(host: &Graph, w: &SubdivisionWitness) -> Vec<String> {
    let mut out = Vec::new();
    let mut branch_vertices = BTreeSet::new();
    for &v in w.pattern.vertices() {
        match w.branch.get(&v) {
            Some(&x) if host.contains(x) => {
                if !branch_vertices.insert(x) {
                    out.push(format!("host vertex {x} is the branch vertex of two pattern vertices"));
                }
            }
            _ => out.push(format!("pattern vertex {v} has no branch vertex in the host")),
        }
    }
    let mut internal_owner: BTreeMap<Vertex, EdgeId> = BTreeMap::new();
    for (h, &(v, x)) in w.pattern.edges().iter().enumerate() {
        let Some(path) = w.paths.get(&h) else {
            out.push(format!("pattern edge {h} has no path"));
            continue;
        };
        let (Some(&bv), Some(&bx)) = (w.branch.get(&v), w.branch.get(&x)) else {
            continue;
        };
        let ends = (path.first().copied(), path.last().copied());
        if path.len() < 2 || (ends != (Some(bv), Some(bx)) && ends != (Some(bx), Some(bv))) {
            out.push(format!("path of pattern edge {h} does not join its branch vertices"));
            continue;
        }
        if path.windows(2).any(|p| !host.has_edge(p[0], p[1])) {
            out.push(format!("path of pattern edge {h} uses a non-edge"));
        }
        let inner = &path[1..path.len() - 1];
        if inner.len() > w.c {
            out.push(format!(
                "path of pattern edge {h} has {} > {} internal vertices",
                inner.len(),
                w.c
            ));
        }
        for &z in inner {
            if branch_vertices.contains(&z) {
                out.push(format!("path of pattern edge {h} passes branch vertex {z}"));
            } else if let Some(&other) = internal_owner.get(&z) {
                out.push(format!("paths of pattern edges {other} and {h} share vertex {z}"));
            } else {
                internal_owner.insert(z, h);
            }
        }
    }
    out
}

/// Drawing of the pattern inherited from a subdivision, charging each
/// crossing to the pattern edge whose path contains the charged host edge.
///
/// Crossings between two host edges of the same path are dropped, since a
/// pattern edge does not cross itself. Charges per pattern edge stay within
/// `(c + 1) k`.
pub fn contract_subdivision(
    a: &AbstractDrawing,
    cert: &GapCertificate,
    w: &SubdivisionWitness,
) -> Result<(AbstractDrawing, GapCertificate)> {
    if let Some(reason) = check_gap(a, cert)? {
        return Err(Error::CertificateRejected(reason));
    }
    let problems = validate_subdivision(a.graph(), w);
    if !problems.is_empty() {
        return Err(Error::InvalidInput(format!(
            "invalid subdivision: {}",
            problems.join("; ")
        )));
    }
    let host = a.graph();
    let mut path_of: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for h in 0..w.pattern.m() {
        for p in w.paths[&h].windows(2) {
            path_of.insert(host.edge_id(p[0], p[1]).expect("checked"), h);
        }
    }
    let charged: BTreeMap<(EdgeId, EdgeId, u32), EdgeId> = cert
        .charges
        .iter()
        .map(|&(e, f, i, c)| ((e.min(f), e.max(f), i), c))
        .collect();

    let mut multiplicity: BTreeMap<(EdgeId, EdgeId), u32> = BTreeMap::new();
    let mut charges = Vec::new();
    for (e, f, i) in a.occurrences() {
        let (Some(&he), Some(&hf)) = (path_of.get(&e), path_of.get(&f)) else {
            continue;
        };
        if he == hf {
            continue;
        }
        let key = (he.min(hf), he.max(hf));
        let slot = multiplicity.entry(key).or_default();
        let c = charged[&(e, f, i)];
        charges.push((key.0, key.1, *slot, path_of[&c]));
        *slot += 1;
    }
    let drawing = AbstractDrawing::new(
        w.pattern.clone(),
        multiplicity.into_iter().map(|((e, f), m)| (e, f, m)),
        None,
    )?;
    let mut load: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for &(_, _, _, c) in &charges {
        *load.entry(c).or_default() += 1;
    }
    let k = load.values().copied().max().unwrap_or(0);
    let bound = (w.c + 1) * cert.k;
    if k > bound {
        return Err(Error::Invariant(format!(
            "contracted charge {k} exceeds (c+1)k = {bound}"
        )));
    }
    Ok((drawing, GapCertificate { k, charges }))
}
