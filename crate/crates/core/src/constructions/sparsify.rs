use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::drawing::AbstractDrawing;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::numbers::{check_gap_cover, GapCoverCertificate};

/// Name of the generator recorded in traces.
pub const SPARSIFY_RNG: &str = "chacha8/rand_chacha-0.9";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsifyTrace {
    pub rng: String,
    pub seed: u64,
    pub k: usize,
    /// Sampling probability is `1 / (k + 1)`.
    pub chosen: Vec<Vertex>,
    pub kept_edges: Vec<EdgeId>,
    /// `|E(h)| <= 3 |V(h)|`; holds whenever the drawing is realizable.
    pub edge_bound_holds: bool,
}

/// Random subgraph in which no two independent edges cross.
///
/// Each vertex is kept with probability `1 / (k + 1)`; an edge survives
/// when both ends are kept and no vertex of its cover is. A surviving pair
/// of independent crossing edges would have one edge's cover hit by the
/// other's kept endpoint, so none survive.
pub fn sparsify(a: &AbstractDrawing, cert: &GapCoverCertificate, seed: u64) -> Result<(Graph, SparsifyTrace)> {
    if let Some(reason) = check_gap_cover(a, cert)? {
        return Err(Error::CertificateRejected(reason));
    }
    let g = a.graph();
    let k = cert.k;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen: BTreeSet<Vertex> = g
        .vertices()
        .iter()
        .copied()
        .filter(|_| rng.random_range(0..=k) == 0)
        .collect();
    let kept_edges: Vec<EdgeId> = (0..g.m())
        .filter(|&e| {
            let (u, v) = g.edge(e);
            chosen.contains(&u) && chosen.contains(&v) && cert.covers.get(&e).is_none_or(|c| c.is_disjoint(&chosen))
        })
        .collect();
    let kept: BTreeSet<EdgeId> = kept_edges.iter().copied().collect();
    if let Some(c) = a
        .crossings()
        .iter()
        .find(|c| kept.contains(&c.e) && kept.contains(&c.f) && g.independent(c.e, c.f))
    {
        return Err(Error::Invariant(format!(
            "independent crossing {}-{} survived sparsification",
            c.e, c.f
        )));
    }
    let h = Graph::new(chosen.iter().copied(), kept_edges.iter().map(|&e| g.edge(e)))?;
    let trace = SparsifyTrace {
        rng: SPARSIFY_RNG.into(),
        seed,
        k,
        chosen: chosen.into_iter().collect(),
        edge_bound_holds: h.m() <= 3 * h.n(),
        kept_edges,
    };
    Ok((h, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::gap_cover_number;

    #[test]
    fn crossing_free_keeps_everything() {
        let a = AbstractDrawing::crossing_free(Graph::cycle(6));
        let (_, cert) = gap_cover_number(&a, None);
        let (h, trace) = sparsify(&a, &cert, 7).unwrap();
        assert_eq!(&h, a.graph());
        assert!(trace.edge_bound_holds);
    }

    #[test]
    fn seeds_replay_and_never_keep_independent_crossings() {
        let g = Graph::complete(6);
        let a = AbstractDrawing::new(g, [(0, 14, 1), (1, 13, 1), (5, 12, 1)], None).unwrap();
        let (_, cert) = gap_cover_number(&a, None);
        for seed in 0..100 {
            let (h1, t1) = sparsify(&a, &cert, seed).unwrap();
            let (h2, t2) = sparsify(&a, &cert, seed).unwrap();
            assert_eq!((h1, t1), (h2, t2));
        }
    }
}
