use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, Vertex};

/// One charged crossing occurrence: `(e, f, occurrence, charged edge)`.
pub type Charge = (EdgeId, EdgeId, u32, EdgeId);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapCertificate {
    pub k: usize,
    pub charges: Vec<Charge>,
}

impl GapCertificate {
    /// Number of occurrences charged to each edge.
    pub fn load(&self) -> BTreeMap<EdgeId, usize> {
        let mut load = BTreeMap::new();
        for &(_, _, _, c) in &self.charges {
            *load.entry(c).or_default() += 1;
        }
        load
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub k: usize,
    pub covers: BTreeMap<EdgeId, BTreeSet<Vertex>>,
}

/// Ordered crossing pairs `(e, f)`: edge `e` takes responsibility for `f`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Bearing {
    pub pairs: BTreeSet<(EdgeId, EdgeId)>,
}

impl Bearing {
    pub fn responsible_for(&self, e: EdgeId) -> impl Iterator<Item = EdgeId> + '_ {
        self.pairs.range((e, 0)..=(e, EdgeId::MAX)).map(|&(_, f)| f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapCoverCertificate {
    pub k: usize,
    pub bearing: Bearing,
    pub covers: BTreeMap<EdgeId, BTreeSet<Vertex>>,
    /// False when the exact search was skipped and `k` is only an upper bound.
    #[serde(default = "yes")]
    pub optimal: bool,
}

fn yes() -> bool {
    true
}

impl GapCoverCertificate {
    pub fn max_cover(&self) -> usize {
        self.covers.values().map(BTreeSet::len).max().unwrap_or(0)
    }
}
