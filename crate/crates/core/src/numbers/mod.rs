//! Gap, cover, matching-planar and gap-cover numbers of a drawing, with
//! certificates and independent checkers.

mod certificate;
mod cover;
mod gap;
mod gap_cover;
mod verify;

pub use certificate::{Bearing, Charge, CoverCertificate, GapCertificate, GapCoverCertificate};
pub use cover::{cover_number, matching_planar_number, max_matching, min_vertex_cover};
pub use gap::{crossing_multigraph_density, gap_number};
pub use gap_cover::{certificate_from_bearing, gap_cover_number, GAP_COVER_CAP};
pub use verify::{check_cover, check_gap, check_gap_cover, verify_cover, verify_gap, verify_gap_cover, Verdict};

use crate::drawing::{crossing_graph, AbstractDrawing};
use crate::graph::degeneracy;

pub fn crossing_graph_degeneracy(a: &AbstractDrawing) -> usize {
    degeneracy(&crossing_graph(a)).0
}
