use crate::densest::max_weighted_density;
use crate::drawing::AbstractDrawing;
use crate::flow::FlowNetwork;
use crate::graph::Rational;

use super::certificate::GapCertificate;

/// Maximum density of the crossing multigraph (vertices are edge ids,
/// one parallel edge per crossing occurrence).
pub fn crossing_multigraph_density(a: &AbstractDrawing) -> Rational {
    let pairs: Vec<_> = a
        .crossings()
        .iter()
        .map(|c| (c.e, c.f, i64::from(c.multiplicity)))
        .collect();
    max_weighted_density(a.graph().m(), &pairs).0
}

/// Minimum over all chargings of the largest number of crossings charged
/// to one edge.
///
/// The value is the ceiling of the crossing multigraph's maximum density;
/// a charging attaining it is read off a flow in which every occurrence
/// sends one unit to one of its two edges and every edge absorbs at most
/// `k` units.
pub fn gap_number(a: &AbstractDrawing) -> (usize, GapCertificate) {
    let occ: Vec<_> = a.occurrences().collect();
    if occ.is_empty() {
        return (
            0,
            GapCertificate {
                k: 0,
                charges: Vec::new(),
            },
        );
    }
    let k = crossing_multigraph_density(a).ceil().to_integer() as usize;
    let charges = charging_with_capacity(a, k).expect("Hakimi bound is attained");
    (k, GapCertificate { k, charges })
}

/// A charging with at most `k` charges per edge, if one exists.
pub(crate) fn charging_with_capacity(a: &AbstractDrawing, k: usize) -> Option<Vec<super::certificate::Charge>> {
    let occ: Vec<_> = a.occurrences().collect();
    let m = a.graph().m();
    let source = occ.len() + m;
    let sink = source + 1;
    let mut net = FlowNetwork::new(sink + 1);
    let mut arcs = Vec::with_capacity(occ.len());
    for (i, &(e, f, _)) in occ.iter().enumerate() {
        net.add_arc(source, i, 1);
        let to_e = net.add_arc(i, occ.len() + e, 1);
        net.add_arc(i, occ.len() + f, 1);
        arcs.push(to_e);
    }
    for e in 0..m {
        net.add_arc(occ.len() + e, sink, k as i64);
    }
    if net.max_flow(source, sink) != occ.len() as i64 {
        return None;
    }
    Some(
        occ.iter()
            .zip(arcs)
            .map(|(&(e, f, i), to_e)| (e, f, i, if net.flow_on(to_e) == 1 { e } else { f }))
            .collect(),
    )
}
