//! Certificate checkers. They read the drawing directly and do not call
//! into the solvers.

use std::collections::{BTreeMap, BTreeSet};

use crate::drawing::AbstractDrawing;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Vertex};

use super::certificate::{CoverCertificate, GapCertificate, GapCoverCertificate};

/// `Ok(None)` when the certificate holds, `Ok(Some(reason))` when it does
/// not, and an error for dangling references.
pub type Verdict = Result<Option<String>>;

fn malformed<T>(msg: String) -> Result<T> {
    Err(Error::MalformedCertificate(msg))
}

fn ends(a: &AbstractDrawing, e: EdgeId) -> Result<(Vertex, Vertex)> {
    if e >= a.graph().m() {
        return malformed(format!("unknown edge {e}"));
    }
    Ok(a.graph().edge(e))
}

fn disjoint(x: (Vertex, Vertex), y: (Vertex, Vertex)) -> bool {
    x.0 != y.0 && x.0 != y.1 && x.1 != y.0 && x.1 != y.1
}

fn check_covers(a: &AbstractDrawing, covers: &BTreeMap<EdgeId, BTreeSet<Vertex>>, k: usize) -> Verdict {
    for (&e, set) in covers {
        let (u, v) = ends(a, e)?;
        if let Some(x) = set.iter().find(|x| !a.graph().contains(**x)) {
            return malformed(format!("cover of edge {e} names unknown vertex {x}"));
        }
        if set.contains(&u) || set.contains(&v) {
            return Ok(Some(format!("cover of edge {e} contains its own endpoint")));
        }
        if set.len() > k {
            return Ok(Some(format!("cover of edge {e} has {} > {k} vertices", set.len())));
        }
    }
    Ok(None)
}

fn covered(covers: &BTreeMap<EdgeId, BTreeSet<Vertex>>, e: EdgeId, (x, y): (Vertex, Vertex)) -> bool {
    covers.get(&e).is_some_and(|s| s.contains(&x) || s.contains(&y))
}

pub fn check_gap(a: &AbstractDrawing, cert: &GapCertificate) -> Verdict {
    let mut seen = BTreeSet::new();
    let mut load: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for &(e, f, i, c) in &cert.charges {
        ends(a, e)?;
        ends(a, f)?;
        ends(a, c)?;
        let mult = a.multiplicity(e, f);
        if mult == 0 {
            return malformed(format!("charge names non-crossing pair {e}-{f}"));
        }
        if i >= mult {
            return malformed(format!("pair {e}-{f} has no occurrence {i}"));
        }
        if c != e && c != f {
            return Ok(Some(format!(
                "occurrence {i} of {e}-{f} charged to uninvolved edge {c}"
            )));
        }
        if !seen.insert((e.min(f), e.max(f), i)) {
            return Ok(Some(format!("occurrence {i} of {e}-{f} charged twice")));
        }
        *load.entry(c).or_default() += 1;
    }
    for c in a.crossings() {
        for i in 0..c.multiplicity {
            if !seen.contains(&(c.e, c.f, i)) {
                return Ok(Some(format!("occurrence {i} of {}-{} is not charged", c.e, c.f)));
            }
        }
    }
    if let Some((e, n)) = load.into_iter().find(|&(_, n)| n > cert.k) {
        return Ok(Some(format!("edge {e} charged {n} > {} times", cert.k)));
    }
    Ok(None)
}

pub fn check_cover(a: &AbstractDrawing, cert: &CoverCertificate) -> Verdict {
    if let Some(r) = check_covers(a, &cert.covers, cert.k)? {
        return Ok(Some(r));
    }
    for c in a.crossings() {
        let (x, y) = (a.graph().edge(c.e), a.graph().edge(c.f));
        if !disjoint(x, y) {
            continue;
        }
        if !covered(&cert.covers, c.e, y) {
            return Ok(Some(format!("cover of edge {} misses crossing edge {}", c.e, c.f)));
        }
        if !covered(&cert.covers, c.f, x) {
            return Ok(Some(format!("cover of edge {} misses crossing edge {}", c.f, c.e)));
        }
    }
    Ok(None)
}

pub fn check_gap_cover(a: &AbstractDrawing, cert: &GapCoverCertificate) -> Verdict {
    if let Some(r) = check_covers(a, &cert.covers, cert.k)? {
        return Ok(Some(r));
    }
    for &(e, f) in &cert.bearing.pairs {
        let (x, y) = (ends(a, e)?, ends(a, f)?);
        if a.multiplicity(e, f) == 0 || !disjoint(x, y) {
            return Ok(Some(format!("bearing pair ({e}, {f}) is not an independent crossing")));
        }
        if !covered(&cert.covers, e, y) {
            return Ok(Some(format!("cover of edge {e} misses edge {f} from the bearing")));
        }
    }
    for c in a.crossings() {
        let independent = disjoint(a.graph().edge(c.e), a.graph().edge(c.f));
        if independent && !cert.bearing.pairs.contains(&(c.e, c.f)) && !cert.bearing.pairs.contains(&(c.f, c.e)) {
            return Ok(Some(format!("bearing has no direction for pair {}-{}", c.e, c.f)));
        }
    }
    Ok(None)
}

pub fn verify_gap(a: &AbstractDrawing, cert: &GapCertificate) -> Result<bool> {
    Ok(check_gap(a, cert)?.is_none())
}

pub fn verify_cover(a: &AbstractDrawing, cert: &CoverCertificate) -> Result<bool> {
    Ok(check_cover(a, cert)?.is_none())
}

pub fn verify_gap_cover(a: &AbstractDrawing, cert: &GapCoverCertificate) -> Result<bool> {
    Ok(check_gap_cover(a, cert)?.is_none())
}
