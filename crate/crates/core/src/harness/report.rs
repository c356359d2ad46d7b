use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use super::bounds::{closed_form_bounds, BoundParams, Parameter, Rounding, BOUNDS, NOT_CHECKABLE};
use crate::coloring::{acyclic_chromatic_exact_capped, scol_exact_capped, ACYCLIC_CAP, SCOL_CAP};
use crate::densest::max_subgraph_density;
use crate::drawing::{compute_crossings, GeometricDrawing};
use crate::error::Result;
use crate::expansion::{nabla_capped, topo_nabla_capped, EXPANSION_CAP};
use crate::graph::{degeneracy, Graph, Rational};
use crate::io::rational_string;
use crate::numbers::{cover_number, gap_cover_number, gap_number, matching_planar_number};
use crate::treewidth::{treewidth_exact_capped, TREEWIDTH_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyConfig {
    pub radii: Vec<u64>,
    /// Euler genus used for the surface bounds; plane drawings have 0.
    pub genus: u64,
    pub cap_treewidth: usize,
    pub cap_expansion: usize,
    pub cap_scol: usize,
    pub cap_acyclic: usize,
    /// Node budget for the exact gap-cover search; `None` uses the default.
    pub gap_cover_budget: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            radii: vec![0, 1, 2],
            genus: 0,
            cap_treewidth: TREEWIDTH_CAP,
            cap_expansion: EXPANSION_CAP,
            cap_scol: SCOL_CAP,
            cap_acyclic: ACYCLIC_CAP,
            gap_cover_budget: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub name: String,
    pub statement: String,
    /// Crossing parameter the bound is stated for, with its measured value.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<(Parameter, u64)>,
    pub left: String,
    pub right: String,
    pub rounding: Rounding,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NotCheckable {
    pub name: String,
    pub statement: String,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub instance: String,
    /// Exact values, rationals as `p/q`.
    pub measured: BTreeMap<String, String>,
    /// False when the gap-cover value is only an upper bound.
    pub gap_cover_optimal: bool,
    /// Quantity or entry name -> why it was not computed.
    pub skipped: BTreeMap<String, String>,
    pub entries: Vec<BoundEntry>,
    /// Inequalities quoted from the literature, reported but not required.
    pub cited: Vec<BoundEntry>,
    pub not_checkable: Vec<NotCheckable>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn violations(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| !e.holds)
    }
}

fn big(q: Rational) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

fn int(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn entry(
    name: String,
    statement: &str,
    parameter: Option<(Parameter, u64)>,
    left: &BigRational,
    right: &BigRational,
    rounding: Rounding,
) -> BoundEntry {
    BoundEntry {
        name,
        statement: statement.to_string(),
        parameter,
        left: rational_string(left),
        right: rational_string(right),
        rounding,
        holds: left <= right,
    }
}

struct Measurements {
    values: BTreeMap<String, BigRational>,
    skipped: BTreeMap<String, String>,
}

impl Measurements {
    fn record<T>(&mut self, key: String, r: Result<T>, value: impl FnOnce(&T) -> BigRational) {
        match r {
            Ok(t) => {
                self.values.insert(key, value(&t));
            }
            Err(e) if e.is_cap_exceeded() => {
                self.skipped.insert(key, e.to_string());
            }
            Err(e) => panic!("measurement {key} failed: {e}"),
        }
    }
}

/// Measures everything computable on `d` within the configured caps and
/// checks every applicable bound.
pub fn verify_bounds(instance: &str, d: &GeometricDrawing, config: &VerifyConfig) -> Result<BoundReport> {
    let g: &Graph = d.graph();
    let a = compute_crossings(d)?;
    let (k_gap, _) = gap_number(&a);
    let (k_cover, _) = cover_number(&a);
    let (k_gc, gc_cert) = gap_cover_number(&a, config.gap_cover_budget);
    let mut m = Measurements {
        values: BTreeMap::new(),
        skipped: BTreeMap::new(),
    };
    let n = g.n() as u64;
    m.values.insert("n".into(), int(n));
    m.values.insert("m".into(), int(g.m() as u64));
    m.values.insert("density".into(), big(g.density()));
    m.values
        .insert("max_density".into(), big(max_subgraph_density(g).density));
    m.values.insert("crossings".into(), int(a.total_occurrences() as u64));
    m.values.insert("k_gap".into(), int(k_gap as u64));
    m.values.insert("k_cover".into(), int(k_cover as u64));
    m.values
        .insert("k_matching".into(), int(matching_planar_number(&a) as u64));
    m.values.insert("k_gapcover".into(), int(k_gc as u64));
    m.values.insert("degeneracy".into(), int(degeneracy(g).0 as u64));
    m.record("tw".into(), treewidth_exact_capped(g, config.cap_treewidth), |t| {
        int(t.0 as u64)
    });
    let max_r = config.radii.iter().copied().max().unwrap_or(0);
    for r in 0..=max_r {
        let wanted = config.radii.contains(&r);
        // the cited coloring inequality needs topo_nabla at r - 1
        let for_scol = config.radii.contains(&(r + 1));
        if wanted {
            m.record(
                format!("nabla_{r}"),
                nabla_capped(g, r as usize, config.cap_expansion),
                |t| big(t.0),
            );
        }
        if wanted || for_scol {
            m.record(
                format!("topo_nabla_{r}"),
                topo_nabla_capped(g, r as usize, config.cap_expansion),
                |t| big(t.0),
            );
        }
    }
    for &r in config.radii.iter().filter(|&&r| r >= 1) {
        m.record(
            format!("scol_{r}"),
            scol_exact_capped(g, r as usize, config.cap_scol),
            |t| int(t.0 as u64),
        );
    }
    m.record(
        "chi_a".into(),
        acyclic_chromatic_exact_capped(g, config.cap_acyclic),
        |t| int(t.0 as u64),
    );
    if !config.radii.contains(&2) {
        m.record("scol_2".into(), scol_exact_capped(g, 2, config.cap_scol), |t| {
            int(t.0 as u64)
        });
    }

    let mut entries = Vec::new();
    let mut skipped = m.skipped.clone();
    let mut check = |name: String, statement: &str, param, left: &str, right: Option<(BigRational, Rounding)>| {
        let Some((right, rounding)) = right else { return };
        match m.values.get(left) {
            Some(l) => entries.push(entry(name, statement, param, l, &right, rounding)),
            None => {
                let why = m
                    .skipped
                    .get(left)
                    .cloned()
                    .unwrap_or_else(|| format!("{left} not measured"));
                skipped.insert(name, why);
            }
        }
    };
    let mut radii = config.radii.clone();
    radii.sort();
    radii.dedup();
    for (name, param, quantity, statement) in BOUNDS {
        let k = match param {
            Parameter::Gap => k_gap,
            Parameter::GapCover => k_gc,
        } as u64;
        let per_radius = matches!(*quantity, "nabla" | "topo_nabla" | "scol");
        let rs: Vec<u64> = if per_radius { radii.clone() } else { vec![0] };
        for r in rs {
            let b = closed_form_bounds(BoundParams {
                k,
                r,
                g: config.genus,
                n,
            });
            let right = b.get(name).map(|v| (v.value.clone(), v.rounding));
            let (label, left) = match per_radius {
                true => (format!("{name}[r={r}]"), format!("{quantity}_{r}")),
                false => (name.to_string(), quantity.to_string()),
            };
            check(label, statement, Some((*param, k)), &left, right);
        }
    }
    let exact = |q: BigRational| Some((q, Rounding::Exact));
    check(
        "gap-cover-at-most-gap".into(),
        "k-gap-planar drawings are k-gap-cover-planar",
        None,
        "k_gapcover",
        exact(int(k_gap as u64)),
    );
    check(
        "gap-cover-at-most-cover".into(),
        "k-cover-planar drawings are k-gap-cover-planar",
        None,
        "k_gapcover",
        exact(int(k_cover as u64)),
    );
    check(
        "matching-at-most-cover".into(),
        "a matching crossing an edge needs that many cover vertices",
        None,
        "k_matching",
        exact(int(k_cover as u64)),
    );
    for &r in &radii {
        if let Some(full) = m.values.get(&format!("nabla_{r}")).cloned() {
            check(
                format!("topological-at-most-shallow-minor[r={r}]"),
                "topological nabla_r <= nabla_r",
                None,
                &format!("topo_nabla_{r}"),
                exact(full),
            );
        }
    }
    if let Some(s2) = m.values.get("scol_2").cloned() {
        check(
            "acyclic-at-most-strong-coloring".into(),
            "chi_a <= scol_2",
            None,
            "chi_a",
            exact(s2),
        );
    }
    let mut cited = Vec::new();
    for &r in radii.iter().filter(|&&r| r >= 1) {
        let (Some(s), Some(t)) = (
            m.values.get(&format!("scol_{r}")),
            m.values.get(&format!("topo_nabla_{}", r - 1)),
        ) else {
            continue;
        };
        let e = u32::try_from(r).expect("radius fits in u32");
        let right = Pow::pow(int(6 * r), e) * Pow::pow(t.clone(), 3 * e);
        cited.push(entry(
            format!("strong-coloring-vs-topological-expansion[r={r}]"),
            "scol_r <= (6r)^r (topological nabla_(r-1))^(3r)",
            None,
            s,
            &right,
            Rounding::Exact,
        ));
    }

    Ok(BoundReport {
        instance: instance.to_string(),
        measured: m.values.iter().map(|(k, v)| (k.clone(), rational_string(v))).collect(),
        gap_cover_optimal: gc_cert.optimal,
        skipped,
        entries,
        cited,
        not_checkable: NOT_CHECKABLE
            .iter()
            .map(|(name, statement)| NotCheckable {
                name: name.to_string(),
                statement: statement.to_string(),
                status: "not checkable: unspecified absolute constants".into(),
            })
            .collect(),
    })
}
