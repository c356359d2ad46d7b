//! Generation, analysis, construction replays and bound checks for a list
//! of instances, assembled into one deterministic bundle.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::generate::{generate, Family, Instance};
use super::report::{verify_bounds, BoundReport, VerifyConfig};
use crate::constructions::{
    check_minor_witnesses, contract_subdivision, lift_tree_decomposition, minor_drawing, planarize, sparsify,
};
use crate::drawing::{compute_crossings, AbstractDrawing};
use crate::error::{Error, Result};
use crate::expansion::nabla_capped;
use crate::io::rational_string;
use crate::numbers::{
    check_cover, check_gap, check_gap_cover, cover_number, gap_cover_number, gap_number, verify_gap, verify_gap_cover,
    Verdict,
};
use crate::treewidth::{treewidth_exact_capped, validate_tree_decomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Certificates,
    Bounds,
    MinorDrawing,
    Contract,
    Sparsify,
    Planarize,
}

pub const ALL_CHECKS: [Check; 6] = [
    Check::Certificates,
    Check::Bounds,
    Check::MinorDrawing,
    Check::Contract,
    Check::Sparsify,
    Check::Planarize,
];

/// Deliberate damage applied to a computed certificate before it is
/// verified, to exercise the failure path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Corruption {
    Gap,
    Cover,
    GapCover,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub generate: Family,
    /// One instance per seed for random families.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<u64>>,
    #[serde(default = "all_checks")]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corrupt: Option<Corruption>,
}

fn all_checks() -> Vec<Check> {
    ALL_CHECKS.to_vec()
}

fn default_sparsify_seeds() -> u64 {
    20
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineSpec {
    #[serde(default)]
    pub config: VerifyConfig,
    #[serde(default = "default_sparsify_seeds")]
    pub sparsify_seeds: u64,
    #[serde(default)]
    pub instances: Vec<InstanceSpec>,
}

impl PipelineSpec {
    /// Parses a spec, naming `source` and the line of any error.
    pub fn parse(source: &str, text: &str) -> Result<PipelineSpec> {
        crate::io::from_json(text).map_err(|e| match e {
            Error::Json(j) => Error::InvalidInput(format!("{source}:{}:{}: {j}", j.line(), j.column())),
            other => Error::InvalidInput(format!("{source}: {other}")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub name: String,
    pub holds: bool,
    pub detail: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceReport {
    pub id: String,
    pub family: String,
    pub certificates: Vec<Outcome>,
    pub constructions: Vec<Outcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundReport>,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub bound_entries: usize,
    pub violated_bounds: usize,
    pub certificate_failures: usize,
    pub construction_failures: usize,
    pub skipped: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bundle {
    pub instances: Vec<InstanceReport>,
    pub summary: Summary,
}

impl Bundle {
    pub fn ok(&self) -> bool {
        self.summary.ok
    }

    /// One line per instance followed by the totals.
    pub fn summary_text(&self) -> String {
        let mut out = String::new();
        for inst in &self.instances {
            let status = if inst.failures.is_empty() { "ok" } else { "FAILED" };
            let _ = writeln!(out, "{} {}: {status}", inst.id, inst.family);
            for f in &inst.failures {
                let _ = writeln!(out, "    {f}");
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} instances, {} bound entries, {} violated, {} certificate failures, {} construction failures, {} skipped",
            s.instances, s.bound_entries, s.violated_bounds, s.certificate_failures, s.construction_failures, s.skipped
        );
        let _ = writeln!(out, "{}", if s.ok { "all checks passed" } else { "FAILED" });
        out
    }
}

fn detail(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn skipped(name: &str, why: String) -> Outcome {
    Outcome {
        name: name.to_string(),
        holds: true,
        detail: detail([("skipped", json!(why))]),
    }
}

/// Runs every instance of `spec`; instance ids are numbered in spec order
/// so the bundle is sorted by id.
pub fn run_pipeline(spec: &PipelineSpec) -> Result<Bundle> {
    let mut expanded = Vec::new();
    for s in &spec.instances {
        match (&s.seeds, s.generate.is_random()) {
            (Some(seeds), true) => expanded.extend(seeds.iter().map(|&seed| (s, s.generate.with_seed(seed)))),
            _ => expanded.push((s, s.generate.clone())),
        }
    }
    let mut reports = Vec::new();
    for (i, (s, family)) in expanded.into_iter().enumerate() {
        let id = format!("{i:03}");
        let inst = generate(&family)?;
        reports.push(run_instance(id, &inst, s, spec)?);
    }
    let mut summary = Summary {
        instances: reports.len(),
        ..Summary::default()
    };
    for r in &reports {
        summary.certificate_failures += r.certificates.iter().filter(|o| !o.holds).count();
        summary.construction_failures += r.constructions.iter().filter(|o| !o.holds).count();
        summary.skipped += r
            .constructions
            .iter()
            .filter(|o| o.detail.contains_key("skipped"))
            .count();
        if let Some(b) = &r.bounds {
            summary.bound_entries += b.entries.len();
            summary.violated_bounds += b.violations().count();
            summary.skipped += b.skipped.len();
        }
    }
    summary.ok =
        summary.violated_bounds == 0 && summary.certificate_failures == 0 && summary.construction_failures == 0;
    Ok(Bundle {
        instances: reports,
        summary,
    })
}

fn verdict(verifier: &str, v: Verdict) -> Outcome {
    let (holds, reason) = match v {
        Ok(None) => (true, None),
        Ok(Some(reason)) => (false, Some(reason)),
        Err(e) => (false, Some(e.to_string())),
    };
    let mut d = detail([]);
    if let Some(reason) = reason {
        d.insert("reason".into(), json!(reason));
    }
    Outcome {
        name: verifier.to_string(),
        holds,
        detail: d,
    }
}

fn certificates(a: &AbstractDrawing, corrupt: Option<Corruption>, budget: Option<usize>) -> Vec<Outcome> {
    let (_, mut gap) = gap_number(a);
    let (_, mut cover) = cover_number(a);
    let (_, mut gc) = gap_cover_number(a, budget);
    match corrupt {
        None => {}
        Some(Corruption::Gap) => match gap.k {
            0 => gap.charges.push((0, 0, 0, 0)),
            _ => gap.k -= 1,
        },
        Some(Corruption::Cover) => match cover.k {
            0 => {
                cover
                    .covers
                    .entry(0)
                    .or_default()
                    .insert(a.graph().vertices().first().copied().unwrap_or(0));
            }
            _ => cover.k -= 1,
        },
        Some(Corruption::GapCover) => match gc.k {
            0 => {
                gc.covers
                    .entry(0)
                    .or_default()
                    .insert(a.graph().vertices().first().copied().unwrap_or(0));
            }
            _ => gc.bearing.pairs.clear(),
        },
    }
    let mut out = vec![
        verdict("verify_gap", check_gap(a, &gap)),
        verdict("verify_cover", check_cover(a, &cover)),
        verdict("verify_gap_cover", check_gap_cover(a, &gc)),
    ];
    let ks = [gap.k, cover.k, gc.k];
    for (o, k) in out.iter_mut().zip(ks) {
        o.detail.insert("k".into(), json!(k));
    }
    out[2].detail.insert("optimal".into(), json!(gc.optimal));
    out
}

fn run_instance(id: String, inst: &Instance, s: &InstanceSpec, spec: &PipelineSpec) -> Result<InstanceReport> {
    let d = &inst.drawing;
    let g = d.graph();
    let a = compute_crossings(d)?;
    let config = &spec.config;
    let mut report = InstanceReport {
        id,
        family: inst.family.to_string(),
        certificates: Vec::new(),
        constructions: Vec::new(),
        bounds: None,
        failures: Vec::new(),
    };
    let (k_gc, gc) = gap_cover_number(&a, config.gap_cover_budget);
    let mut checks = s.checks.clone();
    checks.sort();
    checks.dedup();
    for check in checks {
        match check {
            Check::Certificates => {
                report.certificates = certificates(&a, s.corrupt, config.gap_cover_budget);
            }
            Check::Bounds => {
                report.bounds = Some(verify_bounds(&report.id, d, config)?);
            }
            Check::MinorDrawing => {
                for &r in &config.radii {
                    let name = format!("minor-drawing[r={r}]");
                    let model = match nabla_capped(g, r as usize, config.cap_expansion) {
                        Ok((_, model)) => model,
                        Err(e) if e.is_cap_exceeded() => {
                            report.constructions.push(skipped(&name, e.to_string()));
                            continue;
                        }
                        Err(e) => return Err(e),
                    };
                    let md = minor_drawing(&a, &gc, &model)?;
                    let verified = verify_gap_cover(&md.drawing, &md.certificate)?;
                    let within = md.certificate.k <= (2 * r as usize + 1) * k_gc;
                    let witnesses = check_minor_witnesses(&a, &md);
                    report.constructions.push(Outcome {
                        name,
                        holds: verified && within && witnesses,
                        detail: detail([
                            ("k", json!(k_gc)),
                            ("k_minor", json!(md.certificate.k)),
                            ("pattern_vertices", json!(model.pattern.n())),
                            ("pattern_edges", json!(model.pattern.m())),
                            ("verified", json!(verified)),
                            ("witnesses_ok", json!(witnesses)),
                        ]),
                    });
                }
            }
            Check::Contract => {
                let Some(w) = &inst.subdivision else { continue };
                let (k, cert) = gap_number(&a);
                let (contracted, cert2) = contract_subdivision(&a, &cert, w)?;
                let verified = verify_gap(&contracted, &cert2)?;
                let within = cert2.k <= (w.c + 1) * k;
                report.constructions.push(Outcome {
                    name: "contract".into(),
                    holds: verified && within,
                    detail: detail([
                        ("c", json!(w.c)),
                        ("k", json!(k)),
                        ("k_contracted", json!(cert2.k)),
                        ("verified", json!(verified)),
                    ]),
                });
            }
            Check::Sparsify => {
                let mut total = 0usize;
                let mut edge_bound = true;
                for seed in 0..spec.sparsify_seeds {
                    let (h, trace) = sparsify(&a, &gc, seed)?;
                    total += h.n();
                    edge_bound &= trace.edge_bound_holds;
                }
                let runs = spec.sparsify_seeds.max(1);
                let mean = BigRational::new(total.into(), runs.into());
                let expected = BigRational::new(g.n().into(), (gc.k + 1).into());
                report.constructions.push(Outcome {
                    name: "sparsify".into(),
                    holds: edge_bound,
                    detail: detail([
                        ("seeds", json!(spec.sparsify_seeds)),
                        ("k", json!(gc.k)),
                        ("mean_vertices", json!(rational_string(&mean))),
                        ("expected_vertices", json!(rational_string(&expected))),
                        ("edge_bound_holds", json!(edge_bound)),
                    ]),
                });
            }
            Check::Planarize => {
                let p = planarize(d)?;
                let (w, td) = match treewidth_exact_capped(&p.planar_graph, config.cap_treewidth) {
                    Ok(t) => t,
                    Err(e) if e.is_cap_exceeded() => {
                        report.constructions.push(skipped("planarize-lift", e.to_string()));
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let lifted = lift_tree_decomposition(&p, &td)?;
                let valid = validate_tree_decomposition(g, &lifted).is_empty();
                let within = lifted.width() < 2 * (w + 1);
                report.constructions.push(Outcome {
                    name: "planarize-lift".into(),
                    holds: valid && within,
                    detail: detail([
                        ("planarization_vertices", json!(p.planar_graph.n())),
                        ("planarization_treewidth", json!(w)),
                        ("lifted_width", json!(lifted.width())),
                        ("valid", json!(valid)),
                    ]),
                });
            }
        }
    }
    for o in &report.certificates {
        if !o.holds {
            let reason = o.detail.get("reason").and_then(Value::as_str).unwrap_or("");
            report
                .failures
                .push(format!("{} rejected the certificate: {reason}", o.name));
        }
    }
    for o in &report.constructions {
        if !o.holds {
            report.failures.push(format!("construction {} failed", o.name));
        }
    }
    if let Some(b) = &report.bounds {
        for e in b.violations() {
            report
                .failures
                .push(format!("bound {} violated: {} > {}", e.name, e.left, e.right));
        }
    }
    Ok(report)
}
