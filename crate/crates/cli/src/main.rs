use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bpl_core::coloring::{acyclic_chromatic_exact_capped, scol_exact_capped, scol_greedy, ACYCLIC_CAP, SCOL_CAP};
use bpl_core::constructions::{
    contract_subdivision, lift_tree_decomposition, minor_drawing, planarize, sparsify, ShallowModel, SubdivisionWitness,
};
use bpl_core::drawing::{compute_crossings, validate_drawing};
use bpl_core::expansion::{nabla_capped, topo_nabla_capped, EXPANSION_CAP};
use bpl_core::harness::pipeline::PipelineSpec;
use bpl_core::harness::{closed_form_bounds, generate, run_pipeline, verify_bounds, BoundParams, Family, VerifyConfig};
use bpl_core::io::{from_value, rational_string, to_document};
use bpl_core::numbers::{
    check_cover, check_gap, check_gap_cover, cover_number, gap_cover_number, gap_number, matching_planar_number,
    CoverCertificate, GapCertificate, GapCoverCertificate,
};
use bpl_core::treewidth::{treewidth_exact_capped, TreeDecomposition, TREEWIDTH_CAP};
use bpl_core::{AbstractDrawing, Error, GeometricDrawing, Graph};

const DEFAULT_SPEC: &str = include_str!("../specs/default.json");

#[derive(Parser)]
#[command(
    name = "bpl",
    version,
    about = "Crossing parameters of graph drawings and the bounds they imply"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpansionMode {
    Minor,
    Topo,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColoringMode {
    ScolExact,
    ScolGreedy,
    Acyclic,
    /// Acyclic chromatic number against scol_2.
    Acn,
}

#[derive(Args)]
struct Common {
    /// Input JSON document; `-` or omitted reads stdin.
    #[arg(long, short, visible_alias = "graph")]
    input: Option<PathBuf>,
    /// Output path; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Check the drawing conditions of a geometric drawing.
    Validate(Common),
    /// Crossing pairs, multiplicities and per-edge order of a geometric drawing.
    Crossings(Common),
    /// Gap number with a charging certificate, or verify a given certificate.
    Gap {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Cover number and matching-planar number, or verify a cover certificate.
    Cover {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Gap-cover number with a bearing and covers, or verify a certificate.
    GapCover {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Node budget of the exact search.
        #[arg(long)]
        cap_gap_cover_nodes: Option<usize>,
        /// Exit with status 3 when optimality is not proven.
        #[arg(long)]
        strict: bool,
    },
    /// Gap-cover drawing of a shallow minor given by a model.
    MinorDrawing {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Contract a subdivision and transfer the charging certificate.
    Contract {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        subdivision: PathBuf,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Random subgraph with no independent crossings.
    Sparsify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Replace every crossing by a dummy vertex.
    Planarize(Common),
    /// Lift a tree decomposition of the planarization back to the graph.
    LiftTd {
        #[command(flatten)]
        common: Common,
        /// Decomposition of the planarization; computed exactly when omitted.
        #[arg(long)]
        td: Option<PathBuf>,
        #[arg(long, default_value_t = TREEWIDTH_CAP)]
        cap_treewidth: usize,
    },
    /// Largest density of a depth-r shallow minor or topological minor.
    Expansion {
        #[command(flatten)]
        common: Common,
        #[arg(long = "r", short = 'r', visible_alias = "radius", default_value_t = 0)]
        radius: usize,
        #[arg(long, value_enum, default_value = "minor")]
        mode: ExpansionMode,
        #[arg(long, default_value_t = EXPANSION_CAP)]
        cap_expansion: usize,
    },
    /// Strong coloring numbers and the acyclic chromatic number.
    Coloring {
        #[command(flatten)]
        common: Common,
        #[arg(long = "r", short = 'r', visible_alias = "radius", default_value_t = 2)]
        radius: usize,
        #[arg(long, value_enum, default_value = "scol-exact")]
        mode: ColoringMode,
        #[arg(long, default_value_t = SCOL_CAP)]
        cap_scol: usize,
        #[arg(long, default_value_t = ACYCLIC_CAP)]
        cap_acyclic: usize,
    },
    /// Evaluate the closed-form bounds, or check them on a drawing given by --input.
    Bounds {
        #[command(flatten)]
        common: Common,
        #[arg(long, short, default_value_t = 0)]
        k: u64,
        #[arg(long, short, default_value_t = 0)]
        r: u64,
        #[arg(long, short, default_value_t = 0)]
        g: u64,
        #[arg(long, short, default_value_t = 0)]
        n: u64,
        /// Radii checked with --input.
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<u64>>,
    },
    /// Generate an instance of a named family.
    Generate {
        /// straightline-complete, star-construction, random-segments,
        /// k6-figure1, grid, random-planar-plus-chords or subdivided.
        family: String,
        /// Family parameter `key=value`; values are JSON (e.g. `n=5`).
        #[arg(long = "param", short = 'p')]
        params: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run a pipeline spec (the shipped default when --input is omitted).
    Pipeline {
        #[arg(long, short)]
        input: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Also write the human-readable summary here.
        #[arg(long)]
        summary: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// Failure with the exit status it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<Error>() {
            Some(Error::TooLarge { .. }) => 3,
            Some(Error::CertificateRejected(_) | Error::Invariant(_)) => 1,
            _ => 2,
        };
        Failure { code, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

/// Result of a subcommand: a document to print and the exit status.
struct Report {
    doc: Value,
    text: String,
    code: u8,
}

impl Report {
    fn ok(doc: Value, text: impl Into<String>) -> Self {
        Report {
            doc,
            text: text.into(),
            code: 0,
        }
    }

    fn status(mut self, passed: bool) -> Self {
        if !passed {
            self.code = 1;
        }
        self
    }
}

fn read(path: &Option<PathBuf>) -> anyhow::Result<Value> {
    let text = match path.as_deref() {
        None => std::io::read_to_string(std::io::stdin()).context("reading stdin")?,
        Some(p) if p.as_os_str() == "-" => std::io::read_to_string(std::io::stdin()).context("reading stdin")?,
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
    };
    let name = path.as_ref().map_or("<stdin>".to_string(), |p| p.display().to_string());
    serde_json::from_str(&text).map_err(|e| anyhow!("{name}:{}:{}: {e}", e.line(), e.column()))
}

fn read_file(path: &PathBuf) -> anyhow::Result<Value> {
    read(&Some(path.clone()))
}

fn parse<T: serde::de::DeserializeOwned>(v: Value) -> anyhow::Result<T> {
    Ok(from_value(v)?)
}

/// Documents that wrap a drawing (generated instances, minor drawings) are
/// accepted wherever the drawing itself is.
fn unwrap_drawing(v: Value) -> Value {
    match v.get("drawing") {
        Some(d) if v.get("positions").is_none() && v.get("crossings").is_none() => {
            let mut d = d.clone();
            if let (Some(inner), Some(schema)) = (d.as_object_mut(), v.get("schema")) {
                inner.insert("schema".into(), schema.clone());
            }
            d
        }
        _ => v,
    }
}

fn geometric(v: Value) -> anyhow::Result<GeometricDrawing> {
    parse(unwrap_drawing(v))
}

/// A geometric drawing (crossings computed) or an abstract one.
fn abstract_drawing(v: Value) -> anyhow::Result<AbstractDrawing> {
    let v = unwrap_drawing(v);
    if v.get("positions").is_some() {
        Ok(compute_crossings(&geometric(v)?)?)
    } else {
        parse(v)
    }
}

/// A bare graph, or the graph of any drawing document.
fn graph(v: Value) -> anyhow::Result<Graph> {
    let v = unwrap_drawing(v);
    if v.get("positions").is_some() || v.get("crossings").is_some() {
        let g = v
            .get("graph")
            .cloned()
            .ok_or_else(|| anyhow!("drawing without a graph"))?;
        Ok(serde_json::from_value(g)?)
    } else {
        parse(v)
    }
}

fn doc<T: serde::Serialize>(value: &T) -> anyhow::Result<Value> {
    Ok(to_document(value)?)
}

fn run(cli: Cli) -> Result<(Report, Option<PathBuf>, Format), Failure> {
    let (report, output, format) = match cli.command {
        Command::Validate(c) => {
            let d = geometric(read(&c.input)?)?;
            let bad = validate_drawing(&d);
            let text = match bad.is_empty() {
                true => "valid drawing".to_string(),
                false => bad.iter().map(|v| format!("{v}\n")).collect(),
            };
            let r = Report::ok(doc(&json!({"valid": bad.is_empty(), "violations": bad}))?, text);
            (r.status(bad.is_empty()), c.output, c.format)
        }
        Command::Crossings(c) => {
            let a = compute_crossings(&geometric(read(&c.input)?)?)?;
            let text = format!(
                "{} crossing pairs, {} crossings",
                a.crossings().len(),
                a.total_occurrences()
            );
            (Report::ok(doc(&a)?, text), c.output, c.format)
        }
        Command::Gap { common: c, certificate } => {
            let a = abstract_drawing(read(&c.input)?)?;
            let r = match certificate {
                Some(p) => verdict(check_gap(&a, &parse::<GapCertificate>(read_file(&p)?)?)?)?,
                None => {
                    let (k, cert) = gap_number(&a);
                    Report::ok(doc(&json!({"k": k, "certificate": cert}))?, format!("gap number {k}"))
                }
            };
            (r, c.output, c.format)
        }
        Command::Cover { common: c, certificate } => {
            let a = abstract_drawing(read(&c.input)?)?;
            let r = match certificate {
                Some(p) => verdict(check_cover(&a, &parse::<CoverCertificate>(read_file(&p)?)?)?)?,
                None => {
                    let (k, cert) = cover_number(&a);
                    let mp = matching_planar_number(&a);
                    let text = format!("cover number {k}, matching-planar number {mp}");
                    Report::ok(doc(&json!({"k": k, "matching_planar": mp, "certificate": cert}))?, text)
                }
            };
            (r, c.output, c.format)
        }
        Command::GapCover {
            common: c,
            certificate,
            cap_gap_cover_nodes,
            strict,
        } => {
            let a = abstract_drawing(read(&c.input)?)?;
            let r = match certificate {
                Some(p) => verdict(check_gap_cover(&a, &parse::<GapCoverCertificate>(read_file(&p)?)?)?)?,
                None => {
                    let (k, cert) = gap_cover_number(&a, cap_gap_cover_nodes);
                    let note = if cert.optimal {
                        ""
                    } else {
                        " (upper bound, optimality not proven)"
                    };
                    let mut r = Report::ok(
                        doc(&json!({"k": k, "optimal": cert.optimal, "certificate": cert}))?,
                        format!("gap-cover number {k}{note}"),
                    );
                    if strict && !cert.optimal {
                        r.code = 3;
                    }
                    r
                }
            };
            (r, c.output, c.format)
        }
        Command::MinorDrawing {
            common: c,
            model,
            certificate,
        } => {
            let a = abstract_drawing(read(&c.input)?)?;
            let m: ShallowModel = parse(read_file(&model)?)?;
            let cert = match certificate {
                Some(p) => parse(read_file(&p)?)?,
                None => gap_cover_number(&a, None).1,
            };
            let md = minor_drawing(&a, &cert, &m)?;
            let text = format!(
                "{}-shallow minor with {} vertices, gap-cover certificate k = {}",
                m.r,
                m.pattern.n(),
                md.certificate.k
            );
            (Report::ok(doc(&md)?, text), c.output, c.format)
        }
        Command::Contract {
            common: c,
            subdivision,
            certificate,
        } => {
            let a = abstract_drawing(read(&c.input)?)?;
            let w: SubdivisionWitness = parse(read_file(&subdivision)?)?;
            let cert = match certificate {
                Some(p) => parse(read_file(&p)?)?,
                None => gap_number(&a).1,
            };
            let (contracted, cert2) = contract_subdivision(&a, &cert, &w)?;
            let text = format!("contracted drawing, charging certificate k = {}", cert2.k);
            (
                Report::ok(doc(&json!({"drawing": contracted, "certificate": cert2}))?, text),
                c.output,
                c.format,
            )
        }
        Command::Sparsify {
            common: c,
            seed,
            certificate,
        } => {
            let a = abstract_drawing(read(&c.input)?)?;
            let cert = match certificate {
                Some(p) => parse(read_file(&p)?)?,
                None => gap_cover_number(&a, None).1,
            };
            let (h, trace) = sparsify(&a, &cert, seed)?;
            let text = format!("kept {} vertices and {} edges", h.n(), h.m());
            (
                Report::ok(doc(&json!({"graph": h, "trace": trace}))?, text),
                c.output,
                c.format,
            )
        }
        Command::Planarize(c) => {
            let p = planarize(&geometric(read(&c.input)?)?)?;
            let text = format!("{} dummy vertices", p.dummy_of.len());
            (Report::ok(doc(&p)?, text), c.output, c.format)
        }
        Command::LiftTd {
            common: c,
            td,
            cap_treewidth,
        } => {
            let p = planarize(&geometric(read(&c.input)?)?)?;
            let td: TreeDecomposition = match td {
                Some(path) => parse(read_file(&path)?)?,
                None => treewidth_exact_capped(&p.planar_graph, cap_treewidth)?.1,
            };
            let lifted = lift_tree_decomposition(&p, &td)?;
            let text = format!("width {} lifted to width {}", td.width(), lifted.width());
            (
                Report::ok(
                    doc(&json!({"width": lifted.width(), "planarization_width": td.width(), "decomposition": lifted}))?,
                    text,
                ),
                c.output,
                c.format,
            )
        }
        Command::Expansion {
            common: c,
            radius,
            mode,
            cap_expansion,
        } => {
            let g = graph(read(&c.input)?)?;
            let (rho, witness, name) = match mode {
                ExpansionMode::Topo => {
                    let (q, w) = topo_nabla_capped(&g, radius, cap_expansion)?;
                    (q, serde_json::to_value(w).map_err(anyhow::Error::from)?, "topo")
                }
                ExpansionMode::Minor => {
                    let (q, m) = nabla_capped(&g, radius, cap_expansion)?;
                    (q, serde_json::to_value(m).map_err(anyhow::Error::from)?, "minor")
                }
            };
            let text = format!("{name} density {rho} at r = {radius}");
            let d = json!({"r": radius, "mode": name, "rho": rho.to_string(), "witness": witness});
            (Report::ok(doc(&d)?, text), c.output, c.format)
        }
        Command::Coloring {
            common: c,
            radius,
            mode,
            cap_scol,
            cap_acyclic,
        } => {
            let g = graph(read(&c.input)?)?;
            let r = match mode {
                ColoringMode::ScolExact => {
                    let (s, order) = scol_exact_capped(&g, radius, cap_scol)?;
                    let d = json!({"mode": "scol-exact", "r": radius, "scol": s, "order": order});
                    Report::ok(doc(&d)?, format!("scol_{radius} = {s}"))
                }
                ColoringMode::ScolGreedy => {
                    let (s, order) = scol_greedy(&g, radius);
                    let d = json!({"mode": "scol-greedy", "r": radius, "scol": s, "order": order});
                    Report::ok(doc(&d)?, format!("scol_{radius} <= {s}"))
                }
                ColoringMode::Acyclic => {
                    let (chi, coloring) = acyclic_chromatic_exact_capped(&g, cap_acyclic)?;
                    let d = json!({"mode": "acyclic", "chi_a": chi, "coloring": coloring});
                    Report::ok(doc(&d)?, format!("acyclic chromatic number {chi}"))
                }
                ColoringMode::Acn => {
                    let (chi, coloring) = acyclic_chromatic_exact_capped(&g, cap_acyclic)?;
                    let (s, order) = scol_exact_capped(&g, 2, cap_scol)?;
                    let holds = chi <= s;
                    let d = json!({
                        "mode": "acn", "chi_a": chi, "coloring": coloring, "scol_2": s, "order": order, "holds": holds
                    });
                    let text = format!("chi_a = {chi} {} scol_2 = {s}", if holds { "<=" } else { ">" });
                    Report::ok(doc(&d)?, text).status(holds)
                }
            };
            (r, c.output, c.format)
        }
        Command::Bounds {
            common: c,
            k,
            r,
            g,
            n,
            radii,
        } => match c.input {
            Some(_) => {
                let d = geometric(read(&c.input)?)?;
                let mut config = VerifyConfig {
                    genus: g,
                    ..VerifyConfig::default()
                };
                if let Some(radii) = radii {
                    config.radii = radii;
                }
                let id = c.input.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
                let rep = verify_bounds(&id, &d, &config)?;
                let mut text: String = rep
                    .entries
                    .iter()
                    .map(|e| {
                        let mark = if e.holds { "ok" } else { "VIOLATED" };
                        format!("{mark:>8}  {}: {} <= {}\n", e.name, e.left, e.right)
                    })
                    .collect();
                for (name, why) in &rep.skipped {
                    text += &format!(" skipped  {name}: {why}\n");
                }
                let passed = rep.all_hold();
                (Report::ok(doc(&rep)?, text).status(passed), c.output, c.format)
            }
            None => {
                let b = closed_form_bounds(BoundParams { k, r, g, n });
                let map: BTreeMap<&str, Value> = b
                    .iter()
                    .map(|(name, v)| {
                        (
                            *name,
                            json!({"value": rational_string(&v.value), "rounding": v.rounding}),
                        )
                    })
                    .collect();
                let text: String = b
                    .iter()
                    .map(|(name, v)| format!("{name}: {}\n", rational_string(&v.value)))
                    .collect();
                let d = json!({"params": {"k": k, "r": r, "g": g, "n": n}, "bounds": map});
                (Report::ok(doc(&d)?, text), c.output, c.format)
            }
        },
        Command::Generate {
            family,
            params,
            seed,
            output,
            format,
        } => {
            let mut spec = serde_json::Map::new();
            spec.insert("family".into(), json!(family));
            for p in params {
                let (key, value) = p
                    .split_once('=')
                    .ok_or_else(|| anyhow!("parameter {p:?} is not key=value"))?;
                let value = serde_json::from_str(value).unwrap_or_else(|_| json!(value));
                spec.insert(key.to_string(), value);
            }
            if let Some(seed) = seed {
                spec.entry("seed").or_insert(json!(seed));
            }
            let mut fam: Family =
                serde_json::from_value(Value::Object(spec)).map_err(|e| anyhow!("bad family parameters: {e}"))?;
            if let Some(seed) = seed {
                fam = fam.with_seed(seed);
            }
            let inst = generate(&fam)?;
            let g = inst.drawing.graph();
            let text = format!("{fam}: {} vertices, {} edges", g.n(), g.m());
            (Report::ok(doc(&inst)?, text), output, format)
        }
        Command::Pipeline {
            input,
            output,
            summary,
            format,
        } => {
            let spec = match &input {
                Some(p) => {
                    let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                    PipelineSpec::parse(&p.display().to_string(), &text)?
                }
                None => PipelineSpec::parse("default pipeline spec", DEFAULT_SPEC)?,
            };
            let bundle = run_pipeline(&spec)?;
            let text = bundle.summary_text();
            if let Some(path) = summary {
                fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
            }
            (Report::ok(doc(&bundle)?, text).status(bundle.ok()), output, format)
        }
    };
    Ok((report, output, format))
}

fn verdict(v: Option<String>) -> anyhow::Result<Report> {
    let d = json!({"verified": v.is_none(), "reason": v});
    let text = match &v {
        None => "certificate verified".to_string(),
        Some(reason) => format!("certificate rejected: {reason}"),
    };
    Ok(Report::ok(doc(&d)?, text).status(v.is_none()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, output, format)) => {
            let body = match format {
                Format::Json => serde_json::to_string_pretty(&report.doc).expect("json") + "\n",
                Format::Text => {
                    let mut t = report.text;
                    if !t.ends_with('\n') {
                        t.push('\n');
                    }
                    t
                }
            };
            match output {
                Some(path) => {
                    if let Err(e) = fs::write(&path, body) {
                        eprintln!("error: writing {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{body}"),
            }
            ExitCode::from(report.code)
        }
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
