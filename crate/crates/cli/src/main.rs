//! `crossgeo`: invariants and geography of knot diagrams from the shell.
//!
//! Machine output goes to stdout, diagnostics to stderr. Exit codes: 0 ok,
//! 2 bad input, 3 failed precondition, 4 state enumeration cap exceeded.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crossgeo::catalog::{batch_report, bundled_catalog, load_catalog, KnotRecord};
use crossgeo::diagram::{parse_pd, KnotDiagram};
use crossgeo::edgepath::{candidate_region, candidate_table, candidate_table_for, table_csv, EdgepathError};
use crossgeo::geography::{
    alternating_region, gamma3_from_region, oss_gamma4_bound, oss_sg_bounds, state_region, turaev_genus_diagram,
    turaev_via_gamma, BoundKind, GeographyError, GeographyRegion, GeographyReport,
};
use crossgeo::signature::SignatureReport;
use crossgeo::states::{state_masks, State, StateError, DEFAULT_STATE_CAP};
use crossgeo::svg::render_with_generators;
use crossgeo::torus::{pinch_report, TorusError};

#[derive(Parser)]
#[command(name = "crossgeo", version, about = "Spanning-surface geography of knot diagrams")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
    #[arg(long)]
    pd: Option<String>,
    /// Name or alias in the bundled catalog
    #[arg(long)]
    name: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Crossing counts, flags and signature
    Info(Source),
    /// Kauffman states and their surfaces
    States {
        #[command(flatten)]
        src: Source,
        /// Only basic states
        #[arg(long)]
        basic: bool,
    },
    /// Region generated by basic state surfaces
    Geography {
        #[command(flatten)]
        src: Source,
        /// Also write an SVG picture
        #[arg(long, value_name = "PATH")]
        svg: Option<String>,
        /// Fail unless the diagram is reduced alternating
        #[arg(long)]
        exact: bool,
    },
    /// Γ bounds, plus slice-torus bounds when υ is known
    Gamma {
        #[command(flatten)]
        src: Source,
        #[arg(long, allow_hyphen_values = true)]
        upsilon: Option<i64>,
    },
    /// Turaev genus of the diagram, both ways
    Turaev(Source),
    /// Pinch sequence and pinch surfaces of T(p,q)
    Pinch { p: i64, q: i64 },
    /// Candidate surfaces of a pretzel knot from edgepath systems
    Edgepaths {
        /// Comma-separated strand twists, e.g. -3,3,5
        #[arg(allow_hyphen_values = true)]
        params: String,
        /// CSV table instead of JSON
        #[arg(long)]
        table: bool,
        /// Signature; computed from the pretzel diagram if omitted
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<i64>,
    },
    /// Reports for every record of a JSON-lines catalog
    Batch { file: String },
}

enum Failure {
    Input(String),
    Precondition(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Precondition(_) => 3,
            Failure::Cap(_) => 4,
        }
    }
    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Precondition(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<StateError> for Failure {
    fn from(e: StateError) -> Self {
        Failure::Cap(e.to_string())
    }
}

impl From<GeographyError> for Failure {
    fn from(e: GeographyError) -> Self {
        match e {
            GeographyError::States(s) => s.into(),
            GeographyError::NotAlternating | GeographyError::NotReduced => Failure::Precondition(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<TorusError> for Failure {
    fn from(e: TorusError) -> Self {
        match e {
            TorusError::BadParameter(_) => Failure::Input(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

impl From<EdgepathError> for Failure {
    fn from(e: EdgepathError) -> Self {
        Failure::Input(e.to_string())
    }
}

type Out = Result<String, Failure>;

fn state_cap() -> Result<usize, Failure> {
    match std::env::var("CROSSGEO_STATE_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("CROSSGEO_STATE_CAP must be a number, got {v:?}"))),
        Err(_) => Ok(DEFAULT_STATE_CAP),
    }
}

/// The diagram and, for catalog entries, its record.
fn load(src: &Source) -> Result<(KnotDiagram, Option<KnotRecord>), Failure> {
    if let Some(pd) = &src.pd {
        let d = parse_pd(pd).map_err(|e| Failure::Input(e.to_string()))?;
        return Ok((d, None));
    }
    let name = src.name.as_deref().unwrap_or_default();
    let cat = bundled_catalog();
    let rec = cat
        .find(name)
        .ok_or_else(|| Failure::Input(format!("no catalog entry named {name:?}")))?
        .clone();
    let d = rec.diagram().map_err(|e| Failure::Input(e.to_string()))?;
    Ok((d, Some(rec)))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn region_of(d: &KnotDiagram, exact_only: bool) -> Result<(GeographyRegion, BoundKind), Failure> {
    if d.is_alternating() && d.is_reduced() {
        return Ok((alternating_region(d)?, BoundKind::Exact));
    }
    if exact_only {
        alternating_region(d)?;
    }
    Ok((state_region(d, true, state_cap()?)?, BoundKind::Upper))
}

fn info(src: &Source) -> Out {
    let (d, rec) = load(src)?;
    let (pos, neg) = d.signed_counts();
    let sig = SignatureReport::goeritz(&d);
    let mut v = json!({
        "crossings": d.crossing_count(),
        "positive": pos,
        "negative": neg,
        "writhe": d.writhe(),
        "alternating": d.is_alternating(),
        "reduced": d.is_reduced(),
        "sigma": sig.sigma,
        "goeritz_dim": sig.goeritz_dim,
        "correction": sig.correction,
    });
    if let Some(r) = rec {
        v["name"] = json!(r.name);
        if let Some(u) = r.upsilon {
            v["upsilon"] = json!(u);
        }
    }
    Ok(to_json(&v))
}

fn states(src: &Source, basic: bool) -> Out {
    let (d, _) = load(src)?;
    let masks = state_masks(&d, basic, state_cap()?)?;
    let rows: Vec<_> = masks.iter().map(|&m| State::from_mask(&d, m).surface().report()).collect();
    Ok(to_json(&json!({
        "crossings": d.crossing_count(),
        "basic_only": basic,
        "count": rows.len(),
        "states": rows,
    })))
}

fn geography(src: &Source, svg: Option<&str>, exact: bool) -> Out {
    let (d, _) = load(src)?;
    let sigma = SignatureReport::goeritz(&d).sigma;
    let (region, kind) = region_of(&d, exact)?;
    let rep = GeographyReport::new(&region, sigma, kind)?;
    if let Some(path) = svg {
        fs::write(path, render_with_generators(&region, Some(sigma)))
            .map_err(|e| Failure::Input(format!("cannot write {path}: {e}")))?;
    }
    let mut v = serde_json::to_value(&rep).expect("report serializes");
    v["sigma"] = json!(sigma);
    Ok(to_json(&v))
}

fn gamma(src: &Source, upsilon: Option<i64>) -> Out {
    let (d, rec) = load(src)?;
    let sigma = SignatureReport::goeritz(&d).sigma;
    let (region, kind) = region_of(&d, false)?;
    let rep = GeographyReport::new(&region, sigma, kind)?;
    let mut v = json!({
        "sigma": sigma,
        "bound_kind": kind,
        "gamma3": gamma3_from_region(&region)?,
        "gamma_hat_plus": serde_json::to_value(&rep).expect("report serializes")["gamma_hat_plus"],
        "gamma_hat_minus": serde_json::to_value(&rep).expect("report serializes")["gamma_hat_minus"],
    });
    if let Some(u) = upsilon.or(rec.and_then(|r| r.upsilon)) {
        let (lp, lm) = oss_sg_bounds(sigma, u);
        v["upsilon"] = json!(u);
        v["gamma_hat4_plus_lower"] = json!(lp);
        v["gamma_hat4_minus_lower"] = json!(lm);
        v["gamma4_lower"] = json!(oss_gamma4_bound(sigma, u).to_string());
    }
    Ok(to_json(&v))
}

fn turaev(src: &Source) -> Out {
    let (d, _) = load(src)?;
    let sigma = SignatureReport::goeritz(&d).sigma;
    let via = turaev_via_gamma(&d, sigma);
    Ok(to_json(&json!({
        "turaev_genus_diagram": turaev_genus_diagram(&d),
        "via_gamma": via.to_string(),
        "all_a_circles": State::all_a(&d).circle_count(),
        "all_b_circles": State::all_b(&d).circle_count(),
        "sigma": sigma,
    })))
}

fn edgepaths(params: &str, table: bool, sigma: Option<i64>) -> Out {
    let ps: Vec<i64> = params
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Input(format!("bad strand list {params:?}: {e}")))?;
    let sigma = match sigma {
        Some(s) => s,
        None => {
            let d = KnotDiagram::pretzel(&ps).map_err(|e| Failure::Input(e.to_string()))?;
            SignatureReport::goeritz(&d).sigma
        }
    };
    let rows = match ps.as_slice() {
        [-3, 3, n] => candidate_table(*n, sigma)?,
        _ => candidate_table_for(&ps, sigma)?,
    };
    if table {
        return Ok(table_csv(&rows));
    }
    let region = candidate_region(&rows);
    let apexes: Vec<[i64; 2]> = region.apexes.iter().map(|w| [w.apex_e, w.apex_b]).collect();
    Ok(to_json(&json!({ "sigma": sigma, "rows": rows, "apexes": apexes })))
}

fn batch(file: &str) -> Out {
    let cat = load_catalog(file).map_err(|e| Failure::Input(e.to_string()))?;
    let cap = state_cap()?;
    for m in &cat.errors {
        eprintln!("skipping {m}");
    }
    let reports: Vec<Value> = batch_report(&cat.records, cap)
        .into_iter()
        .zip(&cat.records)
        .map(|(rep, r)| match rep {
            Ok(rep) => serde_json::to_value(rep).expect("report serializes"),
            Err(e) => json!({ "name": r.name, "error": e }),
        })
        .collect();
    let malformed: Vec<Value> = cat
        .errors
        .iter()
        .map(|m| json!({ "line": m.line, "message": m.message }))
        .collect();
    Ok(to_json(&json!({ "records": reports, "malformed": malformed })))
}

fn run(cli: Cli) -> Out {
    match cli.cmd {
        Cmd::Info(src) => info(&src),
        Cmd::States { src, basic } => states(&src, basic),
        Cmd::Geography { src, svg, exact } => geography(&src, svg.as_deref(), exact),
        Cmd::Gamma { src, upsilon } => gamma(&src, upsilon),
        Cmd::Turaev(src) => turaev(&src),
        Cmd::Pinch { p, q } => Ok(to_json(&pinch_report(p, q)?)),
        Cmd::Edgepaths { params, table, sigma } => edgepaths(&params, table, sigma),
        Cmd::Batch { file } => batch(&file),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("crossgeo: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
