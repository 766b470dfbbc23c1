//! `crsym`: batch front end for the GNLA / prolongation / CR-model toolkit.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error,
//! 3 internal consistency failure.

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crsym::crmodel::{closure, model_symbol, realify, verify_all, CrModel};
use crsym::cxstruct::{normalize_j, ComplexStructure, JJson, JSpec};
use crsym::exactmath::{fmt_rat, parse_rat, RatMatrix};
use crsym::extend::{classify_hc_extension, classify_hc_plane, cocycles, enumerate_211, extend, Cochain, CochainEntry};
use crsym::gnla::{deprolong, free_gnla, from_spec, necklace_dim};
use crsym::prolong::{der0, prolong, DEFAULT_MAX_DEGREE};
use crsym::suite;
use crsym::{Error, Gnla, Rat};

#[derive(Parser)]
#[command(name = "crsym", version, about = "Graded nilpotent Lie algebras, Tanaka prolongation and CR model symmetries")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Graded nilpotent Lie algebras.
    Gnla {
        #[command(subcommand)]
        op: GnlaOp,
    },
    /// Tanaka prolongation.
    Prolong {
        #[command(subcommand)]
        op: ProlongOp,
    },
    /// Cocycles and central extensions.
    Extend {
        #[command(subcommand)]
        op: ExtendOp,
    },
    /// Normal form of a complex structure on g-1.
    Jnorm {
        /// Catalog spec (e.g. gou:6) or GNLA JSON file.
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// CR model files.
    Model {
        #[command(subcommand)]
        op: ModelOp,
    },
    /// Run every acceptance check.
    PaperSuite {
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u8>,
    },
}

#[derive(Subcommand)]
enum GnlaOp {
    /// Validate and test fundamentality.
    Check { algebra: String },
    /// Growth vector.
    Growth { algebra: String },
    /// List catalog names, or print one algebra.
    Catalog { name: Option<String> },
    /// Free GNLA on two generators.
    Free {
        #[arg(long)]
        depth: usize,
    },
    /// Symbol of the deprolonged distribution.
    Deprolong { algebra: String },
}

#[derive(Subcommand)]
enum ProlongOp {
    Run {
        algebra: String,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
        /// `standard`, `a,b`, or a JSON file; omitted means the full der0.
        #[arg(long = "cr-J", visible_alias = "cr-j", allow_hyphen_values = true)]
        cr_j: Option<String>,
    },
}

#[derive(Subcommand)]
enum ExtendOp {
    /// Basis of top-degree cocycles.
    Cocycles { algebra: String },
    /// Central extension by the cocycles in a JSON file.
    Apply {
        algebra: String,
        #[arg(long)]
        cocycles: String,
    },
    /// Orbit type of one cocycle or a plane of cocycles over m_HC.
    Classify {
        algebra: String,
        #[arg(long)]
        cocycles: String,
    },
    /// Enumerate symbols of a growth family.
    Enumerate {
        #[arg(long, default_value = "211")]
        growth: String,
        #[arg(long, default_value_t = 9)]
        max_depth: usize,
    },
}

#[derive(Subcommand)]
enum ModelOp {
    /// Parse a model and print its realification.
    Parse(ModelArgs),
    /// Check that every listed field is tangent to the model.
    Verify(ModelArgs),
    /// Real span, brackets and Jacobi check of the listed fields.
    Closure(ModelArgs),
    /// Symbol, complex structure and symmetry bound.
    Symbol(ModelArgs),
    /// Verify, close and compare the dimension with the bound.
    All(ModelArgs),
}

#[derive(clap::Args)]
struct ModelArgs {
    file: String,
    /// Fix a parameter, e.g. `--param a=3/2`.
    #[arg(long = "param", allow_hyphen_values = true)]
    params: Vec<String>,
}

struct Report {
    pass: bool,
    json: Value,
    text: String,
}

impl Report {
    fn ok(json: Value, text: String) -> Report {
        Report { pass: true, json, text }
    }
}

fn input_err(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

fn read(path: &str) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| input_err(format!("{path}: {e}")))
}

fn load_gnla(spec: &str) -> Result<Gnla, Error> {
    if Path::new(spec).is_file() {
        Gnla::from_json_str(&read(spec)?)
    } else {
        from_spec(spec)
    }
}

fn rat_arg(s: &str) -> Result<Rat, Error> {
    parse_rat(s).ok_or_else(|| input_err(format!("bad rational {s:?}")))
}

fn matrix_json(m: &RatMatrix) -> Value {
    json!(m.row_vecs().iter().map(|r| r.iter().map(fmt_rat).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn gnla_cmd(op: GnlaOp) -> Result<Report, Error> {
    Ok(match op {
        GnlaOp::Check { algebra } => {
            let m = load_gnla(&algebra)?;
            let v = m.validate();
            let f = m.is_fundamental();
            let mut text = format!("dims {:?}\n", m.dims());
            match &v.violation {
                None => text.push_str("valid\n"),
                Some(x) => text.push_str(&format!("invalid: {x:?}\n")),
            }
            text.push_str(if f.fundamental { "fundamental" } else { "not fundamental" });
            if let Some(r) = &f.reason {
                text.push_str(&format!(": {r}"));
            }
            Report { pass: v.ok && f.fundamental, json: json!({ "validation": v, "fundamental": f }), text }
        }
        GnlaOp::Growth { algebra } => {
            let g = load_gnla(&algebra)?.growth();
            let text = format!("cumulative {:?}\nreduced {:?}", g.cumulative, g.reduced);
            Report::ok(json!(g), text)
        }
        GnlaOp::Catalog { name: None } => {
            let names = [
                "gou:N", "ngou:N", "heis3", "hc", "ell6", "ell7", "ell8", "mprime5", "mdblprime5", "free:N",
            ];
            Report::ok(json!(names), names.join("\n"))
        }
        GnlaOp::Catalog { name: Some(n) } => {
            let m = from_spec(&n)?;
            Report::ok(json!(m.to_json()), format!("dims {:?}\n{m}", m.dims()))
        }
        GnlaOp::Free { depth } => {
            let m = free_gnla(depth)?;
            let dims = m.dims();
            let neck: Vec<String> = (1..=depth as u32).map(|k| necklace_dim(k).to_string()).collect();
            Report::ok(
                json!({ "depth": depth, "dims": dims, "dim": m.dim() }),
                format!("dims {:?} (total {}); necklace count {}", dims, m.dim(), neck.join(",")),
            )
        }
        GnlaOp::Deprolong { algebra } => {
            let m = deprolong(&load_gnla(&algebra)?)?;
            Report::ok(json!(m.to_json()), format!("dims {:?}\n{m}", m.dims()))
        }
    })
}

fn parse_j(s: &str) -> Result<JSpec, Error> {
    if s == "standard" {
        return Ok(JSpec::Exact(ComplexStructure::standard()));
    }
    if let Some((a, b)) = s.split_once(',') {
        if !Path::new(s).exists() {
            return Ok(JSpec::Exact(ComplexStructure::from_ab(rat_arg(a)?, rat_arg(b)?)?));
        }
    }
    let j: JJson = serde_json::from_str(&read(s)?)?;
    JSpec::from_json(&j)
}

fn prolong_cmd(op: ProlongOp) -> Result<Report, Error> {
    let ProlongOp::Run { algebra, max_degree, cr_j } = op;
    let m = load_gnla(&algebra)?;
    let g0 = match &cr_j {
        Some(s) => crsym::prolong::cr_g0(&m, parse_j(s)?.matrix()),
        None => der0(&m),
    };
    let r = prolong(&m, &g0, max_degree)?;
    let total = r.total.map_or("not terminated".to_string(), |t| t.to_string());
    let text = format!(
        "negative {:?} | g0 {} | positive {:?}\nrigid: {}\ntotal: {total}",
        r.dims_negative, r.dim_g0, r.dims_positive, r.rigid
    );
    Ok(Report::ok(json!(r), text))
}

fn read_cocycles(m: &Gnla, path: &str) -> Result<Vec<Cochain>, Error> {
    let entries: Vec<Vec<CochainEntry>> = serde_json::from_str(&read(path)?)?;
    entries.iter().map(|e| Cochain::from_json(m, e)).collect()
}

fn extend_cmd(op: ExtendOp) -> Result<Report, Error> {
    Ok(match op {
        ExtendOp::Cocycles { algebra } => {
            let m = load_gnla(&algebra)?;
            let cs = cocycles(&m);
            let js: Vec<_> = cs.iter().map(|w| w.to_json(&m)).collect();
            let mut text = format!("dim Z_{} = {}", m.depth() + 1, cs.len());
            for (k, e) in js.iter().enumerate() {
                let parts: Vec<String> = e.iter().map(|x| format!("w({},{})={}", x.a, x.b, x.value)).collect();
                text.push_str(&format!("\n  {k}: {}", parts.join(" ")));
            }
            Report::ok(json!({ "degree": m.depth() + 1, "cocycles": js }), text)
        }
        ExtendOp::Apply { algebra, cocycles } => {
            let m = load_gnla(&algebra)?;
            let ws = read_cocycles(&m, &cocycles)?;
            let e = extend(&m, &ws)?;
            Report::ok(json!(e.to_json()), format!("dims {:?}\n{e}", e.dims()))
        }
        ExtendOp::Classify { algebra, cocycles } => {
            let m = load_gnla(&algebra)?;
            let ws = read_cocycles(&m, &cocycles)?;
            let t = match ws.as_slice() {
                [w] => classify_hc_extension(&m, w)?,
                [w1, w2] => classify_hc_plane(&m, w1, w2)?,
                _ => return Err(input_err("classify takes one cocycle or a plane of two")),
            };
            let text = format!("{:?} (det {})", t.tag, fmt_rat(&t.det));
            Report::ok(json!(t.to_json()), text)
        }
        ExtendOp::Enumerate { growth, max_depth } => {
            if growth.replace(',', "") != "211" {
                return Err(input_err(format!("only growth 211 (2,1,...,1) is enumerable, got {growth}")));
            }
            let r = enumerate_211(max_depth)?;
            let text = r
                .iter()
                .map(|d| format!("depth {}: {} ({})", d.depth, d.classes.len(), d.classes.join(", ")))
                .collect::<Vec<_>>()
                .join("\n");
            Report::ok(json!(r), text)
        }
    })
}

fn jnorm_cmd(algebra: &str, a: &str, b: &str) -> Result<Report, Error> {
    let m = load_gnla(algebra)?;
    let j = ComplexStructure::from_ab(rat_arg(a)?, rat_arg(b)?)?;
    let n = normalize_j(&m, &j)?;
    let factors: Vec<String> = n.factors.iter().map(|f| f.describe()).collect();
    let (na, nb) = (fmt_rat(&n.normal.a()), fmt_rat(&n.normal.b()));
    let text = format!("shape {:?}\nnormal form (a, b) = ({na}, {nb})\ng = {}", n.shape, factors.join(" * "));
    Ok(Report::ok(
        json!({ "shape": n.shape, "normal": { "a": na, "b": nb }, "factors": factors, "g": matrix_json(&n.g) }),
        text,
    ))
}

fn load_model(args: &ModelArgs) -> Result<CrModel, Error> {
    let m = CrModel::parse(&read(&args.file)?)?;
    let mut vals = Vec::new();
    for p in &args.params {
        let (name, v) = p.split_once('=').ok_or_else(|| input_err(format!("--param expects name=value, got {p}")))?;
        vals.push((name.trim().to_string(), rat_arg(v)?));
    }
    if vals.is_empty() {
        Ok(m)
    } else {
        m.specialize(&vals)
    }
}

fn model_cmd(op: ModelOp) -> Result<Report, Error> {
    let (which, args) = match &op {
        ModelOp::Parse(a) => ("parse", a),
        ModelOp::Verify(a) => ("verify", a),
        ModelOp::Closure(a) => ("closure", a),
        ModelOp::Symbol(a) => ("symbol", a),
        ModelOp::All(a) => ("all", a),
    };
    let m = load_model(args)?;
    let all = which == "all";
    let mut out = serde_json::Map::new();
    let mut text = Vec::new();
    let mut pass = true;
    if which == "parse" || all {
        let r = realify(&m)?;
        out.insert("model".into(), json!(m.to_json()));
        out.insert("realization".into(), json!(r.to_json(&m)));
        text.push(format!("{} coordinates, {} parameters, {} fields", m.coords.len(), m.params.len(), m.fields.len()));
        text.extend(r.describe(&m));
    }
    if which == "verify" || all {
        let r = realify(&m)?;
        let reps = verify_all(&m, &r)?;
        for t in &reps {
            let kind = if t.probe { "probe" } else { "field" };
            let status = if t.tangent { "tangent" } else { "not tangent" };
            let mut line = format!("{kind} {}: {status}", t.field);
            if let Some(x) = t.residuals.first() {
                line.push_str(&format!(" (equation {}: {})", x.equation, x.residual));
            }
            text.push(line);
        }
        out.insert("tangency".into(), json!(reps));
    }
    let mut dim = None;
    if which == "closure" || all {
        let c = closure(&m)?;
        pass &= c.jacobi && c.degenerate.is_empty();
        text.push(format!("closure: dimension {} over {} sample(s), Jacobi {}", c.dim, c.samples, c.jacobi));
        for s in &c.structure {
            text.push(format!("  [{}, {}] = {}", s.left, s.right, s.value));
        }
        text.push(format!("largest commuting subset: {{{}}}", c.commuting.join(", ")));
        dim = Some(c.dim);
        out.insert("closure".into(), json!(c));
    }
    if which == "symbol" || (all && m.params.is_empty()) {
        let s = model_symbol(&m)?;
        let j = s.to_json();
        text.push(format!("symbol growth {:?}, J (a,b) = ({}, {}), r = {}, bound {}", j.growth, j.j[0], j.j[1], j.r, j.bound));
        if let Some(l) = &j.label {
            text.push(format!("type {l}"));
        }
        if let Some(d) = dim {
            pass &= d == s.bound;
            text.push(format!("closure dimension {d} {} bound {}", if d == s.bound { "meets" } else { "differs from" }, s.bound));
        }
        out.insert("symbol".into(), json!(j));
    } else if all {
        text.push(format!("symbol skipped: fix the parameters {} with --param", m.params.join(", ")));
    }
    Ok(Report { pass, json: Value::Object(out), text: text.join("\n") })
}

fn suite_cmd(only: Option<u8>) -> Result<Report, Error> {
    let outcomes = match only {
        Some(id) => vec![suite::run_criterion(id)?],
        None => suite::run_all(),
    };
    let text = outcomes
        .iter()
        .map(|o| format!("{} [{:>2}] {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.id, o.title, o.detail))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report { pass: outcomes.iter().all(|o| o.pass), json: json!(outcomes), text })
}

fn run(cli: Cli) -> Result<Report, Error> {
    match cli.cmd {
        Cmd::Gnla { op } => gnla_cmd(op),
        Cmd::Prolong { op } => prolong_cmd(op),
        Cmd::Extend { op } => extend_cmd(op),
        Cmd::Jnorm { algebra, a, b } => jnorm_cmd(&algebra, &a, &b),
        Cmd::Model { op } => model_cmd(op),
        Cmd::PaperSuite { only } => suite_cmd(only),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InternalConsistency(_) => 3,
        Error::Input(_) | Error::Parse { .. } | Error::Json(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let as_json = cli.json;
    match run(cli) {
        Ok(r) => {
            if as_json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable report"));
            } else {
                println!("{}", r.text);
            }
            ExitCode::from(if r.pass { 0 } else { 1 })
        }
        Err(e) => {
            if as_json {
                println!("{}", json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
