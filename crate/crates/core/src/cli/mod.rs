//! The `qmap` command line: map documents in, JSON or text reports out.
//!
//! [`run`] does all the work and returns the output, so the binary is a thin
//! wrapper and tests drive the same code path.

mod document;

use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use document::{parse_documents, MapDocument};

use crate::classifier::{classify, generic_degree, invariant_vector, reduce_ambient};
use crate::error::{Error, Result};
use crate::groebner::PointCluster;
use crate::invariants::{
    critical_scheme, fold_locus, orbit_dimension, real_signatures, self_intersection, stabilizer_dimension,
    CriticalReport, Degree, SIReport, DEFAULT_DEGREE_SEED,
};
use crate::normalizer::{find_witness_with, WitnessOptions};
use crate::orbitdb::{
    data_file_is_current, edges, family_for, identity_selftests, lookup, to_dot, verify_families, verify_family,
    FamilyCheck, OrbitBase, OrbitLabel,
};
use crate::polycore::Poly;
use crate::quadmap::{Field, QuadMap};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qmap", version, about = "Classify quadratic maps of the plane up to affine equivalence")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized steps: degree sample points and witness search starts.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Include wall-clock timings in classify output; makes output nondeterministic.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Input {
    /// Ground field for `--expr` maps; for documents it must agree with the document.
    #[arg(long, value_enum)]
    pub field: Option<FieldArg>,
    /// Components as an expression, e.g. "x^2+y, y^2+x, xy".
    #[arg(long, conflicts_with = "input")]
    pub expr: Option<String>,
    /// Map document file; standard input when neither this nor `--expr` is given.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "R", alias = "r")]
    R,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Field {
        match f {
            FieldArg::C => Field::Complex,
            FieldArg::R => Field::Real,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PosetFormat {
    Dot,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Orbit label, invariant vector, topological type and orbit dimension.
    Classify(Input),
    /// The full invariant reports.
    Invariants(Input),
    /// An affine pair carrying the normal form to the map.
    Witness {
        #[command(flatten)]
        input: Input,
        /// Largest accepted coefficient error on the approximate route.
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        /// Target orbit; classified when omitted.
        #[arg(long)]
        label: Option<String>,
    },
    /// The closure poset of the complex orbits.
    Poset {
        #[arg(long, value_enum, default_value_t = PosetFormat::Dot)]
        format: PosetFormat,
    },
    /// Check degeneration families, all of them or one edge `UPPER:LOWER`.
    Family {
        #[arg(long)]
        edge: Option<String>,
    },
    /// Identity checks, family checks and the shipped data file.
    Selftest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::UnknownLabel(_)
        | Error::UnsupportedLabel(_)
        | Error::FieldMismatch(_)
        | Error::DimensionMismatch(_)
        | Error::NotQuadratic(_)
        | Error::Precondition(_) => EXIT_INPUT,
        _ => EXIT_INTERNAL,
    }
}

/// Runs `qmap` with `args` (program name first); `stdin` is read only when needed.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    match execute(&cli, stdin) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<(i32, String)> {
    match &cli.command {
        Command::Classify(input) => {
            let maps = load(input, stdin)?;
            let mut out = vec![];
            for f in &maps {
                let start = Instant::now();
                let report = classify(f)?;
                let mut v = serde_json::to_value(&report).expect("reports serialize");
                if cli.timings {
                    v["timings"] = json!({ "classify_ms": start.elapsed().as_secs_f64() * 1e3 });
                }
                out.push((v, classify_line(&report)));
            }
            Ok((EXIT_OK, render(cli.json, out)))
        }
        Command::Invariants(input) => {
            let maps = load(input, stdin)?;
            let seed = cli.seed.unwrap_or(DEFAULT_DEGREE_SEED);
            let out = maps.iter().map(|f| invariants_entry(f, seed)).collect::<Result<Vec<_>>>()?;
            Ok((EXIT_OK, render(cli.json, out)))
        }
        Command::Witness { input, tolerance, label } => {
            let maps = load(input, stdin)?;
            let mut opts = WitnessOptions { tolerance: *tolerance, ..WitnessOptions::default() };
            if let Some(s) = cli.seed {
                opts.seed = s;
            }
            let mut out = vec![];
            for f in &maps {
                let target = match label {
                    Some(s) => OrbitLabel::new(parse_label(s)?, f.n(), f.field())?,
                    None => classify(f)?.label,
                };
                let w = find_witness_with(f, &target, &opts)?;
                let line = format!("{target}: {:?} route via {}, residual {:.3e}", w.route, w.method, w.residual);
                out.push((serde_json::to_value(&w).expect("witnesses serialize"), line));
            }
            Ok((EXIT_OK, render(cli.json, out)))
        }
        Command::Poset { format } => Ok((EXIT_OK, poset(*format))),
        Command::Family { edge } => {
            let checks = match edge {
                Some(e) => {
                    let (u, l) = e
                        .split_once(':')
                        .ok_or_else(|| Error::parse(1, 1, format!("edge {e:?} is not of the form UPPER:LOWER")))?;
                    let (u, l) = (parse_label(u)?, parse_label(l)?);
                    let fam = family_for(u, l)
                        .ok_or_else(|| Error::Precondition(format!("no degeneration family stored for {u} -> {l}")))?;
                    vec![verify_family(fam)?]
                }
                None => verify_families()?,
            };
            let ok = checks.iter().all(|c| c.ok);
            let out = checks.iter().map(|c| (serde_json::to_value(c).expect("checks serialize"), family_line(c))).collect();
            Ok((if ok { EXIT_OK } else { EXIT_INTERNAL }, render(cli.json, out)))
        }
        Command::Selftest => selftest(cli.json),
    }
}

fn parse_label(s: &str) -> Result<OrbitBase> {
    s.trim().parse()
}

fn read_source(input: &Input, stdin: &mut dyn Read) -> Result<String> {
    match &input.input {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::parse(0, 0, format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Error::parse(0, 0, format!("standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn load(input: &Input, stdin: &mut dyn Read) -> Result<Vec<QuadMap>> {
    if let Some(expr) = &input.expr {
        let field = input.field.map_or(Field::Complex, Field::from);
        return Ok(vec![MapDocument::from_expr(expr, field)?.to_map()?]);
    }
    let docs = parse_documents(&read_source(input, stdin)?)?;
    docs.iter()
        .map(|d| {
            if let Some(f) = input.field {
                if Field::from(f) != d.field {
                    return Err(Error::FieldMismatch(format!("--field {f:?} but the document says {:?}", d.field)));
                }
            }
            d.to_map()
        })
        .collect()
}

/// One JSON value per map, an array when there are several.
fn render(as_json: bool, out: Vec<(Value, String)>) -> String {
    if as_json {
        let mut values: Vec<Value> = out.into_iter().map(|(v, _)| v).collect();
        let v = if values.len() == 1 { values.remove(0) } else { Value::Array(values) };
        let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
        s.push('\n');
        s
    } else {
        out.into_iter().map(|(_, line)| line + "\n").collect()
    }
}

fn classify_line(r: &crate::classifier::ClassificationReport) -> String {
    let topo = r.topological_type.map_or("-".to_string(), |t| t.to_string());
    format!(
        "{}  n={} field={} mu={} orbit_dim={} topological_type={}",
        r.label.base,
        r.label.ambient_n,
        field_name(r.label.field),
        r.invariants.mu,
        r.expected_orbit_dim,
        topo
    )
}

fn field_name(f: Field) -> &'static str {
    match f {
        Field::Complex => "C",
        Field::Real => "R",
    }
}

fn polys(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn critical_json(c: &CriticalReport) -> Value {
    let points = c.points.as_ref().map(|ps| {
        let clusters: Vec<Value> = ps
            .clusters
            .iter()
            .map(|cl| match cl {
                PointCluster::Rational { x, y, multiplicity } => {
                    json!({ "x": x.to_string(), "y": y.to_string(), "multiplicity": multiplicity })
                }
                PointCluster::Algebraic { min_poly, count, multiplicity, real_count } => json!({
                    "separating_form": format!("x + {} y", ps.sep),
                    "min_poly": min_poly.to_string(),
                    "count": count,
                    "real_count": real_count,
                    "multiplicity": multiplicity,
                }),
            })
            .collect();
        json!({ "length": ps.length, "distinct": ps.distinct, "real_distinct": ps.real_distinct, "clusters": clusters })
    });
    json!({
        "kind": c.kind,
        "minors": polys(&c.minors),
        "partition": c.partition(),
        "points": points,
        "curve": c.curve_poly.as_ref().map(|p| p.to_string()),
        "total_multiplicity": c.total_multiplicity,
    })
}

fn si_json(s: &SIReport) -> Value {
    let factors: Vec<Value> =
        s.factors.iter().map(|(p, m)| json!({ "factor": p.to_string(), "multiplicity": m })).collect();
    json!({
        "kind": s.kind,
        "generator": s.generator.as_ref().map(|p| p.to_string()),
        "factors": factors,
        "real_locus": s.real_locus.as_ref().map(|ps| polys(ps)),
    })
}

fn invariants_entry(f: &QuadMap, seed: u64) -> Result<(Value, String)> {
    let iv = invariant_vector(f)?;
    let (g, _) = reduce_ambient(f);
    let crit = critical_scheme(&g);
    let deg = generic_degree(&g, seed)?;
    let curve = match deg.value {
        Degree::Finite(1) => Some(("self_intersection", self_intersection(&g)?)),
        Degree::Finite(2) => Some(("fold_locus", fold_locus(&g)?)),
        _ => None,
    };
    let samples: Vec<Value> = deg
        .samples
        .iter()
        .map(|(p, d)| json!({ "point": [p[0].to_string(), p[1].to_string()], "fiber": d }))
        .collect();
    let mut v = json!({
        "field": field_name(f.field()),
        "n": f.n(),
        "dim_a": iv.dim_a,
        "dim_q": iv.dim_q,
        "reduced_n": iv.reduced_n,
        "critical": critical_json(&crit),
        "degree": { "value": deg.value, "samples": samples },
        "orbit_dimension": orbit_dimension(f),
        "stabilizer_dimension": stabilizer_dimension(f),
        "real": if f.field() == Field::Real { Some(real_signatures(&g)?) } else { None },
    });
    let mut line = format!(
        "dim_a={} dim_q={} mu={} critical={:?} orbit_dim={}",
        iv.dim_a, iv.dim_q, deg.value, iv.critical, iv.orbit_dimension
    );
    if let Some((key, s)) = curve {
        if let Some(gen) = &s.generator {
            line.push_str(&format!(" {key}={gen}"));
        }
        v[key] = si_json(&s);
    }
    Ok((v, line))
}

fn poset(format: PosetFormat) -> String {
    match format {
        PosetFormat::Dot => to_dot(),
        PosetFormat::Json => {
            let nodes: Vec<Value> = OrbitBase::complex()
                .into_iter()
                .map(|b| {
                    let rec = lookup(b).expect("complex labels are tabulated");
                    json!({ "label": b, "orbit_dim": rec.orbit_dim, "reference_n": rec.reference_n })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&json!({ "nodes": nodes, "edges": edges() })).expect("serializes");
            s.push('\n');
            s
        }
    }
}

fn family_line(c: &FamilyCheck) -> String {
    let samples: Vec<String> = c.samples.iter().map(|(t, l)| format!("t={t}:{l}")).collect();
    format!("{} {} -> {}  {}  ({})", if c.ok { "ok  " } else { "FAIL" }, c.upper, c.lower, samples.join(" "), c.expr)
}

fn selftest(as_json: bool) -> Result<(i32, String)> {
    let identities = identity_selftests();
    let families = verify_families()?;
    let data = data_file_is_current();
    let ok = identities.iter().all(|c| c.holds) && families.iter().all(|c| c.ok) && data;
    let text = if as_json {
        let v = json!({ "identities": identities, "families": families, "data_file_current": data, "passed": ok });
        serde_json::to_string_pretty(&v).expect("serializes") + "\n"
    } else {
        let mut s = String::new();
        for c in &identities {
            s.push_str(&format!("{} {}\n", if c.holds { "ok  " } else { "FAIL" }, c.name));
        }
        for c in &families {
            s.push_str(&family_line(c));
            s.push('\n');
        }
        s.push_str(&format!("{} shipped orbit data file\n", if data { "ok  " } else { "FAIL" }));
        let total = identities.len() + families.len() + 1;
        s.push_str(&format!("{} checks, {}\n", total, if ok { "all passed" } else { "FAILURES" }));
        s
    };
    Ok((if ok { EXIT_OK } else { EXIT_INTERNAL }, text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qmap(args: &[&str], stdin: &str) -> Outcome {
        let argv = std::iter::once("qmap").chain(args.iter().copied());
        run(argv, &mut stdin.as_bytes())
    }

    const F1_DOC: &str = r#"{"field":"C","n":3,"components":[[1,0,0,0,1,0],[0,0,1,1,0,0],[0,1,0,0,0,0]]}"#;

    #[test]
    fn classify_document_from_stdin() {
        let out = qmap(&["classify", "--json"], F1_DOC);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["label"]["base"], "F1");
        assert_eq!(v["expected_orbit_dim"], 18);
        assert!(v.get("timings").is_none());
        let real = qmap(&["classify", "--json"], &F1_DOC.replace("\"C\"", "\"R\""));
        let v: Value = serde_json::from_str(&real.stdout).unwrap();
        assert_eq!(v["label"]["base"], "F1");
    }

    #[test]
    fn classify_real_expression() {
        let out = qmap(&["classify", "--field", "R", "--expr", "x^2-y^2, xy, 0"], "");
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.starts_with("F13'"), "{}", out.stdout);
    }

    #[test]
    fn timings_are_opt_in() {
        let out = qmap(&["classify", "--json", "--timings", "--expr", "x^2+y, y^2+x, xy"], "");
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert!(v["timings"]["classify_ms"].is_number());
    }

    #[test]
    fn input_errors_exit_two() {
        let out = qmap(&["classify"], "{\"field\":\"C\",\n\"components\":[[1,0]]}");
        assert_eq!(out.code, EXIT_INPUT);
        assert!(out.stderr.contains("parse error at 2:"), "{}", out.stderr);
        assert_eq!(qmap(&["classify", "--expr", "x^3"], "").code, EXIT_INPUT);
        assert_eq!(qmap(&["frobnicate"], "").code, EXIT_INPUT);
        assert_eq!(qmap(&["family", "--edge", "F99:F1"], "").code, EXIT_INPUT);
        assert_eq!(qmap(&["family", "--edge", "F1:F29"], "").code, EXIT_INPUT);
        assert_eq!(qmap(&["classify", "--field", "R"], F1_DOC).code, EXIT_INPUT);
    }

    #[test]
    fn poset_has_every_complex_orbit() {
        let out = qmap(&["poset", "--format", "json"], "");
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["nodes"].as_array().unwrap().len(), 34);
        assert!(qmap(&["poset"], "").stdout.starts_with("digraph"));
    }

    #[test]
    fn single_family_edge() {
        let out = qmap(&["family", "--edge", "G2:G3", "--json"], "");
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["ok"], true);
    }

    #[test]
    fn witness_for_expression() {
        let out = qmap(&["witness", "--json", "--expr", "x^2+y+1, y^2+x, xy+2x"], "");
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert!(v["residual"].as_f64().unwrap() <= 1e-8);
    }
}
