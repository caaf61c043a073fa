//! Command line front end. Exit codes: 0 decided, 2 inconclusive, 1 error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use matroid_hpp::catalog::{self, CatalogEntry};
use matroid_hpp::certificate::Certificate;
use matroid_hpp::matroid::{IngletonSearch, Matroid};
use matroid_hpp::negsearch::{self, SearchBudget};
use matroid_hpp::pipeline::{self, Config, SCHEMA_VERSION};
use matroid_hpp::poly::{Poly, SupportPolytopeFace};
use matroid_hpp::realroot::{self, HyperbolicityOutcome, PairConvention};
use matroid_hpp::sos::{self, GramSystem, PairOutcome, SosOptions};
use matroid_hpp::subset;

#[derive(Parser)]
#[command(name = "hpp", version, about = "Half-plane property certificates for matroids")]
struct Cli {
    /// Also write the result as a JSON report to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    /// Directions e with h(e) ≠ 0.
    Nonvanishing,
    /// Every nonzero 0/1 direction.
    Nonzero,
}

impl From<Convention> for PairConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Nonvanishing => PairConvention::NonvanishingDirection,
            Convention::Nonzero => PairConvention::NonzeroDirection,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify one matroid (builtin name or matroid file).
    Check { matroid: String },
    /// Classify every entry of a catalog file.
    Classify {
        catalog: PathBuf,
        /// Additional excluded minors (catalog file).
        #[arg(long)]
        forbidden: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Certify one Rayleigh difference as a sum of squares.
    Sos {
        matroid: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Certify that one Rayleigh difference is not a sum of squares.
    DualCert {
        matroid: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Real-rootedness along all 0/1 lines.
    Hyperbolicity {
        matroid: String,
        /// Count failing pairs instead of stopping at the first.
        #[arg(long)]
        count: bool,
        #[arg(long, value_enum, default_value = "nonvanishing")]
        convention: Convention,
    },
    /// Search for a negative Rayleigh value.
    Negative {
        matroid: String,
        #[arg(long, requires = "j")]
        i: Option<usize>,
        #[arg(long, requires = "i")]
        j: Option<usize>,
    },
    /// Face of the matroid polytope cut out by a flat.
    Face {
        matroid: String,
        /// Comma-separated elements of the flat, e.g. 1,3.
        #[arg(long)]
        flat: String,
    },
    /// Ingleton inequality and Vámos-like structure.
    Ingleton { matroid: String },
    /// Re-verify a certificate file against a matroid.
    Verify { certificate: PathBuf, matroid: String },
}

enum Outcome {
    Decided,
    Inconclusive,
}

type CliResult = Result<(Outcome, Value), String>;

fn load_entries(path: &Path) -> Result<Vec<CatalogEntry>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    catalog::parse_catalog(&text).map_err(|e| e.to_string())
}

fn resolve(name: &str) -> Result<CatalogEntry, String> {
    let path = Path::new(name);
    if path.is_file() {
        return load_entries(path)?.into_iter().next().ok_or_else(|| format!("{name}: no matroid in file"));
    }
    catalog::builtin(name).map_err(|e| e.to_string())
}

fn pair(m: &Matroid, i: usize, j: usize) -> Result<(usize, usize), String> {
    if i == 0 || j == 0 || i > m.n() || j > m.n() || i == j {
        return Err(format!("need distinct indices in 1..={}", m.n()));
    }
    Ok((i - 1, j - 1))
}

fn check(name: &str) -> CliResult {
    let e = resolve(name)?;
    let v = pipeline::classify_one(&e.matroid, &Config::default());
    println!("{}: {:?} (decided by {:?})", e.name, v.status, v.decided_by);
    for note in &v.notes {
        println!("  {note}");
    }
    let outcome = if v.status.is_decided() { Outcome::Decided } else { Outcome::Inconclusive };
    Ok((outcome, json!({ "matroid": e.name, "verdict": v })))
}

fn classify(path: &Path, forbidden: Option<&Path>, jobs: Option<usize>) -> CliResult {
    if let Some(j) = jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().map_err(|e| e.to_string())?;
    }
    let entries = load_entries(path)?;
    let mut config = Config::default();
    if let Some(f) = forbidden {
        config.forbidden.extend(load_entries(f)?);
    }
    let report = pipeline::classify_catalog(&entries, &config);
    for v in &report.verdicts {
        println!("{}: {:?}", v.id, v.status);
    }
    for (status, count) in &report.counts {
        println!("{status:?}: {count}");
    }
    let undecided = report.verdicts.iter().any(|v| !v.status.is_decided());
    Ok((if undecided { Outcome::Inconclusive } else { Outcome::Decided }, serde_json::to_value(&report).unwrap()))
}

fn sos_cmd(name: &str, i: usize, j: usize) -> CliResult {
    let e = resolve(name)?;
    let (i, j) = pair(&e.matroid, i, j)?;
    let h = Poly::basis_polynomial(&e.matroid);
    let opts = SosOptions { dual: false, ..SosOptions::default() };
    match sos::certify_pair(&h, i, j, &opts).map_err(|e| e.to_string())? {
        PairOutcome::Sos(c) => {
            println!("Δ_{},{} is a sum of {} squares", i + 1, j + 1, c.squares().len());
            for (d, s) in c.squares() {
                println!("  {} * ({s})^2", matroid_hpp::rational::to_string(&d));
            }
            Ok((Outcome::Decided, json!({ "certificate": Certificate::from_sos(&c) })))
        }
        PairOutcome::NumericOnly { min_eigenvalue } => {
            println!("numeric Gram matrix only (smallest eigenvalue {min_eigenvalue:e})");
            Ok((Outcome::Inconclusive, json!({ "numeric_min_eigenvalue": min_eigenvalue })))
        }
        other => {
            println!("no Gram matrix found: {other:?}");
            Ok((Outcome::Inconclusive, json!({ "certificate": null })))
        }
    }
}

fn dual_cmd(name: &str, i: usize, j: usize) -> CliResult {
    let e = resolve(name)?;
    let (i, j) = pair(&e.matroid, i, j)?;
    let delta = Poly::basis_polynomial(&e.matroid).rayleigh_difference(i, j).map_err(|e| e.to_string())?;
    let system = GramSystem::new(&delta, i, j).map_err(|e| e.to_string())?;
    match sos::dual_psd_certificate(&system) {
        Ok(c) => {
            sos::verify_dual(&c, &system).map_err(|e| e.to_string())?;
            println!("Δ_{},{} is not a sum of squares: dual matrix of size {}", i + 1, j + 1, c.a.len());
            Ok((Outcome::Decided, json!({ "certificate": Certificate::from_dual(&c) })))
        }
        Err(err) => {
            println!("{err}");
            Ok((Outcome::Inconclusive, json!({ "certificate": null })))
        }
    }
}

fn hyperbolicity_cmd(name: &str, count: bool, convention: PairConvention) -> CliResult {
    let e = resolve(name)?;
    let h = Poly::basis_polynomial(&e.matroid);
    if count {
        let failing = realroot::count_failing_pairs(&h, convention);
        println!("{failing} failing pairs");
        let outcome = if failing > 0 { Outcome::Decided } else { Outcome::Inconclusive };
        return Ok((outcome, json!({ "failing_pairs": failing })));
    }
    match realroot::hyperbolicity_test(&h, convention) {
        HyperbolicityOutcome::Fail(w) => {
            println!("non-real roots along e={:?}, v={:?}", w.e, w.v);
            Ok((Outcome::Decided, json!({ "certificate": Certificate::from_nonreal(&w) })))
        }
        HyperbolicityOutcome::Pass { tested } => {
            println!("all {tested} restrictions real-rooted");
            Ok((Outcome::Inconclusive, json!({ "tested": tested })))
        }
    }
}

fn negative_cmd(name: &str, ij: Option<(usize, usize)>) -> CliResult {
    let e = resolve(name)?;
    let h = Poly::basis_polynomial(&e.matroid);
    let budget = SearchBudget::default();
    let found = match ij {
        Some((i, j)) => {
            let (i, j) = pair(&e.matroid, i, j)?;
            negsearch::search_negative(&h, i, j, &budget).map_err(|e| e.to_string())?
        }
        None => negsearch::search_all_pairs(&h, &budget),
    };
    match found {
        Some(c) => {
            let x: Vec<String> = c.point.iter().map(matroid_hpp::rational::to_string).collect();
            println!("Δ_{},{}({}) = {}", c.i + 1, c.j + 1, x.join(", "), matroid_hpp::rational::to_string(&c.value));
            Ok((Outcome::Decided, json!({ "certificate": Certificate::from_negative(&c) })))
        }
        None => {
            println!("no negative value found");
            Ok((Outcome::Inconclusive, json!({ "certificate": null })))
        }
    }
}

fn face_cmd(name: &str, flat: &str) -> CliResult {
    let e = resolve(name)?;
    let m = &e.matroid;
    let elements: Vec<usize> = flat
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad element `{t}`")))
        .collect::<Result<_, _>>()?;
    if elements.iter().any(|&x| x == 0 || x > m.n()) {
        return Err(format!("elements must lie in 1..={}", m.n()));
    }
    let s = subset::from_elements(&elements);
    let face = m.polytope_face_matroid(s).map_err(|e| e.to_string())?;
    let h = Poly::basis_polynomial(m);
    let restricted = h.facial_restriction(&SupportPolytopeFace::of_flat(m, s)).map_err(|e| e.to_string())?;
    let face_poly = Poly::basis_polynomial(&face);
    println!("face polynomial: {restricted}");
    println!("matches the face matroid: {}", face_poly == restricted);
    Ok((
        Outcome::Decided,
        json!({ "flat": elements, "is_flat": m.is_flat(s), "face_polynomial": restricted.to_string(), "matches": face_poly == restricted }),
    ))
}

fn ingleton_cmd(name: &str) -> CliResult {
    let e = resolve(name)?;
    let m = &e.matroid;
    let violation = m.ingleton_search(IngletonSearch::default());
    let vamos = m.is_vamos_like();
    match &violation {
        Some((p, r)) => {
            let parts: Vec<String> = p.iter().map(|&s| subset::display(s)).collect();
            println!("Ingleton violated by {}: {} < {}", parts.join(" "), r.lhs, r.rhs);
        }
        None => println!("no Ingleton violation among disjoint sets of size at most 2"),
    }
    println!("Vámos-like: {}", vamos.is_some());
    let report = json!({
        "violation": violation.map(|(p, r)| json!({
            "sets": p.iter().map(|&s| subset::to_elements(s)).collect::<Vec<_>>(),
            "lhs": r.lhs, "rhs": r.rhs,
        })),
        "vamos_like": vamos.map(|w| json!({
            "pairs": w.pairs.iter().map(|&s| subset::to_elements(s)).collect::<Vec<_>>(),
            "k": subset::to_elements(w.k),
        })),
    });
    Ok((Outcome::Decided, report))
}

fn verify_cmd(path: &Path, name: &str) -> CliResult {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    // accept a bare certificate or a report written by --json
    let raw = value.pointer("/result/certificate").or_else(|| value.get("certificate")).cloned().unwrap_or(value);
    let cert: Certificate = serde_json::from_value(raw).map_err(|e| e.to_string())?;
    let e = resolve(name)?;
    cert.verify(&e.matroid).map_err(|e| e.to_string())?;
    println!("{} certificate verified", cert.kind());
    Ok((Outcome::Decided, json!({ "kind": cert.kind(), "valid": true })))
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Check { matroid } => check(matroid),
        Command::Classify { catalog, forbidden, jobs } => classify(catalog, forbidden.as_deref(), *jobs),
        Command::Sos { matroid, i, j } => sos_cmd(matroid, *i, *j),
        Command::DualCert { matroid, i, j } => dual_cmd(matroid, *i, *j),
        Command::Hyperbolicity { matroid, count, convention } => {
            hyperbolicity_cmd(matroid, *count, (*convention).into())
        }
        Command::Negative { matroid, i, j } => negative_cmd(matroid, i.zip(*j)),
        Command::Face { matroid, flat } => face_cmd(matroid, flat),
        Command::Ingleton { matroid } => ingleton_cmd(matroid),
        Command::Verify { certificate, matroid } => verify_cmd(certificate, matroid),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = std::env::args().nth(1).unwrap_or_default();
    let (code, result) = match run(&cli) {
        Ok((Outcome::Decided, v)) => (0u8, v),
        Ok((Outcome::Inconclusive, v)) => (2, v),
        Err(msg) => {
            eprintln!("error: {msg}");
            (1, json!({ "error": msg }))
        }
    };
    if let Some(path) = &cli.json {
        let report =
            json!({ "schema_version": SCHEMA_VERSION, "command": command, "exit_code": code, "result": result });
        if let Err(e) = std::fs::write(path, serde_json::to_string_pretty(&report).unwrap()) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code)
}
