//! Command-line front end. [`run`] parses arguments, writes to the given
//! streams and returns the process exit code: 0 pass, 1 mismatch or
//! failure, 2 usage error.

use std::collections::HashSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::closed_forms::{catalog, reiner_distribution, unfolding_closed_form, unfolding_via_reiner};
use crate::coxeter::{
    build_system, enumerate_all, hasse_edges, CoxeterSystem, Element, ElementKey, EnumOptions, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::folding::{reiner_stats_bruteforce, standard_folding, unfolding_series_bruteforce, walk_folding, FamilyId, ReinerKind};
use crate::qseries::{QSeries, StatSeries};
use crate::verifier::{default_jobs, run_job, Cache, GridPoint, Status, Target, VerificationJob, VerificationReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "coxfold", version, about = "Unfolding series of Coxeter folding subgroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Maximum number of enumerated elements.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Source {
    Bruteforce,
    Formula,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ReinerType {
    #[value(name = "affB")]
    AffB,
    #[value(name = "affC")]
    AffC,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Unfolding series of a registered family.
    Series {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        /// Truncation degree; required for affine families.
        #[arg(long = "max-len")]
        max_len: Option<usize>,
        #[arg(long, value_enum, default_value_t = Source::Bruteforce)]
        source: Source,
        #[command(flatten)]
        common: Common,
    },
    /// Compare brute force with the closed forms. Without --family, runs
    /// every default grid.
    Verify {
        /// Family name or formula tag (optionally with `-literal`).
        #[arg(long)]
        family: Option<String>,
        /// Grid values of n (comma separated).
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        n: Option<Vec<usize>>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long = "max-len")]
        max_len: Option<usize>,
        /// Cache directory for brute-force series (default: $COXFOLD_CACHE).
        #[arg(long = "cache-dir")]
        cache_dir: Option<PathBuf>,
        /// Include wall-clock timings in the report.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        common: Common,
    },
    /// End-generator statistics of affine B or C, from the product formula
    /// and by enumeration.
    Reiner {
        #[arg(long = "type", value_enum)]
        kind: ReinerType,
        #[arg(long)]
        n: usize,
        #[arg(long = "max-len")]
        max_len: usize,
        /// Also print the specialization giving this family's unfolding series.
        #[arg(long)]
        preview: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Hasse diagram of the Bruhat order as Graphviz DOT.
    BruhatDot {
        #[arg(long)]
        group: String,
        /// Highlight the image of this family's folding (its target must be the group).
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long = "max-len")]
        max_len: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// List the known formulas.
    Catalog {
        #[command(flatten)]
        common: Common,
    },
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidParameters(_)
        | Error::UnsupportedLabel(_)
        | Error::IndexOutOfRange { .. }
        | Error::MissingTruncation
        | Error::InvalidBase(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    let (common, result) = match dispatch(cli.command) {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code_for(&e);
        }
    };
    let (text, code) = result;
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                let _ = writeln!(stderr, "error: {}: {e}", path.display());
                return EXIT_FAIL;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    code
}

type Rendered = (String, i32);

fn dispatch(cmd: Command) -> Result<(Common, Rendered)> {
    match cmd {
        Command::Series { family, n, m, max_len, source, common } => {
            let r = cmd_series(&family, n, m, max_len, source, &common)?;
            Ok((common, r))
        }
        Command::Verify { family, n, m, max_len, cache_dir, timings, common } => {
            let cache = cache_dir.map(Cache::new).or_else(Cache::from_env);
            let r = cmd_verify(family.as_deref(), n, m, max_len, cache, timings, &common)?;
            Ok((common, r))
        }
        Command::Reiner { kind, n, max_len, preview, common } => {
            let r = cmd_reiner(kind, n, max_len, preview.as_deref(), &common)?;
            Ok((common, r))
        }
        Command::BruhatDot { group, family, n, m, max_len, common } => {
            let fam = match (family, n) {
                (Some(f), Some(n)) => Some(FamilyId::parse(&f, n, m)?),
                (Some(_), None) => return Err(Error::InvalidParameters("--family needs --n".into())),
                (None, _) => None,
            };
            let text = cmd_bruhat_dot(&group, fam, max_len, &common)?;
            Ok((common, (text, EXIT_PASS)))
        }
        Command::Catalog { common } => {
            let text = cmd_catalog(&common)?;
            Ok((common, (text, EXIT_PASS)))
        }
    }
}

fn opts(c: &Common) -> EnumOptions {
    EnumOptions { budget: c.budget, workers: c.workers.max(1) }
}

fn series_text(s: &QSeries) -> String {
    let shown = s.clone().into_exact().to_string();
    match s.order() {
        Some(l) => format!("{shown}  (through q^{l})"),
        None => shown,
    }
}

fn cmd_series(family: &str, n: usize, m: Option<usize>, l: Option<usize>, source: Source, c: &Common) -> Result<Rendered> {
    let fam = FamilyId::parse(family, n, m)?;
    if fam.kind.is_affine() && l.is_none() {
        return Err(Error::InvalidParameters(format!("{family} is affine; --max-len is required")));
    }
    let brute = match source {
        Source::Formula => None,
        _ => Some(unfolding_series_bruteforce(&standard_folding(fam)?, l, opts(c))?.series),
    };
    let formula = match source {
        Source::Bruteforce => None,
        _ => Some(unfolding_closed_form(fam, l)?),
    };
    let matched = match (&brute, &formula) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let code = if matched == Some(false) { EXIT_FAIL } else { EXIT_PASS };
    let single = brute.as_ref().xor(formula.as_ref());
    let mut out = String::new();
    match c.format {
        Format::Text => match single {
            Some(s) => writeln!(out, "{}", s.clone().into_exact()).unwrap(),
            None => {
                writeln!(out, "bruteforce: {}", series_text(brute.as_ref().unwrap())).unwrap();
                writeln!(out, "formula:    {}", series_text(formula.as_ref().unwrap())).unwrap();
                writeln!(out, "match:      {}", if matched == Some(true) { "yes" } else { "NO" }).unwrap();
            }
        },
        Format::Json => {
            let v = match single {
                Some(s) => serde_json::to_value(s)?,
                None => json!({ "bruteforce": brute, "formula": formula, "match": matched }),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?).unwrap();
        }
        Format::Csv => match single {
            Some(s) => {
                out.push_str("degree,coefficient\n");
                for (k, x) in s.coeffs().iter().enumerate() {
                    writeln!(out, "{k},{x}").unwrap();
                }
            }
            None => {
                let (a, b) = (brute.unwrap(), formula.unwrap());
                out.push_str("degree,bruteforce,formula\n");
                let len = a.coeffs().len().max(b.coeffs().len());
                for k in 0..len {
                    writeln!(out, "{k},{},{}", a.coeff(k), b.coeff(k)).unwrap();
                }
            }
        },
    }
    Ok((out, code))
}

fn cmd_verify(
    family: Option<&str>,
    ns: Option<Vec<usize>>,
    m: Option<usize>,
    l: Option<usize>,
    cache: Option<Cache>,
    timings: bool,
    c: &Common,
) -> Result<Rendered> {
    let mut jobs = match family {
        None => {
            if ns.is_some() || m.is_some() {
                return Err(Error::InvalidParameters("--n/--m need --family".into()));
            }
            default_jobs()
        }
        Some(name) => {
            let target: Target = name.parse()?;
            let grid: Vec<GridPoint> = match ns {
                Some(ns) => ns.into_iter().map(|n| GridPoint { n, m }).collect(),
                None => default_jobs()
                    .into_iter()
                    .find(|j| j.target == target)
                    .map(|j| j.grid)
                    .ok_or_else(|| Error::InvalidParameters(format!("{name} has no default grid; pass --n")))?,
            };
            if grid.is_empty() {
                return Err(Error::InvalidParameters("empty parameter grid".into()));
            }
            vec![VerificationJob::new(target, grid)]
        }
    };
    for j in &mut jobs {
        j.max_len = l.or(j.max_len);
        j.budget = c.budget;
        j.workers = c.workers.max(1);
        j.cache = cache.clone();
    }
    let reports = jobs.iter().map(run_job).collect::<Result<Vec<VerificationReport>>>()?;
    let ok = reports.iter().all(VerificationReport::passed);
    let code = if ok { EXIT_PASS } else { EXIT_FAIL };
    let mut out = String::new();
    match c.format {
        Format::Json => {
            let parts = reports.iter().map(|r| r.to_json(timings)).collect::<Result<Vec<_>>>()?;
            if parts.len() == 1 {
                writeln!(out, "{}", parts[0]).unwrap();
            } else {
                writeln!(out, "[\n{}\n]", parts.join(",\n")).unwrap();
            }
        }
        Format::Text | Format::Csv => {
            let csv = c.format == Format::Csv;
            if csv {
                out.push_str("target,n,m,L,status,first_mismatch,elements,millis\n");
            } else {
                writeln!(out, "{:<22} {:>3} {:>3} {:>5} {:<14} {:<28} {:>10} {:>8}", "target", "n", "m", "L", "status", "first mismatch", "elements", "ms").unwrap();
            }
            for r in &reports {
                for case in &r.cases {
                    let status = match case.status {
                        Status::Pass => "pass",
                        Status::Mismatch => "mismatch",
                        Status::ResourceLimit => "resource-limit",
                        Status::Error => "error",
                    };
                    let mism = match (&case.first_mismatch, &case.error) {
                        (Some(mm), _) => format!("{} q^{}: {} vs {}", mm.route, mm.degree, mm.lhs, mm.rhs),
                        (None, Some(e)) => e.clone(),
                        _ => String::new(),
                    };
                    let mstr = case.params.m.map_or(String::from("-"), |m| m.to_string());
                    let lstr = case.max_len.map_or(String::from("exact"), |l| l.to_string());
                    let ms = if timings { case.millis.unwrap_or(0).to_string() } else { "-".into() };
                    if csv {
                        writeln!(out, "{},{},{mstr},{lstr},{status},\"{}\",{},{ms}", r.job.target, case.params.n, mism.replace('"', "'"), case.elements_enumerated).unwrap();
                    } else {
                        writeln!(out, "{:<22} {:>3} {:>3} {:>5} {:<14} {:<28} {:>10} {:>8}", r.job.target.to_string(), case.params.n, mstr, lstr, status, mism, case.elements_enumerated, ms).unwrap();
                    }
                }
            }
            if !csv {
                let total: usize = reports.iter().map(|r| r.cases.len()).sum();
                let passed: usize = reports.iter().map(|r| r.cases.iter().filter(|c| c.status == Status::Pass).count()).sum();
                writeln!(out, "{passed}/{total} cases passed").unwrap();
            }
        }
    }
    Ok((out, code))
}

fn stat_csv(out: &mut String, s: &StatSeries) {
    let mut rows: Vec<_> = s.terms().collect();
    rows.sort_by_key(|&((a, b, q), _)| (q, a, b));
    for ((a, b, q), c) in rows {
        writeln!(out, "{a},{b},{q},{c}").unwrap();
    }
}

fn cmd_reiner(kind: ReinerType, n: usize, l: usize, preview: Option<&str>, c: &Common) -> Result<Rendered> {
    let (rk, label) = match kind {
        ReinerType::AffB => (ReinerKind::AffB, format!("affine-B{n}")),
        ReinerType::AffC => (ReinerKind::AffC, format!("affine-C{n}")),
    };
    let formula = reiner_distribution(rk, n, l)?;
    let brute = reiner_stats_bruteforce(&build_system(&label)?, l, opts(c))?;
    let matched = formula == brute;
    let preview = match preview {
        Some(name) => {
            let fam = FamilyId::parse(name, n, None)?;
            Some(unfolding_via_reiner(fam, Some(l))?)
        }
        None => None,
    };
    let mut out = String::new();
    match c.format {
        Format::Text => {
            writeln!(out, "formula:    {formula}").unwrap();
            writeln!(out, "bruteforce: {brute}").unwrap();
            writeln!(out, "match:      {}", if matched { "yes" } else { "NO" }).unwrap();
            if let Some(p) = &preview {
                writeln!(out, "unfolding:  {}", series_text(p)).unwrap();
            }
        }
        Format::Json => {
            let v = json!({ "formula": formula, "bruteforce": brute, "match": matched, "unfolding": preview });
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?).unwrap();
        }
        Format::Csv => {
            out.push_str("a,b,q,coefficient\n");
            stat_csv(&mut out, &formula);
        }
    }
    Ok((out, if matched { EXIT_PASS } else { EXIT_FAIL }))
}

/// Hasse diagram in DOT. Nodes are sorted by length, then by ShortLex
/// normal form; the image of the folding, if any, is drawn red.
pub fn bruhat_dot(sys: &CoxeterSystem, highlight: &HashSet<ElementKey>, elements: Vec<Element>) -> String {
    let mut nodes: Vec<(Element, Vec<usize>)> = elements
        .into_iter()
        .map(|w| {
            let nf = sys.shortlex_normal_form(&w).letters().to_vec();
            (w, nf)
        })
        .collect();
    nodes.sort_by(|a, b| (a.0.length(), &a.1).cmp(&(b.0.length(), &b.1)));
    let els: Vec<Element> = nodes.iter().map(|(w, _)| w.clone()).collect();
    let mut out = String::new();
    writeln!(out, "digraph bruhat {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for (i, (w, nf)) in nodes.iter().enumerate() {
        let label = sys.format_word(&crate::coxeter::Word(nf.clone()));
        let color = if highlight.contains(w.key()) { ", color=red, fontcolor=red" } else { "" };
        writeln!(out, "  n{i} [label=\"{label}\"{color}];").unwrap();
    }
    for (i, j) in hasse_edges(sys, &els) {
        writeln!(out, "  n{i} -> n{j};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn cmd_bruhat_dot(group: &str, fam: Option<FamilyId>, max_len: Option<usize>, c: &Common) -> Result<String> {
    let sys = build_system(group)?;
    let elements: Vec<Element> = match max_len {
        Some(l) => crate::coxeter::enumerate_up_to(&sys, l, opts(c))?,
        None => enumerate_all(&sys, opts(c))?,
    }
    .into_iter()
    .flatten()
    .collect();
    let mut red = HashSet::new();
    if let Some(fam) = fam {
        let f = standard_folding(fam)?;
        if f.target().label() != sys.label() {
            return Err(Error::InvalidParameters(format!(
                "{fam} folds into {}, not {}",
                f.target().label(),
                sys.label()
            )));
        }
        let cap = max_len.or(if sys.is_finite() { None } else { Some(0) });
        walk_folding(&f, cap, None, opts(c), |_, x| {
            red.insert(x.key().clone());
            Ok(())
        })?;
    }
    if c.format != Format::Text {
        return Err(Error::InvalidParameters("bruhat-dot only writes DOT text".into()));
    }
    Ok(bruhat_dot(&sys, &red, elements))
}

fn cmd_catalog(c: &Common) -> Result<String> {
    let entries = catalog();
    let mut out = String::new();
    match c.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&entries)?).unwrap(),
        Format::Csv => {
            out.push_str("id,kind,parameters,literal_reading,formula\n");
            for e in &entries {
                writeln!(out, "{},{},\"{}\",{},\"{}\"", e.id, e.kind, e.parameters, e.literal_reading, e.formula).unwrap();
            }
        }
        Format::Text => {
            for e in &entries {
                let lit = if e.literal_reading { " [+literal]" } else { "" };
                writeln!(out, "{:<22} {:<10} {:<24} {}{lit}", e.id, e.kind, e.parameters, e.formula).unwrap();
            }
        }
    }
    Ok(out)
}
