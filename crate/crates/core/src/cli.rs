//! Command-line front end. Exit codes: 0 when every check passes, 1 when a
//! checked property fails, 2 on input or usage errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::axioms::{check_unital, is_complete, is_decomposition, is_segal, Side};
use crate::builders::io::{load_category, load_forests, load_monoid, load_poset, load_sset, to_pretty_json};
use crate::builders::{category_nerve, monoid_nerve, poset_nerve, rpt_from_forests};
use crate::coalgebra::{coassoc_check, comult, counit_check, moebius, TensorTerm};
use crate::error::{Error, Result};
use crate::interval::{factorize, interval_of, Interval};
use crate::report::AxiomReport;
use crate::sset::{validate_simplicial, SimpMap, TruncSSet};
use crate::universal;

#[derive(Parser, Debug)]
#[command(name = "dcmp", version, about = "Finite decomposition spaces")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check axioms on a simplicial set.
    Check {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        axiom: AxiomArg,
    },
    /// Build a nerve from a poset, category, monoid or forest file.
    Build {
        #[arg(value_enum)]
        kind: BuildKind,
        input: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Comultiplication tables and coalgebra laws.
    Coalgebra {
        input: PathBuf,
        #[arg(long, conflicts_with = "table")]
        element: Option<String>,
        #[arg(long)]
        table: bool,
        #[arg(long, value_enum)]
        verify: Option<CoalgebraCheck>,
    },
    /// The Möbius function.
    Moebius {
        input: PathBuf,
        #[arg(long)]
        at: Option<String>,
    },
    /// The interval of an edge.
    Interval {
        input: PathBuf,
        #[arg(long)]
        edge: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Stretched and CULF factorisation of a map of intervals.
    Factorize {
        #[arg(long)]
        src: PathBuf,
        #[arg(long)]
        dst: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// The local universal object and its checks.
    Universal {
        input: PathBuf,
        #[arg(long)]
        maxdeg: usize,
        #[arg(long, value_enum, default_value = "all")]
        verify: UniversalCheck,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AxiomArg {
    Simplicial,
    Segal,
    Decomposition,
    Complete,
    Unital,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BuildKind {
    Poset,
    Category,
    Monoid,
    Rpt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoalgebraCheck {
    Coassoc,
    Counit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum UniversalCheck {
    Strict,
    Decomposition,
    Complete,
    Classifying,
    Modifications,
    All,
}

/// Text and JSON renderings of a command's result.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn reports(reports: Vec<AxiomReport>) -> Output {
        let ok = reports.iter().all(|r| r.passed());
        let text = reports.iter().map(|r| format!("{r}\n")).collect();
        let json = serde_json::to_value(&reports).expect("serializable");
        Output { text, json, ok }
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let threads = std::env::var("DCMP_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    match pool.install(|| execute(&cli.command)) {
        Ok(o) => {
            let _ = if cli.json { write!(out, "{}", to_pretty_json(&o.json)) } else { write!(out, "{}", o.text) };
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotWellFounded(_) | Error::Uniqueness(_) => 1,
        _ => 2,
    }
}

fn load(path: &Path) -> Result<TruncSSet> {
    load_sset(path)
}

fn cell(x: &TruncSSet, k: usize, id: &str) -> Result<u32> {
    x.lookup(k, id).ok_or_else(|| Error::UnknownCell { degree: k, id: id.to_string() })
}

fn write_or_show(out: &Option<PathBuf>, body: String, label: &str) -> Result<Output> {
    match out {
        Some(p) => {
            fs::write(p, &body)?;
            Ok(Output { text: format!("{label} written to {}\n", p.display()), json: json!({ "written": p.display().to_string() }), ok: true })
        }
        None => {
            let json = serde_json::from_str(&body)?;
            Ok(Output { text: body, json, ok: true })
        }
    }
}

fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Check { input, axiom } => {
            let x = load(input)?;
            let reports = match axiom {
                AxiomArg::Simplicial => vec![validate_simplicial(&x)],
                AxiomArg::Segal => vec![is_segal(&x)],
                AxiomArg::Decomposition => vec![is_decomposition(&x)],
                AxiomArg::Complete => vec![is_complete(&x)],
                AxiomArg::Unital => vec![check_unital(&x, Side::Upper), check_unital(&x, Side::Lower)],
                AxiomArg::All => crate::axioms::check_all(&x),
            };
            Ok(Output::reports(reports))
        }
        Command::Build { kind, input, dim, out } => {
            let x = match kind {
                BuildKind::Poset => poset_nerve(&load_poset(input)?, *dim)?,
                BuildKind::Category => category_nerve(&load_category(input)?, *dim)?,
                BuildKind::Monoid => monoid_nerve(&load_monoid(input)?, *dim)?,
                BuildKind::Rpt => rpt_from_forests(&load_forests(input)?, *dim)?,
            };
            write_or_show(out, x.to_json_string(), "simplicial set")
        }
        Command::Coalgebra { input, element, table: _, verify } => {
            let x = load(input)?;
            if let Some(v) = verify {
                let r = match v {
                    CoalgebraCheck::Coassoc => coassoc_check(&x)?,
                    CoalgebraCheck::Counit => counit_check(&x)?,
                };
                let mut o = Output::reports(vec![r]);
                if let Some(e) = element {
                    let f = cell(&x, 1, e)?;
                    let terms = comult(&x, f)?;
                    o.text = format!("{}{}", terms_text(&x, e, &terms), o.text);
                    o.json = json!({ "element": e, "terms": terms_json(&x, &terms), "reports": o.json });
                }
                return Ok(o);
            }
            let edges: Vec<u32> = match element {
                Some(e) => vec![cell(&x, 1, e)?],
                None => x.cells(1).collect(),
            };
            let mut text = String::new();
            let mut map = serde_json::Map::new();
            for f in edges {
                let terms = comult(&x, f)?;
                text.push_str(&terms_text(&x, x.name(1, f), &terms));
                map.insert(x.name(1, f).to_string(), terms_json(&x, &terms));
            }
            let json = match element {
                Some(_) => map.into_iter().next().map(|(_, v)| v).unwrap_or(Value::Null),
                None => Value::Object(map),
            };
            Ok(Output { text, json, ok: true })
        }
        Command::Moebius { input, at } => {
            let x = load(input)?;
            let mu = moebius(&x)?;
            let named = mu.to_named(&x);
            match at {
                Some(f) => {
                    let c = cell(&x, 1, f)?;
                    let v = mu.get(c).to_string();
                    Ok(Output { text: format!("mu({f}) = {v}\n"), json: json!({ f.as_str(): v }), ok: true })
                }
                None => {
                    let text = named.iter().map(|(k, v)| format!("mu({k}) = {v}\n")).collect();
                    Ok(Output { text, json: serde_json::to_value(&named)?, ok: true })
                }
            }
        }
        Command::Interval { input, edge, out } => {
            let x = load(input)?;
            let f = cell(&x, 1, edge)?;
            let iv = interval_of(&x, f)?;
            let report = iv.interval.check();
            if !report.passed() {
                return Ok(Output::reports(vec![report]));
            }
            write_or_show(out, iv.interval.to_json_string(), "interval")
        }
        Command::Factorize { src, dst, map } => {
            let a = Interval::from_json_str(&fs::read_to_string(src)?)?;
            let b = Interval::from_json_str(&fs::read_to_string(dst)?)?;
            let f = SimpMap::from_json_str(&a.space, &b.space, &fs::read_to_string(map)?)?;
            let nat = f.naturality();
            if !nat.passed() {
                return Err(Error::pre(format!("the map is not simplicial: {nat}")));
            }
            let fac = factorize(&f, &a, &b)?;
            let ok = fac.passed();
            let middle = fac.middle.interval.to_json_value();
            let s: Value = serde_json::from_str(&fac.s.to_json_string())?;
            let m: Value = serde_json::from_str(&fac.mpart.to_json_string())?;
            let mut text = format!("middle interval: {} cells by degree {:?}\n", b.space.name(1, fac.middle.edge), fac.middle.space().counts());
            for r in &fac.checks {
                text.push_str(&format!("{r}\n"));
            }
            let json = json!({ "edge": b.space.name(1, fac.middle.edge), "middle": middle, "s": s, "mpart": m, "reports": fac.checks });
            Ok(Output { text, json, ok })
        }
        Command::Universal { input, maxdeg, verify } => universal_cmd(&load(input)?, *maxdeg, *verify),
    }
}

fn terms_text(x: &TruncSSet, f: &str, terms: &[TensorTerm]) -> String {
    let mut s = format!("Δ({f}) =\n");
    for t in terms {
        s.push_str(&format!("  {} ⊗ {}  x{}\n", x.name(1, t.left), x.name(1, t.right), t.mult));
    }
    s
}

fn terms_json(x: &TruncSSet, terms: &[TensorTerm]) -> Value {
    Value::Array(terms.iter().map(|t| json!({ "left": x.name(1, t.left), "right": x.name(1, t.right), "mult": t.mult })).collect())
}

fn universal_cmd(x: &TruncSSet, maxdeg: usize, verify: UniversalCheck) -> Result<Output> {
    use UniversalCheck as U;
    for pre in [is_decomposition(x), is_complete(x)] {
        if !pre.passed() {
            return Err(Error::pre(format!("input must be a complete decomposition set: {pre}")));
        }
    }
    if matches!(verify, U::Modifications | U::All) && maxdeg < 3 {
        return Err(Error::pre("modification search needs maxdeg at least 3"));
    }
    let ux = universal::build_ux(x, maxdeg)?;
    let mut reports = Vec::new();
    let want = |c: U| verify == c || verify == U::All;
    if want(U::Strict) {
        reports.push(universal::check_strict(&ux));
        reports.push(universal::check_objects(&ux));
        reports.push(universal::check_all_active(&ux)?);
    }
    if want(U::Decomposition) {
        reports.push(universal::check_decomposition_grpd(&ux)?);
    }
    if want(U::Complete) {
        reports.push(universal::check_complete_grpd(&ux));
    }
    if want(U::Classifying) {
        reports.push(universal::classifying_map(&ux)?);
    }
    let mut o = Output::reports(reports);
    let summary = universal::summary(&ux);
    let mut text = String::new();
    for lv in summary["levels"].as_array().into_iter().flatten() {
        text.push_str(&format!("level {}: {} objects, {} morphisms\n", lv["level"], lv["objects"], lv["morphisms"]));
    }
    text.push_str(&o.text);
    let mut json = json!({ "summary": summary, "reports": o.json });
    if want(U::Modifications) {
        let mods = universal::enumerate_modifications(&ux, 1000);
        let inv = universal::check_active_invariance(&ux, &mods)?;
        let identity = mods.identity_only(&ux);
        let tag = if identity {
            "identity".to_string()
        } else if maxdeg == 3 {
            "non-identity survivors; maxdeg is at its minimum so these may be truncation artifacts".to_string()
        } else {
            "non-identity survivors".to_string()
        };
        let more = if mods.truncated { "+" } else { "" };
        text.push_str(&format!("modifications found: {}{more} ({tag})\n", mods.solutions.len()));
        text.push_str(&format!("{inv}\n"));
        o.ok &= identity && inv.passed();
        json["modifications"] = json!({
            "count": mods.solutions.len(),
            "truncated": mods.truncated,
            "identityOnly": identity,
            "solutions": modification_tables(&ux, &mods),
        });
        json["reports"].as_array_mut().expect("array").push(serde_json::to_value(&inv)?);
    }
    o.text = text;
    o.json = json;
    Ok(o)
}

/// Per solution, per level, the component at each cell that is not the
/// identity.
fn modification_tables(ux: &universal::UX, mods: &universal::Modifications) -> Value {
    Value::Array(
        mods.solutions
            .iter()
            .map(|sol| {
                let levels: Vec<Value> = sol
                    .iter()
                    .enumerate()
                    .map(|(n, comps)| {
                        let m: serde_json::Map<String, Value> = comps
                            .iter()
                            .enumerate()
                            .map(|(l, &m)| {
                                let v = if ux.levels[n].identity[l] == m { "identity".to_string() } else { ux.describe(n, m) };
                                (ux.x.name(n, l as u32).to_string(), Value::String(v))
                            })
                            .collect();
                        json!({ "level": n, "components": m })
                    })
                    .collect();
                Value::Array(levels)
            })
            .collect(),
    )
}
