use std::collections::BTreeSet;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use clustercol::cli_io::format::InstanceFile;
use clustercol::cli_io::gen;
use clustercol::cli_io::verify::{verify_solution, Claims};
use clustercol::color_core::{Coloring, Config};
use clustercol::discharge_audit::{audit, AuditVerdict, StripAmount};
use clustercol::extend_solver::solve_planar;
use clustercol::oracle::{brute_min_clustering, OracleError, ORACLE_BUDGET};
use clustercol::structure_detect::{find_pword, find_sparsifiers, maximal_separated_system, min_free_t};
use clustercol::SolveError;

const SEED_VAR: &str = "CLUSTERED_COLOR_SEED";

#[derive(Parser)]
#[command(name = "clustercol", version, about = "Clustered list coloring of P''_t-free planar graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color an instance and report the coloring with its bound trace.
    Color {
        /// Instance file; stdin when omitted or `-`.
        instance: Option<PathBuf>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        sigma: Option<usize>,
        /// Overrides the big-degree threshold `336t`.
        #[arg(long = "D")]
        d: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a coloring report against its instance.
    Verify {
        instance: PathBuf,
        report: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the discharging audit.
    Audit {
        instance: Option<PathBuf>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long = "D")]
        d: Option<usize>,
        /// Use `1/(4t)` per strip vertex instead of `1/(8t)`.
        #[arg(long)]
        quarter: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look for P''_N or for sparsifiers.
    Detect {
        instance: Option<PathBuf>,
        #[arg(long)]
        pword: Option<usize>,
        #[arg(long)]
        sparsifiers: bool,
        #[arg(long = "D")]
        d: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate an instance: pword T, choos-gadget G, complete-3tree K,
    /// stacked-3tree N, free-3tree N T, triangulation N, triangulation4 N, strip L, cycle N,
    /// path N, k4, octahedron, icosahedron.
    Gen {
        family: String,
        params: Vec<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact minimum clustering by exhaustive search.
    Oracle {
        instance: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        gamma_max: usize,
        #[arg(long, default_value_t = ORACLE_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit status: 0 solved or passed, 1 a verified negative answer, 2 error.
enum Outcome {
    Positive(Value),
    Negative(Value),
}

fn read_input(path: Option<&Path>) -> Result<String, String> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
            Ok(s)
        }
    }
}

fn read_instance(path: Option<&Path>) -> Result<InstanceFile, String> {
    InstanceFile::from_json(&read_input(path)?).map_err(|e| e.to_string())
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    match out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| format!("{}: {e}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn color(instance: Option<&Path>, t: Option<usize>, sigma: Option<usize>, d: Option<usize>) -> Result<Outcome, String> {
    let inst = read_instance(instance)?;
    let g = inst.graph().map_err(|e| e.to_string())?;
    let lists = inst.lists().map_err(|e| e.to_string())?;
    let psi = inst.precoloring().map_err(|e| e.to_string())?;
    let mut cfg = Config { d_override: d, ..Config::default() };
    if let Some(s) = sigma {
        cfg.sigma = s;
        cfg.sigma_cap = cfg.sigma_cap.max(s);
    }
    match solve_planar(&g, &lists, &psi, t.or(inst.t), &cfg) {
        Ok(rep) if rep.verdict.passed => Ok(Outcome::Positive(to_value(&rep))),
        Ok(rep) => Ok(Outcome::Negative(to_value(&rep))),
        Err(e @ (SolveError::PwordPresent(_) | SolveError::HypothesesViolated(_))) => {
            Ok(Outcome::Negative(json!({ "error": e.to_string(), "detail": format!("{e:?}") })))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn verify(instance: &Path, report: &Path) -> Result<Outcome, String> {
    let inst = read_instance(Some(instance))?;
    let g = inst.graph().map_err(|e| e.to_string())?;
    let lists = inst.lists().map_err(|e| e.to_string())?;
    let psi = inst.precoloring().map_err(|e| e.to_string())?;
    let rep: Value = serde_json::from_str(&read_input(Some(report))?).map_err(|e| e.to_string())?;
    let phi: Coloring = serde_json::from_value(rep.get("coloring").cloned().ok_or("report has no coloring")?).map_err(|e| e.to_string())?;
    let field = |k: &str| rep.get(k).and_then(Value::as_u64);
    let claims = Claims { clustering: field("clustering").map(|c| c as usize), bound: field("bound"), isolates: None };
    let verdict = verify_solution(&g, &lists, &psi, &phi, &claims);
    let value = to_value(&verdict);
    Ok(if verdict.passed { Outcome::Positive(value) } else { Outcome::Negative(value) })
}

fn run_audit(instance: Option<&Path>, t: Option<usize>, d: Option<usize>, quarter: bool) -> Result<Outcome, String> {
    let inst = read_instance(instance)?;
    let g = inst.graph().map_err(|e| e.to_string())?;
    let x: BTreeSet<usize> = inst.precoloring().map_err(|e| e.to_string())?.keys().copied().collect();
    let t = match t.or(inst.t) {
        Some(t) => t,
        None => min_free_t(&g).map_err(|e| e.to_string())?,
    };
    if t < 2 {
        return Err(format!("audit needs t >= 2, got {t}"));
    }
    let strip = if quarter { StripAmount::QuarterT } else { StripAmount::EighthT };
    let rep = audit(&g, &x, t, d, strip);
    let value = to_value(&rep);
    Ok(match rep.verdict {
        AuditVerdict::Pass | AuditVerdict::TrivialSmallGraph => Outcome::Positive(value),
        AuditVerdict::Fail | AuditVerdict::HypothesesViolated => Outcome::Negative(value),
    })
}

fn detect(instance: Option<&Path>, pword: Option<usize>, sparsifiers: bool, d: Option<usize>) -> Result<Outcome, String> {
    let inst = read_instance(instance)?;
    let g = inst.graph().map_err(|e| e.to_string())?;
    let x: BTreeSet<usize> = inst.precoloring().map_err(|e| e.to_string())?.keys().copied().collect();
    if sparsifiers {
        let t = inst.t.unwrap_or(2);
        let d = d.unwrap_or(336 * t);
        let all = find_sparsifiers(&g, &x, d);
        let system = maximal_separated_system(&g, &x, d);
        let value = json!({ "D": d, "sparsifiers": to_value(&all), "system": to_value(&system) });
        return Ok(if all.is_empty() { Outcome::Positive(value) } else { Outcome::Negative(value) });
    }
    match pword {
        Some(t) => {
            let found = find_pword(&g, t).map_err(|e| e.to_string())?;
            let value = json!({ "t": t, "embedding": to_value(&found) });
            Ok(if found.is_none() { Outcome::Positive(value) } else { Outcome::Negative(value) })
        }
        None => {
            let t = min_free_t(&g).map_err(|e| e.to_string())?;
            Ok(Outcome::Positive(json!({ "min_free_t": t })))
        }
    }
}

fn param(params: &[u64], i: usize, family: &str) -> Result<usize, String> {
    params.get(i).map(|&p| p as usize).ok_or_else(|| format!("{family} needs {} parameter(s)", i + 1))
}

fn generate(family: &str, params: &[u64], seed: Option<u64>) -> Result<Outcome, String> {
    let seed = match seed {
        Some(s) => s,
        None => match std::env::var(SEED_VAR) {
            Ok(s) => s.parse().map_err(|_| format!("{SEED_VAR} is not a 64-bit integer: {s}"))?,
            Err(_) => 0,
        },
    };
    let p = |i| param(params, i, family);
    let positive = |v: usize| if v == 0 { Err(format!("{family} parameters must be positive")) } else { Ok(v) };
    let mut lists = None;
    let (g, seeded) = match family {
        "pword" => (gen::pword(positive(p(0)?)?), false),
        "choos-gadget" => {
            let (g, l) = gen::choos_gadget(positive(p(0)?)?);
            lists = Some(l);
            (g, false)
        }
        "complete-3tree" => (gen::complete_3tree(p(0)?), false),
        "stacked-3tree" => (gen::stacked_3tree(p(0)?.max(3), seed), true),
        "free-3tree" => (gen::free_3tree(p(0)?.max(3), positive(p(1)?)?, seed), true),
        "triangulation" => (gen::triangulation(p(0)?.max(3), seed), true),
        "triangulation4" => (gen::four_connected_triangulation(p(0)?.max(3), seed), true),
        "strip" => (gen::strip(positive(p(0)?)?), false),
        "cycle" => (gen::cycle(p(0)?.max(3)), false),
        "path" => (gen::path(positive(p(0)?)?), false),
        "k4" => (gen::k4(), false),
        "octahedron" => (gen::octahedron(), false),
        "icosahedron" => (gen::icosahedron(), false),
        other => return Err(format!("unknown family {other}")),
    };
    let mut inst = InstanceFile::from_graph(&g).with_metadata(family, params.to_vec(), seeded.then_some(seed));
    inst.lists = lists;
    Ok(Outcome::Positive(serde_json::from_str(&inst.to_json()).expect("instance JSON")))
}

fn oracle(instance: Option<&Path>, gamma_max: usize, budget: u64) -> Result<Outcome, String> {
    let inst = read_instance(instance)?;
    let g = inst.graph().map_err(|e| e.to_string())?;
    let lists = inst.lists().map_err(|e| e.to_string())?;
    let psi = inst.precoloring().map_err(|e| e.to_string())?;
    match brute_min_clustering(&g, &lists, &psi, gamma_max, budget) {
        Ok(Some((phi, gamma))) => Ok(Outcome::Positive(json!({
            "gamma_max": gamma_max,
            "verdict": "colorable",
            "clustering": gamma,
            "coloring": phi,
        }))),
        Ok(None) => Ok(Outcome::Negative(json!({ "gamma_max": gamma_max, "verdict": "no coloring" }))),
        Err(e @ OracleError::BudgetExceeded(_)) | Err(e @ OracleError::UnsupportedStructure) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = match &cli.command {
        Command::Color { instance, t, sigma, d, out } => (color(instance.as_deref(), *t, *sigma, *d), out),
        Command::Verify { instance, report, out } => (verify(instance, report), out),
        Command::Audit { instance, t, d, quarter, out } => (run_audit(instance.as_deref(), *t, *d, *quarter), out),
        Command::Detect { instance, pword, sparsifiers, d, out } => (detect(instance.as_deref(), *pword, *sparsifiers, *d), out),
        Command::Gen { family, params, seed, out } => (generate(family, params, *seed), out),
        Command::Oracle { instance, gamma_max, budget, out } => (oracle(instance.as_deref(), *gamma_max, *budget), out),
    };
    let (value, code) = match result {
        Ok(Outcome::Positive(v)) => (v, 0),
        Ok(Outcome::Negative(v)) => (v, 1),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&value, out.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
