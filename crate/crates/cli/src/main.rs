mod record;
mod table;

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use linkbounds::diagram::{parse_fixture, Fixture};
use linkbounds::exec::Exec;
use linkbounds::factor::{factor_irreducible, is_norm_modulo_univariate, is_norm_up_to_negligible, NormVerdict};
use linkbounds::invariants::{conway_polynomial, one_variable_alexander, AlexanderData, DEFAULT_CONWAY_BUDGET};
use linkbounds::laurent::parse_poly;
use linkbounds::obstructions::{component_polynomials, ObstructionReport};
use linkbounds::search::{bounded_search, certify_gap, Goal, Mode, SearchResult, MAX_SEARCH_DEPTH};

use record::{InvariantsRecord, ObstructRecord, SearchOnlyRecord, SearchRecord, SCHEMA_VERSION};

#[derive(Parser)]
#[command(name = "linkbounds", version, about = "Alexander-module invariants and lower bounds for link diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Inter,
    Any,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Inter => Mode::InterComponentOnly,
            ModeArg::Any => Mode::AnyCrossing,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GoalArg {
    Split,
    Unlink,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander invariants of fixture files or directories of `.link` files.
    Invariants {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Largest diagram for the Conway polynomial.
        #[arg(long, default_value_t = DEFAULT_CONWAY_BUDGET)]
        conway_budget: usize,
    },
    /// Lower bounds for unlinking, splitting and weak splitting numbers,
    /// sandwiched against crossing-change searches.
    Obstruct {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Crossing changes to try when looking for upper bounds.
        #[arg(long, default_value_t = 0)]
        search_depth: usize,
        /// `inter` restricts searches to crossings between distinct components.
        #[arg(long, value_enum, default_value = "any")]
        mode: ModeArg,
        /// Print an aligned table instead of JSON lines.
        #[arg(long)]
        table: bool,
    },
    /// Factor a Laurent polynomial and test it for being a norm.
    Factor {
        polynomial: String,
        /// Number of variables; defaults to the largest index mentioned.
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Search for crossing changes that split the diagram.
    Search {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, default_value_t = 2)]
        search_depth: usize,
        #[arg(long, value_enum, default_value = "inter")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "split")]
        goal: GoalArg,
    },
}

/// Failure while processing one input; the exit code reflects the worst kind seen.
enum Failure {
    Io(String),
    Input(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 2,
            Failure::Input(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Input(m) => m,
        }
    }
}

/// Expands directories into their `.link` files, sorted by name.
fn expand(paths: &[PathBuf]) -> Vec<Result<PathBuf, Failure>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            match std::fs::read_dir(p) {
                Ok(entries) => {
                    let mut files: Vec<PathBuf> = entries
                        .filter_map(|e| e.ok().map(|e| e.path()))
                        .filter(|f| f.extension().is_some_and(|x| x == "link"))
                        .collect();
                    files.sort();
                    out.extend(files.into_iter().map(Ok));
                }
                Err(e) => out.push(Err(Failure::Io(format!("{}: {e}", p.display())))),
            }
        } else {
            out.push(Ok(p.clone()));
        }
    }
    out
}

fn load(path: &Path) -> Result<Fixture, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    parse_fixture(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Runs `job` on every input concurrently and reports in input order.
fn batch<R: Send>(
    paths: &[PathBuf],
    job: impl Fn(&str, Fixture) -> Result<R, Failure> + Sync + Send,
    mut emit: impl FnMut(R) -> io::Result<()>,
) -> u8 {
    let inputs = expand(paths);
    let results = Exec::default().map(inputs, |input| {
        let path = input?;
        let fx = load(&path)?;
        job(&path.display().to_string(), fx)
    });
    let mut code = 0;
    for r in results {
        match r {
            Ok(rec) => {
                if let Err(e) = emit(rec) {
                    eprintln!("error: writing output: {e}");
                    return 2;
                }
            }
            Err(f) => {
                eprintln!("error: {}", f.message());
                code = code.max(f.code());
            }
        }
    }
    code
}

fn json_line(out: &mut impl Write, value: &impl serde::Serialize) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

fn check_depth(depth: usize) -> Result<(), String> {
    if depth > MAX_SEARCH_DEPTH {
        return Err(format!("--search-depth {depth} exceeds the limit of {MAX_SEARCH_DEPTH}"));
    }
    Ok(())
}

fn cmd_invariants(paths: &[PathBuf], budget: usize) -> u8 {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    batch(
        paths,
        |file, fx| {
            let a = AlexanderData::compute(&fx.diagram, Exec::Sequential);
            let polys = component_polynomials(&fx.diagram, Exec::Sequential);
            let conway = conway_polynomial(&fx.diagram, budget)
                .ok()
                .map(|c| (c, one_variable_alexander(&fx.diagram, budget).expect("within budget")));
            Ok(InvariantsRecord::new(file, &fx, &a, &polys, conway))
        },
        |rec| json_line(&mut out, &rec),
    )
}

/// Searches used for upper bounds: splitting through inter-component changes,
/// and with `any` also weak splitting and unlinking through arbitrary changes.
fn searches_for(fx: &Fixture, depth: usize, mode: Mode) -> Result<Vec<SearchResult>, Failure> {
    let mut plan = vec![(Mode::InterComponentOnly, Goal::TotallySplit), (Mode::InterComponentOnly, Goal::Unlink)];
    if mode == Mode::AnyCrossing {
        plan.push((Mode::AnyCrossing, Goal::TotallySplit));
        plan.push((Mode::AnyCrossing, Goal::Unlink));
    }
    plan.into_iter()
        .map(|(m, g)| bounded_search(&fx.diagram, depth, m, g, Exec::Sequential))
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Input(format!("{}: {e}", fx.name)))
}

fn cmd_obstruct(paths: &[PathBuf], depth: usize, mode: Mode, as_table: bool) -> u8 {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut rows = Vec::new();
    let code = batch(
        paths,
        |file, fx| {
            let report = ObstructionReport::compute(fx.name.clone(), &fx.diagram, Exec::Sequential);
            let searches = searches_for(&fx, depth, mode)?;
            let intervals = certify_gap(&fx.diagram, &report, &searches)
                .map_err(|e| Failure::Input(format!("{file}: internal inconsistency: {e}")))?;
            Ok(ObstructRecord::new(file, &fx, &report, &intervals, depth, &searches))
        },
        |rec| {
            if as_table {
                rows.push(rec);
                Ok(())
            } else {
                json_line(&mut out, &rec)
            }
        },
    );
    if as_table {
        if let Err(e) = out.write_all(table::render(&rows).as_bytes()) {
            eprintln!("error: writing output: {e}");
            return 2;
        }
    }
    code
}

fn cmd_search(paths: &[PathBuf], depth: usize, mode: Mode, goal: Goal) -> u8 {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    batch(
        paths,
        |file, fx| {
            let r = bounded_search(&fx.diagram, depth, mode, goal, Exec::Sequential)
                .map_err(|e| Failure::Input(format!("{file}: {e}")))?;
            Ok(SearchOnlyRecord {
                schema_version: SCHEMA_VERSION,
                kind: "search",
                name: fx.name.clone(),
                file: file.to_string(),
                search: SearchRecord::from(&r),
            })
        },
        |rec| json_line(&mut out, &rec),
    )
}

fn verdict_line(label: &str, v: &NormVerdict) -> String {
    if v.is_norm {
        let w = v.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
        format!("{label}: yes, witness f = {w}")
    } else {
        let blocking: Vec<String> = v.blocking_factors.iter().map(|b| b.to_string()).collect();
        format!("{label}: no, blocked by {}", blocking.join(", "))
    }
}

fn cmd_factor(text: &str, vars: Option<usize>) -> u8 {
    let p = match parse_poly(text, vars) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let f = match factor_irreducible(&p) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let decomposition = p.negligible_decompose().expect("nonzero after factoring");
    let mut lines = vec![format!("polynomial: {p}"), format!("variables: {}", p.nvars())];
    lines.push(format!("unit: {}", f.unit_part()));
    if f.factors.is_empty() {
        lines.push("factors: none".into());
    } else {
        lines.push("factors:".into());
        for (q, e) in &f.factors {
            let tag = if q.is_negligible() { "  (negligible)" } else { "" };
            lines.push(format!("  ({q})^{e}{tag}"));
        }
    }
    lines.push(format!("negligible part: {}", decomposition.negligible_part()));
    lines.push(format!("remaining core: {}", decomposition.core));
    let plain = is_norm_up_to_negligible(&p).expect("nonzero");
    let modulo = is_norm_modulo_univariate(&p).expect("nonzero");
    lines.push(verdict_line("norm up to negligible factors", &plain));
    lines.push(verdict_line("norm modulo one-variable factors", &modulo));
    let mut out = io::stdout().lock();
    for l in lines {
        if writeln!(out, "{l}").is_err() {
            return 2;
        }
    }
    0
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Invariants { paths, conway_budget } => cmd_invariants(&paths, conway_budget),
        Command::Obstruct { paths, search_depth, mode, table } => match check_depth(search_depth) {
            Ok(()) => cmd_obstruct(&paths, search_depth, mode.into(), table),
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
        Command::Factor { polynomial, vars } => cmd_factor(&polynomial, vars),
        Command::Search { paths, search_depth, mode, goal } => match check_depth(search_depth) {
            Ok(()) => cmd_search(
                &paths,
                search_depth,
                mode.into(),
                match goal {
                    GoalArg::Split => Goal::TotallySplit,
                    GoalArg::Unlink => Goal::Unlink,
                },
            ),
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
    };
    ExitCode::from(code)
}
