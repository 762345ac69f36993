//! Command-line interface. Exit codes: 0 for success (accepted, true,
//! countermodel found), 1 for a negative answer, 2 for usage, parse and I/O
//! errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mqr_core::kernel::{check, parse_script};
use mqr_core::search::{find_countermodel, random_valid_frame, CountermodelResult, SearchBudget};
use mqr_core::semantics::{eval, holds, load_structure, parse_structure, validate_frame, Structure};
use mqr_core::syntax::{parse_formula_for, parse_mformula_for};
use mqr_core::{Formula, System};

use crate::corpus::{default_manifest, load_corpus, run_corpus};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SystemArg {
    Msqr,
    Mspqr,
}

impl From<SystemArg> for System {
    fn from(s: SystemArg) -> System {
        match s {
            SystemArg::Msqr => System::Msqr,
            SystemArg::Mspqr => System::Mspqr,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "mqr", version, about = "Proof checker and countermodel finder for MSQR and MSPQR")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Logic to work in (defaults to the one declared by the input, else MSQR)
    #[arg(long, value_enum, global = true)]
    pub system: Option<SystemArg>,
    /// Print machine-readable reason codes
    #[arg(long, global = true)]
    pub reasons: bool,
    /// Accept model files whose frame violates the frame conditions
    #[arg(long, global = true)]
    pub allow_invalid: bool,
    /// World bound for searches
    #[arg(long, global = true, value_name = "N")]
    pub max_worlds: Option<usize>,
    /// Seed for random frame generation
    #[arg(long, global = true, value_name = "S", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a proof script
    Check { path: PathBuf },
    /// Evaluate a formula in a model file
    Eval {
        model: PathBuf,
        formula: String,
        /// Evaluate an unlabelled formula at this world instead
        #[arg(long)]
        world: Option<String>,
    },
    /// Search for a countermodel to a formula
    Countermodel {
        formula: String,
        /// File with one assumption per line
        #[arg(long)]
        assumptions: Option<PathBuf>,
    },
    /// Frame utilities
    #[command(subcommand)]
    Frame(FrameCommand),
    /// Proof corpus
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Debug, Subcommand)]
pub enum FrameCommand {
    /// Report every frame condition a model file violates
    Validate { model: PathBuf },
    /// Print a random valid frame
    Random,
}

#[derive(Debug, Subcommand)]
pub enum CorpusCommand {
    /// Check every corpus entry and search for countermodels to its theorems
    Run {
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
}

const DEFAULT_SEARCH_WORLDS: usize = 3;
const DEFAULT_RANDOM_WORLDS: usize = 4;

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

// Write failures on the output streams are not recoverable here.
macro_rules! say {
    ($w:expr, $($arg:tt)*) => { let _ = writeln!($w, $($arg)*); };
}

fn read(path: &Path, io: &mut Io) -> Option<String> {
    match std::fs::read_to_string(path) {
        Ok(s) => Some(s),
        Err(e) => {
            say!(io.err, "error: {}: {e}", path.display());
            None
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let mut io = Io { out, err };
    let g = &cli.global;
    match &cli.command {
        Command::Check { path } => cmd_check(path, g, &mut io),
        Command::Eval { model, formula, world } => cmd_eval(model, formula, world.as_deref(), g, &mut io),
        Command::Countermodel { formula, assumptions } => cmd_countermodel(formula, assumptions.as_deref(), g, &mut io),
        Command::Frame(FrameCommand::Validate { model }) => cmd_frame_validate(model, &mut io),
        Command::Frame(FrameCommand::Random) => cmd_frame_random(g, &mut io),
        Command::Corpus(CorpusCommand::Run { manifest }) => cmd_corpus(manifest.as_deref(), g, &mut io),
    }
}

fn cmd_check(path: &Path, g: &GlobalArgs, io: &mut Io) -> u8 {
    let Some(src) = read(path, io) else { return EXIT_ERROR };
    let script = match parse_script(&src) {
        Ok(s) => s,
        Err(e) => {
            say!(io.err, "error: {}: {e}", path.display());
            return EXIT_ERROR;
        }
    };
    let system = g.system.map(System::from).unwrap_or(script.system);
    let report = check(&script, system);
    let name = script.theorem.as_ref().map(|t| t.name.as_str()).unwrap_or("derivation");
    if report.is_accepted() {
        say!(io.out, "accepted: {name} ({system})");
    } else {
        say!(io.out, "rejected: {name} ({system})");
    }
    for d in &report.diagnostics {
        if g.reasons {
            say!(io.out, "  {d} [{}]", d.code);
        } else {
            say!(io.out, "  {d}");
        }
    }
    if !report.open_assumptions.is_empty() {
        say!(io.out, "open assumptions:");
        for a in &report.open_assumptions {
            say!(io.out, "  {a}");
        }
    }
    if report.is_accepted() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn load_model(path: &Path, g: &GlobalArgs, io: &mut Io) -> Option<Structure> {
    let src = read(path, io)?;
    match load_structure(&src, g.allow_invalid) {
        Ok(s) => Some(s),
        Err(e) => {
            say!(io.err, "error: {}: {e}", path.display());
            None
        }
    }
}

fn cmd_eval(model: &Path, formula: &str, world: Option<&str>, g: &GlobalArgs, io: &mut Io) -> u8 {
    let Some(structure) = load_model(model, g, io) else { return EXIT_ERROR };
    let system = structure.frame().system();
    if let Some(requested) = g.system.map(System::from) {
        if requested != system {
            say!(io.err, "error: wrong-system: model is {system}, --system asks for {requested}");
            return EXIT_ERROR;
        }
    }
    let result = match world {
        Some(name) => {
            let Some(w) = structure.frame().world(name) else {
                say!(io.err, "error: unknown-world: `{name}`");
                return EXIT_ERROR;
            };
            match parse_mformula_for(formula, system) {
                Ok(a) => eval(structure.model(), w, &a),
                Err(e) => {
                    say!(io.err, "error: {e}");
                    return EXIT_ERROR;
                }
            }
        }
        None => match parse_formula_for(formula, system) {
            Ok(alpha) => holds(&structure, &alpha),
            Err(e) => {
                say!(io.err, "error: {e}");
                return EXIT_ERROR;
            }
        },
    };
    match result {
        Ok(true) => {
            say!(io.out, "true");
            EXIT_OK
        }
        Ok(false) => {
            say!(io.out, "false");
            EXIT_NEGATIVE
        }
        Err(e) => {
            say!(io.err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn parse_assumptions(path: &Path, system: System, io: &mut Io) -> Option<Vec<Formula>> {
    let src = read(path, io)?;
    let mut out = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let text = line.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        match parse_formula_for(text, system) {
            Ok(f) => out.push(f),
            Err(e) => {
                say!(io.err, "error: {}:{}: {e}", path.display(), i + 1);
                return None;
            }
        }
    }
    Some(out)
}

fn cmd_countermodel(formula: &str, assumptions: Option<&Path>, g: &GlobalArgs, io: &mut Io) -> u8 {
    let system = g.system.map(System::from).unwrap_or(System::Msqr);
    let alpha = match parse_formula_for(formula, system) {
        Ok(f) => f,
        Err(e) => {
            say!(io.err, "error: {e}");
            return EXIT_ERROR;
        }
    };
    let gamma = match assumptions {
        Some(path) => match parse_assumptions(path, system, io) {
            Some(g) => g,
            None => return EXIT_ERROR,
        },
        None => Vec::new(),
    };
    let budget = SearchBudget::new(g.max_worlds.unwrap_or(DEFAULT_SEARCH_WORLDS));
    match find_countermodel(system, &gamma, &alpha, &budget) {
        Ok(CountermodelResult::Found(s)) => {
            let _ = write!(io.out, "{s}");
            EXIT_OK
        }
        Ok(CountermodelResult::NotFoundWithin {
            bound,
            frames_checked,
            labels_exceed_bound,
        }) => {
            say!(
                io.out,
                "no countermodel with at most {bound} worlds ({frames_checked} frames checked)"
            );
            if labels_exceed_bound {
                say!(io.out, "note: the query has more labels than the world bound");
            }
            EXIT_NEGATIVE
        }
        Err(e) => {
            say!(io.err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn cmd_frame_validate(model: &Path, io: &mut Io) -> u8 {
    let Some(src) = read(model, io) else { return EXIT_ERROR };
    let structure = match parse_structure(&src) {
        Ok(s) => s,
        Err(e) => {
            say!(io.err, "error: {}: {e}", model.display());
            return EXIT_ERROR;
        }
    };
    let violations = validate_frame(structure.frame());
    if violations.is_empty() {
        say!(io.out, "valid {} frame", structure.frame().system());
        return EXIT_OK;
    }
    for v in &violations {
        say!(io.out, "{}", v.describe(structure.frame()));
    }
    EXIT_NEGATIVE
}

fn cmd_frame_random(g: &GlobalArgs, io: &mut Io) -> u8 {
    let system = g.system.map(System::from).unwrap_or(System::Msqr);
    let budget = SearchBudget::new(g.max_worlds.unwrap_or(DEFAULT_RANDOM_WORLDS)).with_seed(g.seed);
    match random_valid_frame(system, &budget) {
        Ok(frame) => {
            let _ = write!(io.out, "{frame}");
            EXIT_OK
        }
        Err(e) => {
            say!(io.err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn cmd_corpus(manifest: Option<&Path>, g: &GlobalArgs, io: &mut Io) -> u8 {
    let manifest = manifest.map(Path::to_path_buf).unwrap_or_else(default_manifest);
    let entries = match load_corpus(&manifest) {
        Ok(e) => e,
        Err(e) => {
            say!(io.err, "error: {e}");
            return EXIT_ERROR;
        }
    };
    let report = match run_corpus(&entries, g.max_worlds.unwrap_or(DEFAULT_SEARCH_WORLDS)) {
        Ok(r) => r,
        Err(e) => {
            say!(io.err, "error: {e}");
            return EXIT_ERROR;
        }
    };
    say!(io.out, "{report}");
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}
