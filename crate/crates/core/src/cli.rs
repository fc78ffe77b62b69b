//! Command-line front end. Each subcommand forwards to one library call and
//! prints either text or JSON.
//!
//! Exit status: 0 on success, 1 on a domain error (and for `verify` when
//! violations are found), 2 when an argument does not parse.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::braid_core::{BraidWord, ParseError};
use crate::classify::{
    canonicalize_power, enumerate_factorizations, orbit_bfs, verify_classification_with, CanonicalizeOptions,
    ClassifyError,
};
use crate::duality::{left_dual, omega, right_dual};
use crate::garside::{equals, normal_form, PositiveWord};
use crate::half_twist::{make, HalfTwistPower};
use crate::hurwitz::{Direction, Factorization, HurwitzError};
use crate::lefschetz::{classify_lefschetz, project, LefschetzError, Sl2Matrix};

#[derive(Parser, Debug)]
#[command(name = "garside", version, about = "Braid calculus and Hurwitz classification in B3")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for orbit, enumerate and verify.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Maximum number of moves in one fallback search.
    #[arg(long, default_value_t = 8)]
    pub depth: usize,
    /// State budget for one fallback search.
    #[arg(long, default_value_t = 200_000)]
    pub max_nodes: usize,
    /// Disallow global conjugation.
    #[arg(long)]
    pub no_conjugation: bool,
}

impl SearchArgs {
    fn options(&self) -> CanonicalizeOptions {
        CanonicalizeOptions {
            depth: self.depth,
            max_nodes: self.max_nodes,
            conjugation: !self.no_conjugation,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum DirArg {
    Left,
    Right,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Garside normal form of a word.
    Nf { word: String },
    /// Whether two words represent the same braid.
    Eq { left: String, right: String },
    /// Right dual (or left dual with --left) of a Δ-indivisible positive word.
    Dual {
        word: String,
        #[arg(long)]
        left: bool,
    },
    /// ω of a Δ-indivisible positive word.
    Omega { word: String },
    /// Recognize a power of a positive half-twist, or build one from
    /// --conjugator/--axis/--exponent.
    Halftwist {
        word: Option<String>,
        #[arg(long)]
        conjugator: Option<String>,
        #[arg(long, default_value_t = 1)]
        axis: u8,
        #[arg(long, default_value_t = 1)]
        exponent: u32,
    },
    /// Apply one Hurwitz move at a 1-based index.
    Move {
        factorization: String,
        #[arg(long)]
        index: usize,
        #[arg(long, value_enum)]
        dir: DirArg,
    },
    /// Complexity and type multiset of a factorization.
    Complexity { factorization: String },
    /// Bring a factorization of Δ^k to standard form.
    Canonicalize {
        factorization: String,
        /// Exponent k of the product Δ^k.
        #[arg(long, default_value_t = 2)]
        power: i64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Move orbit of a factorization below a complexity bound.
    Orbit {
        factorization: String,
        #[arg(long, default_value_t = 1)]
        max_complexity: u64,
        #[arg(long, default_value_t = 100_000)]
        max_nodes: usize,
        /// Also use global conjugation.
        #[arg(long)]
        conjugation: bool,
    },
    /// Factorizations of Δ² with conjugators of length at most --bound.
    Enumerate {
        #[arg(long, default_value_t = 0)]
        bound: usize,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Enumerate and canonicalize every factorization at --bound.
    Verify {
        #[arg(long, default_value_t = 1)]
        bound: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Project a word to SL2(Z), or classify a JSON array of Dehn twists.
    Lefschetz {
        /// JSON array of matrices [[a,b],[c,d]].
        sequence: Option<String>,
        #[arg(long)]
        project: Option<String>,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain { kind: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Parse(m) => json!({"error": "parse", "message": m}),
            CliError::Domain { kind, message } => json!({"error": kind, "message": message}),
        }
    }

    fn domain(kind: &'static str, e: impl std::fmt::Display) -> CliError {
        CliError::Domain { kind, message: e.to_string() }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "{m}"),
            CliError::Domain { message, .. } => write!(f, "{message}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> CliError {
        CliError::Parse(e.to_string())
    }
}

impl From<HurwitzError> for CliError {
    fn from(e: HurwitzError) -> CliError {
        match e {
            HurwitzError::Parse(p) => p.into(),
            other => CliError::domain("hurwitz", other),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> CliError {
        match e {
            ClassifyError::Hurwitz(h) => h.into(),
            other => CliError::domain("classify", other),
        }
    }
}

impl From<LefschetzError> for CliError {
    fn from(e: LefschetzError) -> CliError {
        match e {
            LefschetzError::Classify(c) => c.into(),
            other => CliError::domain("lefschetz", other),
        }
    }
}

/// Result of one command: human text, JSON, and the exit status.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub status: i32,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Output {
        Output { text: text.into(), json, status: 0 }
    }
}

fn word(s: &str) -> Result<BraidWord, CliError> {
    Ok(s.parse::<BraidWord>()?)
}

fn positive(s: &str) -> Result<PositiveWord, CliError> {
    Ok(s.parse::<PositiveWord>()?)
}

fn factorization(s: &str) -> Result<Factorization, CliError> {
    Ok(s.parse::<Factorization>()?)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Nf { word: w } => {
            let nf = normal_form(&word(w)?);
            Ok(Output::ok(nf.to_string(), to_json(&nf)))
        }
        Command::Eq { left, right } => {
            let eq = equals(&word(left)?, &word(right)?);
            Ok(Output::ok(eq.to_string(), json!({ "equal": eq })))
        }
        Command::Dual { word: w, left } => {
            let p = positive(w)?;
            let pair = if *left { left_dual(&p) } else { right_dual(&p) }
                .map_err(|e| CliError::domain("duality", e))?;
            let text = if *left { pair.rho.to_string() } else { pair.tau.to_string() };
            let j = json!({"rho": pair.rho.to_string(), "tau": pair.tau.to_string(), "omega": pair.omega});
            Ok(Output::ok(text, j))
        }
        Command::Omega { word: w } => {
            let n = omega(&positive(w)?).map_err(|e| CliError::domain("duality", e))?;
            Ok(Output::ok(n.to_string(), json!({ "omega": n })))
        }
        Command::Halftwist { word: w, conjugator, axis, exponent } => {
            let h = match (w, conjugator) {
                (Some(s), None) => s.parse::<HalfTwistPower>()?,
                (None, Some(c)) => {
                    if !(1..=2).contains(axis) || *exponent == 0 {
                        return Err(CliError::Parse("axis must be 1 or 2 and exponent positive".into()));
                    }
                    make(&word(c)?, *axis, *exponent)
                }
                _ => return Err(CliError::Parse("give either a word or --conjugator".into())),
            };
            let j = json!({
                "axis": h.axis, "exponent": h.exponent, "rho": h.rho.to_string(),
                "tau": h.tau.to_string(), "omega": h.omega, "spelling": h.spelling().to_string(),
                "normal_form": to_json(&h.to_garside()), "inverse": to_json(&h.invert()),
            });
            Ok(Output::ok(format!("{h}\n{}", h.spelling()), j))
        }
        Command::Move { factorization: f, index, dir } => {
            let dir = match dir {
                DirArg::Left => Direction::Left,
                DirArg::Right => Direction::Right,
            };
            let out = factorization(f)?.hurwitz_move(*index, dir)?;
            Ok(Output::ok(out.to_string(), to_json(&out)))
        }
        Command::Complexity { factorization: f } => {
            let f = factorization(f)?;
            let (c, nu) = (f.complexity(), f.type_multiset());
            Ok(Output::ok(format!("{c} {nu}"), json!({"complexity": c, "type_multiset": to_json(&nu)})))
        }
        Command::Canonicalize { factorization: f, power, search } => {
            let f = factorization(f)?;
            let (out, trace) = canonicalize_power(&f, *power, &search.options())?;
            let j = json!({"factorization": to_json(&out), "trace": to_json(&trace)});
            Ok(Output::ok(format!("{out}\ntrace: {trace}"), j))
        }
        Command::Orbit { factorization: f, max_complexity, max_nodes, conjugation } => {
            let f = factorization(f)?;
            let states = orbit_bfs(&f, *max_complexity, *max_nodes, *conjugation)?;
            let list: Vec<&String> = states.iter().collect();
            let text = list.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("\n");
            Ok(Output::ok(text, json!({"states": list, "count": list.len()})))
        }
        Command::Enumerate { bound, count } => {
            let all = enumerate_factorizations(*bound);
            if *count {
                return Ok(Output::ok(all.len().to_string(), json!({ "count": all.len() })));
            }
            let text = all.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("\n");
            Ok(Output::ok(text, json!({"factorizations": to_json(&all), "count": all.len()})))
        }
        Command::Verify { bound, search } => {
            let report = verify_classification_with(*bound, &search.options());
            let status = i32::from(!report.violations.is_empty());
            let text = serde_json::to_string_pretty(&report).expect("serializable");
            Ok(Output { text, json: to_json(&report), status })
        }
        Command::Lefschetz { sequence, project: proj, search } => match (sequence, proj) {
            (None, Some(w)) => {
                let m = project(&word(w)?);
                Ok(Output::ok(m.to_string(), to_json(&m)))
            }
            (Some(seq), None) => {
                let ms: Vec<Sl2Matrix> =
                    serde_json::from_str(seq).map_err(|e| CliError::Parse(e.to_string()))?;
                let (out, trace) = classify_lefschetz(&ms, &search.options())?;
                let text = format!("{} factors, standard form reached\ntrace: {trace}", out.len());
                Ok(Output::ok(text, json!({"sequence": to_json(&out), "trace": to_json(&trace)})))
            }
            _ => Err(CliError::Parse("give either a sequence or --project".into())),
        },
    }
}

fn init_logging() {
    let env = env_logger::Env::new().filter_or("GARSIDE_LOG", "off");
    let _ = env_logger::Builder::from_env(env).try_init();
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    init_logging();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("thread pool already initialized: {e}");
        }
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&cli) {
        Ok(o) => {
            let body = if cli.json { o.json.to_string() } else { o.text };
            let _ = writeln!(out, "{body}");
            o.status
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(out, "{}", e.to_json());
            } else {
                eprintln!("error: {e}");
            }
            e.exit_code()
        }
    }
}
