//! Argument handling and dispatch for the `orbikt` binary.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use orbikt::gcomplex::SubdivisionPolicy;
use orbikt::grouptheory::{parse_builtin, parse_group, DEFAULT_MAX_ORDER};
use orbikt::report::{error_document, run as run_report, Command, EulerChoice, Input};
use orbikt::{Error, Result};

pub const DEFAULT_MAX_SIMPLICES: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "orbikt", version, about = "Exact invariants of finite group actions on simplicial complexes and their crossed products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
    /// Group file, or `builtin:<spec>` such as `builtin:dihedral 4`.
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Complex file with optional `act` lines.
    #[arg(long, global = true)]
    pub complex: Option<PathBuf>,
    /// Built-in fixture supplying both group and complex.
    #[arg(long, global = true)]
    pub fixture: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SIMPLICES)]
    pub max_simplices: usize,
    /// Refuse instead of subdividing when a quotient is not simplicial.
    #[arg(long, global = true)]
    pub no_subdivide: bool,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Conjugacy classes and character table.
    Group,
    /// Simplex counts and admissibility.
    Complex,
    /// Simplex orbits, stabilizers and isotropy strata.
    Orbits,
    /// Homology of the joint fixed set of the given elements.
    Fixed {
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Orbit space and its homology.
    Quotient,
    /// Integral homology and invariant rational cohomology.
    Betti,
    /// Equivariant Euler characteristic.
    Euler {
        #[arg(long, default_value = "bc")]
        method: String,
    },
    /// Fiber blocks over a point with the stabilizer generated by the arguments.
    Fiber { generators: Vec<String> },
    /// Finite primitive-ideal poset.
    Prim {
        #[arg(long)]
        aggregate: bool,
    },
    /// Validates an ideal filtration given in a file.
    Filtration { file: PathBuf },
    /// Rational equivariant K-ranks by conjugacy class.
    Bc,
    /// Integral K-theory of the crossed product for isolated singular orbits.
    Ktheory,
    /// Compares fixed-point counts with extra irreps at singular orbits.
    IdentityCheck,
    /// Describes or emits a built-in fixture.
    Fixture {
        name: String,
        #[arg(long)]
        emit: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    Builtin(String),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexSource {
    Fixture(String),
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub group: Option<GroupSource>,
    pub complex: Option<ComplexSource>,
    pub format: Format,
    pub policy: SubdivisionPolicy,
    pub max_order: usize,
    pub max_simplices: usize,
}

/// Captured result of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub status: i32,
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse { line: 0, msg: format!("cannot read {}: {e}", path.display()) })
}

fn split_tokens(v: &[String]) -> Vec<String> {
    v.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let command = match &cli.command {
            Cmd::Group => Command::Group,
            Cmd::Complex => Command::Complex,
            Cmd::Orbits => Command::Orbits,
            Cmd::Fixed { elements } => Command::Fixed(split_tokens(elements)),
            Cmd::Quotient => Command::Quotient,
            Cmd::Betti => Command::Betti,
            Cmd::Euler { method } => match method.as_str() {
                "quotient-check" => Command::Euler(EulerChoice::QuotientCheck),
                m => Command::Euler(EulerChoice::Method(m.parse()?)),
            },
            Cmd::Fiber { generators } => Command::Fiber(split_tokens(generators)),
            Cmd::Prim { aggregate } => Command::Prim { aggregate: *aggregate },
            Cmd::Filtration { file } => Command::Filtration(read(file)?),
            Cmd::Bc => Command::Bc,
            Cmd::Ktheory => Command::KTheory,
            Cmd::IdentityCheck => Command::IdentityCheck,
            Cmd::Fixture { name, emit } => {
                if cli.fixture.is_some() || cli.complex.is_some() {
                    return Err(input_error("`fixture` takes its name as an argument only"));
                }
                let name = name.clone();
                return RunConfig::finish(Command::Fixture { emit: *emit }, &cli, None, Some(ComplexSource::Fixture(name)));
            }
        };
        let group = cli.group.as_ref().map(|g| match g.strip_prefix("builtin:") {
            Some(spec) => GroupSource::Builtin(spec.to_string()),
            None => GroupSource::File(PathBuf::from(g)),
        });
        let complex = match (&cli.fixture, &cli.complex) {
            (Some(_), Some(_)) => return Err(input_error("give either --fixture or --complex, not both")),
            (Some(f), None) => Some(ComplexSource::Fixture(f.clone())),
            (None, Some(p)) => Some(ComplexSource::File(p.clone())),
            (None, None) => None,
        };
        if matches!(complex, Some(ComplexSource::Fixture(_))) && group.is_some() {
            return Err(input_error("a fixture fixes its own group; drop --group"));
        }
        RunConfig::finish(command, &cli, group, complex)
    }

    fn finish(command: Command, cli: &Cli, group: Option<GroupSource>, complex: Option<ComplexSource>) -> Result<Self> {
        if cli.max_order == 0 || cli.max_simplices == 0 {
            return Err(input_error("bounds must be positive"));
        }
        if group.is_none() && complex.is_none() {
            return Err(input_error("no input: give --fixture, --complex or --group"));
        }
        Ok(RunConfig {
            command,
            group,
            complex,
            format: cli.format,
            policy: if cli.no_subdivide { SubdivisionPolicy::Forbid } else { SubdivisionPolicy::Auto },
            max_order: cli.max_order,
            max_simplices: cli.max_simplices,
        })
    }

    fn resolve(&self) -> Result<Input> {
        let input = match &self.complex {
            Some(ComplexSource::Fixture(name)) => Input::from_fixture(name)?,
            other => {
                let group = match &self.group {
                    Some(GroupSource::Builtin(spec)) => Some(parse_builtin(spec)?),
                    Some(GroupSource::File(p)) => Some(parse_group(&read(p)?)?),
                    None => None,
                };
                let text = match other {
                    Some(ComplexSource::File(p)) => Some(read(p)?),
                    _ => None,
                };
                Input::from_texts(group, text.as_deref())?
            }
        };
        if input.group.order() > self.max_order {
            return Err(Error::BoundExceeded { order: input.group.order(), bound: self.max_order });
        }
        if let Some(x) = &input.action {
            let n = x.complex().total_count();
            if n > self.max_simplices {
                return Err(input_error(&format!("{n} simplices exceed --max-simplices {}", self.max_simplices)));
            }
        }
        Ok(input)
    }
}

fn input_error(msg: &str) -> Error {
    Error::Parse { line: 0, msg: msg.to_string() }
}

/// Exit status for an error: 2 for refusals, 1 for bad input.
pub fn exit_status(err: &Error) -> i32 {
    if err.is_refusal() {
        2
    } else {
        1
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    let result = config.resolve().and_then(|input| run_report(&config.command, &input, config.policy));
    match result {
        Ok(report) => Outcome {
            stdout: match config.format {
                Format::Table => report.to_text(),
                Format::Json => report.to_json(),
            },
            stderr: String::new(),
            status: 0,
        },
        Err(e) => failure(config.command.name(), config.format, &e),
    }
}

fn failure(command: &str, format: Format, e: &Error) -> Outcome {
    let stdout = match format {
        Format::Json => serde_json::to_string_pretty(&error_document(command, e)).unwrap() + "\n",
        Format::Table => String::new(),
    };
    Outcome { stdout, stderr: format!("error[{}]: {e}\n", e.name()), status: exit_status(e) }
}

/// Parses arguments (including the program name) and runs.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                Outcome { stdout: text, stderr: String::new(), status }
            } else {
                Outcome { stdout: String::new(), stderr: text, status }
            };
        }
    };
    let format = cli.format;
    match RunConfig::from_cli(cli) {
        Ok(config) => run(&config),
        Err(e) => failure("args", format, &e),
    }
}
