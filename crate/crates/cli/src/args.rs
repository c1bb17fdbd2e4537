use std::io::Read;

use clap::{Parser, Subcommand};

use crate::CliError;

const GRAMMAR: &str = "\
Polynomial grammar (whitespace is insignificant):
  expression  := term (('+' | '-') term)*
  term        := coefficient ('*' factor)* | factor ('*' factor)*
  factor      := variable ('^' integer)?
  variable    := 'x' integer
  coefficient := integer | integer '/' integer
Variables are x0..xn. Over F_p, a/b means a * b^-1 mod p.

Fixtures (--fixture NAME):
  fermat                       x0^d + ... + xn^d            (needs --n, --d)
  cyclic-fermat                Fermat plus cyclic terms     (needs --n, --d)
  cubic-threefold              x0^3 + x1^3 + x0*x1^2 + x1*x2^2 + x3^3 + x2*x4^2
  cubic-threefold-normal-form  x0^3 + x0*(a1*x1^2 + ... + a4*x4^2) + g
                               (char 0; --a a1,a2,a3,a4 and --g cubic in x1..x4)

Exit status: 0 on success (certified / smooth), 1 on a negative or
inconclusive verdict, 2 on invalid input.";

#[derive(Debug, Parser)]
#[command(
    name = "hypersection",
    version,
    about = "Certify maximal variation of hyperplane sections of projective hypersurfaces",
    after_help = GRAMMAR
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Characteristic of the coefficient field: 0 for Q or a prime p
    #[arg(long = "char", global = true, value_name = "INT")]
    pub characteristic: Option<u64>,

    /// Polynomial text, or `-` to read it from stdin
    #[arg(
        long = "f",
        global = true,
        value_name = "POLY",
        allow_hyphen_values = true
    )]
    pub f: Option<String>,

    /// Named fixture polynomial instead of --f
    #[arg(long, global = true, value_name = "NAME")]
    pub fixture: Option<String>,

    /// Ambient dimension n (the polynomial has n + 1 variables)
    #[arg(long = "n", global = true, value_name = "INT")]
    pub n: Option<usize>,

    /// Degree d
    #[arg(long = "d", global = true, value_name = "INT")]
    pub d: Option<u32>,

    /// Coefficients a1,a2,a3,a4 for cubic-threefold-normal-form
    #[arg(
        long = "a",
        global = true,
        value_name = "SCALARS",
        value_delimiter = ',',
        allow_hyphen_values = true
    )]
    pub a: Vec<String>,

    /// Cubic form in x1..x4 for cubic-threefold-normal-form
    #[arg(
        long = "g",
        global = true,
        value_name = "POLY",
        allow_hyphen_values = true
    )]
    pub g: Option<String>,

    /// Hyperplane as a linear form (repeatable for survey)
    #[arg(
        long = "h",
        global = true,
        value_name = "LINEAR_FORM",
        allow_hyphen_values = true
    )]
    pub h: Vec<String>,

    /// Seed for the random phase of certify
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Number of hyperplanes certify may try
    #[arg(long, global = true, default_value_t = 64)]
    pub budget: usize,

    /// Degree cap for smoothness tests (default (n+2)(d-1)-n)
    #[arg(long = "t-max", global = true, value_name = "INT")]
    pub t_max: Option<u32>,

    /// Emit a JSON report on stdout
    #[arg(long, global = true)]
    pub json: bool,

    /// Include wall-clock timing in the report
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Decide whether the hypersurface is smooth
    Smooth,
    /// Evaluate the first-order criterion at one hyperplane (default x0)
    Criterion,
    /// Search for a hyperplane certifying maximal variation
    Certify,
    /// Evaluate the criterion at several hyperplanes (default: coordinate ones)
    Survey,
    /// Moduli dimension m(d, n) = C(n+d, d) - (n+1)^2
    ModuliDim,
    /// Print a fixture polynomial
    Fixture {
        /// Fixture name (alternatively --fixture)
        name: Option<String>,
    },
    /// Parse a polynomial and print it in canonical form
    Parse,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Smooth => "smooth",
            Command::Criterion => "criterion",
            Command::Certify => "certify",
            Command::Survey => "survey",
            Command::ModuliDim => "moduli-dim",
            Command::Fixture { .. } => "fixture",
            Command::Parse => "parse",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolySource {
    Inline(String),
    Fixture(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Text,
    Json,
}

/// A validated command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub command: Command,
    pub characteristic: Option<u64>,
    pub source: Option<PolySource>,
    pub n: Option<usize>,
    pub d: Option<u32>,
    pub a: Vec<String>,
    pub g: Option<String>,
    pub hyperplanes: Vec<String>,
    pub seed: u64,
    pub budget: usize,
    pub t_max: Option<u32>,
    pub mode: OutputMode,
    pub timing: bool,
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::usage(message)
}

/// Parses and validates `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

impl Request {
    pub fn from_cli(cli: Cli) -> Result<Request, CliError> {
        let mode = if cli.json {
            OutputMode::Json
        } else {
            OutputMode::Text
        };
        let source = match (cli.f, cli.fixture.clone()) {
            (Some(_), Some(_)) => return Err(usage("give exactly one of --f and --fixture")),
            (Some(text), None) => Some(PolySource::Inline(text)),
            (None, Some(name)) => Some(PolySource::Fixture(name)),
            (None, None) => None,
        };
        let source = match (&cli.command, source) {
            (Command::Fixture { name: Some(_) }, Some(_)) => {
                return Err(usage(
                    "fixture takes its name either positionally or via --fixture",
                ))
            }
            (Command::Fixture { name: Some(name) }, None) => {
                Some(PolySource::Fixture(name.clone()))
            }
            (Command::Fixture { .. }, Some(PolySource::Inline(_))) => {
                return Err(usage("fixture does not accept --f"))
            }
            (_, source) => source,
        };
        let needs_poly = !matches!(cli.command, Command::ModuliDim);
        if needs_poly && source.is_none() {
            return Err(usage("missing polynomial: give --f or --fixture"));
        }
        if needs_poly && cli.characteristic.is_none() {
            return Err(usage("missing --char"));
        }
        if matches!(cli.command, Command::ModuliDim) && (cli.n.is_none() || cli.d.is_none()) {
            return Err(usage("moduli-dim needs --d and --n"));
        }
        if matches!(cli.command, Command::Criterion) && cli.h.len() > 1 {
            return Err(usage("criterion takes a single --h"));
        }
        Ok(Request {
            command: cli.command,
            characteristic: cli.characteristic,
            source,
            n: cli.n,
            d: cli.d,
            a: cli.a,
            g: cli.g,
            hyperplanes: cli.h,
            seed: cli.seed,
            budget: cli.budget,
            t_max: cli.t_max,
            mode,
            timing: cli.timing,
        })
    }

    /// Inline polynomial text, reading stdin for `-`.
    pub fn inline_text(text: &str) -> Result<String, CliError> {
        if text != "-" {
            return Ok(text.to_string());
        }
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    }
}

/// Number of variables implied by the highest `x<i>` in `text`.
pub fn infer_nvars(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut max = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let start = i + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            if let Ok(idx) = text[start..end].parse::<usize>() {
                max = max.max(idx + 1);
            }
            i = end.max(i + 1);
        } else {
            i += 1;
        }
    }
    max.max(1)
}
