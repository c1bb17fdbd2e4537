//! Command-line front end for the `hypersection` library.
//!
//! [`main_with`] is the whole program: it parses arguments, dispatches to the
//! library and writes either a human summary or a versioned JSON report.

pub mod args;
mod report;

use std::io::Write;
use std::time::Instant;

use hypersection::{
    certify_max_variation, criterion_kernel_with, fixtures, jacobian, moduli_dim,
    sections_exceed_moduli, CriterionOptions, FieldSpec, Hyperplane, Polynomial, Scalar,
    ScanStrategy, Verdict,
};
use serde::Serialize;

pub use args::{parse_args, Cli, Command, OutputMode, PolySource, Request};
pub use report::{
    CertifyPayload, CriterionPayload, FixturePayload, ModuliPayload, ParsePayload, Payload,
    SmoothPayload, SurveyPayload, TrialPayload,
};

/// JSON schema version stamped on every report.
pub const SCHEMA_VERSION: &str = "1";

/// Exit status for invalid input of any kind.
pub const EXIT_INPUT_ERROR: i32 = 2;

/// A failure reported to the user, with a stable machine-readable code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliError {
    pub code: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: "usage_error".into(),
            message: message.into(),
            position: None,
        }
    }
}

impl From<hypersection::Error> for CliError {
    fn from(e: hypersection::Error) -> Self {
        CliError {
            code: e.code().into(),
            message: e.to_string(),
            position: e.position(),
        }
    }
}

/// A successful run: the payload and the exit status it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub payload: Payload,
    pub exit_code: i32,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: &'static str,
    command: &'static str,
    char: Option<u64>,
    #[serde(flatten)]
    payload: &'a Payload,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u64>,
}

#[derive(Serialize)]
struct ErrorEnvelope<'a> {
    schema_version: &'static str,
    command: Option<&'static str>,
    error: &'a CliError,
}

fn field_of(request: &Request) -> Result<FieldSpec, CliError> {
    let p = request
        .characteristic
        .ok_or_else(|| CliError::usage("missing --char"))?;
    Ok(FieldSpec::new(p)?)
}

fn need<T: Copy>(value: Option<T>, flag: &str, what: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::usage(format!("{what} needs {flag}")))
}

/// The polynomial named by the request, with its canonical source text.
fn load_polynomial(request: &Request, field: FieldSpec) -> Result<Polynomial, CliError> {
    match request.source.as_ref() {
        Some(PolySource::Inline(text)) => {
            let text = Request::inline_text(text)?;
            let nvars = match request.n {
                Some(n) => n + 1,
                None => args::infer_nvars(&text),
            };
            Ok(Polynomial::parse(&text, nvars, field)?)
        }
        Some(PolySource::Fixture(name)) => build_fixture(name, request, field),
        None => Err(CliError::usage("missing polynomial: give --f or --fixture")),
    }
}

fn build_fixture(name: &str, request: &Request, field: FieldSpec) -> Result<Polynomial, CliError> {
    match name {
        "fermat" => {
            let n = need(request.n, "--n", "fermat")?;
            let d = need(request.d, "--d", "fermat")?;
            Ok(fixtures::fermat(n, d, field))
        }
        "cyclic-fermat" => {
            let n = need(request.n, "--n", "cyclic-fermat")?;
            let d = need(request.d, "--d", "cyclic-fermat")?;
            Ok(fixtures::cyclic_fermat(n, d, field)?)
        }
        "cubic-threefold" => Ok(fixtures::cubic_threefold_example(field)),
        "cubic-threefold-normal-form" => {
            if request.a.len() != 4 {
                return Err(CliError::usage(
                    "cubic-threefold-normal-form needs --a with exactly four scalars",
                ));
            }
            let a: Vec<Scalar> = request
                .a
                .iter()
                .map(|s| field.parse_scalar(s.trim()))
                .collect::<Result<_, _>>()?;
            let a: [Scalar; 4] = a.try_into().expect("four scalars");
            let g_text = request
                .g
                .as_deref()
                .ok_or_else(|| CliError::usage("cubic-threefold-normal-form needs --g"))?;
            let g = Polynomial::parse(g_text, 5, field)?;
            if g.terms().any(|(m, _)| m.exponents()[0] > 0) {
                return Err(CliError::usage("--g must be a cubic in x1..x4 only"));
            }
            let g = g.set_var_zero(0)?;
            Ok(fixtures::cubic_threefold_normal_form(&a, &g, field)?)
        }
        other => Err(CliError::usage(format!(
            "unknown fixture `{other}` (expected fermat, cyclic-fermat, cubic-threefold or cubic-threefold-normal-form)"
        ))),
    }
}

fn hyperplane(text: &str, nvars: usize, field: FieldSpec) -> Result<Hyperplane, CliError> {
    Ok(Hyperplane::parse(text, nvars, field)?)
}

/// Executes a validated request.
pub fn run(request: &Request) -> Result<Outcome, CliError> {
    let ok = |payload| {
        Ok(Outcome {
            payload,
            exit_code: 0,
        })
    };
    match &request.command {
        Command::ModuliDim => {
            let d = need(request.d, "--d", "moduli-dim")?;
            let n = need(request.n, "--n", "moduli-dim")?;
            let n = u32::try_from(n).map_err(|_| CliError::usage("--n is too large"))?;
            let m = moduli_dim(d, n)?;
            let exceed = sections_exceed_moduli(d, n)?;
            ok(Payload::ModuliDim(ModuliPayload {
                d,
                n,
                m,
                sections_exceed_moduli: exceed,
            }))
        }
        Command::Fixture { .. } => {
            let field = field_of(request)?;
            let name = match &request.source {
                Some(PolySource::Fixture(name)) => name.clone(),
                _ => return Err(CliError::usage("fixture needs a name")),
            };
            let f = build_fixture(&name, request, field)?;
            ok(Payload::Fixture(FixturePayload::new(name, &f)))
        }
        Command::Parse => {
            let field = field_of(request)?;
            let f = load_polynomial(request, field)?;
            ok(Payload::Parse(ParsePayload::new(&f)))
        }
        Command::Smooth => {
            let field = field_of(request)?;
            let f = load_polynomial(request, field)?;
            let d = f
                .homogeneous_degree()
                .ok_or(hypersection::Error::NotHomogeneous)?;
            let cap = request
                .t_max
                .unwrap_or_else(|| jacobian::smoothness_cap(f.nvars(), d));
            let smooth = jacobian::is_smooth_with_cap(&f, Some(cap))?;
            Ok(Outcome {
                payload: Payload::Smooth(SmoothPayload {
                    nvars: f.nvars(),
                    degree: d,
                    t_max: cap,
                    smooth,
                }),
                exit_code: if smooth { 0 } else { 1 },
            })
        }
        Command::Criterion => {
            let field = field_of(request)?;
            let f = load_polynomial(request, field)?;
            let text = request
                .hyperplanes
                .first()
                .map(String::as_str)
                .unwrap_or("x0");
            let h = hyperplane(text, f.nvars(), field)?;
            let options = CriterionOptions {
                smoothness_cap: request.t_max,
            };
            let report = criterion_kernel_with(&f, &h, &options)?;
            ok(Payload::Criterion(CriterionPayload::new(&report)))
        }
        Command::Survey => {
            let field = field_of(request)?;
            let f = load_polynomial(request, field)?;
            let hyperplanes: Vec<Hyperplane> = if request.hyperplanes.is_empty() {
                (0..f.nvars())
                    .map(|i| Hyperplane::coordinate(field, f.nvars(), i))
                    .collect()
            } else {
                request
                    .hyperplanes
                    .iter()
                    .map(|t| hyperplane(t, f.nvars(), field))
                    .collect::<Result<_, _>>()?
            };
            let options = CriterionOptions {
                smoothness_cap: request.t_max,
            };
            let reports = hyperplanes
                .iter()
                .map(|h| criterion_kernel_with(&f, h, &options))
                .collect::<Result<Vec<_>, _>>()?;
            ok(Payload::Survey(SurveyPayload::new(&reports)))
        }
        Command::Certify => {
            let field = field_of(request)?;
            let f = load_polynomial(request, field)?;
            let strategy = ScanStrategy {
                seed: request.seed,
                budget: request.budget,
                smoothness_cap: request.t_max,
            };
            let report = certify_max_variation(&f, &strategy)?;
            let exit_code = match report.verdict {
                Verdict::Certified => 0,
                Verdict::Inconclusive => 1,
            };
            Ok(Outcome {
                payload: Payload::Certify(CertifyPayload::new(&report)),
                exit_code,
            })
        }
    }
}

/// Serializes a successful report; `elapsed_ms` appears only when timing was
/// requested, so default output is byte-for-byte reproducible.
pub fn render_json(request: &Request, payload: &Payload, elapsed_ms: Option<u64>) -> String {
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION,
        command: request.command.name(),
        char: request.characteristic,
        payload,
        elapsed_ms,
    };
    serde_json::to_string(&envelope).expect("reports serialize")
}

/// Serializes an error object.
pub fn render_json_error(command: Option<&Command>, error: &CliError) -> String {
    let envelope = ErrorEnvelope {
        schema_version: SCHEMA_VERSION,
        command: command.map(Command::name),
        error,
    };
    serde_json::to_string(&envelope).expect("errors serialize")
}

fn wants_json(argv: &[String]) -> bool {
    argv.iter().skip(1).any(|a| a == "--json")
}

/// Runs the program on `argv` and returns the process exit status.
pub fn main_with(argv: Vec<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let json = wants_json(&argv);
    let cli = match parse_args(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let message = e.render().to_string();
            let _ = write!(stderr, "{message}");
            if json {
                let first = message.lines().next().unwrap_or("invalid arguments");
                let first = first.trim_start_matches("error: ").to_string();
                let _ = writeln!(
                    stdout,
                    "{}",
                    render_json_error(None, &CliError::usage(first))
                );
            }
            return EXIT_INPUT_ERROR;
        }
    };
    let command = cli.command.clone();
    let request = match Request::from_cli(cli) {
        Ok(r) => r,
        Err(e) => return report_error(Some(&command), &e, json, stdout, stderr),
    };
    let start = Instant::now();
    let outcome = match run(&request) {
        Ok(o) => o,
        Err(e) => return report_error(Some(&command), &e, json, stdout, stderr),
    };
    let elapsed = request.timing.then(|| start.elapsed().as_millis() as u64);
    match request.mode {
        OutputMode::Json => {
            let _ = writeln!(
                stdout,
                "{}",
                render_json(&request, &outcome.payload, elapsed)
            );
        }
        OutputMode::Text => {
            let _ = write!(stdout, "{}", outcome.payload.to_text());
            if let Some(ms) = elapsed {
                let _ = writeln!(stdout, "elapsed: {ms} ms");
            }
        }
    }
    outcome.exit_code
}

fn report_error(
    command: Option<&Command>,
    error: &CliError,
    json: bool,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let _ = writeln!(stderr, "error[{}]: {}", error.code, error.message);
    if json {
        let _ = writeln!(stdout, "{}", render_json_error(command, error));
    }
    EXIT_INPUT_ERROR
}
