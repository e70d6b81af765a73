//! `soddy`: Cayley-Menger determinants, Descartes/Soddy-Gosset curvatures,
//! proof checks and Apollonian gaskets from the command line.
//!
//! Results go to stdout as `{"ok", "result", "error"}` JSON; diagnostics go
//! to stderr. Exit status is 0 on success, 1 for invalid input and 2 when a
//! well-formed request has no answer.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use crate::commands::Failure;
use crate::input::Mode;

#[derive(Parser)]
#[command(name = "soddy", version, about = "Cayley-Menger determinants and tangent sphere configurations")]
struct Cli {
    /// Arithmetic: exact rationals (default for algebraic commands) or f64
    /// (default and only option for embed and gasket).
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
    /// JSON request file (`-` for stdin). Flags override its fields.
    #[arg(long, global = true, value_name = "FILE")]
    request: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cayley-Menger determinant of a squared-distance matrix.
    CmDet(MatrixArgs),
    /// Squared content of the simplex with the given squared distances.
    Volume(MatrixArgs),
    /// (Σk)² - nΣk² for n + 2 curvatures.
    Residual(CurvatureArgs),
    /// Both roots for the missing curvature given n + 1 of them.
    Solve(CurvatureArgs),
    /// Both sides of det(CM) = (-1)^n 2^(2n+1) (Πr)² residual.
    IdentityCheck(RadiiArgs),
    /// Runs the matrix identity checks on given or random radii.
    VerifyProof(ProofArgs),
    /// Centers of n + 2 mutually tangent spheres with the given radii.
    Embed(EmbedArgs),
    /// Apollonian gasket from three mutually tangent circles.
    Gasket(GasketArgs),
}

#[derive(Args)]
pub struct MatrixArgs {
    /// Rows separated by `;`, entries by `,`: "0,1;1,0".
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<String>,
}

#[derive(Args)]
pub struct CurvatureArgs {
    /// Sphere dimension.
    #[arg(long, visible_alias = "dim")]
    pub n: Option<usize>,
    /// Comma-separated rationals: -1,2,2,3 or 1/2,0.25.
    #[arg(long, allow_hyphen_values = true)]
    pub curvatures: Option<String>,
}

#[derive(Args)]
pub struct RadiiArgs {
    #[arg(long, visible_alias = "dim")]
    pub n: Option<usize>,
    /// Comma-separated signed radii; negative for an enclosing sphere.
    #[arg(long, allow_hyphen_values = true)]
    pub radii: Option<String>,
    /// Accept any number of negative radii.
    #[arg(long)]
    pub lenient: bool,
}

#[derive(Args)]
pub struct ProofArgs {
    #[arg(long, visible_alias = "dim")]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "random")]
    pub radii: Option<String>,
    /// Check this many random radius tuples (and as many random simplices).
    #[arg(long, value_name = "N")]
    pub random: Option<usize>,
    /// Seed for --random.
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
    #[arg(long)]
    pub lenient: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args)]
pub struct EmbedArgs {
    #[command(flatten)]
    pub radii: RadiiArgs,
    /// Relative eigenvalue tolerance.
    #[arg(long, default_value_t = soddy_core::embedding::DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Args)]
pub struct GasketArgs {
    /// Three curvatures k1,k2,k3; at most one negative (enclosing).
    #[arg(long, allow_hyphen_values = true)]
    pub seed: Option<String>,
    #[arg(long)]
    pub depth: Option<usize>,
    /// Write an SVG drawing here.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<String>,
    /// Write every circle as JSON here; `-` embeds them in the response.
    #[arg(long, value_name = "PATH")]
    pub json: Option<String>,
    /// SVG width in pixels.
    #[arg(long, default_value_t = 800)]
    pub width: u32,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: String,
    message: String,
}

#[derive(Serialize)]
struct Response {
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorBody>,
}

fn emit(response: &Response) {
    println!("{}", serde_json::to_string(response).expect("responses are plain JSON"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            if code != 0 {
                emit(&Response {
                    ok: false,
                    result: None,
                    error: Some(ErrorBody { kind: "usage".into(), message: e.kind().to_string() }),
                });
            }
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(commands::Output::Json(result)) => {
            emit(&Response { ok: true, result: Some(result), error: None });
            ExitCode::SUCCESS
        }
        Ok(commands::Output::Text(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("soddy: {}", failure.message());
            match &failure {
                Failure::ProofFailed { text: Some(text), .. } => print!("{text}"),
                _ => emit(&Response {
                    ok: false,
                    result: failure.partial_result(),
                    error: Some(ErrorBody { kind: failure.kind().into(), message: failure.message() }),
                }),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
