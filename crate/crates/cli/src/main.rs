//! `tokenalg`: token graph constructions and checks from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage
//! or input errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tokenalg::orthopoly::PolyKind;
use tokenalg::spectra::SpectralMode;
use tokenalg::{Graph, Rational};

use commands::{InputError, PolySource, Settings};
use report::{checks_csv, InputFingerprint, RunReport, Timer};

#[derive(Parser)]
#[command(name = "tokenalg", version, about = "Token graphs, their spectra and algebras")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Numeric tolerance for approximate spectra.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Spectral arithmetic; auto is exact when spectra are integral.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Numeric,
    Auto,
}

impl From<Mode> for SpectralMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => SpectralMode::Exact,
            Mode::Numeric => SpectralMode::Numeric,
            Mode::Auto => SpectralMode::Auto,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Laplacian,
    Adjacency,
}

impl From<Kind> for PolyKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Laplacian => PolyKind::Laplacian,
            Kind::Adjacency => PolyKind::Adjacency,
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    tokenalg::json::parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Build the k-token graph of the input graph.
    Token {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Include the binomial matrix B.
        #[arg(long)]
        emit_binomial: bool,
    },
    /// Level-wise pairing of the spectra of F_k(G) and F_k(Ḡ).
    Pair {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Predistance polynomials of G, F_k(G), or α·L_k + β·L̄_k.
    Poly {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Laplacian)]
        kind: Kind,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_parser = parse_rational)]
        alpha: Option<Rational>,
        #[arg(long, value_parser = parse_rational)]
        beta: Option<Rational>,
    },
    /// Closed forms for the Johnson graph J(n,k).
    Johnson {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Check the closed forms against direct computation.
        #[arg(long)]
        verify: bool,
    },
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// Decide whether a spanning subgraph of J(n,k) is a token graph F_k(H).
    Recognize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Run every check for a graph and token number.
    VerifyAll {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum AlgebraCommand {
    /// The algebra generated by L_k(G) and L_k(Ḡ).
    Local {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_rational)]
        alpha: Option<Rational>,
        #[arg(long, value_parser = parse_rational)]
        beta: Option<Rational>,
    },
    /// The algebra spanned by the elementary token adjacency matrices.
    Global {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

fn load(path: &PathBuf) -> Result<(Graph, InputFingerprint), InputError> {
    let bytes = std::fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|_| InputError(format!("{}: not UTF-8", path.display())))?;
    let g = Graph::parse(text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok((g, InputFingerprint::new(&path.display().to_string(), &bytes)))
}

fn run(cli: Cli, argv: Vec<String>) -> Result<bool, InputError> {
    let settings = Settings {
        mode: cli.common.mode.into(),
        tol: cli.common.tol,
    };
    if !(settings.tol.is_finite() && settings.tol >= 0.0) {
        return Err(InputError(format!("--tol must be a nonnegative number, got {}", settings.tol)));
    }
    let mut timer = Timer::default();
    let mut fingerprint = None;
    let mut graph = |path: &PathBuf, timer: &mut Timer| -> Result<Graph, InputError> {
        let (g, f) = timer.time("read input", || load(path))?;
        fingerprint = Some(f);
        Ok(g)
    };

    let outcome = match &cli.command {
        Command::Token { input, k, emit_binomial } => {
            let g = graph(input, &mut timer)?;
            commands::token(&g, *k, *emit_binomial, &mut timer)?
        }
        Command::Pair { input, k } => {
            let g = graph(input, &mut timer)?;
            commands::pair(&g, *k, &settings, &mut timer)?
        }
        Command::Poly {
            input,
            kind,
            k,
            alpha,
            beta,
        } => {
            let g = graph(input, &mut timer)?;
            let src = PolySource {
                k: *k,
                alpha: alpha.clone(),
                beta: beta.clone(),
            };
            commands::poly(&g, (*kind).into(), &src, &settings, &mut timer)?
        }
        Command::Johnson { n, k, verify } => commands::johnson(*n, *k, *verify, &settings, &mut timer)?,
        Command::Algebra(AlgebraCommand::Local { input, k, alpha, beta }) => {
            let g = graph(input, &mut timer)?;
            commands::algebra_local(&g, *k, alpha.clone(), beta.clone(), &settings, &mut timer)?
        }
        Command::Algebra(AlgebraCommand::Global { n, k }) => commands::algebra_global(*n, *k, &mut timer)?,
        Command::Recognize { input, n, k } => {
            let s = graph(input, &mut timer)?;
            commands::recognize(&s, *n, *k, &mut timer)?
        }
        Command::VerifyAll { input, k } => {
            let g = graph(input, &mut timer)?;
            commands::verify_all(&g, *k, &settings, &mut timer)?
        }
    };

    let passed = outcome.passed();
    let text = match cli.common.format {
        Format::Csv => outcome.csv.clone().unwrap_or_else(|| checks_csv(&outcome.sections)),
        Format::Json => {
            let report = RunReport::new(argv, fingerprint, outcome, timer);
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
    };
    match &cli.common.out {
        Some(path) => std::fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut argv = vec!["tokenalg".to_string()];
    argv.extend(std::env::args().skip(1));
    match run(cli, argv) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("tokenalg: {e}");
            ExitCode::from(2)
        }
    }
}
