//! `hstarcat`: certify H*-algebras, unitary multifusion data and their completions from JSON files.

mod alg;
mod context;
mod deligne;
mod fusion;
mod h3;
mod hstar;
mod report;

use clap::{Args, Parser, Subcommand};
use context::Ctx;
use report::{Body, Fail, RunReport, Verdict};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "hstarcat", version, about = "Certify H*-algebras, unitary multifusion data and their completions")]
struct Cli {
    /// Absolute and relative acceptance threshold for every residual.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Unitary multifusion category data.
    #[command(subcommand)]
    Fusion(FusionCmd),
    /// Algebra objects inside a multifusion category.
    #[command(subcommand)]
    Alg(AlgCmd),
    /// Relative Deligne products in the ladder model.
    #[command(subcommand)]
    Deligne(DeligneCmd),
    /// Presentations, monad completions and the weight comparison.
    #[command(subcommand)]
    H3(H3Cmd),
    /// Multimatrix H*-algebras.
    #[command(subcommand)]
    Hstar(HstarCmd),
}

#[derive(Subcommand, Debug)]
enum FusionCmd {
    /// Pentagon, unitarity, fusion-ring and duality checks.
    Validate { file: String },
    /// Unitary dual functor for a spherical weight.
    Udf {
        file: String,
        /// One positive weight per unit summand, comma separated.
        #[arg(long, value_delimiter = ',')]
        psi: Option<Vec<f64>>,
    },
}

#[derive(Args, Debug)]
struct AlgFiles {
    /// `[category.json] algebra.json`; the category defaults to the one named in the algebra file.
    #[arg(num_args = 1..=2, required = true)]
    files: Vec<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum AlgCmd {
    /// Unit, associativity, Frobenius, separability and standardness.
    Verify(AlgFiles),
    /// Rescale to a standard Q-system and re-verify.
    Standardize(AlgFiles),
    /// Simple right modules with their trace.
    Modcat(AlgFiles),
    /// Internal end of the regular module and its comparison with the algebra.
    Intend(AlgFiles),
}

#[derive(Subcommand, Debug)]
enum DeligneCmd {
    /// Ladder category of `M ⊠_C N` for algebras `M`, `N` over `C`.
    Check {
        m: PathBuf,
        c: String,
        n: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum H3Cmd {
    /// Hom 2-Hilbert spaces, Hilbert direct sums and monad completion of a presentation.
    Complete { file: PathBuf },
    /// Split a monad map `A → B` through `B` as an `A`-`B` bimodule.
    SplitMonad { file: PathBuf },
    /// Compare both weights at the first unit summand, and check uniqueness of the unitary adjoint functor.
    TheoremB {
        file: String,
        #[arg(long, value_delimiter = ',')]
        psi: Option<Vec<f64>>,
    },
}

#[derive(Subcommand, Debug)]
enum HstarCmd {
    /// Traciality and positivity of the given trace.
    Verify { file: PathBuf },
    /// The GNS module and the simple modules with their dimensions.
    Gns { file: PathBuf },
}

fn dispatch(cli: &Cli, ctx: &mut Ctx, body: &mut Body) -> Result<(), Fail> {
    if !(cli.tol >= 0.0 && cli.tol.is_finite()) {
        return Err(Fail::Input(format!("--tol must be a nonnegative number, got {}", cli.tol)));
    }
    match &cli.command {
        Command::Fusion(FusionCmd::Validate { file }) => fusion::validate(ctx, body, file),
        Command::Fusion(FusionCmd::Udf { file, psi }) => fusion::udf(ctx, body, file, psi.as_deref()),
        Command::Alg(cmd) => {
            let (files, run): (&AlgFiles, alg::Run) = match cmd {
                AlgCmd::Verify(f) => (f, alg::verify),
                AlgCmd::Standardize(f) => (f, alg::standardize),
                AlgCmd::Modcat(f) => (f, alg::modcat),
                AlgCmd::Intend(f) => (f, alg::intend),
            };
            let a = alg::load(ctx, &files.files)?;
            run(ctx, body, &a)
        }
        Command::Deligne(DeligneCmd::Check { m, c, n }) => deligne::check(ctx, body, m, c, n.as_deref()),
        Command::H3(H3Cmd::Complete { file }) => h3::complete(ctx, body, file),
        Command::H3(H3Cmd::SplitMonad { file }) => h3::split(ctx, body, file),
        Command::H3(H3Cmd::TheoremB { file, psi }) => h3::theorem_b(ctx, body, file, psi.as_deref()),
        Command::Hstar(HstarCmd::Verify { file }) => hstar::verify(ctx, body, file),
        Command::Hstar(HstarCmd::Gns { file }) => hstar::gns(ctx, body, file),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut ctx = Ctx::new(cli.tol.max(0.0), cli.seed);
    let mut body = Body::default();
    let outcome = dispatch(&cli, &mut ctx, &mut body);
    let report = RunReport::finish(args[1..].to_vec(), ctx, body, outcome);
    if let Some(msg) = &report.message {
        eprintln!("hstarcat: {msg}");
    }
    let text = report.to_json();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("hstarcat: cannot write `{}`: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(match report.verdict {
        Verdict::Accept => 0,
        Verdict::Reject => 1,
        Verdict::Error => 2,
    })
}
