use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use quasi_double::cli_io::{self, AlgebraSpecFile};
use quasi_double::quasi_hopf::VerifyOptions;
use quasi_double::report::Report;
use quasi_double::{Error, Result};

#[derive(Parser)]
#[command(name = "qdouble", about = "Quantum doubles of quasi-Hopf algebras with machine-checked axioms")]
struct Cli {
    /// Residual tolerance for every check.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Lift the dimension gates on the deepest coherence checks.
    #[arg(long, global = true)]
    force_deep_checks: bool,
    /// Seed for randomized spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    ScJson,
}

#[derive(Subcommand)]
enum Cmd {
    /// Quasi-Hopf (and quasitriangular, when R is given) suite on an algebra.
    Verify { algebra: String },
    /// Build D(G) and verify it.
    Double {
        algebra: String,
        /// Write D(G) as structure constants.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// D^ω(G) against the generic double of Fun(G)^ω.
    TwistedDouble { group: String, cocycle: String },
    /// Monodromy relations in D(G).
    Monodromy { algebra: String },
    /// Structure constants of an algebra, or of its double with --double.
    Export {
        object: String,
        #[arg(long, value_enum, default_value = "sc-json")]
        format: Format,
        #[arg(long)]
        double: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

fn emit(rep: &Report) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(rep.to_jsonl().as_bytes());
}

fn export(spec: &AlgebraSpecFile, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(p) => cli_io::write_json(p, spec),
        None => {
            println!("{}", serde_json::to_string_pretty(spec)?);
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    let opts = VerifyOptions { tol: cli.tol, deep: cli.force_deep_checks, seed: cli.seed, ..Default::default() };
    match &cli.cmd {
        Cmd::Verify { algebra } => Ok(cli_io::verify_algebra(&cli_io::load_algebra(algebra)?, opts)),
        Cmd::Double { algebra, export: path } => {
            let (d, rep) = cli_io::double_pipeline(&cli_io::load_algebra(algebra)?, opts);
            if let (Some(p), Some(d)) = (path, d) {
                cli_io::write_json(p, &AlgebraSpecFile::export(&d.qt.qha, Some((&d.qt.r, &d.qt.r_inv))))?;
            }
            Ok(rep)
        }
        Cmd::TwistedDouble { group, cocycle } => {
            let g = cli_io::load_group(group)?;
            let w = cli_io::load_cocycle(cocycle, &g)?;
            Ok(cli_io::twisted_pipeline(&g, &w, opts)?.1)
        }
        Cmd::Monodromy { algebra } => cli_io::monodromy_pipeline(&cli_io::load_algebra(algebra)?, opts),
        Cmd::Export { object, format: Format::ScJson, double, out } => {
            let a = cli_io::load_algebra(object)?;
            let spec = if *double {
                let d = quasi_double::double::build_double(&a.qha, opts)?;
                AlgebraSpecFile::export(&d.qt.qha, Some((&d.qt.r, &d.qt.r_inv)))
            } else {
                AlgebraSpecFile::export(&a.qha, a.qt.as_ref().map(|q| (&q.r, &q.r_inv)))
            };
            export(&spec, out.as_ref())?;
            Ok(Report::new(&spec.name, opts.tol))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = run(&cli);
    match &r {
        Ok(rep) => {
            if !matches!(cli.cmd, Cmd::Export { out: None, .. }) {
                emit(rep);
            }
        }
        Err(e) => eprintln!("qdouble: {e}"),
    }
    let code = cli_io::exit_code(&r);
    if let Err(Error::Precondition(_) | Error::Structural(_)) = &r {
        eprintln!("qdouble: check failure");
    }
    ExitCode::from(code as u8)
}
