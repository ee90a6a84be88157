//! Command-line front end: `check`, `verify`, `extract`, `catalog`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cubic_contact::cubic::SymCubic;
use cubic_contact::error::Error;
use cubic_contact::jordan;
use cubic_contact::nilpotent::{dim_report, NilpotentAlgebra};
use cubic_contact::verify::{extraction_report, verify_cubic, RunConfig, Suite};

#[derive(Parser)]
#[command(name = "cubic-contact", version, about = "Exact checks for contact manifolds built from cubic forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report p, the rank of the polarization and dim X_c for a tensor file.
    Check { file: PathBuf },
    /// Run the property checks on a tensor file.
    Verify {
        file: PathBuf,
        /// all, jacobi, group, contact, tau or moment
        #[arg(default_value = "all")]
        suite: String,
        #[command(flatten)]
        run: RunArgs,
        /// Include wall-clock timings (makes reports non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Extract the cubic of an exceptional Lie algebra, e.g. `--type E6`.
    Extract {
        #[arg(long = "type")]
        type_label: String,
        /// Rank, when `--type` is a bare letter.
        #[arg(long)]
        rank: Option<usize>,
        /// Catalog entry to compare the extracted cubic with.
        #[arg(long)]
        compare: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// The built-in catalog of cubic norms.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    /// Write the tensor file of a catalog entry.
    Emit {
        name: String,
        #[arg(long, env = "CUBIC_CONTACT_OUT")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, value_delimiter = ',', default_value = "5,7,11,13")]
    primes: Vec<u64>,
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    #[arg(long)]
    long_run: bool,
    /// Output directory; defaults to $CUBIC_CONTACT_OUT when set.
    #[arg(long, env = "CUBIC_CONTACT_OUT")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Md => "md",
        }
    }
}

impl RunArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            seed: self.seed,
            samples: self.samples,
            primes: self.primes.clone(),
            probe_budget: self.budget,
            long_run: self.long_run,
        }
    }
}

/// Malformed input or arguments.
const EXIT_INPUT: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn read_cubic(path: &Path) -> Result<SymCubic> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    SymCubic::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_out(dir: &Path, name: &str, body: &str) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check { file } => {
            let t = read_cubic(&file)?;
            let alg = NilpotentAlgebra::new(t.clone());
            let d = dim_report(alg.p());
            println!("cubic-hash: {}", t.content_hash());
            println!("p = {}", alg.p());
            println!("b_rank = {}", alg.b_rank());
            println!("assumption: {}", if alg.assumption_ok() { "holds" } else { "fails" });
            println!("dim n = {}", d.dim_n);
            println!("dim X_c = {}", d.dim_formula);
            Ok(if alg.assumption_ok() { 0 } else { 1 })
        }
        Command::Verify { file, suite, run, timings } => {
            let t = read_cubic(&file)?;
            let suite: Suite = suite.parse()?;
            let cfg = run.config();
            let report = verify_cubic(&t, suite, &cfg, timings)?;
            let body = match run.format {
                Format::Json => report.to_json(),
                Format::Md => report.to_markdown(),
            };
            print!("{body}");
            if let Some(dir) = &run.out {
                let name = format!("verify-{}-{}.{}", &report.cubic_hash[..12], suite, run.format.ext());
                write_out(dir, &name, &body)?;
            }
            if let Some(f) = report.failures().next() {
                let ce = f.counterexample.as_ref().unwrap_or(&f.detail);
                eprintln!("FAIL {}/{}: {}", f.suite, f.name, serde_json::to_string(ce)?);
                return Ok(1);
            }
            Ok(0)
        }
        Command::Extract { type_label, rank, compare, run } => {
            let label = match rank {
                Some(r) => format!("{type_label}{r}"),
                None => type_label,
            };
            let cfg = run.config();
            cfg.validate()?;
            let report = match extraction_report(&label, &cfg, compare.as_deref()) {
                Ok(r) => r,
                Err(e @ (Error::AlphaNotUnique { .. } | Error::DegeneratePairing(_) | Error::UnsupportedType(_))) => {
                    eprintln!("rejected: {e}");
                    return Ok(1);
                }
                Err(e) => return Err(e.into()),
            };
            let body = match run.format {
                Format::Json => report.to_json(),
                Format::Md => report.to_markdown(),
            };
            print!("{body}");
            if let Some(dir) = &run.out {
                let stem = report.type_name.to_lowercase();
                write_out(dir, &format!("{stem}.cubic.json"), &(report.cubic.to_json_pretty() + "\n"))?;
                write_out(dir, &format!("{stem}.extraction.{}", run.format.ext()), &body)?;
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Catalog { action: CatalogAction::List } => {
            for e in jordan::catalog_list() {
                println!("{:<8} p={:<3} {:<14} {}", e.name, e.p, e.expected.probe, e.description);
            }
            Ok(0)
        }
        Command::Catalog { action: CatalogAction::Emit { name, out } } => {
            let t = jordan::build(&name)?;
            let body = t.to_json_pretty() + "\n";
            match out {
                Some(dir) => write_out(&dir, &format!("{}.json", name.replace(':', "-")), &body)?,
                None => print!("{body}"),
            }
            Ok(0)
        }
    }
}
