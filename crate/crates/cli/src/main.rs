//! `fano-wci`: per-family reports and table verification.
//!
//! Exit status is 0 on success, 1 when verification finds a mismatch and 2
//! on usage or I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fano_wci::catalog::{load_catalog, Catalog};
use fano_wci::hypersurface::XPrimeModel;
use fano_wci::links::involution_inventory;
use fano_wci::report::{analyze, verify_tables};
use fano_wci::singularities::basket_entries;

#[derive(Parser)]
#[command(
    name = "fano-wci",
    version,
    about = "Exact numerics for Fano 3-fold weighted complete intersections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Md,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exclusion report of one family.
    Analyze {
        #[arg(long)]
        family: u32,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Recompute every golden field of a catalog.
    VerifyTables {
        /// Catalog file; defaults to $FANO_WCI_CATALOG, then the shipped catalog.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Print the link data and untwisting tags of one family.
    Links {
        #[arg(long)]
        family: u32,
    },
    /// Print the basket of the counterpart of one family.
    Basket {
        #[arg(long)]
        family: u32,
    },
}

fn run(cli: Cli) -> Result<ExitCode, fano_wci::Error> {
    match cli.command {
        Command::Analyze { family, format } => {
            let report = analyze(&Catalog::from_env()?, family)?;
            match format {
                Format::Md => print!("{}", report.to_markdown()),
                Format::Json => print!("{}", report.to_json()),
            }
        }
        Command::VerifyTables { catalog } => {
            let catalog = match catalog {
                Some(path) => load_catalog(&path)?,
                None => Catalog::from_env()?,
            };
            let mismatches = verify_tables(&catalog);
            if !mismatches.is_empty() {
                for m in &mismatches {
                    println!("{m}");
                }
                println!("{} mismatch(es)", mismatches.len());
                return Ok(ExitCode::from(1));
            }
            println!("all {} families match", catalog.families().len());
        }
        Command::Links { family } => {
            let catalog = Catalog::from_env()?;
            let f = catalog.family(family)?;
            let model = XPrimeModel::new(&f.gprime)?;
            let link = &model.link;
            println!("{}  <->  {}", f.g, f.gprime);
            println!(
                "b = {}, Z = Z_{} ⊂ {}",
                link.b, link.z_degree, link.z_weights
            );
            for t in involution_inventory(f)? {
                if t.condition.is_empty() {
                    println!("{}: {}", t.point, t.tag);
                } else {
                    println!("{} [{}]: {}", t.point, t.condition, t.tag);
                }
            }
        }
        Command::Basket { family } => {
            let catalog = Catalog::from_env()?;
            let model = XPrimeModel::new(&catalog.family(family)?.gprime)?;
            for e in basket_entries(&model)? {
                if e.count == 1 {
                    println!("{} = {}", e.locus, e.kind);
                } else {
                    println!("{} = {} × {}", e.locus, e.count, e.kind);
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
