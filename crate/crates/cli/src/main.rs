//! `drinfeld`: zoo validation, fusion tables, torus counts, MatVec tables and
//! oracle suites, emitted as versioned JSON reports or aligned text.

mod report;
mod suites;

use clap::{Parser, Subcommand, ValueEnum};
use drinfeld_core::zoo::Zoo;
use report::{Format, Report};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "drinfeld", version, about = "Exact computations with Drinfeld doubles of finite groups")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Load groups and irreps from a zoo JSON file instead of the built-in zoo.
    #[arg(long, global = true)]
    zoo: Option<std::path::PathBuf>,
    /// Include wall-clock timing in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProductArg {
    Conv,
    Red,
    Redz,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Q,
    Super,
    Pivotal,
    Sliding,
    Uequiv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conjugacy classes, centralizers, commuting pairs and D(G) summary.
    GroupInfo {
        name: Option<String>,
        #[arg(long)]
        group: Option<String>,
    },
    /// Fusion multiplicities N_ab^c of the simple D(G)-modules.
    Fusion {
        name: Option<String>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long, value_enum, default_value_t = ProductArg::Conv)]
        product: ProductArg,
    },
    /// Three independent counts of simple modules of the torus algebra.
    Torus {
        name: Option<String>,
        #[arg(long)]
        group: Option<String>,
    },
    /// Reduced-product tables and deformed dimensions for a fusion label set
    /// (a JSON file, or one of: fibonacci, ising, rep_s3).
    Matvec { labels: String },
    /// Run a named diagram-oracle suite.
    Oracle {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Validate the zoo and print it as JSON.
    Zoo,
}

fn pick_group(name: Option<String>, group: Option<String>) -> Result<String, String> {
    match (name, group) {
        (Some(a), Some(b)) if a != b => Err(format!("conflicting group names {a} and {b}")),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Err("a group name is required".into()),
    }
}

fn load_zoo(path: &Option<std::path::PathBuf>) -> Result<(Zoo, String), String> {
    match path {
        None => {
            let z = Zoo::builtin();
            let text = z.to_json();
            Ok((z, text))
        }
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
            let z = Zoo::from_json(&text).map_err(|e| e.to_string())?;
            Ok((z, text))
        }
    }
}

fn run(cli: &Cli) -> Result<Report, String> {
    let (zoo, zoo_text) = load_zoo(&cli.zoo)?;
    match &cli.command {
        Command::GroupInfo { name, group } => {
            suites::group_info(&zoo, &zoo_text, &pick_group(name.clone(), group.clone())?)
        }
        Command::Fusion { name, group, product } => {
            suites::fusion(&zoo, &zoo_text, &pick_group(name.clone(), group.clone())?, *product)
        }
        Command::Torus { name, group } => suites::torus(&zoo, &zoo_text, &pick_group(name.clone(), group.clone())?),
        Command::Matvec { labels } => suites::matvec(labels),
        Command::Oracle { suite, group, trials, seed } => {
            let g = group.clone().unwrap_or_else(|| "S3".into());
            suites::oracle(&zoo, &zoo_text, &g, *suite, *trials, *seed)
        }
        Command::Zoo => suites::zoo_dump(&zoo, &zoo_text),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    match run(&cli) {
        Ok(mut rep) => {
            if cli.timing {
                rep.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            use std::io::Write;
            let _ = writeln!(std::io::stdout(), "{}", rep.render(cli.format));
            if rep.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
