mod report;
mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use catlie_core::catlie::hom_basis;
use catlie_core::cecomplex::{ce_cell, ce_top_degree};
use catlie_core::dgcat::homology_cell;
use catlie_core::mudelta::{delta1_basis, delta1_dim};

use report::{BasisRow, Config, DimsRow, HomologyRow, Report};
use suites::Suite;

/// Worker threads for cell sweeps; defaults to the number of CPUs.
const WORKERS_ENV: &str = "CATLIE_WORKERS";

#[derive(Parser)]
#[command(name = "catlie", version, about = "Exact computations in the PROP of the Lie operad")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of CatLie(m,n), δ⁽¹⁾CatLie(m,n) and the CE terms.
    Dims(Common),
    /// Run verification suites; exit status 1 if any check fails.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Suites to run (comma separated or repeated); default all.
        #[arg(long, value_enum, value_delimiter = ',')]
        suite: Vec<Suite>,
    },
    /// Dimensions of 𝐇₀ and 𝐇₁ per cell.
    Homology {
        #[command(flatten)]
        common: Common,
        /// Include the 𝐇₁ kernel bases.
        #[arg(long)]
        kernels: bool,
    },
    /// Basis of one hom-space in its fixed order.
    ExportBasis {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = BasisKind::Hom)]
        kind: BasisKind,
        /// CE degree, for `--kind ce`.
        #[arg(long, default_value_t = 0)]
        t: usize,
    },
}

#[derive(Args, Clone)]
struct Common {
    /// Largest source arity m.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    max_m: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Hom,
    Delta1,
    Ce,
}

fn config(command: &str, common: &Common, suites: Vec<String>) -> Config {
    Config {
        command: command.into(),
        max_m: common.max_m as usize,
        suites,
        format: common.format,
        seed: common.seed,
    }
}

fn dims(max_m: usize) -> Vec<DimsRow> {
    let mut rows = Vec::new();
    for m in 1..=max_m {
        for n in 0..=m {
            let ce = (0..=ce_top_degree(m, n)).map(|t| ce_cell(m, n, t).dim()).collect();
            rows.push(DimsRow { m, n, hom_dim: hom_basis(m, n).len(), delta1_dim: delta1_dim(m, n), ce });
        }
    }
    rows
}

fn homology(max_m: usize, kernels: bool) -> Vec<HomologyRow> {
    let cells: Vec<(usize, usize)> = (1..=max_m).flat_map(|m| (0..=m).map(move |n| (m, n))).collect();
    use rayon::prelude::*;
    cells
        .par_iter()
        .map(|&(m, n)| {
            let c = homology_cell(m, n);
            let kernel = kernels.then(|| c.h1_basis.iter().map(report::delta1_terms).collect());
            HomologyRow { m, n, h0: c.h0_dim, h1: c.h1_dim, kernel }
        })
        .collect()
}

fn export_basis(m: usize, n: usize, kind: BasisKind, t: usize) -> Vec<BasisRow> {
    match kind {
        BasisKind::Hom => hom_basis(m, n).list.iter().enumerate().map(|(i, b)| BasisRow::morphism(i, b)).collect(),
        BasisKind::Delta1 => {
            delta1_basis(m, n).list.iter().enumerate().map(|(i, b)| BasisRow::morphism(i, b)).collect()
        }
        BasisKind::Ce => ce_cell(m, n, t)
            .basis()
            .iter()
            .enumerate()
            .map(|(i, h)| BasisRow::element(i, h))
            .collect(),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let (common, report) = match cli.command {
        Command::Dims(common) => {
            let rows = dims(common.max_m as usize);
            (common.clone(), Report::dims(config("dims", &common, vec![]), rows))
        }
        Command::Homology { common, kernels } => {
            let rows = homology(common.max_m as usize, kernels);
            (common.clone(), Report::homology(config("homology", &common, vec![]), rows))
        }
        Command::ExportBasis { common, m, n, kind, t } => {
            let rows = export_basis(m, n, kind, t);
            (common.clone(), Report::basis(config("export-basis", &common, vec![]), rows))
        }
        Command::Verify { common, suite } => {
            let selected = suites::expand(&suite);
            let names = selected.iter().map(|s| s.name().to_string()).collect();
            let (checks, cells) = suites::run(&selected, common.max_m as usize, common.seed);
            (common.clone(), Report::verify(config("verify", &common, names), checks, cells))
        }
    };
    emit(&report.render(common.format)?, &common.out)?;
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global();
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
