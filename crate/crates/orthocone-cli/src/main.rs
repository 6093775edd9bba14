//! Command-line verification harness for the cone orthogonal polynomial
//! library.
//!
//! Every subcommand runs one identity suite, writes a machine-readable
//! report (CSV by default, JSON on request), prints a one-line summary,
//! and exits 0 exactly when every row passed. Reports carry no
//! timestamps, and all randomness is seeded, so a rerun with the same
//! flags produces a byte-identical file.

mod checks;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};

use orthocone::projection::CutoffFunction;

use checks::{CommuteMode, EigenMode, EigenspaceMode, Target};
use report::{ReportRow, Status};

#[derive(Parser)]
#[command(
    name = "orthocone",
    version,
    about = "Verification reports for orthogonal polynomial systems on the cone"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orthonormality residuals of the ordinary basis Gram matrix.
    Gram {
        #[command(flatten)]
        domain: DomainArgs,
        /// Radial weight exponent.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        gamma: f64,
        /// Largest total degree in the basis.
        #[arg(long = "n-max", default_value_t = 6)]
        n_max: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Orthonormality residuals of the Sobolev basis Gram matrix.
    SobolevGram {
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        sobolev: SobolevArgs,
        /// Largest total degree in the basis.
        #[arg(long = "n-max", default_value_t = 6)]
        n_max: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Eigen-equation residuals of the spectral operator on the basis.
    ///
    /// Runs on the ordinary family for --gamma and on the Sobolev family
    /// for --s. The Sobolev report classifies each index: elements with
    /// m + s <= n or m = n must satisfy the eigen equation, the rest must
    /// stay above the not-an-eigenfunction floor.
    Eigencheck {
        /// Dimension of the cone surface ambient space minus one.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..=3))]
        d: u64,
        /// Radial weight exponent of the ordinary family.
        #[arg(long, conflicts_with = "s", allow_negative_numbers = true)]
        gamma: Option<f64>,
        /// Smoothness order of the Sobolev family.
        #[arg(long)]
        s: Option<usize>,
        /// Largest total degree to test.
        #[arg(long = "n-max", default_value_t = 8)]
        n_max: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Commutation residuals of projection against the spectral operator.
    Commute {
        #[command(flatten)]
        domain: DomainArgs,
        /// Radial weight exponent of the ordinary family.
        #[arg(long, conflicts_with = "s", allow_negative_numbers = true)]
        gamma: Option<f64>,
        /// Smoothness order of the Sobolev family.
        #[arg(long)]
        s: Option<usize>,
        /// Smoothness penalty weights, comma separated; defaults to all ones.
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            requires = "s"
        )]
        lambdas: Option<Vec<f64>>,
        /// Largest projection degree to test.
        #[arg(long = "n-max", default_value_t = 5)]
        n_max: usize,
        /// Seed for the random test polynomials.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sobolev projection computed two ways: coefficient table against
    /// the direct inner-product integral.
    ProjectCompare {
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        sobolev: SobolevArgs,
        /// Largest projection degree to test.
        #[arg(long = "n-max", default_value_t = 5)]
        n_max: usize,
        /// Seed for the random test polynomial.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Projection residuals of rim-supported products, which every
    /// Sobolev projection of degree above the factor must annihilate.
    Factor {
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        sobolev: SobolevArgs,
        /// Largest projection degree to test.
        #[arg(long = "n-max", default_value_t = 6)]
        n_max: usize,
        /// Seed for the random factor polynomial.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sup-grid errors of the smoothed approximation over a degree list;
    /// each row must fall strictly below the previous one.
    ApproxTable {
        #[command(flatten)]
        domain: DomainArgs,
        /// Radial weight exponent.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        gamma: f64,
        /// Target function.
        #[arg(long, value_enum, default_value = "exp-t")]
        f: TargetArg,
        /// Approximation degrees, comma separated, strictly increasing.
        #[arg(long, value_delimiter = ',', default_value = "4,8,12,16,20")]
        n: Vec<usize>,
        /// Cutoff profile for the smoothed partial sums.
        #[arg(long, value_enum, default_value = "smoothstep")]
        eta: EtaArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Explicit eigenfunction constructions of the spectral operator.
    ///
    /// Runs on the ordinary family for --gamma, checking the recurrence
    /// construction of radial factors against the closed form and the
    /// eigen equation of every assembled candidate. Runs on the Sobolev
    /// family for --s, checking the assembled eigenspace residual.
    Eigenspace {
        /// Dimension of the cone surface ambient space minus one.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..=3))]
        d: u64,
        /// Radial weight exponent of the ordinary family.
        #[arg(long, conflicts_with = "s", allow_negative_numbers = true)]
        gamma: Option<f64>,
        /// Smoothness order of the Sobolev family.
        #[arg(long)]
        s: Option<usize>,
        /// Largest total degree to test.
        #[arg(long = "n-max", default_value_t = 6)]
        n_max: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// Flags shared by every command that fixes one weight family.
#[derive(Args)]
struct DomainArgs {
    /// Dimension of the cone surface ambient space minus one.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..=3))]
    d: u64,
    /// Rim weight exponent.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta: f64,
}

/// Flags of the Sobolev inner product.
#[derive(Args)]
struct SobolevArgs {
    /// Smoothness order.
    #[arg(long, default_value_t = 1)]
    s: usize,
    /// Smoothness penalty weights, comma separated; defaults to all ones.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    lambdas: Option<Vec<f64>>,
}

impl SobolevArgs {
    fn lambdas(&self) -> Vec<f64> {
        self.lambdas.clone().unwrap_or_else(|| vec![1.0; self.s])
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Report file path; defaults to <command>.<format> in
    /// ORTHOCONE_OUT_DIR, or in the current directory when unset.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Report file format.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

impl OutputArgs {
    fn resolve(&self, slug: &str) -> PathBuf {
        match &self.output {
            Some(path) => path.clone(),
            None => {
                let dir = std::env::var_os("ORTHOCONE_OUT_DIR")
                    .map(PathBuf::from)
                    .unwrap_or_else(|| PathBuf::from("."));
                dir.join(format!("{slug}.{}", self.format.extension()))
            }
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    #[value(name = "exp-t")]
    ExpT,
}

#[derive(Clone, Copy, ValueEnum)]
enum EtaArg {
    Smoothstep,
    Linear,
}

impl From<EtaArg> for CutoffFunction {
    fn from(eta: EtaArg) -> CutoffFunction {
        match eta {
            EtaArg::Smoothstep => CutoffFunction::SmoothStep,
            EtaArg::Linear => CutoffFunction::Linear,
        }
    }
}

/// Ordinary mode unless --s was given; an absent --gamma means 0.
fn eigen_mode(gamma: Option<f64>, s: Option<usize>) -> EigenMode {
    match s {
        Some(s) => EigenMode::Sobolev { s },
        None => EigenMode::Ordinary {
            gamma: gamma.unwrap_or(0.0),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<usize> {
    let (slug, rows, out): (&str, Vec<ReportRow>, OutputArgs) = match cli.command {
        Command::Gram {
            domain,
            gamma,
            n_max,
            out,
        } => (
            "gram",
            checks::gram(domain.d as usize, domain.beta, gamma, n_max)?,
            out,
        ),
        Command::SobolevGram {
            domain,
            sobolev,
            n_max,
            out,
        } => (
            "sobolev-gram",
            checks::sobolev_gram(
                domain.d as usize,
                domain.beta,
                sobolev.s,
                sobolev.lambdas(),
                n_max,
            )?,
            out,
        ),
        Command::Eigencheck {
            d,
            gamma,
            s,
            n_max,
            out,
        } => (
            "eigencheck",
            checks::eigencheck(d as usize, eigen_mode(gamma, s), n_max)?,
            out,
        ),
        Command::Commute {
            domain,
            gamma,
            s,
            lambdas,
            n_max,
            seed,
            out,
        } => {
            let mode = match s {
                Some(s) => CommuteMode::Sobolev {
                    s,
                    lambdas: lambdas.unwrap_or_else(|| vec![1.0; s]),
                },
                None => CommuteMode::Ordinary {
                    gamma: gamma.unwrap_or(0.0),
                },
            };
            (
                "commute",
                checks::commute(domain.d as usize, domain.beta, mode, n_max, seed)?,
                out,
            )
        }
        Command::ProjectCompare {
            domain,
            sobolev,
            n_max,
            seed,
            out,
        } => (
            "project-compare",
            checks::project_compare(
                domain.d as usize,
                domain.beta,
                sobolev.s,
                sobolev.lambdas(),
                n_max,
                seed,
            )?,
            out,
        ),
        Command::Factor {
            domain,
            sobolev,
            n_max,
            seed,
            out,
        } => (
            "factor",
            checks::factor(
                domain.d as usize,
                domain.beta,
                sobolev.s,
                sobolev.lambdas(),
                n_max,
                seed,
            )?,
            out,
        ),
        Command::ApproxTable {
            domain,
            gamma,
            f,
            n,
            eta,
            out,
        } => {
            anyhow::ensure!(
                n.windows(2).all(|w| w[0] < w[1]),
                "the degree list must be strictly increasing"
            );
            let target = match f {
                TargetArg::ExpT => Target::ExpT,
            };
            (
                "approx-table",
                checks::approx_table(
                    domain.d as usize,
                    domain.beta,
                    gamma,
                    target,
                    &n,
                    eta.into(),
                )?,
                out,
            )
        }
        Command::Eigenspace {
            d,
            gamma,
            s,
            n_max,
            out,
        } => {
            let mode = match s {
                Some(s) => EigenspaceMode::Space { s },
                None => EigenspaceMode::Candidates {
                    gamma: gamma.unwrap_or(0.0),
                },
            };
            (
                "eigenspace",
                checks::eigenspace(d as usize, mode, n_max)?,
                out,
            )
        }
    };

    let path = out.resolve(slug);
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    match out.format {
        Format::Csv => report::write_csv(&rows, &path)?,
        Format::Json => report::write_json(&rows, &path)?,
    }
    let failed = rows.iter().filter(|r| r.status == Status::Fail).count();
    println!(
        "{slug}: {} rows, {} failed -> {}",
        rows.len(),
        failed,
        path.display()
    );
    Ok(failed)
}
