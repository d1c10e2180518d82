//! `bimono`: counts, moments, products and CLT scans for bi-monotone
//! independence.

mod commands;
mod verify;
mod word;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "bimono",
    version,
    about = "Bi-monotone partitions, Fock-space moments and product representations"
)]
pub struct Cli {
    /// Worker threads for parallel fan-out.
    #[arg(long, global = true, env = "BIMONO_WORKERS")]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Lift the default size caps.
    #[arg(long, global = true)]
    pub cap_override: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Float,
}

impl From<BackendArg> for bimono::clt::Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Exact => bimono::clt::Backend::Exact,
            BackendArg::Float => bimono::clt::Backend::Float,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    /// `b^l = λ* + λ`
    L,
    /// `b^r = ρ* + ρ`
    R,
    /// `b = b^l + b^r`
    B,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count bi-monotone ordered pair partitions.
    Count(CountArgs),
    /// List the bi-monotone ordered pair partitions of a pattern.
    Enumerate {
        #[arg(long)]
        pattern: String,
    },
    /// Vacuum expectation of a Fock-model word such as `B[0,1]^4`.
    Moment {
        word: String,
        /// Comma-separated breakpoints; defaults to the word's endpoints.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Moment of a word like `1:bl,2:br` in the bi-monotone product of reps.
    ProductMoment {
        /// Representation JSON file, one per factor in order.
        #[arg(long = "rep", required = true)]
        reps: Vec<PathBuf>,
        word: String,
        #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
        backend: BackendArg,
    },
    /// Finite-N moments against the central limit.
    Clt(CltArgs),
    /// Gaussian quadrature from the moments of a field on [0,1].
    Spectrum(SpectrumArgs),
    /// Run the cross-module invariant suite.
    Verify {
        /// Use the larger word lengths of the acceptance suite.
        #[arg(long)]
        thorough: bool,
    },
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// Sum over all patterns of length 2n.
    #[arg(long, conflicts_with = "pattern", required_unless_present = "pattern")]
    pub n: Option<usize>,
    /// A single pattern over {l, r}.
    #[arg(long, allow_hyphen_values = true)]
    pub pattern: Option<String>,
    /// With --n, also list every pattern's count.
    #[arg(long, requires = "n")]
    pub table: bool,
    /// Count only irreducible partitions.
    #[arg(long, requires = "pattern")]
    pub irreducible: bool,
}

#[derive(Args, Debug)]
pub struct CltArgs {
    #[arg(long)]
    pub pattern: String,
    #[arg(long = "Ns", value_delimiter = ',', default_values_t = vec![4usize, 8, 16, 32])]
    pub ns: Vec<usize>,
    /// Covariance `ll,lr,rr`.
    #[arg(long, default_value = "1,1,1")]
    pub cov: String,
    #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
    pub backend: BackendArg,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// Highest moment order used (even).
    #[arg(long, default_value_t = 10)]
    pub max_moment: usize,
    /// Number of nodes; defaults to max_moment/2 + 1.
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(long, value_enum, default_value_t = FieldArg::B)]
    pub field: FieldArg,
    /// Explicit moments m_0,m_1,… instead of the Fock model.
    #[arg(long, value_delimiter = ',')]
    pub moments: Option<Vec<String>>,
}

/// A failure reported as JSON on stderr.
#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
    pub position: Option<usize>,
}

impl CliError {
    pub fn new(kind: &'static str, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
            position: None,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let mut v = json!({ "error": self.kind, "message": self.message });
        if let Some(p) = self.position {
            v["position"] = json!(p);
        }
        v
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let err = CliError::new("usage", e.render().to_string().trim().to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(2);
        }
    };
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("{}", CliError::new("workers", e.to_string()).to_json());
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok((output, success)) => {
            print!("{output}");
            if !output.ends_with('\n') {
                println!();
            }
            if success {
                ExitCode::SUCCESS
            } else {
                eprintln!(
                    "{}",
                    CliError::new("check_failed", "at least one invariant failed").to_json()
                );
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(2)
        }
    }
}
